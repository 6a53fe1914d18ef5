use std::collections::BTreeSet;
use std::fmt;

use crate::graph::Graph;
use crate::model::{EdgeColor, Move, MoveSequence, NclInstance, Orientation, ReconfigInstance, Rule, VertexKind};
use crate::set::VertexSet;

use super::ncl::first_unnormalized_edge;
use super::ReductionError;

/// Role of a vertex of the first-stage gadget graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetVertex {
    /// Selector of `edge` for its endpoint `side` (0 for `u`, 1 for `v`).
    Selector { edge: usize, side: usize },
    Gate { edge: usize, index: usize },
}

impl fmt::Display for GadgetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetVertex::Selector { edge, side } => write!(f, "selector {edge} {side}"),
            GadgetVertex::Gate { edge, index } => write!(f, "gate {edge} {index}"),
        }
    }
}

/// Split graph whose independent sets simulate a normalized constraint logic
/// machine.
///
/// Vertex `2e + s` is the selector of edge `e` for endpoint `s`; gates follow
/// in (edge, gate index) order. A main configuration has one token on a
/// selector of every edge and none on gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub ncl: NclInstance,
    pub source: VertexSet,
    pub target: VertexSet,
    labels: Vec<GadgetVertex>,
    gates: Vec<Vec<usize>>,
    gate_edges: Vec<(usize, usize)>,
}

impl GadgetGraph {
    pub fn m(&self) -> usize {
        self.ncl.m()
    }

    /// Selector of `edge` for its endpoint `x` (an NCL vertex).
    pub fn selector(&self, edge: usize, x: usize) -> usize {
        let e = self.ncl.edge(edge);
        debug_assert!(x == e.u || x == e.v);
        2 * edge + usize::from(x != e.u)
    }

    pub fn selectors(&self, edge: usize) -> [usize; 2] {
        [2 * edge, 2 * edge + 1]
    }

    pub fn gates(&self, edge: usize) -> &[usize] {
        &self.gates[edge]
    }

    /// (selector, gate) pairs joining each edge's selectors to its own gates.
    pub fn gate_edges(&self) -> &[(usize, usize)] {
        &self.gate_edges
    }

    pub fn is_gate_edge(&self, a: usize, b: usize) -> bool {
        let (s, g) = if a < b { (a, b) } else { (b, a) };
        match (self.labels.get(s), self.labels.get(g)) {
            (Some(GadgetVertex::Selector { edge: e1, .. }), Some(GadgetVertex::Gate { edge: e2, .. })) => e1 == e2,
            _ => false,
        }
    }

    pub fn label(&self, v: usize) -> GadgetVertex {
        self.labels[v]
    }

    pub fn labels(&self) -> &[GadgetVertex] {
        &self.labels
    }

    pub fn gate_set(&self) -> VertexSet {
        let mut set = VertexSet::new(self.graph.n());
        for &g in self.gates.iter().flatten() {
            set.insert(g);
        }
        set
    }

    /// Main configuration encoding an orientation.
    pub fn config(&self, d: &Orientation) -> VertexSet {
        let mut set = VertexSet::new(self.graph.n());
        for (i, &head) in d.iter().enumerate() {
            set.insert(self.selector(i, head));
        }
        set
    }

    /// Orientation encoded by a main configuration, if it is one.
    pub fn orientation(&self, config: &VertexSet) -> Option<Orientation> {
        if config.capacity() != self.graph.n() || config.len() != self.m() {
            return None;
        }
        (0..self.m())
            .map(|i| {
                let [a, b] = self.selectors(i);
                let e = self.ncl.edge(i);
                match (config.contains(a), config.contains(b)) {
                    (true, false) => Some(e.u),
                    (false, true) => Some(e.v),
                    _ => None,
                }
            })
            .collect()
    }

    /// The state restriction under which the gadget is equivalent to the
    /// machine: never both selectors of one edge.
    pub fn no_both_selectors(&self, state: &VertexSet) -> bool {
        (0..self.m()).all(|i| {
            let [a, b] = self.selectors(i);
            !(state.contains(a) && state.contains(b))
        })
    }

    /// Independent set sliding instance between the two main configurations.
    pub fn instance(&self) -> ReconfigInstance {
        ReconfigInstance {
            graph: self.graph.clone(),
            colors: 1,
            rule: Rule::TokenSliding,
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }
}

/// Builds the first-stage gadget graph of a normalized machine.
pub fn build_gb(ncl: &NclInstance) -> Result<GadgetGraph, ReductionError> {
    if let Some(i) = first_unnormalized_edge(ncl) {
        return Err(ReductionError::NotNormalized(i));
    }
    let m = ncl.m();
    let mut labels: Vec<GadgetVertex> = (0..2 * m)
        .map(|v| GadgetVertex::Selector {
            edge: v / 2,
            side: v % 2,
        })
        .collect();
    let mut gates = Vec::with_capacity(m);
    for (edge, e) in ncl.edges().iter().enumerate() {
        let count = match e.color {
            EdgeColor::Red => 1,
            EdgeColor::Blue => 2,
        };
        let ids: Vec<usize> = (0..count)
            .map(|index| {
                labels.push(GadgetVertex::Gate { edge, index });
                labels.len() - 1
            })
            .collect();
        gates.push(ids);
    }

    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    let mut gate_edges = Vec::new();
    for (edge, ids) in gates.iter().enumerate() {
        for side in 0..2 {
            for &g in ids {
                gate_edges.push((2 * edge + side, g));
                add(2 * edge + side, g);
            }
        }
    }
    // selector of edge i at its endpoint opposite to x
    let far = |i: usize, x: usize| {
        let e = ncl.edge(i);
        2 * i + usize::from(e.other(x) != e.u)
    };
    for x in 0..ncl.n() {
        let inc = ncl.incident(x);
        match ncl.kind(x) {
            VertexKind::And => {
                let blue = *inc.iter().find(|&&i| ncl.edge(i).color == EdgeColor::Blue).expect("AND vertex");
                for &red in inc.iter().filter(|&&i| i != blue) {
                    for &g in &gates[red] {
                        add(far(blue, x), g);
                    }
                    for &g in &gates[blue] {
                        add(far(red, x), g);
                    }
                }
            }
            VertexKind::Or => {
                let (e, f, h) = (inc[0], inc[1], inc[2]);
                add(far(e, x), gates[f][0]);
                add(far(e, x), gates[h][0]);
                add(far(f, x), gates[e][0]);
                add(far(f, x), gates[h][1]);
                add(far(h, x), gates[e][1]);
                add(far(h, x), gates[f][1]);
            }
            VertexKind::Copy => {
                let (e, f) = (inc[0], inc[1]);
                for &g in &gates[f] {
                    add(far(e, x), g);
                }
                for &g in &gates[e] {
                    add(far(f, x), g);
                }
            }
        }
    }
    let all_gates: Vec<usize> = gates.iter().flatten().copied().collect();
    for (k, &a) in all_gates.iter().enumerate() {
        for &b in &all_gates[k + 1..] {
            add(a, b);
        }
    }
    let graph = Graph::new(labels.len(), edges).expect("gadget edges are simple");
    let mut gb = GadgetGraph {
        source: VertexSet::new(graph.n()),
        target: VertexSet::new(graph.n()),
        graph,
        ncl: ncl.clone(),
        labels,
        gates,
        gate_edges,
    };
    gb.source = gb.config(&ncl.initial);
    gb.target = gb.config(&ncl.target);
    Ok(gb)
}

/// The amplified second-stage graph: `C = m + 4` copies of the gadget graph
/// with every non-gate edge also joining different copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplifiedGraph {
    pub graph: Graph,
    pub copies: usize,
    pub source: VertexSet,
    pub target: VertexSet,
    gadget: GadgetGraph,
}

impl AmplifiedGraph {
    pub fn gadget(&self) -> &GadgetGraph {
        &self.gadget
    }

    /// Vertex of `v` in copy `copy` (0-based); copies are contiguous blocks.
    pub fn vertex(&self, v: usize, copy: usize) -> usize {
        copy * self.gadget.graph.n() + v
    }

    /// Gadget vertex and copy index of an amplified vertex.
    pub fn origin(&self, w: usize) -> (usize, usize) {
        let nb = self.gadget.graph.n();
        (w % nb, w / nb)
    }

    pub fn instance(&self) -> ReconfigInstance {
        ReconfigInstance {
            graph: self.graph.clone(),
            colors: 1,
            rule: Rule::TokenSliding,
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }

    fn amplify(&self, config: &VertexSet) -> VertexSet {
        let mut set = VertexSet::new(self.graph.n());
        for v in config.iter() {
            for i in 0..self.copies {
                set.insert(self.vertex(v, i));
            }
        }
        set
    }
}

/// Builds the amplified graph for two main configurations of `gb`.
///
/// Copies of the same gate are also made pairwise adjacent so that all gate
/// copies form one clique and the result is split.
pub fn build_gf(gb: &GadgetGraph, source: &VertexSet, target: &VertexSet) -> Result<AmplifiedGraph, ReductionError> {
    let gate_set = gb.gate_set();
    for set in [source, target] {
        if let Some(g) = set.intersection(&gate_set).first() {
            return Err(ReductionError::NonMainConfiguration(g));
        }
    }
    let copies = gb.m() + 4;
    let nb = gb.graph.n();
    let at = |v: usize, i: usize| i * nb + v;
    let mut edges = Vec::new();
    for &(a, b) in gb.graph.edges() {
        let cross = !gb.is_gate_edge(a, b);
        for i in 0..copies {
            for j in 0..copies {
                if i == j || cross {
                    edges.push((at(a, i), at(b, j)));
                }
            }
        }
    }
    for g in gate_set.iter() {
        for i in 0..copies {
            for j in i + 1..copies {
                edges.push((at(g, i), at(g, j)));
            }
        }
    }
    let graph = Graph::new(copies * nb, edges).expect("amplified edges are simple");
    let mut amp = AmplifiedGraph {
        source: VertexSet::new(graph.n()),
        target: VertexSet::new(graph.n()),
        graph,
        copies,
        gadget: gb.clone(),
    };
    amp.source = amp.amplify(source);
    amp.target = amp.amplify(target);
    Ok(amp)
}

/// Decodes one gate round trip `a -> g, g -> b` starting at move `index`.
fn round_trip(gb: &GadgetGraph, moves: &[Move], index: usize) -> Result<(usize, usize, usize), ReductionError> {
    let bad = |offset: usize, reason: &str| ReductionError::MalformedWitness {
        index: index + offset,
        reason: reason.to_string(),
    };
    let (Some(&Move::Slide { from: a, to: g }), Some(&Move::Slide { from: g2, to: b })) =
        (moves.get(index), moves.get(index + 1))
    else {
        return Err(bad(0, "expected a pair of slides"));
    };
    let n = gb.graph.n();
    if a >= n || g >= n || b >= n {
        return Err(bad(0, "vertex out of range"));
    }
    let GadgetVertex::Selector { edge, .. } = gb.label(a) else {
        return Err(bad(0, "first slide must leave a selector"));
    };
    if !gb.gates(edge).contains(&g) {
        return Err(bad(0, "first slide must enter a gate of the same edge"));
    }
    if g2 != g {
        return Err(bad(1, "second slide must leave the gate just entered"));
    }
    let [s0, s1] = gb.selectors(edge);
    let other = if a == s0 { s1 } else { s0 };
    if b != other {
        return Err(bad(1, "second slide must enter the other selector of the edge"));
    }
    Ok((a, g, b))
}

/// Replays every gate round trip of a gadget witness in all copies, one copy
/// at a time: `2C` slides per round trip.
pub fn lift_sequence(gb_seq: &MoveSequence, amp: &AmplifiedGraph) -> Result<MoveSequence, ReductionError> {
    let gb = amp.gadget();
    let moves = gb_seq.moves();
    if !moves.len().is_multiple_of(2) {
        return Err(ReductionError::MalformedWitness {
            index: moves.len(),
            reason: "odd number of moves".to_string(),
        });
    }
    let mut out = MoveSequence::new();
    for k in (0..moves.len()).step_by(2) {
        let (a, g, b) = round_trip(gb, moves, k)?;
        for i in 0..amp.copies {
            out.push(Move::Slide {
                from: amp.vertex(a, i),
                to: amp.vertex(g, i),
            });
            out.push(Move::Slide {
                from: amp.vertex(g, i),
                to: amp.vertex(b, i),
            });
        }
    }
    Ok(out)
}

/// Majority projection of every state of an amplified witness onto main
/// configurations of the gadget graph, with consecutive repeats removed.
///
/// For each edge the selector with at least as many occupied copies wins,
/// ties going to the first selector.
pub fn project_sequence(gf_seq: &MoveSequence, amp: &AmplifiedGraph) -> Result<Vec<VertexSet>, ReductionError> {
    let n = amp.graph.n();
    for (index, mv) in gf_seq.moves().iter().enumerate() {
        let in_range = match *mv {
            Move::Slide { from, to } => from < n && to < n,
            _ => false,
        };
        if !in_range {
            return Err(ReductionError::MalformedWitness {
                index,
                reason: format!("{mv} is not a slide inside the amplified graph"),
            });
        }
    }
    let gb = amp.gadget();
    let mut out: Vec<VertexSet> = Vec::new();
    for (index, state) in gf_seq.trace(&amp.source).iter().enumerate() {
        let mut config = VertexSet::new(gb.graph.n());
        for edge in 0..gb.m() {
            let [a, b] = gb.selectors(edge);
            let count = |v: usize| (0..amp.copies).filter(|&i| state.contains(amp.vertex(v, i))).count();
            let (ca, cb) = (count(a), count(b));
            if ca + cb < 4 {
                return Err(ReductionError::InvalidState { index, edge });
            }
            config.insert(if ca >= cb { a } else { b });
        }
        if out.last() != Some(&config) {
            out.push(config);
        }
    }
    Ok(out)
}

/// Main configurations visited by a gadget witness, consecutive repeats removed.
pub fn main_configurations(gb: &GadgetGraph, gb_seq: &MoveSequence) -> Vec<VertexSet> {
    let gates = gb.gate_set();
    let mut out: Vec<VertexSet> = Vec::new();
    for state in gb_seq.trace(&gb.source) {
        if state.is_disjoint(&gates) && out.last() != Some(&state) {
            out.push(state);
        }
    }
    out
}

/// Gadget witness through a list of main configurations that differ in one
/// selector pair at a time, using the lowest free gate of each edge.
pub fn configs_to_witness(gb: &GadgetGraph, configs: &[VertexSet]) -> Result<MoveSequence, ReductionError> {
    let mut out = MoveSequence::new();
    for (k, pair) in configs.windows(2).enumerate() {
        let bad = |reason: &str| ReductionError::MalformedWitness {
            index: 2 * k,
            reason: reason.to_string(),
        };
        let (prev, next) = (&pair[0], &pair[1]);
        let gone = prev.difference(next).to_vec();
        let came = next.difference(prev).to_vec();
        let (&[a], &[b]) = (gone.as_slice(), came.as_slice()) else {
            return Err(bad("consecutive configurations must differ in one token"));
        };
        let (GadgetVertex::Selector { edge: ea, .. }, GadgetVertex::Selector { edge: eb, .. }) =
            (gb.label(a), gb.label(b))
        else {
            return Err(bad("configurations must only use selectors"));
        };
        if ea != eb {
            return Err(bad("the moved token must stay on the same edge"));
        }
        let mut rest = prev.clone();
        rest.remove(a);
        let Some(&g) = gb.gates(ea).iter().find(|&&g| gb.graph.neighbor_set(g).is_disjoint(&rest)) else {
            return Err(bad("no free gate for the reorientation"));
        };
        out.push(Move::Slide { from: a, to: g });
        out.push(Move::Slide { from: g, to: b });
    }
    Ok(out)
}
