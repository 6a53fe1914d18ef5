//! Token sliding for c-colorable sets on split graphs, c >= 2.
//!
//! Write `R_K` and `R_I` for the parts of a set `R` on the clique side and the
//! independent side of the split partition. The decision procedure rests on
//! two facts:
//!
//! * any two c-colorable sets with at most `c - 1` tokens in the clique are
//!   mutually reachable, with an explicit routing ([`reachable_small`]);
//! * while a set keeps exactly `c` tokens in the clique, no token can enter or
//!   leave the independent side, so the reachable sets are the nodes of a
//!   search over `c`-subsets of the clique ([`rigid_reach`]).
//!
//! A sequence starting with `c` clique tokens therefore consists of a rigid
//! prefix, one slide from the clique into the independent side, and then
//! anything at all. [`solve`] enumerates those bridge slides.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use indexmap::IndexSet;
use thiserror::Error;

use crate::graph::{connected_components, split_partition, Graph, SplitPartition};
use crate::model::{InstanceError, Move, MoveSequence, ReconfigInstance, Rule};
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(
        "color bound {0} is not supported: for c = 1 (independent sets) token sliding on split \
         graphs is PSPACE-complete, use the exhaustive oracle instead"
    )]
    UnsupportedColorBound(usize),
    #[error("graph is not split")]
    NotSplit,
    #[error("solver handles token sliding only, got rule {0}")]
    RuleMismatch(Rule),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// A token-sliding instance together with a split partition of its graph.
#[derive(Debug, Clone)]
pub struct SplitInstanceView<'a> {
    pub instance: &'a ReconfigInstance,
    pub partition: SplitPartition,
    pub source_clique: VertexSet,
    pub source_independent: VertexSet,
    pub target_clique: VertexSet,
    pub target_independent: VertexSet,
}

impl<'a> SplitInstanceView<'a> {
    pub fn new(instance: &'a ReconfigInstance, partition: SplitPartition) -> Result<Self, SolveError> {
        if instance.rule != Rule::TokenSliding {
            return Err(SolveError::RuleMismatch(instance.rule));
        }
        if !partition.is_valid_for(&instance.graph) {
            return Err(SolveError::NotSplit);
        }
        let k = &partition.clique;
        let i = &partition.independent;
        let view = SplitInstanceView {
            source_clique: instance.source.intersection(k),
            source_independent: instance.source.intersection(i),
            target_clique: instance.target.intersection(k),
            target_independent: instance.target.intersection(i),
            instance,
            partition,
        };
        let c = instance.colors;
        if view.source_clique.len() > c || view.target_clique.len() > c {
            return Err(SolveError::Instance(InstanceError::NotColorable("source", c)));
        }
        Ok(view)
    }

    /// Convenience constructor computing the canonical split partition.
    pub fn from_instance(instance: &'a ReconfigInstance) -> Result<Self, SolveError> {
        let partition = split_partition(&instance.graph).ok_or(SolveError::NotSplit)?;
        Self::new(instance, partition)
    }

    fn graph(&self) -> &Graph {
        &self.instance.graph
    }

    fn colors(&self) -> usize {
        self.instance.colors
    }
}

/// c-colorability of a set in a split graph: the largest clique is either the
/// clique-side part alone or that part plus one independent vertex adjacent to
/// all of it.
fn split_colorable(g: &Graph, part: &SplitPartition, set: &VertexSet, c: usize) -> bool {
    let in_k = set.intersection(&part.clique);
    let kk = in_k.len();
    if kk > c {
        return false;
    }
    if kk < c {
        return true;
    }
    set.iter()
        .filter(|&v| part.independent.contains(v))
        .all(|v| g.neighbor_set(v).intersection_count(&in_k) < kk)
}

fn apply(state: &mut VertexSet, seq: &mut MoveSequence, from: usize, to: usize) {
    debug_assert!(state.contains(from) && !state.contains(to));
    state.remove(from);
    state.insert(to);
    seq.push(Move::Slide { from, to });
}

fn lowest_common(a: &VertexSet, b: &VertexSet) -> Option<usize> {
    a.intersection(b).first()
}

/// Witness between two sets with at most `c - 1` clique tokens each.
///
/// Tokens are routed so that the independent parts agree, then the remaining
/// clique tokens slide directly. Lowest-indexed vertices are always preferred.
pub fn reachable_small(view: &SplitInstanceView<'_>) -> Result<MoveSequence, SolveError> {
    let c = view.colors();
    if c < 2 {
        return Err(SolveError::UnsupportedColorBound(c));
    }
    if view.source_clique.len() >= c || view.target_clique.len() >= c {
        return Err(SolveError::Precondition("more than c - 1 tokens in the clique"));
    }
    if view.instance.source.len() != view.instance.target.len() {
        return Err(SolveError::Precondition("source and target sizes differ"));
    }
    let g = view.graph();
    let clique = &view.partition.clique;
    let indep = &view.partition.independent;
    if indep.iter().any(|v| g.neighbor_set(v).is_disjoint(clique)) {
        return Err(SolveError::Precondition("independent vertex without a clique neighbor"));
    }

    // `a` advances from the source, `b` from the target; `bwd` is reversed at the end.
    let mut a = view.instance.source.clone();
    let mut b = view.instance.target.clone();
    let mut fwd = MoveSequence::new();
    let mut bwd = MoveSequence::new();
    loop {
        let a_i = a.intersection(indep);
        let b_i = b.intersection(indep);
        if a_i == b_i {
            break;
        }
        // Extend the side that misses an independent vertex the other side has.
        let (v, moving, other_i, seq) = match a_i.difference(&b_i).first() {
            Some(v) => (v, &mut b, a_i, &mut bwd),
            None => {
                let v = b_i.difference(&a_i).first().expect("independent parts differ");
                (v, &mut a, b_i, &mut fwd)
            }
        };
        let m_k = moving.intersection(clique);
        let v_k = g.neighbor_set(v).intersection(clique);
        if m_k.is_empty() {
            // only independent tokens: bring one over through the clique
            let m_i = moving.intersection(indep);
            let x = m_i.difference(&other_i).first().expect("sizes agree");
            let x_k = g.neighbor_set(x).intersection(clique);
            match lowest_common(&x_k, &v_k) {
                Some(k) => {
                    apply(moving, seq, x, k);
                    apply(moving, seq, k, v);
                }
                None => {
                    let k1 = x_k.first().expect("clique neighbor");
                    let k2 = v_k.first().expect("clique neighbor");
                    apply(moving, seq, x, k1);
                    apply(moving, seq, k1, k2);
                    apply(moving, seq, k2, v);
                }
            }
        } else if let Some(t) = lowest_common(&m_k, &v_k) {
            apply(moving, seq, t, v);
        } else {
            // no clique token sees v, so every clique neighbor of v is free
            let k = v_k.first().expect("clique neighbor");
            let t = m_k.first().expect("non-empty");
            apply(moving, seq, t, k);
            apply(moving, seq, k, v);
        }
    }
    let from: Vec<usize> = a.difference(&b).iter().collect();
    let to: Vec<usize> = b.difference(&a).iter().collect();
    debug_assert_eq!(from.len(), to.len());
    for (&u, &w) in from.iter().zip(&to) {
        apply(&mut a, &mut fwd, u, w);
    }
    fwd.extend(&bwd.reversed());
    Ok(fwd)
}

/// Breadth-first exploration of the sets reachable from `start` by slides
/// inside the clique.
struct RigidSearch {
    nodes: IndexSet<VertexSet>,
    parent: Vec<Option<(usize, Move)>>,
}

impl RigidSearch {
    fn explore(
        g: &Graph,
        part: &SplitPartition,
        c: usize,
        start: &VertexSet,
        goal: Option<&VertexSet>,
    ) -> RigidSearch {
        let mut nodes = IndexSet::new();
        let mut parent = vec![None];
        nodes.insert(start.clone());
        let mut queue = VecDeque::from([0usize]);
        let clique = &part.clique;
        'bfs: while let Some(id) = queue.pop_front() {
            if goal.is_some_and(|t| nodes[id] == *t) {
                break;
            }
            let cur = nodes[id].clone();
            let free = clique.difference(&cur);
            for u in cur.intersection(clique).iter() {
                for w in free.iter() {
                    let mut next = cur.clone();
                    next.remove(u);
                    next.insert(w);
                    if !split_colorable(g, part, &next, c) {
                        continue;
                    }
                    let (nid, fresh) = nodes.insert_full(next);
                    if fresh {
                        parent.push(Some((id, Move::Slide { from: u, to: w })));
                        queue.push_back(nid);
                        if goal.is_some_and(|t| nodes[nid] == *t) {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        RigidSearch { nodes, parent }
    }

    fn path_to(&self, target: &VertexSet) -> Option<MoveSequence> {
        let mut id = self.nodes.get_index_of(target)?;
        let mut moves = Vec::new();
        while let Some((p, mv)) = self.parent[id] {
            moves.push(mv);
            id = p;
        }
        moves.reverse();
        Some(MoveSequence(moves))
    }
}

/// Shortest witness that keeps the independent part fixed, if one exists.
pub fn rigid_reach(view: &SplitInstanceView<'_>) -> Result<Option<MoveSequence>, SolveError> {
    if view.source_independent != view.target_independent {
        return Err(SolveError::Precondition("independent parts of source and target differ"));
    }
    if view.source_clique.len() != view.target_clique.len() {
        return Err(SolveError::Precondition("clique parts have different sizes"));
    }
    let inst = view.instance;
    let search = RigidSearch::explore(
        view.graph(),
        &view.partition,
        view.colors(),
        &inst.source,
        Some(&inst.target),
    );
    Ok(search.path_to(&inst.target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Worker threads for the bridge enumeration; 0 or 1 runs single-threaded
    /// with deterministic witnesses.
    pub jobs: usize,
}

/// Work counters of one [`solve`] call, summed over components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// `(T_{i-1}, T_i)` bridge candidates examined.
    pub candidates: usize,
    /// Sets visited by rigid searches.
    pub rigid_states: usize,
    /// Sum over components of `C(|K|, c) * c * n`.
    pub candidate_bound: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub reachable: bool,
    /// A valid witness when reachable; not necessarily shortest.
    pub witness: Option<MoveSequence>,
    pub stats: SolveStats,
}

/// Result of stripping isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatedCheck {
    /// A token sits on an isolated vertex in exactly one of source and target.
    Infeasible { vertex: usize },
    /// The instance induced by the non-isolated vertices; `vertices[i]` is the
    /// original label of vertex `i`.
    Reduced {
        instance: ReconfigInstance,
        vertices: Vec<usize>,
    },
}

/// Tokens on isolated vertices never move, so they must be on the same
/// vertices in source and target; everything else is kept.
pub fn isolated_token_check(inst: &ReconfigInstance) -> IsolatedCheck {
    let g = &inst.graph;
    let mut keep = VertexSet::new(g.n());
    for v in 0..g.n() {
        if g.degree(v) > 0 {
            keep.insert(v);
        } else if inst.source.contains(v) != inst.target.contains(v) {
            return IsolatedCheck::Infeasible { vertex: v };
        }
    }
    let (sub, vertices) = g.induced(&keep);
    let restrict = |set: &VertexSet| {
        let picked: Vec<usize> = (0..vertices.len()).filter(|&i| set.contains(vertices[i])).collect();
        VertexSet::from_slice(vertices.len(), &picked)
    };
    let instance = ReconfigInstance {
        source: restrict(&inst.source),
        target: restrict(&inst.target),
        graph: sub,
        colors: inst.colors,
        rule: inst.rule,
    };
    IsolatedCheck::Reduced { instance, vertices }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

pub fn solve(inst: &ReconfigInstance) -> Result<Solution, SolveError> {
    solve_with(inst, &SolveOptions::default())
}

/// Decides token-sliding reachability on a split graph for c >= 2.
pub fn solve_with(inst: &ReconfigInstance, opts: &SolveOptions) -> Result<Solution, SolveError> {
    if inst.rule != Rule::TokenSliding {
        return Err(SolveError::RuleMismatch(inst.rule));
    }
    if inst.colors < 2 {
        return Err(SolveError::UnsupportedColorBound(inst.colors));
    }
    if split_partition(&inst.graph).is_none() {
        return Err(SolveError::NotSplit);
    }
    inst.check()?;
    let mut stats = SolveStats::default();
    let no = |stats| Ok(Solution {
        reachable: false,
        witness: None,
        stats,
    });

    let (reduced, outer) = match isolated_token_check(inst) {
        IsolatedCheck::Infeasible { .. } => return no(stats),
        IsolatedCheck::Reduced { instance, vertices } => (instance, vertices),
    };
    let mut witness = MoveSequence::new();
    for comp in connected_components(&reduced.graph) {
        let members = VertexSet::from_slice(reduced.graph.n(), &comp);
        let s_count = reduced.source.intersection_count(&members);
        if s_count != reduced.target.intersection_count(&members) {
            return no(stats);
        }
        if reduced.source.intersection(&members) == reduced.target.intersection(&members) {
            continue;
        }
        let (sub, inner) = reduced.graph.induced(&members);
        let restrict = |set: &VertexSet| {
            let picked: Vec<usize> = (0..inner.len()).filter(|&i| set.contains(inner[i])).collect();
            VertexSet::from_slice(inner.len(), &picked)
        };
        let part_inst = ReconfigInstance {
            source: restrict(&reduced.source),
            target: restrict(&reduced.target),
            graph: sub,
            colors: inst.colors,
            rule: Rule::TokenSliding,
        };
        let partition = split_partition(&part_inst.graph).ok_or(SolveError::NotSplit)?;
        match solve_connected(&part_inst, partition, opts, &mut stats)? {
            Some(seq) => {
                let relabel = |v: usize| outer[inner[v]];
                witness.0.extend(seq.moves().iter().map(|mv| match *mv {
                    Move::Slide { from, to } => Move::Slide {
                        from: relabel(from),
                        to: relabel(to),
                    },
                    other => other,
                }));
            }
            None => return no(stats),
        }
    }
    Ok(Solution {
        reachable: true,
        witness: Some(witness),
        stats,
    })
}

/// A slide from a rigid set `before` (c clique tokens) to `after` (c - 1).
struct Bridge {
    before: VertexSet,
    mv: Move,
    after: VertexSet,
}

/// First bridge leaving the rigid component, scanning components in BFS order.
fn find_bridge(
    view: &SplitInstanceView<'_>,
    search: &RigidSearch,
    opts: &SolveOptions,
    counter: &AtomicUsize,
) -> Option<Bridge> {
    let g = view.graph();
    let part = &view.partition;
    let scan = |node: &VertexSet| -> Option<Bridge> {
        for u in node.intersection(&part.clique).iter() {
            for &v in g.neighbors(u) {
                if !part.independent.contains(v) || node.contains(v) {
                    continue;
                }
                counter.fetch_add(1, Ordering::Relaxed);
                let mut after = node.clone();
                after.remove(u);
                after.insert(v);
                return Some(Bridge {
                    before: node.clone(),
                    mv: Move::Slide { from: u, to: v },
                    after,
                });
            }
        }
        None
    };
    #[cfg(feature = "parallel")]
    if opts.jobs > 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
            let nodes: Vec<&VertexSet> = search.nodes.iter().collect();
            return pool.install(|| nodes.par_iter().find_map_any(|node| scan(node)));
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = opts;
    search.nodes.iter().find_map(scan)
}

/// Core case analysis on a connected split graph.
fn solve_connected(
    inst: &ReconfigInstance,
    partition: SplitPartition,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Result<Option<MoveSequence>, SolveError> {
    let c = inst.colors;
    let n = inst.graph.n();
    stats.candidate_bound += binomial(partition.clique.len(), c).saturating_mul((c * n) as u128);
    let s_k = inst.source.intersection_count(&partition.clique);
    let t_k = inst.target.intersection_count(&partition.clique);
    // normalize so the source has at least as many clique tokens
    if s_k < t_k {
        let swapped = inst.swapped();
        return Ok(solve_connected(&swapped, partition, opts, stats)?.map(|w| w.reversed()));
    }
    let view = SplitInstanceView::new(inst, partition)?;
    if s_k < c {
        // both sides have at most c - 1 clique tokens
        return reachable_small(&view).map(Some);
    }
    let g = &inst.graph;
    let counter = AtomicUsize::new(0);
    let explore = |start: &VertexSet, goal: Option<&VertexSet>| {
        RigidSearch::explore(g, &view.partition, c, start, goal)
    };
    let small = |from: &VertexSet, to: &VertexSet| -> Result<MoveSequence, SolveError> {
        let sub = ReconfigInstance {
            graph: g.clone(),
            colors: c,
            rule: Rule::TokenSliding,
            source: from.clone(),
            target: to.clone(),
        };
        reachable_small(&SplitInstanceView::new(&sub, view.partition.clone())?)
    };

    let from_source = explore(&inst.source, None);
    stats.rigid_states += from_source.nodes.len();
    if t_k == c && view.source_independent == view.target_independent {
        // both sides rigid with the same independent part: the search may contain the target
        if let Some(w) = from_source.path_to(&inst.target) {
            return Ok(Some(w));
        }
    }
    let Some(out) = find_bridge(&view, &from_source, opts, &counter) else {
        stats.candidates += counter.into_inner();
        return Ok(None);
    };
    let mut witness = from_source.path_to(&out.before).expect("bridge inside the component");
    witness.push(out.mv);

    if t_k < c {
        // only the source is rigid
        stats.candidates += counter.into_inner();
        witness.extend(&small(&out.after, &inst.target)?);
        return Ok(Some(witness));
    }

    // both rigid, joined through the small sets: leave the target's rigid component
    // the same way, then join the two bridges
    let from_target = explore(&inst.target, None);
    stats.rigid_states += from_target.nodes.len();
    let back = find_bridge(&view, &from_target, opts, &counter);
    stats.candidates += counter.into_inner();
    let Some(back) = back else {
        return Ok(None);
    };
    witness.extend(&small(&out.after, &back.after)?);
    witness.push(back.mv.inverse());
    witness.extend(&from_target.path_to(&back.before).expect("bridge inside the component").reversed());
    Ok(Some(witness))
}
