//! Reconfiguration instances and move semantics.
//!
//! This module is the single authority on whether a move or a whole certificate
//! is legal. It covers three families:
//!
//! * c-colorable set reconfiguration under token sliding (TS), token jumping
//!   (TJ) and token addition/removal (TAR) with a lower size threshold;
//! * nondeterministic constraint logic (NCL) orientations;
//! * dominating set reconfiguration, where TAR uses an *upper* size bound.

use std::fmt;

use thiserror::Error;

use crate::graph::{chromatic_leq, Colorability, Graph};
use crate::set::VertexSet;

/// Which moves are allowed between c-colorable sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    TokenSliding,
    TokenJumping,
    /// Addition and removal; every set must have at least `threshold` vertices.
    TokenAdditionRemoval { threshold: usize },
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::TokenSliding => write!(f, "ts"),
            Rule::TokenJumping => write!(f, "tj"),
            Rule::TokenAdditionRemoval { threshold } => write!(f, "tar {threshold}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Slide { from: usize, to: usize },
    Jump { from: usize, to: usize },
    Add(usize),
    Remove(usize),
}

impl Move {
    /// The move undoing this one.
    pub fn inverse(self) -> Move {
        match self {
            Move::Slide { from, to } => Move::Slide { from: to, to: from },
            Move::Jump { from, to } => Move::Jump { from: to, to: from },
            Move::Add(v) => Move::Remove(v),
            Move::Remove(v) => Move::Add(v),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Slide { from, to } => write!(f, "sl {from} {to}"),
            Move::Jump { from, to } => write!(f, "jp {from} {to}"),
            Move::Add(v) => write!(f, "add {v}"),
            Move::Remove(v) => write!(f, "rm {v}"),
        }
    }
}

/// An ordered list of moves; a certificate of reachability once validated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn push(&mut self, mv: Move) {
        self.0.push(mv);
    }

    pub fn extend(&mut self, other: &MoveSequence) {
        self.0.extend_from_slice(&other.0);
    }

    /// The sequence leading back from the final state to the initial one.
    pub fn reversed(&self) -> MoveSequence {
        MoveSequence(self.0.iter().rev().map(|m| m.inverse()).collect())
    }

    /// States visited when the moves are applied blindly from `start`; no
    /// legality check.
    pub fn trace(&self, start: &VertexSet) -> Vec<VertexSet> {
        let mut cur = start.clone();
        let mut out = vec![cur.clone()];
        for mv in &self.0 {
            match *mv {
                Move::Slide { from, to } | Move::Jump { from, to } => {
                    cur.remove(from);
                    cur.insert(to);
                }
                Move::Add(v) => {
                    cur.insert(v);
                }
                Move::Remove(v) => {
                    cur.remove(v);
                }
            }
            out.push(cur.clone());
        }
        out
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("no token on vertex {0}")]
    NoToken(usize),
    #[error("vertex {0} already holds a token")]
    Occupied(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("move {0} is not allowed under rule {1}")]
    WrongRule(Move, Rule),
    #[error("resulting set is not {0}-colorable")]
    NotColorable(usize),
    #[error("resulting set has {size} vertices, below threshold {threshold}")]
    BelowThreshold { size: usize, threshold: usize },
    #[error("resulting set has {size} vertices, above bound {bound}")]
    AboveBound { size: usize, bound: usize },
    #[error("resulting set is not dominating")]
    NotDominating,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("color bound must be at least 1")]
    ZeroColorBound,
    #[error("set vertex out of range")]
    OutOfRange,
    #[error("{0} set is not {1}-colorable")]
    NotColorable(&'static str, usize),
    #[error("source and target sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{0} set is below the TAR threshold")]
    BelowThreshold(&'static str),
    #[error("{0} set is not dominating")]
    NotDominating(&'static str),
    #[error("{0} set exceeds the size bound")]
    AboveBound(&'static str),
}

/// A c-colorable set reconfiguration instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigInstance {
    pub graph: Graph,
    pub colors: usize,
    pub rule: Rule,
    pub source: VertexSet,
    pub target: VertexSet,
}

impl ReconfigInstance {
    pub fn new(
        graph: Graph,
        colors: usize,
        rule: Rule,
        source: &[usize],
        target: &[usize],
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        if source.iter().chain(target).any(|&v| v >= n) {
            return Err(InstanceError::OutOfRange);
        }
        let source = VertexSet::from_slice(n, source);
        let target = VertexSet::from_slice(n, target);
        Self::from_sets(graph, colors, rule, source, target)
    }

    pub fn from_sets(
        graph: Graph,
        colors: usize,
        rule: Rule,
        source: VertexSet,
        target: VertexSet,
    ) -> Result<Self, InstanceError> {
        let inst = ReconfigInstance {
            graph,
            colors,
            rule,
            source,
            target,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<(), InstanceError> {
        let n = self.graph.n();
        if self.colors == 0 {
            return Err(InstanceError::ZeroColorBound);
        }
        if self.source.capacity() != n || self.target.capacity() != n {
            return Err(InstanceError::OutOfRange);
        }
        for (name, set) in [("source", &self.source), ("target", &self.target)] {
            if !chromatic_leq(&self.graph, set, self.colors) {
                return Err(InstanceError::NotColorable(name, self.colors));
            }
            if let Rule::TokenAdditionRemoval { threshold } = self.rule {
                if set.len() < threshold {
                    return Err(InstanceError::BelowThreshold(name));
                }
            }
        }
        if !matches!(self.rule, Rule::TokenAdditionRemoval { .. })
            && self.source.len() != self.target.len()
        {
            return Err(InstanceError::SizeMismatch(self.source.len(), self.target.len()));
        }
        Ok(())
    }

    /// The same instance with source and target exchanged.
    pub fn swapped(&self) -> ReconfigInstance {
        ReconfigInstance {
            graph: self.graph.clone(),
            colors: self.colors,
            rule: self.rule,
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}

/// Applies one move, returning the successor state.
///
/// `state` is assumed legal already; only the move and the successor are checked.
pub fn apply_move(
    g: &Graph,
    colors: usize,
    rule: Rule,
    state: &VertexSet,
    mv: Move,
) -> Result<VertexSet, IllegalMove> {
    apply_move_with(g, &Colorability::new(g), colors, rule, state, mv)
}

/// [`apply_move`] with a precomputed colorability helper for the same graph.
pub fn apply_move_with(
    g: &Graph,
    col: &Colorability,
    colors: usize,
    rule: Rule,
    state: &VertexSet,
    mv: Move,
) -> Result<VertexSet, IllegalMove> {
    let next = step_tokens(g, rule, state, mv)?;
    if let Rule::TokenAdditionRemoval { threshold } = rule {
        if next.len() < threshold {
            return Err(IllegalMove::BelowThreshold {
                size: next.len(),
                threshold,
            });
        }
    }
    if !col.check(g, &next, colors) {
        return Err(IllegalMove::NotColorable(colors));
    }
    Ok(next)
}

/// Token bookkeeping shared by every family: occupancy, adjacency and rule kind.
fn step_tokens(g: &Graph, rule: Rule, state: &VertexSet, mv: Move) -> Result<VertexSet, IllegalMove> {
    let in_range = |v: usize| if v < g.n() { Ok(()) } else { Err(IllegalMove::OutOfRange(v)) };
    let mut next = state.clone();
    match (mv, rule) {
        (Move::Slide { from, to }, Rule::TokenSliding) | (Move::Jump { from, to }, Rule::TokenJumping) => {
            in_range(from)?;
            in_range(to)?;
            if !state.contains(from) {
                return Err(IllegalMove::NoToken(from));
            }
            if state.contains(to) {
                return Err(IllegalMove::Occupied(to));
            }
            if matches!(mv, Move::Slide { .. }) && !g.has_edge(from, to) {
                return Err(IllegalMove::NotAdjacent(from, to));
            }
            next.remove(from);
            next.insert(to);
        }
        (Move::Add(v), Rule::TokenAdditionRemoval { .. }) => {
            in_range(v)?;
            if !next.insert(v) {
                return Err(IllegalMove::Occupied(v));
            }
        }
        (Move::Remove(v), Rule::TokenAdditionRemoval { .. }) => {
            in_range(v)?;
            if !next.remove(v) {
                return Err(IllegalMove::NoToken(v));
            }
        }
        _ => return Err(IllegalMove::WrongRule(mv, rule)),
    }
    Ok(next)
}

/// Outcome of checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// The move at `index` is illegal, or `index == len` and the final state
    /// differs from the target.
    Invalid { index: usize, reason: String },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn failure_index(&self) -> Option<usize> {
        match self {
            Validation::Valid => None,
            Validation::Invalid { index, .. } => Some(*index),
        }
    }
}

pub fn validate_sequence(inst: &ReconfigInstance, seq: &MoveSequence) -> Validation {
    let col = Colorability::new(&inst.graph);
    let mut state = inst.source.clone();
    for (index, &mv) in seq.moves().iter().enumerate() {
        match apply_move_with(&inst.graph, &col, inst.colors, inst.rule, &state, mv) {
            Ok(next) => state = next,
            Err(e) => {
                return Validation::Invalid {
                    index,
                    reason: format!("{mv}: {e}"),
                }
            }
        }
    }
    if state != inst.target {
        return Validation::Invalid {
            index: seq.len(),
            reason: format!("final state {state} differs from target {}", inst.target),
        };
    }
    Validation::Valid
}

/// Edge color of an NCL edge: red edges weigh 1, blue edges weigh 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Red,
    Blue,
}

impl EdgeColor {
    pub fn weight(self) -> usize {
        match self {
            EdgeColor::Red => 1,
            EdgeColor::Blue => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Two red edges and one blue edge.
    And,
    /// Three blue edges.
    Or,
    /// Two blue edges.
    Copy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NclEdge {
    pub u: usize,
    pub v: usize,
    pub color: EdgeColor,
}

impl NclEdge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Head vertex of every edge, indexed by edge.
pub type Orientation = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NclError {
    #[error("edge {0} has an endpoint out of range")]
    OutOfRange(usize),
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} is neither AND, OR nor COPY")]
    BadVertex(usize),
    #[error("orientation has {got} entries for {expected} edges")]
    OrientationLength { got: usize, expected: usize },
    #[error("orientation assigns edge {0} a head that is not an endpoint")]
    BadHead(usize),
    #[error("{0} orientation is not valid")]
    InvalidOrientation(&'static str),
}

/// A nondeterministic constraint logic machine with two orientations.
///
/// Edges are identified by index, so parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NclInstance {
    n: usize,
    edges: Vec<NclEdge>,
    incident: Vec<Vec<usize>>,
    kinds: Vec<VertexKind>,
    pub initial: Orientation,
    pub target: Orientation,
}

impl NclInstance {
    pub fn new(
        n: usize,
        edges: Vec<NclEdge>,
        initial: Orientation,
        target: Orientation,
    ) -> Result<Self, NclError> {
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(NclError::OutOfRange(i));
            }
            if e.u == e.v {
                return Err(NclError::SelfLoop(i));
            }
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        let mut kinds = Vec::with_capacity(n);
        for (x, inc) in incident.iter().enumerate() {
            let red = inc.iter().filter(|&&i| edges[i].color == EdgeColor::Red).count();
            let blue = inc.len() - red;
            kinds.push(match (red, blue) {
                (2, 1) => VertexKind::And,
                (0, 3) => VertexKind::Or,
                (0, 2) => VertexKind::Copy,
                _ => return Err(NclError::BadVertex(x)),
            });
        }
        let inst = NclInstance {
            n,
            edges,
            incident,
            kinds,
            initial,
            target,
        };
        for (name, d) in [("initial", &inst.initial), ("target", &inst.target)] {
            inst.check_heads(d)?;
            if !inst.orientation_valid(d) {
                return Err(NclError::InvalidOrientation(name));
            }
        }
        Ok(inst)
    }

    fn check_heads(&self, d: &Orientation) -> Result<(), NclError> {
        if d.len() != self.edges.len() {
            return Err(NclError::OrientationLength {
                got: d.len(),
                expected: self.edges.len(),
            });
        }
        for (i, e) in self.edges.iter().enumerate() {
            if d[i] != e.u && d[i] != e.v {
                return Err(NclError::BadHead(i));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[NclEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> NclEdge {
        self.edges[i]
    }

    /// Indices of the edges incident to `x`, increasing.
    pub fn incident(&self, x: usize) -> &[usize] {
        &self.incident[x]
    }

    pub fn kind(&self, x: usize) -> VertexKind {
        self.kinds[x]
    }

    /// Weighted in-degree of `x` under `d`.
    pub fn in_weight(&self, d: &Orientation, x: usize) -> usize {
        self.incident[x]
            .iter()
            .filter(|&&i| d[i] == x)
            .map(|&i| self.edges[i].color.weight())
            .sum()
    }

    /// Every vertex has weighted in-degree at least 2.
    pub fn orientation_valid(&self, d: &Orientation) -> bool {
        d.len() == self.edges.len() && (0..self.n).all(|x| self.in_weight(d, x) >= 2)
    }

    /// Orientation with edge `i` reversed.
    pub fn flipped(&self, d: &Orientation, i: usize) -> Orientation {
        let mut out = d.clone();
        out[i] = self.edges[i].other(d[i]);
        out
    }
}

pub fn orientation_valid(ncl: &NclInstance, d: &Orientation) -> bool {
    ncl.orientation_valid(d)
}

/// One NCL certificate step: edge `edge` now points at `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flip {
    pub edge: usize,
    pub head: usize,
}

/// Checks a sequence of orientations: starts at the initial orientation, ends
/// at the target, every member valid, consecutive members differ on one edge.
pub fn ncl_validate_sequence(ncl: &NclInstance, seq: &[Orientation]) -> Validation {
    let Some(first) = seq.first() else {
        return Validation::Invalid {
            index: 0,
            reason: "empty orientation sequence".into(),
        };
    };
    if *first != ncl.initial {
        return Validation::Invalid {
            index: 0,
            reason: "sequence does not start at the initial orientation".into(),
        };
    }
    for (i, d) in seq.iter().enumerate() {
        if ncl.check_heads(d).is_err() || !ncl.orientation_valid(d) {
            return Validation::Invalid {
                index: i,
                reason: format!("orientation {i} is not valid"),
            };
        }
        if i > 0 {
            let diff = d.iter().zip(&seq[i - 1]).filter(|(a, b)| a != b).count();
            if diff != 1 {
                return Validation::Invalid {
                    index: i,
                    reason: format!("step {i} changes {diff} edges"),
                };
            }
        }
    }
    if seq.last() != Some(&ncl.target) {
        return Validation::Invalid {
            index: seq.len(),
            reason: "sequence does not end at the target orientation".into(),
        };
    }
    Validation::Valid
}

/// Expands flip steps into the orientations they visit, starting from the
/// initial orientation. Fails on a head that is not an endpoint of its edge.
pub fn ncl_orientations(ncl: &NclInstance, flips: &[Flip]) -> Result<Vec<Orientation>, usize> {
    let mut cur = ncl.initial.clone();
    let mut out = vec![cur.clone()];
    for (i, f) in flips.iter().enumerate() {
        let Some(e) = ncl.edges.get(f.edge) else {
            return Err(i);
        };
        if f.head != e.u && f.head != e.v {
            return Err(i);
        }
        cur[f.edge] = f.head;
        out.push(cur.clone());
    }
    Ok(out)
}

pub fn is_dominating_set(g: &Graph, s: &VertexSet) -> bool {
    (0..g.n()).all(|v| s.contains(v) || !g.neighbor_set(v).is_disjoint(s))
}

/// Dominating set reconfiguration rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DsRule {
    /// Add or remove one vertex; sets never exceed the size bound.
    AdditionRemoval,
    /// Exchange one vertex; sets keep the source size.
    Jumping,
}

impl fmt::Display for DsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DsRule::AdditionRemoval => write!(f, "tar"),
            DsRule::Jumping => write!(f, "tj"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsInstance {
    pub graph: Graph,
    pub bound: usize,
    pub rule: DsRule,
    pub source: VertexSet,
    pub target: VertexSet,
}

impl DsInstance {
    pub fn new(
        graph: Graph,
        bound: usize,
        rule: DsRule,
        source: &[usize],
        target: &[usize],
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        if source.iter().chain(target).any(|&v| v >= n) {
            return Err(InstanceError::OutOfRange);
        }
        let inst = DsInstance {
            source: VertexSet::from_slice(n, source),
            target: VertexSet::from_slice(n, target),
            graph,
            bound,
            rule,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<(), InstanceError> {
        let n = self.graph.n();
        if self.source.capacity() != n || self.target.capacity() != n {
            return Err(InstanceError::OutOfRange);
        }
        for (name, set) in [("source", &self.source), ("target", &self.target)] {
            if !is_dominating_set(&self.graph, set) {
                return Err(InstanceError::NotDominating(name));
            }
            if set.len() > self.bound {
                return Err(InstanceError::AboveBound(name));
            }
        }
        if self.rule == DsRule::Jumping && self.source.len() != self.target.len() {
            return Err(InstanceError::SizeMismatch(self.source.len(), self.target.len()));
        }
        Ok(())
    }
}

pub fn ds_apply_move(inst: &DsInstance, state: &VertexSet, mv: Move) -> Result<VertexSet, IllegalMove> {
    let rule = match inst.rule {
        DsRule::Jumping => Rule::TokenJumping,
        DsRule::AdditionRemoval => Rule::TokenAdditionRemoval { threshold: 0 },
    };
    let next = step_tokens(&inst.graph, rule, state, mv)?;
    if next.len() > inst.bound {
        return Err(IllegalMove::AboveBound {
            size: next.len(),
            bound: inst.bound,
        });
    }
    if !is_dominating_set(&inst.graph, &next) {
        return Err(IllegalMove::NotDominating);
    }
    Ok(next)
}

pub fn ds_validate_sequence(inst: &DsInstance, seq: &MoveSequence) -> Validation {
    let mut state = inst.source.clone();
    for (index, &mv) in seq.moves().iter().enumerate() {
        match ds_apply_move(inst, &state, mv) {
            Ok(next) => state = next,
            Err(e) => {
                return Validation::Invalid {
                    index,
                    reason: format!("{mv}: {e}"),
                }
            }
        }
    }
    if state != inst.target {
        return Validation::Invalid {
            index: seq.len(),
            reason: format!("final state {state} differs from target {}", inst.target),
        };
    }
    Validation::Valid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slide(from: usize, to: usize) -> Move {
        Move::Slide { from, to }
    }

    #[test]
    fn apply_move_examples() {
        let p3 = Graph::path(3);
        let ts = Rule::TokenSliding;
        let s = p3.vertex_set(&[0]);
        assert_eq!(apply_move(&p3, 1, ts, &s, slide(0, 1)), Ok(p3.vertex_set(&[1])));
        let s = p3.vertex_set(&[0, 2]);
        assert_eq!(
            apply_move(&p3, 1, ts, &s, slide(0, 1)),
            Err(IllegalMove::NotColorable(1))
        );
        let star = Graph::star(3);
        let s = star.vertex_set(&[1, 2]);
        assert_eq!(
            apply_move(&star, 2, ts, &s, slide(1, 0)),
            Ok(star.vertex_set(&[0, 2]))
        );
    }

    #[test]
    fn apply_move_rejections() {
        let p3 = Graph::path(3);
        let s = p3.vertex_set(&[0]);
        let ts = Rule::TokenSliding;
        assert_eq!(apply_move(&p3, 1, ts, &s, slide(0, 2)), Err(IllegalMove::NotAdjacent(0, 2)));
        assert_eq!(apply_move(&p3, 1, ts, &s, slide(1, 2)), Err(IllegalMove::NoToken(1)));
        assert_eq!(apply_move(&p3, 1, ts, &s, slide(0, 7)), Err(IllegalMove::OutOfRange(7)));
        assert!(matches!(
            apply_move(&p3, 1, ts, &s, Move::Add(2)),
            Err(IllegalMove::WrongRule(..))
        ));
        let tj = Rule::TokenJumping;
        assert_eq!(
            apply_move(&p3, 1, tj, &s, Move::Jump { from: 0, to: 2 }),
            Ok(p3.vertex_set(&[2]))
        );
        assert!(matches!(
            apply_move(&p3, 1, tj, &s, slide(0, 1)),
            Err(IllegalMove::WrongRule(..))
        ));
        let tar = Rule::TokenAdditionRemoval { threshold: 1 };
        assert_eq!(
            apply_move(&p3, 1, tar, &s, Move::Remove(0)),
            Err(IllegalMove::BelowThreshold { size: 0, threshold: 1 })
        );
        assert_eq!(apply_move(&p3, 1, tar, &s, Move::Add(2)), Ok(p3.vertex_set(&[0, 2])));
        assert_eq!(apply_move(&p3, 1, tar, &s, Move::Add(0)), Err(IllegalMove::Occupied(0)));
    }

    #[test]
    fn validate_sequence_examples() {
        let inst = ReconfigInstance::new(Graph::path(3), 1, Rule::TokenSliding, &[0], &[2]).unwrap();
        assert!(validate_sequence(&inst, &MoveSequence(vec![slide(0, 1), slide(1, 2)])).is_valid());
        let short = validate_sequence(&inst, &MoveSequence(vec![slide(0, 1)]));
        assert_eq!(short.failure_index(), Some(1));
        let bad = validate_sequence(&inst, &MoveSequence(vec![slide(1, 2)]));
        assert_eq!(bad.failure_index(), Some(0));
        let same = ReconfigInstance::new(Graph::path(3), 1, Rule::TokenSliding, &[1], &[1]).unwrap();
        assert!(validate_sequence(&same, &MoveSequence::new()).is_valid());
        // reversal validates the swapped instance
        let fwd = MoveSequence(vec![slide(0, 1), slide(1, 2)]);
        assert!(validate_sequence(&inst.swapped(), &fwd.reversed()).is_valid());
    }

    #[test]
    fn instance_invariants() {
        let p3 = Graph::path(3);
        assert_eq!(
            ReconfigInstance::new(p3.clone(), 1, Rule::TokenSliding, &[0, 1], &[0, 2]),
            Err(InstanceError::NotColorable("source", 1))
        );
        assert_eq!(
            ReconfigInstance::new(p3.clone(), 1, Rule::TokenSliding, &[0], &[0, 2]),
            Err(InstanceError::SizeMismatch(1, 2))
        );
        assert_eq!(
            ReconfigInstance::new(p3.clone(), 0, Rule::TokenSliding, &[0], &[2]),
            Err(InstanceError::ZeroColorBound)
        );
        // TAR allows different sizes as long as both meet the threshold
        let tar = Rule::TokenAdditionRemoval { threshold: 1 };
        assert!(ReconfigInstance::new(p3.clone(), 1, tar, &[0], &[0, 2]).is_ok());
        assert_eq!(
            ReconfigInstance::new(p3, 1, Rule::TokenAdditionRemoval { threshold: 2 }, &[0], &[0, 2]),
            Err(InstanceError::BelowThreshold("source"))
        );
    }

    fn copy_or_fixture() -> NclInstance {
        // vertex 0: COPY with blue edges 0,1 to vertex 1; vertex 1 would be
        // degree two as well, so make both COPY vertices of a blue 2-cycle.
        let edges = vec![
            NclEdge { u: 0, v: 1, color: EdgeColor::Blue },
            NclEdge { u: 0, v: 1, color: EdgeColor::Blue },
        ];
        NclInstance::new(2, edges, vec![1, 0], vec![0, 1]).unwrap()
    }

    #[test]
    fn orientation_weights() {
        let ncl = copy_or_fixture();
        assert!(ncl.orientation_valid(&vec![1, 0]));
        // vertex 1 gets both blue edges: weight 4, but vertex 0 gets 0
        assert_eq!(ncl.in_weight(&vec![1, 1], 1), 4);
        assert!(!ncl.orientation_valid(&vec![1, 1]));
        assert!(orientation_valid(&ncl, &vec![0, 1]));
    }

    #[test]
    fn and_vertex_with_one_red_incoming_is_invalid() {
        // AND vertex 0 with red edges to 1 and 2, blue edge to COPY 3; 1 and 2
        // are AND vertices sharing a red edge and a blue edge to COPY 4 / 3.
        let red = EdgeColor::Red;
        let blue = EdgeColor::Blue;
        let edges = vec![
            NclEdge { u: 0, v: 1, color: red },
            NclEdge { u: 0, v: 2, color: red },
            NclEdge { u: 1, v: 2, color: red },
            NclEdge { u: 0, v: 3, color: blue },
            NclEdge { u: 1, v: 3, color: blue },
            NclEdge { u: 2, v: 4, color: blue },
            NclEdge { u: 4, v: 5, color: blue },
            NclEdge { u: 5, v: 6, color: blue },
        ];
        // vertices 5, 6 complete the wiring: 5 COPY, 6 would be degree 1 -> bad
        let err = NclInstance::new(7, edges, vec![0; 8], vec![0; 8]).unwrap_err();
        assert_eq!(err, NclError::BadVertex(6));

        let edges = vec![
            NclEdge { u: 0, v: 1, color: red },
            NclEdge { u: 0, v: 1, color: red },
            NclEdge { u: 0, v: 2, color: blue },
            NclEdge { u: 1, v: 2, color: blue },
        ];
        // blue edges into the AND vertices, COPY 2 gets nothing -> invalid
        let d = vec![1, 0, 0, 1];
        let good = vec![1, 1, 0, 2];
        let ncl = NclInstance::new(3, edges, good.clone(), good).unwrap();
        assert_eq!(ncl.kind(0), VertexKind::And);
        assert_eq!(ncl.kind(2), VertexKind::Copy);
        assert!(!ncl.orientation_valid(&d));
        // AND vertex 0 with only one red edge incoming and the blue edge away
        let d = vec![0, 1, 2, 2];
        assert_eq!(ncl.in_weight(&d, 0), 1);
        assert!(!ncl.orientation_valid(&d));
    }

    #[test]
    fn or_vertex_with_one_blue_incoming_is_valid_locally() {
        let blue = EdgeColor::Blue;
        // OR 0 and OR 1 joined by three COPY vertices 2,3,4
        let edges = vec![
            NclEdge { u: 0, v: 2, color: blue },
            NclEdge { u: 2, v: 1, color: blue },
            NclEdge { u: 0, v: 3, color: blue },
            NclEdge { u: 3, v: 1, color: blue },
            NclEdge { u: 0, v: 4, color: blue },
            NclEdge { u: 4, v: 1, color: blue },
        ];
        let d = vec![0, 2, 3, 1, 4, 1];
        let ncl = NclInstance::new(5, edges, d.clone(), d.clone()).unwrap();
        assert_eq!(ncl.kind(0), VertexKind::Or);
        assert_eq!(ncl.in_weight(&d, 0), 2);
        assert!(ncl.orientation_valid(&d));
    }

    #[test]
    fn ncl_sequence_checks() {
        let ncl = copy_or_fixture();
        let same = NclInstance::new(2, ncl.edges().to_vec(), vec![1, 0], vec![1, 0]).unwrap();
        assert!(ncl_validate_sequence(&same, &[vec![1, 0]]).is_valid());
        // flipping both edges at once
        let v = ncl_validate_sequence(&ncl, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(v.failure_index(), Some(1));
        // single flip leaves vertex 0 with weight 0
        let v = ncl_validate_sequence(&ncl, &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(v.failure_index(), Some(1));
        assert_eq!(ncl_orientations(&ncl, &[Flip { edge: 0, head: 0 }]), Ok(vec![vec![1, 0], vec![0, 0]]));
        assert_eq!(ncl_orientations(&ncl, &[Flip { edge: 0, head: 5 }]), Err(0));
    }

    #[test]
    fn dominating_set_examples() {
        let star = Graph::star(3);
        assert!(is_dominating_set(&star, &star.all_vertices()));
        assert!(is_dominating_set(&star, &star.vertex_set(&[0])));
        let p4 = Graph::path(4);
        assert!(!is_dominating_set(&p4, &p4.vertex_set(&[0])));
        assert!(is_dominating_set(&p4, &p4.vertex_set(&[1, 2])));
    }

    #[test]
    fn ds_moves() {
        let p4 = Graph::path(4);
        let inst = DsInstance::new(p4.clone(), 2, DsRule::Jumping, &[0, 2], &[1, 3]).unwrap();
        let seq = MoveSequence(vec![Move::Jump { from: 0, to: 1 }, Move::Jump { from: 2, to: 3 }]);
        // {1,2} then {1,3}: both dominating
        assert!(ds_validate_sequence(&inst, &seq).is_valid());
        let bad = MoveSequence(vec![Move::Jump { from: 0, to: 3 }]);
        assert_eq!(ds_validate_sequence(&inst, &bad).failure_index(), Some(0));
        let tar = DsInstance::new(p4, 2, DsRule::AdditionRemoval, &[0, 2], &[1, 3]).unwrap();
        let over = MoveSequence(vec![Move::Add(1)]);
        assert!(matches!(
            ds_apply_move(&tar, &tar.source, over.0[0]),
            Err(IllegalMove::AboveBound { size: 3, bound: 2 })
        ));
    }
}
