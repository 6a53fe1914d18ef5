//! Exhaustive breadth-first reachability.
//!
//! The oracle is the ground truth for every other component: it explores the
//! whole reconfiguration graph reachable from the source, one canonical state
//! per visited node, and extracts a shortest witness from parent pointers.

use std::hash::Hash;

use indexmap::IndexSet;
use thiserror::Error;

use crate::graph::Colorability;
use crate::model::{
    is_dominating_set, DsInstance, DsRule, Flip, Move, MoveSequence, NclInstance, ReconfigInstance,
    Rule,
};
use crate::set::VertexSet;

pub const DEFAULT_MAX_STATES: usize = 5_000_000;
pub const DEFAULT_MAX_NCL_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state limit of {0} exceeded")]
    ResourceLimit(usize),
    #[error("NCL instance has {0} edges, above the limit of {1}")]
    TooManyEdges(usize, usize),
    #[error("state filter rejects the {0} set")]
    FilterRejects(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_states: usize,
    pub max_ncl_edges: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_states: DEFAULT_MAX_STATES,
            max_ncl_edges: DEFAULT_MAX_NCL_EDGES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<W = MoveSequence> {
    pub reachable: bool,
    /// A shortest witness when reachable.
    pub witness: Option<W>,
    pub states_explored: usize,
}

/// Predicate on states; states it rejects are never entered.
pub type StateFilter<'a> = &'a dyn Fn(&VertexSet) -> bool;

/// Generic BFS over canonical states with parent pointers.
fn bfs<S, M, F>(
    start: S,
    goal: &S,
    max_states: usize,
    mut successors: F,
) -> Result<OracleResult<Vec<M>>, OracleError>
where
    S: Clone + Eq + Hash,
    M: Clone,
    F: FnMut(&S, &mut Vec<(M, S)>),
{
    let mut seen: IndexSet<S> = IndexSet::new();
    let mut parent: Vec<Option<(usize, M)>> = Vec::new();
    seen.insert(start);
    parent.push(None);
    let mut head = 0;
    let mut found = seen.get_index_of(goal);
    let mut buf = Vec::new();
    while found.is_none() && head < seen.len() {
        let cur = seen[head].clone();
        buf.clear();
        successors(&cur, &mut buf);
        for (mv, next) in buf.drain(..) {
            let (id, fresh) = seen.insert_full(next);
            if !fresh {
                continue;
            }
            if seen.len() > max_states {
                return Err(OracleError::ResourceLimit(max_states));
            }
            parent.push(Some((head, mv)));
            if seen[id] == *goal {
                found = Some(id);
                break;
            }
        }
        head += 1;
    }
    let witness = found.map(|mut id| {
        let mut moves = Vec::new();
        while let Some((p, mv)) = &parent[id] {
            moves.push(mv.clone());
            id = *p;
        }
        moves.reverse();
        moves
    });
    Ok(OracleResult {
        reachable: witness.is_some(),
        witness,
        states_explored: seen.len(),
    })
}

/// Successor states of `state` under the instance's rule, without filtering.
pub fn reconfig_successors(
    inst: &ReconfigInstance,
    col: &Colorability,
    state: &VertexSet,
    out: &mut Vec<(Move, VertexSet)>,
) {
    let g = &inst.graph;
    let c = inst.colors;
    let mut push = |mv: Move, next: VertexSet| {
        if col.check(g, &next, c) {
            out.push((mv, next));
        }
    };
    match inst.rule {
        Rule::TokenSliding => {
            for u in state.iter() {
                for &v in g.neighbors(u) {
                    if !state.contains(v) {
                        let mut next = state.clone();
                        next.remove(u);
                        next.insert(v);
                        push(Move::Slide { from: u, to: v }, next);
                    }
                }
            }
        }
        Rule::TokenJumping => {
            let free = state.complement();
            for u in state.iter() {
                for v in free.iter() {
                    let mut next = state.clone();
                    next.remove(u);
                    next.insert(v);
                    push(Move::Jump { from: u, to: v }, next);
                }
            }
        }
        Rule::TokenAdditionRemoval { threshold } => {
            if state.len() > threshold {
                for u in state.iter() {
                    let mut next = state.clone();
                    next.remove(u);
                    push(Move::Remove(u), next);
                }
            }
            for v in state.complement().iter() {
                let mut next = state.clone();
                next.insert(v);
                push(Move::Add(v), next);
            }
        }
    }
}

/// Breadth-first search from the source over rule-legal, c-colorable states
/// accepted by `filter`.
pub fn reconfig_oracle(
    inst: &ReconfigInstance,
    filter: Option<StateFilter<'_>>,
    opts: &OracleOptions,
) -> Result<OracleResult, OracleError> {
    if let Some(f) = filter {
        if !f(&inst.source) {
            return Err(OracleError::FilterRejects("source"));
        }
        if !f(&inst.target) {
            return Err(OracleError::FilterRejects("target"));
        }
    }
    let col = Colorability::new(&inst.graph);
    let res = bfs(inst.source.clone(), &inst.target, opts.max_states, |state, out| {
        reconfig_successors(inst, &col, state, out);
        if let Some(f) = filter {
            out.retain(|(_, next)| f(next));
        }
    })?;
    Ok(into_moves(res))
}

fn into_moves(res: OracleResult<Vec<Move>>) -> OracleResult {
    OracleResult {
        reachable: res.reachable,
        witness: res.witness.map(MoveSequence),
        states_explored: res.states_explored,
    }
}

/// Breadth-first search over valid orientations under single-edge flips.
pub fn ncl_oracle(ncl: &NclInstance, opts: &OracleOptions) -> Result<OracleResult<Vec<Flip>>, OracleError> {
    let m = ncl.m();
    if m > opts.max_ncl_edges || m > 63 {
        return Err(OracleError::TooManyEdges(m, opts.max_ncl_edges.min(63)));
    }
    // bit i set iff edge i points at its `v` endpoint
    let encode = |d: &[usize]| -> u64 {
        d.iter()
            .enumerate()
            .filter(|&(i, &h)| h == ncl.edge(i).v)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let head = |code: u64, i: usize| {
        let e = ncl.edge(i);
        if code >> i & 1 == 1 {
            e.v
        } else {
            e.u
        }
    };
    let valid = |code: u64, x: usize| -> bool {
        ncl.incident(x)
            .iter()
            .filter(|&&i| head(code, i) == x)
            .map(|&i| ncl.edge(i).color.weight())
            .sum::<usize>()
            >= 2
    };
    let start = encode(&ncl.initial);
    let goal = encode(&ncl.target);
    bfs(start, &goal, opts.max_states, |&code, out| {
        for i in 0..m {
            let next = code ^ (1 << i);
            let e = ncl.edge(i);
            // only the endpoint losing the edge can become invalid
            let loser = head(code, i);
            if valid(next, loser) {
                out.push((
                    Flip {
                        edge: i,
                        head: e.other(loser),
                    },
                    next,
                ));
            }
        }
    })
}

/// Breadth-first search over dominating sets.
///
/// Under [`DsRule::AdditionRemoval`] every set has at most `bound` vertices;
/// under [`DsRule::Jumping`] every set keeps the source size.
pub fn ds_oracle(inst: &DsInstance, opts: &OracleOptions) -> Result<OracleResult, OracleError> {
    let g = &inst.graph;
    let res = bfs(inst.source.clone(), &inst.target, opts.max_states, |state, out| match inst.rule {
        DsRule::Jumping => {
            let free = state.complement();
            for u in state.iter() {
                let mut base = state.clone();
                base.remove(u);
                for v in free.iter() {
                    let mut next = base.clone();
                    next.insert(v);
                    if is_dominating_set(g, &next) {
                        out.push((Move::Jump { from: u, to: v }, next));
                    }
                }
            }
        }
        DsRule::AdditionRemoval => {
            for u in state.iter() {
                let mut next = state.clone();
                next.remove(u);
                if is_dominating_set(g, &next) {
                    out.push((Move::Remove(u), next));
                }
            }
            if state.len() < inst.bound {
                for v in state.complement().iter() {
                    let mut next = state.clone();
                    next.insert(v);
                    out.push((Move::Add(v), next));
                }
            }
        }
    })?;
    Ok(into_moves(res))
}
