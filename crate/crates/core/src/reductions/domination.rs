use crate::graph::Graph;
use crate::model::{ds_validate_sequence, DsInstance, DsRule, Move, MoveSequence, ReconfigInstance, Rule};
use crate::set::VertexSet;

use super::ReductionError;

/// Rule of the colorable-set instance produced by [`dsr_to_split`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitRule {
    #[default]
    Sliding,
    Jumping,
    /// Addition and removal with lower threshold `n + k - 1`.
    AdditionRemoval,
}

/// Image of a vertex set of `G` in the split graph: its clique copies plus
/// the whole independent copy.
pub fn phi(n: usize, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new(2 * n);
    for v in s.iter() {
        out.insert(v);
    }
    for v in n..2 * n {
        out.insert(v);
    }
    out
}

/// Inverse of [`phi`] on sets containing the whole independent copy.
pub fn phi_inverse(n: usize, s: &VertexSet) -> Option<VertexSet> {
    if s.capacity() != 2 * n || (n..2 * n).any(|v| !s.contains(v)) {
        return None;
    }
    Some(VertexSet::from_slice(n, &s.iter().filter(|&v| v < n).collect::<Vec<_>>()))
}

/// Split graph on two copies of `V`: the first a clique, the second
/// independent, with `u` of the first copy adjacent to `v` of the second iff
/// `u` does not dominate `v`. The color bound is `k`.
pub fn dsr_to_split(ds: &DsInstance, rule: SplitRule) -> Result<ReconfigInstance, ReductionError> {
    if ds.rule != DsRule::Jumping {
        return Err(ReductionError::WrongRule(ds.rule.to_string()));
    }
    let k = ds.bound;
    if ds.source.len() != k || ds.target.len() != k {
        return Err(ReductionError::SizeMismatch {
            expected: k,
            source_size: ds.source.len(),
            target_size: ds.target.len(),
        });
    }
    let g = &ds.graph;
    let n = g.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            edges.push((u, w));
        }
        for v in 0..n {
            if u != v && !g.has_edge(u, v) {
                edges.push((u, n + v));
            }
        }
    }
    let graph = Graph::new(2 * n, edges).expect("split image is simple");
    let rule = match rule {
        SplitRule::Sliding => Rule::TokenSliding,
        SplitRule::Jumping => Rule::TokenJumping,
        SplitRule::AdditionRemoval => Rule::TokenAdditionRemoval {
            threshold: (n + k).saturating_sub(1),
        },
    };
    Ok(ReconfigInstance {
        graph,
        colors: k,
        rule,
        source: phi(n, &ds.source),
        target: phi(n, &ds.target),
    })
}

fn sizes_decrease(states: &[VertexSet], i: usize) -> bool {
    states[i].len() > states[i + 1].len()
}

/// Removes one pair of consecutive removals; false if there is none.
fn eliminate_once(states: &mut Vec<VertexSet>) -> bool {
    let Some(i) = (0..states.len().saturating_sub(2)).find(|&i| sizes_decrease(states, i) && sizes_decrease(states, i + 1))
    else {
        return false;
    };
    // first addition after the two removals; it exists because the sequence
    // ends at the source size
    let Some(j) = (i + 3..states.len()).find(|&j| states[j].len() > states[j - 1].len()) else {
        return false;
    };
    let u = states[i].difference(&states[i + 1]).first().expect("removal");
    let v = states[j].difference(&states[j - 1]).first().expect("addition");
    if u == v {
        for s in &mut states[i + 1..j] {
            s.insert(u);
        }
    } else if states[i + 1].contains(v) {
        for s in &mut states[i + 2..j] {
            s.insert(v);
        }
    } else {
        for s in &mut states[i + 2..j] {
            s.insert(v);
        }
        let mut extra = states[i + 1].clone();
        extra.insert(v);
        states.insert(i + 2, extra);
    }
    states.dedup();
    true
}

/// Converts a dominating-set witness under addition/removal into one under
/// jumping, for source and target of size `k - 1`.
///
/// Consecutive removals are eliminated one pair at a time until the moves
/// alternate; each remaining (removal, addition) or (addition, removal) pair
/// becomes one jump.
pub fn tar_to_tj(ds: &DsInstance, seq: &MoveSequence) -> Result<MoveSequence, ReductionError> {
    if ds.rule != DsRule::AdditionRemoval {
        return Err(ReductionError::WrongRule(ds.rule.to_string()));
    }
    let expected = ds.bound.saturating_sub(1);
    if ds.source.len() != expected || ds.target.len() != expected || ds.bound == 0 {
        return Err(ReductionError::SizeMismatch {
            expected,
            source_size: ds.source.len(),
            target_size: ds.target.len(),
        });
    }
    if let Some(index) = ds_validate_sequence(ds, seq).failure_index() {
        return Err(ReductionError::InvalidWitness(index));
    }
    let mut states = seq.trace(&ds.source);
    states.dedup();
    while eliminate_once(&mut states) {}

    if states.len().is_multiple_of(2) {
        // an odd number of moves cannot return to the source size
        return Err(ReductionError::InvalidWitness(states.len() - 1));
    }
    let mut out = MoveSequence::new();
    for k in (0..states.len() - 1).step_by(2) {
        let (a, b) = (&states[k], &states[k + 2]);
        if let (Some(from), Some(to)) = (a.difference(b).first(), b.difference(a).first()) {
            out.push(Move::Jump { from, to });
        }
    }
    let tj = DsInstance {
        rule: DsRule::Jumping,
        ..ds.clone()
    };
    if let Some(index) = ds_validate_sequence(&tj, &out).failure_index() {
        return Err(ReductionError::InvalidWitness(index));
    }
    Ok(out)
}
