use crate::graph::{split_partition, Graph};
use crate::model::{ReconfigInstance, Rule};
use crate::set::VertexSet;

use super::ReductionError;

/// Attaches `n` disjoint cliques of size `c - 1` to every edge of a split
/// graph, each clique vertex adjacent to both edge endpoints; every new vertex
/// joins both source and target.
///
/// New vertices follow the originals in (edge index, copy, member) order.
pub fn split_to_chordal(inst: &ReconfigInstance, c: usize) -> Result<ReconfigInstance, ReductionError> {
    if c < 2 {
        return Err(ReductionError::BadColorBound(c));
    }
    if inst.rule != Rule::TokenSliding || inst.colors != 1 || split_partition(&inst.graph).is_none() {
        return Err(ReductionError::NotIndependentSetInstance);
    }
    let g = &inst.graph;
    let n = g.n();
    let block = c - 1;
    let total = n + g.m() * n * block;
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut next = n;
    for &(u, v) in g.edges() {
        for _ in 0..n {
            let members: Vec<usize> = (next..next + block).collect();
            next += block;
            for (k, &w) in members.iter().enumerate() {
                edges.push((u, w));
                edges.push((v, w));
                for &x in &members[k + 1..] {
                    edges.push((w, x));
                }
            }
        }
    }
    let graph = Graph::new(total, edges).expect("attached cliques are simple");
    let widen = |set: &VertexSet| {
        let mut out = VertexSet::from_slice(total, &set.to_vec());
        for w in n..total {
            out.insert(w);
        }
        out
    };
    Ok(ReconfigInstance {
        source: widen(&inst.source),
        target: widen(&inst.target),
        graph,
        colors: c,
        rule: Rule::TokenSliding,
    })
}
