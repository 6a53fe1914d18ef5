//! Seeded random instances. The same parameters and seed always give the same
//! instance; sets are drawn by rejection sampling until they satisfy the
//! instance invariants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{chromatic_leq, Graph};
use crate::model::{
    is_dominating_set, DsInstance, DsRule, EdgeColor, NclEdge, NclInstance, Orientation, ReconfigInstance, Rule,
};
use crate::set::VertexSet;

/// Attempts per instance before giving up.
pub const RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameters out of range: {0}")]
    BadParameters(String),
    #[error("no valid instance found within {0} attempts")]
    Exhausted(usize),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random split graph: clique `0..clique`, independent side after it, each
/// clique/independent pair joined with probability `density`. Every
/// independent vertex gets at least one clique neighbor when the clique is
/// non-empty.
pub fn split_graph<R: Rng>(rng: &mut R, n: usize, clique: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
    }
    for i in clique..n {
        let mut any = false;
        for k in 0..clique {
            if rng.gen_bool(density) {
                edges.push((k, i));
                any = true;
            }
        }
        if !any && clique > 0 {
            edges.push((rng.gen_range(0..clique), i));
        }
    }
    Graph::new(n, edges).expect("generated split graph is simple")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParams {
    pub n: usize,
    pub clique: usize,
    pub colors: usize,
    pub tokens: usize,
    pub density: f64,
    /// Exact number of source tokens on the clique side, if fixed.
    pub source_clique: Option<usize>,
    /// Exact number of target tokens on the clique side, if fixed.
    pub target_clique: Option<usize>,
}

impl SplitParams {
    pub fn new(n: usize, colors: usize, tokens: usize) -> Self {
        SplitParams {
            n,
            clique: n / 2,
            colors,
            tokens,
            density: 0.5,
            source_clique: None,
            target_clique: None,
        }
    }
}

fn sample_set<R: Rng>(
    rng: &mut R,
    g: &Graph,
    clique: usize,
    tokens: usize,
    colors: usize,
    on_clique: Option<usize>,
) -> Option<VertexSet> {
    let n = g.n();
    let mut verts: Vec<usize> = match on_clique {
        None => (0..n).collect::<Vec<_>>().choose_multiple(rng, tokens).copied().collect(),
        Some(a) => {
            let ks: Vec<usize> = (0..clique).collect();
            let is: Vec<usize> = (clique..n).collect();
            let mut v: Vec<usize> = ks.choose_multiple(rng, a).copied().collect();
            v.extend(is.choose_multiple(rng, tokens - a));
            v
        }
    };
    verts.sort_unstable();
    let set = VertexSet::from_slice(n, &verts);
    chromatic_leq(g, &set, colors).then_some(set)
}

/// Random token-sliding instance on a split graph.
pub fn split_instance<R: Rng>(rng: &mut R, p: &SplitParams) -> Result<ReconfigInstance, GenError> {
    if p.clique > p.n || p.tokens > p.n || p.colors == 0 || !(0.0..=1.0).contains(&p.density) {
        return Err(GenError::BadParameters(format!("{p:?}")));
    }
    for a in [p.source_clique, p.target_clique].into_iter().flatten() {
        if a > p.tokens || a > p.clique || p.tokens - a > p.n - p.clique {
            return Err(GenError::BadParameters(format!("{a} clique tokens do not fit")));
        }
    }
    for _ in 0..RETRY_BUDGET {
        let g = split_graph(rng, p.n, p.clique, p.density);
        let s = sample_set(rng, &g, p.clique, p.tokens, p.colors, p.source_clique);
        let t = sample_set(rng, &g, p.clique, p.tokens, p.colors, p.target_clique);
        if let (Some(source), Some(target)) = (s, t) {
            return Ok(ReconfigInstance {
                graph: g,
                colors: p.colors,
                rule: Rule::TokenSliding,
                source,
                target,
            });
        }
    }
    Err(GenError::Exhausted(RETRY_BUDGET))
}

/// Random normalized constraint logic machine with `ands` AND vertices and
/// `ors` OR vertices; blue ports are paired through fresh COPY vertices and
/// red ports are matched among AND vertices. Both orientations are drawn
/// uniformly from the valid ones.
pub fn ncl_instance<R: Rng>(rng: &mut R, ands: usize, ors: usize) -> Result<NclInstance, GenError> {
    if !ands.is_multiple_of(2) || !(ands + 3 * ors).is_multiple_of(2) || ands + ors == 0 {
        return Err(GenError::BadParameters(format!(
            "{ands} AND and {ors} OR vertices leave unmatched ports"
        )));
    }
    let m = 2 * ands + 3 * ors;
    if m > 24 {
        return Err(GenError::BadParameters(format!("{m} edges exceed 24")));
    }
    'attempt: for _ in 0..RETRY_BUDGET {
        let mut red: Vec<usize> = (0..ands).flat_map(|x| [x, x]).collect();
        let mut blue: Vec<usize> = (0..ands).chain((ands..ands + ors).flat_map(|x| [x, x, x])).collect();
        red.shuffle(rng);
        blue.shuffle(rng);
        let mut edges = Vec::with_capacity(m);
        for pair in red.chunks(2) {
            if pair[0] == pair[1] {
                continue 'attempt;
            }
            edges.push(NclEdge {
                u: pair[0].min(pair[1]),
                v: pair[0].max(pair[1]),
                color: EdgeColor::Red,
            });
        }
        let mut n = ands + ors;
        for pair in blue.chunks(2) {
            for &x in pair {
                edges.push(NclEdge {
                    u: x,
                    v: n,
                    color: EdgeColor::Blue,
                });
            }
            n += 1;
        }
        let valid: Vec<Orientation> = (0u32..1 << m)
            .map(|bits| {
                edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| if bits >> i & 1 == 1 { e.v } else { e.u })
                    .collect()
            })
            .filter(|d: &Orientation| valid_heads(n, &edges, d))
            .collect();
        if valid.is_empty() {
            continue;
        }
        let d0 = valid.choose(rng).expect("non-empty").clone();
        let d1 = valid.choose(rng).expect("non-empty").clone();
        return NclInstance::new(n, edges, d0, d1).map_err(|e| GenError::BadParameters(e.to_string()));
    }
    Err(GenError::Exhausted(RETRY_BUDGET))
}

fn valid_heads(n: usize, edges: &[NclEdge], d: &Orientation) -> bool {
    let mut w = vec![0; n];
    for (e, &h) in edges.iter().zip(d) {
        w[h] += e.color.weight();
    }
    w.iter().all(|&x| x >= 2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DsParams {
    pub n: usize,
    pub density: f64,
    pub bound: usize,
    /// Size of source and target.
    pub size: usize,
    pub rule: DsRule,
}

/// Random dominating set instance on an Erdős–Rényi graph.
pub fn ds_instance<R: Rng>(rng: &mut R, p: &DsParams) -> Result<DsInstance, GenError> {
    if p.size > p.bound || p.size > p.n || p.size == 0 || !(0.0..=1.0).contains(&p.density) {
        return Err(GenError::BadParameters(format!("{p:?}")));
    }
    let all: Vec<usize> = (0..p.n).collect();
    for _ in 0..RETRY_BUDGET {
        let edges: Vec<(usize, usize)> = (0..p.n)
            .flat_map(|u| (u + 1..p.n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p.density))
            .collect();
        let g = Graph::new(p.n, edges).expect("simple");
        let draw = |rng: &mut R| {
            let v: Vec<usize> = all.choose_multiple(rng, p.size).copied().collect();
            let s = VertexSet::from_slice(p.n, &v);
            is_dominating_set(&g, &s).then_some(s)
        };
        let (Some(source), Some(target)) = (draw(rng), draw(rng)) else {
            continue;
        };
        return Ok(DsInstance {
            graph: g,
            bound: p.bound,
            rule: p.rule,
            source,
            target,
        });
    }
    Err(GenError::Exhausted(RETRY_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::split_partition;

    #[test]
    fn split_instances_are_deterministic_and_valid() {
        let p = SplitParams::new(12, 2, 4);
        let a = split_instance(&mut rng(7), &p).unwrap();
        let b = split_instance(&mut rng(7), &p).unwrap();
        assert_eq!(a, b);
        assert!(split_partition(&a.graph).is_some());
        a.check().unwrap();
        let fixed = SplitParams {
            source_clique: Some(2),
            target_clique: Some(1),
            ..p
        };
        let inst = split_instance(&mut rng(3), &fixed).unwrap();
        assert_eq!(inst.source.iter().filter(|&v| v < 6).count(), 2);
        assert_eq!(inst.target.iter().filter(|&v| v < 6).count(), 1);
    }

    #[test]
    fn ncl_instances() {
        for (a, o) in [(2, 0), (0, 2), (4, 0), (2, 2)] {
            let ncl = ncl_instance(&mut rng(1), a, o).unwrap();
            assert_eq!(ncl.m(), 2 * a + 3 * o);
            assert!(ncl.orientation_valid(&ncl.initial));
            assert!(ncl.orientation_valid(&ncl.target));
        }
        assert!(ncl_instance(&mut rng(1), 1, 1).is_err());
    }

    #[test]
    fn ds_instances() {
        let p = DsParams {
            n: 6,
            density: 0.5,
            bound: 3,
            size: 2,
            rule: DsRule::AdditionRemoval,
        };
        let ds = ds_instance(&mut rng(5), &p).unwrap();
        ds.check().unwrap();
        assert_eq!(ds, ds_instance(&mut rng(5), &p).unwrap());
    }
}
