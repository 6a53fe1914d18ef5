//! Test-side helpers: small graph enumeration and brute-force checks that do
//! not go through the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use reconfig_core::{Graph, VertexSet};

/// Adjacency matrix bitmask of `g` under relabelling `perm` (vertex v -> perm[v]).
fn code_under(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for &(u, v) in edges {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        // index of pair (a, b) in the upper triangle
        code |= 1 << (a * n + b);
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Lexicographically smallest adjacency code over all relabellings.
pub fn canonical_code(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| code_under(g.n(), g.edges(), p)).min().unwrap_or(0)
}

/// All split graphs on `n` vertices up to isomorphism.
///
/// Candidates put the clique on `0..k` and give every independent vertex a
/// neighborhood inside it; duplicates are removed by a brute-force canonical
/// form over all `n!` relabellings.
pub fn split_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for k in 0..=n {
        let r = n - k;
        // non-decreasing sequences of neighborhood masks, one per independent vertex
        let masks = 1usize << k;
        let mut seq = vec![0usize; r];
        loop {
            let mut edges = Vec::new();
            for u in 0..k {
                for v in u + 1..k {
                    edges.push((u, v));
                }
            }
            for (j, &mask) in seq.iter().enumerate() {
                for u in 0..k {
                    if mask >> u & 1 == 1 {
                        edges.push((u, k + j));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            if seen.insert(canonical_code(&g, &perms)) {
                out.push(g);
            }
            // next multiset
            let Some(pos) = (0..r).rev().find(|&p| seq[p] + 1 < masks) else {
                break;
            };
            let val = seq[pos] + 1;
            for x in &mut seq[pos..] {
                *x = val;
            }
        }
    }
    out
}

/// All labelled graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|bits| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// All `size`-subsets of `0..n` as vertex sets.
pub fn subsets(n: usize, size: usize) -> Vec<VertexSet> {
    (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == size)
        .map(|b| VertexSet::from_slice(n, &(0..n).filter(|&v| b >> v & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Whether `g[s]` has a proper coloring with `c` colors, by plain backtracking.
pub fn brute_colorable(g: &Graph, s: &VertexSet, c: usize) -> bool {
    let vs = s.to_vec();
    let mut color = vec![usize::MAX; g.n()];
    fn go(g: &Graph, vs: &[usize], i: usize, c: usize, color: &mut Vec<usize>) -> bool {
        if i == vs.len() {
            return true;
        }
        let v = vs[i];
        for k in 0..c {
            if g.neighbors(v).iter().all(|&w| color[w] != k) {
                color[v] = k;
                if go(g, vs, i + 1, c, color) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(g, &vs, 0, c, &mut color)
}

/// Largest clique by enumeration of all vertex subsets.
pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.n();
    (0u64..1 << n)
        .filter(|b| {
            (0..n).all(|u| (u + 1..n).all(|v| b >> u & 1 == 0 || b >> v & 1 == 0 || g.has_edge(u, v)))
        })
        .map(|b| b.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Whether some partition of the vertices is (clique, independent set).
pub fn brute_is_split(g: &Graph) -> bool {
    let n = g.n();
    (0u64..1 << n).any(|b| {
        let k = VertexSet::from_slice(n, &(0..n).filter(|&v| b >> v & 1 == 1).collect::<Vec<_>>());
        g.is_clique(&k) && g.is_independent(&k.complement())
    })
}

/// Whether `g` has an induced cycle of length at least 4, by checking every
/// vertex subset.
pub fn brute_is_chordal(g: &Graph) -> bool {
    let n = g.n();
    for b in 0u64..1 << n {
        let size = b.count_ones() as usize;
        if size < 4 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| b >> v & 1 == 1).collect();
        let deg2 = vs
            .iter()
            .all(|&v| vs.iter().filter(|&&w| g.has_edge(v, w)).count() == 2);
        if !deg2 {
            continue;
        }
        // an induced 2-regular subgraph is a union of cycles; check connectivity
        let mut seen = vec![vs[0]];
        let mut stack = vec![vs[0]];
        while let Some(v) = stack.pop() {
            for &w in &vs {
                if g.has_edge(v, w) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        if seen.len() == size {
            return false;
        }
    }
    true
}

pub fn splitmix(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
