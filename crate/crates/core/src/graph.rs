//! Simple undirected graphs and the structural predicates used throughout:
//! split partitions, perfect elimination orders, clique numbers of chordal
//! graphs and bounded colorability of induced subgraphs.

use std::collections::VecDeque;

use thiserror::Error;

use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("order is not a perfect elimination order")]
    NotPerfectElimination,
}

/// Simple undirected graph on the vertices `0..n`.
///
/// Edges are stored with `u < v` in sorted order; neighbor lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    nbr: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut nbr = vec![VertexSet::new(n); n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !nbr[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            nbr[v].insert(u);
            list.push((u, v));
        }
        list.sort_unstable();
        let adj = nbr.iter().map(VertexSet::to_vec).collect();
        Ok(Graph {
            n,
            edges: list,
            adj,
            nbr,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("edgeless graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle graph")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.nbr[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.nbr[u].contains(v)
    }

    pub fn vertex_set(&self, vertices: &[usize]) -> VertexSet {
        VertexSet::from_slice(self.n, vertices)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::new(self.n, edges).expect("complement of a simple graph")
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in increasing order.
    /// The second component maps new labels back to the original vertices.
    pub fn induced(&self, vertices: &VertexSet) -> (Graph, Vec<usize>) {
        let back = vertices.to_vec();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| fwd[u] != usize::MAX && fwd[v] != usize::MAX)
            .map(|&(u, v)| (fwd[u], fwd[v]));
        (Graph::new(back.len(), edges).expect("induced subgraph"), back)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|v| s.difference(&self.nbr[v]).len() == 1)
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.nbr[v].is_disjoint(s))
    }
}

/// Partition of a split graph into a clique side and an independent side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub independent: VertexSet,
}

impl SplitPartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.clique.capacity() == g.n()
            && self.independent.capacity() == g.n()
            && self.clique.is_disjoint(&self.independent)
            && self.clique.union(&self.independent).len() == g.n()
            && g.is_clique(&self.clique)
            && g.is_independent(&self.independent)
    }
}

/// Recognizes split graphs from the degree sequence and extracts a partition.
///
/// Among all clique sides of maximum size the lexicographically smallest
/// sorted vertex list is returned.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    if n == 0 {
        return Some(SplitPartition {
            clique: VertexSet::new(0),
            independent: VertexSet::new(0),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    // largest k with d_k >= k - 1 (1-based)
    let k = (1..=n).take_while(|&i| deg[i - 1] + 1 >= i).last().unwrap_or(0);
    let head: usize = deg[..k].iter().sum();
    let tail: usize = deg[k..].iter().sum();
    if head != k * (k - 1) + tail {
        return None;
    }
    let clique = VertexSet::from_slice(n, &order[..k]);
    let base = SplitPartition {
        independent: clique.complement(),
        clique,
    };
    debug_assert!(base.is_valid_for(g));

    // Any other maximum clique side swaps exactly one vertex with the
    // independent side.
    let mut best = base.clique.to_vec();
    for v in base.independent.iter() {
        let missing = base.clique.difference(g.neighbor_set(v));
        if missing.len() != 1 {
            continue;
        }
        let x = missing.first().expect("one vertex");
        let mut clique = base.clique.clone();
        clique.remove(x);
        clique.insert(v);
        let cand = SplitPartition {
            independent: clique.complement(),
            clique,
        };
        if cand.is_valid_for(g) {
            let list = cand.clique.to_vec();
            if list < best {
                best = list;
            }
        }
    }
    let clique = VertexSet::from_slice(n, &best);
    Some(SplitPartition {
        independent: clique.complement(),
        clique,
    })
}

/// A permutation of the vertices in which the later neighbors of every vertex
/// form a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    order: Vec<usize>,
}

impl EliminationOrder {
    /// Wraps an arbitrary permutation; validity is checked by the consumers.
    pub fn from_order(order: Vec<usize>) -> Self {
        EliminationOrder { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// For each vertex, the neighbors appearing after it in the order.
    pub fn later_neighbors(&self, g: &Graph) -> Vec<VertexSet> {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        (0..g.n())
            .map(|v| {
                let mut later = VertexSet::new(g.n());
                for &w in g.neighbors(v) {
                    if pos[w] > pos[v] {
                        later.insert(w);
                    }
                }
                later
            })
            .collect()
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        if self.order.len() != g.n() {
            return false;
        }
        let mut seen = VertexSet::new(g.n());
        for &v in &self.order {
            if v >= g.n() || !seen.insert(v) {
                return false;
            }
        }
        self.later_neighbors(g).iter().all(|later| g.is_clique(later))
    }
}

/// Maximum cardinality search followed by verification of the reversed visit
/// order. Returns `None` iff `g` is not chordal.
pub fn elimination_order(g: &Graph) -> Option<EliminationOrder> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    buckets[0] = (0..n).rev().collect();
    let mut high = 0;
    let mut visit = Vec::with_capacity(n);
    while visit.len() < n {
        let v = loop {
            match buckets[high].pop() {
                Some(v) if !done[v] && weight[v] == high => break v,
                Some(_) => continue,
                None => high -= 1,
            }
        };
        done[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
                buckets[weight[w]].push(w);
                high = high.max(weight[w]);
            }
        }
    }
    visit.reverse();
    let ord = EliminationOrder { order: visit };
    ord.is_perfect_for(g).then_some(ord)
}

/// Clique number of a chordal graph read off a perfect elimination order.
pub fn clique_number_chordal(g: &Graph, ord: &EliminationOrder) -> Result<usize, GraphError> {
    if !ord.is_perfect_for(g) {
        return Err(GraphError::NotPerfectElimination);
    }
    Ok(ord
        .later_neighbors(g)
        .iter()
        .map(|later| later.len() + 1)
        .max()
        .unwrap_or(0))
}

/// Whether the subgraph induced by `s` can be properly colored with `c` colors.
pub fn chromatic_leq(g: &Graph, s: &VertexSet, c: usize) -> bool {
    if s.len() <= c {
        return true;
    }
    if c == 0 {
        return false;
    }
    if c == 1 {
        return g.is_independent(s);
    }
    let (h, _) = g.induced(s);
    match elimination_order(&h) {
        Some(ord) => clique_number_chordal(&h, &ord).expect("verified order") <= c,
        None => colorable_exhaustive(&h, c),
    }
}

/// Backtracking c-coloring; exponential, meant for desk-scale graphs.
pub fn colorable_exhaustive(g: &Graph, c: usize) -> bool {
    fn extend(g: &Graph, order: &[usize], colors: &mut [usize], i: usize, c: usize) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        // symmetry breaking: never open more than one new color at a time
        let used = order[..i].iter().map(|&u| colors[u] + 1).max().unwrap_or(0);
        for col in 0..c.min(used + 1) {
            if g.neighbors(v).iter().all(|&w| colors[w] != col) {
                colors[v] = col;
                if extend(g, order, colors, i + 1, c) {
                    return true;
                }
            }
        }
        colors[v] = usize::MAX;
        false
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; g.n()];
    extend(g, &order, &mut colors, 0, c)
}

/// Connected components, each sorted, listed by minimum element.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Colorability tests against one fixed graph.
///
/// When the host graph is chordal every induced subgraph inherits its perfect
/// elimination order, so the clique number of `G[S]` is one plus the largest
/// number of later neighbors inside `S`. Otherwise each query falls back to
/// [`chromatic_leq`].
#[derive(Debug, Clone)]
pub struct Colorability {
    later: Option<Vec<VertexSet>>,
}

impl Colorability {
    pub fn new(g: &Graph) -> Self {
        let later = elimination_order(g).map(|ord| ord.later_neighbors(g));
        Colorability { later }
    }

    pub fn host_is_chordal(&self) -> bool {
        self.later.is_some()
    }

    pub fn check(&self, g: &Graph, s: &VertexSet, c: usize) -> bool {
        if s.len() <= c {
            return true;
        }
        if c == 0 {
            return false;
        }
        if c == 1 {
            return g.is_independent(s);
        }
        match &self.later {
            Some(later) => s.iter().all(|v| later[v].intersection_count(s) < c),
            None => chromatic_leq(g, s, c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_pendant() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_rejects_malformed_edges() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn split_partition_examples() {
        let p = split_partition(&triangle_pendant()).unwrap();
        assert_eq!(p.clique.to_vec(), vec![0, 1, 2]);
        assert_eq!(p.independent.to_vec(), vec![3]);
        assert!(split_partition(&Graph::cycle(4)).is_none());
        assert!(split_partition(&Graph::cycle(5)).is_none());
        // two disjoint edges: 2K2 is the other forbidden subgraph
        assert!(split_partition(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()).is_none());
    }

    #[test]
    fn split_partition_star_takes_largest_clique_side() {
        // {0,1} and {0} are both clique sides of the star; the larger wins.
        let p = split_partition(&Graph::star(3)).unwrap();
        assert_eq!(p.clique.to_vec(), vec![0, 1]);
        assert_eq!(p.independent.to_vec(), vec![2, 3]);
    }

    #[test]
    fn split_partition_tie_break_is_lexicographic() {
        // path 0-1-2: clique sides {0,1} and {1,2}
        let p = split_partition(&Graph::path(3)).unwrap();
        assert_eq!(p.clique.to_vec(), vec![0, 1]);
        // path 2-0-1 relabelled: edges 0-2, 0-1 -> sides {0,1},{0,2}
        let g = Graph::new(3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(split_partition(&g).unwrap().clique.to_vec(), vec![0, 1]);
    }

    #[test]
    fn elimination_order_examples() {
        let tri = Graph::complete(3);
        assert!(elimination_order(&tri).is_some());
        for perm in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert!(EliminationOrder::from_order(perm.to_vec()).is_perfect_for(&tri));
        }
        assert!(elimination_order(&Graph::cycle(4)).is_none());
        assert!(elimination_order(&Graph::cycle(6)).is_none());
        assert!(elimination_order(&Graph::path(6)).is_some());
        assert!(!EliminationOrder::from_order(vec![0, 0, 1]).is_perfect_for(&tri));
    }

    #[test]
    fn clique_number_examples() {
        let e5 = Graph::empty(5);
        assert_eq!(clique_number_chordal(&e5, &elimination_order(&e5).unwrap()), Ok(1));
        let k4 = Graph::complete(4);
        assert_eq!(clique_number_chordal(&k4, &elimination_order(&k4).unwrap()), Ok(4));
        let tp = triangle_pendant();
        assert_eq!(clique_number_chordal(&tp, &elimination_order(&tp).unwrap()), Ok(3));
        // 1-0-2 has 0's later neighbors {1,2} non-adjacent
        let p3 = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            clique_number_chordal(&p3, &EliminationOrder::from_order(vec![0, 1, 2])),
            Err(GraphError::NotPerfectElimination)
        );
    }

    #[test]
    fn chromatic_leq_examples() {
        let k3 = Graph::complete(3);
        let all = k3.all_vertices();
        assert!(chromatic_leq(&k3, &all, 3));
        assert!(!chromatic_leq(&k3, &all, 2));
        let star = Graph::star(3);
        assert!(chromatic_leq(&star, &star.vertex_set(&[0, 2]), 2));
        assert!(!chromatic_leq(&star, &star.vertex_set(&[0, 2]), 1));
        // C5 is not chordal: exhaustive search path
        let c5 = Graph::cycle(5);
        assert!(!chromatic_leq(&c5, &c5.all_vertices(), 2));
        assert!(chromatic_leq(&c5, &c5.all_vertices(), 3));
        let c4 = Graph::cycle(4);
        assert!(chromatic_leq(&c4, &c4.all_vertices(), 2));
    }

    #[test]
    fn connected_components_examples() {
        assert_eq!(connected_components(&Graph::path(3)), vec![vec![0, 1, 2]]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(
            connected_components(&Graph::empty(3)),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = Graph::new(4, [(3, 1)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn colorability_matches_chromatic_leq_on_chordal_host() {
        let g = triangle_pendant();
        let col = Colorability::new(&g);
        assert!(col.host_is_chordal());
        for mask in 0u32..16 {
            let s: Vec<usize> = (0..4).filter(|b| mask >> b & 1 == 1).collect();
            let s = g.vertex_set(&s);
            for c in 1..=3 {
                assert_eq!(col.check(&g, &s, c), chromatic_leq(&g, &s, c), "{s} c={c}");
            }
        }
    }
}
