//! Canonical vertex sets.
//!
//! Every reconfiguration state is a [`VertexSet`]: a fixed-capacity bit vector
//! over the vertex range of one graph. Two states over the same graph are equal
//! iff they contain the same vertices, which is what the visited-state indexes
//! of the oracle and the solver rely on.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of vertices of a graph with `capacity` vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(capacity))
    }

    /// Builds a set from a list of vertices. Panics if a vertex is out of range.
    pub fn from_slice(capacity: usize, vertices: &[usize]) -> Self {
        let mut set = Self::new(capacity);
        for &v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::new(capacity);
        set.0.insert_range(..);
        set
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    /// Returns true if the vertex was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity(), "vertex {v} out of range {}", self.capacity());
        !self.0.put(v)
    }

    /// Returns true if the vertex was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity() || !self.0.contains(v) {
            return false;
        }
        self.0.set(v, false);
        true
    }

    /// Vertices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
