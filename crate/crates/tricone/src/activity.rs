//! Internal activity of spanning trees under a total edge order, and the
//! h-vector obtained by counting passive elements.

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

use crate::graph::{is_spanning_tree, spanning_trees, EdgeSet, Graph, UnionFind};
use crate::{Error, Result};

/// A total order on the edges of a graph: a bijection between edge indices
/// and positions `0..m` (position 0 is smallest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl EdgeOrder {
    /// The order that ranks edges by their index.
    pub fn identity(m: usize) -> EdgeOrder {
        EdgeOrder {
            rank: (0..m).collect(),
            by_rank: (0..m).collect(),
        }
    }

    /// Builds an order from the full sequence of edge indices, smallest
    /// first. Must be a permutation of `0..m`.
    pub fn from_sequence(seq: Vec<usize>) -> Result<EdgeOrder> {
        let m = seq.len();
        let mut rank = vec![usize::MAX; m];
        for (pos, &e) in seq.iter().enumerate() {
            if e >= m || rank[e] != usize::MAX {
                return Err(Error::Internal(
                    "edge order is not a permutation".to_string(),
                ));
            }
            rank[e] = pos;
        }
        Ok(EdgeOrder { rank, by_rank: seq })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Position of edge `e` in the order.
    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    /// Edge at position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.by_rank[pos]
    }

    /// Edges from smallest to largest.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_rank.iter().copied()
    }
}

/// The h-vector `(h_0, ..., h_r)`: `h_i` counts spanning trees with exactly
/// `i` passive elements. Always has `r + 1` entries, trailing zeros kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<u64>);

impl HVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Equality that ignores trailing zeros, used when comparing graphs of
    /// different rank (for instance before and after contracting coloops).
    pub fn eq_ignoring_trailing_zeros(&self, other: &HVector) -> bool {
        let a = trim(&self.0);
        let b = trim(&other.0);
        a == b
    }
}

fn trim(v: &[u64]) -> &[u64] {
    let mut end = v.len();
    while end > 1 && v[end - 1] == 0 {
        end -= 1;
    }
    &v[..end]
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

/// Kruskal scan in increasing order: the lexicographically smallest spanning
/// tree. It is the unique basis with no passive elements.
pub fn lex_min_basis(g: &Graph, order: &EdgeOrder) -> Result<EdgeSet> {
    if !g.is_connected_ignoring_loops() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut tree = EdgeSet::new(g.edge_count());
    for e in order.iter() {
        let (u, v) = g.edge(e);
        if u != v && uf.union(u, v) {
            tree.insert(e);
        }
    }
    Ok(tree)
}

/// The passive elements of basis `b`: those `i` in `b` for which some
/// smaller `j` outside `b` gives another spanning tree `b - i + j`. Computed
/// by the exchange definition directly; this function is the oracle the rest
/// of the crate is validated against.
pub fn passive_set(g: &Graph, order: &EdgeOrder, b: &EdgeSet) -> Result<EdgeSet> {
    if !is_spanning_tree(g, b) {
        return Err(Error::NotASpanningTree);
    }
    let m = g.edge_count();
    let mut passive = EdgeSet::new(m);
    for i in b.iter() {
        let ri = order.rank(i);
        let mut candidate = b.clone();
        candidate.remove(i);
        for j in 0..m {
            if b.contains(j) || order.rank(j) >= ri {
                continue;
            }
            candidate.insert(j);
            let ok = is_spanning_tree(g, &candidate);
            candidate.remove(j);
            if ok {
                passive.insert(i);
                break;
            }
        }
    }
    Ok(passive)
}

/// Histogram of passivities over all spanning trees.
pub fn h_vector(g: &Graph, order: &EdgeOrder, cap: u64) -> Result<HVector> {
    if !g.is_connected_ignoring_loops() {
        return Err(Error::Disconnected);
    }
    let trees = spanning_trees(g, cap)?;
    let r = g.vertex_count() - 1;
    let counts = trees
        .par_iter()
        .map(|t| passive_set(g, order, t).map(|p| p.len()))
        .try_fold(
            || vec![0u64; r + 1],
            |mut acc, p| {
                let p = p?;
                acc[p] += 1;
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(
            || vec![0u64; r + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;
    Ok(HVector(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, DEFAULT_TREE_CAP};

    fn diamond() -> Graph {
        // Four vertices, five edges; edge index i corresponds to label i + 1.
        parse_graph("0 1\n0 2\n0 3\n1 3\n2 3").unwrap()
    }

    #[test]
    fn lex_min_of_diamond() {
        let g = diamond();
        let order = EdgeOrder::identity(5);
        let b = lex_min_basis(&g, &order).unwrap();
        assert_eq!(b.indices(), vec![0, 1, 2]);
        assert!(passive_set(&g, &order, &b).unwrap().is_empty());
    }

    #[test]
    fn lex_min_triangle() {
        let g = parse_graph("0 1\n0 2\n1 2").unwrap();
        let order = EdgeOrder::identity(3);
        let b = lex_min_basis(&g, &order).unwrap();
        assert_eq!(b.indices(), vec![0, 1]);
    }

    #[test]
    fn passive_set_of_125() {
        // Basis {1,2,5} in label terms = indices {0,1,4}; edge 5 is passive.
        let g = diamond();
        let order = EdgeOrder::identity(5);
        let b = EdgeSet::from_indices(5, [0, 1, 4]);
        let p = passive_set(&g, &order, &b).unwrap();
        assert_eq!(p.indices(), vec![4]);
    }

    #[test]
    fn passive_set_rejects_non_basis() {
        let g = diamond();
        let order = EdgeOrder::identity(5);
        let b = EdgeSet::from_indices(5, [0, 1]);
        assert!(matches!(
            passive_set(&g, &order, &b),
            Err(Error::NotASpanningTree)
        ));
    }

    #[test]
    fn h_vector_diamond() {
        let g = diamond();
        let h = h_vector(&g, &EdgeOrder::identity(5), DEFAULT_TREE_CAP).unwrap();
        assert_eq!(h.0, vec![1, 2, 3, 2]);
        assert_eq!(h.total(), 8);
    }

    #[test]
    fn h_vector_triangle() {
        let g = parse_graph("0 1\n0 2\n1 2").unwrap();
        let h = h_vector(&g, &EdgeOrder::identity(3), DEFAULT_TREE_CAP).unwrap();
        assert_eq!(h.0, vec![1, 1, 1]);
    }

    #[test]
    fn trailing_zero_equality() {
        let a = HVector(vec![1, 2, 0]);
        let b = HVector(vec![1, 2]);
        assert!(a.eq_ignoring_trailing_zeros(&b));
        assert!(!a.eq_ignoring_trailing_zeros(&HVector(vec![1, 2, 1])));
    }
}
