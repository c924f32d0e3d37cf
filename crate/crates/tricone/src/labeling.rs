//! Detection of the triconed structure and construction of the derived
//! ordering data: special triple, vertex ranks, heights, types, edge order,
//! the canonical tree, cone edges, and the reduced graph.

use std::collections::BTreeSet;

use crate::activity::{lex_min_basis, EdgeOrder};
use crate::graph::{natural_cmp, parallel_classes, EdgeSet, Graph};
use crate::{Error, Result};

/// How the final block of the edge order (edges not pinned by the first
/// three groups) is arranged. Any choice yields the same h-vector; the
/// lexicographic one is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailOrder {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

/// The full derived structure for one choice of special triple.
#[derive(Debug, Clone)]
pub struct TriconeLabeling {
    base: Graph,
    special: [usize; 3],
    vertex_rank: Vec<usize>,
    by_rank: Vec<usize>,
    height: Vec<u8>,
    vtype: Vec<u8>,
    edge_order: EdgeOrder,
    b0: EdgeSet,
    /// base vertex -> parent in the canonical tree rooted at the apex
    parent: Vec<Option<usize>>,
    /// base vertex -> its cone edge (the canonical-tree edge to its parent)
    cone_edge: Vec<Option<usize>>,
    /// canonical-tree edge -> its child vertex
    cone_child_of_edge: Vec<Option<usize>>,
    g_red: Graph,
    /// reduced edge index -> base edge index, ascending in the edge order
    edge_map: Vec<usize>,
    /// base edge index -> reduced edge index
    red_of_base_edge: Vec<Option<usize>>,
    /// base vertex -> reduced vertex (None for the apex)
    red_vertex: Vec<Option<usize>>,
    /// reduced vertex -> base vertex
    base_vertex: Vec<usize>,
    /// reduced vertex -> incident (reduced edge, other reduced vertex)
    red_adj: Vec<Vec<(usize, usize)>>,
}

/// All ordered triples `(a, b, c)` that witness the triconed property:
/// `b` and `c` adjacent to `a`, no parallel class of size two or more
/// touching any of them, and every other vertex adjacent to one of the
/// three. Sorted lexicographically by vertex token. Expects a loop-free,
/// coloop-free, connected graph.
pub fn find_special_triples(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    let adj = g.neighbor_sets();
    let mut parallel_touched = vec![false; n];
    for class in parallel_classes(g) {
        if class.len() >= 2 {
            let (u, v) = g.edge(class[0]);
            parallel_touched[u] = true;
            parallel_touched[v] = true;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| natural_cmp(g.token(a), g.token(b)));

    let mut out = Vec::new();
    for &a in &order {
        if parallel_touched[a] {
            continue;
        }
        for &b in &order {
            if b == a || parallel_touched[b] || !adj[a].contains(&b) {
                continue;
            }
            for &c in &order {
                if c == a || c == b || parallel_touched[c] || !adj[a].contains(&c) {
                    continue;
                }
                let dominated = (0..n).all(|v| {
                    v == a
                        || v == b
                        || v == c
                        || adj[v].contains(&a)
                        || adj[v].contains(&b)
                        || adj[v].contains(&c)
                });
                if dominated {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Validates a prospective triple, naming the violated clause on failure.
fn validate_triple(g: &Graph, triple: [usize; 3]) -> Result<()> {
    let [a, b, c] = triple;
    let n = g.vertex_count();
    if a >= n || b >= n || c >= n || a == b || a == c || b == c {
        return Err(Error::InvalidTriple {
            clause: "triple must name three distinct vertices".into(),
        });
    }
    let adj = g.neighbor_sets();
    if !adj[a].contains(&b) || !adj[a].contains(&c) {
        return Err(Error::InvalidTriple {
            clause: format!(
                "adjacency: {} and {} must both be adjacent to {}",
                g.token(b),
                g.token(c),
                g.token(a)
            ),
        });
    }
    for class in parallel_classes(g) {
        if class.len() >= 2 {
            let (u, v) = g.edge(class[0]);
            for x in [a, b, c] {
                if u == x || v == x {
                    return Err(Error::InvalidTriple {
                        clause: format!("parallel: parallel edges touch vertex {}", g.token(x)),
                    });
                }
            }
        }
    }
    for v in 0..n {
        if v == a || v == b || v == c {
            continue;
        }
        if !(adj[v].contains(&a) || adj[v].contains(&b) || adj[v].contains(&c)) {
            return Err(Error::InvalidTriple {
                clause: format!(
                    "domination: vertex {} is adjacent to none of the triple",
                    g.token(v)
                ),
            });
        }
    }
    Ok(())
}

/// Builds the full labeling for a validated triple with the default tail
/// order.
pub fn build_labeling(g: &Graph, triple: [usize; 3]) -> Result<TriconeLabeling> {
    build_labeling_with(g, triple, TailOrder::Lexicographic)
}

/// As [`build_labeling`], with an explicit choice for the free tail block of
/// the edge order.
pub fn build_labeling_with(
    g: &Graph,
    triple: [usize; 3],
    tail: TailOrder,
) -> Result<TriconeLabeling> {
    validate_triple(g, triple)?;
    let [v0, v1, v2] = triple;
    let n = g.vertex_count();
    let m = g.edge_count();
    let adj = g.neighbor_sets();

    // Vertex ranks: the triple first, then the remaining apex neighbors,
    // then the remaining neighbors of v1, then of v2 (ascending token order
    // within each group).
    let mut by_rank = vec![v0, v1, v2];
    let mut ranked = vec![false; n];
    ranked[v0] = true;
    ranked[v1] = true;
    ranked[v2] = true;
    for anchor in [v0, v1, v2] {
        let mut group: Vec<usize> = adj[anchor].iter().copied().filter(|&v| !ranked[v]).collect();
        group.sort_by(|&a, &b| natural_cmp(g.token(a), g.token(b)));
        for v in group {
            ranked[v] = true;
            by_rank.push(v);
        }
    }
    if by_rank.len() != n {
        return Err(Error::InvalidTriple {
            clause: "domination: some vertex is adjacent to none of the triple".into(),
        });
    }
    let mut vertex_rank = vec![0usize; n];
    for (r, &v) in by_rank.iter().enumerate() {
        vertex_rank[v] = r;
    }

    let mut height = vec![2u8; n];
    height[v0] = 0;
    for &v in &adj[v0] {
        height[v] = 1;
    }

    // Edge order in four groups.
    let pair_key = |e: usize| -> (usize, usize) {
        let (u, v) = g.edge(e);
        let (ru, rv) = (vertex_rank[u], vertex_rank[v]);
        (ru.min(rv), ru.max(rv))
    };
    let mut group_of = vec![3u8; m];
    for e in 0..m {
        let (u, v) = g.edge(e);
        if u == v {
            group_of[e] = 3;
            continue;
        }
        if u == v0 || v == v0 {
            group_of[e] = 0;
        } else if (u == v1 && height[v] == 2) || (v == v1 && height[u] == 2) {
            group_of[e] = 1;
        } else if (u == v2 && height[v] == 2 && !adj[v].contains(&v1))
            || (v == v2 && height[u] == 2 && !adj[u].contains(&v1))
        {
            group_of[e] = 2;
        }
    }
    let mut seq: Vec<usize> = (0..m).collect();
    seq.sort_by(|&a, &b| {
        group_of[a]
            .cmp(&group_of[b])
            .then_with(|| {
                let (ka, kb) = (pair_key(a), pair_key(b));
                if group_of[a] == 3 && tail == TailOrder::ReverseLexicographic {
                    kb.cmp(&ka)
                } else {
                    ka.cmp(&kb)
                }
            })
            .then(a.cmp(&b))
    });
    let edge_order = EdgeOrder::from_sequence(seq)?;

    let b0 = lex_min_basis(g, &edge_order)?;

    // Root the canonical tree at the apex.
    let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in b0.iter() {
        let (u, v) = g.edge(e);
        tree_adj[u].push((v, e));
        tree_adj[v].push((u, e));
    }
    let mut parent = vec![None; n];
    let mut cone_edge = vec![None; n];
    let mut cone_child_of_edge = vec![None; m];
    let mut stack = vec![v0];
    let mut seen = vec![false; n];
    seen[v0] = true;
    while let Some(u) = stack.pop() {
        for &(v, e) in &tree_adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                cone_edge[v] = Some(e);
                cone_child_of_edge[e] = Some(v);
                stack.push(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }

    let mut vtype = vec![0u8; n];
    vtype[v1] = 1;
    vtype[v2] = 2;
    for v in 0..n {
        if v == v0 || v == v1 || v == v2 {
            continue;
        }
        match parent[v] {
            Some(p) if p == v1 => vtype[v] = 1,
            Some(p) if p == v2 => vtype[v] = 2,
            _ => vtype[v] = 0,
        }
    }

    // The reduced graph: drop the apex and the canonical-tree edges. Reduced
    // edges are indexed ascending in the edge order, which fixes the
    // variable order of monomials.
    let mut red_vertex = vec![None; n];
    let mut base_vertex = Vec::new();
    let mut red_tokens = Vec::new();
    for v in 0..n {
        if v != v0 {
            red_vertex[v] = Some(base_vertex.len());
            base_vertex.push(v);
            red_tokens.push(g.token(v).to_string());
        }
    }
    let mut edge_map: Vec<usize> = (0..m).filter(|&e| !b0.contains(e)).collect();
    edge_map.sort_by_key(|&e| edge_order.rank(e));
    let mut red_of_base_edge = vec![None; m];
    let mut red_edges = Vec::new();
    for (re, &e) in edge_map.iter().enumerate() {
        let (u, v) = g.edge(e);
        let (ru, rv) = match (red_vertex[u], red_vertex[v]) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Internal(
                    "reduced graph edge touches the apex".to_string(),
                ))
            }
        };
        red_of_base_edge[e] = Some(re);
        red_edges.push((ru, rv));
    }
    let g_red = Graph::new(red_tokens, red_edges)?;
    let mut red_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g_red.vertex_count()];
    for (re, &(u, v)) in g_red.edges().iter().enumerate() {
        red_adj[u].push((re, v));
        red_adj[v].push((re, u));
    }

    Ok(TriconeLabeling {
        base: g.clone(),
        special: triple,
        vertex_rank,
        by_rank,
        height,
        vtype,
        edge_order,
        b0,
        parent,
        cone_edge,
        cone_child_of_edge,
        g_red,
        edge_map,
        red_of_base_edge,
        red_vertex,
        base_vertex,
        red_adj,
    })
}

/// The canonical-tree edge whose child is `v`.
pub fn cone_edge_of(lab: &TriconeLabeling, v: usize) -> Result<usize> {
    lab.cone_edge[v].ok_or_else(|| Error::NoConeEdge {
        vertex: lab.base.token(v).to_string(),
    })
}

impl TriconeLabeling {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Cone edge of a non-apex vertex; errors on the apex.
    pub fn cone_edge_of_checked(&self, v: usize) -> Result<usize> {
        cone_edge_of(self, v)
    }

    pub fn special(&self) -> [usize; 3] {
        self.special
    }

    pub fn vertex_rank(&self, v: usize) -> usize {
        self.vertex_rank[v]
    }

    pub fn vertex_at_rank(&self, r: usize) -> usize {
        self.by_rank[r]
    }

    pub fn height(&self, v: usize) -> u8 {
        self.height[v]
    }

    pub fn vtype(&self, v: usize) -> u8 {
        self.vtype[v]
    }

    pub fn edge_order(&self) -> &EdgeOrder {
        &self.edge_order
    }

    pub fn b0(&self) -> &EdgeSet {
        &self.b0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Child vertex of a canonical-tree edge, if `e` is one.
    pub fn cone_child(&self, e: usize) -> Option<usize> {
        self.cone_child_of_edge[e]
    }

    pub fn g_red(&self) -> &Graph {
        &self.g_red
    }

    /// Number of reduced edges (the monomial variable count).
    pub fn red_edge_count(&self) -> usize {
        self.edge_map.len()
    }

    pub fn red_edge_to_base(&self, re: usize) -> usize {
        self.edge_map[re]
    }

    pub fn base_edge_to_red(&self, e: usize) -> Option<usize> {
        self.red_of_base_edge[e]
    }

    pub fn red_vertex_of(&self, v: usize) -> Option<usize> {
        self.red_vertex[v]
    }

    pub fn base_vertex_of(&self, rv: usize) -> usize {
        self.base_vertex[rv]
    }

    /// Reduced-vertex incidence: (reduced edge, opposite reduced vertex).
    pub fn red_adj(&self, rv: usize) -> &[(usize, usize)] {
        &self.red_adj[rv]
    }

    pub fn red_vertex_count(&self) -> usize {
        self.base_vertex.len()
    }

    pub fn rank_of_red(&self, rv: usize) -> usize {
        self.vertex_rank[self.base_vertex[rv]]
    }

    pub fn vtype_of_red(&self, rv: usize) -> u8 {
        self.vtype[self.base_vertex[rv]]
    }

    pub fn height_of_red(&self, rv: usize) -> u8 {
        self.height[self.base_vertex[rv]]
    }

    /// The special vertices as reduced indices (`v1`, `v2`).
    pub fn red_specials(&self) -> [usize; 2] {
        [
            self.red_vertex[self.special[1]].unwrap(),
            self.red_vertex[self.special[2]].unwrap(),
        ]
    }

    pub fn red_token(&self, rv: usize) -> &str {
        self.g_red.token(rv)
    }

    /// Renders a base edge as `u-v` with the lower-ranked endpoint first.
    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.base.edge(e);
        let (a, b) = if self.vertex_rank[u] <= self.vertex_rank[v] {
            (u, v)
        } else {
            (v, u)
        };
        format!("{}-{}", self.base.token(a), self.base.token(b))
    }

    /// Renders a reduced edge as `u-v` with the lower-ranked endpoint first.
    pub fn red_edge_label(&self, re: usize) -> String {
        self.edge_label(self.edge_map[re])
    }

    /// The edge order as labels, for displays and golden tests.
    pub fn edge_order_labels(&self) -> Vec<String> {
        self.edge_order.iter().map(|e| self.edge_label(e)).collect()
    }

    /// Resolves a `u-v` label to the smallest unused base edge with those
    /// endpoints; `used` lets callers consume parallel edges one by one.
    pub fn base_edge_by_tokens(
        &self,
        a: &str,
        b: &str,
        used: &EdgeSet,
    ) -> Option<usize> {
        let u = self.base.vertex_by_token(a)?;
        let v = self.base.vertex_by_token(b)?;
        self.edge_order
            .iter()
            .find(|&e| {
                let (x, y) = self.base.edge(e);
                !used.contains(e) && ((x, y) == (u, v) || (x, y) == (v, u))
            })
    }

    /// The canonical tree built directly as a staged breadth-first tree:
    /// the apex star first, then pendant edges from `v1`, then from `v2`.
    /// Used as an independent cross-check of the Kruskal construction.
    pub fn staged_bfs_tree(&self) -> EdgeSet {
        let [v0, v1, v2] = self.special;
        let g = &self.base;
        let mut tree = EdgeSet::new(g.edge_count());
        let mut attached: BTreeSet<usize> = BTreeSet::new();
        attached.insert(v0);
        for phase in 0..3 {
            for e in self.edge_order.iter() {
                let (u, v) = g.edge(e);
                if u == v {
                    continue;
                }
                let anchor = [v0, v1, v2][phase];
                let (from, to) = if u == anchor {
                    (u, v)
                } else if v == anchor {
                    (v, u)
                } else {
                    continue;
                };
                if phase > 0 && self.height[to] != 2 {
                    continue;
                }
                if attached.contains(&from) && !attached.contains(&to) {
                    attached.insert(to);
                    tree.insert(e);
                }
            }
        }
        tree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn triangle() -> Graph {
        parse_graph("0 1\n0 2\n1 2").unwrap()
    }

    fn worked6() -> Graph {
        parse_graph("0 1\n0 2\n0 3\n1 4\n2 5\n3 5\n4 5").unwrap()
    }

    #[test]
    fn triangle_has_expected_triples() {
        let g = triangle();
        let triples = find_special_triples(&g);
        assert!(triples.contains(&[0, 1, 2]));
        // Every ordered triple of a triangle works.
        assert_eq!(triples.len(), 6);
    }

    #[test]
    fn parallel_edges_block_triples() {
        let g = parse_graph("0 1\n0 2\n1 2\n1 2").unwrap();
        // The 1-2 pair is parallel, so no triple may use 1 or 2.
        let triples = find_special_triples(&g);
        assert!(triples.is_empty());
    }

    #[test]
    fn worked6_labeling() {
        let g = worked6();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        assert_eq!(
            lab.edge_order_labels(),
            vec!["0-1", "0-2", "0-3", "1-4", "2-5", "3-5", "4-5"]
        );
        assert_eq!(lab.b0().indices(), vec![0, 1, 2, 3, 4]);
        assert_eq!(lab.g_red().vertex_count(), 5);
        assert_eq!(lab.red_edge_count(), 2);
        assert_eq!(lab.red_edge_label(0), "3-5");
        assert_eq!(lab.red_edge_label(1), "4-5");
        for (v, t) in [(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)] {
            let idx = g.vertex_by_token(&v.to_string()).unwrap();
            assert_eq!(lab.vtype(idx), t as u8, "type of vertex {v}");
        }
        for (v, h) in [(0, 0), (1, 1), (2, 1), (3, 1), (4, 2), (5, 2)] {
            let idx = g.vertex_by_token(&v.to_string()).unwrap();
            assert_eq!(lab.height(idx), h as u8, "height of vertex {v}");
        }
    }

    #[test]
    fn worked6_cone_edges() {
        let g = worked6();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        let v4 = g.vertex_by_token("4").unwrap();
        let e = cone_edge_of(&lab, v4).unwrap();
        assert_eq!(lab.edge_label(e), "1-4");
        let v0 = g.vertex_by_token("0").unwrap();
        assert!(cone_edge_of(&lab, v0).is_err());
    }

    #[test]
    fn bfs_matches_kruskal_on_worked6() {
        let g = worked6();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        assert_eq!(lab.staged_bfs_tree(), *lab.b0());
    }

    #[test]
    fn invalid_triples_name_the_clause() {
        let g = worked6();
        let e = build_labeling(&g, [0, 1, 4]).unwrap_err();
        assert!(matches!(e, Error::InvalidTriple { ref clause } if clause.contains("adjacency")));
        let g2 = parse_graph("0 1\n0 2\n1 2\n1 3\n1 3\n0 3").unwrap();
        let e2 = build_labeling(&g2, [0, 1, 2]).unwrap_err();
        assert!(matches!(e2, Error::InvalidTriple { ref clause } if clause.contains("parallel")));
    }

    #[test]
    fn no_red_edge_touches_apex() {
        let g = worked6();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        let apex = lab.special()[0];
        for re in 0..lab.red_edge_count() {
            let (u, v) = lab.base().edge(lab.red_edge_to_base(re));
            assert_ne!(u, apex);
            assert_ne!(v, apex);
        }
    }
}
