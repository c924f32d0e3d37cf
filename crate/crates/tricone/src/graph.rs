//! Labeled multigraphs, structural queries, reduction, and the spanning-tree
//! oracle that everything else is checked against.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Default cap on the number of spanning trees an enumeration may produce.
pub const DEFAULT_TREE_CAP: u64 = 10_000_000;

/// Compares vertex tokens numerically when both parse as integers, otherwise
/// byte-lexicographically. This keeps `"9" < "10"` and `"9" < "A"`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

/// A labeled multigraph. Vertices are arbitrary string tokens held in a fixed
/// order; edges are an indexed sequence of unordered endpoint pairs. Parallel
/// edges and self-loops are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from explicit vertex tokens and endpoint indices.
    pub fn new(tokens: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if tokens.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::new();
        for (i, t) in tokens.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate vertex token {t:?}"),
                });
            }
        }
        for &(u, v) in &edges {
            if u >= tokens.len() || v >= tokens.len() {
                return Err(Error::Parse {
                    line: 0,
                    message: "edge endpoint out of range".into(),
                });
            }
        }
        Ok(Graph {
            tokens,
            index,
            edges,
        })
    }

    /// Convenience constructor from `(token, token)` pairs; vertices are
    /// registered in order of first appearance.
    pub fn from_token_edges<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Graph> {
        let mut tokens: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            let mut id = |t: &str| -> usize {
                *index.entry(t.to_string()).or_insert_with(|| {
                    tokens.push(t.to_string());
                    tokens.len() - 1
                })
            };
            let u = id(a.as_ref());
            let v = id(b.as_ref());
            edges.push((u, v));
        }
        if tokens.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(Graph {
            tokens,
            index,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn token(&self, v: usize) -> &str {
        &self.tokens[v]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn vertex_by_token(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// Adjacency as sets of neighbor vertices (self-loops excluded).
    pub fn neighbor_sets(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Incident edge ids per vertex (self-loops listed once at their vertex).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            if u != v {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_connected_ignoring_loops(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.component_count() == 1
    }

    /// Renders the graph back to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "p {} {}\n",
            self.vertex_count(),
            self.edge_count()
        ));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.tokens[u], self.tokens[v]));
        }
        out
    }
}

/// A subset of edge indices, stored as a fixed-width bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    bits: Vec<u64>,
    capacity: usize,
}

impl EdgeSet {
    pub fn new(capacity: usize) -> EdgeSet {
        EdgeSet {
            bits: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, iter: I) -> EdgeSet {
        let mut s = EdgeSet::new(capacity);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.capacity, "edge index {i} out of range");
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.capacity, "edge index {i} out of range");
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity).filter(|&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet{:?}", self.indices())
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the union merged two distinct components.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}

/// One step of a loop/coloop reduction. Edge indices refer to the graph the
/// step was applied to at replay time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionStep {
    DeleteLoop { edge: usize },
    ContractColoop { edge: usize, merged: (String, String) },
}

/// Ordered record of a reduction; replaying it on the original graph yields
/// the reduced graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionLog(pub Vec<ReductionStep>);

impl ReductionLog {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Applies the recorded steps to `g` and returns the resulting graph.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut work = Working::from_graph(g);
        for step in &self.0 {
            match step {
                ReductionStep::DeleteLoop { edge } => work.delete_edge(*edge)?,
                ReductionStep::ContractColoop { edge, .. } => work.contract_edge(*edge)?,
            }
        }
        work.into_graph()
    }
}

/// Mutable edge-list view used while reducing; edge ids stay stable (deleted
/// slots are tombstoned) so the log can reference original indices.
struct Working {
    tokens: Vec<String>,
    /// vertex -> representative after contractions
    rep: Vec<usize>,
    edges: Vec<Option<(usize, usize)>>,
}

impl Working {
    fn from_graph(g: &Graph) -> Working {
        Working {
            tokens: g.tokens.to_vec(),
            rep: (0..g.vertex_count()).collect(),
            edges: g.edges.iter().map(|&e| Some(e)).collect(),
        }
    }

    fn resolve(&self, mut v: usize) -> usize {
        while self.rep[v] != v {
            v = self.rep[v];
        }
        v
    }

    fn endpoints(&self, e: usize) -> Option<(usize, usize)> {
        self.edges[e].map(|(u, v)| (self.resolve(u), self.resolve(v)))
    }

    fn delete_edge(&mut self, e: usize) -> Result<()> {
        if self.edges.get(e).map(|s| s.is_none()).unwrap_or(true) {
            return Err(Error::Internal(format!("replay: edge {e} already gone")));
        }
        self.edges[e] = None;
        Ok(())
    }

    fn contract_edge(&mut self, e: usize) -> Result<()> {
        let (u, v) = self
            .endpoints(e)
            .ok_or_else(|| Error::Internal(format!("replay: edge {e} already gone")))?;
        if u == v {
            return Err(Error::Internal(format!("replay: edge {e} is a loop")));
        }
        // Keep the endpoint that comes first in the vertex order.
        let (keep, drop) = if u < v { (u, v) } else { (v, u) };
        self.rep[drop] = keep;
        self.edges[e] = None;
        Ok(())
    }

    fn into_graph(self) -> Result<Graph> {
        let mut live: Vec<usize> = Vec::new();
        let mut dense = vec![usize::MAX; self.tokens.len()];
        for v in 0..self.tokens.len() {
            if self.resolve(v) == v {
                dense[v] = live.len();
                live.push(v);
            }
        }
        let tokens: Vec<String> = live.iter().map(|&v| self.tokens[v].clone()).collect();
        let mut edges = Vec::new();
        for e in 0..self.edges.len() {
            if let Some(_) = self.edges[e] {
                let (u, v) = self.endpoints(e).unwrap();
                edges.push((dense[u], dense[v]));
            }
        }
        Graph::new(tokens, edges)
    }
}

/// Parses the edge-list text format: one edge per line as two whitespace
/// separated vertex tokens, `#` comment lines, and an optional leading
/// `p <n> <m>` header whose counts are validated.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut seen_content = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "p" {
            if seen_content || declared.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "header line must come first".into(),
                });
            }
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "header must be `p <n> <m>`".into(),
                });
            }
            let n = fields[1].parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: "invalid vertex count in header".into(),
            })?;
            let m = fields[2].parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: "invalid edge count in header".into(),
            })?;
            declared = Some((n, m));
            continue;
        }
        seen_content = true;
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two vertex tokens, found {}", fields.len()),
            });
        }
        pairs.push((fields[0].to_string(), fields[1].to_string()));
    }
    if pairs.is_empty() && declared.map(|(n, _)| n).unwrap_or(0) == 0 {
        return Err(Error::EmptyGraph);
    }
    let g = Graph::from_token_edges(
        &pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect::<Vec<_>>(),
    )?;
    if let Some((n, m)) = declared {
        if n != g.vertex_count() || m != g.edge_count() {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "header declares {n} vertices / {m} edges but document has {} / {}",
                    g.vertex_count(),
                    g.edge_count()
                ),
            });
        }
    }
    Ok(g)
}

/// The self-loop edges (the loops of the graphic matroid).
pub fn loops(g: &Graph) -> EdgeSet {
    EdgeSet::from_indices(
        g.edge_count(),
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| u == v)
            .map(|(i, _)| i),
    )
}

/// The bridge edges (the coloops of the graphic matroid). Requires the graph
/// to be connected once self-loops are ignored.
pub fn coloops(g: &Graph) -> Result<EdgeSet> {
    if !g.is_connected_ignoring_loops() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
    }
    // Iterative low-link bridge search.
    let mut order = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut bridges = EdgeSet::new(g.edge_count());
    let mut counter = 0usize;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, incoming edge id, next neighbor slot)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(&mut (u, pe, ref mut slot)) = stack.last_mut() {
            if *slot < adj[u].len() {
                let (v, e) = adj[u][*slot];
                *slot += 1;
                if e == pe {
                    continue;
                }
                if order[v] == usize::MAX {
                    order[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push((v, e, 0));
                } else {
                    low[u] = low[u].min(order[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > order[p] {
                        bridges.insert(pe);
                    }
                }
            }
        }
    }
    Ok(bridges)
}

/// Groups non-loop edges by their unordered endpoint pair. Classes are
/// ordered by their smallest member index; members ascend.
pub fn parallel_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        by_pair.entry(key).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = by_pair.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Repeatedly deletes self-loops and contracts bridges until neither exists.
/// May collapse the graph to a single vertex with no edges.
pub fn reduce_to_core(g: &Graph) -> Result<(Graph, ReductionLog)> {
    if !g.is_connected_ignoring_loops() {
        return Err(Error::Disconnected);
    }
    let mut work = Working::from_graph(g);
    let mut log = Vec::new();
    loop {
        let mut changed = false;
        let live: Vec<usize> = (0..work.edges.len())
            .filter(|&e| work.edges[e].is_some())
            .collect();
        for e in &live {
            if let Some((u, v)) = work.endpoints(*e) {
                if u == v {
                    work.delete_edge(*e)?;
                    log.push(ReductionStep::DeleteLoop { edge: *e });
                    changed = true;
                }
            }
        }
        // Bridges of the current working graph.
        let current = work_snapshot(&work)?;
        let bridge_set = coloops(&current.0)?;
        for (slot, orig) in current.1.iter().enumerate() {
            if bridge_set.contains(slot) {
                if let Some((u, v)) = work.endpoints(*orig) {
                    if u != v {
                        let (keep, drop) = if u < v { (u, v) } else { (v, u) };
                        log.push(ReductionStep::ContractColoop {
                            edge: *orig,
                            merged: (work.tokens[keep].clone(), work.tokens[drop].clone()),
                        });
                        work.contract_edge(*orig)?;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let reduced = work.into_graph()?;
    Ok((reduced, ReductionLog(log)))
}

/// Densifies the working graph and returns it with the original id of each
/// dense edge slot.
fn work_snapshot(work: &Working) -> Result<(Graph, Vec<usize>)> {
    let mut live_v: Vec<usize> = Vec::new();
    let mut dense = vec![usize::MAX; work.tokens.len()];
    for v in 0..work.tokens.len() {
        if work.resolve(v) == v {
            dense[v] = live_v.len();
            live_v.push(v);
        }
    }
    let tokens: Vec<String> = live_v.iter().map(|&v| work.tokens[v].clone()).collect();
    let mut edges = Vec::new();
    let mut ids = Vec::new();
    for e in 0..work.edges.len() {
        if work.edges[e].is_some() {
            let (u, v) = work.endpoints(e).unwrap();
            edges.push((dense[u], dense[v]));
            ids.push(e);
        }
    }
    Ok((Graph::new(tokens, edges)?, ids))
}

/// True iff `s` has exactly `n - 1` edges, contains no self-loop, and
/// connects every vertex.
pub fn is_spanning_tree(g: &Graph, s: &EdgeSet) -> bool {
    let n = g.vertex_count();
    if s.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for e in s.iter() {
        let (u, v) = g.edge(e);
        if u == v || !uf.union(u, v) {
            return false;
        }
    }
    uf.component_count() == 1
}

/// Enumerates every spanning tree as an `EdgeSet`, in lexicographic order of
/// the included edge-index sets. Errors if the count exceeds `cap`.
pub fn spanning_trees(g: &Graph, cap: u64) -> Result<Vec<EdgeSet>> {
    if !g.is_connected_ignoring_loops() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut out: Vec<EdgeSet> = Vec::new();
    if n == 1 {
        out.push(EdgeSet::new(m));
        return Ok(out);
    }
    let non_loop: Vec<usize> = (0..m).filter(|&e| g.edge(e).0 != g.edge(e).1).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(n - 1);

    fn feasible(g: &Graph, uf: &UnionFind, rest: &[usize]) -> bool {
        let mut probe = uf.clone();
        for &e in rest {
            let (u, v) = g.edge(e);
            probe.union(u, v);
            if probe.component_count() == 1 {
                return true;
            }
        }
        probe.component_count() == 1
    }

    fn recurse(
        g: &Graph,
        order: &[usize],
        pos: usize,
        uf: &UnionFind,
        chosen: &mut Vec<usize>,
        out: &mut Vec<EdgeSet>,
        cap: u64,
    ) -> Result<()> {
        if uf.component_count() == 1 {
            if out.len() as u64 >= cap {
                return Err(Error::EnumerationLimit { cap });
            }
            out.push(EdgeSet::from_indices(g.edge_count(), chosen.iter().copied()));
            return Ok(());
        }
        if pos == order.len() {
            return Ok(());
        }
        let e = order[pos];
        let (u, v) = g.edge(e);
        // Include e when it joins two components.
        let mut with = uf.clone();
        if with.union(u, v) {
            chosen.push(e);
            recurse(g, order, pos + 1, &with, chosen, out, cap)?;
            chosen.pop();
        }
        // Exclude e when the remaining edges can still connect everything.
        if feasible(g, uf, &order[pos + 1..]) {
            recurse(g, order, pos + 1, uf, chosen, out, cap)?;
        }
        Ok(())
    }

    recurse(
        g,
        &non_loop,
        0,
        &UnionFind::new(n),
        &mut chosen,
        &mut out,
        cap,
    )?;
    Ok(out)
}

/// Spanning-tree count via the Kirchhoff determinant, in exact integer
/// arithmetic (fraction-free Bareiss elimination).
pub fn matrix_tree_count(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n == 1 {
        return BigInt::one();
    }
    let dim = n - 1;
    let mut lap = vec![vec![BigInt::zero(); dim]; dim];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        for x in [u, v] {
            if x > 0 {
                lap[x - 1][x - 1] += 1;
            }
        }
        if u > 0 && v > 0 {
            lap[u - 1][v - 1] -= 1;
            lap[v - 1][u - 1] -= 1;
        }
    }
    // Bareiss: det preserved, all intermediates integral.
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..dim {
        if lap[k][k].is_zero() {
            let swap = (k + 1..dim).find(|&r| !lap[r][k].is_zero());
            match swap {
                Some(r) => {
                    lap.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = &lap[k][k] * &lap[i][j] - &lap[i][k] * &lap[k][j];
                lap[i][j] = num / &prev;
            }
        }
        for i in k + 1..dim {
            lap[i][k] = BigInt::zero();
        }
        prev = lap[k][k].clone();
    }
    let det = lap[dim - 1][dim - 1].clone() * sign;
    det.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_token_edges(&[("0", "1"), ("0", "2"), ("1", "2")]).unwrap()
    }

    #[test]
    fn parse_basic() {
        let g = parse_graph("0 1\n0 2\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.token(0), "0");
    }

    #[test]
    fn parse_parallel_edges() {
        let g = parse_graph("0 1\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge(0), g.edge(1));
    }

    #[test]
    fn parse_header_and_comments() {
        let g = parse_graph("# demo\np 3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(parse_graph("p 4 3\n0 1\n0 2\n1 2\n").is_err());
    }

    #[test]
    fn parse_malformed_line_reports_number() {
        let err = parse_graph("0 1\n0 1 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_empty_errors() {
        assert!(matches!(parse_graph("# nothing\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn loops_finds_self_loops() {
        assert!(loops(&triangle()).is_empty());
        let g = parse_graph("0 0\n0 1").unwrap();
        assert_eq!(loops(&g).indices(), vec![0]);
    }

    #[test]
    fn coloops_on_path_and_triangle() {
        let path = parse_graph("0 1\n1 2").unwrap();
        assert_eq!(coloops(&path).unwrap().indices(), vec![0, 1]);
        assert!(coloops(&triangle()).unwrap().is_empty());
    }

    #[test]
    fn coloops_rejects_disconnected() {
        let g = parse_graph("0 1\n2 3").unwrap();
        assert!(matches!(coloops(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn parallel_classes_groups_by_pair() {
        let g = parse_graph("0 1\n0 1\n1 2").unwrap();
        assert_eq!(parallel_classes(&g), vec![vec![0, 1], vec![2]]);
        assert_eq!(parallel_classes(&triangle()).len(), 3);
    }

    #[test]
    fn reduce_path_collapses() {
        let path = parse_graph("0 1\n1 2").unwrap();
        let (core, log) = reduce_to_core(&path).unwrap();
        assert_eq!(core.vertex_count(), 1);
        assert_eq!(core.edge_count(), 0);
        assert_eq!(log.len(), 2);
        assert_eq!(log.replay(&path).unwrap(), core);
    }

    #[test]
    fn reduce_pendant_leaves_triangle() {
        let g = parse_graph("0 1\n0 2\n1 2\n2 3").unwrap();
        let (core, log) = reduce_to_core(&g).unwrap();
        assert_eq!(core.vertex_count(), 3);
        assert_eq!(core.edge_count(), 3);
        assert_eq!(log.len(), 1);
        assert_eq!(log.replay(&g).unwrap(), core);
    }

    #[test]
    fn reduce_is_idempotent() {
        let g = parse_graph("0 1\n0 2\n1 2\n2 3\n0 0").unwrap();
        let (core, _) = reduce_to_core(&g).unwrap();
        let (core2, log2) = reduce_to_core(&core).unwrap();
        assert_eq!(core, core2);
        assert!(log2.is_empty());
    }

    #[test]
    fn spanning_trees_triangle() {
        let trees = spanning_trees(&triangle(), DEFAULT_TREE_CAP).unwrap();
        assert_eq!(trees.len(), 3);
        for t in &trees {
            assert!(is_spanning_tree(&triangle(), t));
        }
    }

    #[test]
    fn spanning_trees_cap_errors() {
        let err = spanning_trees(&triangle(), 2).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { cap: 2 }));
    }

    #[test]
    fn spanning_trees_single_vertex() {
        let g = parse_graph("0 0").unwrap();
        let trees = spanning_trees(&g, 10).unwrap();
        assert_eq!(trees.len(), 1);
        assert!(trees[0].is_empty());
    }

    #[test]
    fn is_spanning_tree_rejects_wrong_size() {
        let g = triangle();
        let all = EdgeSet::from_indices(3, 0..3);
        assert!(!is_spanning_tree(&g, &all));
    }

    #[test]
    fn matrix_tree_matches_enumeration() {
        for text in [
            "0 1\n0 2\n1 2",
            "0 1\n0 1\n1 2\n0 2",
            "0 1\n0 2\n0 3\n1 3\n2 3",
        ] {
            let g = parse_graph(text).unwrap();
            let trees = spanning_trees(&g, DEFAULT_TREE_CAP).unwrap();
            assert_eq!(
                matrix_tree_count(&g),
                BigInt::from(trees.len()),
                "graph {text:?}"
            );
        }
    }

    #[test]
    fn natural_order_mixes_numbers_and_tokens() {
        assert_eq!(natural_cmp("9", "10"), Ordering::Less);
        assert_eq!(natural_cmp("9", "A"), Ordering::Less);
        assert_eq!(natural_cmp("A", "B"), Ordering::Less);
    }
}
