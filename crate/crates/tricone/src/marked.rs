//! Marked spanning forests of the reduced graph: the tree-to-forest
//! bijection, blueprints, mark activity, and the degree-raising step used to
//! certify purity constructively.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::graph::{is_spanning_tree, EdgeSet, UnionFind};
use crate::labeling::TriconeLabeling;
use crate::weighted::{self, Monomial};
use crate::{Error, Result};

/// A spanning forest of the reduced graph together with vertex marks and an
/// optional double mark. All indices are reduced-graph indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedForest {
    pub forest: EdgeSet,
    pub marks: BTreeSet<usize>,
    pub double_mark: Option<usize>,
}

impl MarkedForest {
    pub fn new(forest: EdgeSet, marks: BTreeSet<usize>, double_mark: Option<usize>) -> Self {
        MarkedForest {
            forest,
            marks,
            double_mark,
        }
    }

    /// Mark count with the double mark counted twice.
    pub fn degree(&self) -> usize {
        self.marks.len() + usize::from(self.double_mark.is_some())
    }
}

/// A connected piece of a forest over the reduced graph, including isolated
/// vertices as singleton components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Component {
    pub fn is_singleton(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Splits the reduced graph under an edge subset into components, singleton
/// vertices included. Components are ordered by their smallest vertex.
pub fn forest_components(lab: &TriconeLabeling, support: &EdgeSet) -> Vec<Component> {
    let n = lab.red_vertex_count();
    let mut uf = UnionFind::new(n);
    for e in support.iter() {
        let (u, v) = lab.g_red().edge(e);
        uf.union(u, v);
    }
    let mut by_root: std::collections::BTreeMap<usize, Component> = Default::default();
    for v in 0..n {
        let r = uf.find(v);
        by_root
            .entry(r)
            .or_insert_with(|| Component {
                vertices: Vec::new(),
                edges: Vec::new(),
            })
            .vertices
            .push(v);
    }
    for e in support.iter() {
        let (u, _) = lab.g_red().edge(e);
        let r = uf.find(u);
        by_root.get_mut(&r).unwrap().edges.push(e);
    }
    let mut comps: Vec<Component> = by_root.into_values().collect();
    comps.sort_by_key(|c| c.vertices[0]);
    comps
}

/// True when the edge subset induces a forest in the reduced graph.
pub fn is_forest(lab: &TriconeLabeling, support: &EdgeSet) -> bool {
    let mut uf = UnionFind::new(lab.red_vertex_count());
    for e in support.iter() {
        let (u, v) = lab.g_red().edge(e);
        if !uf.union(u, v) {
            return false;
        }
    }
    true
}

/// Multigraph on the three special vertices recording how forest components
/// tie them together.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Blueprint {
    pub e01: u32,
    pub e02: u32,
    pub e12: u32,
}

impl Blueprint {
    pub fn add(&mut self, a: u8, b: u8) {
        match (a.min(b), a.max(b)) {
            (0, 1) => self.e01 += 1,
            (0, 2) => self.e02 += 1,
            (1, 2) => self.e12 += 1,
            _ => {}
        }
    }

    pub fn edge_count(&self) -> u32 {
        self.e01 + self.e02 + self.e12
    }

    /// No repeated edge and not all three distinct edges at once.
    pub fn acyclic(&self) -> bool {
        self.e01 <= 1
            && self.e02 <= 1
            && self.e12 <= 1
            && !(self.e01 == 1 && self.e02 == 1 && self.e12 == 1)
    }

    /// Connects all three special vertices.
    pub fn spanning(&self) -> bool {
        let mut uf = UnionFind::new(3);
        if self.e01 > 0 {
            uf.union(0, 1);
        }
        if self.e02 > 0 {
            uf.union(0, 2);
        }
        if self.e12 > 0 {
            uf.union(1, 2);
        }
        uf.component_count() == 1
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        let mut uf = UnionFind::new(3);
        if self.e01 > 0 {
            uf.union(0, 1);
        }
        if self.e02 > 0 {
            uf.union(0, 2);
        }
        if self.e12 > 0 {
            uf.union(1, 2);
        }
        uf.same(a, b)
    }
}

impl fmt::Display for Blueprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for _ in 0..self.e01 {
            parts.push("01");
        }
        for _ in 0..self.e02 {
            parts.push("02");
        }
        for _ in 0..self.e12 {
            parts.push("12");
        }
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

/// Reason a component or forest fails the marking rules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MarkViolation {
    #[error("component containing vertex {0} has no mark")]
    NoMark(String),
    #[error("special vertex {0} is contained but unmarked")]
    UnmarkedSpecial(String),
    #[error("two marks of type {0} in one component")]
    RepeatedType(u8),
    #[error("doubly marked vertex {0} has no companion mark")]
    LoneDoubleMark(String),
    #[error("double mark sits on vertex {0} which is not of type 2")]
    DoubleMarkNotType2(String),
    #[error("double-marked vertex {0} carries no ordinary mark")]
    DoubleMarkUnmarked(String),
    #[error("edge set is not a forest")]
    NotAForest,
    #[error("blueprint {0} is cyclic")]
    CyclicBlueprint(Blueprint),
}

/// Checks the four marking rules on one component: at least one mark,
/// contained specials marked, pairwise-distinct mark types (the double mark
/// counts as type 2 plus an extra type 0), and a double mark never alone.
pub fn is_correctly_marked(
    lab: &TriconeLabeling,
    f: &MarkedForest,
    comp: &Component,
) -> std::result::Result<(), MarkViolation> {
    let token = |rv: usize| lab.red_token(rv).to_string();
    let marks: Vec<usize> = comp
        .vertices
        .iter()
        .copied()
        .filter(|v| f.marks.contains(v))
        .collect();
    let double_here = f
        .double_mark
        .filter(|d| comp.vertices.binary_search(d).is_ok());
    if marks.is_empty() {
        return Err(MarkViolation::NoMark(token(comp.vertices[0])));
    }
    let [r1, r2] = lab.red_specials();
    for s in [r1, r2] {
        if comp.vertices.binary_search(&s).is_ok() && !f.marks.contains(&s) {
            return Err(MarkViolation::UnmarkedSpecial(token(s)));
        }
    }
    let mut types: Vec<u8> = marks.iter().map(|&v| lab.vtype_of_red(v)).collect();
    if let Some(d) = double_here {
        if lab.vtype_of_red(d) != 2 {
            return Err(MarkViolation::DoubleMarkNotType2(token(d)));
        }
        if !f.marks.contains(&d) {
            return Err(MarkViolation::DoubleMarkUnmarked(token(d)));
        }
        if marks.len() < 2 {
            return Err(MarkViolation::LoneDoubleMark(token(d)));
        }
        types.push(0);
    }
    types.sort_unstable();
    for pair in types.windows(2) {
        if pair[0] == pair[1] {
            return Err(MarkViolation::RepeatedType(pair[0]));
        }
    }
    Ok(())
}

/// Blueprint of a marked forest: each 2-component contributes the edge
/// between its two mark types, each 3-component contributes both 01 and 02.
pub fn blueprint_of(lab: &TriconeLabeling, f: &MarkedForest) -> Result<Blueprint> {
    let mut bp = Blueprint::default();
    for comp in forest_components(lab, &f.forest) {
        let marks: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|v| f.marks.contains(v))
            .collect();
        let double_here = f
            .double_mark
            .filter(|d| comp.vertices.binary_search(d).is_ok());
        let degree = marks.len() + usize::from(double_here.is_some());
        match degree {
            0 => {
                return Err(Error::NotTrirooted(
                    MarkViolation::NoMark(lab.red_token(comp.vertices[0]).to_string()).to_string(),
                ))
            }
            1 => {}
            2 => {
                let mut types: Vec<u8> = marks.iter().map(|&v| lab.vtype_of_red(v)).collect();
                if double_here.is_some() {
                    types.push(0);
                }
                bp.add(types[0], types[1]);
            }
            3 => {
                bp.add(0, 1);
                bp.add(0, 2);
            }
            d => {
                return Err(Error::NotTrirooted(format!(
                    "component of degree {d} exceeds the marking rules"
                )))
            }
        }
    }
    Ok(bp)
}

/// Full trirooted check: forest shape, every component correctly marked, and
/// an acyclic blueprint.
pub fn is_trirooted(
    lab: &TriconeLabeling,
    f: &MarkedForest,
) -> std::result::Result<(), MarkViolation> {
    if !is_forest(lab, &f.forest) {
        return Err(MarkViolation::NotAForest);
    }
    if let Some(d) = f.double_mark {
        if !f.marks.contains(&d) {
            return Err(MarkViolation::DoubleMarkUnmarked(
                lab.red_token(d).to_string(),
            ));
        }
        if lab.vtype_of_red(d) != 2 {
            return Err(MarkViolation::DoubleMarkNotType2(
                lab.red_token(d).to_string(),
            ));
        }
    }
    for comp in forest_components(lab, &f.forest) {
        is_correctly_marked(lab, f, &comp)?;
    }
    let bp = blueprint_of(lab, f).map_err(|e| match e {
        Error::NotTrirooted(msg) => MarkViolation::NoMark(msg),
        _ => MarkViolation::NotAForest,
    })?;
    if !bp.acyclic() {
        return Err(MarkViolation::CyclicBlueprint(bp));
    }
    Ok(())
}

fn require_trirooted(lab: &TriconeLabeling, f: &MarkedForest) -> Result<()> {
    is_trirooted(lab, f).map_err(|v| Error::NotTrirooted(v.to_string()))
}

/// Path between two vertices inside a forest over the reduced graph, as the
/// vertex sequence and the edge at each step. `None` when disconnected.
pub(crate) fn red_tree_path(
    lab: &TriconeLabeling,
    support: &EdgeSet,
    from: usize,
    to: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if from == to {
        return Some((vec![from], Vec::new()));
    }
    let n = lab.red_vertex_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    let mut seen = vec![false; n];
    seen[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(e, v) in lab.red_adj(u) {
            if support.contains(e) && !seen[v] {
                seen[v] = true;
                prev[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut vertices = vec![to];
    let mut edges = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    Some((vertices, edges))
}

/// Path between two vertices of the base graph inside a spanning tree.
fn base_tree_path(
    lab: &TriconeLabeling,
    tree: &EdgeSet,
    from: usize,
    to: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let g = lab.base();
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in tree.iter() {
        let (u, v) = g.edge(e);
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(e, v) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                prev[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut vertices = vec![to];
    let mut edges = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    Some((vertices, edges))
}

/// Sends a spanning tree of the base graph to a marked forest: drop the
/// canonical-tree edges, mark the child of each dropped cone edge except the
/// two at the special path, always mark the two special vertices, and place
/// the double mark when the 0-2 edge is present alongside a 2-to-1 path that
/// avoids it.
pub fn phi1(lab: &TriconeLabeling, b: &EdgeSet) -> Result<MarkedForest> {
    if !is_spanning_tree(lab.base(), b) {
        return Err(Error::NotASpanningTree);
    }
    let [_, v1, v2] = lab.special();
    let e01 = lab.cone_edge_of_checked(v1)?;
    let e02 = lab.cone_edge_of_checked(v2)?;

    let mut forest = EdgeSet::new(lab.red_edge_count());
    for e in b.iter() {
        if !lab.b0().contains(e) {
            let re = lab.base_edge_to_red(e).ok_or_else(|| {
                Error::Internal("non-canonical tree edge missing from reduced graph".into())
            })?;
            forest.insert(re);
        }
    }

    let mut marks = BTreeSet::new();
    for e in b.iter() {
        if lab.b0().contains(e) && e != e01 && e != e02 {
            let child = lab
                .cone_child(e)
                .ok_or_else(|| Error::Internal("canonical edge without child".into()))?;
            let rv = lab
                .red_vertex_of(child)
                .ok_or_else(|| Error::Internal("child maps to the apex".into()))?;
            marks.insert(rv);
        }
    }
    marks.insert(lab.red_vertex_of(v1).unwrap());
    marks.insert(lab.red_vertex_of(v2).unwrap());

    let mut double_mark = None;
    if b.contains(e02) {
        if let Some((vertices, edges)) = base_tree_path(lab, b, v2, v1) {
            if !edges.contains(&e02) {
                // First non-canonical edge along the path starting at the
                // type-2 end; its endpoint closer to that end gets the
                // second mark.
                for (i, &e) in edges.iter().enumerate() {
                    if !lab.b0().contains(e) {
                        let closer = vertices[i];
                        double_mark = Some(lab.red_vertex_of(closer).ok_or_else(|| {
                            Error::Internal("double mark on the apex".into())
                        })?);
                        break;
                    }
                }
                if double_mark.is_none() {
                    return Err(Error::Internal(
                        "2-to-1 path avoiding the 0-2 edge lies inside the canonical tree".into(),
                    ));
                }
            }
        }
    }
    let f = MarkedForest::new(forest, marks, double_mark);
    debug_assert!(is_trirooted(lab, &f).is_ok());
    Ok(f)
}

/// Recovers the spanning tree from a trirooted forest: cone edges of the
/// normal marks, the 0-2 edge for a double mark, the 0-1 edge when 0 and 1
/// are not connected in the blueprint, and the 0-2 edge again as the final
/// fallback.
pub fn phi1_inv(lab: &TriconeLabeling, f: &MarkedForest) -> Result<EdgeSet> {
    require_trirooted(lab, f)?;
    let [_, v1, v2] = lab.special();
    let e01 = lab.cone_edge_of_checked(v1)?;
    let e02 = lab.cone_edge_of_checked(v2)?;
    let [r1, r2] = lab.red_specials();

    let mut tree = EdgeSet::new(lab.base().edge_count());
    for re in f.forest.iter() {
        tree.insert(lab.red_edge_to_base(re));
    }
    for &rv in &f.marks {
        if rv != r1 && rv != r2 {
            let base_v = lab.base_vertex_of(rv);
            tree.insert(lab.cone_edge_of_checked(base_v)?);
        }
    }
    if f.double_mark.is_some() {
        tree.insert(e02);
    }
    let bp = blueprint_of(lab, f)?;
    if !bp.connected(0, 1) {
        tree.insert(e01);
    }
    if !is_spanning_tree(lab.base(), &tree) {
        tree.insert(e02);
    }
    if !is_spanning_tree(lab.base(), &tree) {
        return Err(Error::NotTrirooted(
            "reconstruction did not produce a spanning tree".into(),
        ));
    }
    Ok(tree)
}

/// Presence and activity of one of the two special edges in the tree that a
/// marked forest encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeStatus {
    pub present: bool,
    pub active: bool,
}

/// Activity classification of the marks of a trirooted forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkReport {
    /// Marked vertices whose associated edge is active.
    pub active: BTreeSet<usize>,
    /// Marked vertices whose associated edge is passive.
    pub passive: BTreeSet<usize>,
    pub edge01: EdgeStatus,
    pub edge02: EdgeStatus,
}

impl MarkReport {
    /// Passive marks on normal vertices; these are exactly the marks that
    /// empower edges under the weighting map.
    pub fn passive_normal(&self, lab: &TriconeLabeling) -> BTreeSet<usize> {
        let [r1, r2] = lab.red_specials();
        self.passive
            .iter()
            .copied()
            .filter(|&v| v != r1 && v != r2)
            .collect()
    }
}

/// Classifies every mark: the mark at the first special vertex is active;
/// the mark at the second is active exactly when there is no double mark; a
/// normal mark is active exactly when it is the sole mark of its component
/// and sits on the component's smallest vertex.
pub fn mark_activity(lab: &TriconeLabeling, f: &MarkedForest) -> Result<MarkReport> {
    require_trirooted(lab, f)?;
    let [r1, r2] = lab.red_specials();
    let comps = forest_components(lab, &f.forest);
    let mut active = BTreeSet::new();
    let mut passive = BTreeSet::new();
    for comp in &comps {
        let marks: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|v| f.marks.contains(v))
            .collect();
        let degree = marks.len()
            + usize::from(
                f.double_mark
                    .map(|d| comp.vertices.binary_search(&d).is_ok())
                    .unwrap_or(false),
            );
        let smallest = comp
            .vertices
            .iter()
            .copied()
            .min_by_key(|&v| lab.rank_of_red(v))
            .unwrap();
        for &v in &marks {
            if v == r1 {
                active.insert(v);
            } else if v == r2 {
                if f.double_mark.is_none() {
                    active.insert(v);
                } else {
                    passive.insert(v);
                }
            } else if degree == 1 && v == smallest {
                active.insert(v);
            } else {
                passive.insert(v);
            }
        }
    }
    let b = phi1_inv(lab, f)?;
    let [_, v1, v2] = lab.special();
    let p01 = b.contains(lab.cone_edge_of_checked(v1)?);
    let p02 = b.contains(lab.cone_edge_of_checked(v2)?);
    Ok(MarkReport {
        active,
        passive,
        edge01: EdgeStatus {
            present: p01,
            active: p01,
        },
        edge02: EdgeStatus {
            present: p02,
            active: p02 && f.double_mark.is_none(),
        },
    })
}

/// Active marks on normal vertices, ordered by vertex rank.
fn active_normal_marks(lab: &TriconeLabeling, f: &MarkedForest) -> Vec<usize> {
    let [r1, r2] = lab.red_specials();
    let comps = forest_components(lab, &f.forest);
    let mut out = Vec::new();
    for comp in &comps {
        let marks: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|v| f.marks.contains(v))
            .collect();
        let degree = marks.len()
            + usize::from(
                f.double_mark
                    .map(|d| comp.vertices.binary_search(&d).is_ok())
                    .unwrap_or(false),
            );
        if degree != 1 {
            continue;
        }
        let smallest = comp
            .vertices
            .iter()
            .copied()
            .min_by_key(|&v| lab.rank_of_red(v))
            .unwrap();
        if marks.len() == 1 && marks[0] == smallest && marks[0] != r1 && marks[0] != r2 {
            out.push(marks[0]);
        }
    }
    out.sort_by_key(|&v| lab.rank_of_red(v));
    out
}

/// A forest is maximal when its blueprint spans the three special vertices
/// and every normal mark is passive; the corresponding monomial then has top
/// degree.
pub fn is_maximal(lab: &TriconeLabeling, f: &MarkedForest) -> Result<bool> {
    require_trirooted(lab, f)?;
    let bp = blueprint_of(lab, f)?;
    Ok(bp.spanning() && active_normal_marks(lab, f).is_empty())
}

/// Produces a trirooted forest whose monomial is divisible by this one's and
/// has degree exactly one higher. Errors when the forest is already maximal.
///
/// Case order: first fix the active normal mark on the largest-ranked vertex
/// (attach an incident edge for a singleton component, otherwise empower an
/// edge of the component, trying larger edges first); then, with every
/// normal mark passive, trade the 0-1 edge for the 0-2 edge when the
/// blueprint links 1 and 2; otherwise scan single-variable extensions of the
/// monomial for the first valid one, which exists because the image is a
/// pure order ideal.
pub fn augment_step(lab: &TriconeLabeling, f: &MarkedForest) -> Result<MarkedForest> {
    require_trirooted(lab, f)?;
    if is_maximal(lab, f)? {
        return Err(Error::AlreadyMaximal);
    }
    let wf = weighted::phi2(lab, f)?;

    let actives = active_normal_marks(lab, f);
    if let Some(&v) = actives.last() {
        let comp = forest_components(lab, &f.forest)
            .into_iter()
            .find(|c| c.vertices.binary_search(&v).is_ok())
            .unwrap();
        let mut candidates: Vec<usize> = if comp.is_singleton() {
            lab.red_adj(v).iter().map(|&(e, _)| e).collect()
        } else {
            comp.edges.clone()
        };
        candidates.sort_unstable();
        candidates.dedup();
        candidates.reverse();
        for e in candidates {
            let cand = wf.mul_var(e);
            if !is_forest(lab, &cand.support_edge_set(lab.red_edge_count())) {
                continue;
            }
            if weighted::is_3weighted(lab, &cand).is_ok() {
                return weighted::phi2_inv(lab, &cand);
            }
        }
        return Err(Error::Internal(
            "no valid augmentation at an active normal mark".into(),
        ));
    }

    let bp = blueprint_of(lab, f)?;
    let edge01_present = !bp.connected(0, 1);
    if edge01_present && bp.e12 > 0 {
        let [_, v1, v2] = lab.special();
        let e01 = lab.cone_edge_of_checked(v1)?;
        let e02 = lab.cone_edge_of_checked(v2)?;
        let mut b = phi1_inv(lab, f)?;
        b.remove(e01);
        b.insert(e02);
        if !is_spanning_tree(lab.base(), &b) {
            return Err(Error::Internal("0-1 to 0-2 trade broke the tree".into()));
        }
        return phi1(lab, &b);
    }

    for e in 0..lab.red_edge_count() {
        let cand = wf.mul_var(e);
        if !is_forest(lab, &cand.support_edge_set(lab.red_edge_count())) {
            continue;
        }
        if weighted::is_3weighted(lab, &cand).is_ok() {
            return weighted::phi2_inv(lab, &cand);
        }
    }
    Err(Error::Internal(
        "non-maximal forest admits no single-variable extension".into(),
    ))
}

/// Iterates [`augment_step`] until the forest is maximal, returning every
/// stage including the start.
pub fn augment_chain(
    lab: &TriconeLabeling,
    f: &MarkedForest,
) -> Result<Vec<(MarkedForest, Monomial)>> {
    let mut out = vec![(f.clone(), weighted::phi2(lab, f)?)];
    let mut cur = f.clone();
    while !is_maximal(lab, &cur)? {
        cur = augment_step(lab, &cur)?;
        out.push((cur.clone(), weighted::phi2(lab, &cur)?));
        if out.len() > lab.base().vertex_count() + lab.base().edge_count() + 2 {
            return Err(Error::Internal("augmentation failed to terminate".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::labeling::build_labeling;

    fn worked6() -> (crate::graph::Graph, TriconeLabeling) {
        let g = parse_graph("0 1\n0 2\n0 3\n1 4\n2 5\n3 5\n4 5").unwrap();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        (g, lab)
    }

    fn tree_by_labels(lab: &TriconeLabeling, labels: &[&str]) -> EdgeSet {
        let mut s = EdgeSet::new(lab.base().edge_count());
        for l in labels {
            let (a, b) = l.split_once('-').unwrap();
            let e = lab.base_edge_by_tokens(a, b, &s).unwrap();
            s.insert(e);
        }
        s
    }

    fn red_vertices(lab: &TriconeLabeling, tokens: &[&str]) -> BTreeSet<usize> {
        tokens
            .iter()
            .map(|t| lab.g_red().vertex_by_token(t).unwrap())
            .collect()
    }

    #[test]
    fn phi1_on_canonical_tree_marks_everything() {
        let (_, lab) = worked6();
        let f = phi1(&lab, lab.b0()).unwrap();
        assert!(f.forest.is_empty());
        assert_eq!(f.marks, red_vertices(&lab, &["1", "2", "3", "4", "5"]));
        assert!(f.double_mark.is_none());
        assert_eq!(phi1_inv(&lab, &f).unwrap(), *lab.b0());
    }

    #[test]
    fn phi1_simple_tree() {
        let (_, lab) = worked6();
        let b = tree_by_labels(&lab, &["0-1", "0-2", "0-3", "2-5", "4-5"]);
        let f = phi1(&lab, &b).unwrap();
        assert_eq!(f.forest.indices(), vec![1]); // the 4-5 edge
        assert_eq!(f.marks, red_vertices(&lab, &["1", "2", "3", "5"]));
        assert!(f.double_mark.is_none());
        assert_eq!(phi1_inv(&lab, &f).unwrap(), b);
    }

    #[test]
    fn phi1_round_trip_all_trees() {
        let (g, lab) = worked6();
        let trees = crate::graph::spanning_trees(&g, 1000).unwrap();
        assert_eq!(trees.len(), 16);
        let mut images = BTreeSet::new();
        for b in &trees {
            let f = phi1(&lab, b).unwrap();
            assert!(is_trirooted(&lab, &f).is_ok());
            assert_eq!(phi1_inv(&lab, &f).unwrap(), *b, "round trip of {b:?}");
            images.insert(f);
        }
        assert_eq!(images.len(), 16);
    }

    #[test]
    fn blueprint_of_two_component() {
        let (_, lab) = worked6();
        // Forest {3-5} with marks on 3 and 5 (types 0 and 2); 4 keeps its
        // own mark as a singleton.
        let mut forest = EdgeSet::new(lab.red_edge_count());
        forest.insert(0); // 3-5
        let mut marks = red_vertices(&lab, &["1", "2", "3", "5"]);
        marks.insert(lab.g_red().vertex_by_token("4").unwrap());
        let f = MarkedForest::new(forest, marks, None);
        let bp = blueprint_of(&lab, &f).unwrap();
        assert_eq!(
            bp,
            Blueprint {
                e01: 0,
                e02: 1,
                e12: 0
            }
        );
    }

    #[test]
    fn trirooted_rejects_missing_mark() {
        let (_, lab) = worked6();
        let mut forest = EdgeSet::new(lab.red_edge_count());
        forest.insert(1);
        let f = MarkedForest::new(forest, red_vertices(&lab, &["1", "2", "4", "5"]), None);
        // Singleton vertex 3 is unmarked.
        assert!(matches!(
            is_trirooted(&lab, &f),
            Err(MarkViolation::NoMark(_))
        ));
    }

    #[test]
    fn trirooted_rejects_unmarked_special() {
        let (_, lab) = worked6();
        let f = MarkedForest::new(
            EdgeSet::new(lab.red_edge_count()),
            red_vertices(&lab, &["1", "3", "4", "5"]),
            None,
        );
        assert!(matches!(
            is_trirooted(&lab, &f),
            Err(MarkViolation::UnmarkedSpecial(_))
        ));
    }

    #[test]
    fn trirooted_rejects_cyclic_blueprint() {
        let g = parse_graph("0 1\n0 2\n0 3\n0 4\n1 5\n2 6\n3 5\n3 6\n4 5\n4 6").unwrap();
        let lab = build_labeling(&g, [0, 1, 2]).unwrap();
        // Two disjoint 2-components both of type {1,2} double the 1-2 edge.
        let used = EdgeSet::new(lab.base().edge_count());
        let re35 = lab
            .base_edge_to_red(lab.base_edge_by_tokens("3", "5", &used).unwrap())
            .unwrap();
        let re46 = lab
            .base_edge_to_red(lab.base_edge_by_tokens("4", "6", &used).unwrap())
            .unwrap();
        let mut forest = EdgeSet::new(lab.red_edge_count());
        forest.insert(re35);
        forest.insert(re46);
        let marks = red_vertices(&lab, &["1", "2", "3", "4", "5", "6"]);
        let f = MarkedForest::new(forest, marks, None);
        assert!(matches!(
            is_trirooted(&lab, &f),
            Err(MarkViolation::CyclicBlueprint(_))
        ));
    }

    #[test]
    fn mark_activity_simple() {
        let (_, lab) = worked6();
        let b = tree_by_labels(&lab, &["0-1", "0-2", "0-3", "2-5", "4-5"]);
        let f = phi1(&lab, &b).unwrap();
        let report = mark_activity(&lab, &f).unwrap();
        assert_eq!(report.active, red_vertices(&lab, &["1", "2", "3"]));
        assert_eq!(report.passive, red_vertices(&lab, &["5"]));
        assert!(report.edge01.present && report.edge01.active);
        assert!(report.edge02.present && report.edge02.active);
    }
}
