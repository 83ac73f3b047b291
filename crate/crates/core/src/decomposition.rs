//! Rooted bipartite tree decompositions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Vertex, VertexSet};

pub type Node = usize;

/// A rooted tree whose nodes carry an apex set `alpha` and a free set `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    /// Parent of every node; the root is its own parent.
    pub parent: Vec<Node>,
    pub root: Node,
    pub alpha: Vec<VertexSet>,
    pub beta: Vec<VertexSet>,
}

/// One violated axiom found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MalformedTree(String),
    VertexOutOfRange {
        node: Node,
        vertex: Vertex,
    },
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    DisconnectedOccurrence(Vertex),
    ApexFreeOverlap {
        node: Node,
        vertex: Vertex,
    },
    FreePartNotInClass {
        node: Node,
    },
    FreeIntersectionTooLarge {
        node: Node,
        neighbor: Node,
        shared: VertexSet,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedTree(why) => write!(f, "malformed tree: {why}"),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "node {node} mentions vertex {vertex} which is out of range")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex coverage: vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge coverage: edge {u}-{v} is in no bag"),
            Violation::DisconnectedOccurrence(v) => {
                write!(f, "connectivity: the bags containing vertex {v} are not connected")
            }
            Violation::ApexFreeOverlap { node, vertex } => {
                write!(f, "disjointness: vertex {vertex} is both apex and free at node {node}")
            }
            Violation::FreePartNotInClass { node } => {
                write!(
                    f,
                    "free part: the free set of node {node} does not induce a graph in the class"
                )
            }
            Violation::FreeIntersectionTooLarge { node, neighbor, shared } => write!(
                f,
                "neighbor intersection: bag of node {neighbor} meets the free set of node {node} in {shared:?}"
            ),
        }
    }
}

/// Per-node quantities used by the dynamic program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeContext {
    pub node: Node,
    /// Intersection of the bag with the parent bag (empty at the root).
    pub adhesion: VertexSet,
    pub children: Vec<Node>,
    /// `alpha ∪ adhesion`.
    pub annotated: VertexSet,
    /// Free vertices shared with a child that are not in the adhesion.
    pub shared_free: VertexSet,
    /// `annotated ∪ shared_free`.
    pub boundary: VertexSet,
}

impl RootedDecomposition {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn bag(&self, t: Node) -> VertexSet {
        self.alpha[t].union(&self.beta[t]).copied().collect()
    }

    /// Maximum apex-set size.
    pub fn width(&self) -> usize {
        self.alpha.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn children(&self) -> Vec<Vec<Node>> {
        let mut children = vec![Vec::new(); self.node_count()];
        for (t, &p) in self.parent.iter().enumerate() {
            if t != self.root {
                children[p].push(t);
            }
        }
        children
    }

    /// Nodes ordered so that every child precedes its parent.
    pub fn postorder(&self) -> Vec<Node> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Nodes ordered so that every parent precedes its children.
    pub fn preorder(&self) -> Vec<Node> {
        let children = self.children();
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            order.push(t);
            stack.extend(children[t].iter().rev());
        }
        order
    }

    /// The same tree hung from `root`; bags are unchanged.
    pub fn reroot(&self, root: Node) -> Result<RootedDecomposition> {
        if root >= self.node_count() {
            return Err(Error::Precondition(format!("node {root} does not exist")));
        }
        let mut neighbors = vec![Vec::new(); self.node_count()];
        for (t, &p) in self.parent.iter().enumerate() {
            if t != self.root {
                neighbors[t].push(p);
                neighbors[p].push(t);
            }
        }
        let mut parent = vec![usize::MAX; self.node_count()];
        parent[root] = root;
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for &s in &neighbors[t] {
                if parent[s] == usize::MAX {
                    parent[s] = t;
                    stack.push(s);
                }
            }
        }
        Ok(RootedDecomposition {
            parent,
            root,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        })
    }

    pub fn adhesion(&self, t: Node) -> VertexSet {
        if t == self.root {
            VertexSet::new()
        } else {
            self.bag(t).intersection(&self.bag(self.parent[t])).copied().collect()
        }
    }

    pub fn context(&self, t: Node) -> NodeContext {
        let children = self.children().swap_remove(t);
        let adhesion = self.adhesion(t);
        let annotated: VertexSet = self.alpha[t].union(&adhesion).copied().collect();
        let shared_free: VertexSet = children
            .iter()
            .flat_map(|&c| self.adhesion(c))
            .filter(|v| self.beta[t].contains(v) && !adhesion.contains(v))
            .collect();
        let boundary = annotated.union(&shared_free).copied().collect();
        NodeContext {
            node: t,
            adhesion,
            children,
            annotated,
            shared_free,
            boundary,
        }
    }

    /// Checks the tree structure only (parent pointers, single root, acyclicity).
    fn tree_problem(&self) -> Option<String> {
        let n = self.node_count();
        if n == 0 {
            return Some("no nodes".into());
        }
        if self.alpha.len() != n || self.beta.len() != n {
            return Some("alpha/beta lengths differ from the node count".into());
        }
        if self.root >= n || self.parent[self.root] != self.root {
            return Some("root must be its own parent".into());
        }
        if let Some(t) = (0..n).find(|&t| self.parent[t] >= n || (t != self.root && self.parent[t] == t)) {
            return Some(format!("node {t} has an invalid parent"));
        }
        if self.preorder().len() != n {
            return Some("parent pointers do not form a tree rooted at the root".into());
        }
        None
    }
}

/// Lists every violated axiom; an empty list means `d` is valid for `g`.
///
/// `in_class` decides membership of the free-part graphs (bipartiteness by default).
pub fn validate(g: &Graph, d: &RootedDecomposition, in_class: &dyn Fn(&Graph) -> bool) -> Vec<Violation> {
    if let Some(why) = d.tree_problem() {
        return vec![Violation::MalformedTree(why)];
    }
    let mut violations = Vec::new();
    let n = g.vertex_count();
    for t in 0..d.node_count() {
        for &v in d.alpha[t].iter().chain(&d.beta[t]) {
            if v >= n {
                violations.push(Violation::VertexOutOfRange { node: t, vertex: v });
            }
        }
    }
    if !violations.is_empty() {
        return violations;
    }
    let bags: Vec<VertexSet> = (0..d.node_count()).map(|t| d.bag(t)).collect();
    let mut occurrences: Vec<Vec<Node>> = vec![Vec::new(); n];
    for (t, bag) in bags.iter().enumerate() {
        for &v in bag {
            occurrences[v].push(t);
        }
    }
    for v in g.vertices() {
        if occurrences[v].is_empty() {
            violations.push(Violation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        if !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            violations.push(Violation::UncoveredEdge(u, v));
        }
    }
    for v in g.vertices() {
        let nodes = &occurrences[v];
        let tops = nodes
            .iter()
            .filter(|&&t| t == d.root || !bags[d.parent[t]].contains(&v))
            .count();
        if tops > 1 {
            violations.push(Violation::DisconnectedOccurrence(v));
        }
    }
    for t in 0..d.node_count() {
        for &v in d.alpha[t].intersection(&d.beta[t]) {
            violations.push(Violation::ApexFreeOverlap { node: t, vertex: v });
        }
        let free = g.induced_subgraph(&d.beta[t]).expect("checked range").0;
        if !in_class(&free) {
            violations.push(Violation::FreePartNotInClass { node: t });
        }
    }
    for t in 0..d.node_count() {
        if t == d.root {
            continue;
        }
        let p = d.parent[t];
        for (node, neighbor) in [(t, p), (p, t)] {
            let shared: VertexSet = bags[neighbor].intersection(&d.beta[node]).copied().collect();
            if shared.len() > 1 {
                violations.push(Violation::FreeIntersectionTooLarge { node, neighbor, shared });
            }
        }
    }
    violations
}

/// Validation against the default class of bipartite graphs.
pub fn validate_bipartite(g: &Graph, d: &RootedDecomposition) -> Vec<Violation> {
    validate(g, d, &Graph::is_bipartite)
}

fn ensure_valid(g: &Graph, d: &RootedDecomposition) -> Result<()> {
    match validate_bipartite(g, d).first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
    }
}

/// Contracts tree edges whose bags are nested until no bag is contained in a neighboring bag.
///
/// The larger bag keeps its apex and free sets, so the width never grows.
pub fn normalize(g: &Graph, d: &RootedDecomposition) -> Result<RootedDecomposition> {
    ensure_valid(g, d)?;
    let mut parent = d.parent.clone();
    let mut alpha = d.alpha.clone();
    let mut beta = d.beta.clone();
    let mut alive = vec![true; d.node_count()];
    let bag =
        |alpha: &[VertexSet], beta: &[VertexSet], t: Node| -> VertexSet { alpha[t].union(&beta[t]).copied().collect() };
    while let Some(t) = (0..parent.len()).find(|&t| {
        if !alive[t] || t == d.root {
            return false;
        }
        let (bag_t, bag_p) = (bag(&alpha, &beta, t), bag(&alpha, &beta, parent[t]));
        bag_t.is_subset(&bag_p) || bag_p.is_subset(&bag_t)
    }) {
        let p = parent[t];
        if !bag(&alpha, &beta, t).is_subset(&bag(&alpha, &beta, p)) {
            alpha[p] = std::mem::take(&mut alpha[t]);
            beta[p] = std::mem::take(&mut beta[t]);
        }
        alive[t] = false;
        for c in 0..parent.len() {
            if alive[c] && parent[c] == t {
                parent[c] = p;
            }
        }
    }
    let ids: BTreeMap<Node, Node> = (0..parent.len())
        .filter(|&t| alive[t])
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let root = ids[&d.root];
    let mut result = RootedDecomposition {
        parent: vec![root; ids.len()],
        root,
        alpha: vec![VertexSet::new(); ids.len()],
        beta: vec![VertexSet::new(); ids.len()],
    };
    for (&old, &new) in &ids {
        if new != root {
            result.parent[new] = ids[&parent[old]];
        }
        result.alpha[new] = std::mem::take(&mut alpha[old]);
        result.beta[new] = std::mem::take(&mut beta[old]);
    }
    Ok(result)
}

/// Single-node decomposition with the given odd cycle transversal as apex set.
pub fn from_oct(g: &Graph, oct_set: &VertexSet) -> Result<RootedDecomposition> {
    for &v in oct_set {
        g.check_vertex(v)?;
    }
    if !g.without(oct_set).0.is_bipartite() {
        return Err(Error::Precondition(
            "removing the set does not leave a bipartite graph".into(),
        ));
    }
    Ok(RootedDecomposition {
        parent: vec![0],
        root: 0,
        alpha: vec![oct_set.clone()],
        beta: vec![g.vertices().filter(|v| !oct_set.contains(v)).collect()],
    })
}

/// Turns an ordinary tree decomposition into one with every bag vertex an apex vertex.
///
/// `tree` lists undirected edges between bag indices; bag 0 becomes the root.
pub fn from_tree_decomposition(g: &Graph, bags: &[VertexSet], tree: &[(usize, usize)]) -> Result<RootedDecomposition> {
    let k = bags.len();
    if k == 0 || tree.len() + 1 != k {
        return Err(Error::InvalidDecomposition(
            "a tree on the bags needs exactly bags-1 edges".into(),
        ));
    }
    let mut adjacency = vec![Vec::new(); k];
    for &(a, b) in tree {
        if a >= k || b >= k || a == b {
            return Err(Error::InvalidDecomposition(format!("bad tree edge {a}-{b}")));
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut parent = vec![usize::MAX; k];
    parent[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for &c in &adjacency[t] {
            if parent[c] == usize::MAX {
                parent[c] = t;
                queue.push_back(c);
            }
        }
    }
    if parent.contains(&usize::MAX) {
        return Err(Error::InvalidDecomposition("tree is disconnected".into()));
    }
    let d = RootedDecomposition {
        parent,
        root: 0,
        alpha: bags.to_vec(),
        beta: vec![VertexSet::new(); k],
    };
    ensure_valid(g, &d)?;
    Ok(d)
}

/// Applies an odd-minor operation to `g` and transforms `d` accordingly.
///
/// `kept` is a subgraph of `g` on the same index range; the vertices outside
/// `side_a ∪ side_b` are deleted and the edges of `kept` between the two sides
/// are contracted. A contracted vertex becomes an apex vertex of a node if one
/// of its pre-images was an apex vertex there, and a free vertex otherwise.
pub fn push_odd_minor(
    g: &Graph,
    d: &RootedDecomposition,
    kept: &Graph,
    side_a: &VertexSet,
    side_b: &VertexSet,
) -> Result<(Graph, RootedDecomposition)> {
    ensure_valid(g, d)?;
    if kept.vertex_count() != g.vertex_count() {
        return Err(Error::Precondition(
            "kept subgraph must use the same vertex indices".into(),
        ));
    }
    if !side_a.is_disjoint(side_b) {
        return Err(Error::Precondition("cut sides overlap".into()));
    }
    let kept_vertices: VertexSet = side_a.union(side_b).copied().collect();
    for (u, v) in kept.edges() {
        if !g.has_edge(u, v) {
            return Err(Error::Precondition(format!("edge {u}-{v} is not an edge of the graph")));
        }
        if !kept_vertices.contains(&u) || !kept_vertices.contains(&v) {
            return Err(Error::Precondition(format!("edge {u}-{v} touches a deleted vertex")));
        }
    }
    let crosses = |u: Vertex, v: Vertex| side_a.contains(&u) != side_a.contains(&v);
    let mut class = UnionFind::new(g.vertex_count());
    for (u, v) in kept.edges() {
        if crosses(u, v) {
            class.union(u, v);
        }
    }
    let mut index: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &v in &kept_vertices {
        let root = class.find(v);
        let next = index.len();
        index.entry(root).or_insert(next);
    }
    let image = |class: &mut UnionFind, v: Vertex| index[&class.find(v)];
    let mut h = Graph::new(index.len());
    let mut members: Vec<VertexSet> = vec![VertexSet::new(); index.len()];
    for &v in &kept_vertices {
        members[image(&mut class, v)].insert(v);
    }
    for (u, v) in kept.edges() {
        if crosses(u, v) {
            continue;
        }
        let (a, b) = (image(&mut class, u), image(&mut class, v));
        if a != b {
            h.add_edge(a, b)?;
        }
    }
    let mut alpha = vec![VertexSet::new(); d.node_count()];
    let mut beta = vec![VertexSet::new(); d.node_count()];
    for t in 0..d.node_count() {
        let bag = d.bag(t);
        for (x, pre) in members.iter().enumerate() {
            if pre.is_disjoint(&bag) {
                continue;
            }
            if pre.iter().any(|v| d.alpha[t].contains(v)) {
                alpha[t].insert(x);
            } else {
                beta[t].insert(x);
            }
        }
    }
    let dh = RootedDecomposition {
        parent: d.parent.clone(),
        root: d.root,
        alpha,
        beta,
    };
    Ok((h, dh))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Proper colouring with at most `width + 2` colours, built top-down along the decomposition.
///
/// Each node gives its new apex vertices colours unused on the adhesion and
/// two-colours its free set with colours no apex vertex of the node uses,
/// reusing the colour of the shared free vertex when that is safe.
pub fn coloring_from_decomposition(g: &Graph, d: &RootedDecomposition) -> Result<Vec<usize>> {
    ensure_valid(g, d)?;
    let palette = d.width() + 2;
    let mut color: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for t in d.preorder() {
        let adhesion = d.adhesion(t);
        let adhesion_colors: BTreeSet<usize> = adhesion.iter().filter_map(|&v| color[v]).collect();
        let mut fresh = (0..palette).filter(|c| !adhesion_colors.contains(c));
        for &v in &d.alpha[t] {
            if color[v].is_none() {
                color[v] = fresh.next();
            }
        }
        let apex_colors: BTreeSet<usize> = d.alpha[t].iter().filter_map(|&v| color[v]).collect();
        let shared = d.beta[t].iter().copied().find(|v| color[*v].is_some());
        let (free_graph, map) = g.induced_subgraph(&d.beta[t])?;
        let sides = free_graph.two_coloring().ok_or(Error::NotBipartite)?;
        let side_of = |v: Vertex| sides[map[&v]];
        let mut spare = (0..palette).filter(|c| !apex_colors.contains(c));
        let (first, second) = match shared.and_then(|v| color[v].map(|c| (v, c))) {
            Some((_, c)) if !apex_colors.contains(&c) => {
                let other = spare.find(|&x| x != c);
                (Some(c), other)
            }
            _ => (spare.next(), spare.next()),
        };
        let shared_side = shared.map(side_of);
        for &v in &d.beta[t] {
            if color[v].is_some() {
                continue;
            }
            let same_side_as_shared = shared_side.map_or(!side_of(v), |s| side_of(v) == s);
            color[v] = if same_side_as_shared { first } else { second };
        }
    }
    let coloring: Vec<usize> = color
        .into_iter()
        .map(|c| c.ok_or_else(|| Error::Internal("colour palette exhausted".into())))
        .collect::<Result<_>>()?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| coloring[u] == coloring[v]) {
        return Err(Error::Internal(format!(
            "colouring conflict on edge {}",
            fmt_edge(u, v)
        )));
    }
    Ok(coloring)
}

fn fmt_edge(u: Vertex, v: Vertex) -> String {
    let (a, b) = edge_key(u, v);
    format!("{a}-{b}")
}
