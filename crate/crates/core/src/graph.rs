//! Simple undirected graphs with optional vertex and edge weights.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Weight = u64;
/// Sorted, duplicate-free set of vertex indices.
pub type VertexSet = BTreeSet<Vertex>;

/// Normalized key of an undirected edge (smaller endpoint first).
pub fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Weights are optional: an absent map means every weight is 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
    vertex_weights: Option<Vec<Weight>>,
    edge_weights: Option<BTreeMap<(Vertex, Vertex), Weight>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            ..Graph::default()
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and bad indices.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 3 {
            for u in 0..n {
                g.insert_edge_unchecked(u, (u + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.insert_edge_unchecked(u - 1, u);
        }
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adjacency.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Appends a new isolated vertex (weight 1 if weights are present) and returns its index.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adjacency.push(Vec::new());
        if let Some(w) = &mut self.vertex_weights {
            w.push(1);
        }
        self.adjacency.len() - 1
    }

    /// Inserts edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_edge_unchecked(u, v);
        Ok(true)
    }

    fn insert_edge_unchecked(&mut self, u: Vertex, v: Vertex) {
        let pos = self.adjacency[u].binary_search(&v).unwrap_err();
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
        self.edge_count += 1;
        if let Some(w) = &mut self.edge_weights {
            w.insert(edge_key(u, v), 1);
        }
    }

    /// Removes edge `uv`; returns whether it was present.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adjacency[u].retain(|&x| x != v);
        self.adjacency[v].retain(|&x| x != u);
        self.edge_count -= 1;
        if let Some(w) = &mut self.edge_weights {
            w.remove(&edge_key(u, v));
        }
        true
    }

    pub fn has_vertex_weights(&self) -> bool {
        self.vertex_weights.is_some()
    }

    pub fn has_edge_weights(&self) -> bool {
        self.edge_weights.is_some()
    }

    pub fn vertex_weight(&self, v: Vertex) -> Weight {
        self.vertex_weights.as_ref().map_or(1, |w| w[v])
    }

    /// Weight of edge `uv` (1 when edge weights are absent). The edge must exist.
    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Weight {
        self.edge_weights
            .as_ref()
            .map_or(1, |w| w.get(&edge_key(u, v)).copied().unwrap_or(1))
    }

    pub fn set_vertex_weight(&mut self, v: Vertex, weight: Weight) {
        let n = self.vertex_count();
        self.vertex_weights.get_or_insert_with(|| vec![1; n])[v] = weight;
    }

    pub fn set_edge_weight(&mut self, u: Vertex, v: Vertex, weight: Weight) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::Precondition(format!("no edge {u}-{v} to weight")));
        }
        if self.edge_weights.is_none() {
            self.edge_weights = Some(self.edges().map(|e| (e, 1)).collect());
        }
        if let Some(w) = &mut self.edge_weights {
            w.insert(edge_key(u, v), weight);
        }
        Ok(())
    }

    /// Drops both weight maps, making every weight 1.
    pub fn clear_weights(&mut self) {
        self.vertex_weights = None;
        self.edge_weights = None;
    }

    pub fn vertex_set_weight<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Weight {
        set.into_iter().map(|&v| self.vertex_weight(v)).sum()
    }

    pub fn total_vertex_weight(&self) -> Weight {
        self.vertices().map(|v| self.vertex_weight(v)).sum()
    }

    pub fn total_edge_weight(&self) -> Weight {
        self.edges().map(|(u, v)| self.edge_weight(u, v)).sum()
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|&u| self.adjacency[u].iter().all(|v| !set.contains(v)))
    }

    /// Returns a 2-coloring `(A, B)` with every edge crossing, or `None` for a non-bipartite graph.
    ///
    /// The lowest-index vertex of each component goes to side `A`.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let colors = self.two_coloring()?;
        let mut a = VertexSet::new();
        let mut b = VertexSet::new();
        for (v, c) in colors.into_iter().enumerate() {
            if c {
                b.insert(v);
            } else {
                a.insert(v);
            }
        }
        Some((a, b))
    }

    /// Per-vertex side (`false` = side A) of a proper 2-coloring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap_or(false);
                for &v in &self.adjacency[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Subgraph induced by `keep`, together with the old-to-new index map.
    ///
    /// New indices follow the sorted order of `keep`; weights are restricted.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, BTreeMap<Vertex, Vertex>)> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let map: BTreeMap<Vertex, Vertex> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut h = Graph::new(keep.len());
        for (&old_u, &new_u) in &map {
            h.adjacency[new_u] = self.adjacency[old_u]
                .iter()
                .filter_map(|v| map.get(v).copied())
                .collect();
        }
        h.edge_count = h.adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        if let Some(w) = &self.vertex_weights {
            h.vertex_weights = Some(keep.iter().map(|&v| w[v]).collect());
        }
        if self.edge_weights.is_some() {
            let order: Vec<Vertex> = keep.iter().copied().collect();
            let mut ew = BTreeMap::new();
            for (u, v) in h.edges() {
                ew.insert((u, v), self.edge_weight(order[u], order[v]));
            }
            h.edge_weights = Some(ew);
        }
        Ok((h, map))
    }

    /// Graph with the vertices of `removed` deleted, plus the old-to-new index map.
    pub fn without(&self, removed: &VertexSet) -> (Graph, BTreeMap<Vertex, Vertex>) {
        let keep: VertexSet = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
            .expect("complement of a vertex set is in range")
    }

    /// Connected components ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = VertexSet::new();
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                component.insert(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// 2-connectivity: connected, at least two vertices and no cut vertex.
    ///
    /// `K_2` counts as 2-connected; `K_1` does not.
    pub fn is_biconnected(&self) -> bool {
        let n = self.vertex_count();
        if n < 2 || !self.is_connected() {
            return false;
        }
        (0..n).all(|v| {
            let removed: VertexSet = [v].into_iter().collect();
            self.without(&removed).0.is_connected()
        })
    }

    /// All vertex sets of size `t` inducing a clique, in lexicographic order.
    ///
    /// `heavy_side` must leave a bipartite remainder; then every clique with
    /// `t >= 3` has at most two vertices outside it, which prunes the search.
    pub fn enumerate_kt_occurrences(&self, t: usize, heavy_side: &VertexSet) -> Result<Vec<VertexSet>> {
        if t >= 3 && !self.without(heavy_side).0.is_bipartite() {
            return Err(Error::Precondition(
                "graph minus the heavy side is not bipartite".into(),
            ));
        }
        let mut found = Vec::new();
        let mut current = Vec::with_capacity(t);
        self.extend_cliques(t, heavy_side, &mut current, 0, &mut found);
        Ok(found)
    }

    fn extend_cliques(
        &self,
        t: usize,
        heavy_side: &VertexSet,
        current: &mut Vec<Vertex>,
        next: Vertex,
        found: &mut Vec<VertexSet>,
    ) {
        if current.len() == t {
            found.push(current.iter().copied().collect());
            return;
        }
        let light = current.iter().filter(|v| !heavy_side.contains(v)).count();
        for v in next..self.vertex_count() {
            if t >= 3 && light >= 2 && !heavy_side.contains(&v) {
                continue;
            }
            if current.iter().all(|&u| self.has_edge(u, v)) {
                current.push(v);
                self.extend_cliques(t, heavy_side, current, v + 1, found);
                current.pop();
            }
        }
    }

    /// Whether some set of `t` vertices induces a clique.
    pub fn contains_clique(&self, t: usize) -> bool {
        let mut found = Vec::new();
        let mut current = Vec::new();
        self.extend_first_clique(t, &mut current, 0, &mut found);
        !found.is_empty()
    }

    fn extend_first_clique(&self, t: usize, current: &mut Vec<Vertex>, next: Vertex, found: &mut Vec<()>) {
        if !found.is_empty() {
            return;
        }
        if current.len() == t {
            found.push(());
            return;
        }
        for v in next..self.vertex_count() {
            if current.iter().all(|&u| self.has_edge(u, v)) {
                current.push(v);
                self.extend_first_clique(t, current, v + 1, found);
                current.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(Graph::cycle(4).bipartition(), Some((set(&[0, 2]), set(&[1, 3]))));
        assert_eq!(Graph::cycle(5).bipartition(), None);
        assert_eq!(Graph::new(3).bipartition(), Some((set(&[0, 1, 2]), set(&[]))));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k3, _) = Graph::complete(4).induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let (p3, _) = Graph::cycle(5).induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(p3, Graph::path(3));
        assert!(Graph::cycle(5).induced_subgraph(&set(&[7])).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_weights() {
        let mut g = Graph::cycle(4);
        g.set_vertex_weight(2, 9);
        g.set_edge_weight(2, 3, 5).unwrap();
        let (h, map) = g.induced_subgraph(&set(&[1, 2, 3])).unwrap();
        assert_eq!(h.vertex_weight(map[&2]), 9);
        assert_eq!(h.edge_weight(map[&2], map[&3]), 5);
        assert_eq!(h.edge_weight(map[&1], map[&2]), 1);
    }

    #[test]
    fn components_examples() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.connected_components(), vec![set(&[0, 1, 2]), set(&[3, 4, 5])]);
        assert_eq!(Graph::cycle(5).connected_components().len(), 1);
        assert_eq!(Graph::new(2).connected_components(), vec![set(&[0]), set(&[1])]);
    }

    #[test]
    fn biconnectivity_examples() {
        assert!(Graph::cycle(5).is_biconnected());
        assert!(!Graph::path(3).is_biconnected());
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!bowtie.is_biconnected());
        assert!(Graph::complete(2).is_biconnected());
        assert!(!Graph::new(1).is_biconnected());
    }

    #[test]
    fn kt_occurrence_examples() {
        assert_eq!(
            Graph::complete(4)
                .enumerate_kt_occurrences(3, &set(&[0, 1]))
                .unwrap()
                .len(),
            4
        );
        assert!(Graph::cycle(6)
            .enumerate_kt_occurrences(3, &set(&[]))
            .unwrap()
            .is_empty());
        assert_eq!(
            Graph::complete(5)
                .enumerate_kt_occurrences(4, &set(&[0, 1, 2]))
                .unwrap()
                .len(),
            5
        );
        assert!(Graph::complete(3).enumerate_kt_occurrences(3, &set(&[])).is_err());
    }

    #[test]
    fn edge_validation() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }
}
