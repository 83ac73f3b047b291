//! Boundaried graphs and their gluing operations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub type Label = usize;

/// A graph with an injectively labelled boundary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundariedGraph {
    pub graph: Graph,
    labels: BTreeMap<Vertex, Label>,
}

impl BoundariedGraph {
    /// Builds a boundaried graph from `boundary vertex -> label` pairs.
    pub fn new(graph: Graph, labels: BTreeMap<Vertex, Label>) -> Result<Self> {
        for &v in labels.keys() {
            graph.check_vertex(v)?;
        }
        let mut seen = VertexSet::new();
        for &label in labels.values() {
            if !seen.insert(label) {
                return Err(Error::Precondition(format!("label {label} used twice")));
            }
        }
        Ok(BoundariedGraph { graph, labels })
    }

    /// The graph with every vertex on the boundary, labelled by `labels[v]`.
    pub fn trivial(graph: Graph, labels: &[Label]) -> Result<Self> {
        let map = labels.iter().copied().enumerate().collect();
        BoundariedGraph::new(graph, map)
    }

    pub fn boundary(&self) -> VertexSet {
        self.labels.keys().copied().collect()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, Label> {
        &self.labels
    }

    pub fn label_of(&self, v: Vertex) -> Option<Label> {
        self.labels.get(&v).copied()
    }

    pub fn vertex_with_label(&self, label: Label) -> Option<Vertex> {
        self.labels.iter().find(|(_, &l)| l == label).map(|(&v, _)| v)
    }

    pub fn label_image(&self) -> VertexSet {
        self.labels.values().copied().collect()
    }

    /// Whether the boundary is the whole vertex set.
    pub fn is_trivial(&self) -> bool {
        self.labels.len() == self.graph.vertex_count()
    }

    fn label_to_vertex(&self) -> BTreeMap<Label, Vertex> {
        self.labels.iter().map(|(&v, &l)| (l, v)).collect()
    }
}

/// Which operand of a gluing a vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Operand {
    Left,
    Right,
}

/// Records where every operand vertex ended up in a glued graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeirMap {
    pub left: Vec<Option<Vertex>>,
    pub right: Vec<Option<Vertex>>,
}

impl HeirMap {
    pub fn heir(&self, operand: Operand, v: Vertex) -> Option<Vertex> {
        match operand {
            Operand::Left => self.left.get(v).copied().flatten(),
            Operand::Right => self.right.get(v).copied().flatten(),
        }
    }

    /// Operand vertices whose heir is `glued`.
    pub fn origins(&self, glued: Vertex) -> Vec<(Operand, Vertex)> {
        let left = self
            .left
            .iter()
            .enumerate()
            .filter(|(_, h)| **h == Some(glued))
            .map(|(v, _)| (Operand::Left, v));
        let right = self
            .right
            .iter()
            .enumerate()
            .filter(|(_, h)| **h == Some(glued))
            .map(|(v, _)| (Operand::Right, v));
        left.chain(right).collect()
    }

    /// Heir map of the composition `self` followed by `next` (which glued `self`'s result on the left).
    pub fn then_left(&self, next: &HeirMap) -> HeirMap {
        let through = |h: &Option<Vertex>| h.and_then(|v| next.heir(Operand::Left, v));
        HeirMap {
            left: self.left.iter().map(through).collect(),
            right: self.right.iter().map(through).collect(),
        }
    }
}

/// True iff both label images agree and the label bijection is an isomorphism of the boundary graphs.
pub fn compatible(g1: &BoundariedGraph, g2: &BoundariedGraph) -> bool {
    if g1.label_image() != g2.label_image() {
        return false;
    }
    let by_label = g2.label_to_vertex();
    let translate = |v: Vertex| by_label[&g1.labels[&v]];
    let boundary: Vec<Vertex> = g1.labels.keys().copied().collect();
    boundary.iter().enumerate().all(|(i, &u)| {
        boundary[i + 1..]
            .iter()
            .all(|&v| g1.graph.has_edge(u, v) == g2.graph.has_edge(translate(u), translate(v)))
    })
}

/// Disjoint union of both graphs with equally labelled boundary vertices identified.
///
/// Vertices of `g1` keep their indices; the remaining vertices of `g2` follow in order.
pub fn glue_oplus(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<(Graph, HeirMap)> {
    let left_by_label = g1.label_to_vertex();
    let n1 = g1.graph.vertex_count();
    let mut right = Vec::with_capacity(g2.graph.vertex_count());
    let mut next = n1;
    for v in g2.graph.vertices() {
        match g2.label_of(v).and_then(|l| left_by_label.get(&l)) {
            Some(&u) => right.push(u),
            None => {
                right.push(next);
                next += 1;
            }
        }
    }
    let mut glued = Graph::new(next);
    for (u, v) in g1.graph.edges() {
        glued.add_edge(u, v)?;
    }
    for (u, v) in g2.graph.edges() {
        glued.add_edge(right[u], right[v])?;
    }
    let weighted_vertices = g1.graph.has_vertex_weights() || g2.graph.has_vertex_weights();
    let weighted_edges = g1.graph.has_edge_weights() || g2.graph.has_edge_weights();
    if weighted_vertices {
        for v in g1.graph.vertices() {
            glued.set_vertex_weight(v, g1.graph.vertex_weight(v));
        }
        for v in g2.graph.vertices() {
            let w = g2.graph.vertex_weight(v);
            if right[v] < n1 && g1.graph.vertex_weight(right[v]) != w {
                return Err(Error::WeightConflict(format!(
                    "identified vertex with label {:?} has weights {} and {}",
                    g2.label_of(v),
                    g1.graph.vertex_weight(right[v]),
                    w
                )));
            }
            glued.set_vertex_weight(right[v], w);
        }
    }
    if weighted_edges {
        for (u, v) in g1.graph.edges() {
            glued.set_edge_weight(u, v, g1.graph.edge_weight(u, v))?;
        }
        for (u, v) in g2.graph.edges() {
            let (gu, gv) = (right[u], right[v]);
            let w = g2.graph.edge_weight(u, v);
            if gu < n1 && gv < n1 && g1.graph.has_edge(gu, gv) && g1.graph.edge_weight(gu, gv) != w {
                return Err(Error::WeightConflict(format!(
                    "shared edge {gu}-{gv} has weights {} and {w}",
                    g1.graph.edge_weight(gu, gv)
                )));
            }
            glued.set_edge_weight(gu, gv, w)?;
        }
    }
    let heirs = HeirMap {
        left: (0..n1).map(Some).collect(),
        right: right.into_iter().map(Some).collect(),
    };
    Ok((glued, heirs))
}

/// Gluing that keeps every heir of a boundary vertex on the boundary, under the union of both label maps.
pub fn glue_boxplus(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<(BoundariedGraph, HeirMap)> {
    let (graph, heirs) = glue_oplus(g1, g2)?;
    let mut labels = BTreeMap::new();
    for (&v, &l) in &g1.labels {
        labels.insert(heirs.left[v].expect("left operand fully inherited"), l);
    }
    for (&v, &l) in &g2.labels {
        labels.insert(heirs.right[v].expect("right operand fully inherited"), l);
    }
    Ok((BoundariedGraph { graph, labels }, heirs))
}

/// Masked gluing `g1 ▷ g2`.
///
/// Starts from `g1 ⊕ g2`, then drops the boundary vertices of `g2` whose labels
/// `g1` does not use and the boundary-to-boundary edges of `g2` that `g1` lacks.
/// All of `g1` and the interior of `g2` survive.
pub fn mask_triangleright(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<(Graph, HeirMap)> {
    let (mut glued, heirs) = glue_oplus(g1, g2)?;
    let image = g1.label_image();
    let n1 = g1.graph.vertex_count();
    for (u, v) in g2.graph.edges() {
        let (Some(lu), Some(lv)) = (g2.label_of(u), g2.label_of(v)) else {
            continue;
        };
        if image.contains(&lu) && image.contains(&lv) {
            let (gu, gv) = (heirs.right[u].expect("glued"), heirs.right[v].expect("glued"));
            if gu < n1 && gv < n1 && !g1.graph.has_edge(gu, gv) {
                glued.remove_edge(gu, gv);
            }
        }
    }
    let dropped: VertexSet = g2
        .labels
        .iter()
        .filter(|(_, l)| !image.contains(l))
        .filter_map(|(&v, _)| heirs.right[v])
        .collect();
    let (masked, index) = glued.without(&dropped);
    let relabel = |h: &Option<Vertex>| h.and_then(|v| index.get(&v).copied());
    let heirs = HeirMap {
        left: heirs.left.iter().map(relabel).collect(),
        right: heirs.right.iter().map(relabel).collect(),
    };
    Ok((masked, heirs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;

    fn bounded(graph: Graph, pairs: &[(Vertex, Label)]) -> BoundariedGraph {
        BoundariedGraph::new(graph, pairs.iter().copied().collect()).unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let edge = || BoundariedGraph::trivial(Graph::complete(2), &[5, 6]).unwrap();
        assert!(compatible(&edge(), &edge()));
        let no_edge = BoundariedGraph::trivial(Graph::new(2), &[5, 6]).unwrap();
        assert!(!compatible(&edge(), &no_edge));
        let other = BoundariedGraph::trivial(Graph::complete(2), &[7, 8]).unwrap();
        assert!(!compatible(&edge(), &other));
    }

    #[test]
    fn oplus_examples() {
        let t1 = bounded(Graph::complete(3), &[(0, 1), (1, 2)]);
        let t2 = bounded(Graph::complete(3), &[(0, 1), (1, 2)]);
        let (g, _) = glue_oplus(&t1, &t2).unwrap();
        let mut k4_minus = Graph::complete(4);
        k4_minus.remove_edge(2, 3);
        assert!(isomorphic(&g, &k4_minus));

        let p = bounded(Graph::path(3), &[(0, 10), (2, 11)]);
        let (c4, _) = glue_oplus(&p, &p.clone()).unwrap();
        assert!(isomorphic(&c4, &Graph::cycle(4)));

        let trivial = BoundariedGraph::trivial(Graph::complete(2), &[1, 2]).unwrap();
        let (same, _) = glue_oplus(&t1, &trivial).unwrap();
        assert_eq!(same, Graph::complete(3));
    }

    #[test]
    fn oplus_rejects_weight_conflicts() {
        let mut a = Graph::complete(2);
        a.set_vertex_weight(0, 3);
        let g1 = BoundariedGraph::trivial(a, &[0, 1]).unwrap();
        let g2 = BoundariedGraph::trivial(Graph::complete(2), &[0, 1]).unwrap();
        assert!(matches!(glue_oplus(&g1, &g2), Err(Error::WeightConflict(_))));
    }

    #[test]
    fn boxplus_examples() {
        let a = BoundariedGraph::trivial(Graph::complete(2), &[0, 1]).unwrap();
        let b = BoundariedGraph::trivial(Graph::complete(3), &[2, 3, 4]).unwrap();
        let (u, _) = glue_boxplus(&a, &b).unwrap();
        assert_eq!(u.graph.vertex_count(), 5);
        assert!(u.is_trivial());
        let (same, _) = glue_boxplus(&a, &BoundariedGraph::default()).unwrap();
        assert!(isomorphic(&same.graph, &a.graph));
    }

    #[test]
    fn mask_deletes_unmatched_boundary() {
        let f = bounded(Graph::cycle(4), &[(0, 0), (1, 1), (2, 2)]);
        let trivial_without = BoundariedGraph::trivial(Graph::complete(2), &[0, 1]).unwrap();
        let (masked, _) = mask_triangleright(&trivial_without, &f).unwrap();
        assert!(isomorphic(&masked, &Graph::path(3)));
    }

    #[test]
    fn mask_with_full_boundary_is_identity() {
        let f = bounded(Graph::cycle(5), &[(0, 0), (1, 1)]);
        let x = BoundariedGraph::trivial(Graph::complete(2), &[0, 1]).unwrap();
        let (masked, _) = mask_triangleright(&x, &f).unwrap();
        assert!(isomorphic(&masked, &Graph::cycle(5)));
    }

    #[test]
    fn mask_adds_pendant() {
        let f = bounded(Graph::cycle(4), &[(0, 0), (1, 1)]);
        let mut gadget = Graph::complete(2);
        gadget.add_vertex();
        gadget.add_edge(1, 2).unwrap();
        let x = bounded(gadget, &[(0, 0), (1, 1)]);
        let (masked, _) = mask_triangleright(&x, &f).unwrap();
        let mut expected = Graph::cycle(4);
        let u = expected.add_vertex();
        expected.add_edge(1, u).unwrap();
        assert!(isomorphic(&masked, &expected));
    }

    #[test]
    fn mask_drops_boundary_edges_missing_in_left() {
        let f = bounded(Graph::complete(3), &[(0, 0), (1, 1)]);
        let x = BoundariedGraph::trivial(Graph::new(2), &[0, 1]).unwrap();
        let (masked, _) = mask_triangleright(&x, &f).unwrap();
        assert!(isomorphic(&masked, &Graph::path(3)));
    }
}
