#![allow(dead_code)]

pub mod base;
pub mod dp;
pub mod gadgets;
pub mod gluing;
pub mod packing;
pub mod scaling;
pub mod structural;

use std::collections::BTreeMap;

use biptw::boundaried::{compatible, glue_oplus, BoundariedGraph};
use biptw::{Graph, Vertex, VertexSet, Weight};
use rand::Rng;

/// Two compatible boundaried graphs `F` and `G` together with `F ⊕ G`.
///
/// Both operands put their boundary first, labelled `0..boundary`, so the
/// glued graph keeps the indices of `F` and appends the interior of `G`.
pub struct GluedPair {
    pub left: BoundariedGraph,
    pub right: BoundariedGraph,
    pub glued: Graph,
    /// Glued index of every vertex of `G`.
    pub right_heirs: Vec<Vertex>,
    pub boundary: usize,
}

/// Knobs for [`random_pair`].
#[derive(Debug, Clone, Copy)]
pub struct PairShape {
    pub max_side: usize,
    pub max_boundary: usize,
    pub min_boundary: usize,
    /// Cap on the vertex count of the glued graph.
    pub max_glued: usize,
    pub edge_probability: f64,
    pub vertex_weights: bool,
    pub edge_weights: bool,
}

impl Default for PairShape {
    fn default() -> Self {
        PairShape {
            max_side: 8,
            max_boundary: 4,
            min_boundary: 0,
            max_glued: 16,
            edge_probability: 0.5,
            vertex_weights: false,
            edge_weights: false,
        }
    }
}

fn random_weight<R: Rng>(rng: &mut R) -> Weight {
    rng.gen_range(0..=5)
}

fn random_side<R: Rng>(rng: &mut R, boundary_graph: &Graph, size: usize, shape: PairShape) -> Graph {
    let b = boundary_graph.vertex_count();
    let mut g = Graph::new(size);
    for (u, v) in boundary_graph.edges() {
        g.add_edge(u, v).unwrap();
        if shape.edge_weights {
            g.set_edge_weight(u, v, boundary_graph.edge_weight(u, v)).unwrap();
        }
    }
    for u in 0..size {
        for v in (u + 1).max(b)..size {
            if rng.gen_bool(shape.edge_probability) {
                g.add_edge(u, v).unwrap();
                if shape.edge_weights {
                    g.set_edge_weight(u, v, random_weight(rng)).unwrap();
                }
            }
        }
    }
    if shape.vertex_weights {
        for v in 0..size {
            let w = if v < b {
                boundary_graph.vertex_weight(v)
            } else {
                random_weight(rng)
            };
            g.set_vertex_weight(v, w);
        }
    }
    g
}

/// A random compatible pair with the given shape.
pub fn random_pair<R: Rng>(rng: &mut R, shape: PairShape) -> GluedPair {
    let boundary = rng.gen_range(shape.min_boundary..=shape.max_boundary.min(shape.max_side));
    let mut boundary_graph = Graph::new(boundary);
    for u in 0..boundary {
        for v in u + 1..boundary {
            if rng.gen_bool(shape.edge_probability) {
                boundary_graph.add_edge(u, v).unwrap();
                if shape.edge_weights {
                    boundary_graph.set_edge_weight(u, v, random_weight(rng)).unwrap();
                }
            }
        }
    }
    if shape.vertex_weights {
        for v in 0..boundary {
            boundary_graph.set_vertex_weight(v, random_weight(rng));
        }
    }
    let left_size = rng.gen_range(boundary..=shape.max_side.min(shape.max_glued).max(boundary));
    let right_limit = shape.max_side.min(shape.max_glued + boundary - left_size).max(boundary);
    let right_size = rng.gen_range(boundary..=right_limit);
    let left_graph = random_side(rng, &boundary_graph, left_size, shape);
    let right_graph = random_side(rng, &boundary_graph, right_size, shape);
    glue(left_graph, right_graph, boundary)
}

/// Glues two graphs whose first `boundary` vertices are identified in order.
pub fn glue(left_graph: Graph, right_graph: Graph, boundary: usize) -> GluedPair {
    let labels: BTreeMap<Vertex, usize> = (0..boundary).map(|v| (v, v)).collect();
    let left = BoundariedGraph::new(left_graph, labels.clone()).unwrap();
    let right = BoundariedGraph::new(right_graph, labels).unwrap();
    assert!(compatible(&left, &right));
    let (glued, heirs) = glue_oplus(&left, &right).unwrap();
    let right_heirs = heirs
        .right
        .iter()
        .map(|h| h.expect("every vertex has an heir"))
        .collect();
    GluedPair {
        left,
        right,
        glued,
        right_heirs,
        boundary,
    }
}

impl GluedPair {
    pub fn shared(&self) -> VertexSet {
        (0..self.boundary).collect()
    }

    pub fn left_vertices(&self) -> VertexSet {
        self.left.graph.vertex_set()
    }

    pub fn right_vertices(&self) -> VertexSet {
        self.right_heirs.iter().copied().collect()
    }

    /// Glued index to `G` index, for translating annotations onto `G`.
    pub fn to_right(&self) -> BTreeMap<Vertex, Vertex> {
        self.right_heirs.iter().enumerate().map(|(v, &h)| (h, v)).collect()
    }

    /// Interior vertices of `F`, which keep their indices in the glued graph.
    pub fn left_interior(&self) -> Vec<Vertex> {
        (self.boundary..self.left.graph.vertex_count()).collect()
    }
}
