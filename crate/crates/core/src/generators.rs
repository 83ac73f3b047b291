//! Deterministic graph families and random instances with bipartite tree decompositions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{from_oct, validate_bipartite, RootedDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// `K_{t,t}` with a pendant triangle glued at every vertex, and its width-1 star decomposition.
///
/// The centre bag holds the biclique as its free part; the leaf bag of
/// vertex `v` has apex set `{v}` and the two new triangle vertices as free part.
pub fn no_nice(t: usize) -> Result<(Graph, RootedDecomposition)> {
    if t == 0 {
        return Err(Error::Precondition(
            "the biclique needs at least one vertex per side".into(),
        ));
    }
    let mut g = Graph::complete_bipartite(t, t);
    let mut alpha = vec![VertexSet::new()];
    let mut beta = vec![g.vertex_set()];
    for v in 0..2 * t {
        let a = g.add_vertex();
        let b = g.add_vertex();
        for (x, y) in [(v, a), (a, b), (v, b)] {
            g.add_edge(x, y)?;
        }
        alpha.push([v].into_iter().collect());
        beta.push([a, b].into_iter().collect());
    }
    let d = RootedDecomposition {
        parent: vec![0; 2 * t + 1],
        root: 0,
        alpha,
        beta,
    };
    Ok((g, d))
}

/// `K_t` with every edge replaced by a path through `s` new vertices.
///
/// The original clique vertices keep the indices `0..t`.
pub fn subdivided_clique(t: usize, s: usize) -> Graph {
    let mut g = Graph::new(t);
    for u in 0..t {
        for v in u + 1..t {
            let mut previous = u;
            for _ in 0..s {
                let w = g.add_vertex();
                g.add_edge(previous, w).expect("fresh vertex");
                previous = w;
            }
            g.add_edge(previous, v).expect("distinct endpoints");
        }
    }
    g
}

/// Erdős–Rényi graph `G(n, p)` from a seeded generator.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("distinct endpoints");
            }
        }
    }
    g
}

/// Random graph whose first `apex` vertices form an odd cycle transversal, with the matching one-bag decomposition.
///
/// The remaining vertices get a random two-colouring and only bichromatic edges among them.
pub fn planted_oct(n: usize, p: f64, apex: usize, seed: u64) -> Result<(Graph, RootedDecomposition, VertexSet)> {
    if apex > n {
        return Err(Error::Precondition(format!(
            "cannot plant {apex} apex vertices in {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let allowed = u < apex || side[u] != side[v];
            if allowed && rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    let planted: VertexSet = (0..apex).collect();
    let d = from_oct(&g, &planted)?;
    Ok((g, d, planted))
}

/// Shape parameters for [`random_decomposed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomShape {
    pub vertices: usize,
    pub max_width: usize,
    pub edge_probability: f64,
    /// Largest number of new vertices a node introduces.
    pub max_new_per_node: usize,
    /// Chance that a new or inherited vertex joins the apex set while there is room.
    pub apex_probability: f64,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            vertices: 10,
            max_width: 2,
            edge_probability: 0.6,
            max_new_per_node: 3,
            apex_probability: 0.4,
        }
    }
}

/// A random graph built together with a valid bipartite tree decomposition of width at most `max_width`.
///
/// Nodes are attached to random earlier nodes. A child inherits some apex
/// vertices of its parent and at most one free one, and introduces new
/// vertices. Edges are drawn inside bags, avoiding monochromatic pairs of a
/// random two-colouring of each free part.
pub fn random_decomposed<R: Rng>(rng: &mut R, shape: RandomShape) -> (Graph, RootedDecomposition) {
    let n = shape.vertices;
    let fresh_limit = shape.max_new_per_node.max(1);
    let mut next: Vertex = 0;
    let mut alpha: Vec<VertexSet> = Vec::new();
    let mut beta: Vec<VertexSet> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    while next < n || alpha.is_empty() {
        let mut node_alpha = VertexSet::new();
        let mut node_beta = VertexSet::new();
        if let Some(p) = (!alpha.is_empty()).then(|| rng.gen_range(0..alpha.len())) {
            parent.push(p);
            for &a in &alpha[p] {
                if rng.gen_bool(0.5) {
                    if node_alpha.len() < shape.max_width && rng.gen_bool(shape.apex_probability.max(0.5)) {
                        node_alpha.insert(a);
                    } else if node_beta.is_empty() {
                        node_beta.insert(a);
                    } else if node_alpha.len() < shape.max_width {
                        node_alpha.insert(a);
                    }
                }
            }
            let free: Vec<Vertex> = beta[p].iter().copied().collect();
            if let (Some(&b), true) = (free.choose(rng), rng.gen_bool(0.6)) {
                if node_beta.is_empty() && rng.gen_bool(0.7) {
                    node_beta.insert(b);
                } else if node_alpha.len() < shape.max_width {
                    node_alpha.insert(b);
                }
            }
        } else {
            parent.push(0);
        }
        let fresh = rng.gen_range(1..=fresh_limit).min(n.saturating_sub(next));
        for _ in 0..fresh {
            if node_alpha.len() < shape.max_width && rng.gen_bool(shape.apex_probability) {
                node_alpha.insert(next);
            } else {
                node_beta.insert(next);
            }
            next += 1;
        }
        alpha.push(node_alpha);
        beta.push(node_beta);
    }
    let d = RootedDecomposition {
        parent,
        root: 0,
        alpha,
        beta,
    };
    let mut colour: Vec<std::collections::BTreeMap<Vertex, bool>> = Vec::with_capacity(d.node_count());
    for t in 0..d.node_count() {
        colour.push(d.beta[t].iter().map(|&v| (v, rng.gen_bool(0.5))).collect());
    }
    let mut g = Graph::new(next);
    let mut decided = std::collections::BTreeSet::new();
    for t in 0..d.node_count() {
        let bag: Vec<Vertex> = d.bag(t).into_iter().collect();
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                if !decided.insert((u, v)) {
                    continue;
                }
                let monochromatic = (0..d.node_count()).any(|s| match (colour[s].get(&u), colour[s].get(&v)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                });
                if !monochromatic && rng.gen_bool(shape.edge_probability) {
                    g.add_edge(u, v).expect("distinct endpoints");
                }
            }
        }
    }
    debug_assert!(
        validate_bipartite(&g, &d).is_empty(),
        "generated decomposition is invalid"
    );
    (g, d)
}

/// Convenience wrapper seeding [`random_decomposed`] from a number.
pub fn random_decomposed_seeded(seed: u64, shape: RandomShape) -> (Graph, RootedDecomposition) {
    random_decomposed(&mut ChaCha8Rng::seed_from_u64(seed), shape)
}
