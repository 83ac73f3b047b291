//! Random decomposed instances for comparing the dynamic program with exhaustive search.

use biptw::decomposition::RootedDecomposition;
use biptw::generators::{random_decomposed_seeded, RandomShape};
use biptw::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Between 5 and 12 vertices and width at most 4.
pub fn shape(seed: u64) -> RandomShape {
    RandomShape {
        vertices: 5 + (seed % 8) as usize,
        max_width: 1 + (seed % 4) as usize,
        edge_probability: 0.6,
        max_new_per_node: 3,
        apex_probability: 0.5,
    }
}

pub fn add_weights(g: &mut Graph, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for v in g.vertices() {
        g.set_vertex_weight(v, rng.gen_range(1..=5));
    }
    let edges: Vec<_> = g.edges().collect();
    for (u, v) in edges {
        g.set_edge_weight(u, v, rng.gen_range(1..=5)).unwrap();
    }
}

/// The instance for `seed`, with random weights from 1 to 5 when `weighted`.
pub fn instance(seed: u64, weighted: bool) -> (Graph, RootedDecomposition) {
    let (mut g, d) = random_decomposed_seeded(seed, shape(seed));
    if weighted {
        add_weights(&mut g, seed);
    }
    (g, d)
}
