//! Timed batches of fixed-size instances.

use std::time::{Duration, Instant};

use biptw::decomposition::RootedDecomposition;
use biptw::dp::{run_dp, ProblemPlugin};
use biptw::generators::{random_decomposed_seeded, RandomShape};
use biptw::Graph;

pub const VERTICES: usize = 60;
pub const BATCH: u64 = 10;

/// Random instances on 60 vertices whose decomposition has exactly the given width.
pub fn batch(width: usize) -> Vec<(Graph, RootedDecomposition)> {
    let shape = RandomShape {
        vertices: VERTICES,
        max_width: width,
        edge_probability: 0.5,
        max_new_per_node: 4,
        apex_probability: 0.5,
    };
    (0..)
        .map(|seed| random_decomposed_seeded(seed, shape))
        .filter(|(_, d)| d.width() == width)
        .take(BATCH as usize)
        .collect()
}

/// Fastest of three timed passes over the batch.
pub fn time_batch(instances: &[(Graph, RootedDecomposition)], plugin: &dyn ProblemPlugin) -> Duration {
    (0..3)
        .map(|_| {
            let start = Instant::now();
            for (g, d) in instances {
                run_dp(g, d, plugin).unwrap();
            }
            start.elapsed()
        })
        .min()
        .unwrap()
}
