//! Annotated instances whose unannotated part is bipartite, for checking the base solvers.

use biptw::dp::ProblemPlugin;
use biptw::oracles::hat_p_bruteforce;
use biptw::partition::AnnotatedPartition;
use biptw::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
pub struct InstanceShape {
    pub max_vertices: usize,
    pub arity: usize,
    pub edge_probability: f64,
    pub vertex_weights: bool,
    pub edge_weights: bool,
}

/// A random graph and annotation whose unannotated part is bipartite.
pub fn instance(seed: u64, shape: InstanceShape) -> (Graph, AnnotatedPartition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=shape.max_vertices);
    let annotated_share = rng.gen_range(0.0..0.6);
    let mut annotation = AnnotatedPartition::empty(shape.arity);
    let mut colour = vec![false; n];
    for (v, side) in colour.iter_mut().enumerate() {
        if rng.gen_bool(annotated_share) {
            annotation.assign(v, rng.gen_range(0..shape.arity));
        } else {
            *side = rng.gen_bool(0.5);
        }
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let free_pair = !annotation.contains(u) && !annotation.contains(v);
            if (!free_pair || colour[u] != colour[v]) && rng.gen_bool(shape.edge_probability) {
                g.add_edge(u, v).unwrap();
                if shape.edge_weights {
                    g.set_edge_weight(u, v, rng.gen_range(0..=9)).unwrap();
                }
            }
        }
    }
    if shape.vertex_weights {
        for v in 0..n {
            g.set_vertex_weight(v, rng.gen_range(0..=9));
        }
    }
    (g, annotation)
}

#[derive(Default, Debug)]
pub struct Tally {
    pub finite: usize,
    pub infinite: usize,
}

/// Compares the base solver with exhaustive search on `instances` random annotated instances.
pub fn compare(plugin: &dyn ProblemPlugin, shape: InstanceShape, seed_base: u64, instances: u64) -> Tally {
    let mut tally = Tally::default();
    for seed in 0..instances {
        let (g, annotation) = instance(seed_base + seed, shape);
        let (expected, _) = hat_p_bruteforce(plugin, &g, &annotation).unwrap();
        let (value, witness) = plugin.solve_base(&g, &annotation).unwrap();
        assert_eq!(value, expected, "{} seed {seed}: {g:?} {annotation:?}", plugin.name());
        match witness {
            Some(witness) => {
                assert!(annotation.is_extended_by(&witness));
                assert_eq!(witness.domain(), g.vertex_set());
                assert_eq!(plugin.evaluate(&g, &witness), value);
                tally.finite += 1;
            }
            None => {
                assert!(!value.is_finite());
                tally.infinite += 1;
            }
        }
    }
    tally
}
