//! Packing instances and the comparison of the packing solver with the exhaustive oracle.

use biptw::decomposition::{validate_bipartite, RootedDecomposition};
use biptw::generators::{random_decomposed, RandomShape};
use biptw::oracles::{max_packing_bruteforce, PackingMode};
use biptw::packing::{is_packing, solve_packing_xp, solve_packing_xp_with};
use biptw::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MODES: [PackingMode; 3] = [PackingMode::Subgraph, PackingMode::Induced, PackingMode::Scattered];

/// Largest host graph used by the packing checks.
pub const MAX_VERTICES: usize = 12;

fn shape(seed: u64) -> RandomShape {
    RandomShape {
        vertices: 6 + (seed % 7) as usize,
        max_width: 1 + (seed % 2) as usize,
        edge_probability: 0.7,
        max_new_per_node: 3,
        apex_probability: 0.5,
    }
}

/// Hangs `count` pentagons off random bags: one apex vertex closes a new free 4-path, with optional chords to a second apex.
///
/// The second apex is never a second free vertex of the host bag.
pub fn plant_pentagons<R: Rng>(
    rng: &mut R,
    g: &mut Graph,
    d: &mut RootedDecomposition,
    count: usize,
    max_width: usize,
) {
    for _ in 0..count {
        let host = rng.gen_range(0..d.node_count());
        let bag: Vec<usize> = d.bag(host).into_iter().collect();
        let Some(&anchor) = bag.get(rng.gen_range(0..bag.len().max(1))) else {
            continue;
        };
        let path: Vec<usize> = (0..4).map(|_| g.add_vertex()).collect();
        for pair in path.windows(2) {
            g.add_edge(pair[0], pair[1]).unwrap();
        }
        g.add_edge(anchor, path[0]).unwrap();
        g.add_edge(anchor, path[3]).unwrap();
        let mut alpha: VertexSet = [anchor].into_iter().collect();
        let host_free = &d.beta[host];
        let second = bag
            .iter()
            .copied()
            .find(|&v| v != anchor && !(host_free.contains(&v) && host_free.contains(&anchor)));
        if let (Some(other), true) = (second, max_width > 1 && rng.gen_bool(0.5)) {
            alpha.insert(other);
            for &x in &path {
                if rng.gen_bool(0.3) {
                    g.add_edge(other, x).unwrap();
                }
            }
        }
        d.parent.push(host);
        d.alpha.push(alpha);
        d.beta.push(path.into_iter().collect());
    }
}

/// A random instance on at most [`MAX_VERTICES`] vertices; `planted` makes room for one or two pentagons.
pub fn instance(seed: u64, planted: bool) -> (Graph, RootedDecomposition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = shape(seed);
    let count = if planted { rng.gen_range(1..=2) } else { 0 };
    shape.vertices = shape.vertices.min(MAX_VERTICES - 4 * count).max(2);
    let (mut g, mut d) = random_decomposed(&mut rng, shape);
    if planted {
        plant_pentagons(&mut rng, &mut g, &mut d, count, shape.max_width);
        assert_eq!(validate_bipartite(&g, &d), Vec::new(), "seed {seed}");
    }
    (g, d)
}

/// Compares the solver with and without arbitration against the oracle; returns per mode the
/// number of instances with at least one and with at least two copies.
pub fn check_pattern(h: &Graph, instances: u64) -> Vec<(PackingMode, usize, usize)> {
    let mut counts = Vec::new();
    for mode in MODES {
        let (mut positive, mut several) = (0, 0);
        for seed in 0..instances {
            let (g, d) = instance(seed, h.vertex_count() == 5 && seed % 2 == 0);
            assert!(g.vertex_count() <= MAX_VERTICES && d.width() <= 2, "seed {seed}");
            let (expected, _) = max_packing_bruteforce(&g, h, mode).unwrap();
            let solution = solve_packing_xp(&g, &d, h, mode).unwrap_or_else(|e| panic!("{mode} seed {seed}: {e}"));
            assert_eq!(solution.size, expected, "{mode} seed {seed}");
            assert!(is_packing(&g, h, mode, &solution.copies));
            let exhaustive = solve_packing_xp_with(&g, &d, h, mode, false).unwrap();
            assert_eq!(exhaustive.size, expected, "{mode} seed {seed} without arbitration");
            positive += usize::from(expected > 0);
            several += usize::from(expected > 1);
        }
        counts.push((mode, positive, several));
    }
    counts
}
