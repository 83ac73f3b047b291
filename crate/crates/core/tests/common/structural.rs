//! Exhaustive and randomized checks of the odd-minor machinery.

use biptw::canon::{canonical_form, isomorphic};
use biptw::decomposition::{push_odd_minor, validate_bipartite};
use biptw::generators::{random_decomposed, RandomShape};
use biptw::oracles::odd_minor::{contract_cut, find_odd_expansion};
use biptw::oracles::{all_graphs, is_odd_minor_contraction, is_odd_minor_expansion, odd_minor_closure};
use biptw::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One representative of every isomorphism class on 1 to `n` vertices.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(all_graphs).collect()
}

/// Compares both odd-minor checkers and the closure on every pattern up to `max_pattern`
/// vertices and every host up to `max_host` vertices; returns `(pairs, positive pairs)`.
pub fn checker_agreement(max_pattern: usize, max_host: usize) -> (usize, usize) {
    let patterns = graphs_up_to(max_pattern);
    let hosts = graphs_up_to(max_host);
    let mut positive = 0;
    let mut pairs = 0;
    for g in &hosts {
        let closure = odd_minor_closure(g).unwrap();
        for h in &patterns {
            let by_contraction = is_odd_minor_contraction(h, g).unwrap();
            let by_expansion = is_odd_minor_expansion(h, g).unwrap();
            assert_eq!(by_contraction, by_expansion, "h = {h:?}, g = {g:?}");
            assert_eq!(
                closure.contains(&canonical_form(h)),
                by_contraction,
                "h = {h:?}, g = {g:?}"
            );
            if let Some(expansion) = find_odd_expansion(h, g).unwrap() {
                assert!(expansion.is_valid(h, g));
            }
            positive += usize::from(by_contraction);
            pairs += 1;
        }
    }
    (pairs, positive)
}

/// Checks that every odd-minor of every bipartite graph up to `n` vertices is bipartite; returns the hosts checked.
pub fn bipartite_closures(n: usize) -> usize {
    let mut checked = 0;
    for g in graphs_up_to(n).iter().filter(|g| g.is_bipartite()) {
        for form in odd_minor_closure(g).unwrap() {
            assert!(form.to_graph().is_bipartite(), "{g:?} has a non-bipartite odd-minor");
        }
        checked += 1;
    }
    checked
}

/// Checks that a graph is bipartite exactly when it has no triangle odd-minor; returns the non-bipartite count.
pub fn triangle_characterization(n: usize) -> usize {
    let triangle = Graph::complete(3);
    let mut non_bipartite = 0;
    for g in graphs_up_to(n) {
        let has_triangle = is_odd_minor_contraction(&triangle, &g).unwrap();
        assert_eq!(has_triangle, !g.is_bipartite(), "{g:?}");
        assert_eq!(is_odd_minor_expansion(&triangle, &g).unwrap(), has_triangle, "{g:?}");
        non_bipartite += usize::from(has_triangle);
    }
    non_bipartite
}

/// Applies random odd-minor operations and checks the transformed decompositions; returns how many got narrower.
pub fn push_odd_minor_checks(instances: u64) -> usize {
    let mut shrunk = 0;
    for seed in 0..instances {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = RandomShape {
            vertices: 5 + (seed % 10) as usize,
            max_width: 1 + (seed % 4) as usize,
            apex_probability: 0.5,
            ..RandomShape::default()
        };
        let (g, d) = random_decomposed(&mut rng, shape);
        let mut side_a = VertexSet::new();
        let mut side_b = VertexSet::new();
        for v in g.vertices() {
            match rng.gen_range(0..10) {
                0 => {}
                1..=5 => {
                    side_a.insert(v);
                }
                _ => {
                    side_b.insert(v);
                }
            }
        }
        let mut kept = Graph::new(g.vertex_count());
        for (u, v) in g.edges() {
            let alive = (side_a.contains(&u) || side_b.contains(&u)) && (side_a.contains(&v) || side_b.contains(&v));
            if alive && rng.gen_bool(0.8) {
                kept.add_edge(u, v).unwrap();
            }
        }
        let (h, dh) = push_odd_minor(&g, &d, &kept, &side_a, &side_b).unwrap();
        assert_eq!(validate_bipartite(&h, &dh), Vec::new(), "seed {seed}");
        assert!(dh.width() <= d.width(), "seed {seed}");
        shrunk += usize::from(dh.width() < d.width());

        let survivors: VertexSet = side_a.union(&side_b).copied().collect();
        let (restricted, index) = kept.induced_subgraph(&survivors).unwrap();
        let mut side = vec![false; restricted.vertex_count()];
        for (&v, &i) in &index {
            side[i] = side_a.contains(&v);
        }
        assert!(isomorphic(&h, &contract_cut(&restricted, &side)), "seed {seed}");
    }
    shrunk
}
