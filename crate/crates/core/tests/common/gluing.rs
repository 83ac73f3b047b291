//! Checks of the gluing identity `whole = left + right - correction`.

use std::collections::BTreeMap;

use biptw::dp::ProblemPlugin;
use biptw::oracles::hat_p_bruteforce;
use biptw::partition::{enumerate_partitions, AnnotatedPartition};
use biptw::problems::{kt, oct};
use biptw::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{glue, random_pair, GluedPair, PairShape};

/// The term both operands count: forced weight on the shared boundary, or crossing weight inside it for cuts.
pub fn shared_correction(problem: &str, pair: &GluedPair, annotation: &AnnotatedPartition) -> i64 {
    let shared = pair.shared();
    let g = &pair.glued;
    match problem {
        "vc" => g.vertex_set_weight(annotation.part(kt::FORCED).intersection(&shared)) as i64,
        "kt" => annotation.part(kt::FORCED).intersection(&shared).count() as i64,
        "oct" => annotation.part(oct::DELETED).intersection(&shared).count() as i64,
        "cut" => g
            .edges()
            .filter(|&(u, v)| shared.contains(&u) && shared.contains(&v))
            .filter(|&(u, v)| {
                let (a, b) = (annotation.part_of(u), annotation.part_of(v));
                a.is_some() && b.is_some() && a != b
            })
            .map(|(u, v)| g.edge_weight(u, v) as i64)
            .sum(),
        other => unreachable!("unknown problem {other}"),
    }
}

/// Annotates up to two random interior vertices on top of `base`.
pub fn with_interior_extras<R: Rng>(rng: &mut R, pair: &GluedPair, base: &AnnotatedPartition) -> AnnotatedPartition {
    let mut annotation = base.clone();
    let interior: Vec<_> = pair.glued.vertices().filter(|v| !annotation.contains(*v)).collect();
    let extras = rng.gen_range(0..=2);
    for &v in interior.choose_multiple(rng, extras) {
        annotation.assign(v, rng.gen_range(0..base.part_count()));
    }
    annotation
}

#[derive(Default, Debug)]
pub struct Tally {
    pub checks: usize,
    pub infinite: usize,
}

pub fn check_identity(
    problem: &str,
    plugin: &dyn ProblemPlugin,
    pair: &GluedPair,
    annotation: &AnnotatedPartition,
    tally: &mut Tally,
) {
    let whole = hat_p_bruteforce(plugin, &pair.glued, annotation).unwrap().0;
    let left = hat_p_bruteforce(plugin, &pair.left.graph, &annotation.restrict(&pair.left_vertices()))
        .unwrap()
        .0;
    let right = hat_p_bruteforce(plugin, &pair.right.graph, &annotation.map_vertices(&pair.to_right()))
        .unwrap()
        .0;
    let correction = shared_correction(problem, pair, annotation);
    let (boundary_graph, _) = pair.glued.induced_subgraph(&pair.shared()).unwrap();
    assert_eq!(
        plugin.overlap_value(&boundary_graph, &annotation.restrict(&pair.shared())),
        correction
    );
    assert_eq!(
        whole,
        left + right - correction,
        "{problem}: F = {:?}, G = {:?}, annotation {annotation:?}",
        pair.left,
        pair.right
    );
    tally.checks += 1;
    tally.infinite += usize::from(!whole.is_finite());
}

/// Checks the identity for every shared-boundary annotation of `pairs` random pairs.
pub fn run_suite(problem: &str, plugin: &dyn ProblemPlugin, shape: PairShape, seed_base: u64, pairs: u64) -> Tally {
    let mut tally = Tally::default();
    for seed in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_base + seed);
        let pair = random_pair(&mut rng, shape);
        for base in enumerate_partitions(&pair.shared(), plugin.arity()) {
            let annotation = with_interior_extras(&mut rng, &pair, &base);
            check_identity(problem, plugin, &pair, &annotation, &mut tally);
        }
    }
    tally
}

/// `F = H - u` and `G = H - w` glued along `V(H) - {u, w}` for a non-adjacent pair `u, w`.
pub fn non_clique_split(h: &Graph) -> (GluedPair, AnnotatedPartition) {
    let (u, w) = h
        .vertices()
        .flat_map(|u| h.vertices().map(move |w| (u, w)))
        .find(|&(u, w)| u < w && !h.has_edge(u, w))
        .expect("pattern is not a clique");
    let middle: Vec<_> = h.vertices().filter(|&x| x != u && x != w).collect();
    let order = |last| {
        let mut keep: Vec<_> = middle.clone();
        keep.push(last);
        let set: VertexSet = keep.iter().copied().collect();
        let (sub, index) = h.induced_subgraph(&set).unwrap();
        let mut reordered = Graph::new(keep.len());
        let position: Vec<_> = keep.iter().map(|v| index[v]).collect();
        let back: BTreeMap<_, _> = position.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for (a, b) in sub.edges() {
            reordered.add_edge(back[&a], back[&b]).unwrap();
        }
        reordered
    };
    let pair = glue(order(w), order(u), middle.len());
    let kept = AnnotatedPartition::from_assignment(2, (0..middle.len()).map(|v| (v, kt::FORBIDDEN)));
    (pair, kept)
}
