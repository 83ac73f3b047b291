//! Checks that replacing one side of a gluing by a small gadget preserves annotated optima.

use biptw::dp::ProblemPlugin;
use biptw::oracles::hat_p_bruteforce;
use biptw::partition::{enumerate_partitions, AnnotatedPartition};
use biptw::problems::{cut, kt, oct, KtCover, MaxCut, OddCycleTransversal, VertexCover};
use biptw::{ExtInt, Graph, Vertex, VertexSet, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{glue, random_pair, GluedPair, PairShape};

pub fn optimum(plugin: &dyn ProblemPlugin, g: &Graph, annotation: &AnnotatedPartition) -> ExtInt {
    hat_p_bruteforce(plugin, g, annotation).unwrap().0
}

pub fn on_left(pair: &GluedPair, annotation: &AnnotatedPartition) -> AnnotatedPartition {
    annotation.restrict(&pair.left_vertices())
}

pub fn on_right(pair: &GluedPair, annotation: &AnnotatedPartition) -> AnnotatedPartition {
    annotation.map_vertices(&pair.to_right())
}

pub fn with(annotation: &AnnotatedPartition, v: Vertex, part: usize) -> AnnotatedPartition {
    let mut extended = annotation.clone();
    extended.assign(v, part);
    extended
}

/// Every annotation of the shared boundary minus `v`, each with up to two random extra vertices annotated.
pub fn annotations<R: Rng>(rng: &mut R, pair: &GluedPair, v: Vertex, p: usize) -> Vec<AnnotatedPartition> {
    let mut rest = pair.shared();
    rest.remove(&v);
    enumerate_partitions(&rest, p)
        .map(|mut annotation| {
            let open: Vec<Vertex> = pair
                .glued
                .vertices()
                .filter(|&x| x != v && !annotation.contains(x))
                .collect();
            let extras = rng.gen_range(0..=2);
            for &x in open.choose_multiple(rng, extras) {
                annotation.assign(x, rng.gen_range(0..p));
            }
            annotation
        })
        .collect()
}

pub fn pick_shared<R: Rng>(rng: &mut R, pair: &GluedPair) -> Vertex {
    rng.gen_range(0..pair.boundary)
}

/// Replaces `G` by a pendant vertex on `v` with weighted endpoints; returns `(checks, infinite)`.
pub fn vertex_cover_pendant_gadget(pairs: u64) -> (usize, usize) {
    let shape = PairShape {
        min_boundary: 1,
        max_glued: 12,
        vertex_weights: true,
        ..PairShape::default()
    };
    let mut infinite = 0;
    let mut checks = 0;
    for seed in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, shape);
        let v = pick_shared(&mut rng, &pair);
        for annotation in annotations(&mut rng, &pair, v, 2) {
            let whole = optimum(&VertexCover, &pair.glued, &annotation);
            let plus = optimum(
                &VertexCover,
                &pair.right.graph,
                &on_right(&pair, &with(&annotation, v, kt::FORCED)),
            );
            let minus = optimum(
                &VertexCover,
                &pair.right.graph,
                &on_right(&pair, &with(&annotation, v, kt::FORBIDDEN)),
            );
            let shared_forced: VertexSet = annotation
                .part(kt::FORCED)
                .intersection(&pair.shared())
                .copied()
                .collect();
            let overlap = pair.glued.vertex_set_weight(&shared_forced) as i64;
            checks += 1;
            let Some(plus) = plus.finite() else {
                assert_eq!(whole, ExtInt::PosInf);
                infinite += 1;
                continue;
            };
            let big: Weight = pair.glued.total_vertex_weight() + plus as Weight + 1;
            let mut gadget = pair.left.graph.clone();
            let pendant = gadget.add_vertex();
            gadget.add_edge(v, pendant).unwrap();
            gadget.set_vertex_weight(v, (plus - overlap) as Weight);
            let pendant_weight = minus.finite().map_or(big, |minus| (minus - overlap) as Weight);
            gadget.set_vertex_weight(pendant, pendant_weight);
            let reduced = optimum(&VertexCover, &gadget, &on_left(&pair, &annotation));
            let reduced = match reduced.finite() {
                Some(value) if value >= big as i64 => ExtInt::PosInf,
                _ => reduced,
            };
            assert_eq!(whole, reduced, "seed {seed}, v {v}, annotation {annotation:?}");
        }
    }
    (checks, infinite)
}

/// One forced-or-forbidden step for `K_t`-cover; returns how often each branch was taken.
pub fn clique_step(t: usize, seed_base: u64, edge_probability: f64, pairs: u64) -> [usize; 2] {
    let plugin = KtCover::new(t).unwrap();
    let shape = PairShape {
        min_boundary: 1,
        max_glued: 12,
        edge_probability,
        ..PairShape::default()
    };
    let mut branches = [0; 2];
    for seed in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_base + seed);
        let pair = random_pair(&mut rng, shape);
        let v = pick_shared(&mut rng, &pair);
        for annotation in annotations(&mut rng, &pair, v, 2) {
            let whole = optimum(&plugin, &pair.glued, &annotation);
            let forced = with(&annotation, v, kt::FORCED);
            let plus = optimum(&plugin, &pair.right.graph, &on_right(&pair, &forced));
            let minus = optimum(
                &plugin,
                &pair.right.graph,
                &on_right(&pair, &with(&annotation, v, kt::FORBIDDEN)),
            );
            assert!(plus <= minus + 1, "a single extra deletion always suffices");
            let overlap = annotation.part(kt::FORCED).intersection(&pair.shared()).count() as i64;
            let reduced = if plus <= minus {
                branches[0] += 1;
                plus + optimum(&plugin, &pair.left.graph, &on_left(&pair, &forced)) - overlap - 1
            } else {
                branches[1] += 1;
                minus + optimum(&plugin, &pair.left.graph, &on_left(&pair, &annotation)) - overlap
            };
            assert_eq!(whole, reduced, "t {t}, seed {seed}, v {v}, annotation {annotation:?}");
        }
    }
    branches
}

/// Places one random unannotated interior vertex of `F` into `part` if `F` has no vertex there yet.
pub fn ensure_side<R: Rng>(
    rng: &mut R,
    pair: &GluedPair,
    annotation: &mut AnnotatedPartition,
    part: usize,
) -> Option<Vertex> {
    let left = pair.left_vertices();
    if let Some(&x) = annotation.part(part).intersection(&left).next() {
        return Some(x);
    }
    let open: Vec<Vertex> = pair
        .left_interior()
        .into_iter()
        .filter(|&x| !annotation.contains(x))
        .collect();
    let &x = open.choose(rng)?;
    annotation.assign(x, part);
    Some(x)
}

/// The four-way step for odd cycle transversal; returns how often each branch was taken.
pub fn odd_cycle_transversal_step(pairs: u64) -> [usize; 4] {
    let shape = PairShape {
        min_boundary: 1,
        max_glued: 10,
        edge_probability: 0.55,
        ..PairShape::default()
    };
    let plugin = OddCycleTransversal;
    let mut branches = [0; 4];
    let mut done = 0;
    let mut seed = 3_000;
    while done < pairs {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, shape);
        if pair.left_interior().len() < 2 {
            continue;
        }
        done += 1;
        let v = pick_shared(&mut rng, &pair);
        for mut annotation in annotations(&mut rng, &pair, v, 3) {
            let Some(first) = ensure_side(&mut rng, &pair, &mut annotation, oct::FIRST_SIDE) else {
                continue;
            };
            let Some(second) = ensure_side(&mut rng, &pair, &mut annotation, oct::SECOND_SIDE) else {
                continue;
            };
            let whole = optimum(&plugin, &pair.glued, &annotation);
            let right = |part| {
                optimum(
                    &plugin,
                    &pair.right.graph,
                    &on_right(&pair, &with(&annotation, v, part)),
                )
            };
            let (deleted, one, two) = (right(oct::DELETED), right(oct::FIRST_SIDE), right(oct::SECOND_SIDE));
            assert!(deleted <= one + 1 && deleted <= two + 1);
            let overlap = annotation.part(oct::DELETED).intersection(&pair.shared()).count() as i64;
            let left = &pair.left.graph;
            let pinned = |neighbour: Vertex| {
                let mut g = left.clone();
                g.add_edge(v, neighbour).unwrap();
                optimum(&plugin, &g, &on_left(&pair, &annotation))
            };
            let reduced = if deleted <= one && deleted <= two {
                branches[0] += 1;
                deleted + optimum(&plugin, left, &on_left(&pair, &with(&annotation, v, oct::DELETED))) - overlap - 1
            } else if one == two && one < deleted {
                branches[1] += 1;
                one + optimum(&plugin, left, &on_left(&pair, &annotation)) - overlap
            } else if one < deleted && one < two {
                branches[2] += 1;
                one + pinned(second) - overlap
            } else {
                branches[3] += 1;
                two + pinned(first) - overlap
            };
            assert_eq!(whole, reduced, "seed {seed}, v {v}, annotation {annotation:?}");
        }
    }
    branches
}

pub fn crossing_on(g: &Graph, within: &VertexSet, annotation: &AnnotatedPartition) -> i64 {
    g.edges()
        .filter(|&(a, b)| within.contains(&a) && within.contains(&b))
        .filter(|&(a, b)| matches!((annotation.part_of(a), annotation.part_of(b)), (Some(x), Some(y)) if x != y))
        .map(|(a, b)| g.edge_weight(a, b) as i64)
        .sum()
}

/// Terminal-weight gadget for max cut; returns `(checks, checks where the uncorrected weights agree)`.
pub fn max_cut_terminal_gadget(pairs: u64) -> (usize, usize) {
    let shape = PairShape {
        min_boundary: 1,
        max_glued: 11,
        edge_weights: true,
        ..PairShape::default()
    };
    let mut checks = 0;
    let mut literal_checks = 0;
    for seed in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(5_000 + seed);
        let base = random_pair(&mut rng, shape);
        let v = pick_shared(&mut rng, &base);
        let mut left = base.left.graph.clone();
        let terminals = [left.add_vertex(), left.add_vertex()];
        for &terminal in &terminals {
            left.add_edge(v, terminal).unwrap();
            left.set_edge_weight(v, terminal, 0).unwrap();
            for x in 0..base.left.graph.vertex_count() {
                if x != v && rng.gen_bool(0.3) {
                    left.add_edge(x, terminal).unwrap();
                    left.set_edge_weight(x, terminal, rng.gen_range(0..=5)).unwrap();
                }
            }
        }
        let pair = glue(left, base.right.graph.clone(), base.boundary);
        let shared = pair.shared();
        for mut annotation in annotations(&mut rng, &pair, v, 2) {
            annotation.assign(terminals[0], cut::FIRST_SIDE);
            annotation.assign(terminals[1], cut::SECOND_SIDE);
            let whole = optimum(&MaxCut, &pair.glued, &annotation);
            let side = |part| with(&annotation, v, part);
            let gain = |part| {
                optimum(&MaxCut, &pair.right.graph, &on_right(&pair, &side(part)))
                    .finite()
                    .unwrap()
            };
            let overlap = |part| crossing_on(&pair.glued, &shared, &side(part));
            let mut gadget = pair.left.graph.clone();
            let to_first = gain(cut::SECOND_SIDE) - overlap(cut::SECOND_SIDE);
            let to_second = gain(cut::FIRST_SIDE) - overlap(cut::FIRST_SIDE);
            gadget.set_edge_weight(v, terminals[0], to_first as Weight).unwrap();
            gadget.set_edge_weight(v, terminals[1], to_second as Weight).unwrap();
            let reduced = optimum(&MaxCut, &gadget, &on_left(&pair, &annotation));
            assert_eq!(whole, reduced, "seed {seed}, v {v}, annotation {annotation:?}");
            checks += 1;
            let plain_overlap = crossing_on(&pair.glued, &shared, &annotation);
            if overlap(cut::FIRST_SIDE) == plain_overlap && overlap(cut::SECOND_SIDE) == plain_overlap {
                literal_checks += 1;
            }
        }
    }
    (checks, literal_checks)
}
