use biptw::decomposition::{from_oct, validate_bipartite, RootedDecomposition};
use biptw::dp::{run_dp, solve, ProblemPlugin};
use biptw::generators::no_nice;
use biptw::oracles::{hat_p_bruteforce, oct_bruteforce};
use biptw::partition::AnnotatedPartition;
use biptw::problems::{KtCover, MaxCut, OddCycleTransversal, VertexCover};
use biptw::{ExtInt, Graph, VertexSet};

fn certified(g: &Graph, d: &RootedDecomposition, plugin: &dyn ProblemPlugin) -> ExtInt {
    let (value, certificate) = solve(g, d, plugin).unwrap();
    let certificate = certificate.expect("feasible instance");
    assert_eq!(plugin.evaluate(g, &certificate), value);
    value
}

#[test]
fn odd_cycle_transversal_of_cliques() {
    for t in 3..=6 {
        let k = Graph::complete(t);
        let transversal = oct_bruteforce(&k).unwrap();
        assert_eq!(transversal.len(), t - 2);
        let d = from_oct(&k, &transversal).unwrap();
        assert_eq!(d.width(), t - 2);
        assert_eq!(certified(&k, &d, &OddCycleTransversal), ExtInt::from((t - 2) as i64));
    }
}

#[test]
fn no_nice_family_has_width_one() {
    for t in 1..=5 {
        let (g, d) = no_nice(t).unwrap();
        assert_eq!(g.vertex_count(), 2 * t + 4 * t);
        assert_eq!(d.width(), 1);
        assert_eq!(validate_bipartite(&g, &d), Vec::new());
        assert_eq!(certified(&g, &d, &OddCycleTransversal), ExtInt::from((2 * t) as i64));
    }
}

#[test]
fn small_dp_examples() {
    let c4 = Graph::cycle(4);
    let single = from_oct(&c4, &VertexSet::new()).unwrap();
    assert_eq!(single.node_count(), 1);
    assert_eq!(certified(&c4, &single, &VertexCover), ExtInt::from(2i64));

    let edge = Graph::complete(2);
    let (value, witness) = solve(&edge, &from_oct(&edge, &VertexSet::new()).unwrap(), &VertexCover).unwrap();
    assert_eq!(value, ExtInt::from(1i64));
    assert_eq!(witness.unwrap().part(1).len(), 1);

    let c5 = Graph::cycle(5);
    let d = from_oct(&c5, &VertexSet::from([0])).unwrap();
    let (value, witness) = solve(&c5, &d, &OddCycleTransversal).unwrap();
    assert_eq!(value, ExtInt::from(1i64));
    let deleted = witness.unwrap().part(0).clone();
    assert!(c5.without(&deleted).0.is_bipartite());
    assert_eq!(certified(&c5, &d, &MaxCut), ExtInt::from(4i64));
    assert_eq!(run_dp(&c5, &d, &KtCover::new(3).unwrap()).unwrap().value, ExtInt::ZERO);
}

#[test]
fn brute_force_examples() {
    let unannotated = |p| AnnotatedPartition::empty(p);
    assert_eq!(
        hat_p_bruteforce(&VertexCover, &Graph::complete(2), &unannotated(2))
            .unwrap()
            .0,
        ExtInt::from(1i64)
    );
    assert_eq!(
        hat_p_bruteforce(&OddCycleTransversal, &Graph::complete(5), &unannotated(3))
            .unwrap()
            .0,
        ExtInt::from(3i64)
    );
    assert_eq!(
        hat_p_bruteforce(&MaxCut, &Graph::cycle(5), &unannotated(2)).unwrap().0,
        ExtInt::from(4i64)
    );
    assert_eq!(
        oct_bruteforce(&Graph::complete_bipartite(3, 3)).unwrap(),
        VertexSet::new()
    );
    assert_eq!(oct_bruteforce(&Graph::cycle(5)).unwrap().len(), 1);
}
