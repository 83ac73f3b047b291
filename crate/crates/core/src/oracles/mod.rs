//! Exhaustive reference solvers used to cross-check the fast algorithms.

use crate::dp::ProblemPlugin;
use crate::error::Result;
use crate::extint::ExtInt;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::guard;
use crate::partition::AnnotatedPartition;

pub mod enumerate;
pub mod odd_minor;
pub mod packing;

pub use enumerate::{all_graphs, subsets_of_size};
pub use odd_minor::{is_odd_minor_contraction, is_odd_minor_expansion, odd_minor_closure, OddExpansion};
pub use packing::{max_packing_bruteforce, PackingMode};

/// Default bound on the number of candidates an exhaustive search may visit.
pub const DEFAULT_SEARCH_LIMIT: u64 = 1 << 22;

/// Exhaustive annotated optimum: the best objective over all full partitions extending `annotation`.
///
/// The witness is `None` when every extension is infeasible.
pub fn hat_p_bruteforce(
    plugin: &dyn ProblemPlugin,
    g: &Graph,
    annotation: &AnnotatedPartition,
) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
    let p = plugin.arity();
    let free: Vec<Vertex> = g.vertices().filter(|&v| !annotation.contains(v)).collect();
    let total = (p as u64).checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    guard::check("number of extensions", total, DEFAULT_SEARCH_LIMIT)?;
    let direction = plugin.direction();
    let mut best = direction.infeasible();
    let mut witness = None;
    let mut current = annotation.clone();
    for code in 0..total {
        let mut rest = code as usize;
        for &v in &free {
            current.assign(v, rest % p);
            rest /= p;
        }
        let value = plugin.evaluate(g, &current);
        if value.is_finite() && (witness.is_none() || direction.improves(value, best)) {
            best = value;
            witness = Some(current.clone());
        }
    }
    Ok((best, witness))
}

/// Minimum odd cycle transversal by trying vertex subsets in order of increasing size.
pub fn oct_bruteforce(g: &Graph) -> Result<VertexSet> {
    let n = g.vertex_count();
    guard::check(
        "number of vertex subsets",
        1u64.checked_shl(n as u32).unwrap_or(u64::MAX),
        DEFAULT_SEARCH_LIMIT,
    )?;
    let all = g.vertex_set();
    for size in 0..=n {
        for candidate in subsets_of_size(&all, size) {
            if g.without(&candidate).0.is_bipartite() {
                return Ok(candidate);
            }
        }
    }
    Ok(all)
}

/// Exhaustive annotated optimum of `pattern`-subgraph cover: delete fewest vertices so no copy of `pattern` survives.
///
/// The annotation is `(forbidden, forced)`; the value is `+∞` when no deletion set extending it works.
pub fn subgraph_cover_bruteforce(g: &Graph, pattern: &Graph, annotation: &AnnotatedPartition) -> Result<ExtInt> {
    let forced = annotation.part(1);
    let free: Vec<Vertex> = g.vertices().filter(|&v| !annotation.contains(v)).collect();
    guard::check(
        "number of extensions",
        1u64.checked_shl(free.len() as u32).unwrap_or(u64::MAX),
        DEFAULT_SEARCH_LIMIT,
    )?;
    let mut best = ExtInt::PosInf;
    for mask in 0u64..(1 << free.len()) {
        let mut deleted = forced.clone();
        deleted.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        let value = ExtInt::from(deleted.len() as i64);
        if value < best && !contains_subgraph(&g.without(&deleted).0, pattern) {
            best = value;
        }
    }
    Ok(best)
}

/// Whether `pattern` is isomorphic to a (not necessarily induced) subgraph of `g`.
pub fn contains_subgraph(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.vertex_count();
    if k > g.vertex_count() {
        return false;
    }
    subsets_of_size(&g.vertex_set(), k).any(|set| {
        let (sub, _) = g.induced_subgraph(&set).expect("subset of vertices");
        crate::canon::contains_spanning(&sub, pattern)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{MaxCut, OddCycleTransversal, VertexCover};

    #[test]
    fn annotated_bruteforce_examples() {
        let empty2 = AnnotatedPartition::empty(2);
        assert_eq!(
            hat_p_bruteforce(&VertexCover, &Graph::complete(2), &empty2).unwrap().0,
            ExtInt::from(1i64)
        );
        let empty3 = AnnotatedPartition::empty(3);
        let (value, _) = hat_p_bruteforce(&OddCycleTransversal, &Graph::complete(5), &empty3).unwrap();
        assert_eq!(value, ExtInt::from(3i64));
        assert_eq!(
            hat_p_bruteforce(&MaxCut, &Graph::cycle(5), &empty2).unwrap().0,
            ExtInt::from(4i64)
        );
    }

    #[test]
    fn oct_examples() {
        assert!(oct_bruteforce(&Graph::cycle(6)).unwrap().is_empty());
        assert_eq!(oct_bruteforce(&Graph::cycle(5)).unwrap().len(), 1);
        assert_eq!(oct_bruteforce(&Graph::complete(5)).unwrap().len(), 3);
    }
}
