//! Odd cycle transversal with forced deletions and forced sides.

use crate::dp::{ProblemPlugin, Reduction, ReductionInput};
use crate::error::{Error, Result};
use crate::extint::{Direction, ExtInt};
use crate::flow::min_vertex_cut;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::partition::AnnotatedPartition;

use super::{check_annotation, folded_offset, group_children, group_value, infeasible_reduction, GadgetBuilder};

/// Part of deleted vertices.
pub const DELETED: usize = 0;
/// Part of vertices on the first side of the remaining bipartite graph.
pub const FIRST_SIDE: usize = 1;
/// Part of vertices on the second side.
pub const SECOND_SIDE: usize = 2;

/// Unweighted odd cycle transversal; annotations are `(deleted, first side, second side)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OddCycleTransversal;

impl ProblemPlugin for OddCycleTransversal {
    fn name(&self) -> &'static str {
        "odd cycle transversal"
    }

    fn arity(&self) -> usize {
        3
    }

    fn direction(&self) -> Direction {
        Direction::Min
    }

    fn weighted(&self) -> bool {
        false
    }

    fn evaluate(&self, g: &Graph, partition: &AnnotatedPartition) -> ExtInt {
        if g.is_independent(partition.part(FIRST_SIDE)) && g.is_independent(partition.part(SECOND_SIDE)) {
            ExtInt::from(partition.part(DELETED).len() as i64)
        } else {
            ExtInt::PosInf
        }
    }

    fn overlap_value(&self, _g: &Graph, annotation: &AnnotatedPartition) -> i64 {
        annotation.part(DELETED).len() as i64
    }

    /// Finds the fewest extra deletions by a minimum vertex cut.
    ///
    /// Each unannotated vertex either keeps the side given by a fixed
    /// bipartition of the unannotated part or flips. An edge to an annotated
    /// side vertex dictates which of the two it must do, and an edge between
    /// unannotated vertices forces both ends to agree. Deleting a vertex cut
    /// between the "keep" and "flip" demands leaves a consistent choice.
    fn solve_base(&self, g: &Graph, annotation: &AnnotatedPartition) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
        check_annotation(g, annotation, 3)?;
        let first = annotation.part(FIRST_SIDE);
        let second = annotation.part(SECOND_SIDE);
        if !g.is_independent(first) || !g.is_independent(second) {
            return Ok((ExtInt::PosInf, None));
        }
        let free: VertexSet = g.vertices().filter(|&v| !annotation.contains(v)).collect();
        let (free_graph, _) = g.induced_subgraph(&free)?;
        let order: Vec<Vertex> = free.iter().copied().collect();
        let base_side = free_graph
            .two_coloring()
            .ok_or_else(|| Error::Precondition("unannotated part is not bipartite".into()))?;
        let keep_terminal = order.len();
        let flip_terminal = order.len() + 1;
        let mut network = free_graph.clone();
        network.add_vertex();
        network.add_vertex();
        for (i, &v) in order.iter().enumerate() {
            let natural = if base_side[i] { SECOND_SIDE } else { FIRST_SIDE };
            for &x in g.neighbors(v) {
                let fixed_side = if first.contains(&x) {
                    FIRST_SIDE
                } else if second.contains(&x) {
                    SECOND_SIDE
                } else {
                    continue;
                };
                let terminal = if fixed_side == natural {
                    flip_terminal
                } else {
                    keep_terminal
                };
                network.add_edge(i, terminal)?;
            }
        }
        let keep: VertexSet = [keep_terminal].into_iter().collect();
        let flip: VertexSet = [flip_terminal].into_iter().collect();
        let (cut, _) = min_vertex_cut(&network, &keep, &flip)?;
        let mut witness = annotation.clone();
        for &v in &cut {
            witness.assign(order[v], DELETED);
        }
        let reaches_flip = reachable(&network, flip_terminal, &cut);
        for (i, &v) in order.iter().enumerate() {
            if cut.contains(&i) {
                continue;
            }
            let flipped = reaches_flip[i];
            let natural_second = base_side[i];
            let side = if natural_second != flipped {
                SECOND_SIDE
            } else {
                FIRST_SIDE
            };
            witness.assign(v, side);
        }
        let value = ExtInt::from(witness.part(DELETED).len() as i64);
        Ok((value, Some(witness)))
    }

    fn nice_reduce(&self, input: &ReductionInput<'_>) -> Result<Reduction> {
        let groups = group_children(input)?;
        let mut offset = folded_offset(self, input, &groups.full);
        let mut builder = GadgetBuilder::new(input);
        let first_anchor = builder.add_vertex();
        let second_anchor = builder.add_vertex();
        let mut annotation = input.annotation.clone();
        annotation.assign(first_anchor, FIRST_SIDE);
        annotation.assign(second_anchor, SECOND_SIDE);
        let mut fixed = Vec::new();
        for (&v, group) in &groups.by_vertex {
            let deleted = group_value(self, input, group, v, DELETED) + 1;
            let on_first = group_value(self, input, group, v, FIRST_SIDE);
            let on_second = group_value(self, input, group, v, SECOND_SIDE);
            if deleted <= on_first && deleted <= on_second {
                offset = offset + deleted;
                builder.remove(v);
                fixed.push((v, DELETED));
            } else if on_first == on_second {
                offset = offset + on_first;
            } else if on_first < on_second {
                builder.add_edge(v, second_anchor);
                offset = offset + on_first;
            } else {
                builder.add_edge(v, first_anchor);
                offset = offset + on_second;
            }
        }
        if !offset.is_finite() {
            return Ok(infeasible_reduction(input, ExtInt::PosInf));
        }
        Ok(Reduction {
            gadget: builder.build(),
            annotation,
            offset,
            fixed,
        })
    }
}

/// Vertices reachable from `start` without entering `blocked`.
fn reachable(g: &Graph, start: Vertex, blocked: &VertexSet) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] && !blocked.contains(&v) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annotation(deleted: &[usize], first: &[usize], second: &[usize]) -> AnnotatedPartition {
        AnnotatedPartition::from_parts(
            [deleted, first, second]
                .iter()
                .map(|part| part.iter().copied().collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(
            OddCycleTransversal.evaluate(&c5, &annotation(&[0], &[1, 3], &[2, 4])),
            ExtInt::from(1i64)
        );
        let k3 = Graph::complete(3);
        assert_eq!(
            OddCycleTransversal.evaluate(&k3, &annotation(&[], &[0, 2], &[1])),
            ExtInt::PosInf
        );
    }

    #[test]
    fn base_examples() {
        let c5 = Graph::cycle(5);
        let (value, witness) = OddCycleTransversal
            .solve_base(&c5, &annotation(&[], &[0], &[1]))
            .unwrap();
        assert_eq!(value, ExtInt::from(1i64));
        assert_eq!(OddCycleTransversal.evaluate(&c5, &witness.unwrap()), value);
        let (value, _) = OddCycleTransversal
            .solve_base(&Graph::cycle(6), &annotation(&[], &[], &[]))
            .unwrap();
        assert_eq!(value, ExtInt::ZERO);
    }
}
