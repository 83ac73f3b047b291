//! Weighted vertex cover with forbidden and forced vertices.

use crate::dp::{ProblemPlugin, Reduction, ReductionInput};
use crate::error::{Error, Result};
use crate::extint::{Direction, ExtInt};
use crate::flow::bipartite_min_vertex_cover;
use crate::graph::{Graph, VertexSet};
use crate::partition::AnnotatedPartition;

use super::{
    check_annotation, folded_offset, group_children, group_value, infeasible_reduction, to_weight, GadgetBuilder,
};

/// Part of vertices that must stay outside the cover.
pub const FORBIDDEN: usize = 0;
/// Part of vertices that must be in the cover.
pub const FORCED: usize = 1;

/// Minimum-weight vertex cover; annotations are `(forbidden, forced)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct VertexCover;

impl ProblemPlugin for VertexCover {
    fn name(&self) -> &'static str {
        "vertex cover"
    }

    fn arity(&self) -> usize {
        2
    }

    fn direction(&self) -> Direction {
        Direction::Min
    }

    fn weighted(&self) -> bool {
        true
    }

    fn evaluate(&self, g: &Graph, partition: &AnnotatedPartition) -> ExtInt {
        let cover = partition.part(FORCED);
        if g.edges().all(|(u, v)| cover.contains(&u) || cover.contains(&v)) {
            ExtInt::from(g.vertex_set_weight(cover))
        } else {
            ExtInt::PosInf
        }
    }

    fn overlap_value(&self, g: &Graph, annotation: &AnnotatedPartition) -> i64 {
        g.vertex_set_weight(annotation.part(FORCED)) as i64
    }

    fn solve_base(&self, g: &Graph, annotation: &AnnotatedPartition) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
        check_annotation(g, annotation, 2)?;
        let forbidden = annotation.part(FORBIDDEN);
        if !g.is_independent(forbidden) {
            return Ok((ExtInt::PosInf, None));
        }
        let mut cover: VertexSet = annotation.part(FORCED).clone();
        cover.extend(forbidden.iter().flat_map(|&v| g.neighbors(v).iter().copied()));
        let undecided: VertexSet = g
            .vertices()
            .filter(|v| !forbidden.contains(v) && !cover.contains(v))
            .collect();
        let (rest, _) = g.induced_subgraph(&undecided)?;
        let order: Vec<_> = undecided.iter().copied().collect();
        let (rest_cover, _) = bipartite_min_vertex_cover(&rest).map_err(|e| match e {
            Error::NotBipartite => Error::Precondition("unannotated part is not bipartite".into()),
            other => other,
        })?;
        cover.extend(rest_cover.iter().map(|&v| order[v]));
        let witness = AnnotatedPartition::from_assignment(
            2,
            g.vertices()
                .map(|v| (v, if cover.contains(&v) { FORCED } else { FORBIDDEN })),
        );
        Ok((ExtInt::from(g.vertex_set_weight(&cover)), Some(witness)))
    }

    fn nice_reduce(&self, input: &ReductionInput<'_>) -> Result<Reduction> {
        let groups = group_children(input)?;
        let mut offset = folded_offset(self, input, &groups.full);
        if !offset.is_finite() {
            return Ok(infeasible_reduction(input, ExtInt::PosInf));
        }
        let mut builder = GadgetBuilder::new(input);
        let mut fixed = Vec::new();
        for (&v, group) in &groups.by_vertex {
            let covered = group_value(self, input, group, v, FORCED);
            let uncovered = group_value(self, input, group, v, FORBIDDEN);
            if !covered.is_finite() {
                return Ok(infeasible_reduction(input, ExtInt::PosInf));
            }
            let own = builder.vertex_weight(v);
            if uncovered.is_finite() {
                builder.set_vertex_weight(v, to_weight(covered + own as i64)?);
                let pendant = builder.add_vertex();
                builder.add_edge(v, pendant);
                builder.set_vertex_weight(pendant, to_weight(uncovered)?);
            } else {
                offset = offset + covered + own as i64;
                builder.remove(v);
                fixed.push((v, FORCED));
            }
        }
        Ok(Reduction {
            gadget: builder.build(),
            annotation: input.annotation.clone(),
            offset,
            fixed,
        })
    }
}
