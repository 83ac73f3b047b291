//! Clique-subgraph cover: delete fewest vertices so that no `K_t` remains.

use crate::dp::{ProblemPlugin, Reduction, ReductionInput};
use crate::error::{Error, Result};
use crate::extint::{Direction, ExtInt};
use crate::flow::bipartite_min_vertex_cover;
use crate::graph::{Graph, VertexSet};
use crate::partition::AnnotatedPartition;

use super::vc::VertexCover;
use super::{check_annotation, folded_offset, group_children, group_value, infeasible_reduction, GadgetBuilder};

pub use super::vc::{FORBIDDEN, FORCED};

/// Unweighted `K_t`-subgraph cover; annotations are `(forbidden, forced)`.
///
/// For `t = 2` this is unweighted vertex cover and every operation delegates to [`VertexCover`].
#[derive(Debug, Clone, Copy)]
pub struct KtCover {
    t: usize,
}

impl KtCover {
    pub fn new(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::Precondition(format!("clique size {t} must be at least 2")));
        }
        Ok(KtCover { t })
    }

    pub fn clique_size(&self) -> usize {
        self.t
    }
}

impl ProblemPlugin for KtCover {
    fn name(&self) -> &'static str {
        "clique cover"
    }

    fn arity(&self) -> usize {
        2
    }

    fn direction(&self) -> Direction {
        Direction::Min
    }

    fn weighted(&self) -> bool {
        false
    }

    fn evaluate(&self, g: &Graph, partition: &AnnotatedPartition) -> ExtInt {
        let deleted = partition.part(FORCED);
        if g.without(deleted).0.contains_clique(self.t) {
            ExtInt::PosInf
        } else {
            ExtInt::from(deleted.len() as i64)
        }
    }

    fn overlap_value(&self, _g: &Graph, annotation: &AnnotatedPartition) -> i64 {
        annotation.part(FORCED).len() as i64
    }

    fn solve_base(&self, g: &Graph, annotation: &AnnotatedPartition) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
        if self.t == 2 {
            let mut plain = g.clone();
            plain.clear_weights();
            return VertexCover.solve_base(&plain, annotation);
        }
        check_annotation(g, annotation, 2)?;
        let (rest, index) = g.without(annotation.part(FORCED));
        let original: Vec<usize> = index.keys().copied().collect();
        let kept = annotation
            .part(FORBIDDEN)
            .iter()
            .map(|v| index[v])
            .collect::<VertexSet>();
        let (kept_graph, _) = rest.induced_subgraph(&kept)?;
        if kept_graph.contains_clique(self.t) {
            return Ok((ExtInt::PosInf, None));
        }
        let occurrences = rest.enumerate_kt_occurrences(self.t, &kept)?;
        let mut deleted = VertexSet::new();
        let mut pairs = Vec::new();
        for occurrence in &occurrences {
            let loose: Vec<usize> = occurrence.iter().copied().filter(|v| !kept.contains(v)).collect();
            match loose.as_slice() {
                [v] => {
                    deleted.insert(*v);
                }
                [u, v] => pairs.push((*u, *v)),
                _ => {
                    return Err(Error::Internal(
                        "clique with an unexpected number of free vertices".into(),
                    ))
                }
            }
        }
        let mut conflicts = Graph::new(rest.vertex_count());
        for &(u, v) in &pairs {
            if !deleted.contains(&u) && !deleted.contains(&v) {
                conflicts.add_edge(u, v)?;
            }
        }
        let (cover, _) = bipartite_min_vertex_cover(&conflicts)
            .map_err(|_| Error::Precondition("unannotated part is not bipartite".into()))?;
        deleted.extend(cover);
        let mut witness = AnnotatedPartition::from_assignment(2, g.vertices().map(|v| (v, FORBIDDEN)));
        for &v in annotation.part(FORCED) {
            witness.assign(v, FORCED);
        }
        for &v in &deleted {
            witness.assign(original[v], FORCED);
        }
        let value = ExtInt::from(witness.part(FORCED).len() as i64);
        Ok((value, Some(witness)))
    }

    fn nice_reduce(&self, input: &ReductionInput<'_>) -> Result<Reduction> {
        if self.t == 2 {
            return VertexCover.nice_reduce(input);
        }
        let groups = group_children(input)?;
        let mut offset = folded_offset(self, input, &groups.full);
        let mut builder = GadgetBuilder::new(input);
        let mut fixed = Vec::new();
        for (&v, group) in &groups.by_vertex {
            let with_v_deleted = group_value(self, input, group, v, FORCED) + 1;
            let with_v_kept = group_value(self, input, group, v, FORBIDDEN);
            if with_v_deleted <= with_v_kept {
                offset = offset + with_v_deleted;
                builder.remove(v);
                fixed.push((v, FORCED));
            } else {
                offset = offset + with_v_kept;
            }
        }
        if !offset.is_finite() {
            return Ok(infeasible_reduction(input, ExtInt::PosInf));
        }
        Ok(Reduction {
            gadget: builder.build(),
            annotation: input.annotation.clone(),
            offset,
            fixed,
        })
    }
}
