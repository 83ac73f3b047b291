//! Maximum weighted cut with vertices pinned to either side.

use crate::dp::{ProblemPlugin, Reduction, ReductionInput};
use crate::error::{Error, Result};
use crate::extint::{Direction, ExtInt};
use crate::flow::{max_flow, FlowNetwork};
use crate::graph::{Graph, Vertex, VertexSet, Weight};
use crate::partition::AnnotatedPartition;

use super::{
    check_annotation, folded_offset, group_children, group_value, infeasible_reduction, to_weight, GadgetBuilder,
};

/// Part of vertices on the first side of the cut.
pub const FIRST_SIDE: usize = 0;
/// Part of vertices on the second side of the cut.
pub const SECOND_SIDE: usize = 1;

/// Maximum weighted cut; annotations are `(first side, second side)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxCut;

/// Total weight of the edges of `g` joining the two parts of `annotation`.
pub fn crossing_weight(g: &Graph, annotation: &AnnotatedPartition) -> Weight {
    let (first, second) = (annotation.part(FIRST_SIDE), annotation.part(SECOND_SIDE));
    g.edges()
        .filter(|(u, v)| (first.contains(u) && second.contains(v)) || (first.contains(v) && second.contains(u)))
        .map(|(u, v)| g.edge_weight(u, v))
        .sum()
}

impl ProblemPlugin for MaxCut {
    fn name(&self) -> &'static str {
        "maximum cut"
    }

    fn arity(&self) -> usize {
        2
    }

    fn direction(&self) -> Direction {
        Direction::Max
    }

    fn weighted(&self) -> bool {
        true
    }

    fn evaluate(&self, g: &Graph, partition: &AnnotatedPartition) -> ExtInt {
        ExtInt::from(crossing_weight(g, partition))
    }

    fn overlap_value(&self, g: &Graph, annotation: &AnnotatedPartition) -> i64 {
        crossing_weight(g, annotation) as i64
    }

    /// Contracts each pinned side to a single vertex and solves the result by one minimum cut.
    ///
    /// The contracted graph is bipartite after removing the two contracted
    /// vertices, whose sides are fixed. Flipping the variables of one side of
    /// that bipartition turns every "edge left uncut" penalty into a
    /// disagreement penalty, which a minimum s-t cut minimizes exactly.
    fn solve_base(&self, g: &Graph, annotation: &AnnotatedPartition) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
        check_annotation(g, annotation, 2)?;
        let contracted = Contracted::new(g, annotation)?;
        let (cut, sides) = contracted.max_cut()?;
        let value = cut as i64 + contracted.pinned_crossing as i64 - contracted.heavy as i64;
        let mut witness = annotation.clone();
        for (i, &v) in contracted.free.iter().enumerate() {
            witness.assign(v, if sides[i] { SECOND_SIDE } else { FIRST_SIDE });
        }
        Ok((ExtInt::from(value), Some(witness)))
    }

    fn nice_reduce(&self, input: &ReductionInput<'_>) -> Result<Reduction> {
        let groups = group_children(input)?;
        let offset = folded_offset(self, input, &groups.full);
        if !offset.is_finite() {
            return Ok(infeasible_reduction(input, ExtInt::NegInf));
        }
        let mut builder = GadgetBuilder::new(input);
        let first_anchor = builder.add_vertex();
        let second_anchor = builder.add_vertex();
        for &b in input.free {
            for anchor in [first_anchor, second_anchor] {
                builder.add_edge(b, anchor);
                builder.set_edge_weight(b, anchor, 0);
            }
        }
        let mut annotation = input.annotation.clone();
        annotation.assign(first_anchor, FIRST_SIDE);
        annotation.assign(second_anchor, SECOND_SIDE);
        for (&v, group) in &groups.by_vertex {
            let when_second = group_value(self, input, group, v, SECOND_SIDE);
            let when_first = group_value(self, input, group, v, FIRST_SIDE);
            if !when_first.is_finite() || !when_second.is_finite() {
                return Ok(infeasible_reduction(input, ExtInt::NegInf));
            }
            builder.set_edge_weight(v, first_anchor, to_weight(when_second)?);
            builder.set_edge_weight(v, second_anchor, to_weight(when_first)?);
        }
        Ok(Reduction {
            gadget: builder.build(),
            annotation,
            offset,
            fixed: Vec::new(),
        })
    }
}

/// The pinned sides contracted to single vertices, with parallel edges merged.
struct Contracted {
    /// Unannotated vertices of the original graph, in order.
    free: Vec<Vertex>,
    /// Side of each free vertex in a fixed bipartition of the free part.
    base_side: Vec<bool>,
    /// Edges between free vertices, by free index.
    free_edges: Vec<(usize, usize, Weight)>,
    /// Summed weight from each free vertex to the contracted first and second side.
    to_pinned: Vec<[Weight; 2]>,
    has_pinned: [bool; 2],
    /// Weight of the forcing edge between the contracted vertices (0 if absent).
    heavy: Weight,
    /// Weight of the original edges joining the two pinned sides.
    pinned_crossing: Weight,
}

impl Contracted {
    fn new(g: &Graph, annotation: &AnnotatedPartition) -> Result<Self> {
        let pinned = [annotation.part(FIRST_SIDE), annotation.part(SECOND_SIDE)];
        let free_set: VertexSet = g.vertices().filter(|&v| !annotation.contains(v)).collect();
        let (free_graph, index) = g.induced_subgraph(&free_set)?;
        let base_side = free_graph
            .two_coloring()
            .ok_or_else(|| Error::Precondition("unannotated part is not bipartite".into()))?;
        let free_edges = free_graph
            .edges()
            .map(|(a, b)| (a, b, free_graph.edge_weight(a, b)))
            .collect();
        let mut to_pinned = vec![[0; 2]; free_set.len()];
        let mut pinned_crossing = 0;
        for (u, v) in g.edges() {
            let w = g.edge_weight(u, v);
            match (annotation.part_of(u), annotation.part_of(v)) {
                (None, Some(side)) => to_pinned[index[&u]][side] += w,
                (Some(side), None) => to_pinned[index[&v]][side] += w,
                (Some(a), Some(b)) if a != b => pinned_crossing += w,
                _ => {}
            }
        }
        let has_pinned = [!pinned[0].is_empty(), !pinned[1].is_empty()];
        let heavy = if has_pinned[0] && has_pinned[1] {
            g.total_edge_weight() + 1
        } else {
            0
        };
        Ok(Contracted {
            free: free_set.into_iter().collect(),
            base_side,
            free_edges,
            to_pinned,
            has_pinned,
            heavy,
            pinned_crossing,
        })
    }

    fn total_weight(&self) -> Weight {
        let free: Weight = self.free_edges.iter().map(|e| e.2).sum();
        let pinned: Weight = self.to_pinned.iter().map(|w| w[0] + w[1]).sum();
        free + pinned + self.heavy
    }

    /// Maximum cut of the contracted graph and the side (`true` = second) of every free vertex.
    ///
    /// The first contracted vertex present is fixed on its own side, which loses nothing by symmetry.
    fn max_cut(&self) -> Result<(Weight, Vec<bool>)> {
        let placements: Vec<[bool; 2]> = match self.has_pinned {
            [true, true] => vec![[false, true], [false, false]],
            _ => vec![[false, true]],
        };
        let mut best: Option<(Weight, Vec<bool>)> = None;
        for placement in placements {
            let (uncut, sides) = self.min_uncut(placement)?;
            let cut = self.total_weight() - uncut;
            if best.as_ref().is_none_or(|(b, _)| cut > *b) {
                best = Some((cut, sides));
            }
        }
        let (cut, sides) = best.expect("at least one placement");
        Ok((cut, sides))
    }

    /// Minimum weight left uncut when the contracted vertices sit on `placement` (`true` = second side).
    fn min_uncut(&self, placement: [bool; 2]) -> Result<(Weight, Vec<bool>)> {
        let f = self.free.len();
        let (source, sink) = (f, f + 1);
        let mut net = FlowNetwork::new(f + 2, source, sink);
        for (i, weights) in self.to_pinned.iter().enumerate() {
            let mut penalty = [0; 2];
            for side in 0..2 {
                if !self.has_pinned[side] {
                    continue;
                }
                let pinned_second = placement[side];
                let uncut_when_flipped_second = pinned_second != self.base_side[i];
                penalty[usize::from(uncut_when_flipped_second)] += weights[side];
            }
            if penalty[0] > 0 {
                net.add_arc(i, sink, penalty[0]);
            }
            if penalty[1] > 0 {
                net.add_arc(source, i, penalty[1]);
            }
        }
        for &(a, b, w) in &self.free_edges {
            net.add_arc(a, b, w);
            net.add_arc(b, a, w);
        }
        let flow = max_flow(&net)?;
        let pinned_uncut = if self.heavy > 0 && placement[0] == placement[1] {
            self.heavy
        } else {
            0
        };
        let sides = (0..f)
            .map(|i| {
                let flipped_second = !flow.source_side[i];
                flipped_second != self.base_side[i]
            })
            .collect();
        Ok((flow.value + pinned_uncut, sides))
    }
}
