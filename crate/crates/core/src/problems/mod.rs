//! Concrete annotated problems: vertex cover, clique-subgraph cover, odd cycle transversal and maximum cut.

use std::collections::BTreeMap;

use crate::boundaried::{BoundariedGraph, Label};
use crate::dp::{ChildRecord, ProblemPlugin, Reduction, ReductionInput};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::graph::{Graph, Vertex, VertexSet, Weight};
use crate::partition::AnnotatedPartition;

pub mod cut;
pub mod kt;
pub mod oct;
pub mod vc;

pub use cut::MaxCut;
pub use kt::KtCover;
pub use oct::OddCycleTransversal;
pub use vc::VertexCover;

/// Children of a node split by the unannotated vertex they share with it.
pub(crate) struct ChildGroups<'a> {
    pub full: Vec<&'a ChildRecord>,
    pub by_vertex: BTreeMap<Label, Vec<&'a ChildRecord>>,
}

pub(crate) fn group_children<'a>(input: &ReductionInput<'a>) -> Result<ChildGroups<'a>> {
    let mut groups = ChildGroups {
        full: Vec::new(),
        by_vertex: BTreeMap::new(),
    };
    for child in input.children {
        let loose: Vec<Label> = child
            .adhesion
            .iter()
            .copied()
            .filter(|v| !input.annotated.contains(v))
            .collect();
        match loose.as_slice() {
            [] => groups.full.push(child),
            [v] if input.free.contains(v) => groups.by_vertex.entry(*v).or_default().push(child),
            _ => {
                return Err(Error::Precondition(format!(
                    "child adhesion {:?} has unannotated vertices {loose:?} outside the shared free set",
                    child.adhesion
                )))
            }
        }
    }
    Ok(groups)
}

/// What a child adds beyond its adhesion: its annotated optimum minus the overlap both sides count.
pub(crate) fn interior_value(
    plugin: &dyn ProblemPlugin,
    bag: &BoundariedGraph,
    child: &ChildRecord,
    annotation: &AnnotatedPartition,
) -> ExtInt {
    let value = child.value(annotation);
    if !value.is_finite() {
        return value;
    }
    let members: VertexSet = child
        .adhesion
        .iter()
        .map(|&l| bag.vertex_with_label(l).expect("adhesion lies in the bag"))
        .collect();
    let (overlap, index) = bag.graph.induced_subgraph(&members).expect("bag vertices");
    let to_overlap: BTreeMap<Label, Vertex> = child
        .adhesion
        .iter()
        .map(|&l| (l, index[&bag.vertex_with_label(l).expect("adhesion lies in the bag")]))
        .collect();
    value - plugin.overlap_value(&overlap, &annotation.map_vertices(&to_overlap))
}

/// Sum of [`interior_value`] over fully annotated children.
pub(crate) fn folded_offset(plugin: &dyn ProblemPlugin, input: &ReductionInput<'_>, full: &[&ChildRecord]) -> ExtInt {
    full.iter().fold(ExtInt::ZERO, |acc, child| {
        acc + interior_value(plugin, input.bag, child, input.annotation)
    })
}

/// Sum of [`interior_value`] over a group sharing `v`, with `v` placed in `part`.
pub(crate) fn group_value(
    plugin: &dyn ProblemPlugin,
    input: &ReductionInput<'_>,
    group: &[&ChildRecord],
    v: Label,
    part: usize,
) -> ExtInt {
    let mut annotation = input.annotation.clone();
    annotation.assign(v, part);
    group.iter().fold(ExtInt::ZERO, |acc, child| {
        acc + interior_value(plugin, input.bag, child, &annotation)
    })
}

pub(crate) fn to_weight(value: ExtInt) -> Result<Weight> {
    value
        .finite()
        .and_then(|v| Weight::try_from(v).ok())
        .ok_or_else(|| Error::Internal(format!("gadget weight {value} is not a nonnegative integer")))
}

/// Incrementally edits a copy of the bag graph into a gadget graph, addressing vertices by label.
pub(crate) struct GadgetBuilder {
    graph: Graph,
    labels: Vec<Label>,
    index: BTreeMap<Label, Vertex>,
    removed: VertexSet,
    next_label: Label,
}

impl GadgetBuilder {
    pub fn new(input: &ReductionInput<'_>) -> Self {
        let graph = input.bag.graph.clone();
        let labels: Vec<Label> = graph
            .vertices()
            .map(|v| input.bag.label_of(v).expect("bag graph is trivially boundaried"))
            .collect();
        let index = labels.iter().enumerate().map(|(v, &l)| (l, v)).collect();
        GadgetBuilder {
            graph,
            labels,
            index,
            removed: VertexSet::new(),
            next_label: input.fresh_label,
        }
    }

    fn vertex(&self, label: Label) -> Vertex {
        self.index[&label]
    }

    pub fn vertex_weight(&self, label: Label) -> Weight {
        self.graph.vertex_weight(self.vertex(label))
    }

    pub fn set_vertex_weight(&mut self, label: Label, weight: Weight) {
        let v = self.vertex(label);
        self.graph.set_vertex_weight(v, weight);
    }

    /// Adds a vertex with a fresh label and returns the label.
    pub fn add_vertex(&mut self) -> Label {
        let v = self.graph.add_vertex();
        let label = self.next_label;
        self.next_label += 1;
        self.labels.push(label);
        self.index.insert(label, v);
        label
    }

    pub fn add_edge(&mut self, a: Label, b: Label) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        self.graph.add_edge(u, v).expect("gadget labels are distinct vertices");
    }

    pub fn set_edge_weight(&mut self, a: Label, b: Label, weight: Weight) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        self.graph.set_edge_weight(u, v, weight).expect("edge was added");
    }

    pub fn remove(&mut self, label: Label) {
        self.removed.insert(self.vertex(label));
    }

    pub fn build(self) -> BoundariedGraph {
        let (graph, map) = self.graph.without(&self.removed);
        let labels = map.iter().map(|(&old, &new)| (new, self.labels[old])).collect();
        BoundariedGraph::new(graph, labels).expect("labels stay injective")
    }
}

/// The reduction reported for an annotation that admits no solution.
pub(crate) fn infeasible_reduction(input: &ReductionInput<'_>, infeasible: ExtInt) -> Reduction {
    Reduction {
        gadget: input.bag.clone(),
        annotation: input.annotation.clone(),
        offset: infeasible,
        fixed: Vec::new(),
    }
}

/// Checks the part count of `annotation` and that every annotated vertex exists.
pub(crate) fn check_annotation(g: &Graph, annotation: &AnnotatedPartition, p: usize) -> Result<()> {
    if annotation.part_count() != p {
        return Err(Error::Precondition(format!(
            "annotation has {} parts, expected {p}",
            annotation.part_count()
        )));
    }
    for v in annotation.domain() {
        g.check_vertex(v)?;
    }
    Ok(())
}
