//! The generic bottom-up dynamic program over rooted decompositions.

use std::collections::BTreeMap;

use crate::boundaried::{mask_triangleright, BoundariedGraph, HeirMap, Label, Operand};
use crate::decomposition::{validate, Node, NodeContext, RootedDecomposition};
use crate::error::{Error, Result};
use crate::extint::{Direction, ExtInt};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::guard;
use crate::partition::{enumerate_partitions, AnnotatedPartition};

/// Default bound on the number of annotations tried at a single node.
pub const DEFAULT_ANNOTATION_LIMIT: u64 = 1 << 20;

/// Table of a finished child: annotated optima of its subtree graph, keyed by adhesion annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildRecord {
    /// Sorted adhesion of the child, as original vertex ids.
    pub adhesion: Vec<Vertex>,
    /// `values[code]` is the optimum under the annotation with that code over `adhesion`.
    pub values: Vec<ExtInt>,
}

impl ChildRecord {
    /// Annotated optimum for the restriction of `annotation` to the adhesion.
    ///
    /// Panics if some adhesion vertex is not annotated.
    pub fn value(&self, annotation: &AnnotatedPartition) -> ExtInt {
        let code = annotation
            .code(&self.adhesion)
            .expect("every adhesion vertex must be annotated");
        self.values[code]
    }

    pub fn adhesion_set(&self) -> VertexSet {
        self.adhesion.iter().copied().collect()
    }
}

/// Everything a plugin sees when reducing one node.
///
/// All vertex identities are labels, and labels of bag vertices are their original ids.
#[derive(Debug, Clone)]
pub struct ReductionInput<'a> {
    /// The bag graph on the boundary, trivially boundaried.
    pub bag: &'a BoundariedGraph,
    /// Annotated boundary vertices.
    pub annotated: &'a VertexSet,
    /// Unannotated boundary vertices shared with children.
    pub free: &'a VertexSet,
    pub annotation: &'a AnnotatedPartition,
    pub children: &'a [ChildRecord],
    /// Smallest label that is free for gadget vertices.
    pub fresh_label: Label,
}

/// Output of a nice reduction: a gadget graph standing in for every child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Trivially boundaried gadget graph; bag vertices keep their labels.
    pub gadget: BoundariedGraph,
    /// Annotation over gadget labels.
    pub annotation: AnnotatedPartition,
    pub offset: ExtInt,
    /// Unannotated vertices removed from the gadget, with the part they are forced into.
    pub fixed: Vec<(Label, usize)>,
}

/// An annotated optimization problem with a nice reduction.
pub trait ProblemPlugin {
    fn name(&self) -> &'static str;

    /// Number of parts of an annotation.
    fn arity(&self) -> usize;

    fn direction(&self) -> Direction;

    /// Whether vertex and edge weight maps are meaningful for this problem.
    fn weighted(&self) -> bool;

    /// Objective of a full partition of `V(g)`.
    fn evaluate(&self, g: &Graph, partition: &AnnotatedPartition) -> ExtInt;

    /// Contribution of a fully annotated overlap `g` that both sides of a gluing count.
    fn overlap_value(&self, g: &Graph, annotation: &AnnotatedPartition) -> i64;

    /// Exact annotated optimum with a witness, valid when the unannotated part is in the class.
    fn solve_base(&self, g: &Graph, annotation: &AnnotatedPartition) -> Result<(ExtInt, Option<AnnotatedPartition>)>;

    fn nice_reduce(&self, input: &ReductionInput<'_>) -> Result<Reduction>;

    /// Membership in the graph class of the free parts.
    fn in_class(&self, g: &Graph) -> bool {
        g.is_bipartite()
    }
}

/// Per-node table: value and chosen annotation of `A_t` for every adhesion annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTable {
    pub adhesion: Vec<Vertex>,
    pub values: Vec<ExtInt>,
    pub choices: Vec<Option<AnnotatedPartition>>,
}

/// Result of [`run_dp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpOutcome {
    pub value: ExtInt,
    pub tables: Vec<NodeTable>,
}

/// Precomputed per-node data shared by the forward and the traceback pass.
struct NodeFrame {
    context: NodeContext,
    bag_graph: BoundariedGraph,
    frame: BoundariedGraph,
    frame_vertices: Vec<Vertex>,
}

impl NodeFrame {
    fn new(g: &Graph, d: &RootedDecomposition, t: Node) -> Result<Self> {
        let context = d.context(t);
        let boundary: Vec<Vertex> = context.boundary.iter().copied().collect();
        let (boundary_graph, _) = g.induced_subgraph(&context.boundary)?;
        let bag_graph = BoundariedGraph::trivial(boundary_graph, &boundary)?;
        let bag = d.bag(t);
        let (frame_graph, index) = g.induced_subgraph(&bag)?;
        let labels = context.boundary.iter().map(|&v| (index[&v], v)).collect();
        let frame = BoundariedGraph::new(frame_graph, labels)?;
        Ok(NodeFrame {
            context,
            bag_graph,
            frame,
            frame_vertices: bag.into_iter().collect(),
        })
    }
}

/// A reduced base instance for one annotation of `A_t`.
struct Candidate {
    value: ExtInt,
    combined: Graph,
    annotation: AnnotatedPartition,
    /// Original vertex represented by each combined vertex, if any.
    origin: Vec<Option<Vertex>>,
    fixed: Vec<(Vertex, usize)>,
}

fn check_weights(plugin: &dyn ProblemPlugin, g: &Graph) -> Result<()> {
    if !plugin.weighted() && (g.has_vertex_weights() || g.has_edge_weights()) {
        return Err(Error::Precondition(format!(
            "{} does not accept weights",
            plugin.name()
        )));
    }
    Ok(())
}

fn child_records<'a>(context: &NodeContext, table_of: impl Fn(Node) -> &'a NodeTable) -> Vec<ChildRecord> {
    context
        .children
        .iter()
        .map(|&c| {
            let table = table_of(c);
            ChildRecord {
                adhesion: table.adhesion.clone(),
                values: table.values.clone(),
            }
        })
        .collect()
}

fn build_candidate(
    plugin: &dyn ProblemPlugin,
    g: &Graph,
    node: &NodeFrame,
    children: &[ChildRecord],
    choice: &AnnotatedPartition,
) -> Result<Option<Candidate>> {
    let input = ReductionInput {
        bag: &node.bag_graph,
        annotated: &node.context.annotated,
        free: &node.context.shared_free,
        annotation: choice,
        children,
        fresh_label: g.vertex_count(),
    };
    let reduction = plugin.nice_reduce(&input)?;
    if !reduction.offset.is_finite() {
        return Ok(None);
    }
    let gadget = &reduction.gadget;
    let stripped_gadget = strip_weights(gadget)?;
    let stripped_frame = strip_weights(&node.frame)?;
    let (mut combined, heirs) = mask_triangleright(&stripped_gadget, &stripped_frame)?;
    transfer_weights(g, plugin, gadget, &node.frame, &heirs, &mut combined)?;
    let mut origin = vec![None; combined.vertex_count()];
    for (fv, &original) in node.frame_vertices.iter().enumerate() {
        if let Some(h) = heirs.heir(Operand::Right, fv) {
            origin[h] = Some(original);
        }
    }
    let by_label: BTreeMap<Label, Vertex> = gadget
        .labels()
        .iter()
        .filter_map(|(&v, &l)| heirs.heir(Operand::Left, v).map(|h| (l, h)))
        .collect();
    let annotation = reduction.annotation.map_vertices(&by_label);
    if annotation.domain_len() != reduction.annotation.domain_len() {
        return Err(Error::Internal(format!(
            "{} annotated a label missing from its gadget",
            plugin.name()
        )));
    }
    debug_assert!(plugin.in_class(&combined.without(&annotation.domain()).0));
    let (base, _) = plugin.solve_base(&combined, &annotation)?;
    Ok(Some(Candidate {
        value: base + reduction.offset,
        combined,
        annotation,
        origin,
        fixed: reduction.fixed,
    }))
}

fn strip_weights(b: &BoundariedGraph) -> Result<BoundariedGraph> {
    let mut graph = b.graph.clone();
    graph.clear_weights();
    BoundariedGraph::new(graph, b.labels().clone())
}

/// Gadget weights take precedence over the weights of the bag graph.
fn transfer_weights(
    g: &Graph,
    plugin: &dyn ProblemPlugin,
    gadget: &BoundariedGraph,
    frame: &BoundariedGraph,
    heirs: &HeirMap,
    combined: &mut Graph,
) -> Result<()> {
    let weighted = plugin.weighted()
        && (g.has_vertex_weights()
            || g.has_edge_weights()
            || gadget.graph.has_vertex_weights()
            || gadget.graph.has_edge_weights());
    if !weighted {
        return Ok(());
    }
    let mut from_gadget = vec![None; combined.vertex_count()];
    for v in gadget.graph.vertices() {
        if let Some(h) = heirs.heir(Operand::Left, v) {
            from_gadget[h] = Some(v);
        }
    }
    let mut from_frame = vec![None; combined.vertex_count()];
    for v in frame.graph.vertices() {
        if let Some(h) = heirs.heir(Operand::Right, v) {
            from_frame[h] = Some(v);
        }
    }
    for v in combined.vertices() {
        let w = match (from_gadget[v], from_frame[v]) {
            (Some(x), _) => gadget.graph.vertex_weight(x),
            (None, Some(y)) => frame.graph.vertex_weight(y),
            (None, None) => 1,
        };
        combined.set_vertex_weight(v, w);
    }
    let edges: Vec<(Vertex, Vertex)> = combined.edges().collect();
    for (u, v) in edges {
        let w = match (from_gadget[u], from_gadget[v]) {
            (Some(a), Some(b)) if gadget.graph.has_edge(a, b) => gadget.graph.edge_weight(a, b),
            _ => {
                let (a, b) = (from_frame[u].expect("frame edge"), from_frame[v].expect("frame edge"));
                frame.graph.edge_weight(a, b)
            }
        };
        combined.set_edge_weight(u, v, w)?;
    }
    Ok(())
}

/// Runs the dynamic program bottom-up and returns the optimum with every node table.
pub fn run_dp(g: &Graph, d: &RootedDecomposition, plugin: &dyn ProblemPlugin) -> Result<DpOutcome> {
    check_weights(plugin, g)?;
    if let Some(v) = validate(g, d, &|h| plugin.in_class(h)).first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    let p = plugin.arity();
    let direction = plugin.direction();
    let mut tables: Vec<Option<NodeTable>> = vec![None; d.node_count()];
    for t in d.postorder() {
        let node = NodeFrame::new(g, d, t)?;
        guard::check(
            "annotations at one node",
            (p as u64).saturating_pow(node.context.annotated.len() as u32),
            DEFAULT_ANNOTATION_LIMIT,
        )?;
        let children = child_records(&node.context, |c| {
            tables[c].as_ref().expect("children are processed first")
        });
        let adhesion: Vec<Vertex> = node.context.adhesion.iter().copied().collect();
        let size = p.pow(adhesion.len() as u32);
        let mut values = vec![direction.infeasible(); size];
        let mut choices = vec![None; size];
        for choice in enumerate_partitions(&node.context.annotated, p) {
            let key = choice.code(&adhesion).expect("adhesion is annotated");
            let value =
                build_candidate(plugin, g, &node, &children, &choice)?.map_or(direction.infeasible(), |c| c.value);
            if choices[key].is_none() || direction.improves(value, values[key]) {
                values[key] = value;
                choices[key] = Some(choice);
            }
        }
        tables[t] = Some(NodeTable {
            adhesion,
            values,
            choices,
        });
    }
    let tables: Vec<NodeTable> = tables.into_iter().map(|t| t.expect("every node processed")).collect();
    let value = tables[d.root].values[0];
    Ok(DpOutcome { value, tables })
}

/// Reconstructs an optimal full partition top-down from the tables of [`run_dp`].
///
/// Fails with an internal error if the witness does not evaluate to the table value.
pub fn extract_certificate(
    g: &Graph,
    d: &RootedDecomposition,
    plugin: &dyn ProblemPlugin,
    outcome: &DpOutcome,
) -> Result<Option<AnnotatedPartition>> {
    if !outcome.value.is_finite() {
        return Ok(None);
    }
    let p = plugin.arity();
    let mut assignment: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut stack: Vec<(Node, usize)> = vec![(d.root, 0)];
    while let Some((t, key)) = stack.pop() {
        let table = &outcome.tables[t];
        let choice = table.choices[key]
            .as_ref()
            .ok_or_else(|| Error::Internal(format!("node {t} has no recorded choice")))?;
        let node = NodeFrame::new(g, d, t)?;
        let children = child_records(&node.context, |c| &outcome.tables[c]);
        let candidate = build_candidate(plugin, g, &node, &children, choice)?
            .ok_or_else(|| Error::Internal(format!("node {t} lost its feasible choice")))?;
        if candidate.value != table.values[key] {
            return Err(Error::Internal(format!("node {t} re-solved to a different value")));
        }
        let (_, witness) = plugin.solve_base(&candidate.combined, &candidate.annotation)?;
        let witness = witness.ok_or_else(|| Error::Internal(format!("node {t} has no base witness")))?;
        let mut local: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (v, part) in witness.assignment() {
            if let Some(original) = candidate.origin[v] {
                local.insert(original, part);
            }
        }
        for &(v, part) in &candidate.fixed {
            local.insert(v, part);
        }
        for (&v, &part) in &local {
            if let Some(&previous) = assignment.get(&v) {
                if previous != part {
                    return Err(Error::Internal(format!("vertex {v} assigned inconsistently")));
                }
            }
            assignment.insert(v, part);
        }
        for &c in &node.context.children {
            let child_adhesion = &outcome.tables[c].adhesion;
            let child_annotation =
                AnnotatedPartition::from_assignment(p, child_adhesion.iter().map(|v| (*v, local[v])));
            let child_key = child_annotation.code(child_adhesion).expect("adhesion annotated");
            stack.push((c, child_key));
        }
    }
    if assignment.len() != g.vertex_count() {
        return Err(Error::Internal("certificate does not cover every vertex".into()));
    }
    let certificate = AnnotatedPartition::from_assignment(p, assignment);
    let value = plugin.evaluate(g, &certificate);
    if value != outcome.value {
        return Err(Error::Internal(format!(
            "certificate evaluates to {value} but the table value is {}",
            outcome.value
        )));
    }
    Ok(Some(certificate))
}

/// Convenience wrapper: optimum plus a verified certificate.
pub fn solve(
    g: &Graph,
    d: &RootedDecomposition,
    plugin: &dyn ProblemPlugin,
) -> Result<(ExtInt, Option<AnnotatedPartition>)> {
    let outcome = run_dp(g, d, plugin)?;
    let certificate = extract_certificate(g, d, plugin, &outcome)?;
    Ok((outcome.value, certificate))
}
