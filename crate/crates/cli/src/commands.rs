//! The command implementations behind the `biptw` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use biptw::decomposition::{coloring_from_decomposition, from_oct, validate_bipartite};
use biptw::dp::{extract_certificate, run_dp};
use biptw::generators::{no_nice, planted_oct, random_graph, subdivided_clique};
use biptw::oracles::{hat_p_bruteforce, max_packing_bruteforce, oct_bruteforce, PackingMode};
use biptw::packing::{is_packing, solve_packing_xp};
use biptw::problems::{KtCover, MaxCut, OddCycleTransversal, VertexCover};
use biptw::{AnnotatedPartition, ExtInt, Graph, ProblemPlugin, RootedDecomposition, Vertex, VertexSet};
use clap::{Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, EXIT_INVALID, EXIT_OK};
use crate::format::{read_decomposition, read_graph, write_decomposition, write_file, write_graph};

/// Problems accepted by `solve` and `oracle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Vc,
    Is,
    KtCover,
    Oct,
    Maxcut,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Vc => "vc",
            Problem::Is => "is",
            Problem::KtCover => "kt-cover",
            Problem::Oct => "oct",
            Problem::Maxcut => "maxcut",
        }
    }

    fn plugin(self, t: usize) -> CliResult<Box<dyn ProblemPlugin>> {
        Ok(match self {
            Problem::Vc | Problem::Is => Box::new(VertexCover),
            Problem::KtCover => Box::new(KtCover::new(t)?),
            Problem::Oct => Box::new(OddCycleTransversal),
            Problem::Maxcut => Box::new(MaxCut),
        })
    }

    fn part_names(self) -> &'static [&'static str] {
        match self {
            Problem::Vc => &["outside", "cover"],
            Problem::Is => &["independent", "outside"],
            Problem::KtCover => &["kept", "deleted"],
            Problem::Oct => &["deleted", "first side", "second side"],
            Problem::Maxcut => &["first side", "second side"],
        }
    }
}

/// Packing modes accepted by `pack`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PackMode {
    Subgraph,
    Induced,
    Scattered,
    OddMinor,
}

impl From<PackMode> for PackingMode {
    fn from(mode: PackMode) -> Self {
        match mode {
            PackMode::Subgraph => PackingMode::Subgraph,
            PackMode::Induced => PackingMode::Induced,
            PackMode::Scattered => PackingMode::Scattered,
            PackMode::OddMinor => PackingMode::OddMinor,
        }
    }
}

/// Graph families produced by `gen`.
#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Family {
    /// Complete graph on `t` vertices.
    Clique { t: usize },
    /// Cycle on `n` vertices.
    Cycle { n: usize },
    /// Complete bipartite graph with sides `a` and `b`.
    Biclique { a: usize, b: usize },
    /// Biclique `K_{t,t}` with a pendant triangle on every vertex, with its width-1 decomposition.
    NoNice { t: usize },
    /// `K_t` with every edge subdivided `s` times.
    SubdividedClique { t: usize, s: usize },
    /// Random graph `G(n, p)`; with `--planted-oct k` the first `k` vertices form an odd cycle transversal.
    Random {
        n: usize,
        p: f64,
        seed: u64,
        #[arg(long)]
        planted_oct: Option<usize>,
    },
}

/// Machine-readable result shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub problem: String,
    #[serde(serialize_with = "serialize_value")]
    pub value: ExtInt,
    pub witness: Vec<Value>,
    pub width: Option<usize>,
}

fn serialize_value<S: Serializer>(value: &ExtInt, serializer: S) -> Result<S::Ok, S::Error> {
    match value {
        ExtInt::Finite(v) => serializer.serialize_i64(*v),
        ExtInt::PosInf => serializer.serialize_str("inf"),
        ExtInt::NegInf => serializer.serialize_str("-inf"),
    }
}

/// What a command produced: the report, its human-readable rendering and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut text = serde_json::to_string(&self.report).expect("plain data serializes");
            text.push('\n');
            text
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest {
    pub problem: Problem,
    pub graph: PathBuf,
    pub decomposition: Option<PathBuf>,
    pub oct_bruteforce: bool,
    pub t: usize,
    pub certificate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRequest {
    pub problem: Problem,
    pub graph: PathBuf,
    pub t: usize,
    pub pins: Vec<(Vertex, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenRequest {
    pub family: Family,
    pub output: Option<PathBuf>,
    pub decomposition: Option<PathBuf>,
}

/// Drops all-one weights for problems that ignore weights and rejects any other weights.
fn fit_weights(plugin: &dyn ProblemPlugin, g: &mut Graph) -> CliResult<()> {
    if plugin.weighted() {
        return Ok(());
    }
    let unit_vertices = g.vertices().all(|v| g.vertex_weight(v) == 1);
    let unit_edges = g.edges().all(|(u, v)| g.edge_weight(u, v) == 1);
    if !(unit_vertices && unit_edges) {
        return Err(CliError::Usage(format!("{} does not accept weights", plugin.name())));
    }
    g.clear_weights();
    Ok(())
}

fn partition_witness(partition: &AnnotatedPartition, n: usize) -> Vec<Value> {
    (0..n).map(|v| json!(partition.part_of(v))).collect()
}

fn describe_partition(text: &mut String, problem: Problem, partition: &AnnotatedPartition) {
    for (index, name) in problem.part_names().iter().enumerate() {
        let members: Vec<String> = partition.part(index).iter().map(|v| v.to_string()).collect();
        writeln!(text, "{name}: {}", members.join(" ")).unwrap();
    }
}

/// Re-checks a witness partition before it is printed.
fn verify_witness(
    plugin: &dyn ProblemPlugin,
    g: &Graph,
    annotation: &AnnotatedPartition,
    witness: &AnnotatedPartition,
    value: ExtInt,
) -> CliResult<()> {
    if witness.domain() != g.vertex_set() {
        return Err(CliError::Verification("witness does not assign every vertex".into()));
    }
    if !annotation.is_extended_by(witness) {
        return Err(CliError::Verification("witness contradicts the pinned vertices".into()));
    }
    let evaluated = plugin.evaluate(g, witness);
    if evaluated != value {
        return Err(CliError::Verification(format!(
            "witness evaluates to {evaluated} but the optimum is {value}"
        )));
    }
    Ok(())
}

/// Converts an optimum of the underlying problem into the reported one.
fn reported_value(problem: Problem, g: &Graph, value: ExtInt) -> ExtInt {
    match (problem, value) {
        (Problem::Is, ExtInt::Finite(cover)) => ExtInt::Finite(g.total_vertex_weight() as i64 - cover),
        (Problem::Is, _) => ExtInt::NegInf,
        _ => value,
    }
}

fn solution_outcome(
    problem: Problem,
    g: &Graph,
    value: ExtInt,
    witness: Option<&AnnotatedPartition>,
    width: Option<usize>,
) -> Outcome {
    let value = reported_value(problem, g, value);
    let mut text = format!("problem: {}\nvalue: {value}\n", problem.name());
    if let Some(width) = width {
        writeln!(text, "width: {width}").unwrap();
    }
    if let Some(witness) = witness {
        describe_partition(&mut text, problem, witness);
    }
    Outcome {
        report: Report {
            problem: problem.name().to_string(),
            value,
            witness: witness.map_or_else(Vec::new, |w| partition_witness(w, g.vertex_count())),
            width,
        },
        text,
        exit_code: EXIT_OK,
    }
}

fn ensure_valid(g: &Graph, d: &RootedDecomposition) -> CliResult<()> {
    match validate_bipartite(g, d).first() {
        Some(violation) => Err(biptw::Error::InvalidDecomposition(violation.to_string()).into()),
        None => Ok(()),
    }
}

/// Checks a decomposition against its graph; exit status 1 lists every violated axiom.
pub fn cmd_validate(graph: &Path, decomposition: &Path) -> CliResult<Outcome> {
    let g = read_graph(graph)?;
    let d = read_decomposition(decomposition)?;
    let violations = validate_bipartite(&g, &d);
    let width = d.width();
    let mut text = String::new();
    if violations.is_empty() {
        writeln!(text, "valid: width {width}, {} nodes", d.node_count()).unwrap();
    } else {
        for violation in &violations {
            writeln!(text, "invalid: {violation}").unwrap();
        }
    }
    Ok(Outcome {
        report: Report {
            problem: "validate".into(),
            value: ExtInt::from(violations.len() as i64),
            witness: violations.iter().map(|v| json!(v.to_string())).collect(),
            width: Some(width),
        },
        text,
        exit_code: if violations.is_empty() { EXIT_OK } else { EXIT_INVALID },
    })
}

/// Solves a problem exactly with the dynamic program over a decomposition.
pub fn cmd_solve(request: &SolveRequest) -> CliResult<Outcome> {
    let plugin = request.problem.plugin(request.t)?;
    let mut g = read_graph(&request.graph)?;
    fit_weights(plugin.as_ref(), &mut g)?;
    let d = match (&request.decomposition, request.oct_bruteforce) {
        (Some(path), _) => read_decomposition(path)?,
        (None, true) => from_oct(&g, &oct_bruteforce(&g)?)?,
        (None, false) => {
            return Err(CliError::Usage(
                "solve needs a decomposition file or --oct-bruteforce".into(),
            ))
        }
    };
    let outcome = run_dp(&g, &d, plugin.as_ref())?;
    let witness = if request.certificate {
        let witness = extract_certificate(&g, &d, plugin.as_ref(), &outcome)?;
        if let Some(witness) = &witness {
            let free = AnnotatedPartition::empty(plugin.arity());
            verify_witness(plugin.as_ref(), &g, &free, witness, outcome.value)?;
        }
        witness
    } else {
        None
    };
    Ok(solution_outcome(
        request.problem,
        &g,
        outcome.value,
        witness.as_ref(),
        Some(d.width()),
    ))
}

/// Solves a problem by exhaustive search, optionally with pinned vertices.
pub fn cmd_oracle(request: &OracleRequest) -> CliResult<Outcome> {
    let plugin = request.problem.plugin(request.t)?;
    let mut g = read_graph(&request.graph)?;
    fit_weights(plugin.as_ref(), &mut g)?;
    let mut annotation = AnnotatedPartition::empty(plugin.arity());
    for &(v, part) in &request.pins {
        g.check_vertex(v)?;
        if part >= plugin.arity() {
            return Err(CliError::Usage(format!(
                "part {part} does not exist; {} has {} parts",
                request.problem.name(),
                plugin.arity()
            )));
        }
        annotation.assign(v, part);
    }
    let (value, witness) = hat_p_bruteforce(plugin.as_ref(), &g, &annotation)?;
    if let Some(witness) = &witness {
        verify_witness(plugin.as_ref(), &g, &annotation, witness, value)?;
    }
    Ok(solution_outcome(request.problem, &g, value, witness.as_ref(), None))
}

/// Builds a member of a graph family, with a decomposition for the families that come with one.
pub fn generate(family: &Family) -> CliResult<(Graph, Option<RootedDecomposition>)> {
    Ok(match *family {
        Family::Clique { t } => (Graph::complete(t), None),
        Family::Cycle { n } => {
            if n < 3 {
                return Err(CliError::Usage("a cycle needs at least 3 vertices".into()));
            }
            (Graph::cycle(n), None)
        }
        Family::Biclique { a, b } => (Graph::complete_bipartite(a, b), None),
        Family::NoNice { t } => {
            let (g, d) = no_nice(t)?;
            (g, Some(d))
        }
        Family::SubdividedClique { t, s } => (subdivided_clique(t, s), None),
        Family::Random {
            n,
            p,
            seed,
            planted_oct: apex,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!("edge probability {p} is not in [0, 1]")));
            }
            match apex {
                Some(apex) => {
                    let (g, d, _) = planted_oct(n, p, apex, seed)?;
                    (g, Some(d))
                }
                None => (random_graph(n, p, seed), None),
            }
        }
    })
}

/// Generates a graph; writes it to `output` (or prints it) and the decomposition to `decomposition` when asked.
pub fn cmd_gen(request: &GenRequest) -> CliResult<Outcome> {
    let (g, d) = generate(&request.family)?;
    let graph_text = write_graph(&g);
    let mut text = String::new();
    match &request.output {
        Some(path) => {
            write_file(path, &graph_text)?;
            writeln!(
                text,
                "wrote {} vertices and {} edges to {}",
                g.vertex_count(),
                g.edge_count(),
                path.display()
            )
            .unwrap();
        }
        None => text.push_str(&graph_text),
    }
    match (&request.decomposition, &d) {
        (Some(path), Some(d)) => {
            write_file(path, &write_decomposition(d))?;
            if request.output.is_some() {
                writeln!(text, "wrote a width {} decomposition to {}", d.width(), path.display()).unwrap();
            }
        }
        (Some(_), None) => {
            return Err(CliError::Usage("this family comes without a decomposition".into()));
        }
        (None, _) => {}
    }
    Ok(Outcome {
        report: Report {
            problem: "gen".into(),
            value: ExtInt::from(g.vertex_count() as i64),
            witness: g.edges().map(|(u, v)| json!([u, v])).collect(),
            width: d.as_ref().map(RootedDecomposition::width),
        },
        text,
        exit_code: EXIT_OK,
    })
}

/// Colours a graph with at most `width + 2` colours along its decomposition.
pub fn cmd_color(graph: &Path, decomposition: &Path) -> CliResult<Outcome> {
    let g = read_graph(graph)?;
    let d = read_decomposition(decomposition)?;
    ensure_valid(&g, &d)?;
    let coloring = coloring_from_decomposition(&g, &d)?;
    let used: VertexSet = coloring.iter().copied().collect();
    if used.len() > d.width() + 2 {
        return Err(CliError::Verification(format!(
            "{} colours used at width {}",
            used.len(),
            d.width()
        )));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| coloring[u] == coloring[v]) {
        return Err(CliError::Verification(format!("edge {u}-{v} is monochromatic")));
    }
    let mut text = format!("colors: {}\nwidth: {}\n", used.len(), d.width());
    for (v, c) in coloring.iter().enumerate() {
        writeln!(text, "{v} {c}").unwrap();
    }
    Ok(Outcome {
        report: Report {
            problem: "color".into(),
            value: ExtInt::from(used.len() as i64),
            witness: coloring.iter().map(|&c| json!(c)).collect(),
            width: Some(d.width()),
        },
        text,
        exit_code: EXIT_OK,
    })
}

/// Maximum packing of the pattern graph; odd-minor packing uses exhaustive search.
pub fn cmd_pack(mode: PackMode, graph: &Path, decomposition: &Path, pattern: &Path) -> CliResult<Outcome> {
    let g = read_graph(graph)?;
    let d = read_decomposition(decomposition)?;
    let h = read_graph(pattern)?;
    ensure_valid(&g, &d)?;
    let mode = PackingMode::from(mode);
    let (size, copies) = match mode {
        PackingMode::OddMinor => max_packing_bruteforce(&g, &h, mode)?,
        _ => {
            let solution = solve_packing_xp(&g, &d, &h, mode)?;
            (solution.size, solution.copies)
        }
    };
    if copies.len() != size || !is_packing(&g, &h, mode, &copies) {
        return Err(CliError::Verification(format!(
            "the reported {} packing is not valid",
            mode.name()
        )));
    }
    let mut text = format!("mode: {}\ncopies: {size}\nwidth: {}\n", mode.name(), d.width());
    for copy in &copies {
        let members: Vec<String> = copy.iter().map(|v| v.to_string()).collect();
        writeln!(text, "copy: {}", members.join(" ")).unwrap();
    }
    Ok(Outcome {
        report: Report {
            problem: format!("pack-{}", mode.name()),
            value: ExtInt::from(size as i64),
            witness: copies.iter().map(|c| json!(c)).collect(),
            width: Some(d.width()),
        },
        text,
        exit_code: EXIT_OK,
    })
}
