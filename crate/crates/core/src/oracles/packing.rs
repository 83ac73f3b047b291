//! Maximum packings of a pattern graph by exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use crate::canon::{contains_spanning, isomorphic};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::guard;
use crate::oracles::{is_odd_minor_contraction, subsets_of_size, DEFAULT_SEARCH_LIMIT};

/// Which copies of the pattern count and how they may interact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PackingMode {
    /// Vertex-disjoint subgraphs isomorphic to the pattern.
    Subgraph,
    /// Vertex-disjoint induced subgraphs isomorphic to the pattern.
    Induced,
    /// Vertex-disjoint subgraphs with no host edge between distinct copies.
    Scattered,
    /// Vertex-disjoint subgraphs each containing the pattern as an odd-minor.
    OddMinor,
}

impl PackingMode {
    pub const ALL: [PackingMode; 4] = [
        PackingMode::Subgraph,
        PackingMode::Induced,
        PackingMode::Scattered,
        PackingMode::OddMinor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PackingMode::Subgraph => "subgraph",
            PackingMode::Induced => "induced",
            PackingMode::Scattered => "scattered",
            PackingMode::OddMinor => "odd-minor",
        }
    }
}

impl fmt::Display for PackingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PackingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PackingMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown packing mode {s:?}")))
    }
}

/// Vertex sets that can host one copy of `h` under `mode`.
///
/// For the odd-minor mode only inclusion-minimal sets are listed.
pub fn candidate_sets(g: &Graph, h: &Graph, mode: PackingMode) -> Result<Vec<VertexSet>> {
    let all = g.vertex_set();
    let k = h.vertex_count();
    if k == 0 || k > g.vertex_count() {
        return Ok(Vec::new());
    }
    let host = |set: &VertexSet| g.induced_subgraph(set).expect("subset of vertices").0;
    match mode {
        PackingMode::Subgraph | PackingMode::Scattered => Ok(subsets_of_size(&all, k)
            .filter(|s| contains_spanning(&host(s), h))
            .collect()),
        PackingMode::Induced => Ok(subsets_of_size(&all, k).filter(|s| isomorphic(&host(s), h)).collect()),
        PackingMode::OddMinor => {
            guard::check("host graph size for odd-minor packing", g.vertex_count() as u64, 10)?;
            let mut minimal: Vec<VertexSet> = Vec::new();
            for size in k..=g.vertex_count() {
                for set in subsets_of_size(&all, size) {
                    if minimal.iter().any(|m| m.is_subset(&set)) {
                        continue;
                    }
                    if is_odd_minor_contraction(h, &host(&set))? {
                        minimal.push(set);
                    }
                }
            }
            Ok(minimal)
        }
    }
}

struct Selection<'a> {
    g: &'a Graph,
    scattered: bool,
    by_minimum: Vec<Vec<&'a VertexSet>>,
    min_size: usize,
    steps: u64,
    budget: u64,
    chosen: Vec<&'a VertexSet>,
    blocked: Vec<bool>,
    best: Vec<VertexSet>,
}

impl Selection<'_> {
    fn run(&mut self, v: Vertex) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::SizeGuard(format!(
                "packing selection explored more than {} branches",
                self.budget
            )));
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.iter().map(|&s| s.clone()).collect();
        }
        let n = self.g.vertex_count();
        if v >= n || self.chosen.len() + (n - v) / self.min_size <= self.best.len() {
            return Ok(());
        }
        let options = self.by_minimum[v].clone();
        for set in options {
            if set.iter().any(|&u| self.blocked[u]) {
                continue;
            }
            let mut newly = Vec::new();
            for &u in set {
                let reach: Vec<Vertex> = if self.scattered {
                    std::iter::once(u).chain(self.g.neighbors(u).iter().copied()).collect()
                } else {
                    vec![u]
                };
                for w in reach {
                    if !self.blocked[w] {
                        self.blocked[w] = true;
                        newly.push(w);
                    }
                }
            }
            self.chosen.push(set);
            self.run(v + 1)?;
            self.chosen.pop();
            for w in newly {
                self.blocked[w] = false;
            }
        }
        self.run(v + 1)
    }
}

/// Largest collection of pairwise disjoint candidates, with no host edges between them when `scattered`.
pub fn max_disjoint_selection(g: &Graph, candidates: &[VertexSet], scattered: bool) -> Result<Vec<VertexSet>> {
    let mut by_minimum: Vec<Vec<&VertexSet>> = vec![Vec::new(); g.vertex_count()];
    for set in candidates {
        if let Some(&first) = set.iter().next() {
            by_minimum[first].push(set);
        }
    }
    let mut selection = Selection {
        g,
        scattered,
        by_minimum,
        min_size: candidates.iter().map(|s| s.len()).min().unwrap_or(1).max(1),
        steps: 0,
        budget: guard::limit(DEFAULT_SEARCH_LIMIT),
        chosen: Vec::new(),
        blocked: vec![false; g.vertex_count()],
        best: Vec::new(),
    };
    selection.run(0)?;
    Ok(selection.best)
}

/// Maximum number of disjoint copies of `h` in `g` under `mode`, with the vertex sets of one optimal packing.
pub fn max_packing_bruteforce(g: &Graph, h: &Graph, mode: PackingMode) -> Result<(usize, Vec<VertexSet>)> {
    if h.vertex_count() == 0 {
        return Err(Error::Precondition("the pattern must have at least one vertex".into()));
    }
    let candidates = candidate_sets(g, h, mode)?;
    let packing = max_disjoint_selection(g, &candidates, mode == PackingMode::Scattered)?;
    Ok((packing.len(), packing))
}
