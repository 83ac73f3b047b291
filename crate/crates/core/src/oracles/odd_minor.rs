//! Two independent exhaustive tests for odd-minor containment.
//!
//! [`is_odd_minor_expansion`] searches for branch sets with a two-colouring
//! that is proper inside every branch set and monochromatic on the edges
//! realizing pattern edges. [`is_odd_minor_contraction`] applies the
//! operations directly: deleting vertices, deleting edges and contracting
//! every edge of an edge cut.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::canon::{canonical_form, contains_spanning, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::guard;

/// Default number of search states the contraction test may visit.
pub const DEFAULT_STATE_LIMIT: u64 = 400_000;

/// Largest host graph whose search states are deduplicated up to isomorphism.
const CANONICAL_MEMO_LIMIT: usize = 9;

/// Branch sets realizing a pattern as an odd-minor, with the certifying colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddExpansion {
    /// Branch set of every pattern vertex.
    pub branch_sets: Vec<VertexSet>,
    /// Colour of every vertex in the union of the branch sets.
    pub coloring: BTreeMap<Vertex, bool>,
    /// For every pattern edge `(a, b)`, a host edge from branch set `a` to branch set `b`.
    pub realizations: BTreeMap<(Vertex, Vertex), (Vertex, Vertex)>,
}

impl OddExpansion {
    /// Checks disjointness, connectivity through bichromatic edges and the monochromatic realizations.
    pub fn is_valid(&self, h: &Graph, g: &Graph) -> bool {
        if self.branch_sets.len() != h.vertex_count() {
            return false;
        }
        let mut used = VertexSet::new();
        for set in &self.branch_sets {
            if set.is_empty() || !set.iter().all(|&v| used.insert(v) && self.coloring.contains_key(&v)) {
                return false;
            }
            if !bichromatic_connected(g, set, &self.coloring) {
                return false;
            }
        }
        h.edges().all(|(a, b)| match self.realizations.get(&(a, b)) {
            Some(&(x, y)) => {
                g.has_edge(x, y)
                    && self.branch_sets[a].contains(&x)
                    && self.branch_sets[b].contains(&y)
                    && self.coloring[&x] == self.coloring[&y]
            }
            None => false,
        })
    }
}

fn bichromatic_connected(g: &Graph, set: &VertexSet, coloring: &BTreeMap<Vertex, bool>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen: VertexSet = [start].into_iter().collect();
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if set.contains(&v) && coloring[&u] != coloring[&v] && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen.len() == set.len()
}

/// Pattern vertices ordered so that each one after the first of its component has an earlier neighbor.
fn connected_order(h: &Graph) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(h.vertex_count());
    let mut seen = vec![false; h.vertex_count()];
    for start in h.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in h.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

struct ExpansionSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<Vertex>,
    max_branch: usize,
    branch: Vec<Option<VertexSet>>,
    color: Vec<Option<bool>>,
}

impl ExpansionSearch<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let used = self.color.iter().filter(|c| c.is_some()).count();
        if self.g.vertex_count() - used < self.order.len() - depth {
            return false;
        }
        let x = self.order[depth];
        let placed: Vec<Vertex> = self
            .h
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.branch[y].is_some())
            .collect();
        let seeds: Vec<(Vertex, bool)> = match placed.first() {
            None => self
                .g
                .vertices()
                .filter(|&v| self.color[v].is_none())
                .map(|v| (v, false))
                .collect(),
            Some(&y) => {
                let mut seeds = Vec::new();
                for &b in self.branch[y].as_ref().expect("placed") {
                    let c = self.color[b].expect("coloured");
                    for &v in self.g.neighbors(b) {
                        if self.color[v].is_none() {
                            seeds.push((v, c));
                        }
                    }
                }
                seeds.sort_unstable();
                seeds.dedup();
                seeds
            }
        };
        let mut tried: HashSet<Vec<(Vertex, bool)>> = HashSet::new();
        for (seed, seed_color) in seeds {
            for candidate in self.grow(seed, seed_color) {
                if !tried.insert(candidate.clone()) {
                    continue;
                }
                if !placed.iter().all(|&y| self.touches_monochromatic(&candidate, y)) {
                    continue;
                }
                for &(v, c) in &candidate {
                    self.color[v] = Some(c);
                }
                self.branch[x] = Some(candidate.iter().map(|&(v, _)| v).collect());
                if self.run(depth + 1) {
                    return true;
                }
                self.branch[x] = None;
                for &(v, _) in &candidate {
                    self.color[v] = None;
                }
            }
        }
        false
    }

    fn touches_monochromatic(&self, candidate: &[(Vertex, bool)], y: Vertex) -> bool {
        let target = self.branch[y].as_ref().expect("placed");
        candidate.iter().any(|&(v, c)| {
            self.g
                .neighbors(v)
                .iter()
                .any(|b| target.contains(b) && self.color[*b] == Some(c))
        })
    }

    /// Coloured sets containing the seed, of size at most `max_branch`, connected through bichromatic edges.
    fn grow(&self, seed: Vertex, seed_color: bool) -> Vec<Vec<(Vertex, bool)>> {
        let mut found: HashSet<Vec<(Vertex, bool)>> = HashSet::new();
        let mut stack = vec![vec![(seed, seed_color)]];
        while let Some(set) = stack.pop() {
            if !found.insert(set.clone()) || set.len() == self.max_branch {
                continue;
            }
            for &(u, cu) in &set {
                for &v in self.g.neighbors(u) {
                    if self.color[v].is_some() || set.iter().any(|&(w, _)| w == v) {
                        continue;
                    }
                    let mut bigger = set.clone();
                    bigger.push((v, !cu));
                    bigger.sort_unstable();
                    if !found.contains(&bigger) {
                        stack.push(bigger);
                    }
                }
            }
        }
        let mut sets: Vec<_> = found.into_iter().collect();
        sets.sort();
        sets
    }
}

/// Searches for an odd expansion of `h` in `g`, deepening the allowed branch-set size.
pub fn find_odd_expansion(h: &Graph, g: &Graph) -> Result<Option<OddExpansion>> {
    let (nh, ng) = (h.vertex_count(), g.vertex_count());
    guard::check("host graph size for the expansion search", ng as u64, 24)?;
    if nh > ng || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    if nh == 0 {
        return Ok(Some(OddExpansion {
            branch_sets: Vec::new(),
            coloring: BTreeMap::new(),
            realizations: BTreeMap::new(),
        }));
    }
    for max_branch in 1..=ng - nh + 1 {
        let mut search = ExpansionSearch {
            h,
            g,
            order: connected_order(h),
            max_branch,
            branch: vec![None; nh],
            color: vec![None; ng],
        };
        if search.run(0) {
            let branch_sets: Vec<VertexSet> = search.branch.into_iter().map(|b| b.expect("complete")).collect();
            let coloring: BTreeMap<Vertex, bool> = search
                .color
                .iter()
                .enumerate()
                .filter_map(|(v, c)| c.map(|c| (v, c)))
                .collect();
            let mut realizations = BTreeMap::new();
            for (a, b) in h.edges() {
                let edge = branch_sets[a]
                    .iter()
                    .flat_map(|&x| g.neighbors(x).iter().map(move |&y| (x, y)))
                    .find(|&(x, y)| branch_sets[b].contains(&y) && coloring[&x] == coloring[&y])
                    .ok_or_else(|| Error::Internal("expansion lost an edge".into()))?;
                realizations.insert((a, b), edge);
            }
            return Ok(Some(OddExpansion {
                branch_sets,
                coloring,
                realizations,
            }));
        }
    }
    Ok(None)
}

/// Odd-minor test through the colouring characterization.
pub fn is_odd_minor_expansion(h: &Graph, g: &Graph) -> Result<bool> {
    Ok(find_odd_expansion(h, g)?.is_some())
}

/// Contracts every edge between `side` and its complement, dropping loops and parallel edges.
pub fn contract_cut(g: &Graph, side: &[bool]) -> Graph {
    let n = g.vertex_count();
    let mut class: Vec<usize> = (0..n).collect();
    fn find(class: &mut [usize], v: usize) -> usize {
        let mut root = v;
        while class[root] != root {
            root = class[root];
        }
        class[v] = root;
        root
    }
    for (u, v) in g.edges() {
        if side[u] != side[v] {
            let (a, b) = (find(&mut class, u), find(&mut class, v));
            if a != b {
                class[a.max(b)] = a.min(b);
            }
        }
    }
    let mut index = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut class, v);
        let next = index.len();
        index.entry(root).or_insert(next);
    }
    let mut result = Graph::new(index.len());
    for (u, v) in g.edges() {
        let (a, b) = (index[&find(&mut class, u)], index[&find(&mut class, v)]);
        if a != b {
            result.add_edge(a, b).expect("classes are in range");
        }
    }
    result
}

/// Graphs reachable from `g` by one odd-minor operation, contractions first.
fn successors(g: &Graph) -> Vec<Graph> {
    let n = g.vertex_count();
    let mut next = Vec::new();
    if n >= 2 {
        for mask in 0u64..(1 << (n - 1)) {
            let side: Vec<bool> = (0..n).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect();
            if g.edges().any(|(u, v)| side[u] != side[v]) {
                next.push(contract_cut(g, &side));
            }
        }
    }
    for v in g.vertices() {
        next.push(g.without(&[v].into_iter().collect()).0);
    }
    for (u, v) in g.edges() {
        let mut smaller = g.clone();
        smaller.remove_edge(u, v);
        next.push(smaller);
    }
    next
}

#[derive(Hash, PartialEq, Eq)]
enum StateKey {
    Canonical(CanonicalForm),
    Labelled(usize, Vec<(Vertex, Vertex)>),
}

fn state_key(g: &Graph) -> StateKey {
    if g.vertex_count() <= CANONICAL_MEMO_LIMIT {
        StateKey::Canonical(canonical_form(g))
    } else {
        StateKey::Labelled(g.vertex_count(), g.edges().collect())
    }
}

/// Odd-minor test by searching sequences of deletions and cut contractions.
///
/// Fails with a size error when the search visits more states than the guard allows.
pub fn is_odd_minor_contraction(h: &Graph, g: &Graph) -> Result<bool> {
    let budget = guard::limit(DEFAULT_STATE_LIMIT);
    let mut visited: HashSet<StateKey> = HashSet::new();
    let mut stack = vec![g.clone()];
    visited.insert(state_key(g));
    while let Some(current) = stack.pop() {
        if reached(h, &current) {
            return Ok(true);
        }
        let next = successors(&current);
        if next.iter().any(|s| reached(h, s)) {
            return Ok(true);
        }
        for state in next.into_iter().rev() {
            if state.vertex_count() <= h.vertex_count() || state.edge_count() < h.edge_count() {
                continue;
            }
            if visited.insert(state_key(&state)) {
                if visited.len() as u64 > budget {
                    return Err(Error::SizeGuard(format!(
                        "odd-minor search visited more than {budget} states"
                    )));
                }
                stack.push(state);
            }
        }
    }
    Ok(false)
}

fn reached(h: &Graph, state: &Graph) -> bool {
    state.vertex_count() == h.vertex_count() && contains_spanning(state, h)
}

/// Canonical forms of every odd-minor of `g` (including `g` itself and the empty graph).
pub fn odd_minor_closure(g: &Graph) -> Result<HashSet<CanonicalForm>> {
    guard::check("host graph size for the closure", g.vertex_count() as u64, 8)?;
    let mut closure = HashSet::new();
    let start = canonical_form(g);
    closure.insert(start.clone());
    let mut stack = vec![start];
    while let Some(form) = stack.pop() {
        for next in successors(&form.to_graph()) {
            let key = canonical_form(&next);
            if closure.insert(key.clone()) {
                stack.push(key);
            }
        }
    }
    Ok(closure)
}
