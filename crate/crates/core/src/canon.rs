//! Canonical forms of small graphs by individualization and refinement.

use crate::graph::{Graph, Vertex};

/// Isomorphism-invariant encoding of a graph: vertex count plus the
/// upper-triangle adjacency bits under a canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub bits: Vec<u64>,
}

impl CanonicalForm {
    /// Rebuilds the canonically labelled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count;
        let mut g = Graph::new(n);
        let mut index = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.bits[index / 64] >> (index % 64) & 1 == 1 {
                    g.add_edge(u, v).expect("canonical edge in range");
                }
                index += 1;
            }
        }
        g
    }
}

/// Canonical form of `g`; isomorphic graphs (ignoring weights) get equal forms.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let adjacency: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let initial = refine(&adjacency, vec![(0..n).collect()]);
    let mut best: Option<Vec<u64>> = None;
    search(&adjacency, initial, &mut best);
    CanonicalForm {
        vertex_count: n,
        bits: best.unwrap_or_default(),
    }
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

fn refine(adjacency: &[Vec<bool>], mut cells: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    loop {
        let cell_of = cell_index(adjacency.len(), &cells);
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, Vertex)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0; cells.len()];
                    for (u, &adjacent) in adjacency[v].iter().enumerate() {
                        if adjacent {
                            counts[cell_of[u]] += 1;
                        }
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn cell_index(n: usize, cells: &[Vec<Vertex>]) -> Vec<usize> {
    let mut cell_of = vec![0; n];
    for (i, cell) in cells.iter().enumerate() {
        for &v in cell {
            cell_of[v] = i;
        }
    }
    cell_of
}

fn search(adjacency: &[Vec<bool>], cells: Vec<Vec<Vertex>>, best: &mut Option<Vec<u64>>) {
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(target) = target else {
        let order: Vec<Vertex> = cells.into_iter().flatten().collect();
        let code = encode(adjacency, &order);
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        search(adjacency, refine(adjacency, split), best);
    }
}

fn encode(adjacency: &[Vec<bool>], order: &[Vertex]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    let mut index = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adjacency[order[i]][order[j]] {
                bits[index / 64] |= 1 << (index % 64);
            }
            index += 1;
        }
    }
    bits
}

/// Whether `h` is isomorphic to a spanning subgraph of `g` (equal vertex counts required).
pub fn contains_spanning(g: &Graph, h: &Graph) -> bool {
    let n = h.vertex_count();
    if g.vertex_count() != n || g.edge_count() < h.edge_count() {
        return false;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_embedding(g, h, &order, 0, &mut image, &mut used)
}

fn extend_embedding(
    g: &Graph,
    h: &Graph,
    order: &[Vertex],
    depth: usize,
    image: &mut [Vertex],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for candidate in g.vertices() {
        if used[candidate] || g.degree(candidate) < h.degree(x) {
            continue;
        }
        let consistent = h
            .neighbors(x)
            .iter()
            .all(|&y| image[y] == usize::MAX || g.has_edge(candidate, image[y]));
        if consistent {
            image[x] = candidate;
            used[candidate] = true;
            if extend_embedding(g, h, order, depth + 1, image, used) {
                return true;
            }
            used[candidate] = false;
            image[x] = usize::MAX;
        }
    }
    false
}
