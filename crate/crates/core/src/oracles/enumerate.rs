//! Enumeration of vertex subsets and of small graphs up to isomorphism.

use std::collections::BTreeSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Graph, Vertex, VertexSet};

/// All subsets of `set` with exactly `size` elements, in lexicographic order.
pub fn subsets_of_size(set: &VertexSet, size: usize) -> impl Iterator<Item = VertexSet> {
    let items: Vec<Vertex> = set.iter().copied().collect();
    let n = items.len();
    let mut indices: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let current = indices.as_mut()?;
        let subset: VertexSet = current.iter().map(|&i| items[i]).collect();
        let mut i = size;
        loop {
            if i == 0 {
                indices = None;
                break;
            }
            i -= 1;
            if current[i] < n - size + i {
                current[i] += 1;
                for j in i + 1..size {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(subset)
    })
}

/// One representative of every isomorphism class of graphs on `n` vertices, in canonical order.
///
/// Classes with `m + 1` edges are reached by adding an edge to a class with `m` edges.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut layer = vec![Graph::new(n)];
    seen.insert(canonical_form(&layer[0]));
    let mut result = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for g in &layer {
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v).expect("new edge");
                    let form = canonical_form(&h);
                    if seen.insert(form.clone()) {
                        next.push(form.to_graph());
                    }
                }
            }
        }
        result.extend(next.iter().cloned());
        layer = next;
    }
    result
}
