//! Ordered partitions of vertex subsets (annotations).

use std::collections::BTreeMap;

use crate::graph::{Vertex, VertexSet};

/// An ordered `p`-partition of a vertex subset; empty parts are allowed and order matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnotatedPartition {
    parts: Vec<VertexSet>,
}

impl AnnotatedPartition {
    /// The partition of the empty set into `p` empty parts.
    pub fn empty(p: usize) -> Self {
        AnnotatedPartition {
            parts: vec![VertexSet::new(); p],
        }
    }

    /// Builds a partition from its parts, returning `None` if two parts overlap.
    pub fn from_parts(parts: Vec<VertexSet>) -> Option<Self> {
        let total: usize = parts.iter().map(VertexSet::len).sum();
        let union: VertexSet = parts.iter().flatten().copied().collect();
        (union.len() == total).then_some(AnnotatedPartition { parts })
    }

    /// Builds a partition from a `vertex -> part` assignment.
    pub fn from_assignment(p: usize, assignment: impl IntoIterator<Item = (Vertex, usize)>) -> Self {
        let mut parts = vec![VertexSet::new(); p];
        for (v, part) in assignment {
            parts[part].insert(v);
        }
        AnnotatedPartition { parts }
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part(&self, index: usize) -> &VertexSet {
        &self.parts[index]
    }

    /// Index of the part containing `v`, if annotated.
    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.parts.iter().position(|part| part.contains(&v))
    }

    pub fn domain(&self) -> VertexSet {
        self.parts.iter().flatten().copied().collect()
    }

    pub fn domain_len(&self) -> usize {
        self.parts.iter().map(VertexSet::len).sum()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.part_of(v).is_some()
    }

    /// Moves (or adds) `v` into part `index`.
    pub fn assign(&mut self, v: Vertex, index: usize) {
        for part in &mut self.parts {
            part.remove(&v);
        }
        self.parts[index].insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        for part in &mut self.parts {
            part.remove(&v);
        }
    }

    /// The partition `𝒳 ∩ keep`.
    pub fn restrict(&self, keep: &VertexSet) -> Self {
        AnnotatedPartition {
            parts: self
                .parts
                .iter()
                .map(|part| part.intersection(keep).copied().collect())
                .collect(),
        }
    }

    /// Relabels every vertex through `map`; vertices missing from `map` are dropped.
    pub fn map_vertices(&self, map: &BTreeMap<Vertex, Vertex>) -> Self {
        AnnotatedPartition {
            parts: self
                .parts
                .iter()
                .map(|part| part.iter().filter_map(|v| map.get(v).copied()).collect())
                .collect(),
        }
    }

    /// Whether every part of `self` is contained in the same-index part of `other`.
    pub fn is_extended_by(&self, other: &AnnotatedPartition) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(small, big)| small.is_subset(big))
    }

    /// `vertex -> part` pairs in vertex order.
    pub fn assignment(&self) -> BTreeMap<Vertex, usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, part)| part.iter().map(move |&v| (v, i)))
            .collect()
    }

    /// Base-`p` code of the restriction to `order`, read with the first vertex as least significant digit.
    ///
    /// Vertices of `order` missing from the partition yield `None`.
    pub fn code(&self, order: &[Vertex]) -> Option<usize> {
        let p = self.parts.len();
        let mut code = 0;
        for &v in order.iter().rev() {
            code = code * p + self.part_of(v)?;
        }
        Some(code)
    }

    /// Inverse of [`AnnotatedPartition::code`].
    pub fn from_code(p: usize, order: &[Vertex], mut code: usize) -> Self {
        let mut result = AnnotatedPartition::empty(p);
        for &v in order {
            result.parts[code % p].insert(v);
            code /= p;
        }
        result
    }
}

/// All `p^|s|` ordered partitions of `s`, in lexicographic `(vertex, part)` order.
pub fn enumerate_partitions(s: &VertexSet, p: usize) -> impl Iterator<Item = AnnotatedPartition> {
    let order: Vec<Vertex> = s.iter().copied().collect();
    let total = if p == 0 {
        usize::from(order.is_empty())
    } else {
        p.pow(order.len() as u32)
    };
    (0..total).map(move |index| {
        let mut result = AnnotatedPartition::empty(p);
        let mut rest = index;
        for &v in order.iter().rev() {
            result.parts[rest % p].insert(v);
            rest /= p;
        }
        result
    })
}
