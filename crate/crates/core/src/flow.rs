//! Integral maximum flow (Dinic) and the cut problems built on it.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet, Weight};

/// A directed network with nonnegative integral capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<(usize, usize, u64)>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) {
        self.arcs.push((from, to, capacity));
    }
}

/// Result of a maximum-flow computation with its minimum-cut certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    /// Indices into `FlowNetwork::arcs` of the arcs leaving the source side.
    pub cut_arcs: Vec<usize>,
    pub source_side: Vec<bool>,
}

struct Residual {
    to: usize,
    capacity: u64,
}

/// Maximum `source → sink` flow by Dinic's algorithm.
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    if net.source == net.sink || net.source >= net.node_count || net.sink >= net.node_count {
        return Err(Error::Precondition("source and sink must be distinct nodes".into()));
    }
    let n = net.node_count;
    let mut residual: Vec<Residual> = Vec::with_capacity(2 * net.arcs.len());
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(from, to, capacity) in &net.arcs {
        if from >= n || to >= n {
            return Err(Error::Precondition(format!("arc {from}->{to} out of range")));
        }
        out[from].push(residual.len());
        residual.push(Residual { to, capacity });
        out[to].push(residual.len());
        residual.push(Residual { to: from, capacity: 0 });
    }
    let mut value: u64 = 0;
    loop {
        let level = bfs_levels(&residual, &out, net.source);
        if level[net.sink] == usize::MAX {
            break;
        }
        let mut next_arc = vec![0; n];
        loop {
            let pushed = augment(
                &mut residual,
                &out,
                &level,
                &mut next_arc,
                net.source,
                net.sink,
                u64::MAX,
            );
            if pushed == 0 {
                break;
            }
            value = value.saturating_add(pushed);
        }
    }
    let level = bfs_levels(&residual, &out, net.source);
    let source_side: Vec<bool> = level.iter().map(|&l| l != usize::MAX).collect();
    let cut_arcs = net
        .arcs
        .iter()
        .enumerate()
        .filter(|(_, &(from, to, _))| source_side[from] && !source_side[to])
        .map(|(i, _)| i)
        .collect();
    Ok(MaxFlow {
        value,
        cut_arcs,
        source_side,
    })
}

fn bfs_levels(residual: &[Residual], out: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut level = vec![usize::MAX; out.len()];
    level[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &a in &out[u] {
            let arc = &residual[a];
            if arc.capacity > 0 && level[arc.to] == usize::MAX {
                level[arc.to] = level[u] + 1;
                queue.push_back(arc.to);
            }
        }
    }
    level
}

fn augment(
    residual: &mut [Residual],
    out: &[Vec<usize>],
    level: &[usize],
    next_arc: &mut [usize],
    u: usize,
    sink: usize,
    limit: u64,
) -> u64 {
    if u == sink {
        return limit;
    }
    while next_arc[u] < out[u].len() {
        let a = out[u][next_arc[u]];
        let (to, capacity) = (residual[a].to, residual[a].capacity);
        if capacity > 0 && level[to] == level[u] + 1 {
            let pushed = augment(residual, out, level, next_arc, to, sink, limit.min(capacity));
            if pushed > 0 {
                residual[a].capacity -= pushed;
                residual[a ^ 1].capacity += pushed;
                return pushed;
            }
        }
        next_arc[u] += 1;
    }
    0
}

/// Minimum-weight vertex cover of a bipartite graph, using the graph's vertex weights.
pub fn bipartite_min_vertex_cover(g: &Graph) -> Result<(VertexSet, Weight)> {
    let (side_a, side_b) = g.bipartition().ok_or(Error::NotBipartite)?;
    let n = g.vertex_count();
    let infinite = g.total_vertex_weight().saturating_add(1);
    let (source, sink) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2, source, sink);
    for &a in &side_a {
        net.add_arc(source, a, g.vertex_weight(a));
    }
    for &b in &side_b {
        net.add_arc(b, sink, g.vertex_weight(b));
    }
    for (u, v) in g.edges() {
        let (a, b) = if side_a.contains(&u) { (u, v) } else { (v, u) };
        net.add_arc(a, b, infinite);
    }
    let flow = max_flow(&net)?;
    let cover: VertexSet = side_a
        .iter()
        .filter(|&&a| !flow.source_side[a])
        .chain(side_b.iter().filter(|&&b| flow.source_side[b]))
        .copied()
        .collect();
    let weight = g.vertex_set_weight(&cover);
    debug_assert_eq!(weight, flow.value);
    Ok((cover, weight))
}

/// Minimum-weight set of non-terminal vertices separating `side_a` from `side_b`.
pub fn min_vertex_cut(g: &Graph, side_a: &VertexSet, side_b: &VertexSet) -> Result<(VertexSet, Weight)> {
    if !side_a.is_disjoint(side_b) {
        return Err(Error::Precondition("terminal sides overlap".into()));
    }
    for &a in side_a {
        g.check_vertex(a)?;
        if g.neighbors(a).iter().any(|b| side_b.contains(b)) {
            return Err(Error::Infeasible(format!("terminal {a} is adjacent to the other side")));
        }
    }
    for &b in side_b {
        g.check_vertex(b)?;
    }
    let n = g.vertex_count();
    let infinite = g.total_vertex_weight().saturating_add(1);
    let (source, sink) = (2 * n, 2 * n + 1);
    let vertex_in = |v: Vertex| 2 * v;
    let vertex_out = |v: Vertex| 2 * v + 1;
    let mut net = FlowNetwork::new(2 * n + 2, source, sink);
    for v in g.vertices() {
        let terminal = side_a.contains(&v) || side_b.contains(&v);
        let capacity = if terminal { infinite } else { g.vertex_weight(v) };
        net.add_arc(vertex_in(v), vertex_out(v), capacity);
    }
    for (u, v) in g.edges() {
        net.add_arc(vertex_out(u), vertex_in(v), infinite);
        net.add_arc(vertex_out(v), vertex_in(u), infinite);
    }
    for &a in side_a {
        net.add_arc(source, vertex_in(a), infinite);
    }
    for &b in side_b {
        net.add_arc(vertex_out(b), sink, infinite);
    }
    let flow = max_flow(&net)?;
    if flow.value >= infinite {
        return Err(Error::Infeasible("terminals cannot be separated".into()));
    }
    let cut: VertexSet = g
        .vertices()
        .filter(|&v| flow.source_side[vertex_in(v)] && !flow.source_side[vertex_out(v)])
        .collect();
    Ok((cut, flow.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_parallel_paths() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 7);
        assert_eq!(max_flow(&net).unwrap().value, 7);

        let mut net = FlowNetwork::new(4, 0, 3);
        net.add_arc(0, 1, 3);
        net.add_arc(1, 3, 3);
        net.add_arc(0, 2, 4);
        net.add_arc(2, 3, 4);
        let flow = max_flow(&net).unwrap();
        assert_eq!(flow.value, 7);
        let cut: u64 = flow.cut_arcs.iter().map(|&i| net.arcs[i].2).sum();
        assert_eq!(cut, 7);
    }

    #[test]
    fn vertex_cover_examples() {
        let (_, w) = bipartite_min_vertex_cover(&Graph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(w, 3);
        let mut p3 = Graph::path(3);
        p3.set_vertex_weight(1, 5);
        let (cover, w) = bipartite_min_vertex_cover(&p3).unwrap();
        assert_eq!(cover, [0, 2].into_iter().collect());
        assert_eq!(w, 2);
        assert_eq!(bipartite_min_vertex_cover(&Graph::cycle(5)), Err(Error::NotBipartite));
    }

    #[test]
    fn vertex_cut_examples() {
        let a: VertexSet = [0].into_iter().collect();
        let b: VertexSet = [2].into_iter().collect();
        let (cut, w) = min_vertex_cut(&Graph::path(3), &a, &b).unwrap();
        assert_eq!((cut, w), ([1].into_iter().collect(), 1));

        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let b: VertexSet = [3].into_iter().collect();
        let (cut, w) = min_vertex_cut(&diamond, &a, &b).unwrap();
        assert_eq!((cut, w), ([1, 2].into_iter().collect(), 2));

        let b: VertexSet = [1].into_iter().collect();
        assert!(matches!(
            min_vertex_cut(&Graph::path(2), &a, &b),
            Err(Error::Infeasible(_))
        ));
    }
}
