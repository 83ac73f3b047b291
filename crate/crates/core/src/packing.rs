//! Exact packing of a 2-connected non-bipartite pattern on a graph with a bipartite tree decomposition.
//!
//! Every node keeps a table indexed by [`PackState`]: the pieces of copies
//! that cross its adhesion, the adhesion vertices used by copies lying
//! entirely below it, and (for scattered packing) the adhesion vertices
//! used by copies it never sees. A node entry is computed by placing the
//! crossing pieces and any new copies meeting the apex set, either on
//! explicit bag vertices or abstractly inside a child, and then reading
//! the children's tables. Children sharing the same free vertex compete
//! for it, and only the best claimant per vertex is considered.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::canon::{contains_spanning, isomorphic};
use crate::decomposition::{validate_bipartite, Node, RootedDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::guard;
use crate::oracles::{contains_subgraph, PackingMode};

/// Default number of search steps the solver may take.
pub const DEFAULT_STEP_LIMIT: u64 = 1 << 26;

/// Where one pattern vertex of a crossing copy lies relative to an adhesion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// Mapped onto this adhesion vertex.
    Boundary(Vertex),
    /// Realized strictly below the adhesion.
    Inside,
    /// Realized strictly above the adhesion.
    Outside,
}

/// One copy of the pattern seen from an adhesion: a slot per pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub slots: Vec<Slot>,
}

impl Piece {
    pub fn boundary(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.slots.iter().filter_map(|s| match s {
            Slot::Boundary(v) => Some(*v),
            _ => None,
        })
    }

    pub fn has_inside(&self) -> bool {
        self.slots.contains(&Slot::Inside)
    }
}

/// A partial copy of several disjoint pattern copies: the pieces lying on or below an adhesion.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialCopy {
    pub pieces: Vec<Piece>,
}

/// Table key of a node: crossing pieces plus the status of the remaining adhesion vertices.
///
/// Adhesion vertices in none of the pieces, `below` or `foreign` are unused
/// by every copy that reaches the subtree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackState {
    pub copy: PartialCopy,
    /// Used by a copy lying entirely in the subtree.
    pub below: VertexSet,
    /// Used by a copy with no vertex strictly below the adhesion.
    pub foreign: VertexSet,
}

/// The pattern with its adjacency matrix and automorphism group.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    adjacent: Vec<Vec<bool>>,
    automorphisms: Vec<Vec<Vertex>>,
    orders: Vec<Vec<Vertex>>,
}

impl Pattern {
    /// Accepts only 2-connected non-bipartite patterns.
    pub fn new(h: &Graph) -> Result<Self> {
        if !h.is_biconnected() {
            return Err(Error::Precondition("the pattern must be 2-connected".into()));
        }
        if h.is_bipartite() {
            return Err(Error::Precondition("the pattern must not be bipartite".into()));
        }
        guard::check("pattern size", h.vertex_count() as u64, 8)?;
        let k = h.vertex_count();
        let adjacent: Vec<Vec<bool>> = (0..k).map(|u| (0..k).map(|v| h.has_edge(u, v)).collect()).collect();
        let mut automorphisms = Vec::new();
        let mut image = Vec::with_capacity(k);
        collect_automorphisms(&adjacent, &mut image, &mut vec![false; k], &mut automorphisms);
        let orders = (0..k)
            .map(|start| breadth_first(h, &[start].into_iter().collect()))
            .collect();
        Ok(Pattern {
            graph: h.clone(),
            adjacent,
            automorphisms,
            orders,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len()
    }

    fn canonical_piece(&self, piece: &Piece) -> Piece {
        self.automorphisms
            .iter()
            .map(|map| Piece {
                slots: map.iter().map(|&x| piece.slots[x]).collect(),
            })
            .min()
            .expect("the identity is an automorphism")
    }

    /// The representative of `state` up to pattern automorphisms and piece order.
    pub fn canonical_state(&self, state: &PackState) -> PackState {
        let mut pieces: Vec<Piece> = state.copy.pieces.iter().map(|p| self.canonical_piece(p)).collect();
        pieces.sort();
        PackState {
            copy: PartialCopy { pieces },
            below: state.below.clone(),
            foreign: state.foreign.clone(),
        }
    }

    /// Whether `piece` has a boundary vertex and no pattern edge between its inside and outside parts.
    fn piece_is_consistent(&self, piece: &Piece) -> bool {
        piece.boundary().next().is_some()
            && self.graph.edges().all(|(x, y)| {
                !matches!(
                    (piece.slots[x], piece.slots[y]),
                    (Slot::Inside, Slot::Outside) | (Slot::Outside, Slot::Inside)
                )
            })
    }
}

fn collect_automorphisms(
    adjacent: &[Vec<bool>],
    image: &mut Vec<Vertex>,
    used: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) {
    let k = adjacent.len();
    let x = image.len();
    if x == k {
        out.push(image.clone());
        return;
    }
    for y in 0..k {
        if used[y] || (0..x).any(|z| adjacent[x][z] != adjacent[y][image[z]]) {
            continue;
        }
        used[y] = true;
        image.push(y);
        collect_automorphisms(adjacent, image, used, out);
        image.pop();
        used[y] = false;
    }
}

/// Vertices of `h` outside `start` in breadth-first order from `start`.
fn breadth_first(h: &Graph, start: &VertexSet) -> Vec<Vertex> {
    let mut seen: VertexSet = start.clone();
    let mut queue: VecDeque<Vertex> = start.iter().copied().collect();
    let mut order = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &v in h.neighbors(u) {
            if seen.insert(v) {
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}

/// All partial copies of at most `copies` disjoint pattern copies whose boundary graph is a subgraph of `g[x]`.
///
/// The result is deduplicated up to pattern automorphisms and contains the empty partial copy.
pub fn enumerate_partial_copies(g: &Graph, x: &VertexSet, h: &Graph, copies: usize) -> Result<Vec<PartialCopy>> {
    let pattern = Pattern::new(h)?;
    for &v in x {
        g.check_vertex(v)?;
    }
    let k = pattern.size();
    let options = (x.len() + 2) as u64;
    guard::check(
        "partial-copy candidates",
        options.saturating_pow((k * copies.min(x.len())) as u32),
        DEFAULT_STEP_LIMIT,
    )?;
    let boundary: Vec<Vertex> = x.iter().copied().collect();
    let mut pieces: BTreeSet<Piece> = BTreeSet::new();
    let mut slots = Vec::with_capacity(k);
    collect_pieces(g, &pattern, &boundary, &mut slots, &mut pieces);
    let pieces: Vec<Piece> = pieces.into_iter().collect();
    let mut result: BTreeSet<PartialCopy> = BTreeSet::new();
    let mut chosen = Vec::new();
    combine_pieces(&pieces, 0, copies, &mut chosen, &mut result);
    Ok(result.into_iter().collect())
}

fn collect_pieces(g: &Graph, pattern: &Pattern, boundary: &[Vertex], slots: &mut Vec<Slot>, out: &mut BTreeSet<Piece>) {
    let x = slots.len();
    if x == pattern.size() {
        let piece = Piece { slots: slots.clone() };
        if pattern.piece_is_consistent(&piece) {
            out.insert(pattern.canonical_piece(&piece));
        }
        return;
    }
    let mut options = vec![Slot::Inside, Slot::Outside];
    options.extend(boundary.iter().map(|&v| Slot::Boundary(v)));
    for slot in options {
        if let Slot::Boundary(v) = slot {
            let clash = slots.iter().enumerate().any(|(y, s)| match s {
                Slot::Boundary(u) => *u == v || (pattern.adjacent[x][y] && !g.has_edge(*u, v)),
                _ => false,
            });
            if clash {
                continue;
            }
        }
        slots.push(slot);
        collect_pieces(g, pattern, boundary, slots, out);
        slots.pop();
    }
}

fn combine_pieces(
    pieces: &[Piece],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<Piece>,
    out: &mut BTreeSet<PartialCopy>,
) {
    out.insert(PartialCopy { pieces: chosen.clone() });
    if remaining == 0 {
        return;
    }
    for i in from..pieces.len() {
        let used: VertexSet = chosen.iter().flat_map(|p| p.boundary()).collect();
        if pieces[i].boundary().any(|v| used.contains(&v)) {
            continue;
        }
        chosen.push(pieces[i].clone());
        combine_pieces(pieces, i, remaining - 1, chosen, out);
        chosen.pop();
    }
}

/// Result of the packing solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingSolution {
    pub size: usize,
    /// Vertex sets of the copies of one optimal packing.
    pub copies: Vec<VertexSet>,
    /// Number of table entries computed at every node.
    pub table_sizes: Vec<usize>,
}

/// Maximum packing of `h` in `g` under `mode`, using the decomposition `d`.
pub fn solve_packing_xp(g: &Graph, d: &RootedDecomposition, h: &Graph, mode: PackingMode) -> Result<PackingSolution> {
    solve_packing_xp_with(g, d, h, mode, true)
}

/// As [`solve_packing_xp`]; with `arbitrate` false every child sharing a free vertex is tried as its user.
pub fn solve_packing_xp_with(
    g: &Graph,
    d: &RootedDecomposition,
    h: &Graph,
    mode: PackingMode,
    arbitrate: bool,
) -> Result<PackingSolution> {
    if mode == PackingMode::OddMinor {
        return Err(Error::Precondition(
            "odd-minor packing is only available through the exhaustive oracle".into(),
        ));
    }
    let pattern = Pattern::new(h)?;
    if let Some(violation) = validate_bipartite(g, d).first() {
        return Err(Error::InvalidDecomposition(violation.to_string()));
    }
    guard::check(
        "pattern size times adhesion size",
        (pattern.size() * (d.width() + 1)) as u64,
        24,
    )?;
    let children = d.children();
    let mut nodes = Vec::with_capacity(d.node_count());
    for (t, child_list) in children.iter().enumerate() {
        let (free_part, _) = g.induced_subgraph(&d.beta[t])?;
        if contains_subgraph(&free_part, h) {
            return Err(Error::Internal(format!(
                "the free part of node {t} contains a copy of the pattern"
            )));
        }
        nodes.push(NodeInfo {
            bag: d.bag(t),
            alpha: d.alpha[t].clone(),
            adhesion: if t == d.root { VertexSet::new() } else { d.adhesion(t) },
            children: child_list
                .iter()
                .map(|&c| {
                    let adhesion = d.adhesion(c);
                    let shared = adhesion.difference(&d.alpha[t]).next().copied();
                    ChildInfo {
                        node: c,
                        adhesion,
                        shared,
                    }
                })
                .collect(),
        });
    }
    let mut solver = Solver {
        g,
        pattern,
        mode,
        arbitrate,
        nodes,
        tables: vec![HashMap::new(); d.node_count()],
        steps: 0,
        budget: guard::limit(DEFAULT_STEP_LIMIT),
    };
    let empty = PackState::default();
    let size = solver
        .value(d.root, &empty)?
        .ok_or_else(|| Error::Internal("the empty state has no packing".into()))?;
    let mut realized: Vec<BTreeMap<Vertex, Vertex>> = Vec::new();
    solver.realize(d.root, &empty, &[], &mut realized)?;
    let copies: Vec<VertexSet> = realized.iter().map(|m| m.values().copied().collect()).collect();
    if copies.len() != size || !is_packing(g, h, mode, &copies) {
        return Err(Error::Internal(format!(
            "reconstructed packing of {} copies does not certify the optimum {size}",
            copies.len()
        )));
    }
    Ok(PackingSolution {
        size,
        copies,
        table_sizes: solver.tables.iter().map(|t| t.len()).collect(),
    })
}

/// Whether `copies` are disjoint copies of `h` in `g` satisfying `mode`.
pub fn is_packing(g: &Graph, h: &Graph, mode: PackingMode, copies: &[VertexSet]) -> bool {
    let mut used = VertexSet::new();
    for set in copies {
        if !set.iter().all(|&v| v < g.vertex_count() && used.insert(v)) {
            return false;
        }
        let Ok((sub, _)) = g.induced_subgraph(set) else {
            return false;
        };
        let fits = match mode {
            PackingMode::Induced => isomorphic(&sub, h),
            PackingMode::Subgraph | PackingMode::Scattered => {
                sub.vertex_count() == h.vertex_count() && contains_spanning(&sub, h)
            }
            PackingMode::OddMinor => crate::oracles::is_odd_minor_contraction(h, &sub).unwrap_or(false),
        };
        if !fits {
            return false;
        }
    }
    if mode == PackingMode::Scattered {
        let owner: BTreeMap<Vertex, usize> = copies
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&v| (v, i)))
            .collect();
        return g.edges().all(|(u, v)| match (owner.get(&u), owner.get(&v)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        });
    }
    true
}

struct ChildInfo {
    node: Node,
    adhesion: VertexSet,
    shared: Option<Vertex>,
}

struct NodeInfo {
    bag: VertexSet,
    alpha: VertexSet,
    adhesion: VertexSet,
    children: Vec<ChildInfo>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Bag(Vertex),
    Child(usize),
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Owner {
    Copy(usize),
    Foreign,
}

#[derive(Debug, Clone)]
struct Active {
    places: Vec<Option<Place>>,
    anchor: Option<Vertex>,
}

impl Active {
    fn is_new(&self) -> bool {
        self.anchor.is_some()
    }
}

/// A chosen placement with the child states it induces.
#[derive(Debug, Clone)]
struct Plan {
    actives: Vec<Active>,
    /// Per child: its state and, for each of its pieces, the active copy it continues.
    child_states: Vec<(PackState, Vec<usize>)>,
}

struct Work {
    node: Node,
    state: PackState,
    crossing_tasks: Vec<(usize, Vertex)>,
    actives: Vec<Active>,
    owner: BTreeMap<Vertex, Owner>,
    record: bool,
    best: Option<usize>,
    plan: Option<Plan>,
}

/// What a group of children sharing one free vertex contributes for one choice of user.
#[derive(Clone, Copy)]
struct GroupOption {
    user: Option<usize>,
    value: usize,
}

struct Solver<'a> {
    g: &'a Graph,
    pattern: Pattern,
    mode: PackingMode,
    arbitrate: bool,
    nodes: Vec<NodeInfo>,
    tables: Vec<HashMap<PackState, Option<usize>>>,
    steps: u64,
    budget: u64,
}

impl Solver<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::SizeGuard(format!(
                "packing search took more than {} steps",
                self.budget
            )));
        }
        Ok(())
    }

    fn scattered(&self) -> bool {
        self.mode == PackingMode::Scattered
    }

    /// Table entry of node `t`: the most copies inside its subtree compatible with `state`.
    fn value(&mut self, t: Node, state: &PackState) -> Result<Option<usize>> {
        let key = self.pattern.canonical_state(state);
        if let Some(&known) = self.tables[t].get(&key) {
            return Ok(known);
        }
        let work = self.search(t, &key, false)?;
        self.tables[t].insert(key, work.best);
        Ok(work.best)
    }

    fn search(&mut self, t: Node, state: &PackState, record: bool) -> Result<Work> {
        let mut work = Work {
            node: t,
            state: state.clone(),
            crossing_tasks: Vec::new(),
            actives: Vec::new(),
            owner: BTreeMap::new(),
            record,
            best: None,
            plan: None,
        };
        for (j, piece) in state.copy.pieces.iter().enumerate() {
            let mut places = vec![None; self.pattern.size()];
            let mut start = VertexSet::new();
            for (x, slot) in piece.slots.iter().enumerate() {
                match slot {
                    Slot::Boundary(v) => {
                        places[x] = Some(Place::Bag(*v));
                        start.insert(x);
                        if work.owner.insert(*v, Owner::Copy(j)).is_some() {
                            return Ok(work);
                        }
                    }
                    Slot::Outside => places[x] = Some(Place::Above),
                    Slot::Inside => {}
                }
            }
            let inside_graph = restricted_order(&self.pattern, piece, &start);
            work.crossing_tasks.extend(inside_graph.into_iter().map(|x| (j, x)));
            work.actives.push(Active { places, anchor: None });
        }
        for &v in &state.foreign {
            work.owner.insert(v, Owner::Foreign);
        }
        self.place_crossing(&mut work, 0)?;
        Ok(work)
    }

    fn place_crossing(&mut self, work: &mut Work, task: usize) -> Result<()> {
        if task == work.crossing_tasks.len() {
            return self.add_new_copies(work, 0);
        }
        let (i, x) = work.crossing_tasks[task];
        for place in self.candidates(work, i, x) {
            self.tick()?;
            self.assign(work, i, x, place);
            self.place_crossing(work, task + 1)?;
            self.unassign(work, i, x);
        }
        Ok(())
    }

    fn add_new_copies(&mut self, work: &mut Work, min_anchor: Vertex) -> Result<()> {
        self.evaluate(work)?;
        let info = &self.nodes[work.node];
        let anchors: Vec<Vertex> = info
            .alpha
            .iter()
            .copied()
            .filter(|&a| a >= min_anchor && self.usable_by_new(work, a))
            .collect();
        for a in anchors {
            for x in 0..self.pattern.size() {
                let mut places = vec![None; self.pattern.size()];
                places[x] = Some(Place::Bag(a));
                work.actives.push(Active {
                    places,
                    anchor: Some(a),
                });
                let i = work.actives.len() - 1;
                if self.scattered_clash(work, i, a) {
                    work.actives.pop();
                    continue;
                }
                work.owner.insert(a, Owner::Copy(i));
                self.grow_new(work, i, x, 0)?;
                work.owner.remove(&a);
                work.actives.pop();
            }
        }
        Ok(())
    }

    fn grow_new(&mut self, work: &mut Work, i: usize, start: Vertex, step: usize) -> Result<()> {
        let order = &self.pattern.orders[start];
        if step == order.len() {
            let anchor = work.actives[i].anchor.expect("new copy");
            return self.add_new_copies(work, anchor + 1);
        }
        let x = order[step];
        for place in self.candidates(work, i, x) {
            self.tick()?;
            self.assign(work, i, x, place);
            self.grow_new(work, i, start, step + 1)?;
            self.unassign(work, i, x);
        }
        Ok(())
    }

    fn usable_by_new(&self, work: &Work, v: Vertex) -> bool {
        let info = &self.nodes[work.node];
        !work.owner.contains_key(&v) && (!info.adhesion.contains(&v) || work.state.below.contains(&v))
    }

    fn scattered_clash(&self, work: &Work, i: usize, v: Vertex) -> bool {
        self.scattered()
            && self.g.neighbors(v).iter().any(|w| match work.owner.get(w) {
                Some(Owner::Copy(j)) => *j != i,
                Some(Owner::Foreign) => true,
                None => false,
            })
    }

    fn assign(&self, work: &mut Work, i: usize, x: Vertex, place: Place) {
        work.actives[i].places[x] = Some(place);
        if let Place::Bag(v) = place {
            work.owner.insert(v, Owner::Copy(i));
        }
    }

    fn unassign(&self, work: &mut Work, i: usize, x: Vertex) {
        if let Some(Place::Bag(v)) = work.actives[i].places[x].take() {
            work.owner.remove(&v);
        }
    }

    /// Valid places for pattern vertex `x` of active copy `i`, given its already placed neighbors.
    fn candidates(&self, work: &Work, i: usize, x: Vertex) -> Vec<Place> {
        let info = &self.nodes[work.node];
        let active = &work.actives[i];
        let placed: Vec<(Vertex, Place)> = active
            .places
            .iter()
            .enumerate()
            .filter_map(|(y, p)| p.map(|p| (y, p)))
            .collect();
        let neighbors: Vec<Place> = placed
            .iter()
            .filter(|(y, _)| self.pattern.adjacent[x][*y])
            .map(|&(_, p)| p)
            .collect();
        if neighbors.contains(&Place::Above) {
            return Vec::new();
        }
        let mut result = Vec::new();
        for &u in &info.bag {
            let free = if active.is_new() {
                self.usable_by_new(work, u)
            } else {
                !work.owner.contains_key(&u) && !info.adhesion.contains(&u)
            };
            if !free {
                continue;
            }
            if let (Some(anchor), true) = (active.anchor, info.alpha.contains(&u)) {
                if u <= anchor {
                    continue;
                }
            }
            let fits = placed.iter().all(|&(y, p)| match p {
                Place::Bag(w) => {
                    let edge = self.g.has_edge(u, w);
                    if self.pattern.adjacent[x][y] {
                        edge
                    } else {
                        !(self.mode == PackingMode::Induced && edge)
                    }
                }
                Place::Child(c) => !self.pattern.adjacent[x][y] || info.children[c].adhesion.contains(&u),
                Place::Above => true,
            });
            if fits && !self.scattered_clash(work, i, u) {
                result.push(Place::Bag(u));
            }
        }
        for (c, child) in info.children.iter().enumerate() {
            let fits = !neighbors.is_empty()
                && neighbors.iter().all(|p| match p {
                    Place::Bag(w) => child.adhesion.contains(w),
                    Place::Child(d) => *d == c,
                    Place::Above => false,
                });
            if fits {
                result.push(Place::Child(c));
            }
        }
        result
    }

    /// Child state induced by the current placement, before choosing users of shared vertices.
    fn child_state(&self, work: &Work, c: usize) -> (PackState, Vec<usize>) {
        let child = &self.nodes[work.node].children[c];
        let mut state = PackState::default();
        let mut continues = Vec::new();
        let mut in_piece = VertexSet::new();
        for (i, active) in work.actives.iter().enumerate() {
            if !active.places.contains(&Some(Place::Child(c))) {
                continue;
            }
            let slots = active
                .places
                .iter()
                .map(|p| match p.expect("complete placement") {
                    Place::Bag(v) if child.adhesion.contains(&v) => {
                        in_piece.insert(v);
                        Slot::Boundary(v)
                    }
                    Place::Child(d) if d == c => Slot::Inside,
                    _ => Slot::Outside,
                })
                .collect();
            state.copy.pieces.push(Piece { slots });
            continues.push(i);
        }
        if self.scattered() {
            state.foreign = child
                .adhesion
                .iter()
                .copied()
                .filter(|v| work.owner.contains_key(v) && !in_piece.contains(v))
                .collect();
        }
        (state, continues)
    }

    fn evaluate(&mut self, work: &mut Work) -> Result<()> {
        self.tick()?;
        let t = work.node;
        let new_copies = work.actives.iter().filter(|a| a.is_new()).count();
        let child_count = self.nodes[t].children.len();
        let mut groups: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for (c, child) in self.nodes[t].children.iter().enumerate() {
            if let Some(v) = child.shared {
                let open = !work.owner.contains_key(&v)
                    && (!self.nodes[t].adhesion.contains(&v) || work.state.below.contains(&v));
                if open {
                    groups.entry(v).or_default().push(c);
                }
            }
        }
        let required: VertexSet = work
            .state
            .below
            .iter()
            .copied()
            .filter(|v| !work.owner.contains_key(v))
            .collect();
        if required.iter().any(|v| !groups.contains_key(v)) {
            return Ok(());
        }
        let bases: Vec<_> = (0..child_count).map(|c| self.child_state(work, c)).collect();
        let mut fixed_total = new_copies;
        let grouped: VertexSet = groups.values().flatten().copied().collect();
        for (c, (base, _)) in bases.iter().enumerate() {
            if grouped.contains(&c) {
                continue;
            }
            match self.value(self.nodes[t].children[c].node, base)? {
                Some(v) => fixed_total += v,
                None => return Ok(()),
            }
        }
        let mut group_options: Vec<(Vertex, Vec<GroupOption>)> = Vec::new();
        for (&v, members) in &groups {
            let options = self.group_options(t, v, members, &bases, required.contains(&v))?;
            if options.is_empty() {
                return Ok(());
            }
            group_options.push((v, options));
        }
        let mut chosen = Vec::with_capacity(group_options.len());
        let mut best_choice: Option<(usize, Vec<GroupOption>)> = None;
        self.choose_users(work, &group_options, &mut chosen, &mut best_choice);
        let Some((group_total, choice)) = best_choice else {
            return Ok(());
        };
        let total = fixed_total + group_total;
        if work.best.is_some_and(|b| b >= total) {
            return Ok(());
        }
        work.best = Some(total);
        if work.record {
            let mut child_states: Vec<(PackState, Vec<usize>)> = bases;
            for ((v, _), option) in group_options.iter().zip(&choice) {
                for &c in &groups[v] {
                    if option.user == Some(c) {
                        child_states[c].0.below.insert(*v);
                    } else if option.user.is_some() && self.scattered() {
                        child_states[c].0.foreign.insert(*v);
                    }
                }
            }
            work.plan = Some(Plan {
                actives: work.actives.clone(),
                child_states,
            });
        }
        Ok(())
    }

    /// Choices for the children sharing free vertex `v`: nobody uses it, or one child does.
    fn group_options(
        &mut self,
        t: Node,
        v: Vertex,
        members: &[usize],
        bases: &[(PackState, Vec<usize>)],
        required: bool,
    ) -> Result<Vec<GroupOption>> {
        let mut unused = Some(0usize);
        let mut claimed = Vec::with_capacity(members.len());
        let mut excluded = Vec::with_capacity(members.len());
        for &c in members {
            let node = self.nodes[t].children[c].node;
            let base = &bases[c].0;
            unused = match (unused, self.value(node, base)?) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            let mut below = base.clone();
            below.below.insert(v);
            claimed.push(self.value(node, &below)?);
            let mut foreign = base.clone();
            if self.scattered() {
                foreign.foreign.insert(v);
            }
            excluded.push(self.value(node, &foreign)?);
        }
        let mut options = Vec::new();
        if let (Some(value), false) = (unused, required) {
            options.push(GroupOption { user: None, value });
        }
        let mut users: Vec<GroupOption> = Vec::new();
        for (k, &c) in members.iter().enumerate() {
            let mut total = claimed[k];
            for (l, value) in excluded.iter().enumerate() {
                if l != k {
                    total = match (total, value) {
                        (Some(a), Some(b)) => Some(a + b),
                        _ => None,
                    };
                }
            }
            if let Some(value) = total {
                users.push(GroupOption { user: Some(c), value });
            }
        }
        if self.arbitrate {
            if let Some(best) = users
                .iter()
                .copied()
                .reduce(|a, b| if b.value > a.value { b } else { a })
            {
                let worthwhile = required || options.first().is_none_or(|o| best.value > o.value);
                if worthwhile {
                    options.push(best);
                }
            }
        } else {
            options.extend(users);
        }
        Ok(options)
    }

    /// Best combination of users, one option per group, respecting scattered adjacency.
    fn choose_users(
        &self,
        work: &Work,
        groups: &[(Vertex, Vec<GroupOption>)],
        chosen: &mut Vec<GroupOption>,
        best: &mut Option<(usize, Vec<GroupOption>)>,
    ) {
        let k = chosen.len();
        if k == groups.len() {
            let total = chosen.iter().map(|o| o.value).sum();
            if best.as_ref().is_none_or(|(b, _)| total > *b) {
                *best = Some((total, chosen.clone()));
            }
            return;
        }
        let v = groups[k].0;
        for &option in &groups[k].1 {
            if option.user.is_some() && self.scattered() {
                let clash = self.g.neighbors(v).iter().any(|w| {
                    work.owner.contains_key(w)
                        || groups[..k]
                            .iter()
                            .zip(chosen.iter())
                            .any(|((u, _), o)| u == w && o.user.is_some())
                });
                if clash {
                    continue;
                }
            }
            chosen.push(option);
            self.choose_users(work, groups, chosen, best);
            chosen.pop();
        }
    }

    /// Rebuilds the copies of an optimal solution for `state` at `t`, extending `copies`.
    ///
    /// `ids[j]` names the copy continued by piece `j` of `state`.
    fn realize(
        &mut self,
        t: Node,
        state: &PackState,
        ids: &[usize],
        copies: &mut Vec<BTreeMap<Vertex, Vertex>>,
    ) -> Result<()> {
        let expected = self.value(t, state)?;
        let work = self.search(t, state, true)?;
        if work.best != expected {
            return Err(Error::Internal(format!("node {t} does not reproduce its table entry")));
        }
        let plan = work
            .plan
            .ok_or_else(|| Error::Internal(format!("node {t} has no optimal placement")))?;
        let mut active_ids = Vec::with_capacity(plan.actives.len());
        for (i, active) in plan.actives.iter().enumerate() {
            let id = if active.is_new() {
                copies.push(BTreeMap::new());
                copies.len() - 1
            } else {
                ids[i]
            };
            active_ids.push(id);
            for (x, place) in active.places.iter().enumerate() {
                if let Some(Place::Bag(v)) = place {
                    copies[id].insert(x, *v);
                }
            }
        }
        for (c, (child_state, continues)) in plan.child_states.iter().enumerate() {
            let child_ids: Vec<usize> = continues.iter().map(|&i| active_ids[i]).collect();
            let node = self.nodes[t].children[c].node;
            self.realize(node, child_state, &child_ids, copies)?;
        }
        Ok(())
    }
}

/// Inside vertices of `piece` ordered so each has an earlier neighbor among the boundary or inside vertices.
fn restricted_order(pattern: &Pattern, piece: &Piece, start: &VertexSet) -> Vec<Vertex> {
    let mut seen = start.clone();
    let mut queue: VecDeque<Vertex> = start.iter().copied().collect();
    let mut order = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &v in pattern.graph.neighbors(u) {
            if piece.slots[v] == Slot::Inside && seen.insert(v) {
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}
