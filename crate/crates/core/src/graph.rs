//! Simple undirected graphs with stable vertex identifiers.
//!
//! Vertex ids are dense integers assigned at construction time; deleting a
//! vertex removes it from the set but never renumbers the survivors, so ids
//! stay comparable across pipeline stages. Optional per-vertex weights
//! default to 1 and are ignored by all unweighted code paths.
//!
//! Convention used across the whole crate: the *length* and *parity* of a
//! path refer to the number of its **vertices**, not its edges.

use std::collections::{BTreeMap, BTreeSet};

pub type Vertex = u32;
pub type VertexSet = BTreeSet<Vertex>;
/// Unordered vertex pair, stored normalized with the smaller id first.
pub type Pair = (Vertex, Vertex);

pub fn pair(u: Vertex, v: Vertex) -> Pair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
    /// Sparse weight storage; missing entry means weight 1.
    weights: BTreeMap<Vertex, u64>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.insert_vertex(v);
        }
        g
    }

    pub fn insert_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Inserts a new vertex with an id larger than any existing one.
    pub fn add_fresh_vertex(&mut self) -> Vertex {
        let v = self.fresh_id();
        self.insert_vertex(v);
        v
    }

    pub fn fresh_id(&self) -> Vertex {
        self.adj.keys().next_back().map_or(0, |&v| v + 1)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert_ne!(u, v, "self-loops are not allowed");
        assert!(
            self.has_vertex(u) && self.has_vertex(v),
            "edge endpoint missing"
        );
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if let Some(n) = self.adj.get_mut(&u) {
            n.remove(&v);
        }
        if let Some(n) = self.adj.get_mut(&v) {
            n.remove(&u);
        }
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
        self.weights.remove(&v);
    }

    pub fn remove_vertices<'a>(&mut self, vs: impl IntoIterator<Item = &'a Vertex>) {
        for &v in vs {
            self.remove_vertex(v);
        }
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Edges as normalized pairs, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).collect()
    }

    /// Open neighborhood of a set: all vertices outside `s` adjacent to `s`.
    pub fn neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for &v in s {
            out.extend(self.neighbors(v).filter(|u| !s.contains(u)));
        }
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights.get(&v).copied().unwrap_or(1)
    }

    /// Weight 1 entries are normalized away so graph equality is insensitive
    /// to how defaults were written.
    pub fn set_weight(&mut self, v: Vertex, w: u64) {
        assert!(self.has_vertex(v), "weight for missing vertex");
        if w == 1 {
            self.weights.remove(&v);
        } else {
            self.weights.insert(v, w);
        }
    }

    pub fn explicit_weights(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.weights.iter().map(|(&v, &w)| (v, w))
    }

    pub fn total_weight(&self, s: &VertexSet) -> u64 {
        s.iter().map(|&v| self.weight(v)).sum()
    }

    pub fn induced(&self, scope: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for &v in scope {
            assert!(self.has_vertex(v), "scope vertex missing from graph");
            g.insert_vertex(v);
            if let Some(w) = self.weights.get(&v) {
                g.weights.insert(v, *w);
            }
        }
        for &v in scope {
            for u in self.neighbors(v) {
                if u < v && scope.contains(&u) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// The graph `G - S`.
    pub fn removed(&self, s: &VertexSet) -> Graph {
        let scope: VertexSet = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced(&scope)
    }

    /// Disjoint union; panics if vertex ids collide.
    pub fn merge_disjoint(&mut self, other: &Graph) {
        for v in other.vertices() {
            assert!(!self.has_vertex(v), "vertex id collision in merge");
            self.insert_vertex(v);
            if let Some(w) = other.weights.get(&v) {
                self.weights.insert(v, *w);
            }
        }
        for (u, v) in other.edges() {
            self.add_edge(u, v);
        }
    }
}

/// A proper 2-coloring of some induced subgraph, as the two color classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side0: VertexSet,
    pub side1: VertexSet,
}

impl Bipartition {
    pub fn side(&self, v: Vertex) -> Option<u8> {
        if self.side0.contains(&v) {
            Some(0)
        } else if self.side1.contains(&v) {
            Some(1)
        } else {
            None
        }
    }

    pub fn scope(&self) -> VertexSet {
        self.side0.union(&self.side1).copied().collect()
    }

    /// Checks that no edge of `g` joins two vertices of the same side.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.side0.is_disjoint(&self.side1)
            && g.edges().all(|(u, v)| match (self.side(u), self.side(v)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartitionResult {
    Bipartite(Bipartition),
    /// An odd cycle given as its vertex sequence; consecutive entries and the
    /// (last, first) pair are adjacent.
    OddCycle(Vec<Vertex>),
}

/// BFS 2-coloring of `g[scope]`. Visits vertices in ascending id order and
/// returns the first odd cycle the search closes, so results are
/// deterministic.
pub fn bipartition(g: &Graph, scope: &VertexSet) -> BipartitionResult {
    let mut color: BTreeMap<Vertex, u8> = BTreeMap::new();
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut depth: BTreeMap<Vertex, u32> = BTreeMap::new();

    for &root in scope {
        if color.contains_key(&root) {
            continue;
        }
        color.insert(root, 0);
        depth.insert(root, 0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[&u];
            for v in g.neighbors(u) {
                if !scope.contains(&v) {
                    continue;
                }
                match color.get(&v) {
                    None => {
                        color.insert(v, 1 - cu);
                        parent.insert(v, u);
                        depth.insert(v, depth[&u] + 1);
                        queue.push_back(v);
                    }
                    Some(&cv) if cv == cu => {
                        return BipartitionResult::OddCycle(close_cycle(&parent, &depth, u, v));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let side0 = color
        .iter()
        .filter(|(_, &c)| c == 0)
        .map(|(&v, _)| v)
        .collect();
    let side1 = color
        .iter()
        .filter(|(_, &c)| c == 1)
        .map(|(&v, _)| v)
        .collect();
    BipartitionResult::Bipartite(Bipartition { side0, side1 })
}

/// Builds the cycle through BFS-tree paths from `u` and `v` to their lowest
/// common ancestor. Same-parity depths make the cycle odd.
fn close_cycle(
    parent: &BTreeMap<Vertex, Vertex>,
    depth: &BTreeMap<Vertex, u32>,
    u: Vertex,
    v: Vertex,
) -> Vec<Vertex> {
    let mut pu = vec![u];
    let mut pv = vec![v];
    let (mut a, mut b) = (u, v);
    while depth[&a] > depth[&b] {
        a = parent[&a];
        pu.push(a);
    }
    while depth[&b] > depth[&a] {
        b = parent[&b];
        pv.push(b);
    }
    while a != b {
        a = parent[&a];
        b = parent[&b];
        pu.push(a);
        pv.push(b);
    }
    // pu ends at the lca, pv ends one short of it. Orient as
    // lca .. u, then the conflict edge to v, then back down toward the lca.
    pv.pop();
    pu.reverse();
    pu.extend(pv);
    pu
}

/// Verifies `cycle` is a simple odd cycle of `g` (by vertex count).
pub fn is_odd_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    if cycle.len() < 3 || cycle.len() % 2 == 0 {
        return false;
    }
    let distinct: VertexSet = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() {
        return false;
    }
    cycle.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(cycle[cycle.len() - 1], cycle[0])
}

/// A failed 2-coloring extension: a path between colored endpoints whose
/// parity contradicts the endpoint colors. Either the path has an odd number
/// of internal vertices and the endpoints have different colors, or an even
/// number and equal colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringConflict {
    /// The connected component of `g - s` the internal vertices live in.
    pub component: VertexSet,
    pub p: Vertex,
    pub q: Vertex,
    /// Full path `p, internal vertices, q`; simple except possibly `p == q`.
    pub path: Vec<Vertex>,
}

impl ColoringConflict {
    pub fn internal_count(&self) -> usize {
        self.path.len() - 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendOutcome {
    Extended(BTreeMap<Vertex, u8>),
    Conflict(ColoringConflict),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("seed coloring is not proper on the colored subgraph")]
    ImproperSeed,
    #[error("graph minus the colored set is not bipartite")]
    RestNotBipartite,
    #[error("seed coloring mentions vertex {0} missing from the graph")]
    UnknownVertex(Vertex),
}

/// Greedily extends a proper 2-coloring of `g[s]` (where `s` is the key set
/// of `seed`) to all of `g`, or reports a parity-conflicting path between
/// two colored vertices. Components untouched by `s` are colored starting
/// with 0 at their smallest vertex.
pub fn extend_two_coloring(
    g: &Graph,
    seed: &BTreeMap<Vertex, u8>,
) -> Result<ExtendOutcome, ExtendError> {
    let s: VertexSet = seed.keys().copied().collect();
    for &v in &s {
        if !g.has_vertex(v) {
            return Err(ExtendError::UnknownVertex(v));
        }
        for u in g.neighbors(v) {
            if let Some(&cu) = seed.get(&u) {
                if cu == seed[&v] {
                    return Err(ExtendError::ImproperSeed);
                }
            }
        }
    }
    let rest: VertexSet = g.vertices().filter(|v| !s.contains(v)).collect();
    let rest_bip = match bipartition(g, &rest) {
        BipartitionResult::Bipartite(b) => b,
        BipartitionResult::OddCycle(_) => return Err(ExtendError::RestNotBipartite),
    };

    let mut color = seed.clone();
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue: std::collections::VecDeque<Vertex> = s.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        let cu = color[&u];
        for v in g.neighbors(u) {
            match color.get(&v) {
                None => {
                    color.insert(v, 1 - cu);
                    parent.insert(v, u);
                    queue.push_back(v);
                }
                Some(&cv) if cv == cu => {
                    return Ok(ExtendOutcome::Conflict(build_conflict(
                        g, &s, &rest, &parent, u, v,
                    )));
                }
                Some(_) => {}
            }
        }
    }
    // Components never reached from s are bipartite by precondition.
    for (v, side) in rest_bip
        .side0
        .iter()
        .map(|&v| (v, 0u8))
        .chain(rest_bip.side1.iter().map(|&v| (v, 1u8)))
    {
        color.entry(v).or_insert(side);
    }
    debug_assert!(g.edges().all(|(u, v)| color[&u] != color[&v]));
    Ok(ExtendOutcome::Extended(color))
}

fn build_conflict(
    g: &Graph,
    s: &VertexSet,
    rest: &VertexSet,
    parent: &BTreeMap<Vertex, Vertex>,
    u: Vertex,
    v: Vertex,
) -> ColoringConflict {
    // Walk both endpoints of the offending edge back to their seeds. The two
    // chains cannot share a vertex outside s, otherwise g - s has an odd
    // cycle, which the precondition excludes.
    let chain = |mut w: Vertex| {
        let mut path = vec![w];
        while !s.contains(&w) {
            w = parent[&w];
            path.push(w);
        }
        path
    };
    let mut left = chain(u);
    left.reverse();
    let right = chain(v);
    let p = left[0];
    let q = *right.last().unwrap();
    let mut path = left;
    path.extend(right);
    let interior: Vec<Vertex> = path[1..path.len() - 1].to_vec();
    debug_assert!(interior.iter().all(|w| !s.contains(w)));
    let component = connected_components(g, rest)
        .into_iter()
        .find(|c| c.contains(&interior[0]))
        .unwrap_or_default();
    ColoringConflict {
        component,
        p,
        q,
        path,
    }
}

/// Maximal connected vertex sets of `g[scope]`, ordered by smallest member.
pub fn connected_components(g: &Graph, scope: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for &root in scope {
        if seen.contains(&root) {
            continue;
        }
        let mut comp = VertexSet::from([root]);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if scope.contains(&v) && comp.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph, scope: &VertexSet) -> bool {
    connected_components(g, scope).len() <= 1
}

/// Replaces every edge by a path with two fresh internal vertices. Each path
/// multiplies edge counts by three, so no path parity changes and minimum
/// odd cycle transversal sizes are preserved.
pub fn subdivide_edges_p2(g: &Graph) -> Graph {
    let mut out = Graph::new();
    for v in g.vertices() {
        out.insert_vertex(v);
        out.set_weight(v, g.weight(v));
    }
    let mut next = g.fresh_id();
    for (u, v) in g.edges() {
        let a = next;
        let b = next + 1;
        next += 2;
        out.insert_vertex(a);
        out.insert_vertex(b);
        out.add_edge(u, a);
        out.add_edge(a, b);
        out.add_edge(b, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> Graph {
        let mut g = Graph::with_vertices(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    fn petersen() -> Graph {
        let mut g = Graph::with_vertices(10);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
            g.add_edge(v, v + 5);
            g.add_edge(v + 5, (v + 2) % 5 + 5);
        }
        g
    }

    /// Independent oracle: length of a shortest odd closed walk through any
    /// vertex, via BFS over (vertex, parity) states. Equals the odd girth.
    fn odd_girth(g: &Graph) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in g.vertices() {
            let mut dist: BTreeMap<(Vertex, u8), usize> = BTreeMap::new();
            dist.insert((s, 0), 0);
            let mut queue = std::collections::VecDeque::from([(s, 0u8)]);
            while let Some((u, p)) = queue.pop_front() {
                let d = dist[&(u, p)];
                for v in g.neighbors(u) {
                    if !dist.contains_key(&(v, 1 - p)) {
                        dist.insert((v, 1 - p), d + 1);
                        queue.push_back((v, 1 - p));
                    }
                }
            }
            if let Some(&d) = dist.get(&(s, 1)) {
                best = Some(best.map_or(d, |b: usize| b.min(d)));
            }
        }
        best
    }

    #[test]
    fn four_cycle_bipartition() {
        let g = cycle_graph(4);
        match bipartition(&g, &g.vertex_set()) {
            BipartitionResult::Bipartite(b) => {
                assert_eq!(b.side0, VertexSet::from([0, 2]));
                assert_eq!(b.side1, VertexSet::from([1, 3]));
                assert!(b.is_proper(&g));
            }
            BipartitionResult::OddCycle(c) => panic!("unexpected odd cycle {c:?}"),
        }
    }

    #[test]
    fn triangle_odd_cycle() {
        let g = cycle_graph(3);
        match bipartition(&g, &g.vertex_set()) {
            BipartitionResult::OddCycle(c) => {
                assert_eq!(c, vec![0, 1, 2]);
                assert!(is_odd_cycle(&g, &c));
            }
            BipartitionResult::Bipartite(_) => panic!("triangle reported bipartite"),
        }
    }

    #[test]
    fn petersen_returns_a_shortest_odd_cycle() {
        let g = petersen();
        // Oracle: the Petersen graph has odd girth 5.
        assert_eq!(odd_girth(&g), Some(5));
        match bipartition(&g, &g.vertex_set()) {
            BipartitionResult::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                assert!(is_odd_cycle(&g, &c));
            }
            BipartitionResult::Bipartite(_) => panic!("petersen reported bipartite"),
        }
    }

    #[test]
    fn bipartition_respects_scope() {
        let mut g = cycle_graph(3);
        g.insert_vertex(3);
        g.add_edge(0, 3);
        let scope = VertexSet::from([0, 1, 3]);
        match bipartition(&g, &scope) {
            BipartitionResult::Bipartite(b) => assert_eq!(b.scope(), scope),
            BipartitionResult::OddCycle(c) => panic!("odd cycle {c:?} outside scope"),
        }
    }

    #[test]
    fn extend_forced_path() {
        // path p - a - q with both endpoints colored 0: a is forced to 1.
        let mut g = Graph::with_vertices(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let seed = BTreeMap::from([(0, 0), (2, 0)]);
        match extend_two_coloring(&g, &seed).unwrap() {
            ExtendOutcome::Extended(c) => assert_eq!(c[&1], 1),
            ExtendOutcome::Conflict(c) => panic!("unexpected conflict {c:?}"),
        }
    }

    #[test]
    fn extend_conflict_odd_internals_different_colors() {
        let mut g = Graph::with_vertices(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let seed = BTreeMap::from([(0, 0), (2, 1)]);
        match extend_two_coloring(&g, &seed).unwrap() {
            ExtendOutcome::Conflict(c) => {
                assert_eq!(c.internal_count(), 1);
                assert_ne!(seed[&c.p], seed[&c.q]);
                assert_eq!(c.component, VertexSet::from([1]));
            }
            ExtendOutcome::Extended(_) => panic!("expected a conflict"),
        }
    }

    #[test]
    fn extend_conflict_even_internals_equal_colors() {
        let mut g = Graph::with_vertices(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        let seed = BTreeMap::from([(0, 0), (3, 0)]);
        match extend_two_coloring(&g, &seed).unwrap() {
            ExtendOutcome::Conflict(c) => {
                assert_eq!(c.internal_count(), 2);
                assert_eq!(seed[&c.p], seed[&c.q]);
                // Re-walk the reported path independently.
                assert!(c.path.windows(2).all(|w| g.has_edge(w[0], w[1])));
            }
            ExtendOutcome::Extended(_) => panic!("expected a conflict"),
        }
    }

    #[test]
    fn extend_rejects_improper_seed() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(0, 1);
        let seed = BTreeMap::from([(0, 0), (1, 0)]);
        assert_eq!(
            extend_two_coloring(&g, &seed),
            Err(ExtendError::ImproperSeed)
        );
    }

    #[test]
    fn extend_rejects_odd_rest() {
        let mut g = cycle_graph(3);
        g.insert_vertex(3);
        let seed = BTreeMap::from([(3, 0)]);
        assert_eq!(
            extend_two_coloring(&g, &seed),
            Err(ExtendError::RestNotBipartite)
        );
    }

    #[test]
    fn components_edgeless_and_connected() {
        let g = Graph::with_vertices(3);
        assert_eq!(connected_components(&g, &g.vertex_set()).len(), 3);
        let c = cycle_graph(4);
        assert_eq!(connected_components(&c, &c.vertex_set()).len(), 1);
    }

    #[test]
    fn components_match_union_find_oracle() {
        // Deterministic pseudo-random G(12, ~0.1) from a fixed edge pattern.
        let mut g = Graph::with_vertices(12);
        let mut state: u64 = 0x9E3779B97F4A7C15;
        for u in 0..12u32 {
            for v in (u + 1)..12 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if (state >> 33) % 10 == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        // Independent union-find oracle.
        let mut uf: Vec<u32> = (0..12).collect();
        fn find(uf: &mut Vec<u32>, x: u32) -> u32 {
            if uf[x as usize] != x {
                let r = find(uf, uf[x as usize]);
                uf[x as usize] = r;
            }
            uf[x as usize]
        }
        for (u, v) in g.edges() {
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            uf[ru as usize] = rv;
        }
        let mut oracle: BTreeMap<u32, VertexSet> = BTreeMap::new();
        for v in 0..12 {
            oracle.entry(find(&mut uf, v)).or_default().insert(v);
        }
        let mut expected: Vec<VertexSet> = oracle.into_values().collect();
        expected.sort_by_key(|c| *c.first().unwrap());
        assert_eq!(connected_components(&g, &g.vertex_set()), expected);
    }

    #[test]
    fn subdivision_counts() {
        let g = cycle_graph(3);
        let s = subdivide_edges_p2(&g);
        assert_eq!(s.vertex_count(), 9);
        assert_eq!(s.edge_count(), 9);
        assert_eq!(odd_girth(&s), Some(9));
        let e = Graph::with_vertices(4);
        assert_eq!(subdivide_edges_p2(&e), e);
    }

    #[test]
    fn vertex_ids_survive_deletion() {
        let mut g = Graph::with_vertices(5);
        g.add_edge(1, 3);
        g.remove_vertex(2);
        assert_eq!(g.vertex_set(), VertexSet::from([0, 1, 3, 4]));
        assert!(g.has_edge(1, 3));
        assert_eq!(g.fresh_id(), 5);
    }
}
