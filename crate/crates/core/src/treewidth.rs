//! Tree decompositions for small width, a 3-state odd cycle transversal DP
//! over decompositions, and deletion-set computation.
//!
//! Widths 1 and 2 are decided by greedy low-degree elimination (complete for
//! those widths); larger widths fall back to an exhaustive elimination-order
//! search over vertex subsets, which is exact but limited to desk-scale
//! graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::graph::{bipartition, BipartitionResult, Graph, Vertex, VertexSet};

/// Rooted tree decomposition: bags indexed by node id plus a parent map with
/// exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: BTreeMap<usize, VertexSet>,
    parent: BTreeMap<usize, Option<usize>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecompositionViolation {
    #[error("vertex {0} is in no bag")]
    VertexUncovered(Vertex),
    #[error("edge {{{0}, {1}}} is in no bag")]
    EdgeUncovered(Vertex, Vertex),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    OccurrenceDisconnected(Vertex),
    #[error("node structure is not a single rooted tree")]
    NotATree,
    #[error("bag contains vertex {0} missing from the graph")]
    UnknownVertex(Vertex),
}

impl TreeDecomposition {
    pub fn new(bags: BTreeMap<usize, VertexSet>, parent: BTreeMap<usize, Option<usize>>) -> Self {
        TreeDecomposition { bags, parent }
    }

    pub fn bags(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.bags.iter().map(|(&id, bag)| (id, bag))
    }

    pub fn bag(&self, id: usize) -> &VertexSet {
        &self.bags[&id]
    }

    pub fn parent_of(&self, id: usize) -> Option<usize> {
        self.parent.get(&id).copied().flatten()
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> Option<usize> {
        self.parent
            .iter()
            .find(|(_, p)| p.is_none())
            .map(|(&id, _)| id)
    }

    pub fn children_map(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> =
            self.bags.keys().map(|&id| (id, vec![])).collect();
        for (&id, &p) in &self.parent {
            if let Some(p) = p {
                out.get_mut(&p).unwrap().push(id);
            }
        }
        out
    }

    /// Max bag size minus one; -1 for a decomposition of the empty graph.
    pub fn width(&self) -> i64 {
        self.bags
            .values()
            .map(|b| b.len() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn validate(&self, g: &Graph) -> Result<(), DecompositionViolation> {
        // Single root, parent map covers all nodes, no cycles.
        if self.parent.len() != self.bags.len()
            || self.parent.keys().any(|id| !self.bags.contains_key(id))
        {
            return Err(DecompositionViolation::NotATree);
        }
        let roots: Vec<usize> = self
            .parent
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(&id, _)| id)
            .collect();
        if roots.len() != 1 && !self.bags.is_empty() {
            return Err(DecompositionViolation::NotATree);
        }
        let children = self.children_map();
        let mut seen = 0usize;
        let mut queue: VecDeque<usize> = roots.iter().copied().collect();
        let mut visited: BTreeMap<usize, bool> = Default::default();
        while let Some(id) = queue.pop_front() {
            if visited.insert(id, true).is_some() {
                return Err(DecompositionViolation::NotATree);
            }
            seen += 1;
            queue.extend(children.get(&id).into_iter().flatten());
        }
        if seen != self.bags.len() {
            return Err(DecompositionViolation::NotATree);
        }

        for bag in self.bags.values() {
            for &v in bag {
                if !g.has_vertex(v) {
                    return Err(DecompositionViolation::UnknownVertex(v));
                }
            }
        }
        for v in g.vertices() {
            if !self.bags.values().any(|b| b.contains(&v)) {
                return Err(DecompositionViolation::VertexUncovered(v));
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.values().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(DecompositionViolation::EdgeUncovered(u, v));
            }
        }
        // Connectivity of occurrences: bags containing v must induce a
        // connected subtree.
        for v in g.vertices() {
            let holding: Vec<usize> = self
                .bags
                .iter()
                .filter(|(_, b)| b.contains(&v))
                .map(|(&id, _)| id)
                .collect();
            let inside: std::collections::BTreeSet<usize> = holding.iter().copied().collect();
            let mut reached = std::collections::BTreeSet::from([holding[0]]);
            let mut queue = VecDeque::from([holding[0]]);
            while let Some(id) = queue.pop_front() {
                let mut nbrs: Vec<usize> =
                    children.get(&id).into_iter().flatten().copied().collect();
                if let Some(p) = self.parent_of(id) {
                    nbrs.push(p);
                }
                for n in nbrs {
                    if inside.contains(&n) && reached.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            if reached.len() != holding.len() {
                return Err(DecompositionViolation::OccurrenceDisconnected(v));
            }
        }
        Ok(())
    }
}

/// Builds a decomposition from an elimination order over the (implicit) fill
/// graph: the bag of `order[i]` is the vertex plus its later neighbors
/// reachable through earlier-eliminated vertices.
fn decomposition_from_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut bags: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        let mut bag = fill_neighbors(g, v, &pos, i);
        bag.insert(v);
        bags.insert(i, bag);
    }
    let mut parent: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    let mut previous_root: Option<usize> = None;
    for i in (0..order.len()).rev() {
        let later: Option<usize> = bags[&i]
            .iter()
            .filter(|&&u| u != order[i])
            .map(|&u| pos[&u])
            .min();
        match later {
            Some(p) => {
                parent.insert(i, Some(p));
            }
            None => {
                // Component exhausted: chain this root under the previous one
                // to keep a single tree.
                parent.insert(i, previous_root);
                previous_root = Some(i);
            }
        }
    }
    if order.is_empty() {
        bags.insert(0, VertexSet::new());
        parent.insert(0, None);
    }
    TreeDecomposition { bags, parent }
}

/// Later-ordered vertices reachable from `v` through vertices eliminated
/// strictly before position `i`.
fn fill_neighbors(g: &Graph, v: Vertex, pos: &BTreeMap<Vertex, usize>, i: usize) -> VertexSet {
    let mut out = VertexSet::new();
    let mut seen = VertexSet::from([v]);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen.insert(w) {
                continue;
            }
            if pos[&w] > i {
                out.insert(w);
            } else if pos[&w] < i {
                stack.push(w);
            }
        }
    }
    out
}

/// Greedy low-degree elimination with fill-in; complete for width <= 2.
fn greedy_elimination(g: &Graph, w: usize) -> Option<Vec<Vertex>> {
    let mut adj: BTreeMap<Vertex, VertexSet> =
        g.vertices().map(|v| (v, g.neighbor_set(v))).collect();
    let mut order = Vec::with_capacity(adj.len());
    while !adj.is_empty() {
        let v = adj
            .iter()
            .filter(|(_, nbrs)| nbrs.len() <= w)
            .map(|(&v, _)| v)
            .next()?;
        let nbrs = adj.remove(&v).unwrap();
        for &u in &nbrs {
            adj.get_mut(&u).unwrap().remove(&v);
        }
        let nbrs: Vec<Vertex> = nbrs.into_iter().collect();
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
            }
        }
        order.push(v);
    }
    Some(order)
}

const EXACT_SEARCH_LIMIT: usize = 26;

/// Exhaustive elimination-order search with memoization over eliminated
/// subsets, pruned at width `w`.
fn exact_elimination(g: &Graph, w: usize) -> Option<Vec<Vertex>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let n = verts.len();
    assert!(
        n <= EXACT_SEARCH_LIMIT,
        "exact treewidth search is limited to {EXACT_SEARCH_LIMIT} vertices"
    );
    let idx: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<u64> = verts
        .iter()
        .map(|&v| g.neighbors(v).fold(0u64, |acc, u| acc | (1 << idx[&u])))
        .collect();

    // Degree of v when eliminated after the set `before`: neighbors outside
    // `before` reachable through `before`.
    let elim_degree = |v: usize, before: u64| -> u32 {
        let mut seen: u64 = 1 << v;
        let mut stack: u64 = 1 << v;
        let mut out: u64 = 0;
        while stack != 0 {
            let u = stack.trailing_zeros() as usize;
            stack &= stack - 1;
            let fresh = adj[u] & !seen;
            seen |= fresh;
            out |= fresh & !before;
            stack |= fresh & before;
        }
        (out & !(1 << v)).count_ones()
    };

    // feasible(S) = the vertices of S can be eliminated first with all
    // elimination degrees <= w.
    let mut memo: HashMap<u64, bool> = HashMap::new();
    fn feasible(
        s: u64,
        w: u32,
        n: usize,
        elim_degree: &impl Fn(usize, u64) -> u32,
        memo: &mut HashMap<u64, bool>,
    ) -> bool {
        if s == 0 {
            return true;
        }
        if let Some(&r) = memo.get(&s) {
            return r;
        }
        let mut ok = false;
        for v in 0..n {
            let bit = 1u64 << v;
            if s & bit != 0 && elim_degree(v, s & !bit) <= w {
                if feasible(s & !bit, w, n, elim_degree, memo) {
                    ok = true;
                    break;
                }
            }
        }
        memo.insert(s, ok);
        ok
    }

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if !feasible(full, w as u32, n, &elim_degree, &mut memo) {
        return None;
    }
    // Reconstruct: peel the last-eliminated vertex repeatedly.
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = (0..n)
            .find(|&v| {
                let bit = 1u64 << v;
                s & bit != 0
                    && elim_degree(v, s & !bit) <= w as u32
                    && feasible(s & !bit, w as u32, n, &elim_degree, &mut memo)
            })
            .expect("feasible set must have a last vertex");
        order_rev.push(verts[v]);
        s &= !(1 << v);
    }
    order_rev.reverse();
    Some(order_rev)
}

/// A width-`w` tree decomposition of `g`, or `None` when the treewidth
/// exceeds `w`. Deterministic.
pub fn decompose(g: &Graph, w: usize) -> Option<TreeDecomposition> {
    assert!(w >= 1, "width bound must be at least 1");
    let order = if w <= 2 {
        greedy_elimination(g, w)?
    } else {
        exact_elimination(g, w)?
    };
    let td = decomposition_from_order(g, &order);
    debug_assert!(td.validate(g).is_ok());
    debug_assert!(td.width() <= w as i64);
    Some(td)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NiceNode {
    Leaf,
    Introduce(Vertex, usize),
    Forget(Vertex, usize),
    Join(usize, usize),
}

struct NiceDecomposition {
    nodes: Vec<NiceNode>,
    bags: Vec<Vec<Vertex>>, // sorted
    root: usize,
}

fn build_nice(td: &TreeDecomposition) -> NiceDecomposition {
    let mut nodes = Vec::new();
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut push = |node: NiceNode,
                    bag: Vec<Vertex>,
                    nodes: &mut Vec<NiceNode>,
                    bags: &mut Vec<Vec<Vertex>>| {
        nodes.push(node);
        bags.push(bag);
        nodes.len() - 1
    };

    // Builds a chain from `from` (an existing node producing bag `have`) to
    // target bag `want` by forgetting then introducing.
    fn morph(
        mut from: usize,
        have: &[Vertex],
        want: &[Vertex],
        nodes: &mut Vec<NiceNode>,
        bags: &mut Vec<Vec<Vertex>>,
    ) -> usize {
        let mut cur: Vec<Vertex> = have.to_vec();
        for v in have.iter().filter(|v| !want.contains(v)) {
            cur.retain(|u| u != v);
            nodes.push(NiceNode::Forget(*v, from));
            bags.push(cur.clone());
            from = nodes.len() - 1;
        }
        for v in want.iter().filter(|v| !have.contains(v)) {
            cur.push(*v);
            cur.sort_unstable();
            nodes.push(NiceNode::Introduce(*v, from));
            bags.push(cur.clone());
            from = nodes.len() - 1;
        }
        from
    }

    fn rec(
        td: &TreeDecomposition,
        children: &BTreeMap<usize, Vec<usize>>,
        id: usize,
        nodes: &mut Vec<NiceNode>,
        bags: &mut Vec<Vec<Vertex>>,
        push: &mut impl FnMut(NiceNode, Vec<Vertex>, &mut Vec<NiceNode>, &mut Vec<Vec<Vertex>>) -> usize,
    ) -> usize {
        let bag: Vec<Vertex> = td.bag(id).iter().copied().collect();
        let kids = &children[&id];
        if kids.is_empty() {
            let leaf = push(NiceNode::Leaf, vec![], nodes, bags);
            return morph(leaf, &[], &bag, nodes, bags);
        }
        let mut acc: Option<usize> = None;
        for &k in kids {
            let sub = rec(td, children, k, nodes, bags, push);
            let sub_bag: Vec<Vertex> = td.bag(k).iter().copied().collect();
            let shaped = morph(sub, &sub_bag, &bag, nodes, bags);
            acc = Some(match acc {
                None => shaped,
                Some(prev) => push(NiceNode::Join(prev, shaped), bag.clone(), nodes, bags),
            });
        }
        acc.unwrap()
    }

    let children = td.children_map();
    let root = td.root().expect("decomposition must have a root");
    let produced = rec(td, &children, root, &mut nodes, &mut bags, &mut push);
    let root_bag: Vec<Vertex> = td.bag(root).iter().copied().collect();
    let top = morph(produced, &root_bag, &[], &mut nodes, &mut bags);
    NiceDecomposition {
        nodes,
        bags,
        root: top,
    }
}

const DELETED: u8 = 0;

/// Minimum odd cycle transversal by dynamic programming over a tree
/// decomposition. States assign each bag vertex deleted / side 0 / side 1.
pub fn oct_dp(g: &Graph, td: &TreeDecomposition) -> VertexSet {
    debug_assert!(td.validate(g).is_ok());
    if g.vertex_count() == 0 {
        return VertexSet::new();
    }
    let nice = build_nice(td);
    type Table = HashMap<Vec<u8>, VertexSet>;
    let mut tables: Vec<Table> = vec![Table::new(); nice.nodes.len()];

    let better = |cur: &mut Table, state: Vec<u8>, set: VertexSet| match cur.get(&state) {
        Some(old) if (old.len(), old) <= (set.len(), &set) => {}
        _ => {
            cur.insert(state, set);
        }
    };

    for id in 0..nice.nodes.len() {
        let bag = &nice.bags[id];
        let mut table = Table::new();
        match nice.nodes[id] {
            NiceNode::Leaf => {
                table.insert(vec![], VertexSet::new());
            }
            NiceNode::Introduce(v, child) => {
                let vi = bag.iter().position(|&u| u == v).unwrap();
                for (cstate, cset) in &tables[child] {
                    for choice in [DELETED, 1, 2] {
                        // Edge check against colored bag members.
                        if choice != DELETED {
                            let conflict = bag.iter().enumerate().any(|(i, &u)| {
                                i != vi && g.has_edge(u, v) && {
                                    let us = state_at(cstate, bag, vi, i);
                                    us != DELETED && us == choice
                                }
                            });
                            if conflict {
                                continue;
                            }
                        }
                        let mut state = cstate.clone();
                        state.insert(vi, choice);
                        let mut set = cset.clone();
                        if choice == DELETED {
                            set.insert(v);
                        }
                        better(&mut table, state, set);
                    }
                }
            }
            NiceNode::Forget(v, child) => {
                let child_bag = &nice.bags[child];
                let vi = child_bag.iter().position(|&u| u == v).unwrap();
                for (cstate, cset) in &tables[child] {
                    let mut state = cstate.clone();
                    state.remove(vi);
                    better(&mut table, state, cset.clone());
                }
            }
            NiceNode::Join(a, b) => {
                for (astate, aset) in &tables[a] {
                    if let Some(bset) = tables[b].get(astate) {
                        let set: VertexSet = aset.union(bset).copied().collect();
                        better(&mut table, astate.clone(), set);
                    }
                }
            }
        }
        tables[id] = table;
    }
    let result = tables[nice.root]
        .get(&vec![])
        .cloned()
        .expect("root table missing the empty state");
    debug_assert!(matches!(
        bipartition(&g.removed(&result), &g.removed(&result).vertex_set()),
        BipartitionResult::Bipartite(_)
    ));
    result
}

/// Index into a child state given that position `vi` was inserted in the
/// parent bag.
fn state_at(cstate: &[u8], _bag: &[Vertex], vi: usize, i: usize) -> u8 {
    if i < vi {
        cstate[i]
    } else {
        cstate[i - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeletionMode {
    Exact,
    Greedy,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TreewidthError {
    #[error("exact deletion-set search refused: {0} vertices exceed ceiling {1}")]
    ExactCeilingExceeded(usize, usize),
}

fn valid_deletion_set(g: &Graph, x: &VertexSet, w: usize) -> bool {
    let rest = g.removed(x);
    matches!(
        bipartition(&rest, &rest.vertex_set()),
        BipartitionResult::Bipartite(_)
    ) && decompose(&rest, w).is_some()
}

/// A set `X` with `g - X` bipartite of treewidth at most `w`. Exact mode
/// finds a minimum-cardinality set by exhaustive search (subject to the
/// ceiling); greedy mode deletes highest-degree vertices until valid, with
/// no optimality guarantee.
pub fn compute_deletion_set(
    g: &Graph,
    w: usize,
    mode: DeletionMode,
    exact_ceiling: usize,
) -> Result<VertexSet, TreewidthError> {
    match mode {
        DeletionMode::Exact => {
            if g.vertex_count() > exact_ceiling {
                return Err(TreewidthError::ExactCeilingExceeded(
                    g.vertex_count(),
                    exact_ceiling,
                ));
            }
            let verts: Vec<Vertex> = g.vertices().collect();
            for size in 0..=verts.len() {
                let mut found: Option<VertexSet> = None;
                subsets_of_size(&verts, size, &mut |sub| {
                    if found.is_none() {
                        let x: VertexSet = sub.iter().copied().collect();
                        if valid_deletion_set(g, &x, w) {
                            found = Some(x);
                        }
                    }
                });
                if let Some(x) = found {
                    return Ok(x);
                }
            }
            unreachable!("deleting all vertices is always valid")
        }
        DeletionMode::Greedy => {
            let mut x = VertexSet::new();
            let mut rest = g.clone();
            while !valid_deletion_set(g, &x, w) {
                let v = rest
                    .vertices()
                    .max_by_key(|&v| (rest.degree(v), std::cmp::Reverse(v)))
                    .expect("empty graph is always valid");
                x.insert(v);
                rest.remove_vertex(v);
            }
            Ok(x)
        }
    }
}

fn subsets_of_size(items: &[Vertex], size: usize, f: &mut impl FnMut(&[Vertex])) {
    fn rec(
        items: &[Vertex],
        start: usize,
        remaining: usize,
        cur: &mut Vec<Vertex>,
        f: &mut impl FnMut(&[Vertex]),
    ) {
        if remaining == 0 {
            f(cur);
            return;
        }
        for i in start..=items.len().saturating_sub(remaining) {
            cur.push(items[i]);
            rec(items, i + 1, remaining - 1, cur, f);
            cur.pop();
        }
    }
    if size > items.len() {
        return;
    }
    rec(items, 0, size, &mut Vec::new(), f);
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecompositionParseError {
    #[error("line {0}: malformed directive")]
    Malformed(usize),
    #[error("decomposition has no single root")]
    NoRoot,
}

/// Serialization: `b <id> <v...>` per bag, `t <parent> <child>` per tree
/// edge, both groups sorted; round-trips exactly.
pub fn write_decomposition(td: &TreeDecomposition) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for (id, bag) in td.bags() {
        write!(out, "b {id}").unwrap();
        for v in bag {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (&id, &p) in &td.parent {
        if let Some(p) = p {
            writeln!(out, "t {p} {id}").unwrap();
        }
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, DecompositionParseError> {
    let mut bags: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = DecompositionParseError::Malformed(idx + 1);
        match fields[0] {
            "b" if fields.len() >= 2 => {
                let id: usize = fields[1].parse().map_err(|_| err)?;
                let mut bag = VertexSet::new();
                for tok in &fields[2..] {
                    bag.insert(
                        tok.parse()
                            .map_err(|_| DecompositionParseError::Malformed(idx + 1))?,
                    );
                }
                bags.insert(id, bag);
            }
            "t" if fields.len() == 3 => {
                let p: usize = fields[1].parse().map_err(|_| err)?;
                let c: usize = fields[2]
                    .parse()
                    .map_err(|_| DecompositionParseError::Malformed(idx + 1))?;
                edges.push((p, c));
            }
            _ => return Err(err),
        }
    }
    let mut parent: BTreeMap<usize, Option<usize>> = bags.keys().map(|&id| (id, None)).collect();
    for (p, c) in edges {
        if !parent.contains_key(&c) || !parent.contains_key(&p) {
            return Err(DecompositionParseError::NoRoot);
        }
        parent.insert(c, Some(p));
    }
    let roots = parent.values().filter(|p| p.is_none()).count();
    if roots != 1 && !bags.is_empty() {
        return Err(DecompositionParseError::NoRoot);
    }
    Ok(TreeDecomposition { bags, parent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_from_edges(n: u32, edges: &[(u32, u32)]) -> Graph {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    fn deterministic_graph(n: u32, keep_mod: u64, seed: u64) -> Graph {
        let mut g = Graph::with_vertices(n);
        let mut state = seed;
        for u in 0..n {
            for v in (u + 1)..n {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if (state >> 33) % keep_mod == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Exhaustive treewidth <= w decision over all elimination orders,
    /// memo-free and independent of the implementation.
    fn brute_tw_at_most(g: &Graph, w: usize) -> bool {
        fn rec(adj: &BTreeMap<Vertex, VertexSet>, w: usize) -> bool {
            if adj.is_empty() {
                return true;
            }
            for (&v, nbrs) in adj {
                if nbrs.len() <= w {
                    let mut next = adj.clone();
                    let nbrs = next.remove(&v).unwrap();
                    for &u in &nbrs {
                        next.get_mut(&u).unwrap().remove(&v);
                    }
                    let list: Vec<Vertex> = nbrs.into_iter().collect();
                    for (i, &a) in list.iter().enumerate() {
                        for &b in &list[i + 1..] {
                            next.get_mut(&a).unwrap().insert(b);
                            next.get_mut(&b).unwrap().insert(a);
                        }
                    }
                    if rec(&next, w) {
                        return true;
                    }
                }
            }
            false
        }
        let adj: BTreeMap<Vertex, VertexSet> =
            g.vertices().map(|v| (v, g.neighbor_set(v))).collect();
        rec(&adj, w)
    }

    /// Brute-force minimum OCT by subset enumeration.
    fn brute_min_oct(g: &Graph) -> usize {
        let verts: Vec<Vertex> = g.vertices().collect();
        for size in 0..=verts.len() {
            let mut ok = false;
            subsets_of_size(&verts, size, &mut |sub| {
                if !ok {
                    let s: VertexSet = sub.iter().copied().collect();
                    let rest = g.removed(&s);
                    ok = matches!(
                        bipartition(&rest, &rest.vertex_set()),
                        BipartitionResult::Bipartite(_)
                    );
                }
            });
            if ok {
                return size;
            }
        }
        unreachable!()
    }

    #[test]
    fn forest_width_one() {
        let g = graph_from_edges(6, &[(0, 1), (1, 2), (3, 4)]);
        let td = decompose(&g, 1).unwrap();
        assert!(td.width() <= 1);
        assert_eq!(td.validate(&g), Ok(()));
    }

    #[test]
    fn k4_refused_at_width_two() {
        let g = graph_from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(decompose(&g, 2).is_none());
        assert!(decompose(&g, 3).is_some());
    }

    #[test]
    fn decompose_sound_and_complete_small() {
        for seed in 0..40 {
            let g = deterministic_graph(9, 3, 4242 + seed);
            for w in 1..=2usize {
                match decompose(&g, w) {
                    Some(td) => {
                        assert_eq!(td.validate(&g), Ok(()));
                        assert!(td.width() <= w as i64);
                        assert!(
                            brute_tw_at_most(&g, w),
                            "decomposed but oracle refuses (seed {seed}, w {w})"
                        );
                    }
                    None => {
                        assert!(
                            !brute_tw_at_most(&g, w),
                            "refused but oracle accepts (seed {seed}, w {w})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_handles_twelve_vertex_cases() {
        // Series-parallel ladder on 12 vertices: width 2 accepted.
        let mut ladder = Graph::with_vertices(12);
        for i in 0..5u32 {
            ladder.add_edge(2 * i, 2 * i + 2);
            ladder.add_edge(2 * i + 1, 2 * i + 3);
        }
        for i in 0..6u32 {
            ladder.add_edge(2 * i, 2 * i + 1);
        }
        let td = decompose(&ladder, 2).unwrap();
        assert_eq!(td.validate(&ladder), Ok(()));
        assert!(td.width() <= 2);

        // K4 plus a tail: refused at width 2 regardless of the tail.
        let mut k4tail = graph_from_edges(12, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for v in 4..12u32 {
            k4tail.add_edge(v - 1, v);
        }
        assert!(decompose(&k4tail, 2).is_none());
        assert!(decompose(&k4tail, 3).is_some());
    }

    #[test]
    fn exact_search_matches_greedy_regime() {
        for seed in 0..10 {
            let g = deterministic_graph(8, 3, 99 + seed);
            let via_exact = exact_elimination(&g, 2).is_some();
            assert_eq!(via_exact, brute_tw_at_most(&g, 2), "seed {seed}");
            if let Some(order) = exact_elimination(&g, 2) {
                let td = decomposition_from_order(&g, &order);
                assert_eq!(td.validate(&g), Ok(()));
                assert!(td.width() <= 2);
            }
        }
    }

    #[test]
    fn validate_detects_violations() {
        let g = graph_from_edges(3, &[(0, 1), (1, 2)]);
        let td = decompose(&g, 1).unwrap();
        assert_eq!(td.validate(&g), Ok(()));

        // Remove a vertex from all bags.
        let mut bags: BTreeMap<usize, VertexSet> = td.bags().map(|(i, b)| (i, b.clone())).collect();
        for b in bags.values_mut() {
            b.remove(&2);
        }
        let broken = TreeDecomposition::new(bags, td.parent.clone());
        assert!(matches!(
            broken.validate(&g),
            Err(DecompositionViolation::VertexUncovered(2)
                | DecompositionViolation::EdgeUncovered(1, 2))
        ));

        // Disconnect an occurrence: vertex 0 in two non-adjacent bags.
        let bags = BTreeMap::from([
            (0, VertexSet::from([0, 1])),
            (1, VertexSet::from([1, 2])),
            (2, VertexSet::from([0, 2])),
        ]);
        let parent = BTreeMap::from([(0, None), (1, Some(0)), (2, Some(1))]);
        let broken = TreeDecomposition::new(bags, parent);
        assert_eq!(
            broken.validate(&g),
            Err(DecompositionViolation::OccurrenceDisconnected(0))
        );
    }

    #[test]
    fn oct_dp_trivial_cases() {
        let tree = graph_from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let td = decompose(&tree, 1).unwrap();
        assert_eq!(oct_dp(&tree, &td), VertexSet::new());

        let triangle = graph_from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let td = decompose(&triangle, 2).unwrap();
        assert_eq!(oct_dp(&triangle, &td).len(), 1);
    }

    #[test]
    fn oct_dp_matches_brute_force() {
        let mut tested = 0;
        for seed in 0..80 {
            let g = deterministic_graph(11, 3, 31337 + seed);
            if let Some(td) = decompose(&g, 2) {
                let s = oct_dp(&g, &td);
                assert_eq!(s.len(), brute_min_oct(&g), "seed {seed}");
                tested += 1;
            }
        }
        assert!(tested >= 5, "too few tw<=2 samples ({tested})");
    }

    #[test]
    fn deletion_set_modes() {
        // Already valid: empty set.
        let path = graph_from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            compute_deletion_set(&path, 1, DeletionMode::Exact, 16).unwrap(),
            VertexSet::new()
        );

        // K5 at width 1: oracle-verified minimum is 3.
        let mut k5 = Graph::with_vertices(5);
        for u in 0..5 {
            for v in (u + 1)..5 {
                k5.add_edge(u, v);
            }
        }
        let mut best = usize::MAX;
        let verts: Vec<Vertex> = k5.vertices().collect();
        for size in 0..=5 {
            let mut ok = false;
            subsets_of_size(&verts, size, &mut |sub| {
                let x: VertexSet = sub.iter().copied().collect();
                ok = ok || valid_deletion_set(&k5, &x, 1);
            });
            if ok {
                best = size;
                break;
            }
        }
        assert_eq!(best, 3);
        let x = compute_deletion_set(&k5, 1, DeletionMode::Exact, 16).unwrap();
        assert_eq!(x.len(), 3);

        for seed in 0..10 {
            let g = deterministic_graph(10, 3, 555 + seed);
            let x = compute_deletion_set(&g, 1, DeletionMode::Greedy, 16).unwrap();
            assert!(valid_deletion_set(&g, &x, 1));
        }

        let big = Graph::with_vertices(40);
        assert!(matches!(
            compute_deletion_set(&deterministic_graph(40, 2, 1), 1, DeletionMode::Exact, 16),
            Err(TreewidthError::ExactCeilingExceeded(40, 16))
        ));
        drop(big);
    }

    #[test]
    fn decomposition_roundtrip() {
        let g = deterministic_graph(9, 3, 777);
        if let Some(td) = decompose(&g, 2) {
            let text = write_decomposition(&td);
            let back = parse_decomposition(&text).unwrap();
            assert_eq!(back, td);
            assert_eq!(write_decomposition(&back), text);
        }
    }
}
