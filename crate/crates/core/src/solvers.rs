//! Exact solvers used as verification oracles: plain, weighted, annotated
//! and restricted odd cycle transversal, plus vertex cover.
//!
//! The transversal solvers share a branch-and-bound engine: branch on the
//! vertices of a shortest odd cycle, prune with a packing lower bound
//! (disjoint cliques and odd cycles), split connected components and
//! memoize subproblem minima by alive-vertex mask. Two sound dominance
//! rules shrink the branching space: a degree-2 vertex whose neighbors are
//! adjacent never needs deleting (swap it for a neighbor), and degree-2
//! twins sharing both neighbors never need deleting when at least two
//! exist. Every returned solution is certificate-checked before it leaves
//! the solver, and the engine is cross-checked against brute force on small
//! graphs in the test suite.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{bipartition, BipartitionResult, Graph, Vertex, VertexSet};
use crate::instances::{AnnotatedInstance, RestrictedInstance};

#[derive(Clone, Copy, Debug)]
pub struct SolverLimits {
    /// Largest vertex count the branching solvers accept.
    pub branch_ceiling: usize,
    /// Largest vertex count for brute-force cross-checks in the harness.
    pub brute_ceiling: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            branch_ceiling: 20,
            brute_ceiling: 12,
        }
    }
}

impl SolverLimits {
    pub fn relaxed() -> Self {
        SolverLimits {
            branch_ceiling: usize::MAX,
            brute_ceiling: 12,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("instance has {vertices} vertices, above the solver ceiling {ceiling}")]
    CeilingExceeded { vertices: usize, ceiling: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub deleted: VertexSet,
    /// Cardinality, or total weight for the weighted solver.
    pub cost: u64,
    /// Proper 2-coloring of the residual graph.
    pub coloring: Option<BTreeMap<Vertex, u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(Solution),
    Infeasible,
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Feasible(s) => Some(s),
            SolveOutcome::Infeasible => None,
        }
    }
}

/// Certificate check for plain and weighted solutions.
pub fn check_oct_solution(g: &Graph, sol: &Solution, weighted: bool) -> bool {
    if !sol.deleted.iter().all(|v| g.has_vertex(*v)) {
        return false;
    }
    let expected: u64 = if weighted {
        g.total_weight(&sol.deleted)
    } else {
        sol.deleted.len() as u64
    };
    if expected != sol.cost {
        return false;
    }
    let rest = g.removed(&sol.deleted);
    match &sol.coloring {
        Some(c) => {
            rest.vertices().all(|v| c.contains_key(&v)) && rest.edges().all(|(u, v)| c[&u] != c[&v])
        }
        None => matches!(
            bipartition(&rest, &rest.vertex_set()),
            BipartitionResult::Bipartite(_)
        ),
    }
}

pub fn check_annotated_solution(inst: &AnnotatedInstance, sol: &Solution) -> bool {
    if sol.deleted.len() as u64 != sol.cost {
        return false;
    }
    let Some(c) = &sol.coloring else {
        return inst.is_valid_solution(&sol.deleted);
    };
    let rest = inst.graph.removed(&sol.deleted);
    rest.vertices().all(|v| c.contains_key(&v))
        && rest.edges().all(|(u, v)| c[&u] != c[&v])
        && inst
            .mono
            .iter()
            .filter(|(u, v)| rest.has_vertex(*u) && rest.has_vertex(*v))
            .all(|(u, v)| c[u] == c[v])
}

// ---------------------------------------------------------------------------
// Branch-and-bound engine for (weighted) odd cycle transversal.

#[derive(Clone, PartialEq, Eq, Hash)]
struct Mask(Vec<u64>);

impl Mask {
    fn full(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut m = vec![u64::MAX; words];
        if n % 64 != 0 && words > 0 {
            m[words - 1] = (1u64 << (n % 64)) - 1;
        }
        Mask(m)
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    fn empty_like(&self) -> Self {
        Mask(vec![0; self.0.len()])
    }
}

enum Bound {
    Exact(u64),
    MoreThan(u64),
}

struct Engine {
    adj: Vec<Vec<usize>>,
    weight: Vec<u64>,
    never: Vec<bool>,
    verts: Vec<Vertex>,
    memo: HashMap<Mask, Bound>,
}

impl Engine {
    fn new(g: &Graph, weighted: bool) -> Self {
        let verts: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| g.neighbors(v).map(|u| index[&u]).collect())
            .collect();
        let weight: Vec<u64> = verts
            .iter()
            .map(|&v| if weighted { g.weight(v) } else { 1 })
            .collect();
        let never = mark_never_delete(&adj, &weight);
        Engine {
            adj,
            weight,
            never,
            verts,
            memo: HashMap::new(),
        }
    }

    fn degree(&self, v: usize, alive: &Mask) -> usize {
        self.adj[v].iter().filter(|&&u| alive.get(u)).count()
    }

    /// Iteratively strips degree <= 1 vertices; they lie on no cycle.
    fn reduce(&self, alive: &Mask) -> Mask {
        let mut out = alive.clone();
        let mut queue: Vec<usize> = out.ones().filter(|&v| self.degree(v, &out) <= 1).collect();
        while let Some(v) = queue.pop() {
            if !out.get(v) || self.degree(v, &out) > 1 {
                continue;
            }
            out.clear(v);
            for &u in &self.adj[v] {
                if out.get(u) && self.degree(u, &out) <= 1 {
                    queue.push(u);
                }
            }
        }
        out
    }

    fn components(&self, alive: &Mask) -> Vec<Mask> {
        let mut seen = alive.empty_like();
        let mut out = Vec::new();
        for root in alive.ones() {
            if seen.get(root) {
                continue;
            }
            let mut comp = alive.empty_like();
            comp.set(root);
            seen.set(root);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if alive.get(u) && !seen.get(u) {
                        seen.set(u);
                        comp.set(u);
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn first_triangle(&self, alive: &Mask) -> Option<[usize; 3]> {
        for v in alive.ones() {
            let nbrs: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&u| alive.get(u) && u > v)
                .collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if self.adj[a].contains(&b) {
                        return Some([v, a, b]);
                    }
                }
            }
        }
        None
    }

    /// Shortest odd closed walk; its vertex set contains an odd cycle and
    /// meets every transversal, which is all branching needs.
    fn shortest_odd_cycle(&self, alive: &Mask) -> Option<Vec<usize>> {
        if let Some(t) = self.first_triangle(alive) {
            return Some(t.to_vec());
        }
        let n = self.adj.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for s in alive.ones() {
            let mut dist: Vec<[Option<usize>; 2]> = vec![[None; 2]; n];
            let mut parent: Vec<[Option<usize>; 2]> = vec![[None; 2]; n];
            dist[s][0] = Some(0);
            let mut queue = std::collections::VecDeque::from([(s, 0usize)]);
            while let Some((v, p)) = queue.pop_front() {
                let d = dist[v][p].unwrap();
                if let Some((b, _)) = &best {
                    if d + 1 >= *b {
                        continue;
                    }
                }
                for &u in &self.adj[v] {
                    if alive.get(u) && dist[u][1 - p].is_none() {
                        dist[u][1 - p] = Some(d + 1);
                        parent[u][1 - p] = Some(v);
                        queue.push_back((u, 1 - p));
                    }
                }
            }
            if let Some(d) = dist[s][1] {
                if best.as_ref().is_none_or(|(b, _)| d < *b) {
                    let mut walk = Vec::new();
                    let (mut v, mut p) = (s, 1usize);
                    while !(v == s && p == 0) {
                        walk.push(v);
                        let pv = parent[v][p].unwrap();
                        v = pv;
                        p = 1 - p;
                    }
                    walk.push(s);
                    walk.dedup();
                    best = Some((d, walk));
                }
            }
        }
        best.map(|(_, w)| {
            let mut seen = std::collections::BTreeSet::new();
            w.into_iter().filter(|&v| seen.insert(v)).collect()
        })
    }

    /// Lower bound: greedily pack disjoint cliques (a k-clique needs its
    /// k - 2 cheapest vertices) and odd cycles (their cheapest vertex).
    fn packing_lb(&self, alive: &Mask, cap: u64) -> u64 {
        let mut pool = alive.clone();
        let mut lb: u64 = 0;
        while let Some([a, b, c]) = self.first_triangle(&pool) {
            let mut clique = vec![a, b, c];
            for v in pool.ones() {
                if !clique.contains(&v) && clique.iter().all(|&u| self.adj[v].contains(&u)) {
                    clique.push(v);
                }
            }
            let mut ws: Vec<u64> = clique.iter().map(|&v| self.weight[v]).collect();
            ws.sort_unstable();
            lb += ws[..clique.len() - 2].iter().sum::<u64>();
            for v in clique {
                pool.clear(v);
            }
            if lb > cap {
                return lb;
            }
        }
        while let Some(cycle) = self.shortest_odd_cycle(&pool) {
            lb += cycle.iter().map(|&v| self.weight[v]).min().unwrap();
            for v in cycle {
                pool.clear(v);
            }
            if lb > cap {
                return lb;
            }
        }
        lb
    }

    /// Minimum deletion weight within `alive` if it is at most `cap`.
    fn solve(&mut self, alive: &Mask, cap: u64) -> Option<u64> {
        let alive = self.reduce(alive);
        let comps = self.components(&alive);
        match comps.len() {
            0 => return Some(0),
            1 => {}
            _ => {
                let lbs: Vec<u64> = comps.iter().map(|c| self.packing_lb(c, cap)).collect();
                let mut total: u64 = 0;
                let mut rest_lb: u64 = lbs.iter().sum();
                for (comp, lb) in comps.iter().zip(&lbs) {
                    rest_lb -= lb;
                    let budget = cap.checked_sub(total + rest_lb)?;
                    let c = self.solve(comp, budget)?;
                    total += c;
                }
                return Some(total);
            }
        }

        match self.memo.get(&alive) {
            Some(Bound::Exact(c)) => return (*c <= cap).then_some(*c),
            Some(Bound::MoreThan(b)) if *b >= cap => return None,
            _ => {}
        }
        // The packing bound can be zero in the presence of zero-weight
        // vertices, so bipartiteness is decided by the cycle search alone.
        let Some(cycle) = self.shortest_odd_cycle(&alive) else {
            self.memo.insert(alive, Bound::Exact(0));
            return Some(0);
        };
        let lb = self.packing_lb(&alive, cap);
        if lb > cap {
            self.memo.insert(alive, Bound::MoreThan(cap));
            return None;
        }
        let mut candidates: Vec<usize> = cycle.into_iter().filter(|&v| !self.never[v]).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v, &alive)), v));
        debug_assert!(
            !candidates.is_empty(),
            "odd cycle with only dominated vertices"
        );

        let mut best: Option<u64> = None;
        for &v in &candidates {
            let target = match best {
                Some(b) => b.saturating_sub(1).min(cap),
                None => cap,
            };
            let Some(budget) = target.checked_sub(self.weight[v]) else {
                continue;
            };
            let mut child = alive.clone();
            child.clear(v);
            if let Some(c) = self.solve(&child, budget) {
                best = Some(c + self.weight[v]);
                if best == Some(lb) {
                    break;
                }
            }
        }
        match best {
            Some(c) => {
                self.memo.insert(alive, Bound::Exact(c));
                Some(c)
            }
            None => {
                let entry = self.memo.entry(alive).or_insert(Bound::MoreThan(cap));
                if let Bound::MoreThan(b) = entry {
                    *b = (*b).max(cap);
                }
                None
            }
        }
    }

    /// Re-walks the search to recover a deletion set of exactly `cost`.
    fn extract(&mut self, alive: &Mask, cost: u64) -> Vec<usize> {
        let alive = self.reduce(alive);
        let comps = self.components(&alive);
        if comps.len() > 1 {
            let mut out = Vec::new();
            let mut remaining = cost;
            for comp in comps {
                let c = self
                    .solve(&comp, remaining)
                    .expect("component minimum within total");
                out.extend(self.extract(&comp, c));
                remaining -= c;
            }
            debug_assert_eq!(remaining, 0);
            return out;
        }
        // Zero-weight deletions can be required even at cost 0, so only a
        // missing odd cycle ends the walk.
        let Some(cycle) = self.shortest_odd_cycle(&alive) else {
            debug_assert_eq!(cost, 0);
            return vec![];
        };
        let mut candidates: Vec<usize> = cycle.into_iter().filter(|&v| !self.never[v]).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v, &alive)), v));
        for v in candidates {
            let Some(budget) = cost.checked_sub(self.weight[v]) else {
                continue;
            };
            let mut child = alive.clone();
            child.clear(v);
            if self.solve(&child, budget) == Some(budget) {
                let mut out = self.extract(&child, budget);
                out.push(v);
                return out;
            }
        }
        unreachable!("no branch reproduces the computed minimum")
    }
}

/// Never-delete marking. Degree-2 twin classes (same two non-adjacent or
/// adjacent neighbors, at least two twins) are avoidable whenever one shared
/// neighbor is no heavier than the class. A degree-2 vertex with adjacent
/// neighbors swaps for a no-heavier unmarked neighbor; every marked vertex
/// keeps an unmarked swap target on its triangle.
fn mark_never_delete(adj: &[Vec<usize>], weight: &[u64]) -> Vec<bool> {
    let n = adj.len();
    let mut never = vec![false; n];
    let mut twin_groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        if adj[v].len() == 2 {
            let mut key = adj[v].clone();
            key.sort_unstable();
            twin_groups.entry(key).or_default().push(v);
        }
    }
    for (nbrs, group) in &twin_groups {
        if group.len() < 2 {
            continue;
        }
        let class_weight: u64 = group.iter().map(|&v| weight[v]).sum();
        if nbrs.iter().any(|&p| weight[p] <= class_weight) {
            for &v in group {
                never[v] = true;
            }
        }
    }
    for v in 0..n {
        if never[v] || adj[v].len() != 2 {
            continue;
        }
        let (a, b) = (adj[v][0], adj[v][1]);
        if !adj[a].contains(&b) {
            continue;
        }
        let target_ok = |t: usize| !never[t] && weight[t] <= weight[v];
        if !target_ok(a) && !target_ok(b) {
            continue;
        }
        // Marking v must leave each marked triangle neighbor its own
        // unmarked swap target.
        let breaks_invariant = [a, b].iter().any(|&m| {
            never[m] && adj[m].len() == 2 && {
                let other = if adj[m][0] == v { adj[m][1] } else { adj[m][0] };
                adj[m].contains(&v) && never[other]
            }
        });
        if !breaks_invariant {
            never[v] = true;
        }
    }
    never
}

fn run_engine(
    g: &Graph,
    budget: i64,
    weighted: bool,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    if g.vertex_count() > limits.branch_ceiling {
        return Err(SolverError::CeilingExceeded {
            vertices: g.vertex_count(),
            ceiling: limits.branch_ceiling,
        });
    }
    if budget < 0 {
        return Ok(SolveOutcome::Infeasible);
    }
    let mut engine = Engine::new(g, weighted);
    let full = Mask::full(engine.adj.len());
    let Some(cost) = engine.solve(&full, budget as u64) else {
        return Ok(SolveOutcome::Infeasible);
    };
    let deleted: VertexSet = engine
        .extract(&full, cost)
        .into_iter()
        .map(|i| engine.verts[i])
        .collect();
    let rest = g.removed(&deleted);
    let coloring = match bipartition(&rest, &rest.vertex_set()) {
        BipartitionResult::Bipartite(b) => {
            let mut c = BTreeMap::new();
            for &v in &b.side0 {
                c.insert(v, 0);
            }
            for &v in &b.side1 {
                c.insert(v, 1);
            }
            Some(c)
        }
        BipartitionResult::OddCycle(_) => None,
    };
    let sol = Solution {
        deleted,
        cost,
        coloring,
    };
    assert!(
        check_oct_solution(g, &sol, weighted),
        "solver produced an invalid certificate"
    );
    Ok(SolveOutcome::Feasible(sol))
}

/// Minimum odd cycle transversal of size at most `budget`, or infeasible.
/// Vertex weights are ignored.
pub fn solve_oct(
    g: &Graph,
    budget: i64,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    run_engine(g, budget, false, limits)
}

/// Minimum-weight odd cycle transversal of total weight at most `budget`.
pub fn solve_weighted_oct(
    g: &Graph,
    budget: i64,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    run_engine(g, budget, true, limits)
}

fn subsets_of_size(items: &[Vertex], size: usize, f: &mut impl FnMut(&[Vertex]) -> bool) -> bool {
    fn rec(
        items: &[Vertex],
        start: usize,
        left: usize,
        cur: &mut Vec<Vertex>,
        f: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if left == 0 {
            return f(cur);
        }
        for i in start..=items.len().saturating_sub(left) {
            cur.push(items[i]);
            if rec(items, i + 1, left - 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if size > items.len() {
        return false;
    }
    rec(items, 0, size, &mut Vec::new(), f)
}

fn solve_by_enumeration(
    inst: &AnnotatedInstance,
    pool: &VertexSet,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    if inst.graph.vertex_count() > limits.branch_ceiling {
        return Err(SolverError::CeilingExceeded {
            vertices: inst.graph.vertex_count(),
            ceiling: limits.branch_ceiling,
        });
    }
    if inst.budget < 0 {
        return Ok(SolveOutcome::Infeasible);
    }
    let items: Vec<Vertex> = pool.iter().copied().collect();
    let max_k = (inst.budget as usize).min(items.len());
    for k in 0..=max_k {
        let mut solution: Option<Solution> = None;
        subsets_of_size(&items, k, &mut |sub| {
            let s: VertexSet = sub.iter().copied().collect();
            match inst.solution_coloring(&s) {
                Some(coloring) => {
                    solution = Some(Solution {
                        deleted: s,
                        cost: k as u64,
                        coloring: Some(coloring),
                    });
                    true
                }
                None => false,
            }
        });
        if let Some(sol) = solution {
            debug_assert!(check_annotated_solution(inst, &sol));
            return Ok(SolveOutcome::Feasible(sol));
        }
    }
    Ok(SolveOutcome::Infeasible)
}

/// Minimum annotated solution by exhaustive search over deletion sets,
/// feasibility via modulator colorings extended over the rest.
pub fn solve_annotated(
    inst: &AnnotatedInstance,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    solve_by_enumeration(inst, &inst.graph.vertex_set(), limits)
}

/// Same as [`solve_annotated`] but deletions are restricted to the
/// deletable set.
pub fn solve_restricted(
    inst: &RestrictedInstance,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    solve_by_enumeration(&inst.annotated, &inst.deletable, limits)
}

/// Minimum vertex cover of size at most `budget`: branch on a maximum
/// degree vertex versus its whole neighborhood, with a matching lower
/// bound.
pub fn solve_vertex_cover(
    g: &Graph,
    budget: i64,
    limits: &SolverLimits,
) -> Result<SolveOutcome, SolverError> {
    if g.vertex_count() > limits.branch_ceiling {
        return Err(SolverError::CeilingExceeded {
            vertices: g.vertex_count(),
            ceiling: limits.branch_ceiling,
        });
    }
    if budget < 0 {
        return Ok(SolveOutcome::Infeasible);
    }

    fn matching_lb(g: &Graph) -> usize {
        let mut used = VertexSet::new();
        let mut size = 0;
        for (u, v) in g.edges() {
            if !used.contains(&u) && !used.contains(&v) {
                used.insert(u);
                used.insert(v);
                size += 1;
            }
        }
        size
    }

    fn rec(g: &Graph, cap: i64, best: &mut Option<VertexSet>, chosen: &mut VertexSet) {
        let mut g = g.clone();
        // Degree-1 vertices: take the neighbor.
        loop {
            let Some(v) = g.vertices().find(|&v| g.degree(v) == 1) else {
                break;
            };
            let u = g.neighbors(v).next().unwrap();
            chosen.insert(u);
            g.remove_vertex(u);
            g.remove_vertex(v);
        }
        let upper = match best {
            Some(b) => (b.len() as i64 - 1).min(cap),
            None => cap,
        };
        if (chosen.len() as i64) + (matching_lb(&g) as i64) > upper {
            // Undo nothing: chosen is unwound by the caller via clone below.
            return;
        }
        if g.edge_count() == 0 {
            *best = Some(chosen.clone());
            return;
        }
        let v = g
            .vertices()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        // Branch 1: v in the cover.
        {
            let mut g1 = g.clone();
            g1.remove_vertex(v);
            let mut c1 = chosen.clone();
            c1.insert(v);
            rec(&g1, cap, best, &mut c1);
        }
        // Branch 2: all neighbors of v in the cover.
        {
            let nbrs: VertexSet = g.neighbor_set(v);
            let mut g2 = g.clone();
            let mut c2 = chosen.clone();
            for &u in &nbrs {
                c2.insert(u);
                g2.remove_vertex(u);
            }
            g2.remove_vertex(v);
            rec(&g2, cap, best, &mut c2);
        }
    }

    let mut best: Option<VertexSet> = None;
    rec(g, budget, &mut best, &mut VertexSet::new());
    match best {
        Some(cover) if cover.len() as i64 <= budget => {
            let rest = g.removed(&cover);
            let coloring = rest.vertices().map(|v| (v, 0u8)).collect();
            let sol = Solution {
                cost: cover.len() as u64,
                deleted: cover,
                coloring: Some(coloring),
            };
            debug_assert!(g
                .edges()
                .all(|(u, v)| sol.deleted.contains(&u) || sol.deleted.contains(&v)));
            Ok(SolveOutcome::Feasible(sol))
        }
        _ => Ok(SolveOutcome::Infeasible),
    }
}
