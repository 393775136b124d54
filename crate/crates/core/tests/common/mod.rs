//! Shared oracles for the integration suites. Everything here is
//! implemented independently of the library code paths it is used to check:
//! brute-force subset enumeration, exhaustive path search and plain BFS
//! reachability only.

#![allow(dead_code)] // each integration test binary uses its own subset

use rand::Rng;

use octkernel::graph::{Graph, Vertex, VertexSet};

pub fn random_graph(rng: &mut impl Rng, n: u32, p: f64) -> Graph {
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Proper-2-coloring decision by direct search, no library calls.
pub fn is_bipartite_oracle(g: &Graph) -> bool {
    let mut color: std::collections::BTreeMap<Vertex, u8> = Default::default();
    for root in g.vertices() {
        if color.contains_key(&root) {
            continue;
        }
        color.insert(root, 0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                match color.get(&v) {
                    None => {
                        color.insert(v, 1 - color[&u]);
                        stack.push(v);
                    }
                    Some(&c) if c == color[&u] => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn for_each_subset_of_size(
    items: &[Vertex],
    size: usize,
    f: &mut impl FnMut(&[Vertex]) -> bool,
) -> bool {
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

/// Brute-force minimum odd cycle transversal size.
pub fn brute_min_oct(g: &Graph) -> usize {
    let verts: Vec<Vertex> = g.vertices().collect();
    for size in 0..=verts.len() {
        let found = for_each_subset_of_size(&verts, size, &mut |sub| {
            let s: VertexSet = sub.iter().copied().collect();
            is_bipartite_oracle(&g.removed(&s))
        });
        if found {
            return size;
        }
    }
    unreachable!("deleting everything is bipartite")
}

/// All simple paths inside `scope`, deduplicated by orientation (the first
/// endpoint never exceeds the last).
pub fn all_simple_paths(g: &Graph, scope: &VertexSet) -> Vec<Vec<Vertex>> {
    fn dfs(
        g: &Graph,
        scope: &VertexSet,
        path: &mut Vec<Vertex>,
        inside: &mut VertexSet,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if path[0] <= *path.last().unwrap() {
            out.push(path.clone());
        }
        let last = *path.last().unwrap();
        for next in g.neighbors(last) {
            if scope.contains(&next) && inside.insert(next) {
                path.push(next);
                dfs(g, scope, path, inside, out);
                path.pop();
                inside.remove(&next);
            }
        }
    }
    let mut out = Vec::new();
    for &s in scope {
        let mut path = vec![s];
        let mut inside = VertexSet::from([s]);
        dfs(g, scope, &mut path, &mut inside, &mut out);
    }
    out
}

/// BFS reachability, written directly for oracle independence.
pub fn reach_oracle(g: &Graph, from: &VertexSet, removed: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::new();
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in from {
        if g.has_vertex(v) && !removed.contains(&v) && seen.insert(v) {
            stack.push(v);
        }
    }
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !removed.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Full brute-force enumeration of important separators straight from the
/// definition: separators avoid both terminal sets, must be minimal, and no
/// separator of at most equal size may reach strictly more from `x`.
pub fn brute_important_separators(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    m: usize,
) -> Vec<VertexSet> {
    let candidates: Vec<Vertex> = g
        .vertices()
        .filter(|v| !x.contains(v) && !y.contains(v))
        .collect();
    let separates = |s: &VertexSet| reach_oracle(g, x, s).is_disjoint(y);
    let mut all: Vec<VertexSet> = Vec::new();
    for size in 0..=m.min(candidates.len()) {
        for_each_subset_of_size(&candidates, size, &mut |sub| {
            let s: VertexSet = sub.iter().copied().collect();
            if separates(&s) {
                all.push(s);
            }
            false
        });
    }
    let mut important: Vec<VertexSet> = Vec::new();
    for s in &all {
        if all.iter().any(|o| o != s && o.is_subset(s)) {
            continue; // not minimal
        }
        let rs = reach_oracle(g, x, s);
        let dominated = all.iter().any(|o| {
            o != s && o.len() <= s.len() && {
                let ro = reach_oracle(g, x, o);
                rs.is_subset(&ro) && rs != ro
            }
        });
        if !dominated {
            important.push(s.clone());
        }
    }
    important.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    important
}
