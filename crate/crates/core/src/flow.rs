//! Unit-vertex-capacity maximum flow via vertex splitting.
//!
//! Every cuttable vertex `v` becomes an arc `v_in -> v_out` of capacity 1;
//! all other arcs (edges, source and sink attachments) get capacity larger
//! than any possible flow, so every crossing arc of a residual cut is a
//! vertex arc and min cuts are vertex cuts. Augmentation is BFS
//! (shortest-path), one unit per round.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex, VertexSet};

pub(crate) struct UnitCutInput<'a> {
    pub graph: &'a Graph,
    /// Cuttable vertices; paths and cuts live inside this set.
    pub scope: VertexSet,
    /// Vertices attached to the super source.
    pub source_side: VertexSet,
    /// Vertices attached to the super sink.
    pub sink_side: VertexSet,
}

pub(crate) struct UnitCutResult {
    /// Min cut derived from source-side residual reachability.
    pub cut: VertexSet,
    /// Min cut derived from sink-side residual reachability (the cut whose
    /// source-reachable region is inclusion-maximal).
    pub cut_near_sink: VertexSet,
    /// Vertex-disjoint source-to-sink paths through the scope, as scope
    /// vertex sequences. One per flow unit.
    pub paths: Vec<Vec<Vertex>>,
    /// True when augmentation stopped early because `bound` was reached;
    /// cut fields are empty in that case.
    pub reached_bound: bool,
}

struct Net {
    to: Vec<usize>,
    cap: Vec<i64>,
    head: Vec<Vec<usize>>, // node -> arc indices
    verts: Vec<Vertex>,    // scope in sorted order
}

const S: usize = 0;
const T: usize = 1;

impl Net {
    fn node_in(&self, idx: usize) -> usize {
        2 + 2 * idx
    }
    fn node_out(&self, idx: usize) -> usize {
        3 + 2 * idx
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        self.head[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }
}

pub(crate) fn unit_vertex_cut(input: &UnitCutInput, bound: Option<usize>) -> UnitCutResult {
    let verts: Vec<Vertex> = input.scope.iter().copied().collect();
    let index = |v: Vertex| verts.binary_search(&v).unwrap();
    let n = verts.len();
    let big = n as i64 + 1;
    let mut net = Net {
        to: Vec::new(),
        cap: Vec::new(),
        head: vec![Vec::new(); 2 + 2 * n],
        verts: verts.clone(),
    };
    for (i, &v) in verts.iter().enumerate() {
        net.add_arc(net.node_in(i), net.node_out(i), 1);
        debug_assert!(input.graph.has_vertex(v));
    }
    for (i, &v) in verts.iter().enumerate() {
        for u in input.graph.neighbors(v) {
            if u > v && input.scope.contains(&u) {
                let j = index(u);
                net.add_arc(net.node_out(i), net.node_in(j), big);
                net.add_arc(net.node_out(j), net.node_in(i), big);
            }
        }
    }
    for &v in &input.source_side {
        debug_assert!(input.scope.contains(&v));
        net.add_arc(S, net.node_in(index(v)), big);
    }
    for &v in &input.sink_side {
        debug_assert!(input.scope.contains(&v));
        net.add_arc(net.node_out(index(v)), T, big);
    }

    let mut flow = 0usize;
    let mut reached_bound = false;
    loop {
        if let Some(b) = bound {
            // Hitting the bound means the true max flow is at least b; cuts
            // are not extracted in that case.
            if flow >= b {
                reached_bound = true;
                break;
            }
        }
        if augment(&mut net) {
            flow += 1;
        } else {
            break;
        }
    }

    let paths = extract_paths(&mut net.clone_flow_view(), flow);
    if reached_bound {
        return UnitCutResult {
            cut: VertexSet::new(),
            cut_near_sink: VertexSet::new(),
            paths,
            reached_bound,
        };
    }

    let reach_src = residual_reach(&net, S, false);
    let reach_snk = residual_reach(&net, T, true);
    let mut cut = VertexSet::new();
    let mut cut_near_sink = VertexSet::new();
    for (i, &v) in net.verts.iter().enumerate() {
        if reach_src[net.node_in(i)] && !reach_src[net.node_out(i)] {
            cut.insert(v);
        }
        if reach_snk[net.node_out(i)] && !reach_snk[net.node_in(i)] {
            cut_near_sink.insert(v);
        }
    }
    debug_assert_eq!(cut.len(), flow);
    debug_assert_eq!(cut_near_sink.len(), flow);
    UnitCutResult {
        cut,
        cut_near_sink,
        paths,
        reached_bound,
    }
}

/// One BFS augmentation of a single flow unit. Returns false when the sink
/// is unreachable in the residual network.
fn augment(net: &mut Net) -> bool {
    let mut pred: Vec<Option<usize>> = vec![None; net.head.len()]; // arc used to enter node
    let mut seen = vec![false; net.head.len()];
    seen[S] = true;
    let mut queue = VecDeque::from([S]);
    'bfs: while let Some(u) = queue.pop_front() {
        for &a in &net.head[u] {
            let v = net.to[a];
            if net.cap[a] > 0 && !seen[v] {
                seen[v] = true;
                pred[v] = Some(a);
                if v == T {
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
    }
    if !seen[T] {
        return false;
    }
    let mut v = T;
    while let Some(a) = pred[v] {
        net.cap[a] -= 1;
        net.cap[a ^ 1] += 1;
        v = net.to[a ^ 1];
    }
    true
}

impl Net {
    /// Per-arc flow amounts (reverse arc residual), consumed by path walks.
    fn clone_flow_view(&self) -> FlowView {
        let flow: Vec<i64> = (0..self.to.len())
            .map(|a| if a % 2 == 0 { self.cap[a ^ 1] } else { 0 })
            .collect();
        FlowView {
            to: self.to.clone(),
            head: self.head.clone(),
            flow,
            verts: self.verts.clone(),
        }
    }
}

struct FlowView {
    to: Vec<usize>,
    head: Vec<Vec<usize>>,
    flow: Vec<i64>,
    verts: Vec<Vertex>,
}

/// Decomposes the flow into one path per unit. Vertex nodes carry at most
/// one unit, so successors are unique and walks cannot branch or loop.
fn extract_paths(view: &mut FlowView, units: usize) -> Vec<Vec<Vertex>> {
    let mut paths = Vec::with_capacity(units);
    for _ in 0..units {
        let mut cur = S;
        let mut path = Vec::new();
        loop {
            let &a = view.head[cur]
                .iter()
                .find(|&&a| a % 2 == 0 && view.flow[a] > 0)
                .expect("flow unit without outgoing arc");
            view.flow[a] -= 1;
            cur = view.to[a];
            if cur == T {
                break;
            }
            if cur >= 2 && cur % 2 == 0 {
                path.push(view.verts[(cur - 2) / 2]);
            }
        }
        paths.push(path);
    }
    paths
}

fn residual_reach(net: &Net, from: usize, reversed: bool) -> Vec<bool> {
    let mut seen = vec![false; net.head.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &a in &net.head[u] {
            // Forward reach uses arcs with residual capacity; reverse reach
            // walks arcs that point *at* u and still have residual capacity.
            let (ok, v) = if reversed {
                (net.cap[a ^ 1] > 0, net.to[a])
            } else {
                (net.cap[a] > 0, net.to[a])
            };
            if ok && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}
