//! Instance generators: seeded random modulator instances and the four
//! cross-composition constructions (outerplanar, cluster, co-cluster, and
//! weighted with a vertex cover parameter) as executable reductions.
//!
//! Compositions take pairwise equivalent inputs (same vertex count, edge
//! count and budget), pad them to a power of two by duplicating the last
//! input, and build a single instance whose answer is the OR of the input
//! answers. Each output carries bookkeeping from gadget roles to vertex
//! sets and can lift any input solution to a composed solution, so the OR
//! direction is checkable by certificate.
//!
//! Number encoding follows the convention that instances are 1-indexed and
//! the all-zero bit pattern stands for `2^R`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{
    bipartition, connected_components, BipartitionResult, Graph, Vertex, VertexSet,
};
use crate::instances::OctInstance;
use crate::io::Instance;
use crate::separators::min_vertex_cut;
use crate::treewidth::{compute_deletion_set, decompose, DeletionMode};

/// The 8-vertex box gadget: a complete graph on `{a, b, c, d}` plus one
/// degree-2 vertex on each ring pair. Its only two minimum transversals are
/// the 0-terminal pair and the 1-terminal pair.
#[derive(Clone, Debug)]
pub struct K4Box {
    pub graph: Graph,
    pub zero_terminals: (Vertex, Vertex),
    pub one_terminals: (Vertex, Vertex),
}

pub fn k4_in_a_box() -> K4Box {
    let mut g = Graph::with_vertices(8);
    // a=0, b=1, c=2, d=3 form the K4.
    for u in 0..4 {
        for v in (u + 1)..4 {
            g.add_edge(u, v);
        }
    }
    // Ring vertices on the pairs {a,b}, {b,c}, {c,d}, {d,a}.
    for (i, (u, v)) in [(0, 1), (1, 2), (2, 3), (3, 0)].into_iter().enumerate() {
        let r = 4 + i as u32;
        g.add_edge(r, u);
        g.add_edge(r, v);
    }
    K4Box {
        graph: g,
        zero_terminals: (0, 2),
        one_terminals: (1, 3),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GadgetRole {
    InstanceSelector,
    SolutionSelector,
    EdgeChecker,
    K4Box,
    P2Block,
}

impl GadgetRole {
    pub fn name(self) -> &'static str {
        match self {
            GadgetRole::InstanceSelector => "instance_selector",
            GadgetRole::SolutionSelector => "solution_selector",
            GadgetRole::EdgeChecker => "edge_checker",
            GadgetRole::K4Box => "k4_box",
            GadgetRole::P2Block => "p2_block",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompositionOutput {
    pub instance: Instance,
    /// The declared parameter: the size of the modulator.
    pub declared_parameter: usize,
    pub bookkeeping: BTreeMap<GadgetRole, VertexSet>,
    /// Per original input: the input-independent part of a lifted solution.
    base_solutions: Vec<VertexSet>,
    /// Per original input: map from input vertex id to composed vertex id.
    solution_maps: Vec<BTreeMap<Vertex, Vertex>>,
}

impl CompositionOutput {
    /// Lifts a solution of input `index` to a solution of the composed
    /// instance, following the construction's own recipe. The result is a
    /// certificate: callers verify it directly.
    pub fn lift_solution(&self, index: usize, input_solution: &VertexSet) -> VertexSet {
        let mut out = self.base_solutions[index].clone();
        for v in input_solution {
            out.insert(self.solution_maps[index][v]);
        }
        out
    }

    pub fn input_count(&self) -> usize {
        self.base_solutions.len()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("composition needs at least one input")]
    NoInputs,
    #[error("inputs are not equivalent: {0}")]
    NotEquivalent(String),
    #[error("input budget {budget} too large for this composition (needs budget < {max})")]
    BudgetTooLarge { budget: i64, max: i64 },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("generation retry limit reached")]
    RetryLimit,
}

/// Normalized input: vertices renumbered 0..n-1 in id order, edges sorted.
struct NormalInput {
    edges: Vec<(u32, u32)>,
    rank: BTreeMap<Vertex, Vertex>,
}

fn normalize(g: &Graph) -> NormalInput {
    let ids: Vec<Vertex> = g.vertices().collect();
    let rank: BTreeMap<Vertex, Vertex> = ids
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    let mut edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (rank[&u], rank[&v])).collect();
    edges.sort_unstable();
    NormalInput { edges, rank }
}

fn check_equivalent(
    inputs: &[(Graph, i64)],
    budget_max: impl Fn(i64) -> i64,
) -> Result<(u32, usize, i64), GeneratorError> {
    let (first, ell) = inputs.first().ok_or(GeneratorError::NoInputs)?;
    let n = first.vertex_count();
    let m = first.edge_count();
    for (g, l) in inputs {
        if g.vertex_count() != n || g.edge_count() != m || l != ell {
            return Err(GeneratorError::NotEquivalent(format!(
                "expected (n={n}, m={m}, budget={ell}), got (n={}, m={}, budget={l})",
                g.vertex_count(),
                g.edge_count()
            )));
        }
    }
    let max = budget_max(n as i64);
    if *ell < 0 || *ell >= max {
        return Err(GeneratorError::BudgetTooLarge { budget: *ell, max });
    }
    Ok((n as u32, m, *ell))
}

/// Pads to the next power of two (at least 2) by repeating the last input.
fn pad_indices(t: usize) -> (usize, u32) {
    let mut padded = 2usize;
    let mut r = 1u32;
    while padded < t {
        padded *= 2;
        r += 1;
    }
    (padded, r)
}

/// Bit `p` (1-based, LSB first) of 1-based position `pos`, where `2^r` is
/// encoded as all zeros.
fn bit(pos: usize, p: u32, t: usize) -> u8 {
    ((pos % t) >> (p - 1) & 1) as u8
}

struct Builder {
    graph: Graph,
    next: Vertex,
}

impl Builder {
    fn new() -> Self {
        Builder {
            graph: Graph::new(),
            next: 0,
        }
    }

    fn vertex(&mut self) -> Vertex {
        let v = self.next;
        self.next += 1;
        self.graph.insert_vertex(v);
        v
    }

    fn vertices(&mut self, count: usize) -> Vec<Vertex> {
        (0..count).map(|_| self.vertex()).collect()
    }

    fn add_box(&mut self) -> (Vec<Vertex>, (Vertex, Vertex), (Vertex, Vertex)) {
        let vs = self.vertices(8);
        for i in 0..4 {
            for j in (i + 1)..4 {
                self.graph.add_edge(vs[i], vs[j]);
            }
        }
        for (i, (u, v)) in [(0, 1), (1, 2), (2, 3), (3, 0)].into_iter().enumerate() {
            self.graph.add_edge(vs[4 + i], vs[u]);
            self.graph.add_edge(vs[4 + i], vs[v]);
        }
        (vs.clone(), (vs[0], vs[2]), (vs[1], vs[3]))
    }
}

/// Cross-composition from vertex cover: instance selectors made of
/// triangles, a subdivided-clique solution selector, and per (instance,
/// edge, copy) an outerplanar edge checker wired to the selectors by the
/// binary expansion of the instance number.
pub fn compose_outerplanar(inputs: &[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError> {
    let (n, m, ell) = check_equivalent(inputs, |n| n)?;
    let norms: Vec<NormalInput> = inputs.iter().map(|(g, _)| normalize(g)).collect();
    let (t, r) = pad_indices(inputs.len());
    let padded: Vec<&NormalInput> = (0..t)
        .map(|i| norms.get(i).unwrap_or_else(|| norms.last().unwrap()))
        .collect();

    let mut b = Builder::new();
    let n_us = n as usize;

    // Solution selector: clique on n vertices, each edge subdivided once.
    let sel_orig = b.vertices(n_us);
    let mut sel_sub: BTreeMap<(usize, usize), Vertex> = BTreeMap::new();
    for j in 0..n_us {
        for k in (j + 1)..n_us {
            let s = b.vertex();
            b.graph.add_edge(sel_orig[j], s);
            b.graph.add_edge(sel_orig[k], s);
            sel_sub.insert((j, k), s);
        }
    }
    let selector_set: VertexSet = sel_orig.iter().chain(sel_sub.values()).copied().collect();

    // Instance selectors: n copies of R triangles with designated 0/1
    // vertices.
    let mut isel: Vec<Vec<(Vertex, Vertex, Vertex)>> = Vec::with_capacity(n_us);
    for _ in 0..n_us {
        let mut copy = Vec::with_capacity(r as usize);
        for _ in 0..r {
            let vs = b.vertices(3);
            b.graph.add_edge(vs[0], vs[1]);
            b.graph.add_edge(vs[1], vs[2]);
            b.graph.add_edge(vs[2], vs[0]);
            copy.push((vs[0], vs[1], vs[2]));
        }
        isel.push(copy);
    }
    let iselector_set: VertexSet = isel
        .iter()
        .flatten()
        .flat_map(|&(a, c, d)| [a, c, d])
        .collect();

    // Edge checkers: per instance position, edge and copy.
    let path_len = if r % 2 == 0 {
        r as usize
    } else {
        r as usize + 1
    };
    struct Checker {
        path: Vec<Vertex>,
        b_vertices: Vec<Vertex>,
    }
    let mut checkers: BTreeMap<(usize, usize, usize), Checker> = BTreeMap::new();
    let mut checker_set = VertexSet::new();
    for (pos0, input) in padded.iter().enumerate() {
        let pos = pos0 + 1;
        for (e_idx, &(p, q)) in input.edges.iter().enumerate() {
            for copy in 0..n_us {
                let path = b.vertices(path_len);
                for w in path.windows(2) {
                    b.graph.add_edge(w[0], w[1]);
                }
                let mut b_vertices = Vec::with_capacity(r as usize);
                for j in 1..=r {
                    let v = path[(j - 1) as usize];
                    let av = b.vertex();
                    let bv = b.vertex();
                    let cv = b.vertex();
                    b.graph.add_edge(v, av);
                    b.graph.add_edge(v, bv);
                    b.graph.add_edge(av, bv);
                    b.graph.add_edge(bv, cv);
                    let alpha = bit(pos, j, t);
                    for sel in &isel {
                        let (zero, one, _) = sel[(j - 1) as usize];
                        let target = if alpha == 0 { zero } else { one };
                        b.graph.add_edge(bv, target);
                        b.graph.add_edge(cv, target);
                    }
                    b_vertices.push(bv);
                    checker_set.extend([av, bv, cv]);
                }
                checker_set.extend(path.iter().copied());
                // The lower-id endpoint attaches to the first path vertex.
                b.graph.add_edge(path[0], sel_orig[p as usize]);
                b.graph
                    .add_edge(*path.last().unwrap(), sel_orig[q as usize]);
                checkers.insert((pos, e_idx, copy), Checker { path, b_vertices });
            }
        }
    }

    let modulator: VertexSet = selector_set.union(&iselector_set).copied().collect();
    let budget = (n as i64) * (r as i64) + (n as i64) * (m as i64) * (t as i64) * (r as i64) + ell;
    assert_eq!(
        modulator.len(),
        n_us * 3 * r as usize + n_us + n_us * (n_us - 1) / 2
    );

    // Lift recipes per original input.
    let mut base_solutions = Vec::with_capacity(inputs.len());
    let mut solution_maps = Vec::with_capacity(inputs.len());
    for (orig, norm) in norms.iter().enumerate() {
        let my_pos = orig + 1;
        let mut base = VertexSet::new();
        for sel in &isel {
            for (j, &(zero, one, _)) in sel.iter().enumerate() {
                // Complement of the binary expansion.
                let target = if bit(my_pos, j as u32 + 1, t) == 0 {
                    one
                } else {
                    zero
                };
                base.insert(target);
            }
        }
        for ((pos, _, _), checker) in &checkers {
            if *pos == my_pos {
                base.extend(checker.b_vertices.iter().copied());
            } else {
                let j_star = (1..=r)
                    .find(|&j| bit(*pos, j, t) != bit(my_pos, j, t))
                    .expect("distinct positions differ in some bit");
                base.insert(checker.path[(j_star - 1) as usize]);
                for (j, &bv) in checker.b_vertices.iter().enumerate() {
                    if j as u32 + 1 != j_star {
                        base.insert(bv);
                    }
                }
            }
        }
        base_solutions.push(base);
        let map: BTreeMap<Vertex, Vertex> = norm
            .rank
            .iter()
            .map(|(&orig_v, &rk)| (orig_v, sel_orig[rk as usize]))
            .collect();
        solution_maps.push(map);
    }

    Ok(CompositionOutput {
        instance: Instance::new(b.graph, modulator.clone(), budget),
        declared_parameter: modulator.len(),
        bookkeeping: BTreeMap::from([
            (GadgetRole::SolutionSelector, selector_set),
            (GadgetRole::InstanceSelector, iselector_set),
            (GadgetRole::EdgeChecker, checker_set),
        ]),
        base_solutions,
        solution_maps,
    })
}

/// Shared front end of the three transversal compositions: subdivide each
/// input by two vertices per edge, then identify same-numbered subdivision
/// pairs across inputs. Returns the builder, the per-position numbered
/// vertices and the identified pair block.
struct SubdividedBase {
    b: Builder,
    num: Vec<Vec<Vertex>>,
    p2_set: VertexSet,
}

fn build_subdivided_base(padded: &[&NormalInput], n: usize, m: usize) -> SubdividedBase {
    let mut b = Builder::new();
    let mut p2: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    for _ in 0..m {
        let a = b.vertex();
        let bb = b.vertex();
        b.graph.add_edge(a, bb);
        p2.push((a, bb));
    }
    let mut num: Vec<Vec<Vertex>> = Vec::with_capacity(padded.len());
    for input in padded {
        let mine = b.vertices(n);
        for (k, &(u, v)) in input.edges.iter().enumerate() {
            let (a, bb) = p2[k];
            b.graph.add_edge(mine[u as usize], a);
            b.graph.add_edge(bb, mine[v as usize]);
        }
        num.push(mine);
    }
    let p2_set: VertexSet = p2.iter().flat_map(|&(a, b)| [a, b]).collect();
    SubdividedBase { b, num, p2_set }
}

/// Cross-composition from odd cycle transversal with a cluster-graph
/// residual: numbered vertices become cliques with one universal vertex
/// each, selected by `n` box gadgets per bit position.
pub fn compose_cluster(inputs: &[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError> {
    let (n, m, ell) = check_equivalent(inputs, |n| n)?;
    let norms: Vec<NormalInput> = inputs.iter().map(|(g, _)| normalize(g)).collect();
    let (t, r) = pad_indices(inputs.len());
    let padded: Vec<&NormalInput> = (0..t)
        .map(|i| norms.get(i).unwrap_or_else(|| norms.last().unwrap()))
        .collect();
    let n_us = n as usize;
    let SubdividedBase { mut b, num, p2_set } = build_subdivided_base(&padded, n_us, m);

    // Cliques over same-numbered vertices plus a universal vertex each.
    for j in 0..n_us {
        let uni = b.vertex();
        let members: Vec<Vertex> = num.iter().map(|mine| mine[j]).chain([uni]).collect();
        for (i, &a) in members.iter().enumerate() {
            for &c in &members[i + 1..] {
                if !b.graph.has_edge(a, c) {
                    b.graph.add_edge(a, c);
                }
            }
        }
    }

    // n * R boxes; terminals wired by bit value.
    let mut box_set = VertexSet::new();
    let mut boxes: Vec<Vec<((Vertex, Vertex), (Vertex, Vertex))>> = Vec::new();
    for p in 1..=r {
        let mut row = Vec::with_capacity(n_us);
        for _ in 0..n_us {
            let (vs, zero, one) = b.add_box();
            box_set.extend(vs);
            for (pos0, mine) in num.iter().enumerate() {
                let alpha = bit(pos0 + 1, p, t);
                let (t1, t2) = if alpha == 0 { zero } else { one };
                for &v in mine {
                    b.graph.add_edge(t1, v);
                    b.graph.add_edge(t2, v);
                }
            }
            row.push((zero, one));
        }
        boxes.push(row);
    }

    let modulator: VertexSet = p2_set.union(&box_set).copied().collect();
    assert_eq!(modulator.len(), 2 * m + 8 * n_us * r as usize);
    let budget = (t as i64 - 1) * n as i64 + 2 * n as i64 * r as i64 + ell;

    let mut base_solutions = Vec::with_capacity(inputs.len());
    let mut solution_maps = Vec::with_capacity(inputs.len());
    for (orig, norm) in norms.iter().enumerate() {
        let my_pos = orig + 1;
        let mut base = VertexSet::new();
        for (pos0, mine) in num.iter().enumerate() {
            if pos0 + 1 != my_pos {
                base.extend(mine.iter().copied());
            }
        }
        for (p0, row) in boxes.iter().enumerate() {
            let alpha = bit(my_pos, p0 as u32 + 1, t);
            for &(zero, one) in row {
                let (t1, t2) = if alpha == 0 { zero } else { one };
                base.insert(t1);
                base.insert(t2);
            }
        }
        base_solutions.push(base);
        solution_maps.push(
            norm.rank
                .iter()
                .map(|(&v, &rk)| (v, num[orig][rk as usize]))
                .collect(),
        );
    }

    Ok(CompositionOutput {
        instance: Instance::new(b.graph, modulator.clone(), budget),
        declared_parameter: modulator.len(),
        bookkeeping: BTreeMap::from([(GadgetRole::P2Block, p2_set), (GadgetRole::K4Box, box_set)]),
        base_solutions,
        solution_maps,
    })
}

/// Cross-composition from odd cycle transversal with a co-cluster residual:
/// the numbered sets are joined pairwise and selector vertices with one
/// neighbor per set (copied 2n times) force all but one set into any
/// solution.
pub fn compose_cocluster(inputs: &[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError> {
    let (n, m, ell) = check_equivalent(inputs, |n| n - 2)?;
    let norms: Vec<NormalInput> = inputs.iter().map(|(g, _)| normalize(g)).collect();
    let (t, r) = pad_indices(inputs.len());
    let padded: Vec<&NormalInput> = (0..t)
        .map(|i| norms.get(i).unwrap_or_else(|| norms.last().unwrap()))
        .collect();
    let n_us = n as usize;
    let SubdividedBase { mut b, num, p2_set } = build_subdivided_base(&padded, n_us, m);

    // Join of the t independent sets.
    for r1 in 0..num.len() {
        for r2 in (r1 + 1)..num.len() {
            for &u in &num[r1] {
                for &v in &num[r2] {
                    b.graph.add_edge(u, v);
                }
            }
        }
    }

    // Selector vertices v_{p,i,j}, 2n copies each, one neighbor per set.
    let mut selector_set = VertexSet::new();
    for p in 1..=r {
        for i in 0..n_us {
            for j in 0..n_us {
                for _ in 0..(2 * n_us) {
                    let v = b.vertex();
                    selector_set.insert(v);
                    for (pos0, mine) in num.iter().enumerate() {
                        let target = if bit(pos0 + 1, p, t) == 0 {
                            mine[i]
                        } else {
                            mine[j]
                        };
                        if !b.graph.has_edge(v, target) {
                            b.graph.add_edge(v, target);
                        }
                    }
                }
            }
        }
    }

    let modulator: VertexSet = p2_set.union(&selector_set).copied().collect();
    let budget = (t as i64 - 1) * n as i64 + ell;

    let mut base_solutions = Vec::with_capacity(inputs.len());
    let mut solution_maps = Vec::with_capacity(inputs.len());
    for (orig, norm) in norms.iter().enumerate() {
        let mut base = VertexSet::new();
        for (pos0, mine) in num.iter().enumerate() {
            if pos0 != orig {
                base.extend(mine.iter().copied());
            }
        }
        base_solutions.push(base);
        solution_maps.push(
            norm.rank
                .iter()
                .map(|(&v, &rk)| (v, num[orig][rk as usize]))
                .collect(),
        );
    }

    Ok(CompositionOutput {
        instance: Instance::new(b.graph, modulator.clone(), budget),
        declared_parameter: modulator.len(),
        bookkeeping: BTreeMap::from([
            (GadgetRole::P2Block, p2_set),
            (GadgetRole::InstanceSelector, selector_set),
        ]),
        base_solutions,
        solution_maps,
    })
}

/// Cross-composition from odd cycle transversal into weighted odd cycle
/// transversal parameterized by vertex cover: `log t` heavy box gadgets
/// select the live instance; the numbered sets stay independent, so the
/// subdivision pairs plus the boxes form a vertex cover.
pub fn compose_weighted_vc(inputs: &[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError> {
    let (n, m, ell) = check_equivalent(inputs, |n| n - 2)?;
    let norms: Vec<NormalInput> = inputs.iter().map(|(g, _)| normalize(g)).collect();
    let (t, r) = pad_indices(inputs.len());
    let padded: Vec<&NormalInput> = (0..t)
        .map(|i| norms.get(i).unwrap_or_else(|| norms.last().unwrap()))
        .collect();
    let n_us = n as usize;
    let SubdividedBase { mut b, num, p2_set } = build_subdivided_base(&padded, n_us, m);

    let heavy = (t as u64) * (n as u64);
    let mut box_set = VertexSet::new();
    let mut boxes: Vec<((Vertex, Vertex), (Vertex, Vertex))> = Vec::new();
    for p in 1..=r {
        let (vs, zero, one) = b.add_box();
        for &v in &vs {
            b.graph.set_weight(v, heavy);
        }
        box_set.extend(vs);
        for (pos0, mine) in num.iter().enumerate() {
            let alpha = bit(pos0 + 1, p, t);
            let (t1, t2) = if alpha == 0 { zero } else { one };
            for &v in mine {
                b.graph.add_edge(t1, v);
                b.graph.add_edge(t2, v);
            }
        }
        boxes.push((zero, one));
    }

    let modulator: VertexSet = p2_set.union(&box_set).copied().collect();
    assert_eq!(modulator.len(), 2 * m + 8 * r as usize);
    let budget = 2 * heavy as i64 * r as i64 + (t as i64 - 1) * n as i64 + ell;

    let mut base_solutions = Vec::with_capacity(inputs.len());
    let mut solution_maps = Vec::with_capacity(inputs.len());
    for (orig, norm) in norms.iter().enumerate() {
        let my_pos = orig + 1;
        let mut base = VertexSet::new();
        for (pos0, mine) in num.iter().enumerate() {
            if pos0 + 1 != my_pos {
                base.extend(mine.iter().copied());
            }
        }
        for (p0, &(zero, one)) in boxes.iter().enumerate() {
            let (t1, t2) = if bit(my_pos, p0 as u32 + 1, t) == 0 {
                zero
            } else {
                one
            };
            base.insert(t1);
            base.insert(t2);
        }
        base_solutions.push(base);
        solution_maps.push(
            norm.rank
                .iter()
                .map(|(&v, &rk)| (v, num[orig][rk as usize]))
                .collect(),
        );
    }

    Ok(CompositionOutput {
        instance: Instance::new(b.graph, modulator.clone(), budget),
        declared_parameter: modulator.len(),
        bookkeeping: BTreeMap::from([(GadgetRole::P2Block, p2_set), (GadgetRole::K4Box, box_set)]),
        base_solutions,
        solution_maps,
    })
}

/// Every component is a clique (equivalently, no induced path on three
/// vertices).
pub fn is_cluster(g: &Graph) -> bool {
    g.vertices().all(|v| {
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        nbrs.iter()
            .enumerate()
            .all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

pub fn complement(g: &Graph) -> Graph {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut out = Graph::new();
    for &v in &verts {
        out.insert_vertex(v);
    }
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !g.has_edge(u, v) {
                out.add_edge(u, v);
            }
        }
    }
    out
}

pub fn is_cocluster(g: &Graph) -> bool {
    is_cluster(&complement(g))
}

/// Outerplanarity via forbidden substructures: treewidth at most 2 rules
/// out K4 minors, and three internally disjoint paths of two or more edges
/// between any vertex pair would form a K_{2,3} subdivision.
pub fn is_outerplanar(g: &Graph) -> bool {
    if decompose(g, 2).is_none() {
        return false;
    }
    for comp in connected_components(g, &g.vertex_set()) {
        let sub = g.induced(&comp);
        let verts: Vec<Vertex> = sub.vertices().collect();
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                let mut h = sub.clone();
                h.remove_edge(u, v);
                let cut = min_vertex_cut(&h, u, v).expect("u, v non-adjacent after edge removal");
                if cut.paths.len() >= 3 {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulatorStrategy {
    /// Build a random bipartite treewidth-bounded residual first, then add
    /// modulator vertices with random edges; valid by construction.
    Planted { modulator_size: u32 },
    /// Sample a random graph and extract a greedy deletion set.
    Extracted,
}

/// Deterministic seeded random instance with a valid modulator.
pub fn random_instance(
    seed: u64,
    n: u32,
    edge_prob: f64,
    strategy: ModulatorStrategy,
    w: usize,
) -> Result<OctInstance, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::InvalidParameters(
            "need at least one vertex".into(),
        ));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GeneratorError::InvalidParameters(
            "edge probability outside [0, 1]".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match strategy {
        ModulatorStrategy::Planted { modulator_size } => {
            if modulator_size >= n {
                return Err(GeneratorError::InvalidParameters(
                    "modulator must leave at least one residual vertex".into(),
                ));
            }
            let residual_n = n - modulator_size;
            let mut g = Graph::with_vertices(residual_n);
            for v in 1..residual_n {
                let parent = rng.random_range(0..v);
                g.add_edge(parent, v);
            }
            if w >= 2 {
                for _ in 0..residual_n {
                    let u = rng.random_range(0..residual_n);
                    let v = rng.random_range(0..residual_n);
                    if u != v && !g.has_edge(u, v) {
                        g.add_edge(u, v);
                        let scope = g.vertex_set();
                        let ok = matches!(bipartition(&g, &scope), BipartitionResult::Bipartite(_))
                            && decompose(&g, w).is_some();
                        if !ok {
                            g.remove_edge(u, v);
                        }
                    }
                }
            }
            let mut modulator = VertexSet::new();
            for x in residual_n..n {
                g.insert_vertex(x);
                modulator.insert(x);
                for v in 0..x {
                    if rng.random_bool(edge_prob) {
                        g.add_edge(x, v);
                    }
                }
            }
            let budget = rng.random_range(0..=modulator_size as i64);
            let inst = OctInstance::new(g, modulator, budget);
            debug_assert!(inst.validate_bip_tw(w).is_ok());
            Ok(inst)
        }
        ModulatorStrategy::Extracted => {
            for attempt in 0..20 {
                let mut attempt_rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
                let mut g = Graph::with_vertices(n);
                for u in 0..n {
                    for v in (u + 1)..n {
                        if attempt_rng.random_bool(edge_prob) {
                            g.add_edge(u, v);
                        }
                    }
                }
                let modulator = compute_deletion_set(&g, w, DeletionMode::Greedy, usize::MAX)
                    .expect("greedy mode cannot refuse");
                if modulator.len() as u32 > n.saturating_mul(3) / 4 {
                    continue;
                }
                let budget = attempt_rng.random_range(0..=modulator.len() as i64);
                let inst = OctInstance::new(g, modulator, budget);
                debug_assert!(inst.validate_bip_tw(w).is_ok());
                return Ok(inst);
            }
            Err(GeneratorError::RetryLimit)
        }
    }
}

/// Sidecar document mapping gadget roles to vertex id ranges.
pub fn render_bookkeeping(out: &CompositionOutput) -> String {
    use std::fmt::Write as _;
    let mut text = String::new();
    for (role, set) in &out.bookkeeping {
        write!(text, "{}", role.name()).unwrap();
        let ids: Vec<Vertex> = set.iter().copied().collect();
        let mut i = 0;
        while i < ids.len() {
            let start = ids[i];
            let mut end = start;
            while i + 1 < ids.len() && ids[i + 1] == end + 1 {
                i += 1;
                end = ids[i];
            }
            if start == end {
                write!(text, " {start}").unwrap();
            } else {
                write!(text, " {start}-{end}").unwrap();
            }
            i += 1;
        }
        text.push('\n');
    }
    text
}
