//! The kernelization pipeline for odd cycle transversal parameterized by a
//! modulator to bipartite treewidth-`w` graphs.
//!
//! Stages, in pipeline order:
//!
//! 1. hitting set over typed vertex cuts, turning heavy parities into forced
//!    edges / monochromatic pairs / vertex deletions,
//! 2. protrusion decomposition, shrinking component boundaries to `2w`,
//! 3. component pruning down to polynomially many components,
//! 4. restriction of deletable vertices via cut-characteristic classes,
//! 5. back-transformation to a plain instance whose graph is the deletable
//!    set plus parity gadgets.
//!
//! Every stage preserves the yes/no answer; the accompanying trace records
//! the per-stage size bounds so verification can re-check them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::graph::{
    bipartition, connected_components, pair, BipartitionResult, Graph, Pair, Vertex, VertexSet,
};
use crate::instances::{AnnotatedInstance, InstanceError, OctInstance, RestrictedInstance};
use crate::separators::{
    cut_characteristic, enumerate_characteristics, kappa_bound, vertex_cut_typed_bounded,
    EnumerationError, LabelSet, LabeledGraph, Side, TypedCutOutcome,
};
use crate::treewidth::{decompose, DecompositionViolation, TreeDecomposition};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("invalid input instance: {0}")]
    InvalidInstance(#[from] InstanceError),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(#[from] DecompositionViolation),
    #[error("vertex {0} of the hitting set is in no bag")]
    HittingVertexUncovered(Vertex),
    #[error("component containing vertex {component} has {size} boundary vertices, above {bound}")]
    BoundaryTooLarge {
        component: Vertex,
        size: usize,
        bound: usize,
    },
    #[error(
        "characteristic enumeration refused on component containing vertex {component}: {source}"
    )]
    Enumeration {
        component: Vertex,
        source: EnumerationError,
    },
    #[error("separator characteristics differ; replacement refused")]
    CharacteristicMismatch,
    #[error("replacement produced an invalid solution")]
    ReplacementInvalid,
    #[error("internal stage bound violated: {stage} {metric}")]
    BoundViolation {
        stage: &'static str,
        metric: &'static str,
    },
}

/// Output classification of a kernelization run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelOutcome {
    Reduced,
    CanonicalYes,
    CanonicalNo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub stage: &'static str,
    pub metric: &'static str,
    pub value: u64,
    pub bound: Option<BigUint>,
}

impl TraceEntry {
    /// Bound minus value, clamped at zero; `None` when no bound applies.
    /// A violated bound is reported via `violated`.
    pub fn slack(&self) -> Option<BigUint> {
        self.bound.as_ref().map(|b| {
            let v = BigUint::from(self.value);
            if *b >= v {
                b - v
            } else {
                BigUint::from(0u32)
            }
        })
    }

    pub fn violated(&self) -> bool {
        self.bound
            .as_ref()
            .is_some_and(|b| *b < BigUint::from(self.value))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineTrace {
    pub entries: Vec<TraceEntry>,
}

impl PipelineTrace {
    fn push(
        &mut self,
        stage: &'static str,
        metric: &'static str,
        value: u64,
        bound: Option<BigUint>,
    ) {
        self.entries.push(TraceEntry {
            stage,
            metric,
            value,
            bound,
        });
    }

    pub fn violations(&self) -> Vec<&TraceEntry> {
        self.entries.iter().filter(|e| e.violated()).collect()
    }

    /// Line-oriented rendering: `stage metric value bound`, `-` for absent
    /// bounds.
    pub fn render(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for e in &self.entries {
            let bound = e.bound.as_ref().map_or("-".to_string(), |b| b.to_string());
            writeln!(out, "{} {} {} {}", e.stage, e.metric, e.value, bound).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct KernelConfig {
    /// Ceiling on the number of candidate subsets any single characteristic
    /// enumeration may inspect.
    pub enum_ceiling: u128,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            enum_ceiling: 10_000_000,
        }
    }
}

/// Number of path vertices, odd or even. Path length counts vertices
/// throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathParity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XPathClass {
    Important,
    NotImportant,
    NotAnXPath,
}

/// Applies the important-path definition to an explicit candidate path:
/// a simple path in `G - X` attached to `p` and `q` by distinct edges is
/// important when it is odd between distinct non-monochromatic endpoints, or
/// even between non-adjacent endpoints.
pub fn classify_xpath(
    inst: &AnnotatedInstance,
    p: Vertex,
    q: Vertex,
    path: &[Vertex],
) -> XPathClass {
    let x = &inst.modulator;
    let g = &inst.graph;
    if path.is_empty() || !x.contains(&p) || !x.contains(&q) {
        return XPathClass::NotAnXPath;
    }
    let distinct: VertexSet = path.iter().copied().collect();
    if distinct.len() != path.len() || path.iter().any(|v| x.contains(v) || !g.has_vertex(*v)) {
        return XPathClass::NotAnXPath;
    }
    if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return XPathClass::NotAnXPath;
    }
    let (first, last) = (path[0], *path.last().unwrap());
    if !g.has_edge(p, first) || !g.has_edge(last, q) {
        return XPathClass::NotAnXPath;
    }
    // Attaching edges must be distinct; for a one-vertex path with p == q
    // they coincide.
    if p == q && first == last {
        return XPathClass::NotAnXPath;
    }
    let odd = path.len() % 2 == 1;
    let important = if odd {
        p != q && !inst.mono.contains(&pair(p, q))
    } else {
        !g.has_edge(p, q)
    };
    if important {
        XPathClass::Important
    } else {
        XPathClass::NotImportant
    }
}

/// Disjoint-path witness recorded when a pair or vertex is annotated instead
/// of cut: `budget + 1` vertex-disjoint X-paths of the stated parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPacking {
    pub u: Vertex,
    pub v: Vertex,
    pub parity: PathParity,
    pub paths: Vec<Vec<Vertex>>,
}

/// Result of the hitting-set computation. `bichromatic` pairs become edges,
/// `monochromatic` pairs become annotations, `forced` vertices are deleted,
/// and `hitting` intersects every surviving important X-path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetResult {
    pub bichromatic: BTreeSet<Pair>,
    pub monochromatic: BTreeSet<Pair>,
    pub forced: VertexSet,
    pub hitting: VertexSet,
    pub certificates: Vec<PathPacking>,
}

/// Hitting-set computation: for every modulator pair and parity class, a
/// typed minimum cut either fits the budget and joins the hitting set, or
/// overflows and forces an annotation. Per-vertex even self-paths (odd
/// cycles through one modulator vertex) force deletions the same way.
pub fn compute_hitting_set(
    g: &Graph,
    x: &VertexSet,
    budget: i64,
) -> Result<HittingSetResult, KernelError> {
    assert!(budget >= 0, "hitting set needs a nonnegative budget");
    let scope: VertexSet = g.vertices().filter(|v| !x.contains(v)).collect();
    let bip = match bipartition(g, &scope) {
        BipartitionResult::Bipartite(b) => b,
        BipartitionResult::OddCycle(_) => {
            return Err(KernelError::InvalidInstance(
                InstanceError::ResidualNotBipartite,
            ))
        }
    };
    let ell = budget as usize;
    let mut res = HittingSetResult {
        bichromatic: BTreeSet::new(),
        monochromatic: BTreeSet::new(),
        forced: VertexSet::new(),
        hitting: VertexSet::new(),
        certificates: Vec::new(),
    };
    let xs: Vec<Vertex> = x.iter().copied().collect();
    let cut = |u: Vertex, v: Vertex, a: Side, b: Side| {
        vertex_cut_typed_bounded(g, &bip, u, v, a, b, ell)
            .expect("typed cut preconditions hold inside the hitting set")
    };
    for (i, &u) in xs.iter().enumerate() {
        for &v in &xs[i + 1..] {
            let pq = cut(u, v, Side::Zero, Side::One);
            let qp = cut(u, v, Side::One, Side::Zero);
            match (&pq, &qp) {
                (TypedCutOutcome::Cut(c1), TypedCutOutcome::Cut(c2)) => {
                    res.hitting.extend(c1.cut.iter().copied());
                    res.hitting.extend(c2.cut.iter().copied());
                }
                _ => {
                    let paths = match (&pq, &qp) {
                        (TypedCutOutcome::ExceedsBound { paths }, _)
                        | (_, TypedCutOutcome::ExceedsBound { paths }) => paths.clone(),
                        _ => unreachable!(),
                    };
                    res.bichromatic.insert(pair(u, v));
                    res.certificates.push(PathPacking {
                        u,
                        v,
                        parity: PathParity::Even,
                        paths,
                    });
                }
            }
            let pp = cut(u, v, Side::Zero, Side::Zero);
            let qq = cut(u, v, Side::One, Side::One);
            match (&pp, &qq) {
                (TypedCutOutcome::Cut(c1), TypedCutOutcome::Cut(c2)) => {
                    res.hitting.extend(c1.cut.iter().copied());
                    res.hitting.extend(c2.cut.iter().copied());
                }
                _ => {
                    let paths = match (&pp, &qq) {
                        (TypedCutOutcome::ExceedsBound { paths }, _)
                        | (_, TypedCutOutcome::ExceedsBound { paths }) => paths.clone(),
                        _ => unreachable!(),
                    };
                    res.monochromatic.insert(pair(u, v));
                    res.certificates.push(PathPacking {
                        u,
                        v,
                        parity: PathParity::Odd,
                        paths,
                    });
                }
            }
        }
    }
    for &v in &xs {
        match cut(v, v, Side::Zero, Side::One) {
            TypedCutOutcome::Cut(c) => res.hitting.extend(c.cut.iter().copied()),
            TypedCutOutcome::ExceedsBound { paths } => {
                res.forced.insert(v);
                res.certificates.push(PathPacking {
                    u: v,
                    v,
                    parity: PathParity::Even,
                    paths,
                });
            }
        }
    }
    debug_assert!(res.hitting.is_disjoint(x));
    debug_assert!(res.hitting.len() as u64 <= 4 * ell as u64 * (x.len() as u64).pow(2));
    Ok(res)
}

/// Turns hitting-set annotations into instance changes: forced vertices are
/// deleted with a budget decrement, bichromatic pairs become edges,
/// monochromatic pairs become annotations. Exhausting the budget yields the
/// canonical no sentinel.
pub fn apply_annotations(inst: &OctInstance, hsr: &HittingSetResult) -> AnnotatedInstance {
    let mut graph = inst.graph.clone();
    let mut budget = inst.budget;
    for &v in &hsr.forced {
        graph.remove_vertex(v);
        budget -= 1;
    }
    if budget < 0 {
        return AnnotatedInstance::canonical_no();
    }
    let modulator: VertexSet = inst.modulator.difference(&hsr.forced).copied().collect();
    let alive = |p: &Pair| !hsr.forced.contains(&p.0) && !hsr.forced.contains(&p.1);
    for p in hsr.bichromatic.iter().filter(|p| alive(p)) {
        if !graph.has_edge(p.0, p.1) {
            graph.add_edge(p.0, p.1);
        }
    }
    let mono: BTreeSet<Pair> = hsr
        .monochromatic
        .iter()
        .filter(|p| alive(p))
        .copied()
        .collect();
    AnnotatedInstance {
        graph,
        modulator,
        mono,
        budget,
    }
}

/// Marks one bag per seed vertex, then exhaustively marks lowest common
/// ancestors with the active-bag procedure; the union of marked bags is a
/// superset of `s` of size at most `2(w+1)|s|` whose residual components
/// have at most `2w` neighbors in it.
pub fn protrusion_decompose(
    g: &Graph,
    td: &TreeDecomposition,
    s: &VertexSet,
) -> Result<VertexSet, KernelError> {
    td.validate(g)?;
    let mut marked: BTreeSet<usize> = BTreeSet::new();
    for &v in s {
        let bag = td
            .bags()
            .find(|(_, b)| b.contains(&v))
            .map(|(id, _)| id)
            .ok_or(KernelError::HittingVertexUncovered(v))?;
        marked.insert(bag);
    }
    // Depths for "lowest common ancestor" selection.
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    for (id, _) in td.bags() {
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = td.parent_of(cur) {
            d += 1;
            cur = p;
        }
        depth.insert(id, d);
    }
    let ancestors_inclusive = |mut id: usize| {
        let mut out = vec![id];
        while let Some(p) = td.parent_of(id) {
            out.push(p);
            id = p;
        }
        out
    };

    let mut active = marked.clone();
    while active.len() >= 2 {
        // Count active bags per inclusive-ancestor; the deepest bag covering
        // at least two active bags is the next lowest common ancestor.
        let mut cover: BTreeMap<usize, usize> = BTreeMap::new();
        for &a in &active {
            for anc in ancestors_inclusive(a) {
                *cover.entry(anc).or_insert(0) += 1;
            }
        }
        let lca = cover
            .iter()
            .filter(|(_, &c)| c >= 2)
            .max_by_key(|(&id, _)| (depth[&id], std::cmp::Reverse(id)))
            .map(|(&id, _)| id)
            .expect("two active bags always share the root");
        marked.insert(lca);
        active.retain(|&a| !ancestors_inclusive(a).contains(&lca));
        active.insert(lca);
    }
    debug_assert!(marked.len() <= 2 * s.len().max(1));

    let mut out = VertexSet::new();
    for id in &marked {
        out.extend(td.bag(*id).iter().copied());
    }
    debug_assert!(s.is_subset(&out));
    Ok(out)
}

/// The components of `(G - X) - H` that provide a `p`-`q` connection of a
/// given parity, determined from the component 2-coloring: neighbors of the
/// same color yield odd connections, different colors even ones.
fn component_provides(
    g: &Graph,
    comp: &VertexSet,
    side_of: &BTreeMap<Vertex, u8>,
    p: Vertex,
    q: Vertex,
    parity: PathParity,
) -> bool {
    let colors = |v: Vertex| -> Vec<u8> {
        g.neighbors(v)
            .filter(|u| comp.contains(u))
            .map(|u| side_of[&u])
            .collect()
    };
    if p != q {
        let cp = colors(p);
        let cq = colors(q);
        match parity {
            PathParity::Odd => cp.iter().any(|c| cq.contains(c)),
            PathParity::Even => cp.iter().any(|c| cq.contains(&(1 - c))),
        }
    } else {
        let nbrs: Vec<(Vertex, u8)> = g
            .neighbors(p)
            .filter(|u| comp.contains(u))
            .map(|u| (u, side_of[&u]))
            .collect();
        match parity {
            // Odd self-connection: two distinct same-colored neighbors.
            PathParity::Odd => nbrs
                .iter()
                .any(|&(u, c)| nbrs.iter().any(|&(w, d)| w != u && d == c)),
            // Even self-connection (an odd cycle through p): two neighbors
            // of different colors.
            PathParity::Even => nbrs.iter().any(|&(_, c)| nbrs.iter().any(|&(_, d)| d != c)),
        }
    }
}

/// Deletes components of `(G - X) - H` that are redundant: for every vertex
/// pair over `X ∪ H` and every parity, only the first `budget + 1`
/// components providing such a connection are kept.
pub fn prune_components(inst: &AnnotatedInstance, h: &VertexSet) -> AnnotatedInstance {
    assert!(inst.budget >= 0);
    let g = &inst.graph;
    let scope: VertexSet = g
        .vertices()
        .filter(|v| !inst.modulator.contains(v) && !h.contains(v))
        .collect();
    let comps = connected_components(g, &scope);
    let mut side_of: BTreeMap<Vertex, u8> = BTreeMap::new();
    for comp in &comps {
        match bipartition(g, comp) {
            BipartitionResult::Bipartite(b) => {
                for &v in &b.side0 {
                    side_of.insert(v, 0);
                }
                for &v in &b.side1 {
                    side_of.insert(v, 1);
                }
            }
            BipartitionResult::OddCycle(_) => unreachable!("components of G - X are bipartite"),
        }
    }

    let anchors: Vec<Vertex> = inst.modulator.union(h).copied().collect();
    let keep_count = inst.budget as usize + 1;
    let mut marked: BTreeSet<usize> = BTreeSet::new();
    for (i, &p) in anchors.iter().enumerate() {
        for &q in &anchors[i..] {
            for parity in [PathParity::Odd, PathParity::Even] {
                let mut seen = 0;
                for (ci, comp) in comps.iter().enumerate() {
                    if seen >= keep_count {
                        break;
                    }
                    if component_provides(g, comp, &side_of, p, q, parity) {
                        marked.insert(ci);
                        seen += 1;
                    }
                }
            }
        }
    }
    let mut graph = inst.graph.clone();
    for (ci, comp) in comps.iter().enumerate() {
        if !marked.contains(&ci) {
            graph.remove_vertices(comp.iter());
        }
    }
    AnnotatedInstance {
        graph,
        modulator: inst.modulator.clone(),
        mono: inst.mono.clone(),
        budget: inst.budget,
    }
}

/// The labeled graph of a component used for separator replacement: base
/// graph `G[C ∪ T]` where `T = N(C) \ X`, labels are modulator vertices plus
/// the terminals, and each vertex carries its modulator neighborhood plus
/// itself if it is a terminal.
fn component_labeled_graph(
    g: &Graph,
    x: &VertexSet,
    comp: &VertexSet,
) -> (LabeledGraph, Vec<Vertex>) {
    let terminals: Vec<Vertex> = g
        .neighborhood_of_set(comp)
        .into_iter()
        .filter(|v| !x.contains(v))
        .collect();
    let domain: VertexSet = comp
        .union(&terminals.iter().copied().collect())
        .copied()
        .collect();
    let base = g.induced(&domain);
    let mut labels: LabelSet = x.iter().copied().collect();
    labels.extend(terminals.iter().copied());
    let mut lg = LabeledGraph::new(base, labels);
    for &v in &domain {
        let mut ls: LabelSet = g.neighbors(v).filter(|u| x.contains(u)).collect();
        if terminals.contains(&v) {
            ls.insert(v);
        }
        lg.set_labels(v, ls);
    }
    (lg, terminals)
}

/// Computes the deletable set: the modulator, the hitting set, and per
/// component one canonical minimum representative for every cut
/// characteristic class of separators of size below the component boundary.
pub fn restrict_deletable(
    inst: &AnnotatedInstance,
    h: &VertexSet,
    w: usize,
    config: &KernelConfig,
) -> Result<RestrictedInstance, KernelError> {
    let delta = 2 * w;
    let g = &inst.graph;
    let scope: VertexSet = g
        .vertices()
        .filter(|v| !inst.modulator.contains(v) && !h.contains(v))
        .collect();
    let mut deletable: VertexSet = inst.modulator.union(h).copied().collect();
    for comp in connected_components(g, &scope) {
        let (lg, terminals) = component_labeled_graph(g, &inst.modulator, &comp);
        let rep = *comp.first().unwrap();
        if terminals.len() > delta {
            return Err(KernelError::BoundaryTooLarge {
                component: rep,
                size: terminals.len(),
                bound: delta,
            });
        }
        // The component only ever needs separators below its own boundary
        // size: larger intersections are replaced by the boundary itself.
        let m = terminals.len().saturating_sub(1);
        let candidates: VertexSet = lg.graph.vertex_set();
        let classes =
            enumerate_characteristics(&lg, &terminals, m, &candidates, config.enum_ceiling)
                .map_err(|source| KernelError::Enumeration {
                    component: rep,
                    source,
                })?;
        for class in classes {
            deletable.extend(class.representative.intersection(&comp).copied());
        }
    }
    Ok(RestrictedInstance {
        annotated: inst.clone(),
        deletable,
    })
}

/// Swaps the part of a solution inside one component of `(G - X) - H` for
/// another separator of the same cut characteristic; the result is again a
/// valid solution. Requires the solution to be valid and the hitting set
/// behind `comp` to intersect all important X-paths.
pub fn separator_replace(
    inst: &AnnotatedInstance,
    solution: &VertexSet,
    comp: &VertexSet,
    replacement: &VertexSet,
) -> Result<VertexSet, KernelError> {
    assert!(
        replacement.is_subset(comp),
        "replacement must live inside the component"
    );
    let (lg, terminals) = component_labeled_graph(&inst.graph, &inst.modulator, comp);
    let old: VertexSet = solution.intersection(comp).copied().collect();
    let k_old = cut_characteristic(&lg, &terminals, &old);
    let k_new = cut_characteristic(&lg, &terminals, replacement);
    if k_old != k_new {
        return Err(KernelError::CharacteristicMismatch);
    }
    let mut out: VertexSet = solution.difference(&old).copied().collect();
    out.extend(replacement.iter().copied());
    if !inst.is_valid_solution(&out) {
        return Err(KernelError::ReplacementInvalid);
    }
    Ok(out)
}

/// Back-transformation to a plain instance on the deletable vertices.
/// Monochromatic pairs become undeletable degree-2 gadget vertices first;
/// odd cycles living entirely outside the deletable set make the instance a
/// no; a vertex on an odd cycle it alone can break is force-deleted; every
/// remaining parity connection through undeletable vertices is materialized
/// as an edge or a bundle of `budget + 1` common neighbors.
pub fn back_transform(inst: &RestrictedInstance) -> OctInstance {
    let mut g = inst.annotated.graph.clone();
    let z = inst.deletable.clone();
    let mut budget = inst.annotated.budget;

    // Fold annotations first: the gadget vertices are undeletable, so they
    // take part in the bipartiteness check below (a pair of undeletable
    // monochromatic endpoints can make the instance infeasible outright).
    for &(u, v) in &inst.annotated.mono {
        let w = g.add_fresh_vertex();
        g.add_edge(w, u);
        g.add_edge(w, v);
    }
    let outside: VertexSet = g.vertices().filter(|v| !z.contains(v)).collect();
    if !matches!(bipartition(&g, &outside), BipartitionResult::Bipartite(_)) {
        return OctInstance::canonical_no();
    }

    // 2-colorings of the undeletable components, used for all parity tests.
    let comps = connected_components(&g, &outside);
    let mut side_of: BTreeMap<Vertex, u8> = BTreeMap::new();
    for comp in &comps {
        match bipartition(&g, comp) {
            BipartitionResult::Bipartite(b) => {
                for &v in &b.side0 {
                    side_of.insert(v, 0);
                }
                for &v in &b.side1 {
                    side_of.insert(v, 1);
                }
            }
            BipartitionResult::OddCycle(_) => unreachable!("checked bipartite above"),
        }
    }

    // An even self-connection through undeletable vertices is an odd cycle
    // whose only deletable vertex is the endpoint: force-delete it.
    let mut forced = VertexSet::new();
    for &p in &z {
        for comp in &comps {
            if component_provides(&g, comp, &side_of, p, p, PathParity::Even) {
                forced.insert(p);
                break;
            }
        }
    }
    budget -= forced.len() as i64;
    if budget < 0 {
        return OctInstance::canonical_no();
    }
    g.remove_vertices(forced.iter());
    let z_alive: VertexSet = z.difference(&forced).copied().collect();

    let mut out = g.induced(&z_alive);
    let zs: Vec<Vertex> = z_alive.iter().copied().collect();
    let mut fresh = g.fresh_id();
    for (i, &p) in zs.iter().enumerate() {
        for &q in &zs[i + 1..] {
            let mut odd = false;
            let mut even = false;
            for comp in &comps {
                odd = odd || component_provides(&g, comp, &side_of, p, q, PathParity::Odd);
                even = even || component_provides(&g, comp, &side_of, p, q, PathParity::Even);
                if odd && even {
                    break;
                }
            }
            if odd {
                // Forces equal colors unless p or q is deleted.
                for _ in 0..=(budget as usize) {
                    let w = fresh;
                    fresh += 1;
                    out.insert_vertex(w);
                    out.add_edge(w, p);
                    out.add_edge(w, q);
                }
            }
            if even && !out.has_edge(p, q) {
                out.add_edge(p, q);
            }
        }
    }
    OctInstance {
        graph: out,
        modulator: z_alive,
        budget,
    }
}

/// A kernelization run: the reduced instance, its classification and the
/// per-stage trace.
#[derive(Clone, Debug)]
pub struct KernelOutput {
    pub instance: OctInstance,
    pub outcome: KernelOutcome,
    pub trace: PipelineTrace,
}

fn graph_entry(trace: &mut PipelineTrace, stage: &'static str, g: &Graph) {
    trace.push(stage, "vertices", g.vertex_count() as u64, None);
    trace.push(stage, "edges", g.edge_count() as u64, None);
}

/// Runs the whole pipeline. The input modulator must witness membership in
/// bipartite treewidth-`w`; all stage bounds are recorded in the trace and
/// checked.
pub fn kernelize(
    inst: &OctInstance,
    w: usize,
    config: &KernelConfig,
) -> Result<KernelOutput, KernelError> {
    inst.validate_bip_tw(w)?;
    let mut trace = PipelineTrace::default();
    graph_entry(&mut trace, "input", &inst.graph);
    trace.push("input", "modulator", inst.modulator.len() as u64, None);
    trace.push("input", "budget", inst.budget.max(0) as u64, None);

    if inst.budget < 0 {
        return Ok(KernelOutput {
            instance: OctInstance::canonical_no(),
            outcome: KernelOutcome::CanonicalNo,
            trace,
        });
    }
    // The modulator itself is a solution once the budget covers it.
    if inst.budget >= inst.modulator.len() as i64 {
        return Ok(KernelOutput {
            instance: OctInstance::canonical_yes(),
            outcome: KernelOutcome::CanonicalYes,
            trace,
        });
    }

    let k = inst.modulator.len() as u64;
    let ell = inst.budget as u64;
    let hsr = compute_hitting_set(&inst.graph, &inst.modulator, inst.budget)?;
    let h_bound = BigUint::from(4 * ell * k * k);
    trace.push(
        "hitting_set",
        "h_size",
        hsr.hitting.len() as u64,
        Some(h_bound),
    );
    trace.push(
        "hitting_set",
        "bichromatic_pairs",
        hsr.bichromatic.len() as u64,
        None,
    );
    trace.push(
        "hitting_set",
        "monochromatic_pairs",
        hsr.monochromatic.len() as u64,
        None,
    );
    trace.push(
        "hitting_set",
        "forced_vertices",
        hsr.forced.len() as u64,
        None,
    );
    if (hsr.forced.len() as i64) > inst.budget {
        return Ok(KernelOutput {
            instance: OctInstance::canonical_no(),
            outcome: KernelOutcome::CanonicalNo,
            trace,
        });
    }
    let ann = apply_annotations(inst, &hsr);
    graph_entry(&mut trace, "annotate", &ann.graph);
    trace.push("annotate", "budget", ann.budget.max(0) as u64, None);

    let residual = ann.graph.removed(&ann.modulator);
    let td = decompose(&residual, w).expect("residual width can only shrink");
    let h_prime = protrusion_decompose(&residual, &td, &hsr.hitting)?;
    let hp_bound = BigUint::from(2 * (w as u64 + 1) * hsr.hitting.len() as u64);
    trace.push(
        "protrusion",
        "h_prime_size",
        h_prime.len() as u64,
        Some(hp_bound),
    );
    let max_boundary = connected_components(
        &residual,
        &residual
            .vertices()
            .filter(|v| !h_prime.contains(v))
            .collect(),
    )
    .iter()
    .map(|c| {
        residual
            .neighborhood_of_set(c)
            .intersection(&h_prime)
            .count()
    })
    .max()
    .unwrap_or(0);
    trace.push(
        "protrusion",
        "max_component_boundary",
        max_boundary as u64,
        Some(BigUint::from(2 * w as u64)),
    );

    let pruned = prune_components(&ann, &h_prime);
    graph_entry(&mut trace, "prune", &pruned.graph);
    let comp_scope: VertexSet = pruned
        .graph
        .vertices()
        .filter(|v| !pruned.modulator.contains(v) && !h_prime.contains(v))
        .collect();
    let comp_count = connected_components(&pruned.graph, &comp_scope).len() as u64;
    let x_prime = pruned.modulator.len() as u64;
    let hp = h_prime.len() as u64;
    let ell_prime = pruned.budget.max(0) as u64;
    let alpha = BigUint::from(2 * (ell_prime + 1) * (x_prime + hp) * (x_prime + hp));
    trace.push("prune", "component_count", comp_count, Some(alpha.clone()));

    let restricted = restrict_deletable(&pruned, &h_prime, w, config)?;
    let delta = 2 * w as u64;
    let z_bound = BigUint::from(x_prime + hp)
        + alpha * BigUint::from(delta) * kappa_bound(delta, delta - 1, x_prime + delta);
    trace.push(
        "restrict",
        "z_size",
        restricted.deletable.len() as u64,
        Some(z_bound.clone()),
    );

    let out = back_transform(&restricted);
    let z = restricted.deletable.len() as u64;
    let v_bound = BigUint::from(z + (ell_prime + 1) * z * z);
    graph_entry(&mut trace, "back_transform", &out.graph);
    trace.push(
        "back_transform",
        "out_vertices",
        out.graph.vertex_count() as u64,
        Some(v_bound),
    );

    if let Some(e) = trace.violations().first() {
        return Err(KernelError::BoundViolation {
            stage: e.stage,
            metric: e.metric,
        });
    }

    // Residual decisions once the budget collapses.
    if out.budget < 0 {
        return Ok(KernelOutput {
            instance: OctInstance::canonical_no(),
            outcome: KernelOutcome::CanonicalNo,
            trace,
        });
    }
    if out.budget == 0 {
        let verdict = matches!(
            bipartition(&out.graph, &out.graph.vertex_set()),
            BipartitionResult::Bipartite(_)
        );
        return Ok(KernelOutput {
            instance: if verdict {
                OctInstance::canonical_yes()
            } else {
                OctInstance::canonical_no()
            },
            outcome: if verdict {
                KernelOutcome::CanonicalYes
            } else {
                KernelOutcome::CanonicalNo
            },
            trace,
        });
    }
    Ok(KernelOutput {
        instance: out,
        outcome: KernelOutcome::Reduced,
        trace,
    })
}
