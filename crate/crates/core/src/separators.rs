//! Vertex cuts, important separators and cut characteristics of labeled
//! graphs.
//!
//! Minimum vertex cuts come with a packing of internally vertex-disjoint
//! paths of matching cardinality, so Menger duality can be checked on every
//! call. Important separators follow the convention that a candidate
//! separator is disjoint from both terminal sets; enumeration uses the
//! standard branching (pivot vertex in the separator, or contracted toward
//! the source side) and definition-checks every candidate before returning
//! it.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::flow::{unit_vertex_cut, UnitCutInput};
use crate::graph::{Bipartition, Graph, Vertex, VertexSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CutError {
    #[error("terminals must be distinct")]
    SameTerminal,
    #[error("no finite vertex cut exists: terminals are adjacent")]
    AdjacentTerminals,
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("terminal {0} lies inside the bipartition scope")]
    TerminalInScope(Vertex),
    #[error("bipartition is not proper for the graph")]
    ImproperBipartition,
}

/// A minimum s-t vertex cut together with a maximum packing of internally
/// vertex-disjoint s-t paths; the two have equal cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub cut: VertexSet,
    /// Full vertex sequences from `s` to `t`.
    pub paths: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedCut {
    Cut(MinCut),
    /// More than `bound` disjoint paths exist; carries `bound + 1` of them.
    ExceedsBound {
        paths: Vec<Vec<Vertex>>,
    },
}

pub fn min_vertex_cut(g: &Graph, s: Vertex, t: Vertex) -> Result<MinCut, CutError> {
    match min_vertex_cut_bounded(g, s, t, usize::MAX - 1)? {
        BoundedCut::Cut(c) => Ok(c),
        BoundedCut::ExceedsBound { .. } => unreachable!("unbounded cut computation"),
    }
}

/// Like [`min_vertex_cut`] but stops as soon as `bound + 1` disjoint paths
/// are found, reporting that the cut exceeds `bound`.
pub fn min_vertex_cut_bounded(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    bound: usize,
) -> Result<BoundedCut, CutError> {
    if s == t {
        return Err(CutError::SameTerminal);
    }
    for v in [s, t] {
        if !g.has_vertex(v) {
            return Err(CutError::MissingVertex(v));
        }
    }
    if g.has_edge(s, t) {
        return Err(CutError::AdjacentTerminals);
    }
    let scope: VertexSet = g.vertices().filter(|&v| v != s && v != t).collect();
    let input = UnitCutInput {
        graph: g,
        source_side: g.neighbors(s).filter(|v| scope.contains(v)).collect(),
        sink_side: g.neighbors(t).filter(|v| scope.contains(v)).collect(),
        scope,
    };
    let res = unit_vertex_cut(&input, Some(bound + 1));
    let full_paths = |interior: Vec<Vec<Vertex>>| {
        interior
            .into_iter()
            .map(|p| {
                let mut path = Vec::with_capacity(p.len() + 2);
                path.push(s);
                path.extend(p);
                path.push(t);
                path
            })
            .collect::<Vec<_>>()
    };
    if res.reached_bound {
        Ok(BoundedCut::ExceedsBound {
            paths: full_paths(res.paths),
        })
    } else {
        Ok(BoundedCut::Cut(MinCut {
            cut: res.cut,
            paths: full_paths(res.paths),
        }))
    }
}

/// Which side of a [`Bipartition`] a typed cut attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Zero,
    One,
}

impl Bipartition {
    fn side_set(&self, s: Side) -> &VertexSet {
        match s {
            Side::Zero => &self.side0,
            Side::One => &self.side1,
        }
    }
}

/// A typed cut: separates `N(u) ∩ side_in` from `N(v) ∩ side_out` inside the
/// bipartite part. The accompanying paths are the interiors only, i.e.
/// vertex-disjoint paths through the bipartite part attaching to `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedCut {
    pub cut: VertexSet,
    pub paths: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypedCutOutcome {
    Cut(TypedCut),
    ExceedsBound { paths: Vec<Vec<Vertex>> },
}

/// Minimum-size set of bipartite-part vertices whose deletion separates
/// `N(u) ∩ side_in` from `N(v) ∩ side_out`, computed by attaching a source
/// and a sink and running a unit-capacity flow. `u == v` is allowed.
pub fn vertex_cut_typed(
    g: &Graph,
    bip: &Bipartition,
    u: Vertex,
    v: Vertex,
    side_in: Side,
    side_out: Side,
) -> Result<TypedCut, CutError> {
    match vertex_cut_typed_bounded(g, bip, u, v, side_in, side_out, usize::MAX - 1)? {
        TypedCutOutcome::Cut(c) => Ok(c),
        TypedCutOutcome::ExceedsBound { .. } => unreachable!("unbounded cut computation"),
    }
}

pub fn vertex_cut_typed_bounded(
    g: &Graph,
    bip: &Bipartition,
    u: Vertex,
    v: Vertex,
    side_in: Side,
    side_out: Side,
    bound: usize,
) -> Result<TypedCutOutcome, CutError> {
    for w in [u, v] {
        if !g.has_vertex(w) {
            return Err(CutError::MissingVertex(w));
        }
        if bip.side(w).is_some() {
            return Err(CutError::TerminalInScope(w));
        }
    }
    if !bip.is_proper(g) {
        return Err(CutError::ImproperBipartition);
    }
    let scope = bip.scope();
    let input = UnitCutInput {
        graph: g,
        source_side: g
            .neighbors(u)
            .filter(|w| bip.side_set(side_in).contains(w))
            .collect(),
        sink_side: g
            .neighbors(v)
            .filter(|w| bip.side_set(side_out).contains(w))
            .collect(),
        scope,
    };
    let res = unit_vertex_cut(&input, Some(bound + 1));
    if res.reached_bound {
        Ok(TypedCutOutcome::ExceedsBound { paths: res.paths })
    } else {
        Ok(TypedCutOutcome::Cut(TypedCut {
            cut: res.cut,
            paths: res.paths,
        }))
    }
}

/// Vertices reachable from `x \ s` in `g - s`.
pub fn reachable_from_set(g: &Graph, x: &VertexSet, s: &VertexSet) -> VertexSet {
    let mut reach = VertexSet::new();
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in x {
        if g.has_vertex(v) && !s.contains(&v) && reach.insert(v) {
            stack.push(v);
        }
    }
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !s.contains(&w) && reach.insert(w) {
                stack.push(w);
            }
        }
    }
    reach
}

/// An `(x, y)`-separator in the sense used here is disjoint from `x ∪ y` and
/// leaves no vertex of `y` reachable from `x`.
pub fn is_separator(g: &Graph, x: &VertexSet, y: &VertexSet, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| !x.contains(v) && !y.contains(v) && g.has_vertex(*v))
        && reachable_from_set(g, x, s).is_disjoint(y)
}

/// Definition check: minimal (no proper subset separates) and undominated
/// (no separator of at most equal size with a strictly larger reachable
/// region). Domination is checked exhaustively over candidate subsets;
/// desk-scale graphs only.
pub fn is_important_separator(g: &Graph, x: &VertexSet, y: &VertexSet, s: &VertexSet) -> bool {
    if !is_separator(g, x, y, s) {
        return false;
    }
    // Minimality: removing any single vertex must break separation.
    for &v in s {
        let mut smaller = s.clone();
        smaller.remove(&v);
        if is_separator(g, x, y, &smaller) {
            return false;
        }
    }
    let reach = reachable_from_set(g, x, s);
    let candidates: Vec<Vertex> = g
        .vertices()
        .filter(|v| !x.contains(v) && !y.contains(v))
        .collect();
    let mut dominated = false;
    for_each_subset(&candidates, s.len(), &mut |other| {
        if dominated || other.len() > s.len() {
            return;
        }
        let other_set: VertexSet = other.iter().copied().collect();
        if other_set == *s || !is_separator(g, x, y, &other_set) {
            return;
        }
        let other_reach = reachable_from_set(g, x, &other_set);
        if reach.is_subset(&other_reach) && reach != other_reach {
            dominated = true;
        }
    });
    !dominated
}

/// All subsets of `items` of size at most `max_size`, in (size, lex) order.
fn for_each_subset(items: &[Vertex], max_size: usize, f: &mut impl FnMut(&[Vertex])) {
    let mut current: Vec<Vertex> = Vec::new();
    f(&current);
    for size in 1..=max_size.min(items.len()) {
        fn rec(
            items: &[Vertex],
            start: usize,
            remaining: usize,
            current: &mut Vec<Vertex>,
            f: &mut impl FnMut(&[Vertex]),
        ) {
            if remaining == 0 {
                f(current);
                return;
            }
            for i in start..=items.len().saturating_sub(remaining) {
                current.push(items[i]);
                rec(items, i + 1, remaining - 1, current, f);
                current.pop();
            }
        }
        rec(items, 0, size, &mut current, f);
    }
}

/// The complete list of important `(x, y)`-separators of size at most `m`,
/// ordered by (size, lex). At most `4^m` exist.
pub fn enumerate_important_separators(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    m: usize,
) -> Vec<VertexSet> {
    let mut candidates: std::collections::BTreeSet<VertexSet> = Default::default();
    branch(g, x, y, m as i64, &VertexSet::new(), &mut candidates);
    let mut out: Vec<VertexSet> = candidates
        .into_iter()
        .filter(|s| s.len() <= m && is_important_separator(g, x, y, s))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn branch(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    m: i64,
    prefix: &VertexSet,
    out: &mut std::collections::BTreeSet<VertexSet>,
) {
    if !x.is_disjoint(y) {
        return;
    }
    if reachable_from_set(g, x, &VertexSet::new()).is_disjoint(y) {
        out.insert(prefix.clone());
        return;
    }
    if m <= 0 {
        return;
    }
    // A direct x-y edge cannot be cut.
    if x.iter()
        .any(|&u| g.has_vertex(u) && g.neighbors(u).any(|w| y.contains(&w)))
    {
        return;
    }
    let scope: VertexSet = g
        .vertices()
        .filter(|v| !x.contains(v) && !y.contains(v))
        .collect();
    let input = UnitCutInput {
        graph: g,
        source_side: x
            .iter()
            .filter(|v| g.has_vertex(**v))
            .flat_map(|&u| g.neighbors(u))
            .filter(|w| scope.contains(w))
            .collect(),
        sink_side: y
            .iter()
            .filter(|v| g.has_vertex(**v))
            .flat_map(|&u| g.neighbors(u))
            .filter(|w| scope.contains(w))
            .collect(),
        scope,
    };
    let res = unit_vertex_cut(&input, Some(m as usize + 1));
    if res.reached_bound {
        return; // min cut already exceeds the budget
    }
    // Pivot on the minimum cut pushed as far toward y as possible.
    let pivot = *res
        .cut_near_sink
        .first()
        .expect("connected terminals need a nonempty cut");

    let mut with_pivot = g.clone();
    with_pivot.remove_vertex(pivot);
    let mut prefix2 = prefix.clone();
    prefix2.insert(pivot);
    branch(&with_pivot, x, y, m - 1, &prefix2, out);

    let mut x2 = x.clone();
    x2.insert(pivot);
    branch(g, &x2, y, m, prefix, out);
}

pub type Label = u32;
pub type LabelSet = std::collections::BTreeSet<Label>;

/// A graph whose vertices carry (possibly empty) subsets of a finite label
/// set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: LabelSet,
    labeling: BTreeMap<Vertex, LabelSet>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: LabelSet) -> Self {
        LabeledGraph {
            graph,
            labels,
            labeling: BTreeMap::new(),
        }
    }

    pub fn set_labels(&mut self, v: Vertex, ls: LabelSet) {
        assert!(self.graph.has_vertex(v), "labeling a missing vertex");
        assert!(ls.is_subset(&self.labels), "label outside the label set");
        if ls.is_empty() {
            self.labeling.remove(&v);
        } else {
            self.labeling.insert(v, ls);
        }
    }

    pub fn labels_of(&self, v: Vertex) -> LabelSet {
        self.labeling.get(&v).cloned().unwrap_or_default()
    }

    /// Vertices carrying at least one label from `j`.
    pub fn vertices_with_labels(&self, j: &LabelSet) -> VertexSet {
        self.labeling
            .iter()
            .filter(|(_, ls)| !ls.is_disjoint(j))
            .map(|(&v, _)| v)
            .collect()
    }
}

/// Labels reachable from `t` in `g - s`: the union of label sets over all
/// vertices reachable from `t` after deleting `s`. A terminal inside `s`
/// reaches nothing.
pub fn reachable_labels(lg: &LabeledGraph, t: Vertex, s: &VertexSet) -> LabelSet {
    let reach = reachable_from_set(&lg.graph, &VertexSet::from([t]), s);
    let mut out = LabelSet::new();
    for v in reach {
        out.extend(lg.labels_of(v));
    }
    out
}

/// Per-terminal vector of reachable label sets; the equivalence key for
/// separator replacement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutCharacteristic(pub Vec<LabelSet>);

pub fn cut_characteristic(
    lg: &LabeledGraph,
    terminals: &[Vertex],
    s: &VertexSet,
) -> CutCharacteristic {
    debug_assert!(
        terminals
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            == terminals.len(),
        "terminals must be distinct"
    );
    CutCharacteristic(
        terminals
            .iter()
            .map(|&t| reachable_labels(lg, t, s))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicClass {
    pub characteristic: CutCharacteristic,
    /// Minimum-size representative; ties broken by lexicographically
    /// smallest sorted vertex sequence.
    pub representative: VertexSet,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("enumeration of {subsets} candidate subsets exceeds ceiling {ceiling}")]
    CeilingExceeded { subsets: u128, ceiling: u128 },
}

fn count_subsets(n: usize, m: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=m.min(n) {
        if k > 0 {
            binom = binom.saturating_mul((n - k + 1) as u128) / k as u128;
        }
        total = total.saturating_add(binom);
    }
    total
}

/// Groups every subset of `candidates` of size at most `m` by its cut
/// characteristic, keeping one canonical minimum-size representative per
/// class. Classes are returned sorted by representative (size, then lex).
pub fn enumerate_characteristics(
    lg: &LabeledGraph,
    terminals: &[Vertex],
    m: usize,
    candidates: &VertexSet,
    ceiling: u128,
) -> Result<Vec<CharacteristicClass>, EnumerationError> {
    let subsets = count_subsets(candidates.len(), m);
    if subsets > ceiling {
        return Err(EnumerationError::CeilingExceeded { subsets, ceiling });
    }
    let items: Vec<Vertex> = candidates.iter().copied().collect();
    let mut classes: BTreeMap<CutCharacteristic, VertexSet> = BTreeMap::new();
    // (size, lex) enumeration order makes first-seen the canonical choice.
    for_each_subset(&items, m, &mut |subset| {
        let s: VertexSet = subset.iter().copied().collect();
        let key = cut_characteristic(lg, terminals, &s);
        classes.entry(key).or_insert(s);
    });
    let mut out: Vec<CharacteristicClass> = classes
        .into_iter()
        .map(|(characteristic, representative)| CharacteristicClass {
            characteristic,
            representative,
        })
        .collect();
    out.sort_by(|a, b| {
        (a.representative.len(), &a.representative)
            .cmp(&(b.representative.len(), &b.representative))
    });
    Ok(out)
}

fn binom_at_most(r: u64, k: u64) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    for i in 0..=k.min(r) {
        if i > 0 {
            binom = binom * BigUint::from(r - i + 1) / BigUint::from(i);
        }
        total += &binom;
    }
    total
}

/// Upper bound on the number of distinct cut characteristics induced by
/// separators of size at most `m` in an `n`-terminal graph with `r` labels:
/// `(binom(r, <= m') * 4^m)^n` with `m' = m(m+3)/2`.
pub fn kappa_bound(n: u64, m: u64, r: u64) -> BigUint {
    let m_prime = m * (m + 3) / 2;
    let per_terminal = binom_at_most(r, m_prime) * BigUint::from(4u32).pow(m as u32);
    per_terminal.pow(n as u32)
}
