//! Problem instances: plain, annotated and restricted odd cycle transversal
//! with a modulator to a bipartite bounded-treewidth graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{bipartition, BipartitionResult, Graph, Pair, Vertex, VertexSet};
use crate::io::Instance;
use crate::treewidth::{decompose, TreeDecomposition};

/// `(G, X, l)`: is there a set of at most `l` vertices whose deletion makes
/// `G` bipartite? The modulator `X` is the structural parameter; which class
/// `G - X` must belong to depends on context and is validated, not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctInstance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub budget: i64,
}

/// Annotated variant: monochromatic pairs over the modulator must share a
/// color in the 2-coloring after deletion. A pair may simultaneously be an
/// edge (bichromatic), which forces one endpoint into every solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedInstance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub mono: BTreeSet<Pair>,
    pub budget: i64,
}

/// Restricted variant: solutions may only use deletable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedInstance {
    pub annotated: AnnotatedInstance,
    pub deletable: VertexSet,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("modulator vertex {0} is not in the graph")]
    ModulatorNotInGraph(Vertex),
    #[error("graph minus modulator is not bipartite")]
    ResidualNotBipartite,
    #[error("graph minus modulator has treewidth above {0}")]
    ResidualWidthTooLarge(usize),
    #[error("monochromatic pair ({0}, {1}) has an endpoint outside the modulator")]
    MonoOutsideModulator(Vertex, Vertex),
    #[error("deletable vertex {0} is not in the graph")]
    DeletableNotInGraph(Vertex),
}

impl OctInstance {
    pub fn new(graph: Graph, modulator: VertexSet, budget: i64) -> Self {
        OctInstance {
            graph,
            modulator,
            budget,
        }
    }

    /// Smallest instance with answer yes: one vertex, empty modulator,
    /// budget zero.
    pub fn canonical_yes() -> Self {
        OctInstance::new(Graph::with_vertices(1), VertexSet::new(), 0)
    }

    /// Smallest instance with answer no: a triangle with budget zero; one
    /// vertex serves as the modulator so the residual stays bipartite.
    pub fn canonical_no() -> Self {
        let mut g = Graph::with_vertices(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        OctInstance::new(g, VertexSet::from([0]), 0)
    }

    /// Checks that the modulator is a deletion set to bipartite graphs of
    /// treewidth at most `w`, returning the witness decomposition.
    pub fn validate_bip_tw(&self, w: usize) -> Result<TreeDecomposition, InstanceError> {
        for &v in &self.modulator {
            if !self.graph.has_vertex(v) {
                return Err(InstanceError::ModulatorNotInGraph(v));
            }
        }
        let residual = self.graph.removed(&self.modulator);
        match bipartition(&residual, &residual.vertex_set()) {
            BipartitionResult::Bipartite(_) => {}
            BipartitionResult::OddCycle(_) => return Err(InstanceError::ResidualNotBipartite),
        }
        decompose(&residual, w).ok_or(InstanceError::ResidualWidthTooLarge(w))
    }

    pub fn annotate(&self) -> AnnotatedInstance {
        AnnotatedInstance {
            graph: self.graph.clone(),
            modulator: self.modulator.clone(),
            mono: BTreeSet::new(),
            budget: self.budget,
        }
    }

    pub fn to_file(&self) -> Instance {
        Instance::new(
            self.graph.clone(),
            self.modulator.clone(),
            self.budget.max(0),
        )
    }

    pub fn from_file(inst: &Instance) -> Self {
        OctInstance::new(inst.graph.clone(), inst.modulator.clone(), inst.budget)
    }
}

impl AnnotatedInstance {
    pub fn validate(&self) -> Result<(), InstanceError> {
        for &v in &self.modulator {
            if !self.graph.has_vertex(v) {
                return Err(InstanceError::ModulatorNotInGraph(v));
            }
        }
        for &(u, v) in &self.mono {
            if !self.modulator.contains(&u) || !self.modulator.contains(&v) {
                return Err(InstanceError::MonoOutsideModulator(u, v));
            }
        }
        let residual = self.graph.removed(&self.modulator);
        match bipartition(&residual, &residual.vertex_set()) {
            BipartitionResult::Bipartite(_) => Ok(()),
            BipartitionResult::OddCycle(_) => Err(InstanceError::ResidualNotBipartite),
        }
    }

    /// A proper 2-coloring of `graph - s` respecting every edge inside the
    /// modulator and every monochromatic pair, if one exists. Searches over
    /// colorings of the surviving modulator vertices and extends each
    /// greedily.
    pub fn solution_coloring(&self, s: &VertexSet) -> Option<BTreeMap<Vertex, u8>> {
        use crate::graph::{extend_two_coloring, ExtendOutcome};
        let rest = self.graph.removed(s);
        let x_alive: Vec<Vertex> = self
            .modulator
            .iter()
            .filter(|v| rest.has_vertex(**v))
            .copied()
            .collect();
        let mono: Vec<Pair> = self
            .mono
            .iter()
            .filter(|(u, v)| rest.has_vertex(*u) && rest.has_vertex(*v))
            .copied()
            .collect();

        fn assign(
            i: usize,
            x: &[Vertex],
            rest: &Graph,
            mono: &[Pair],
            colors: &mut BTreeMap<Vertex, u8>,
        ) -> Option<BTreeMap<Vertex, u8>> {
            if i == x.len() {
                return match extend_two_coloring(rest, colors) {
                    Ok(ExtendOutcome::Extended(c)) => Some(c),
                    _ => None,
                };
            }
            let v = x[i];
            'choice: for c in [0u8, 1u8] {
                for u in rest.neighbors(v) {
                    if colors.get(&u) == Some(&c) {
                        continue 'choice;
                    }
                }
                for &(a, b) in mono {
                    let other = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if let Some(&co) = colors.get(&other) {
                        if co != c {
                            continue 'choice;
                        }
                    }
                }
                colors.insert(v, c);
                if let Some(full) = assign(i + 1, x, rest, mono, colors) {
                    return Some(full);
                }
                colors.remove(&v);
            }
            None
        }

        // The residual outside the modulator must be bipartite at all.
        let scope: VertexSet = rest
            .vertices()
            .filter(|v| !self.modulator.contains(v))
            .collect();
        if !matches!(bipartition(&rest, &scope), BipartitionResult::Bipartite(_)) {
            return None;
        }
        assign(0, &x_alive, &rest, &mono, &mut BTreeMap::new())
    }

    /// Is deleting `s` a valid annotated solution (ignoring the budget)?
    pub fn is_valid_solution(&self, s: &VertexSet) -> bool {
        self.solution_coloring(s).is_some()
    }

    pub fn canonical_no() -> Self {
        OctInstance::canonical_no().annotate()
    }

    pub fn to_file(&self) -> Instance {
        let mut f = Instance::new(
            self.graph.clone(),
            self.modulator.clone(),
            self.budget.max(0),
        );
        f.mono = self.mono.clone();
        f
    }

    pub fn from_file(inst: &Instance) -> Self {
        AnnotatedInstance {
            graph: inst.graph.clone(),
            modulator: inst.modulator.clone(),
            mono: inst.mono.clone(),
            budget: inst.budget,
        }
    }
}

impl RestrictedInstance {
    pub fn validate(&self) -> Result<(), InstanceError> {
        self.annotated.validate()?;
        for &v in &self.deletable {
            if !self.annotated.graph.has_vertex(v) {
                return Err(InstanceError::DeletableNotInGraph(v));
            }
        }
        Ok(())
    }

    pub fn is_valid_solution(&self, s: &VertexSet) -> bool {
        s.is_subset(&self.deletable) && self.annotated.is_valid_solution(s)
    }

    pub fn to_file(&self) -> Instance {
        let mut f = self.annotated.to_file();
        f.deletable = Some(self.deletable.clone());
        f
    }

    pub fn from_file(inst: &Instance) -> Self {
        RestrictedInstance {
            annotated: AnnotatedInstance::from_file(inst),
            deletable: inst
                .deletable
                .clone()
                .unwrap_or_else(|| inst.graph.vertex_set()),
        }
    }
}
