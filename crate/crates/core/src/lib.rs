//! Odd cycle transversal kernelization for instances given with a modulator
//! to bipartite bounded-treewidth graphs, together with the separator and
//! cut-characteristic machinery it is built on, exact solver oracles, and
//! verifiable lower-bound gadget constructions.

pub mod graph;
pub mod io;

mod flow;

pub mod generators;
pub mod instances;
pub mod kernel;
pub mod separators;
pub mod solvers;
pub mod treewidth;
