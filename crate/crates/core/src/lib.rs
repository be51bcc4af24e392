//! Synchrony patterns of undirected coupled cell networks, with a focus on trees.
//!
//! The crate covers the combinatorial side (balanced colorings, coarsest
//! balanced partitions, leaf pruning, tree automorphisms, quotient networks)
//! and the dynamical side (linearizations at equilibria, spectra, cherry
//! synchrony subspaces, RK4 integration and Lyapunov decay checks).
//!
//! Vertices are dense `usize` ids `0..n`. Conversion to the 1-indexed labels
//! used in graph files happens at the I/O boundary.

pub mod balanced;
pub mod dynamics;
mod error;
pub mod graph;
pub mod quotient;
mod refine;
pub mod spectral;
pub mod symmetry;

pub use balanced::{BalanceCertificate, BalanceWitness, Coloring};
pub use dynamics::{Cherry, CherryPack, FieldSpec, Trajectory};
pub use error::{Error, Result};
pub use graph::{Graph, LeafDistanceMultiset, Matching};
pub use quotient::QuotientNetwork;
pub use spectral::{CouplingParams, Matrix, Spectrum};
pub use symmetry::{AutomorphismGroup, Classification, Permutation, PruningTrace};
