//! Exact arithmetic for the dollar game on simplicial complexes.
//!
//! Chains live on the faces of a [`SimplicialComplex`]; the game moves are
//! additions of Laplacian columns. The crate computes Hilbert bases of
//! nonnegative Laplacian kernels, degrees, critical groups, spanning forests,
//! and decides winnability with checkable certificates.

pub mod bigjson;
pub mod chain;
pub mod chain_space;
pub mod complex;
pub mod corpus;
pub mod cone;
pub mod error;
pub mod forests;
pub mod game;
pub mod homology;
pub mod linalg;
pub mod pseudomanifold;
pub mod search;
pub mod winnability;

pub use chain::IntChain;
pub use chain_space::ChainSpace;
pub use complex::{parse_complex, ComplexDocument, Face, FaceRef, SimplicialComplex};
pub use cone::{DegreeVector, HilbertBasisSet, RealizeMode};
pub use error::{Error, Result};
pub use forests::{ForestCertificate, ForestMode, ReducedLaplacianResult};
pub use game::{Engine, GameSession, Move, MoveKind};
pub use homology::{CriticalGroupResult, HomologyResult, HomologyVariant};
pub use linalg::{AbelianGroupStructure, IntMatrix, SmithDecomposition};
pub use pseudomanifold::{IncidenceGraph, PseudomanifoldInfo};
pub use winnability::{MinimalDegreeReport, WinReason, WinVerdict};
