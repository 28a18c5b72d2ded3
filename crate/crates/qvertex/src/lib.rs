//! Scattering calculus for singular vertices on quantum star graphs.
//!
//! A vertex joining `n` half-lines is described by a boundary condition
//! `A psi + B psi' = 0` on the vector of boundary values and outward
//! derivatives, with complex `n x n` matrices `A`, `B`. This crate
//! provides:
//!
//! * [`matrix`] - a small dense complex-matrix kernel (LU solve, Jacobi
//!   singular values, rank and Hermiticity tests) sized for the job;
//! * [`vertex`] - admissibility checks, the two normal forms of a
//!   boundary pair, rank-based classification and named constructors;
//! * [`scattering`] - the scattering matrix `S(k)`, scattering
//!   solutions, the high/low-energy duality map and asymptotic limits;
//! * [`closed_form`] - closed-form transmission amplitudes for the
//!   catalogued `n = 2, 3` vertex families;
//! * [`filter`] - classification of pairwise couplings as high-pass,
//!   low-pass, all-pass or mixed, and design of three-line branching
//!   filters from a requested pass pattern;
//! * [`presets`], [`io`] - reference parameter sets, JSON/CSV interfaces
//!   used by the `qvertex` command-line tool.

pub mod closed_form;
pub mod error;
pub mod filter;
pub mod io;
pub mod matrix;
pub mod presets;
pub mod scattering;
pub mod vertex;

pub use error::{Error, Result};
pub use matrix::{is_hermitian, numerical_rank, rank_info, ComplexMatrix, RankInfo};
pub use scattering::{s_matrix, ScatteringMatrix};
pub use vertex::{classify, BoundaryPair, CaseLabel, CaseParameters, VertexClass};

/// Default relative tolerance for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Default tolerance for Hermiticity checks, relative to the matrix scale.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-9;
