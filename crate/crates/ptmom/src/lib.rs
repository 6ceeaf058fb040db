//! Partial-transpose (PT) moments of bipartite quantum states.
//!
//! A density matrix on `C^m (x) C^n` has a partial transpose whose spectrum
//! carries entanglement information: the PT-moments `p_k = Tr[(rho^PT)^k]`
//! determine that spectrum, and for two qubits the moment vector
//! `(1, 1, 1/4, 1/4)` certifies maximal entanglement. This crate provides
//!
//! - [`numkit`]: dense complex linear algebra sized for dimensions up to 64
//!   (Hermitian eigensolver, SVD, real-spectrum polynomial roots),
//! - [`states`]: bipartite state construction, validation, random generation,
//!   the vec correspondence, Schmidt decomposition, and partial transpose,
//! - [`moments`]: PT-moment vectors, Newton's-identity conversions, and
//!   spectrum reconstruction from moment data,
//! - [`certify`]: negativity, PPT checks, and the two-qubit
//!   maximal-entanglement certificate.
//!
//! All operations are pure functions of immutable values; random generators
//! take explicit seeds (ChaCha12, counter-based) so corpora are reproducible.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod certify;
pub mod config;
pub mod moments;
pub mod numkit;
pub mod states;

pub use config::Tolerances;
pub use num_complex::Complex64;
pub use numkit::{ComplexMatrix, Spectrum};
pub use states::{BipartiteState, SchmidtForm};

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian: symmetry residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    EigenDidNotConverge { sweeps: usize },

    #[error("polynomial has roots with imaginary part {imag:.3e}, beyond {tol:.3e}: no Hermitian spectrum matches")]
    ComplexRootsDetected { imag: f64, tol: f64 },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("trace is {trace:.17}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector is not normalized: norm {norm:.17}")]
    NotNormalized { norm: f64 },

    #[error("matrix is not unitary: residual {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("invalid rank {rank} for a {dim_a}x{dim_b} system")]
    InvalidRank {
        rank: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a 2x2-partitioned state, got {dim_a}x{dim_b}")]
    WrongDimensions { dim_a: usize, dim_b: usize },

    #[error("incompatible subsystem dimensions: ({0}, {1}) vs ({2}, {3})")]
    IncompatibleDimensions(usize, usize, usize, usize),

    #[error("mixing weight t must lie in (0, 1), got {0}")]
    InvalidMixingWeight(f64),

    #[error("moment vector of length {len} does not cover the full dimension {dim}")]
    PartialMomentVector { len: usize, dim: usize },

    #[error("invalid moment vector: {0}")]
    InvalidMoments(String),

    #[error("unknown state kind `{0}`; known kinds: {1}")]
    UnknownStateKind(String, String),

    #[error("malformed state file: {0}")]
    MalformedStateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
