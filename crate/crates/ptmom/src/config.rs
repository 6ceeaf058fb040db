//! Central tolerance defaults.
//!
//! Every threshold used by the library is collected here so the numeric
//! contract lives in one place. Operations that accept an explicit `tol`
//! argument default to these values through [`Tolerances::default`].

/// Tolerance bundle threaded through validation and certification.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Max-norm Hermiticity residual accepted before symmetrizing a matrix.
    pub hermiticity: f64,
    /// Deviation of a density-matrix trace from 1 accepted on construction.
    pub trace: f64,
    /// Eigenvalues of a density matrix above `-psd_clamp` are clamped to 0;
    /// anything below rejects the state.
    pub psd_clamp: f64,
    /// Unitarity residual accepted for local rotations.
    pub unitarity: f64,
    /// Norm deviation accepted for pure-state vectors.
    pub normalization: f64,
    /// Polynomial roots with |Im| at or below this are flattened to the real
    /// axis; anything larger signals an inconsistent moment vector.
    pub root_imag: f64,
    /// Default moment-residual threshold for the two-qubit certificate.
    pub certification: f64,
    /// Eigenvalues below `-negative_eigenvalue` count as negative for
    /// negativity and PPT purposes.
    pub negative_eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-10,
            psd_clamp: 1e-10,
            unitarity: 1e-10,
            normalization: 1e-10,
            root_imag: 1e-7,
            certification: 1e-8,
            negative_eigenvalue: 1e-10,
        }
    }
}
