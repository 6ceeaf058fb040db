//! Self-contained dense complex linear algebra for small systems (d <= 64).
//!
//! Everything here is written for accuracy at small dimension rather than
//! asymptotic speed: a cyclic Jacobi Hermitian eigensolver, an SVD built on
//! it, and a real-spectrum polynomial root finder (balanced companion matrix
//! plus a multiplicity-aware refinement stage).

mod eigen;
mod matrix;
mod roots;
mod svd;

pub use eigen::hermitian_eigensystem;
pub use matrix::{ComplexMatrix, Spectrum};
pub use roots::real_poly_roots;
pub use svd::svd;

use crate::{Error, Result};

/// Trace of the k-th matrix power, `Tr(m^k)`, for Hermitian `m`.
///
/// Computed by repeated multiplication so it stays an independent check on
/// the spectral route (power sums of eigenvalues). An imaginary residue in
/// the trace above `tol` rejects the input as non-Hermitian.
pub fn trace_power(m: &ComplexMatrix, k: usize, tol: f64) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    assert!(k >= 1, "trace_power requires k >= 1");
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    let mut power = m.clone();
    for _ in 1..k {
        power = power.mul(m);
    }
    let tr = power.trace();
    let scale = m.max_norm().max(1.0);
    if tr.im.abs() > tol * scale.powi(k as i32).max(1.0) {
        return Err(Error::NotHermitian {
            residual: tr.im.abs(),
            tol,
        });
    }
    Ok(tr.re)
}
