use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Spectrum};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 50;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// Returns eigenvalues sorted descending and a unitary matrix whose columns
/// are the matching eigenvectors, so `m v_i = lambda_i v_i`. The input must
/// be Hermitian within `tol` in max-norm; it is symmetrized exactly before
/// iteration so rounding noise in the input cannot leak into the spectrum.
pub fn hermitian_eigensystem(m: &ComplexMatrix, tol: f64) -> Result<(Spectrum, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Spectrum::from_unsorted(vec![]), ComplexMatrix::zeros(0, 0)));
    }

    let mut a = m.hermitized();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_norm();
    if scale == 0.0 {
        return Ok((Spectrum::from_unsorted(vec![0.0; n]), v));
    }
    // rotations stop once every off-diagonal entry is at rounding level
    let stop = f64::EPSILON * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, stop);
            }
        }
    }
    if !converged {
        // one final check: the last sweep may have finished the job
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off > stop * 16.0 {
            return Err(Error::EigenDidNotConverge { sweeps: MAX_SWEEPS });
        }
    }

    // sort eigenpairs by descending eigenvalue, index as tiebreak
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap().then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok((Spectrum::from_unsorted(values), vectors))
}

/// One Jacobi rotation zeroing `a[p][q]`.
///
/// The complex off-diagonal entry is first rotated onto the real axis by a
/// diagonal phase, then eliminated by a standard real 2x2 rotation; the
/// combined unitary acts on columns (p, q) of `a` and `v` and rows (p, q)
/// of `a`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, stop: f64) {
    let apq = a.get(p, q);
    let b = apq.norm();
    if b <= stop * 0.01 {
        // too small to matter this sweep
        return;
    }
    let w = apq.conj() / b; // beta * w = |beta|
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // combined unitary on coordinates (p, q):
    //   u = [[c, s], [-w*s, w*c]]
    let n = a.rows();
    let ws = w * s;
    let wc = w * c;

    // columns: a <- a * u, v <- v * u
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * ws);
        a.set(i, q, aip * s + aiq * wc);
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * ws);
        v.set(i, q, vip * s + viq * wc);
    }
    // rows: a <- u† * a
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * ws.conj());
        a.set(q, j, apj * s + aqj * wc.conj());
    }
    // the (p,q) entry is zero by construction; pin diagonals to the real axis
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));
}
