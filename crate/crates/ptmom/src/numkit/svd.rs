use num_complex::Complex64;

use super::eigen::hermitian_eigensystem;
use super::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Singular value decomposition `m = U diag(s) V†` of a square matrix.
///
/// Reuses the Hermitian eigensolver: `V` comes from `m†m`, singular values
/// are recovered as `||m v_i||` (which keeps full precision where the
/// eigenvalue route would lose half its digits near rank deficiency), and
/// `U` columns are `m v_i / s_i`, completed to a unitary basis across the
/// null space and re-orthonormalized so repeated singular values cannot
/// degrade orthogonality.
pub fn svd(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok((
            ComplexMatrix::zeros(0, 0),
            vec![],
            ComplexMatrix::zeros(0, 0),
        ));
    }
    let gram = m.adjoint().mul(m);
    let (_, v_raw) = hermitian_eigensystem(&gram, 1e-8 * gram.max_norm().max(1.0))?;

    // recompute singular values directly and re-sort (the eigenvalue order is
    // already descending, but sqrt noise can reorder near-ties)
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|j| {
            let col = v_raw.column(j);
            let mv = m.apply(&col);
            (vec_norm(&mv), col)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    let scale = m.max_norm();
    let zero_cut = f64::EPSILON * scale * (n as f64) * 16.0;

    let mut v = ComplexMatrix::zeros(n, n);
    let mut u = ComplexMatrix::zeros(n, n);
    let mut sigmas = Vec::with_capacity(n);
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, (s, vcol)) in pairs.into_iter().enumerate() {
        v.set_column(j, &vcol);
        if s > zero_cut {
            let mv = m.apply(&vcol);
            u_cols.push(mv.iter().map(|z| z / s).collect());
            sigmas.push(s);
        } else {
            u_cols.push(vec![Complex64::new(0.0, 0.0); n]); // filled below
            sigmas.push(0.0);
        }
    }

    // Gram-Schmidt pass: orthonormalize the range columns in order, then
    // complete the null-space columns from the standard basis.
    let mut established: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, col) in u_cols.iter().enumerate() {
        if sigmas[j] > 0.0 {
            let col = orthonormalize(col.clone(), &established)
                .unwrap_or_else(|| complete_basis(&established, n));
            established.push(col);
        }
    }
    for &sigma in sigmas.iter() {
        if sigma == 0.0 {
            established.push(complete_basis(&established, n));
        }
    }
    for (j, col) in established.iter().enumerate() {
        u.set_column(j, col);
    }

    Ok((u, sigmas, v))
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Project `col` against `established` (twice, for stability) and normalize.
/// Returns `None` if the column is annihilated.
fn orthonormalize(
    mut col: Vec<Complex64>,
    established: &[Vec<Complex64>],
) -> Option<Vec<Complex64>> {
    for _ in 0..2 {
        for e in established {
            let overlap: Complex64 = e.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
            for (c, ei) in col.iter_mut().zip(e) {
                *c -= overlap * ei;
            }
        }
    }
    let norm = vec_norm(&col);
    if norm < 1e-12 {
        return None;
    }
    for c in &mut col {
        *c /= norm;
    }
    Some(col)
}

/// First standard basis vector with a nonzero component orthogonal to
/// `established`, orthonormalized.
fn complete_basis(established: &[Vec<Complex64>], n: usize) -> Vec<Complex64> {
    for k in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        if let Some(col) = orthonormalize(e, established) {
            return col;
        }
    }
    unreachable!("fewer than n orthonormal columns cannot span C^n");
}
