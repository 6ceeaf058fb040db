//! Bipartite states: construction, validation, the vec correspondence,
//! Schmidt decomposition, partial transpose, and the swap operator.

mod generators;
mod io;

pub use generators::{
    generator_names, haar_unitary, lookup_generator, random_state, GeneratorRequest,
    StateGenerator, StateKind,
};
pub use io::{read_state_file, state_to_json, to_json_17, write_state_file};

use num_complex::Complex64;

use crate::numkit::{hermitian_eigensystem, svd, ComplexMatrix, Spectrum};
use crate::{Error, Result, Tolerances};

/// A validated density matrix on `C^{dim_a} (x) C^{dim_b}`.
///
/// Construction symmetrizes small Hermiticity noise, renormalizes the trace,
/// and clamps eigenvalues in `[-1e-10, 0)` to zero (rebuilding the matrix);
/// anything worse is rejected. Instances therefore always satisfy
/// `rho = rho†`, `Tr rho = 1`, `rho >= 0` up to the configured tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    rho: ComplexMatrix,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, rho: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(dim_a, dim_b, rho, &Tolerances::default())
    }

    pub fn with_tolerances(
        dim_a: usize,
        dim_b: usize,
        rho: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        let d = dim_a * dim_b;
        assert!(d >= 1, "subsystem dimensions must be positive");
        if !rho.is_square() {
            return Err(Error::NotSquare {
                rows: rho.rows(),
                cols: rho.cols(),
            });
        }
        if rho.rows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: rho.rows(),
            });
        }
        if !rho.all_finite() {
            return Err(Error::MalformedStateFile("non-finite matrix entry".into()));
        }
        let residual = rho.hermiticity_residual();
        if residual > tol.hermiticity {
            return Err(Error::NotHermitian {
                residual,
                tol: tol.hermiticity,
            });
        }
        let mut rho = rho.hermitized();

        let trace = rho.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::InvalidTrace { trace });
        }
        // renormalize only genuine drift; dividing by 1 +- 2 ulp would
        // perturb every entry and break exact file round-trips
        if (trace - 1.0).abs() > 1e-13 {
            rho = rho.scale_re(1.0 / trace);
        }

        let (spectrum, basis) = hermitian_eigensystem(&rho, tol.hermiticity)?;
        let min_eigenvalue = spectrum.min();
        if min_eigenvalue < -tol.psd_clamp {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        // rebuild only above the eigensolver noise floor; a rebuilt matrix
        // re-validates without another rebuild, keeping files idempotent
        if min_eigenvalue < -1e-14 {
            // clamp rounding-level negativity to zero and rebuild
            let clamped: Vec<f64> = spectrum.values().iter().map(|&x| x.max(0.0)).collect();
            let total: f64 = clamped.iter().sum();
            let mut scaled = basis.clone();
            for (j, &lambda) in clamped.iter().enumerate() {
                let col: Vec<Complex64> = basis
                    .column(j)
                    .iter()
                    .map(|z| z * (lambda / total))
                    .collect();
                scaled.set_column(j, &col);
            }
            rho = scaled.mul(&basis.adjoint()).hermitized();
        }

        Ok(Self { dim_a, dim_b, rho })
    }

    /// Pure-state constructor: the projector onto a normalized vector.
    pub fn from_pure(dim_a: usize, dim_b: usize, psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Tolerances::default().normalization {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(dim_a, dim_b, ComplexMatrix::from_outer(psi))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// Convex combination `t self + (1-t) other`.
    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        if (self.dim_a, self.dim_b) != (other.dim_a, other.dim_b) {
            return Err(Error::IncompatibleDimensions(
                self.dim_a,
                self.dim_b,
                other.dim_a,
                other.dim_b,
            ));
        }
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidMixingWeight(t));
        }
        let mixed = self.rho.scale_re(t).add(&other.rho.scale_re(1.0 - t));
        Self::new(self.dim_a, self.dim_b, mixed)
    }
}

/// The vec correspondence: matrix entry `x[i][j]` becomes the amplitude of
/// `|ij>` at index `i * cols + j`.
pub fn vectorize(x: &ComplexMatrix) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(x.rows() * x.cols());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            out.push(x.get(i, j));
        }
    }
    out
}

/// Inverse of [`vectorize`]; exact by construction.
pub fn unvectorize(psi: &[Complex64], rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(psi.len(), rows * cols, "amplitude count must match shape");
    ComplexMatrix::from_fn(rows, cols, |i, j| psi[i * cols + j])
}

/// Schmidt data of a bipartite pure state: `psi = vec(U diag(sigma) V†)`.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub sigmas: Vec<f64>,
}

impl SchmidtForm {
    /// Smallest Schmidt coefficient.
    pub fn min_coefficient(&self) -> f64 {
        self.sigmas.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Schmidt decomposition of a normalized pure state on `C^d (x) C^d`.
///
/// Coefficients come back sorted descending with `sum sigma_i^2 = 1`; the
/// phase convention makes the first entry of each left singular vector
/// real and nonnegative, with ties between equal coefficients stabilized by
/// lexicographic comparison of the left singular vectors.
pub fn schmidt(psi: &[Complex64], dim_a: usize, dim_b: usize) -> Result<SchmidtForm> {
    assert_eq!(
        dim_a, dim_b,
        "schmidt decomposition is implemented for square bipartitions"
    );
    if psi.len() != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            got: psi.len(),
        });
    }
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > Tolerances::default().normalization {
        return Err(Error::NotNormalized { norm });
    }
    let x = unvectorize(psi, dim_a, dim_b);
    let (mut u, sigmas, mut v) = svd(&x)?;

    // joint phase freedom per singular pair: rotate so the first
    // above-threshold entry of each u column is real nonnegative
    let d = dim_a;
    for j in 0..d {
        let col = u.column(j);
        let lead = col.iter().find(|z| z.norm() > 1e-12);
        if let Some(&z) = lead {
            let phase = z.conj() / z.norm();
            let uc: Vec<Complex64> = col.iter().map(|e| e * phase).collect();
            let vc: Vec<Complex64> = v.column(j).iter().map(|e| e * phase).collect();
            u.set_column(j, &uc);
            v.set_column(j, &vc);
        }
    }

    // stabilize ordering among exactly tied coefficients
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        sigmas[j]
            .partial_cmp(&sigmas[i])
            .unwrap()
            .then_with(|| lex_cmp(&u.column(i), &u.column(j)))
    });
    let sigmas_sorted: Vec<f64> = order.iter().map(|&i| sigmas[i]).collect();
    let mut u_sorted = ComplexMatrix::zeros(d, d);
    let mut v_sorted = ComplexMatrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        u_sorted.set_column(dst, &u.column(src));
        v_sorted.set_column(dst, &v.column(src));
    }

    Ok(SchmidtForm {
        u: u_sorted,
        v: v_sorted,
        sigmas: sigmas_sorted,
    })
}

fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        match x.im.partial_cmp(&y.im).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Partial transpose on subsystem A: block `(i, k)` of the output is block
/// `(k, i)` of the input, blocks being `dim_b x dim_b` tiles.
pub fn partial_transpose(state: &BipartiteState) -> ComplexMatrix {
    partial_transpose_matrix(state.rho(), state.dim_a, state.dim_b)
}

/// Partial transpose of a bare matrix under the `(dim_a, dim_b)` blocking.
pub fn partial_transpose_matrix(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), dim_a * dim_b);
    assert!(m.is_square());
    ComplexMatrix::from_fn(dim_a * dim_b, dim_a * dim_b, |row, col| {
        let (a1, b1) = (row / dim_b, row % dim_b);
        let (a2, b2) = (col / dim_b, col % dim_b);
        m.get(a2 * dim_b + b1, a1 * dim_b + b2)
    })
}

/// Eigenvalues of the partial transpose, sorted descending.
pub fn pt_spectrum(state: &BipartiteState) -> Result<Spectrum> {
    let pt = partial_transpose(state);
    let (spectrum, _) = hermitian_eigensystem(&pt, Tolerances::default().hermiticity)?;
    Ok(spectrum)
}

/// The swap operator `F |ij> = |ji>` on `C^d (x) C^d`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            f.set(j * d + i, i * d + j, Complex64::new(1.0, 0.0));
        }
    }
    f
}

/// Maximally entangled state `vec(U V† / sqrt(d))` as a density matrix.
///
/// `u` and `v` must be unitary `d x d` rotations; all Schmidt coefficients
/// of the result equal `1/sqrt(d)`.
pub fn max_entangled(d: usize, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<BipartiteState> {
    for m in [u, v] {
        if !m.is_square() || m.rows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.rows(),
            });
        }
        let residual = m.unitarity_residual();
        if residual > Tolerances::default().unitarity {
            return Err(Error::NotUnitary { residual });
        }
    }
    // scale the projector by 1/d rather than the vector by 1/sqrt(d):
    // squaring sqrt(d) would cost the identity case its exact entries
    let psi = vectorize(&u.mul(&v.adjoint()));
    let rho = ComplexMatrix::from_outer(&psi).scale_re(1.0 / d as f64);
    BipartiteState::new(d, d, rho)
}
