//! PT-moment vectors, Newton's-identity conversions, characteristic
//! polynomials, and spectrum reconstruction from moment data.
//!
//! The moment/elementary-symmetric conversions run through the O(k^2)
//! Newton recurrence; the determinant formulas that express the same
//! relationship stay in the test suite as a cross-check.

use serde::Serialize;

use crate::numkit::{real_poly_roots, Spectrum};
use crate::states::{pt_spectrum, BipartiteState};
use crate::{Error, Result};

/// Ordered PT-moments `(p_1, ..., p_k)` of a state in ambient dimension `d`.
///
/// `p_1 = 1` always; `p_2` is the purity and must lie in `[1/d, 1]` up to
/// rounding. A vector may be partial (`k < d`); reconstruction requires the
/// full length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PTMomentVector {
    values: Vec<f64>,
    ambient_dim: usize,
}

impl PTMomentVector {
    pub fn new(values: Vec<f64>, ambient_dim: usize) -> Result<Self> {
        if values.is_empty() || values.len() > ambient_dim {
            return Err(Error::InvalidMoments(format!(
                "length {} must be in 1..={ambient_dim}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMoments("non-finite moment".into()));
        }
        if (values[0] - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidMoments(format!(
                "p_1 = {:.17} but the trace of a state is 1",
                values[0]
            )));
        }
        if values.len() >= 2 {
            let purity = values[1];
            let lo = 1.0 / ambient_dim as f64;
            if purity > 1.0 + 1e-10 || purity < lo - 1e-10 {
                return Err(Error::InvalidMoments(format!(
                    "p_2 = {purity:.17} outside the purity range [{lo:.17}, 1]"
                )));
            }
        }
        Ok(Self {
            values,
            ambient_dim,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Largest componentwise deviation from another vector of equal length.
    pub fn max_deviation(&self, other: &[f64]) -> f64 {
        assert_eq!(self.values.len(), other.len());
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Elementary symmetric polynomial values `(e_1, ..., e_k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElementarySymmetric {
    values: Vec<f64>,
}

impl ElementarySymmetric {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// PT-moments `p_k = Tr[(rho^PT)^k]` for `k = 1..=k_max`.
///
/// One eigendecomposition of the partial transpose yields every order as a
/// power sum, which accumulates less rounding than repeated matrix products.
pub fn pt_moments(state: &BipartiteState, k_max: usize) -> Result<PTMomentVector> {
    let d = state.dim();
    assert!(
        (1..=d).contains(&k_max),
        "moment order {k_max} must be in 1..={d}"
    );
    let spectrum = pt_spectrum(state)?;
    PTMomentVector::new(moments_of_spectrum(&spectrum, k_max), d)
}

/// Power sums `p_k = sum_i x_i^k` of a spectrum for `k = 1..=k_max`.
pub fn moments_of_spectrum(spectrum: &Spectrum, k_max: usize) -> Vec<f64> {
    let mut powers: Vec<f64> = vec![1.0; spectrum.dimension()];
    let mut out = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        for (p, &x) in powers.iter_mut().zip(spectrum.values()) {
            *p *= x;
        }
        out.push(powers.iter().sum());
    }
    out
}

/// Newton's identities, moments to elementary symmetric polynomials:
/// `k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i` with `e_0 = 1`.
pub fn moments_to_elementary(p: &PTMomentVector) -> ElementarySymmetric {
    ElementarySymmetric::new(power_sums_to_elementary(p.values()))
}

/// Newton's identities, elementary symmetric polynomials to moments:
/// `p_k = sum_{i=1..k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k`.
pub fn elementary_to_moments(
    e: &ElementarySymmetric,
    ambient_dim: usize,
) -> Result<PTMomentVector> {
    PTMomentVector::new(elementary_to_power_sums(e.values()), ambient_dim)
}

fn power_sums_to_elementary(p: &[f64]) -> Vec<f64> {
    let k = p.len();
    let mut e = Vec::with_capacity(k + 1);
    e.push(1.0); // e_0
    for m in 1..=k {
        let mut acc = 0.0;
        for i in 1..=m {
            let term = e[m - i] * p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / m as f64);
    }
    e.remove(0);
    e
}

fn elementary_to_power_sums(e: &[f64]) -> Vec<f64> {
    let k = e.len();
    let mut p: Vec<f64> = Vec::with_capacity(k);
    for m in 1..=k {
        let mut acc = 0.0;
        for i in 1..m {
            let term = e[i - 1] * p[m - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = m as f64 * e[m - 1];
        if m % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    p
}

/// Monic characteristic-polynomial coefficients, highest degree first:
/// `(1, -e_1, +e_2, ..., (-1)^d e_d)`.
pub fn characteristic_polynomial(e: &ElementarySymmetric, d: usize) -> Vec<f64> {
    assert_eq!(e.len(), d, "need all {d} elementary values");
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(1.0);
    for (i, &ek) in e.values().iter().enumerate() {
        coeffs.push(if i % 2 == 0 { -ek } else { ek });
    }
    coeffs
}

/// Reconstruct the PT spectrum from a full moment vector.
///
/// Runs moments -> elementary symmetric -> characteristic polynomial ->
/// roots; a moment vector no real spectrum can produce surfaces as
/// [`Error::ComplexRootsDetected`].
pub fn reconstruct_spectrum(p: &PTMomentVector) -> Result<Spectrum> {
    let d = p.ambient_dim();
    if p.len() != d {
        return Err(Error::PartialMomentVector {
            len: p.len(),
            dim: d,
        });
    }
    let e = moments_to_elementary(p);
    let coeffs = characteristic_polynomial(&e, d);
    let roots = real_poly_roots(&coeffs)?;
    Ok(Spectrum::from_unsorted(roots))
}

/// Interval/negativity-count report for a PT spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct RanaReport {
    /// Every eigenvalue within `[-1/2 - tol, 1 + tol]`.
    pub in_interval: bool,
    /// Count of eigenvalues below `-tol`.
    pub negative_count: usize,
    /// Cap on the negative count: `(dim_a - 1)(dim_b - 1)`.
    pub bound: usize,
}

impl RanaReport {
    pub fn satisfied(&self) -> bool {
        self.in_interval && self.negative_count <= self.bound
    }
}

/// Check a PT spectrum against the eigenvalue interval `[-1/2, 1]` and the
/// `(m-1)(n-1)` negative-count bound.
pub fn check_rana(spectrum: &Spectrum, dim_a: usize, dim_b: usize, tol: f64) -> RanaReport {
    assert_eq!(spectrum.dimension(), dim_a * dim_b);
    let in_interval = spectrum
        .values()
        .iter()
        .all(|&x| x >= -0.5 - tol && x <= 1.0 + tol);
    let negative_count = spectrum.values().iter().filter(|&&x| x < -tol).count();
    RanaReport {
        in_interval,
        negative_count,
        bound: (dim_a - 1) * (dim_b - 1),
    }
}
