//! Entanglement-facing results: pure-state PT spectra in closed form,
//! negativity, the PPT check, the two-qubit maximal-entanglement
//! certificate, and the moment vectors of maximally entangled states in
//! general dimension.

use serde::Serialize;

use crate::moments::{
    characteristic_polynomial, moments_of_spectrum, moments_to_elementary, reconstruct_spectrum,
    PTMomentVector,
};
use crate::numkit::{real_poly_roots, Spectrum};
use crate::states::{pt_spectrum, BipartiteState, SchmidtForm};
use crate::{Error, Result, Tolerances};

/// Verdict of the two-qubit certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MaximallyEntangled,
    NotMaximallyEntangled,
}

/// Certification output: the verdict plus the evidence it rests on.
#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub verdict: Verdict,
    /// Smallest PT eigenvalue; -1/2 exactly for a maximally entangled pair.
    pub lambda_min: f64,
    /// Absolute sum of negative PT eigenvalues; 1/2 for the maximal case.
    pub negativity: f64,
    /// `max_k |p_k - (1, 1, 1/4, 1/4)_k|`.
    pub moment_residual: f64,
    #[serde(rename = "tolerance")]
    pub tolerance_used: f64,
    /// The measured moment vector `(p_1, ..., p_4)`.
    pub moments: Vec<f64>,
}

/// PT-moment vector a maximally entangled two-qubit state must produce.
pub const TWO_QUBIT_TARGET: [f64; 4] = [1.0, 1.0, 0.25, 0.25];

/// Closed-form PT spectrum of a pure state from its Schmidt coefficients:
/// the multiset `{sigma_i^2} U {+-sigma_i sigma_j : i < j}`, sorted.
pub fn pure_pt_spectrum(sf: &SchmidtForm) -> Spectrum {
    let s = &sf.sigmas;
    let mut values = Vec::with_capacity(s.len() * s.len());
    for (i, &si) in s.iter().enumerate() {
        values.push(si * si);
        for &sj in &s[i + 1..] {
            values.push(si * sj);
            values.push(-si * sj);
        }
    }
    Spectrum::from_unsorted(values)
}

/// Negativity `|sum of negative PT eigenvalues|`.
///
/// Eigenvalues count as negative below `-1e-10`, so rounding noise on
/// separable states does not register.
pub fn negativity(state: &BipartiteState) -> Result<f64> {
    Ok(negativity_of_spectrum(
        &pt_spectrum(state)?,
        Tolerances::default().negative_eigenvalue,
    ))
}

fn negativity_of_spectrum(spectrum: &Spectrum, threshold: f64) -> f64 {
    spectrum
        .values()
        .iter()
        .filter(|&&x| x < -threshold)
        .sum::<f64>()
        .abs()
}

/// Positive-partial-transpose check: `lambda_min(rho^PT) >= -tol`.
///
/// For 2x2 and 2x3 (or 3x2) systems a `true` here decides separability;
/// in higher dimension it is necessary only.
pub fn ppt_check(state: &BipartiteState, tol: f64) -> Result<bool> {
    Ok(pt_spectrum(state)?.min() >= -tol)
}

/// Two-qubit maximal-entanglement certificate.
///
/// The primary test is the moment condition
/// `max_k |p_k - (1, 1, 1/4, 1/4)_k| <= tol`; the report carries the
/// smallest PT eigenvalue and the negativity as corroborating evidence
/// (all three conditions hold or fail together).
pub fn certify_max_entangled_2q(state: &BipartiteState, tol: f64) -> Result<CertificationReport> {
    if (state.dim_a(), state.dim_b()) != (2, 2) {
        return Err(Error::WrongDimensions {
            dim_a: state.dim_a(),
            dim_b: state.dim_b(),
        });
    }
    let spectrum = pt_spectrum(state)?;
    let moments = moments_of_spectrum(&spectrum, 4);
    let moment_residual = moments
        .iter()
        .zip(TWO_QUBIT_TARGET)
        .map(|(p, t)| (p - t).abs())
        .fold(0.0, f64::max);
    let verdict = if moment_residual <= tol {
        Verdict::MaximallyEntangled
    } else {
        Verdict::NotMaximallyEntangled
    };
    Ok(CertificationReport {
        verdict,
        lambda_min: spectrum.min(),
        negativity: negativity_of_spectrum(&spectrum, Tolerances::default().negative_eigenvalue),
        moment_residual,
        tolerance_used: tol,
        moments,
    })
}

/// PT-moment vector of a maximally entangled state on `C^n (x) C^n`:
/// `p_k = ((n+1) + (n-1)(-1)^k) / (2 n^(k-1))`, `k = 1..=n^2`.
pub fn max_entangled_moment_vector(n: usize) -> PTMomentVector {
    assert!(n >= 2, "entanglement needs local dimension at least 2");
    let nf = n as f64;
    let values = (1..=n * n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            ((nf + 1.0) + (nf - 1.0) * sign) / (2.0 * nf.powi(k as i32 - 1))
        })
        .collect();
    PTMomentVector::new(values, n * n).expect("closed-form moments are always valid")
}

/// Smallest PT eigenvalue reconstructed from the maximally entangled moment
/// vector alone, running the full moments -> elementary -> polynomial ->
/// roots pipeline. Equals `-1/n` within reconstruction accuracy.
pub fn lambda_min_from_max_entangled_moments(n: usize) -> Result<f64> {
    let p = max_entangled_moment_vector(n);
    Ok(reconstruct_spectrum(&p)?.min())
}

/// The three smallest-PT-eigenvalues of a two-component mixture: the mixture
/// itself and both components.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MixtureLambdaMin {
    pub mixture: f64,
    pub component_a: f64,
    pub component_b: f64,
}

impl MixtureLambdaMin {
    /// Did the mixture's PT reach the extreme value -1/2?
    pub fn premise_holds(&self, tol: f64) -> bool {
        self.mixture <= -0.5 + tol
    }

    /// Extremality is inherited: if the mixture's PT bottoms out at -1/2,
    /// both components' PTs must as well. Vacuously true when the premise
    /// fails.
    pub fn property_holds(&self, premise_tol: f64, conclusion_tol: f64) -> bool {
        if !self.premise_holds(premise_tol) {
            return true;
        }
        (self.component_a + 0.5).abs() <= conclusion_tol
            && (self.component_b + 0.5).abs() <= conclusion_tol
    }
}

/// Form `t a + (1-t) b` and report the smallest PT eigenvalue of all three
/// states.
pub fn mixture_lambda_min(
    a: &BipartiteState,
    b: &BipartiteState,
    t: f64,
) -> Result<MixtureLambdaMin> {
    let mixture = a.mix(b, t)?;
    Ok(MixtureLambdaMin {
        mixture: pt_spectrum(&mixture)?.min(),
        component_a: pt_spectrum(a)?.min(),
        component_b: pt_spectrum(b)?.min(),
    })
}

/// Reconstruction check used by the self-test: minimum root of the
/// characteristic polynomial assembled from an explicit moment vector.
pub fn lambda_min_of_moments(p: &PTMomentVector) -> Result<f64> {
    let e = moments_to_elementary(p);
    let coeffs = characteristic_polynomial(&e, p.ambient_dim());
    let roots = real_poly_roots(&coeffs)?;
    roots
        .last()
        .copied()
        .ok_or_else(|| Error::InvalidMoments("empty moment vector".into()))
}
