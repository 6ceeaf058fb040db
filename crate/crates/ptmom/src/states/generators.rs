//! Random-state generators behind a common trait, registered by name.
//!
//! Each generation strategy (Bell fixture, Haar pure, Ginibre mixed,
//! maximally entangled with random local rotations, separable mixture) is a
//! [`StateGenerator`] looked up at runtime by its registry name, which is
//! also the name the command line accepts. All strategies draw from a
//! ChaCha12 stream seeded with the caller's seed, so output is reproducible
//! bit for bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use super::{max_entangled, BipartiteState};
use crate::numkit::ComplexMatrix;
use crate::{Error, Result};

/// Parameters common to every generation strategy.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorRequest {
    pub dim_a: usize,
    pub dim_b: usize,
    /// Number of Ginibre columns or mixture terms; must be 1 for pure kinds.
    pub rank: usize,
    pub seed: u64,
}

impl GeneratorRequest {
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    fn require_square(&self, name: &str) -> Result<()> {
        if self.dim_a != self.dim_b {
            return Err(Error::IncompatibleDimensions(
                self.dim_a, self.dim_b, self.dim_b, self.dim_b,
            ));
        }
        let _ = name;
        Ok(())
    }

    fn require_rank(&self, lo: usize, hi: usize) -> Result<()> {
        if self.rank < lo || self.rank > hi {
            return Err(Error::InvalidRank {
                rank: self.rank,
                dim_a: self.dim_a,
                dim_b: self.dim_b,
            });
        }
        Ok(())
    }
}

/// A named state-generation strategy.
pub trait StateGenerator: Sync {
    /// Registry name; doubles as the CLI `--kind` value.
    fn name(&self) -> &'static str;
    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState>;
}

struct BellFixture;
struct HaarPure;
struct GinibreMixed;
struct MaxEntangled;
struct SeparableMixture;

impl StateGenerator for BellFixture {
    fn name(&self) -> &'static str {
        "bell"
    }

    /// The seed is accepted but unused: the Bell projector is a fixture.
    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState> {
        req.require_square(self.name())?;
        if req.dim_a != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: req.dim_a,
            });
        }
        req.require_rank(1, 1)?;
        max_entangled(2, &ComplexMatrix::identity(2), &ComplexMatrix::identity(2))
    }
}

impl StateGenerator for HaarPure {
    fn name(&self) -> &'static str {
        "haar-pure"
    }

    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState> {
        req.require_rank(1, 1)?;
        let mut rng = ChaCha12Rng::seed_from_u64(req.seed);
        let d = req.dim();
        let u = haar_unitary_with(d, &mut rng);
        let psi = u.column(0);
        BipartiteState::from_pure(req.dim_a, req.dim_b, &psi)
    }
}

impl StateGenerator for GinibreMixed {
    fn name(&self) -> &'static str {
        "ginibre"
    }

    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState> {
        req.require_rank(1, req.dim())?;
        let mut rng = ChaCha12Rng::seed_from_u64(req.seed);
        let d = req.dim();
        let g = complex_gaussian(d, req.rank, &mut rng);
        let gg = g.mul(&g.adjoint());
        let trace = gg.trace().re;
        BipartiteState::new(req.dim_a, req.dim_b, gg.scale_re(1.0 / trace))
    }
}

impl StateGenerator for MaxEntangled {
    fn name(&self) -> &'static str {
        "max-entangled"
    }

    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState> {
        req.require_square(self.name())?;
        req.require_rank(1, 1)?;
        let mut rng = ChaCha12Rng::seed_from_u64(req.seed);
        let u = haar_unitary_with(req.dim_a, &mut rng);
        let v = haar_unitary_with(req.dim_a, &mut rng);
        max_entangled(req.dim_a, &u, &v)
    }
}

impl StateGenerator for SeparableMixture {
    fn name(&self) -> &'static str {
        "separable"
    }

    /// Uniform mixture of `rank` random product pure states.
    fn generate(&self, req: &GeneratorRequest) -> Result<BipartiteState> {
        req.require_rank(1, req.dim())?;
        let mut rng = ChaCha12Rng::seed_from_u64(req.seed);
        let d = req.dim();
        let mut rho = ComplexMatrix::zeros(d, d);
        let weight = 1.0 / req.rank as f64;
        for _ in 0..req.rank {
            let a = haar_vector(req.dim_a, &mut rng);
            let b = haar_vector(req.dim_b, &mut rng);
            let mut product = Vec::with_capacity(d);
            for ai in &a {
                for bj in &b {
                    product.push(ai * bj);
                }
            }
            rho = rho.add(&ComplexMatrix::from_outer(&product).scale_re(weight));
        }
        BipartiteState::new(req.dim_a, req.dim_b, rho)
    }
}

static GENERATORS: &[&dyn StateGenerator] = &[
    &BellFixture,
    &HaarPure,
    &GinibreMixed,
    &MaxEntangled,
    &SeparableMixture,
];

/// Look a strategy up by its registry name.
pub fn lookup_generator(name: &str) -> Option<&'static dyn StateGenerator> {
    GENERATORS.iter().copied().find(|g| g.name() == name)
}

/// All registered strategy names, in registration order.
pub fn generator_names() -> Vec<&'static str> {
    GENERATORS.iter().map(|g| g.name()).collect()
}

/// The random-state kinds exposed programmatically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    HaarPure,
    GinibreMixed,
    MaxEntangled,
    SeparableMixture,
}

impl StateKind {
    pub fn registry_name(self) -> &'static str {
        match self {
            StateKind::HaarPure => "haar-pure",
            StateKind::GinibreMixed => "ginibre",
            StateKind::MaxEntangled => "max-entangled",
            StateKind::SeparableMixture => "separable",
        }
    }
}

/// Deterministic random state of the requested kind.
pub fn random_state(
    kind: StateKind,
    dim_a: usize,
    dim_b: usize,
    rank: usize,
    seed: u64,
) -> Result<BipartiteState> {
    let generator =
        lookup_generator(kind.registry_name()).expect("every StateKind has a registered generator");
    generator.generate(&GeneratorRequest {
        dim_a,
        dim_b,
        rank,
        seed,
    })
}

/// Haar-distributed `d x d` unitary from a fresh seeded stream.
pub fn haar_unitary(d: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_with(d, &mut ChaCha12Rng::seed_from_u64(seed))
}

/// Haar unitary: modified Gram-Schmidt of a complex Ginibre matrix.
///
/// Gram-Schmidt is the QR factorization with a positive-real diagonal, which
/// is exactly the phase convention that makes the Q factor Haar-distributed.
pub(crate) fn haar_unitary_with(d: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let g = complex_gaussian(d, d, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..d).map(|j| g.column(j)).collect();
    for j in 0..d {
        for k in 0..j {
            let overlap: Complex64 = cols[k]
                .iter()
                .zip(&cols[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            // split borrow: copy the established column
            let prev = cols[k].clone();
            for (c, p) in cols[j].iter_mut().zip(&prev) {
                *c -= overlap * p;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut cols[j] {
            *c /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(d, d);
    for (j, col) in cols.iter().enumerate() {
        q.set_column(j, col);
    }
    q
}

/// Haar-random pure state on `C^d`: a normalized complex Gaussian vector.
fn haar_vector(d: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

fn complex_gaussian(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let scale = 1.0 / 2.0f64.sqrt();
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * scale,
            rng.sample::<f64, _>(StandardNormal) * scale,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::pt_spectrum;

    #[test]
    fn registry_knows_all_names() {
        let names = generator_names();
        assert_eq!(
            names,
            vec!["bell", "haar-pure", "ginibre", "max-entangled", "separable"]
        );
        for name in names {
            assert!(lookup_generator(name).is_some());
        }
        assert!(lookup_generator("thermal").is_none());
    }

    #[test]
    fn haar_pure_is_deterministic_bit_for_bit() {
        let a = random_state(StateKind::HaarPure, 2, 2, 1, 7).unwrap();
        let b = random_state(StateKind::HaarPure, 2, 2, 1, 7).unwrap();
        assert_eq!(a.rho().entries(), b.rho().entries());
        let c = random_state(StateKind::HaarPure, 2, 2, 1, 8).unwrap();
        assert_ne!(a.rho().entries(), c.rho().entries());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for d in 2..=6 {
            let u = haar_unitary(d, 42 + d as u64);
            assert!(u.unitarity_residual() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn ginibre_pt_respects_eigenvalue_interval() {
        for seed in 0..50 {
            let state = random_state(StateKind::GinibreMixed, 2, 2, 4, seed).unwrap();
            let spec = pt_spectrum(&state).unwrap();
            assert!(spec.min() >= -0.5 - 1e-10, "{}", spec.min());
            assert!(spec.max() <= 1.0 + 1e-10, "{}", spec.max());
        }
    }

    #[test]
    fn separable_mixture_has_positive_pt() {
        for seed in 0..50 {
            let state = random_state(StateKind::SeparableMixture, 2, 2, 4, seed).unwrap();
            let spec = pt_spectrum(&state).unwrap();
            assert!(spec.min() >= -1e-10, "{}", spec.min());
        }
    }

    #[test]
    fn max_entangled_kind_needs_square_dims() {
        assert!(random_state(StateKind::MaxEntangled, 2, 3, 1, 0).is_err());
    }

    #[test]
    fn rank_validation() {
        assert!(matches!(
            random_state(StateKind::GinibreMixed, 2, 2, 5, 0),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            random_state(StateKind::HaarPure, 2, 2, 2, 0),
            Err(Error::InvalidRank { .. })
        ));
        assert!(random_state(StateKind::GinibreMixed, 2, 2, 1, 0).is_ok());
    }

    #[test]
    fn ginibre_rank_controls_spectrum_rank() {
        let state = random_state(StateKind::GinibreMixed, 2, 2, 1, 3).unwrap();
        let (spec, _) = crate::numkit::hermitian_eigensystem(state.rho(), 1e-10).unwrap();
        // rank-1: a single unit eigenvalue
        assert!((spec.values()[0] - 1.0).abs() < 1e-12);
        assert!(spec.values()[1].abs() < 1e-12);
    }
}
