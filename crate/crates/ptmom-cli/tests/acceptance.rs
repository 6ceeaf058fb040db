//! Acceptance suite: one test per criterion, printed as a pass/fail line.
//!
//! Run with `cargo test -p ptmom-cli --test acceptance -- --nocapture` to see
//! every line; a failing criterion panics with the measured numbers.

use ptmom::certify::{
    certify_max_entangled_2q, lambda_min_from_max_entangled_moments, pure_pt_spectrum, Verdict,
};
use ptmom::moments::{
    check_rana, moments_to_elementary, pt_moments, reconstruct_spectrum, PTMomentVector,
};
use ptmom::numkit::{hermitian_eigensystem, ComplexMatrix, Spectrum};
use ptmom::states::{max_entangled, pt_spectrum, random_state, schmidt, BipartiteState, StateKind};
use ptmom::Complex64;

fn pass(criterion: &str) {
    println!("criterion {criterion}: PASS");
}

fn bell() -> BipartiteState {
    let id = ComplexMatrix::identity(2);
    max_entangled(2, &id, &id).unwrap()
}

/// State vector of a pure-state density matrix.
fn pure_vector(state: &BipartiteState) -> Vec<Complex64> {
    let (spec, v) = hermitian_eigensystem(state.rho(), 1e-10).unwrap();
    assert!((spec.values()[0] - 1.0).abs() < 1e-10);
    v.column(0)
}

#[test]
fn criterion_01_bell_fixture() {
    let state = bell();
    let spec = pt_spectrum(&state).unwrap();
    let expect = [0.5, 0.5, 0.5, -0.5];
    let spec_dev = spec
        .values()
        .iter()
        .zip(expect)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    assert!(spec_dev <= 1e-12, "PT spectrum deviation {spec_dev}");

    let p = pt_moments(&state, 4).unwrap();
    let moment_dev = p.max_deviation(&[1.0, 1.0, 0.25, 0.25]);
    assert!(moment_dev <= 1e-12, "moment deviation {moment_dev}");
    pass("01 bell fixture (spectrum & moments @ 1e-12)");
}

#[test]
fn criterion_02_theorem_forward() {
    for seed in 0..1000u64 {
        let state = random_state(StateKind::MaxEntangled, 2, 2, 1, seed).unwrap();
        let report = certify_max_entangled_2q(&state, 1e-8).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::MaximallyEntangled,
            "seed {seed} failed to certify"
        );
        assert!(
            report.moment_residual <= 1e-9,
            "seed {seed}: residual {}",
            report.moment_residual
        );
        assert!(
            (report.lambda_min + 0.5).abs() <= 1e-9,
            "seed {seed}: lambda_min {}",
            report.lambda_min
        );
        assert!(
            (report.negativity - 0.5).abs() <= 1e-9,
            "seed {seed}: negativity {}",
            report.negativity
        );
    }
    pass("02 theorem forward (1000 rotated maximally entangled states)");
}

#[test]
fn criterion_03_theorem_converse_sampled() {
    // Ginibre mixed states never certify
    for seed in 0..1000u64 {
        let state = random_state(StateKind::GinibreMixed, 2, 2, 4, seed).unwrap();
        let report = certify_max_entangled_2q(&state, 1e-8).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::NotMaximallyEntangled,
            "ginibre seed {seed} falsely certified (residual {})",
            report.moment_residual
        );
    }
    // pure states clearly below maximal entanglement never certify
    let mut checked = 0u32;
    let mut seed = 0u64;
    while checked < 1000 {
        let state = random_state(StateKind::HaarPure, 2, 2, 1, seed).unwrap();
        seed += 1;
        let psi = pure_vector(&state);
        let sf = schmidt(&psi, 2, 2).unwrap();
        if sf.min_coefficient() > 0.69 {
            continue;
        }
        checked += 1;
        let report = certify_max_entangled_2q(&state, 1e-8).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::NotMaximallyEntangled,
            "pure seed {} falsely certified (min schmidt {})",
            seed - 1,
            sf.min_coefficient()
        );
    }
    pass("03 theorem converse (1000 ginibre + 1000 non-maximal pure, zero false certifications)");
}

#[test]
fn criterion_04_newton_machinery() {
    let p = PTMomentVector::new(vec![1.0, 1.0, 0.25, 0.25], 4).unwrap();
    let e = moments_to_elementary(&p);
    let expect = [1.0, 0.0, -0.25, -0.0625];
    for (got, want) in e.values().iter().zip(expect) {
        assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
    }

    let nine: Vec<f64> = (1..=9)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (4.0 + 2.0 * sign) / (2.0 * 3.0f64.powi(k - 1))
        })
        .collect();
    let p9 = PTMomentVector::new(nine, 9).unwrap();
    let e9 = moments_to_elementary(&p9);
    let expect9 = [
        1.0,
        0.0,
        -8.0 / 27.0,
        -2.0 / 27.0,
        2.0 / 81.0,
        8.0 / 729.0,
        0.0,
        -1.0 / 2187.0,
        -1.0 / 19683.0,
    ];
    for (k, (got, want)) in e9.values().iter().zip(expect9).enumerate() {
        assert!((got - want).abs() <= 1e-12, "e_{}: {got} vs {want}", k + 1);
    }

    // p -> e -> p round trip on 1000 random spectra, d <= 9
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(404);
    for trial in 0..1000 {
        let d = rng.gen_range(2..=9usize);
        let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let spec = Spectrum::from_unsorted(raw.iter().map(|v| v / total).collect());
        let p = PTMomentVector::new(ptmom::moments::moments_of_spectrum(&spec, d), d).unwrap();
        let back = ptmom::moments::elementary_to_moments(&moments_to_elementary(&p), d).unwrap();
        let dev = back.max_deviation(p.values());
        assert!(dev <= 1e-9, "trial {trial}: round-trip deviation {dev}");
    }
    pass("04 newton machinery (fixtures @ 1e-12, 1000 round trips @ 1e-9)");
}

#[test]
fn criterion_05_reconstruction() {
    let p = PTMomentVector::new(vec![1.0, 1.0, 0.25, 0.25], 4).unwrap();
    let spec = reconstruct_spectrum(&p).unwrap();
    let expect = [0.5, 0.5, 0.5, -0.5];
    for (got, want) in spec.values().iter().zip(expect) {
        assert!((got - want).abs() <= 1e-7, "{got} vs {want}");
    }

    let nine: Vec<f64> = (1..=9)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (4.0 + 2.0 * sign) / (2.0 * 3.0f64.powi(k - 1))
        })
        .collect();
    let spec9 = reconstruct_spectrum(&PTMomentVector::new(nine, 9).unwrap()).unwrap();
    for &x in &spec9.values()[..6] {
        assert!((x - 1.0 / 3.0).abs() <= 1e-6, "{x}");
    }
    for &x in &spec9.values()[6..] {
        assert!((x + 1.0 / 3.0).abs() <= 1e-6, "{x}");
    }

    for n in 2..=4usize {
        let lambda = lambda_min_from_max_entangled_moments(n).unwrap();
        assert!(
            (lambda + 1.0 / n as f64).abs() <= 1e-6,
            "n = {n}: lambda_min {lambda}"
        );
    }
    pass("05 reconstruction (bell @ 1e-7, two-qutrit @ 1e-6, lambda_min n=2..4 @ 1e-6)");
}

#[test]
fn criterion_06_rana_property() {
    let kinds = [
        StateKind::GinibreMixed,
        StateKind::HaarPure,
        StateKind::SeparableMixture,
    ];
    for (m, n) in (2..=4usize).flat_map(|m| (2..=4usize).map(move |n| (m, n))) {
        for trial in 0..1000u64 {
            let kind = kinds[(trial % 3) as usize];
            let d = m * n;
            let rank = match kind {
                StateKind::HaarPure => 1,
                _ => 1 + (trial as usize % d),
            };
            let seed = trial * 31 + (m * 7 + n) as u64;
            let state = random_state(kind, m, n, rank, seed).unwrap();
            let spec = pt_spectrum(&state).unwrap();
            for &x in spec.values() {
                assert!(
                    (-0.5 - 1e-8..=1.0 + 1e-8).contains(&x),
                    "({m},{n}) trial {trial}: eigenvalue {x} outside [-1/2, 1]"
                );
            }
            let report = check_rana(&spec, m, n, 1e-8);
            assert!(
                report.negative_count <= report.bound,
                "({m},{n}) trial {trial}: {} negatives exceed bound {}",
                report.negative_count,
                report.bound
            );
        }
    }
    pass("06 rana property (1000 states per (m,n) in {2,3,4}^2)");
}

#[test]
fn criterion_07_pure_state_spectrum_equivalence() {
    let mut count = 0u64;
    let mut seed = 0u64;
    while count < 500 {
        let d = 2 + (count as usize % 5); // d in {2, ..., 6}
        let state = random_state(StateKind::HaarPure, d, d, 1, seed).unwrap();
        seed += 1;
        count += 1;
        let psi = pure_vector(&state);
        let sf = schmidt(&psi, d, d).unwrap();
        let closed_form = pure_pt_spectrum(&sf);
        let direct = pt_spectrum(&state).unwrap();
        let dev = closed_form.max_deviation(&direct);
        assert!(
            dev <= 1e-8,
            "d = {d}, seed = {}: spectra deviate by {dev}",
            seed - 1
        );
    }
    pass("07 pure-state spectrum equivalence (500 haar states, closed form vs eigensolver @ 1e-8)");
}

#[test]
fn criterion_08_ppt_negativity() {
    for seed in 0..500u64 {
        let rank = 1 + (seed as usize % 4);
        let state = random_state(StateKind::SeparableMixture, 2, 2, rank, seed).unwrap();
        assert!(
            ptmom::certify::ppt_check(&state, 1e-10).unwrap(),
            "separable seed {seed} failed PPT"
        );
        let neg = ptmom::certify::negativity(&state).unwrap();
        assert!(neg <= 1e-9, "separable seed {seed}: negativity {neg}");
    }
    let bell = bell();
    assert!(!ptmom::certify::ppt_check(&bell, 1e-10).unwrap());
    let neg = ptmom::certify::negativity(&bell).unwrap();
    assert!((neg - 0.5).abs() <= 1e-9, "bell negativity {neg}");
    pass("08 ppt/negativity (500 separable states, bell projector)");
}

#[test]
fn criterion_09_mixture_property() {
    let mut vacuous = 0u32;
    let mut non_vacuous = 0u32;

    // the degenerate bell-bell mixture must be a non-vacuous pass
    let b = bell();
    for t in 1..=9 {
        let result = ptmom::certify::mixture_lambda_min(&b, &b, t as f64 / 10.0).unwrap();
        assert!(result.premise_holds(1e-7));
        assert!(result.property_holds(1e-7, 1e-6));
        non_vacuous += 1;
    }

    for pair in 0..200u64 {
        let kind_a = [
            StateKind::GinibreMixed,
            StateKind::MaxEntangled,
            StateKind::HaarPure,
        ][(pair % 3) as usize];
        let kind_b = [
            StateKind::GinibreMixed,
            StateKind::SeparableMixture,
            StateKind::MaxEntangled,
        ][((pair / 3) % 3) as usize];
        let rank_a = if kind_a == StateKind::GinibreMixed {
            1 + (pair as usize % 4)
        } else {
            1
        };
        let rank_b = match kind_b {
            StateKind::GinibreMixed | StateKind::SeparableMixture => 1 + (pair as usize % 4),
            _ => 1,
        };
        let a = random_state(kind_a, 2, 2, rank_a, 1000 + pair).unwrap();
        // every tenth pair mixes a rotated maximally entangled state with
        // itself, the one family where the premise genuinely fires
        let c = if pair % 10 == 9 {
            let twin = random_state(StateKind::MaxEntangled, 2, 2, 1, 3000 + pair).unwrap();
            for t in 1..=9 {
                let result =
                    ptmom::certify::mixture_lambda_min(&twin, &twin, t as f64 / 10.0).unwrap();
                assert!(result.premise_holds(1e-7), "identical twins must hit -1/2");
                assert!(result.property_holds(1e-7, 1e-6));
                non_vacuous += 1;
            }
            twin
        } else {
            random_state(kind_b, 2, 2, rank_b, 2000 + pair).unwrap()
        };
        for t in 1..=9 {
            let result = ptmom::certify::mixture_lambda_min(&a, &c, t as f64 / 10.0).unwrap();
            if result.premise_holds(1e-7) {
                non_vacuous += 1;
                assert!(
                    result.property_holds(1e-7, 1e-6),
                    "pair {pair}, t = 0.{t}: mixture lambda {} but components ({}, {})",
                    result.mixture,
                    result.component_a,
                    result.component_b
                );
            } else {
                vacuous += 1;
                assert!(result.property_holds(1e-7, 1e-6));
            }
        }
    }
    println!("  mixture property: {non_vacuous} non-vacuous, {vacuous} vacuous checks");
    assert!(non_vacuous >= 9, "the degenerate case must be non-vacuous");
    pass("09 mixture extremality (200 pairs x 9 weights, vacuous counted)");
}

#[test]
fn criterion_10_cli_round_trip() {
    use std::process::Command;
    let exe = env!("CARGO_BIN_EXE_ptmom");
    let dir = std::env::temp_dir().join("ptmom-acceptance");
    std::fs::create_dir_all(&dir).unwrap();

    let selftest = Command::new(exe).arg("selftest").output().unwrap();
    assert!(
        selftest.status.success(),
        "selftest exited {:?}: {}",
        selftest.status.code(),
        String::from_utf8_lossy(&selftest.stdout)
    );

    let mut reports = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("bell-run{run}.json"));
        let gen = Command::new(exe)
            .args([
                "generate",
                "--kind",
                "max-entangled",
                "--d",
                "2",
                "--seed",
                "1",
                "-o",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(gen.status.success(), "generate run {run} failed");
        let certify = Command::new(exe)
            .args(["certify", "-i", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(certify.status.code(), Some(0), "certify run {run} verdict");
        reports.push((std::fs::read(&path).unwrap(), certify.stdout));
    }
    assert_eq!(
        reports[0].0, reports[1].0,
        "state files must be byte-identical"
    );
    assert_eq!(reports[0].1, reports[1].1, "reports must be byte-identical");
    pass("10 cli (selftest exit 0; generate->certify byte-identical across runs)");
}
