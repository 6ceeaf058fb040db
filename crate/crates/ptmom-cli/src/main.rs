//! `ptmom`: generate bipartite states, compute PT-moments, reconstruct PT
//! spectra from moment vectors, and certify two-qubit maximal entanglement.
//!
//! Exit codes separate scientific verdicts from operational failures so
//! shell pipelines can branch on entanglement:
//!
//! - 0: success (for `certify`: maximally entangled; for `check-rana`:
//!   bounds hold)
//! - 1: bad usage (unknown flags, unparsable moment lists, failed selftest)
//! - 2: malformed or invalid state file (non-Hermitian, non-positive,
//!   wrong trace, wrong partition for the command)
//! - 3: `certify` verdict: not maximally entangled
//! - 4: `check-rana`: eigenvalue interval or negativity-count bound violated
//!
//! All reports are single JSON documents on standard output with floats at
//! 17 significant digits; diagnostics go to standard error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ptmom::certify::{
    certify_max_entangled_2q, lambda_min_from_max_entangled_moments, max_entangled_moment_vector,
    negativity, CertificationReport, Verdict,
};
use ptmom::moments::{
    characteristic_polynomial, check_rana, moments_to_elementary, pt_moments, reconstruct_spectrum,
    PTMomentVector,
};
use ptmom::numkit::{hermitian_eigensystem, trace_power, ComplexMatrix};
use ptmom::states::{
    generator_names, lookup_generator, max_entangled, partial_transpose, pt_spectrum,
    read_state_file, state_to_json, swap_operator, to_json_17, vectorize, BipartiteState,
    GeneratorRequest,
};
use ptmom::{Complex64, Error, Tolerances};

#[derive(Parser)]
#[command(
    name = "ptmom",
    about = "Partial-transpose moments and entanglement certification for bipartite states",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a state and write it as a JSON state file.
    Generate {
        /// Generation strategy: bell | haar-pure | ginibre | max-entangled | separable
        #[arg(long)]
        kind: String,
        /// Symmetric local dimension (sets both subsystems).
        #[arg(long, conflicts_with_all = ["da", "db"])]
        d: Option<usize>,
        /// Dimension of subsystem A.
        #[arg(long, requires = "db")]
        da: Option<usize>,
        /// Dimension of subsystem B.
        #[arg(long, requires = "da")]
        db: Option<usize>,
        /// Ginibre columns / mixture terms (defaults to 1 for pure kinds,
        /// the total dimension otherwise).
        #[arg(long)]
        rank: Option<usize>,
        /// RNG seed; identical seeds reproduce files bit for bit.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the PT-moment vector of a state file as a JSON array.
    Moments {
        #[arg(short, long)]
        input: PathBuf,
        /// Highest moment order (defaults to the total dimension).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Reconstruct the PT spectrum from a full moment vector.
    Reconstruct {
        /// Comma-separated decimals p_1,...,p_d.
        #[arg(long)]
        moments: String,
    },
    /// Certify maximal entanglement of a two-qubit state file.
    Certify {
        #[arg(short, long)]
        input: PathBuf,
        /// Moment-residual threshold for the verdict.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Check the PT spectrum against the [-1/2, 1] interval and the
    /// negative-eigenvalue count bound.
    CheckRana {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the embedded fixtures and report pass/fail.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("ptmom: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn state_file(err: Error) -> Self {
        Self {
            code: 2,
            message: err.to_string(),
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Generate {
            kind,
            d,
            da,
            db,
            rank,
            seed,
            output,
        } => generate(&kind, d, da, db, rank, seed, output),
        Command::Moments { input, k } => moments(&input, k),
        Command::Reconstruct { moments } => reconstruct(&moments),
        Command::Certify { input, tol } => certify(&input, tol),
        Command::CheckRana { input, tol } => rana(&input, tol),
        Command::Selftest => selftest(),
    }
}

fn generate(
    kind: &str,
    d: Option<usize>,
    da: Option<usize>,
    db: Option<usize>,
    rank: Option<usize>,
    seed: u64,
    output: Option<PathBuf>,
) -> Result<u8, Failure> {
    let generator = lookup_generator(kind).ok_or_else(|| {
        Failure::usage(format!(
            "unknown --kind `{kind}`; known kinds: {}",
            generator_names().join(", ")
        ))
    })?;
    let (dim_a, dim_b) = match (d, da, db) {
        (Some(n), None, None) => (n, n),
        (None, Some(a), Some(b)) => (a, b),
        (None, None, None) => (2, 2),
        _ => return Err(Failure::usage("give either --d or both --da and --db")),
    };
    if dim_a == 0 || dim_b == 0 {
        return Err(Failure::usage("subsystem dimensions must be positive"));
    }
    let rank = rank.unwrap_or(match kind {
        "ginibre" | "separable" => dim_a * dim_b,
        _ => 1,
    });
    let state = generator
        .generate(&GeneratorRequest {
            dim_a,
            dim_b,
            rank,
            seed,
        })
        .map_err(|e| Failure::usage(e.to_string()))?;
    let text = state_to_json(&state);
    match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn load_state(path: &PathBuf) -> Result<BipartiteState, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    read_state_file(&text).map_err(Failure::state_file)
}

fn moments(input: &PathBuf, k: Option<usize>) -> Result<u8, Failure> {
    let state = load_state(input)?;
    let k = k.unwrap_or(state.dim());
    if k == 0 || k > state.dim() {
        return Err(Failure::usage(format!(
            "--k must be in 1..={}",
            state.dim()
        )));
    }
    let p = pt_moments(&state, k).map_err(Failure::state_file)?;
    println!("{}", to_json_17(&p.values()));
    Ok(0)
}

#[derive(Serialize)]
struct ReconstructionOutput {
    spectrum: Vec<f64>,
    elementary_symmetric: Vec<f64>,
    characteristic_polynomial: Vec<f64>,
}

fn reconstruct(csv: &str) -> Result<u8, Failure> {
    let values: Vec<f64> = csv
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("--moments must be comma-separated decimals: {e}")))?;
    let dim = values.len();
    let p = PTMomentVector::new(values, dim).map_err(|e| Failure::usage(e.to_string()))?;
    let e = moments_to_elementary(&p);
    let coeffs = characteristic_polynomial(&e, dim);
    let spectrum = reconstruct_spectrum(&p).map_err(|err| Failure::usage(err.to_string()))?;
    let out = ReconstructionOutput {
        spectrum: spectrum.values().to_vec(),
        elementary_symmetric: e.values().to_vec(),
        characteristic_polynomial: coeffs,
    };
    println!("{}", to_json_17(&out));
    Ok(0)
}

fn certify(input: &PathBuf, tol: f64) -> Result<u8, Failure> {
    let state = load_state(input)?;
    let report = certify_max_entangled_2q(&state, tol).map_err(Failure::state_file)?;
    println!("{}", to_json_17(&report));
    Ok(match report.verdict {
        Verdict::MaximallyEntangled => 0,
        Verdict::NotMaximallyEntangled => 3,
    })
}

#[derive(Serialize)]
struct RanaOutput {
    in_interval: bool,
    negative_count: usize,
    bound: usize,
    satisfied: bool,
    spectrum: Vec<f64>,
}

fn rana(input: &PathBuf, tol: f64) -> Result<u8, Failure> {
    let state = load_state(input)?;
    let spectrum = pt_spectrum(&state).map_err(Failure::state_file)?;
    let report = check_rana(&spectrum, state.dim_a(), state.dim_b(), tol);
    let satisfied = report.satisfied();
    let out = RanaOutput {
        in_interval: report.in_interval,
        negative_count: report.negative_count,
        bound: report.bound,
        satisfied,
        spectrum: spectrum.values().to_vec(),
    };
    println!("{}", to_json_17(&out));
    Ok(if satisfied { 0 } else { 4 })
}

// --- selftest ---------------------------------------------------------------

#[derive(Serialize)]
struct SelftestCheck {
    name: &'static str,
    pass: bool,
}

#[derive(Serialize)]
struct SelftestOutput {
    checks: Vec<SelftestCheck>,
    passed: usize,
    failed: usize,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn all_close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| close(*g, *w, tol))
}

/// Embedded fixtures: every number here is pinned by the library test suite;
/// the selftest re-runs them in release form so a deployed binary can vouch
/// for itself.
fn selftest() -> Result<u8, Failure> {
    let mut checks: Vec<SelftestCheck> = Vec::new();
    let mut record = |name: &'static str, pass: bool| checks.push(SelftestCheck { name, pass });

    let id2 = ComplexMatrix::identity(2);
    let id3 = ComplexMatrix::identity(3);
    let bell = max_entangled(2, &id2, &id2).expect("bell fixture");
    let bell_expect = [0.5, 0.5, 0.5, -0.5];

    let spec = pt_spectrum(&bell).expect("bell pt");
    record(
        "bell_pt_spectrum",
        all_close(spec.values(), &bell_expect, 1e-12),
    );

    let p = pt_moments(&bell, 4).expect("bell moments");
    record(
        "bell_pt_moments",
        all_close(p.values(), &[1.0, 1.0, 0.25, 0.25], 1e-12),
    );

    let e = moments_to_elementary(&p);
    record(
        "bell_elementary_symmetric",
        all_close(e.values(), &[1.0, 0.0, -0.25, -0.0625], 1e-12),
    );

    record(
        "bell_characteristic_polynomial",
        all_close(
            &characteristic_polynomial(&e, 4),
            &[1.0, -1.0, 0.0, 0.25, -0.0625],
            1e-15,
        ),
    );

    match reconstruct_spectrum(&p) {
        Ok(spec) => record(
            "bell_reconstruction",
            all_close(spec.values(), &bell_expect, 1e-7),
        ),
        Err(_) => record("bell_reconstruction", false),
    }

    let pt = partial_transpose(&bell);
    record(
        "bell_trace_powers",
        close(trace_power(&pt, 3, 1e-10).unwrap_or(f64::NAN), 0.25, 1e-12),
    );

    let mixed = BipartiteState::new(2, 2, ComplexMatrix::identity(4).scale_re(0.25))
        .expect("maximally mixed fixture");
    let p_mixed = pt_moments(&mixed, 4).expect("mixed moments");
    record(
        "maximally_mixed_moments",
        all_close(p_mixed.values(), &[1.0, 0.25, 0.0625, 0.015625], 1e-14),
    );

    let qutrit = max_entangled(3, &id3, &id3).expect("two-qutrit fixture");
    let p9 = pt_moments(&qutrit, 9).expect("qutrit moments");
    record(
        "two_qutrit_moments",
        all_close(p9.values(), max_entangled_moment_vector(3).values(), 1e-12),
    );

    let e9 = moments_to_elementary(&p9);
    record(
        "two_qutrit_elementary_symmetric",
        all_close(
            e9.values(),
            &[
                1.0,
                0.0,
                -8.0 / 27.0,
                -2.0 / 27.0,
                2.0 / 81.0,
                8.0 / 729.0,
                0.0,
                -1.0 / 2187.0,
                -1.0 / 19683.0,
            ],
            1e-12,
        ),
    );

    match reconstruct_spectrum(&p9) {
        Ok(spec) => {
            let want: Vec<f64> = std::iter::repeat_n(1.0 / 3.0, 6)
                .chain(std::iter::repeat_n(-1.0 / 3.0, 3))
                .collect();
            record(
                "two_qutrit_reconstruction",
                all_close(spec.values(), &want, 1e-6),
            );
        }
        Err(_) => record("two_qutrit_reconstruction", false),
    }

    let mut lambda_ok = true;
    for n in 2..=4usize {
        match lambda_min_from_max_entangled_moments(n) {
            Ok(lambda) => lambda_ok &= close(lambda, -1.0 / n as f64, 1e-6),
            Err(_) => lambda_ok = false,
        }
    }
    record("lambda_min_pipeline_n234", lambda_ok);

    let f = swap_operator(2);
    let (fspec, _) = hermitian_eigensystem(&f, 1e-10).expect("swap eigen");
    record(
        "swap_spectrum_multiplicities",
        all_close(fspec.values(), &[1.0, 1.0, 1.0, -1.0], 1e-12),
    );

    let r = 1.0 / 2.0f64.sqrt();
    let mut x = ComplexMatrix::zeros(2, 2);
    x.set(0, 1, Complex64::new(r, 0.0));
    x.set(1, 0, Complex64::new(-r, 0.0));
    let singlet = vectorize(&x);
    let fx = f.apply(&singlet);
    let expectation: Complex64 = singlet.iter().zip(&fx).map(|(a, b)| a.conj() * b).sum();
    record(
        "singlet_swap_expectation",
        close(expectation.re, -1.0, 1e-12) && expectation.im.abs() < 1e-12,
    );

    record(
        "bell_negativity",
        close(negativity(&bell).unwrap_or(f64::NAN), 0.5, 1e-12),
    );

    let rana_report = check_rana(&spec, 2, 2, Tolerances::default().certification);
    record(
        "bell_rana_bounds",
        rana_report.in_interval && rana_report.negative_count == 1 && rana_report.bound == 1,
    );

    match certify_max_entangled_2q(&bell, 1e-8) {
        Ok(CertificationReport {
            verdict: Verdict::MaximallyEntangled,
            lambda_min,
            negativity,
            ..
        }) => record(
            "bell_certificate",
            close(lambda_min, -0.5, 1e-9) && close(negativity, 0.5, 1e-9),
        ),
        _ => record("bell_certificate", false),
    }

    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    let out = SelftestOutput {
        checks,
        passed,
        failed,
    };
    println!("{}", to_json_17(&out));
    if failed == 0 {
        Ok(0)
    } else {
        Err(Failure::usage(format!("{failed} selftest check(s) failed")))
    }
}

// keep the derived parser honest: `cargo test` in this crate asserts the
// debug invariants clap checks lazily
#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
