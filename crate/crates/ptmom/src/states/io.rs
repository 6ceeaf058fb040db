//! State file format: a UTF-8 JSON document with integer subsystem
//! dimensions and row-major `re`/`im` arrays. Floats are written with 17
//! significant digits so files round-trip exactly and diffs are meaningful
//! across implementations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::BipartiteState;
use crate::numkit::ComplexMatrix;
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    dim_a: usize,
    dim_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Serialize a state to the JSON document format.
pub fn state_to_json(state: &BipartiteState) -> String {
    let d = state.dim();
    let rho = state.rho();
    let file = StateFile {
        dim_a: state.dim_a(),
        dim_b: state.dim_b(),
        re: (0..d)
            .map(|i| (0..d).map(|j| rho.get(i, j).re).collect())
            .collect(),
        im: (0..d)
            .map(|i| (0..d).map(|j| rho.get(i, j).im).collect())
            .collect(),
    };
    to_json_17(&file)
}

/// Parse and validate a state from JSON text.
pub fn read_state_file(text: &str) -> Result<BipartiteState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedStateFile(e.to_string()))?;
    let d = file.dim_a * file.dim_b;
    if d == 0 {
        return Err(Error::MalformedStateFile(
            "subsystem dimensions must be positive".into(),
        ));
    }
    for (name, grid) in [("re", &file.re), ("im", &file.im)] {
        if grid.len() != d || grid.iter().any(|row| row.len() != d) {
            return Err(Error::MalformedStateFile(format!(
                "`{name}` must be a {d}x{d} array"
            )));
        }
        if grid.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::MalformedStateFile(format!(
                "`{name}` contains a non-finite value"
            )));
        }
    }
    let rho = ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(file.re[i][j], file.im[i][j]));
    BipartiteState::new(file.dim_a, file.dim_b, rho)
}

/// Write a state file to disk.
pub fn write_state_file(path: &std::path::Path, state: &BipartiteState) -> std::io::Result<()> {
    std::fs::write(path, state_to_json(state))
}

/// Serialize any value to JSON with every float at 17 significant digits.
pub fn to_json_17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits17);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// JSON formatter printing floats as `d.dddddddddddddddde±x` (17 significant
/// digits), enough to reconstruct any f64 exactly.
struct SigDigits17;

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}
