//! State files and sweep CSV.
//!
//! A state file is one JSON document:
//!
//! ```json
//! { "dims": [2, 2], "matrix": [[[0.5, 0], [0, 0], [0, 0], [0.5, 0]], ...] }
//! ```
//!
//! with `matrix` a `d × d` array of `[re, im]` pairs, `d = m·n`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::SweepRecord;
use crate::error::{Error, Result, StateViolation, ViolationKind};
use crate::linalg::{ComplexMatrix, C64};
use crate::state::{BipartiteState, DensityMatrix};

pub const CSV_HEADER: &str = "gamma,concurrence,hs_min,f_min";
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: (usize, usize),
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(s: &BipartiteState) -> Self {
        let m = s.matrix();
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            dims: (s.dim_a(), s.dim_b()),
            matrix,
        }
    }

    /// Shape problems are reported as [`ViolationKind::Shape`].
    pub fn to_state(&self) -> Result<BipartiteState> {
        let (m, n) = self.dims;
        let d = m * n;
        let shape = |magnitude: f64| {
            Error::InvalidState(StateViolation {
                kind: ViolationKind::Shape,
                magnitude,
            })
        };
        if self.matrix.len() != d {
            return Err(shape((self.matrix.len() as f64 - d as f64).abs()));
        }
        let mut data = Vec::with_capacity(d * d);
        for row in &self.matrix {
            if row.len() != d {
                return Err(shape((row.len() as f64 - d as f64).abs()));
            }
            data.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
        }
        let mat = ComplexMatrix::new(d, d, data)?;
        BipartiteState::new(DensityMatrix::validate(mat)?, m, n)
    }
}

pub fn parse_state(text: &str) -> Result<BipartiteState> {
    let f: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_state()
}

pub fn read_state(path: &Path) -> Result<BipartiteState> {
    let text = std::fs::read_to_string(path)?;
    parse_state(&text)
}

pub fn state_to_json(s: &BipartiteState) -> String {
    serde_json::to_string(&StateFile::from_state(s)).expect("plain data serializes")
}

pub fn write_state(path: &Path, s: &BipartiteState) -> Result<()> {
    std::fs::write(path, state_to_json(s) + "\n")?;
    Ok(())
}

/// `v` rounded to `digits` significant digits, printed without trailing zeros.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    let a = rounded.abs();
    if !(1e-4..1e15).contains(&a) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

pub fn sweep_csv(rows: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let f = |v| format_significant(v, SIGNIFICANT_DIGITS);
        writeln!(
            out,
            "{},{},{},{}",
            f(r.gamma),
            f(r.concurrence),
            f(r.hs_min),
            f(r.f_min)
        )
        .expect("string write");
    }
    out
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRecord]) -> Result<()> {
    std::fs::write(path, sweep_csv(rows))?;
    Ok(())
}

/// Inverse of [`sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(Error::Parse(format!("bad CSV header {other:?}"))),
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let v: Vec<f64> = l
                .split(',')
                .map(|c| c.parse::<f64>().map_err(|e| Error::Parse(format!("{l}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != 4 {
                return Err(Error::Parse(format!("expected 4 columns: {l}")));
            }
            Ok(SweepRecord {
                gamma: v[0],
                concurrence: v[1],
                hs_min: v[2],
                f_min: v[3],
            })
        })
        .collect()
}
