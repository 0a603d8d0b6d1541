//! Brute-force minimisation of `tr(AΓΓᵗAᵗ)` over von Neumann measurements
//! on `a` that leave `ρ^a` unchanged.
//!
//! A rank-one measurement preserves `ρ^a` exactly when its basis
//! diagonalises `ρ^a`. If the spectrum of `ρ^a` is simple the basis is fixed
//! up to phases and the objective is evaluated once. Otherwise every
//! degenerate eigenspace may be rotated by an arbitrary unitary; the search
//! samples Haar-random block unitaries and polishes the best one with
//! two-column Givens rotations.
//!
//! The objective is evaluated as `Σ_k tr M_k²` with
//! `M_k = (⟨w_k| ⊗ 1) ρ (|w_k⟩ ⊗ 1)`, which is the purity of the
//! post-measurement state and does not go through the Γ expansion.

use std::ops::Range;

use rayon::prelude::*;

use crate::config::TOLERANCES;
use crate::eigen::hermitian_eigensystem;
use crate::error::Result;
use crate::linalg::{ComplexMatrix, C64, ZERO};
use crate::measures::{MeasureReport, ProjectiveMeasurement};
use crate::random::{random_unitary, RandomSource};
use crate::state::{BipartiteState, Subsystem};

const SAMPLES_PER_CHUNK: usize = 64;
const LINE_GRID: usize = 16;
const GOLDEN_ITERS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub samples: usize,
    pub refine_iters: usize,
    pub seed: u64,
    /// A refinement cycle improving the objective by less than this ends the search.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            samples: 2000,
            refine_iters: 300,
            seed: 7,
            tolerance: 1e-9,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// `m × multiplicity` orthonormal columns.
    pub basis: ComplexMatrix,
}

/// Spectrum of `ρ^a` clustered into (near-)degenerate blocks.
#[derive(Debug, Clone)]
pub struct MarginalStructure {
    pub blocks: Vec<EigenBlock>,
    /// `ρ^a` is a multiple of the identity.
    pub degenerate: bool,
}

pub fn marginal_structure(s: &BipartiteState) -> MarginalStructure {
    let ra = s.partial_trace(Subsystem::A);
    let eig = hermitian_eigensystem(ra.matrix()).expect("reduced state is Hermitian");
    let m = eig.values.len();
    let mut blocks = Vec::new();
    let mut start = 0;
    for k in 1..=m {
        if k == m || eig.values[k] - eig.values[k - 1] > TOLERANCES.eigenvalue_gap {
            let cols: Vec<Vec<C64>> = (start..k).map(|c| eig.vector(c)).collect();
            let mean = eig.values[start..k].iter().sum::<f64>() / (k - start) as f64;
            blocks.push(EigenBlock {
                eigenvalue: mean,
                multiplicity: k - start,
                basis: ComplexMatrix::from_columns(&cols).expect("equal length columns"),
            });
            start = k;
        }
    }
    let degenerate = blocks.len() == 1;
    MarginalStructure { blocks, degenerate }
}

/// The set of marginal-preserving rank-one measurements.
#[derive(Debug, Clone)]
pub enum MeasurementFamily {
    /// The eigenbasis of `ρ^a`; phases of its vectors are irrelevant.
    Unique { basis: ComplexMatrix },
    /// `frame · (U_1 ⊕ U_2 ⊕ …)` with a free unitary on each listed column range.
    Manifold {
        frame: ComplexMatrix,
        blocks: Vec<Range<usize>>,
    },
}

pub fn allowed_measurements(ms: &MarginalStructure) -> MeasurementFamily {
    let cols: Vec<Vec<C64>> = ms
        .blocks
        .iter()
        .flat_map(|b| (0..b.multiplicity).map(move |c| b.basis.column(c)))
        .collect();
    let frame = ComplexMatrix::from_columns(&cols).expect("equal length columns");
    if ms.blocks.iter().all(|b| b.multiplicity == 1) {
        return MeasurementFamily::Unique { basis: frame };
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for b in &ms.blocks {
        if b.multiplicity > 1 {
            blocks.push(start..start + b.multiplicity);
        }
        start += b.multiplicity;
    }
    MeasurementFamily::Manifold { frame, blocks }
}

#[derive(Debug, Clone)]
pub struct OracleMinimum {
    pub value: f64,
    pub measurement: ProjectiveMeasurement,
    /// Best value after sampling, then after every refinement cycle.
    pub history: Vec<f64>,
}

/// Purity of the post-measurement state for the basis in the columns of `w`.
pub fn measured_purity(s: &BipartiteState, w: &ComplexMatrix) -> f64 {
    let (m, n) = (s.dim_a(), s.dim_b());
    let r = s.matrix();
    let mut total = 0.0;
    let mut block = vec![ZERO; n * n];
    for k in 0..m {
        block.iter_mut().for_each(|z| *z = ZERO);
        for a in 0..m {
            let wa = w[(a, k)].conj();
            if wa == ZERO {
                continue;
            }
            for ap in 0..m {
                let c = wa * w[(ap, k)];
                if c == ZERO {
                    continue;
                }
                for b in 0..n {
                    for bp in 0..n {
                        block[b * n + bp] += c * r[(a * n + b, ap * n + bp)];
                    }
                }
            }
        }
        // M_k Hermitian: tr M² = Σ |M_ij|²
        total += block.iter().map(C64::norm_sqr).sum::<f64>();
    }
    total
}

pub fn minimize(s: &BipartiteState, cfg: &OracleConfig) -> OracleMinimum {
    let ms = marginal_structure(s);
    match allowed_measurements(&ms) {
        MeasurementFamily::Unique { basis } => {
            let value = measured_purity(s, &basis);
            OracleMinimum {
                value,
                measurement: ProjectiveMeasurement::from_basis(&basis).expect("eigenbasis is unitary"),
                history: vec![value],
            }
        }
        MeasurementFamily::Manifold { frame, blocks } => search_manifold(s, &frame, &blocks, cfg),
    }
}

fn rotate_blocks(frame: &ComplexMatrix, blocks: &[Range<usize>], rng: &mut RandomSource) -> ComplexMatrix {
    let mut w = frame.clone();
    for r in blocks {
        let size = r.len();
        let u = random_unitary(size, rng);
        for row in 0..w.rows() {
            let orig: Vec<C64> = r.clone().map(|c| frame[(row, c)]).collect();
            for (jj, col) in r.clone().enumerate() {
                w[(row, col)] = (0..size).map(|ii| orig[ii] * u[(ii, jj)]).sum();
            }
        }
    }
    w
}

fn search_manifold(
    s: &BipartiteState,
    frame: &ComplexMatrix,
    blocks: &[Range<usize>],
    cfg: &OracleConfig,
) -> OracleMinimum {
    let samples = cfg.samples.max(1);
    let chunks = samples.div_ceil(SAMPLES_PER_CHUNK);
    // index 0 is the unrotated frame; reduction order does not depend on threads
    let (mut value, _, mut w) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RandomSource::substream(cfg.seed, c as u64);
            let lo = c * SAMPLES_PER_CHUNK;
            let hi = (lo + SAMPLES_PER_CHUNK).min(samples);
            let mut best: Option<(f64, usize, ComplexMatrix)> = None;
            for idx in lo..hi {
                let w = rotate_blocks(frame, blocks, &mut rng);
                let v = measured_purity(s, &w);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, idx + 1, w));
                }
            }
            best.expect("non-empty chunk")
        })
        .chain(rayon::iter::once((measured_purity(s, frame), 0, frame.clone())))
        .reduce_with(|a, b| if (b.0, b.1) < (a.0, a.1) { b } else { a })
        .expect("at least one candidate");

    let mut history = vec![value];
    for _ in 0..cfg.refine_iters {
        let before = value;
        for r in blocks {
            for p in r.clone() {
                for q in (p + 1)..r.end {
                    for phase in [0.0, std::f64::consts::FRAC_PI_2] {
                        if let Some((v, rotated)) = line_search(s, &w, p, q, phase, value) {
                            debug_assert!(v <= value);
                            value = v;
                            w = rotated;
                        }
                    }
                }
            }
        }
        history.push(value);
        if before - value < cfg.tolerance {
            break;
        }
    }
    OracleMinimum {
        value,
        measurement: ProjectiveMeasurement::from_basis(&reorthonormalize(&w))
            .expect("Givens rotations keep the basis unitary"),
        history,
    }
}

/// Columns `p, q` of `w` rotated by
/// `[[cos θ, −e^{−iφ} sin θ], [e^{iφ} sin θ, cos θ]]`.
fn givens(w: &ComplexMatrix, p: usize, q: usize, theta: f64, phase: f64) -> ComplexMatrix {
    let (st, ct) = theta.sin_cos();
    let e = C64::from_polar(1.0, phase);
    let mut out = w.clone();
    for row in 0..w.rows() {
        let (wp, wq) = (w[(row, p)], w[(row, q)]);
        out[(row, p)] = wp * ct + wq * e * st;
        out[(row, q)] = -wp * e.conj() * st + wq * ct;
    }
    out
}

/// Coarse grid over one period `[0, π)` then golden section around the best
/// grid point. Returns a rotation only if it strictly improves on `current`.
fn line_search(
    s: &BipartiteState,
    w: &ComplexMatrix,
    p: usize,
    q: usize,
    phase: f64,
    current: f64,
) -> Option<(f64, ComplexMatrix)> {
    let f = |theta: f64| measured_purity(s, &givens(w, p, q, theta, phase));
    let step = std::f64::consts::PI / LINE_GRID as f64;
    let (mut best_t, mut best_v) = (0.0, current);
    for i in 1..LINE_GRID {
        let t = i as f64 * step;
        let v = f(t);
        if v < best_v {
            best_t = t;
            best_v = v;
        }
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_t - step, best_t + step);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let (t, v) = if fc < fd { (c, fc) } else { (d, fd) };
    let (t, v) = if v < best_v { (t, v) } else { (best_t, best_v) };
    if v < current && t != 0.0 {
        Some((v, givens(w, p, q, t, phase)))
    } else {
        None
    }
}

fn reorthonormalize(w: &ComplexMatrix) -> ComplexMatrix {
    crate::random::orthonormalize_columns(w).unwrap_or_else(|| w.clone())
}

/// `hs_min = purity − value`, `f_min = 1 − value/purity` from the oracle minimum.
pub fn oracle_report(s: &BipartiteState, cfg: &OracleConfig) -> Result<MeasureReport> {
    let min = minimize(s, cfg);
    let purity = s.purity();
    let hs_min = (purity - min.value).max(0.0);
    MeasureReport::assemble(s, hs_min, hs_min / purity, min.measurement)
}
