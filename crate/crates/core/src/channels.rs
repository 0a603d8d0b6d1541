//! Single-qubit Kraus channels applied to both qubits, closed-form X-state
//! evolution of `√α|00⟩ + √(1−α)|11⟩`, and entanglement sudden-death
//! thresholds.
//!
//! The X-state elements below are composed from the Kraus operators.
//! Compared with tables that are sometimes quoted for these channels:
//!
//! | channel | element | Kraus composition | commonly printed |
//! |---|---|---|---|
//! | amplitude damping | `ρ₁₁` | `α + (1−α)γ²` | `α` |
//! | amplitude damping | `ρ₂₂` | `(1−α)γ(1−γ)` | `√(α(1−α)) γ(1−γ)` |
//! | depolarizing | `ρ₁₄` | `√(α(1−α)) (1−γ)²` | `√(α(1−α)) (1−γ)` |
//! | generalized AD | `ρ₁₁` | `α(1−γ)(1−γ+2γp) + γ²p²` | `α(1−γ)(2(1−p)−γ(1−2p)) + γ²p²` |
//!
//! The printed amplitude-damping populations do not sum to one. The
//! generalized channel uses `√p` on both `p`-weighted operators, which is
//! what makes `Σ E†E = 1` hold.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};
use crate::measures::{concurrence, concurrence_margin, min_exact_2xn};
use crate::state::{BipartiteState, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    Identity,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Depolarizing => "depol",
            ChannelKind::GeneralizedAmplitudeDamping => "gad",
            ChannelKind::Identity => "identity",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            "depol" => Ok(ChannelKind::Depolarizing),
            "gad" => Ok(ChannelKind::GeneralizedAmplitudeDamping),
            "identity" => Ok(ChannelKind::Identity),
            other => Err(format!("unknown channel '{other}' (expected ad, depol or gad)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub kind: ChannelKind,
    pub gamma: f64,
    /// Generalized amplitude damping only.
    pub p: Option<f64>,
    ops: Vec<ComplexMatrix>,
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
        return Err(Error::OutOfRange {
            name,
            value: v,
            range: "[0, 1]",
        });
    }
    Ok(())
}

fn real2(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[a, b, c, d]).expect("2x2")
}

impl KrausChannel {
    /// `p` is required for the generalized channel and ignored otherwise.
    pub fn new(kind: ChannelKind, gamma: f64, p: Option<f64>) -> Result<Self> {
        check_unit("gamma", gamma)?;
        let (g, sg) = (gamma, gamma.sqrt());
        let ops = match kind {
            ChannelKind::AmplitudeDamping => {
                vec![real2(1.0, 0.0, 0.0, (1.0 - g).sqrt()), real2(0.0, sg, 0.0, 0.0)]
            }
            ChannelKind::Depolarizing => vec![
                ComplexMatrix::identity(2).scale_re((1.0 - 0.75 * g).sqrt()),
                pauli_x().scale_re(sg / 2.0),
                pauli_y().scale_re(sg / 2.0),
                pauli_z().scale_re(sg / 2.0),
            ],
            ChannelKind::GeneralizedAmplitudeDamping => {
                let p = p.ok_or(Error::OutOfRange {
                    name: "p",
                    value: f64::NAN,
                    range: "[0, 1] (required for gad)",
                })?;
                check_unit("p", p)?;
                let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
                vec![
                    real2(1.0, 0.0, 0.0, (1.0 - g).sqrt()).scale_re(sp),
                    real2(0.0, sg, 0.0, 0.0).scale_re(sp),
                    real2((1.0 - g).sqrt(), 0.0, 0.0, 1.0).scale_re(sq),
                    real2(0.0, 0.0, sg, 0.0).scale_re(sq),
                ]
            }
            ChannelKind::Identity => vec![ComplexMatrix::identity(2)],
        };
        let p = match kind {
            ChannelKind::GeneralizedAmplitudeDamping => p,
            _ => None,
        };
        Ok(Self { kind, gamma, p, ops })
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `max |Σ E†E − 1|`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in &self.ops {
            sum = &sum + &(&e.dagger() * e);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }

    pub fn apply_single(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch("single-qubit channel".into()));
        }
        let mut out = ComplexMatrix::zeros(2, 2);
        for e in &self.ops {
            out = &out + &(&(e * rho.matrix()) * &e.dagger());
        }
        Ok(DensityMatrix::from_trusted(out))
    }
}

/// `γ = 1 − e^{−rate·t}`.
pub fn gamma_from_time(rate: f64, t: f64) -> Result<f64> {
    if rate < 0.0 || rate.is_nan() {
        return Err(Error::OutOfRange {
            name: "rate",
            value: rate,
            range: "[0, inf)",
        });
    }
    if t < 0.0 || t.is_nan() {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    let x = rate * t;
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(-(-x).exp_m1())
}

/// `Σ_{i,j} (E_i ⊗ E_j) ρ (E_i ⊗ E_j)†` on a two-qubit state.
pub fn apply_product_channel(s: &BipartiteState, ch: &KrausChannel) -> Result<BipartiteState> {
    if s.dim_a() != 2 || s.dim_b() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "product channel needs two qubits, got {}x{}",
            s.dim_a(),
            s.dim_b()
        )));
    }
    let mut out = ComplexMatrix::zeros(4, 4);
    for ei in ch.ops() {
        for ej in ch.ops() {
            let e = ei.kron(ej);
            out = &out + &(&(&e * s.matrix()) * &e.dagger());
        }
    }
    let out = ComplexMatrix::from_fn(4, 4, |i, j| (out[(i, j)] + out[(j, i)].conj()) * 0.5);
    BipartiteState::new(DensityMatrix::from_trusted(out), 2, 2)
}

/// Nonzero elements of a two-qubit X state with `ρ₃₃ = ρ₂₂`, real `ρ₁₄` and
/// `ρ₂₃ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateElements {
    pub r11: f64,
    pub r22: f64,
    pub r44: f64,
    pub r14: f64,
}

impl XStateElements {
    pub fn trace_defect(&self) -> f64 {
        (self.r11 + 2.0 * self.r22 + self.r44 - 1.0).abs()
    }

    /// `ρ₁₄² − ρ₁₁ρ₄₄`, nonpositive for a valid state.
    pub fn coherence_excess(&self) -> f64 {
        self.r14 * self.r14 - self.r11 * self.r44
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_real_diag(&[self.r11, self.r22, self.r22, self.r44]);
        m[(0, 3)] = C64::new(self.r14, 0.0);
        m[(3, 0)] = C64::new(self.r14, 0.0);
        m
    }

    pub fn to_state(&self) -> Result<BipartiteState> {
        BipartiteState::from_matrix(self.to_matrix(), 2, 2)
    }
}

/// Evolution of `√α|00⟩ + √(1−α)|11⟩` under the channel on both qubits.
///
/// Per qubit, with `(u, v)` the populations reached from `|0⟩⟨0|`, `(w, z)`
/// those from `|1⟩⟨1|` and `c` the coherence factor of `|0⟩⟨1|`:
/// `ρ₁₁ = αu² + (1−α)w²`, `ρ₂₂ = αuv + (1−α)wz`, `ρ₄₄ = αv² + (1−α)z²`,
/// `ρ₁₄ = √(α(1−α)) c²`.
pub fn analytic_evolved_xstate(
    kind: ChannelKind,
    alpha: f64,
    gamma: f64,
    p: Option<f64>,
) -> Result<XStateElements> {
    check_unit("alpha", alpha)?;
    check_unit("gamma", gamma)?;
    let g = gamma;
    let (u, v, w, z, c) = match kind {
        ChannelKind::AmplitudeDamping => (1.0, 0.0, g, 1.0 - g, (1.0 - g).sqrt()),
        ChannelKind::Depolarizing => (1.0 - g / 2.0, g / 2.0, g / 2.0, 1.0 - g / 2.0, 1.0 - g),
        ChannelKind::GeneralizedAmplitudeDamping => {
            let p = p.ok_or(Error::OutOfRange {
                name: "p",
                value: f64::NAN,
                range: "[0, 1] (required for gad)",
            })?;
            check_unit("p", p)?;
            (
                1.0 - g * (1.0 - p),
                g * (1.0 - p),
                g * p,
                1.0 - g * p,
                (1.0 - g).sqrt(),
            )
        }
        ChannelKind::Identity => (1.0, 0.0, 0.0, 1.0, 1.0),
    };
    let b = 1.0 - alpha;
    Ok(XStateElements {
        r11: alpha * u * u + b * w * w,
        r22: alpha * u * v + b * w * z,
        r44: alpha * v * v + b * z * z,
        r14: (alpha * b).sqrt() * c * c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateMeasures {
    pub concurrence: f64,
    pub hs_min: f64,
    pub f_min: f64,
}

/// `C = 2 max(0, ρ₁₄ − ρ₂₂)`, `N = 2ρ₁₄²`,
/// `N_F = 2ρ₁₄² / (ρ₁₁² + 2ρ₁₄² + 2ρ₂₂² + ρ₄₄²)`.
pub fn xstate_measures(e: &XStateElements) -> XStateMeasures {
    let c2 = 2.0 * e.r14 * e.r14;
    let purity = e.r11 * e.r11 + c2 + 2.0 * e.r22 * e.r22 + e.r44 * e.r44;
    XStateMeasures {
        concurrence: 2.0 * (e.r14 - e.r22).max(0.0),
        hs_min: c2,
        f_min: if c2 == 0.0 { 0.0 } else { c2 / purity },
    }
}

/// `γ₀ = 1 + √(4α(1−α)) − √(1 + 4α(1−α))`.
///
/// This is the root of `ρ₁₄ = ρ₂₂` when the depolarizing coherence decays as
/// `(1−γ)`. Under the two-sided Kraus evolution it decays as `(1−γ)²` and the
/// concurrence of the evolved state vanishes earlier; use
/// [`sudden_death_threshold`] for that root.
pub fn depol_sudden_death_threshold(alpha: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    let c2 = 4.0 * alpha * (1.0 - alpha);
    Ok(1.0 + c2.sqrt() - (1.0 + c2).sqrt())
}

/// Concurrence of the Kraus-evolved pure-alpha state at `gamma`.
pub fn evolved_concurrence_margin(kind: ChannelKind, alpha: f64, gamma: f64, p: Option<f64>) -> Result<f64> {
    let s0 = crate::families::pure_alpha(alpha)?;
    let ch = KrausChannel::new(kind, gamma, p)?;
    concurrence_margin(&apply_product_channel(&s0, &ch)?)
}

const SCAN_POINTS: usize = 1000;
const MARGIN_EPS: f64 = 1e-12;

/// Smallest `γ ∈ [0, 1]` at which the concurrence of the Kraus-evolved
/// pure-alpha state reaches zero.
///
/// The Wootters margin `λ₁ − λ₂ − λ₃ − λ₄` turns negative past a sudden-death
/// point; the first negative grid sample is bracketed and bisected to
/// `1e-12`. If the margin stays nonnegative but vanishes at `γ = 1` the
/// entanglement dies only asymptotically and the result is `1`. `None` means
/// the state is still entangled at `γ = 1`.
pub fn sudden_death_threshold(kind: ChannelKind, alpha: f64, p: Option<f64>) -> Result<Option<f64>> {
    let margin = |g: f64| evolved_concurrence_margin(kind, alpha, g, p);
    let mut prev = 0.0;
    if margin(0.0)? <= MARGIN_EPS {
        // product initial state
        return Ok(Some(0.0));
    }
    for k in 1..=SCAN_POINTS {
        let g = k as f64 / SCAN_POINTS as f64;
        if margin(g)? < -MARGIN_EPS {
            let (mut lo, mut hi) = (prev, g);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if margin(mid)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev = g;
    }
    if margin(1.0)? <= MARGIN_EPS {
        Ok(Some(1.0))
    } else {
        Ok(None)
    }
}

pub fn gad_sudden_death_threshold(alpha: f64, p: f64) -> Result<Option<f64>> {
    sudden_death_threshold(ChannelKind::GeneralizedAmplitudeDamping, alpha, Some(p))
}

/// One row of a `γ` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub gamma: f64,
    pub concurrence: f64,
    pub hs_min: f64,
    pub f_min: f64,
}

/// General-machinery measures of the pure-alpha state after the channel, on
/// `steps` equally spaced `γ ∈ [0, 1]` (both ends included). Rows come back
/// in `γ` order.
pub fn sweep(kind: ChannelKind, alpha: f64, p: Option<f64>, steps: usize) -> Result<Vec<SweepRecord>> {
    use rayon::prelude::*;

    if steps < 2 {
        return Err(Error::OutOfRange {
            name: "steps",
            value: steps as f64,
            range: "[2, inf)",
        });
    }
    let s0 = crate::families::pure_alpha(alpha)?;
    KrausChannel::new(kind, 0.0, p)?;
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let gamma = if k == steps - 1 {
                1.0
            } else {
                k as f64 / (steps - 1) as f64
            };
            let ch = KrausChannel::new(kind, gamma, p)?;
            let s = apply_product_channel(&s0, &ch)?;
            let exact = min_exact_2xn(&s)?;
            Ok(SweepRecord {
                gamma,
                concurrence: concurrence(&s)?,
                hs_min: exact.hs_min.max(0.0),
                f_min: exact.f_min.clamp(0.0, 1.0),
            })
        })
        .collect()
}
