//! Isotropic, Werner and pure-alpha states with their closed-form F-MIN.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::state::{BipartiteState, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Isotropic,
    Werner,
    PureAlpha,
    Bell,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "isotropic" => Ok(Family::Isotropic),
            "werner" => Ok(Family::Werner),
            "pure" | "pure-alpha" => Ok(Family::PureAlpha),
            "bell" => Ok(Family::Bell),
            other => Err(format!(
                "unknown family '{other}' (expected isotropic, werner or pure)"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Isotropic => "isotropic",
            Family::Werner => "werner",
            Family::PureAlpha => "pure",
            Family::Bell => "bell",
        })
    }
}

/// A member of one of the named families. `m` and `x` are ignored for the
/// pure families, `alpha` for the mixed ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParam {
    pub family: Family,
    pub m: usize,
    pub x: f64,
    pub alpha: f64,
}

impl FamilyParam {
    pub fn isotropic(m: usize, x: f64) -> Self {
        Self {
            family: Family::Isotropic,
            m,
            x,
            alpha: 0.0,
        }
    }

    pub fn werner(m: usize, x: f64) -> Self {
        Self {
            family: Family::Werner,
            m,
            x,
            alpha: 0.0,
        }
    }

    pub fn pure_alpha(alpha: f64) -> Self {
        Self {
            family: Family::PureAlpha,
            m: 2,
            x: 0.0,
            alpha,
        }
    }

    pub fn bell() -> Self {
        Self::pure_alpha(0.5)
    }

    pub fn state(&self) -> Result<BipartiteState> {
        match self.family {
            Family::Isotropic => isotropic(self.m, self.x),
            Family::Werner => werner(self.m, self.x),
            Family::PureAlpha => pure_alpha(self.alpha),
            Family::Bell => pure_alpha(0.5),
        }
    }

    pub fn fmin_closed_form(&self) -> Result<f64> {
        match self.family {
            Family::Isotropic => fmin_isotropic(self.m, self.x),
            Family::Werner => fmin_werner(self.m, self.x),
            Family::PureAlpha => pure_alpha_fmin(self.alpha),
            Family::Bell => pure_alpha_fmin(0.5),
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            range: "[2, inf)",
        });
    }
    Ok(())
}

fn check_range(name: &'static str, v: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if !(lo..=hi).contains(&v) {
        return Err(Error::OutOfRange {
            name,
            value: v,
            range,
        });
    }
    Ok(())
}

/// `(1/√m) Σ |ii⟩`.
pub fn max_entangled(m: usize) -> Vec<C64> {
    let mut psi = vec![C64::new(0.0, 0.0); m * m];
    let amp = 1.0 / (m as f64).sqrt();
    for i in 0..m {
        psi[i * m + i] = C64::new(amp, 0.0);
    }
    psi
}

/// `P = Σ |αβ⟩⟨βα|`.
pub fn flip_operator(m: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(m * m, m * m);
    for a in 0..m {
        for b in 0..m {
            p[(a * m + b, b * m + a)] = C64::new(1.0, 0.0);
        }
    }
    p
}

/// `((1−x)/(m²−1)) I + ((m²x−1)/(m²−1)) |Ψ⁺⟩⟨Ψ⁺|`, with `x = ⟨Ψ⁺|ρ|Ψ⁺⟩`.
pub fn isotropic(m: usize, x: f64) -> Result<BipartiteState> {
    check_m(m)?;
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    let d2 = (m * m) as f64;
    let noise = ComplexMatrix::identity(m * m).scale_re((1.0 - x) / (d2 - 1.0));
    let proj = ComplexMatrix::outer(&max_entangled(m)).scale_re((d2 * x - 1.0) / (d2 - 1.0));
    BipartiteState::from_matrix(&noise + &proj, m, m)
}

/// `(m²x−1)² / [m²(1−x)² + (m−1)(1+mx)² + (m²x−1)²]`.
pub fn fmin_isotropic(m: usize, x: f64) -> Result<f64> {
    check_m(m)?;
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    let m = m as f64;
    let num = (m * m * x - 1.0).powi(2);
    let den = m * m * (1.0 - x).powi(2) + (m - 1.0) * (1.0 + m * x).powi(2) + num;
    Ok(num / den)
}

/// `((m−x)/(m³−m)) I + ((mx−1)/(m³−m)) P`, with `x = tr(ωP)`.
pub fn werner(m: usize, x: f64) -> Result<BipartiteState> {
    check_m(m)?;
    check_range("x", x, -1.0, 1.0, "[-1, 1]")?;
    let mf = m as f64;
    let den = mf * mf * mf - mf;
    let noise = ComplexMatrix::identity(m * m).scale_re((mf - x) / den);
    let flip = flip_operator(m).scale_re((mf * x - 1.0) / den);
    BipartiteState::from_matrix(&noise + &flip, m, m)
}

/// `(mx−1)² / [(m−x)² + (m−1)(x+1)² + (mx−1)²]`.
pub fn fmin_werner(m: usize, x: f64) -> Result<f64> {
    check_m(m)?;
    check_range("x", x, -1.0, 1.0, "[-1, 1]")?;
    let m = m as f64;
    let num = (m * x - 1.0).powi(2);
    let den = (m - x).powi(2) + (m - 1.0) * (x + 1.0).powi(2) + num;
    Ok(num / den)
}

/// `√α|00⟩ + √(1−α)|11⟩`.
pub fn pure_alpha(alpha: f64) -> Result<BipartiteState> {
    check_range("alpha", alpha, 0.0, 1.0, "[0, 1]")?;
    let z = C64::new(0.0, 0.0);
    let psi = [
        C64::new(alpha.sqrt(), 0.0),
        z,
        z,
        C64::new((1.0 - alpha).sqrt(), 0.0),
    ];
    Ok(
        BipartiteState::new(DensityMatrix::from_trusted(ComplexMatrix::outer(&psi)), 2, 2)
            .expect("4 = 2 x 2"),
    )
}

/// `1 − α² − (1−α)² = 2α(1−α)`.
pub fn pure_alpha_fmin(alpha: f64) -> Result<f64> {
    check_range("alpha", alpha, 0.0, 1.0, "[0, 1]")?;
    Ok(2.0 * alpha * (1.0 - alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{fmin_upper_bound, min_exact_2xn};
    use crate::state::{schmidt, Subsystem};

    fn overlap(s: &BipartiteState, op: &ComplexMatrix) -> f64 {
        s.matrix().trace_product(op).re
    }

    #[test]
    fn isotropic_examples() {
        for m in [2, 3, 4] {
            let s = isotropic(m, 1.0 / (m * m) as f64).unwrap();
            let mixed = ComplexMatrix::identity(m * m).scale_re(1.0 / (m * m) as f64);
            assert!(s.matrix().max_abs_diff(&mixed) < 1e-14);
            for &x in &[0.0, 0.3, 1.0] {
                let s = isotropic(m, x).unwrap();
                let proj = ComplexMatrix::outer(&max_entangled(m));
                assert!((overlap(&s, &proj) - x).abs() < 1e-12);
                let half = ComplexMatrix::identity(m).scale_re(1.0 / m as f64);
                for k in [Subsystem::A, Subsystem::B] {
                    assert!(s.partial_trace(k).matrix().max_abs_diff(&half) < 1e-12);
                }
            }
        }
        let s = isotropic(2, 1.0).unwrap();
        assert!(s.matrix().max_abs_diff(pure_alpha(0.5).unwrap().matrix()) < 1e-14);
    }

    #[test]
    fn werner_examples() {
        for m in [2, 3] {
            let s = werner(m, 1.0 / m as f64).unwrap();
            let mixed = ComplexMatrix::identity(m * m).scale_re(1.0 / (m * m) as f64);
            assert!(s.matrix().max_abs_diff(&mixed) < 1e-14);
            for &x in &[-1.0, 0.2, 1.0] {
                let s = werner(m, x).unwrap();
                assert!((overlap(&s, &flip_operator(m)) - x).abs() < 1e-12);
            }
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let singlet = [z, C64::new(h, 0.0), C64::new(-h, 0.0), z];
        let s = werner(2, -1.0).unwrap();
        assert!(s.matrix().max_abs_diff(&ComplexMatrix::outer(&singlet)) < 1e-14);
    }

    #[test]
    fn closed_form_values() {
        assert!(fmin_isotropic(2, 0.25).unwrap().abs() < 1e-15);
        assert!((fmin_isotropic(2, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((fmin_isotropic(1_000_000, 0.7).unwrap() - 1.0).abs() < 1e-5);
        assert!(fmin_werner(2, 0.5).unwrap().abs() < 1e-15);
        assert!((fmin_werner(2, -1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((fmin_werner(1_000_000, 0.8).unwrap() - 0.64 / 1.64).abs() < 1e-5);
        assert!((pure_alpha_fmin(0.3).unwrap() - 0.42).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_qubit_exact_route() {
        for &x in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let e = min_exact_2xn(&isotropic(2, x).unwrap()).unwrap();
            assert!(
                (e.f_min - fmin_isotropic(2, x).unwrap()).abs() < 1e-10,
                "iso x={x}"
            );
        }
        for &x in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
            let e = min_exact_2xn(&werner(2, x).unwrap()).unwrap();
            assert!(
                (e.f_min - fmin_werner(2, x).unwrap()).abs() < 1e-10,
                "werner x={x}"
            );
        }
    }

    #[test]
    fn closed_forms_saturate_the_bound() {
        for m in [2, 3] {
            for &x in &[0.0, 0.25, 0.5, 0.75, 1.0] {
                let b = fmin_upper_bound(&isotropic(m, x).unwrap()).unwrap();
                assert!((b - fmin_isotropic(m, x).unwrap()).abs() < 1e-9);
            }
            for &x in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
                let b = fmin_upper_bound(&werner(m, x).unwrap()).unwrap();
                assert!((b - fmin_werner(m, x).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn pure_alpha_examples() {
        let s = pure_alpha(0.0).unwrap();
        assert!(
            s.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[0.0, 0.0, 0.0, 1.0]))
                < 1e-15
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let psi = [C64::new(0.3f64.sqrt(), 0.0), z, z, C64::new(0.7f64.sqrt(), 0.0)];
        let sd = schmidt(&psi, 2, 2).unwrap();
        let mut l = sd.coefficients.clone();
        l.sort_by(f64::total_cmp);
        assert!((l[0] - 0.3).abs() < 1e-12 && (l[1] - 0.7).abs() < 1e-12);
        let bell = [C64::new(h, 0.0), z, z, C64::new(h, 0.0)];
        assert!(
            pure_alpha(0.5)
                .unwrap()
                .matrix()
                .max_abs_diff(&ComplexMatrix::outer(&bell))
                < 1e-15
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(isotropic(1, 0.5).is_err());
        assert!(isotropic(2, 1.5).is_err());
        assert!(werner(2, -1.5).is_err());
        assert!(fmin_werner(2, 2.0).is_err());
        assert!(pure_alpha(-0.1).is_err());
    }

    #[test]
    fn asymptotic_trends_are_monotone() {
        let ms = [2, 4, 8, 16, 32];
        let iso: Vec<f64> = ms
            .iter()
            .map(|&m| (fmin_isotropic(m, 0.7).unwrap() - 1.0).abs())
            .collect();
        let wer: Vec<f64> = ms
            .iter()
            .map(|&m| (fmin_werner(m, 0.8).unwrap() - 0.64 / 1.64).abs())
            .collect();
        assert!(iso.windows(2).all(|w| w[1] < w[0]), "{iso:?}");
        assert!(wer.windows(2).all(|w| w[1] < w[0]), "{wer:?}");
    }
}
