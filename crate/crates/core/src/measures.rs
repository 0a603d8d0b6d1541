//! Fidelity, sine metric, post-measurement states, MIN closed forms and
//! concurrence.
//!
//! For a rank-one measurement `{Π_k}` on `a` the post-measurement state is
//! `Π(ρ) = Σ_k Π_k ⊗ M_k` with `M_k = tr_a[(Π_k ⊗ 1)ρ]`, so
//! `tr(ρΠ(ρ)) = tr Π(ρ)² = tr(AΓΓᵗAᵗ)` where `a_ki = tr(Π_k X_i)`. Hence
//!
//! * `‖ρ − Π(ρ)‖² = tr ρ² − tr(AΓΓᵗAᵗ)`,
//! * `F(ρ, Π(ρ)) = tr(AΓΓᵗAᵗ) / tr ρ²`,
//!
//! and both MINs are maximised by the same measurement:
//! `hs_min = purity · f_min`.
//!
//! Two `2 × n` entry points exist. [`min_exact_2xn`] optimises only over
//! measurements that leave `ρ^a` unchanged (for `x ≠ 0` this pins the basis
//! to the eigenbasis of `ρ^a`). [`fmin_paper_2xn`] is the eigenvalue formula
//! `(μ₂ + μ₃)/‖Γ‖²`; it is exact when `ρ^a` is maximally mixed and otherwise
//! an upper bound on the constrained value.

use crate::basis::{gamma_decompose, orthonormal_hermitian_basis, GammaDecomposition};
use crate::config::TOLERANCES;
use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};
use crate::optimizer::{self, OracleConfig};
use crate::state::{BipartiteState, DensityMatrix, SchmidtDecomposition};

/// Complete set of rank-one orthogonal projectors on an `m`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    /// Column `k` spans the range of `projectors[k]`.
    basis: ComplexMatrix,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveMeasurement {
    /// Measurement in the orthonormal basis given by the columns of `w`.
    pub fn from_basis(w: &ComplexMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::NotSquare {
                rows: w.rows(),
                cols: w.cols(),
            });
        }
        let d = w.rows();
        let defect = (&w.dagger() * w).max_abs_diff(&ComplexMatrix::identity(d));
        if defect > TOLERANCES.projector {
            return Err(Error::InvalidMeasurement(format!(
                "basis columns not orthonormal (deviation {defect:.3e})"
            )));
        }
        let projectors = (0..d).map(|k| ComplexMatrix::outer(&w.column(k))).collect();
        Ok(Self {
            basis: w.clone(),
            projectors,
        })
    }

    /// Accepts rank-one projectors after checking `Π² = Π`, `Π_k Π_l = 0`,
    /// `Σ Π_k = 1`.
    pub fn from_projectors(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let d = projectors.len();
        if d == 0 || projectors.iter().any(|p| p.rows() != d || p.cols() != d) {
            return Err(Error::InvalidMeasurement(
                "need m projectors of size m x m".into(),
            ));
        }
        let tol = TOLERANCES.projector;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (k, p) in projectors.iter().enumerate() {
            if p.hermiticity_defect() > tol || (p * p).max_abs_diff(p) > tol {
                return Err(Error::InvalidMeasurement(format!(
                    "element {k} is not a projector"
                )));
            }
            for (l, q) in projectors.iter().enumerate().skip(k + 1) {
                if (p * q).max_abs_diff(&ComplexMatrix::zeros(d, d)) > tol {
                    return Err(Error::InvalidMeasurement(format!(
                        "elements {k} and {l} are not orthogonal"
                    )));
                }
            }
            sum = &sum + p;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(d)) > tol {
            return Err(Error::InvalidMeasurement(
                "projectors do not sum to identity".into(),
            ));
        }
        // rank one with unit trace: any nonzero column of Π_k spans its range
        let cols: Vec<Vec<C64>> = projectors
            .iter()
            .map(|p| {
                let j = (0..d)
                    .max_by(|&a, &b| p[(a, a)].re.total_cmp(&p[(b, b)].re))
                    .expect("d > 0");
                let v = p.column(j);
                let nv = crate::linalg::norm(&v);
                v.into_iter().map(|z| z / nv).collect()
            })
            .collect();
        Ok(Self {
            basis: ComplexMatrix::from_columns(&cols)?,
            projectors,
        })
    }

    pub fn computational(m: usize) -> Self {
        Self::from_basis(&ComplexMatrix::identity(m)).expect("identity is unitary")
    }

    /// `{(1 ± n·σ)/2}` for a unit Bloch vector `n`.
    pub fn qubit_axis(n: [f64; 3]) -> Result<Self> {
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if (len - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidMeasurement(format!("Bloch axis has length {len}")));
        }
        let ns = &(&pauli_x().scale_re(n[0]) + &pauli_y().scale_re(n[1])) + &pauli_z().scale_re(n[2]);
        let eig = hermitian_eigensystem(&ns)?;
        // order: +n first, then −n
        let w = ComplexMatrix::from_columns(&[eig.vector(1), eig.vector(0)])?;
        Self::from_basis(&w)
    }

    pub fn dim(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }
}

/// `a_ki = tr(Π_k X_i)`, an `m × m²` real matrix.
#[derive(Debug, Clone)]
pub struct MeasurementCoefficientMatrix {
    m: usize,
    entries: Vec<f64>,
}

impl MeasurementCoefficientMatrix {
    pub fn new(pm: &ProjectiveMeasurement) -> Self {
        let m = pm.dim();
        let basis = orthonormal_hermitian_basis(m);
        let mut entries = Vec::with_capacity(m * m * m);
        for p in pm.projectors() {
            for x in basis.ops() {
                entries.push(p.trace_product(x).re);
            }
        }
        Self { m, entries }
    }

    pub fn get(&self, k: usize, i: usize) -> f64 {
        self.entries[k * self.m * self.m + i]
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.m * self.m
    }

    pub fn row_norm(&self, k: usize) -> f64 {
        (0..self.cols())
            .map(|i| self.get(k, i).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// `(tr ρσ)² / (tr ρ² · tr σ²)`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity of {}- and {}-dimensional states",
            rho.dim(),
            sigma.dim()
        )));
    }
    let overlap = rho.matrix().trace_product(sigma.matrix()).re;
    Ok((overlap * overlap / (rho.purity() * sigma.purity())).clamp(0.0, 1.0))
}

/// `√(1 − F)`.
pub fn sine_metric(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok((1.0 - fidelity(rho, sigma)?).max(0.0).sqrt())
}

/// `Σ_k (Π_k ⊗ 1) ρ (Π_k ⊗ 1)`.
pub fn post_measurement_state(s: &BipartiteState, pm: &ProjectiveMeasurement) -> Result<BipartiteState> {
    if pm.dim() != s.dim_a() {
        return Err(Error::DimensionMismatch(format!(
            "measurement on {} levels, subsystem a has {}",
            pm.dim(),
            s.dim_a()
        )));
    }
    let (m, n) = (s.dim_a(), s.dim_b());
    let d = m * n;
    let r = s.matrix();
    let mut out = ComplexMatrix::zeros(d, d);
    for p in pm.projectors() {
        // (Π ⊗ 1) ρ (Π ⊗ 1), entrywise
        let left = ComplexMatrix::from_fn(d, d, |row, col| {
            let (a, b) = (row / n, row % n);
            (0..m).map(|ap| p[(a, ap)] * r[(ap * n + b, col)]).sum()
        });
        for row in 0..d {
            for col in 0..d {
                let (ap, bp) = (col / n, col % n);
                let v: C64 = (0..m).map(|a| left[(row, a * n + bp)] * p[(a, ap)]).sum();
                out[(row, col)] += v;
            }
        }
    }
    let out = ComplexMatrix::from_fn(d, d, |i, j| (out[(i, j)] + out[(j, i)].conj()) * 0.5);
    BipartiteState::new(DensityMatrix::from_trusted(out), m, n)
}

/// `‖ρ − Π(ρ)‖²` evaluated directly.
pub fn hs_disturbance(s: &BipartiteState, pm: &ProjectiveMeasurement) -> Result<f64> {
    let post = post_measurement_state(s, pm)?;
    let diff = s.matrix() - post.matrix();
    Ok(diff.data().iter().map(C64::norm_sqr).sum())
}

/// `1 − F(ρ, Π(ρ))` evaluated directly.
pub fn fidelity_disturbance(s: &BipartiteState, pm: &ProjectiveMeasurement) -> Result<f64> {
    let post = post_measurement_state(s, pm)?;
    Ok(1.0 - fidelity(s.rho(), post.rho())?)
}

/// Pure-state F-MIN `1 − Σ λ_i²`.
pub fn fmin_pure(sd: &SchmidtDecomposition) -> f64 {
    1.0 - sd.coefficients.iter().map(|l| l * l).sum::<f64>()
}

/// `tr(AΓΓᵗAᵗ) = Σ_k Σ_j (Σ_i a_ki γ_ij)²`.
pub fn objective(g: &GammaDecomposition, pm: &ProjectiveMeasurement) -> Result<f64> {
    if pm.dim() != g.m {
        return Err(Error::DimensionMismatch(format!(
            "measurement on {} levels, Gamma has m = {}",
            pm.dim(),
            g.m
        )));
    }
    let a = MeasurementCoefficientMatrix::new(pm);
    let (mm, nn) = (g.m * g.m, g.n * g.n);
    let mut total = 0.0;
    for k in 0..g.m {
        for j in 0..nn {
            let v: f64 = (0..mm).map(|i| a.get(k, i) * g.gamma(i, j)).sum();
            total += v * v;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone)]
pub struct ExactMin {
    pub hs_min: f64,
    pub f_min: f64,
    pub measurement: ProjectiveMeasurement,
}

/// Constrained optimum over marginal-preserving measurements on a qubit `a`.
///
/// With `Π_± = (1 ± n·σ)/2` the objective is `1/(2n) + yᵗy + nᵗ(xxᵗ+TTᵗ)n`.
/// If `x ≠ 0` the only admissible axis is `x/‖x‖` and
/// `hs_min = tr TTᵗ − xᵗTTᵗx/‖x‖²`; otherwise the best axis is the lowest
/// eigenvector of `TTᵗ` and `hs_min = tr TTᵗ − μ_min(TTᵗ)`.
pub fn min_exact_2xn(s: &BipartiteState) -> Result<ExactMin> {
    if s.dim_a() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "2 x n formula needs dim_a = 2, got {}",
            s.dim_a()
        )));
    }
    let g = gamma_decompose(s)?;
    let tt = g.t_gram();
    let tr_tt: f64 = (0..3).map(|i| tt[(i, i)].re).sum();
    let xn = g.x_norm();
    let (hs_min, axis) = if xn > TOLERANCES.bloch_zero {
        let u = [g.x[0] / xn, g.x[1] / xn, g.x[2] / xn];
        let quad: f64 = (0..3)
            .flat_map(|i| (0..3).map(move |k| (i, k)))
            .map(|(i, k)| u[i] * tt[(i, k)].re * u[k])
            .sum();
        (tr_tt - quad, u)
    } else {
        let eig = hermitian_eigensystem(&tt)?;
        let v = eig.vector(0);
        let re = [v[0].re, v[1].re, v[2].re];
        let len = (re[0] * re[0] + re[1] * re[1] + re[2] * re[2]).sqrt();
        (tr_tt - eig.values[0], [re[0] / len, re[1] / len, re[2] / len])
    };
    let hs_min = hs_min.max(0.0);
    Ok(ExactMin {
        hs_min,
        f_min: hs_min / s.purity(),
        measurement: ProjectiveMeasurement::qubit_axis(axis)?,
    })
}

/// Ascending eigenvalues of `xxᵗ + TTᵗ`.
pub fn correlation_spectrum(g: &GammaDecomposition) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(&g.correlation_gram())?.values)
}

/// `(μ₂ + μ₃)/‖Γ‖²`.
pub fn fmin_paper_2xn(s: &BipartiteState) -> Result<f64> {
    if s.dim_a() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "2 x n formula needs dim_a = 2, got {}",
            s.dim_a()
        )));
    }
    let g = gamma_decompose(s)?;
    let mu = correlation_spectrum(&g)?;
    Ok((mu[1] + mu[2]) / g.gamma_norm_sq)
}

/// `(Σ_{i=m}^{m²−1} μ_i)/‖Γ‖²`, i.e. all but the `m − 1` smallest eigenvalues
/// of `xxᵗ + TTᵗ`.
pub fn fmin_upper_bound(s: &BipartiteState) -> Result<f64> {
    let g = gamma_decompose(s)?;
    let mu = correlation_spectrum(&g)?;
    let tail: f64 = mu[g.m - 1..].iter().sum();
    Ok(tail / g.gamma_norm_sq)
}

/// Wootters `λ₁ − λ₂ − λ₃ − λ₄` before clamping at zero. `λ_i` are the
/// descending square roots of the spectrum of `ρ(σy⊗σy)ρ*(σy⊗σy)`, obtained
/// here from the Hermitian `√ρ ρ̃ √ρ`, which has the same spectrum.
pub fn concurrence_margin(s: &BipartiteState) -> Result<f64> {
    if s.dim_a() != 2 || s.dim_b() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs two qubits, got {}x{}",
            s.dim_a(),
            s.dim_b()
        )));
    }
    let r = s.matrix();
    let yy = pauli_y().kron(&pauli_y());
    let flipped = &(&yy * &r.conj()) * &yy;
    let sqrt_rho = hermitian_eigensystem(r)?.map_spectrum(|l| l.max(0.0).sqrt());
    let m = &(&sqrt_rho * &flipped) * &sqrt_rho;
    let m = ComplexMatrix::from_fn(4, 4, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut lam: Vec<f64> = hermitian_eigensystem(&m)?
        .values
        .into_iter()
        .map(|w| w.max(0.0).sqrt())
        .collect();
    lam.reverse();
    Ok(lam[0] - lam[1] - lam[2] - lam[3])
}

pub fn concurrence(s: &BipartiteState) -> Result<f64> {
    Ok(concurrence_margin(s)?.clamp(0.0, 1.0))
}

/// All measures of one state.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    /// Two qubits only.
    pub concurrence: Option<f64>,
    pub hs_min: f64,
    /// Constrained (marginal-preserving) value.
    pub f_min: f64,
    /// `(μ₂ + μ₃)/‖Γ‖²`, qubit `a` only.
    pub f_min_paper: Option<f64>,
    pub f_min_upper_bound: f64,
    pub purity: f64,
    pub optimal_measurement: ProjectiveMeasurement,
}

impl MeasureReport {
    pub(crate) fn assemble(
        s: &BipartiteState,
        hs_min: f64,
        f_min: f64,
        measurement: ProjectiveMeasurement,
    ) -> Result<Self> {
        let two_qubit = s.dim_a() == 2 && s.dim_b() == 2;
        Ok(Self {
            concurrence: if two_qubit { Some(concurrence(s)?) } else { None },
            hs_min,
            f_min,
            f_min_paper: if s.dim_a() == 2 {
                Some(fmin_paper_2xn(s)?)
            } else {
                None
            },
            f_min_upper_bound: fmin_upper_bound(s)?,
            purity: s.purity(),
            optimal_measurement: measurement,
        })
    }
}

/// Exact route for a qubit `a`, measurement oracle otherwise.
pub fn measure_report(s: &BipartiteState, cfg: &OracleConfig) -> Result<MeasureReport> {
    if s.dim_a() == 2 {
        let e = min_exact_2xn(s)?;
        MeasureReport::assemble(s, e.hs_min, e.f_min, e.measurement)
    } else {
        optimizer::oracle_report(s, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::RandomSource;
    use crate::state::{random_mixed_bipartite, schmidt};

    fn c(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    fn ket0() -> DensityMatrix {
        DensityMatrix::from_pure(&[c(1.0), c(0.0)]).unwrap()
    }

    fn bell() -> BipartiteState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        BipartiteState::from_pure(&[c(s), c(0.0), c(0.0), c(s)], 2, 2).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let r = ket0();
        let one = DensityMatrix::from_pure(&[c(0.0), c(1.0)]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((fidelity(&r, &r).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&r, &one).unwrap().abs() < 1e-15);
        assert!((fidelity(&r, &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity(&r, &DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn sine_metric_examples() {
        let r = ket0();
        let one = DensityMatrix::from_pure(&[c(0.0), c(1.0)]).unwrap();
        assert!(sine_metric(&r, &r).unwrap().abs() < 1e-7);
        assert!((sine_metric(&r, &one).unwrap() - 1.0).abs() < 1e-15);
        let v = sine_metric(&r, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn post_measurement_examples() {
        let out = post_measurement_state(&bell(), &ProjectiveMeasurement::computational(2)).unwrap();
        assert!(
            out.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]))
                < 1e-15
        );

        let mm = BipartiteState::new(DensityMatrix::maximally_mixed(6), 2, 3).unwrap();
        let mut rng = RandomSource::new(1);
        let u = crate::random::random_unitary(2, &mut rng);
        let pm = ProjectiveMeasurement::from_basis(&u).unwrap();
        let out = post_measurement_state(&mm, &pm).unwrap();
        assert!(out.matrix().max_abs_diff(mm.matrix()) < 1e-15);

        assert!(post_measurement_state(&mm, &ProjectiveMeasurement::computational(3)).is_err());
    }

    #[test]
    fn schmidt_basis_measurement_dephases_pure_state() {
        let mut rng = RandomSource::new(4);
        let psi = crate::state::random_pure_vector(6, &mut rng);
        let s = BipartiteState::from_pure(&psi, 2, 3).unwrap();
        let sd = schmidt(&psi, 2, 3).unwrap();
        let pm = ProjectiveMeasurement::from_basis(&sd.basis_a).unwrap();
        let out = post_measurement_state(&s, &pm).unwrap();
        let mut want = ComplexMatrix::zeros(6, 6);
        for k in 0..2 {
            let ab: Vec<C64> = (0..6)
                .map(|idx| sd.basis_a[(idx / 3, k)] * sd.basis_b[(idx % 3, k)])
                .collect();
            want = &want + &ComplexMatrix::outer(&ab).scale_re(sd.coefficients[k]);
        }
        assert!(out.matrix().max_abs_diff(&want) < 1e-12);
        let twice = post_measurement_state(&out, &pm).unwrap();
        assert!(twice.matrix().max_abs_diff(out.matrix()) < 1e-12);
    }

    #[test]
    fn fmin_pure_examples() {
        let sd = |l: Vec<f64>| SchmidtDecomposition {
            coefficients: l,
            basis_a: ComplexMatrix::identity(2),
            basis_b: ComplexMatrix::identity(2),
        };
        assert!((fmin_pure(&sd(vec![0.5, 0.5])) - 0.5).abs() < 1e-15);
        assert!(fmin_pure(&sd(vec![1.0, 0.0])).abs() < 1e-15);
        assert!((fmin_pure(&sd(vec![0.7, 0.3])) - 0.42).abs() < 1e-15);
    }

    #[test]
    fn objective_matches_post_measurement_purity() {
        let g = gamma_decompose(&bell()).unwrap();
        let v = objective(&g, &ProjectiveMeasurement::computational(2)).unwrap();
        assert!((v - 0.5).abs() < 1e-14);

        let mut rng = RandomSource::new(77);
        for case in 0..50 {
            let (m, n) = [(2, 2), (2, 3), (3, 2), (3, 3)][case % 4];
            let s = random_mixed_bipartite(m, n, &mut rng);
            let pm = ProjectiveMeasurement::from_basis(&crate::random::random_unitary(m, &mut rng)).unwrap();
            let g = gamma_decompose(&s).unwrap();
            let obj = objective(&g, &pm).unwrap();
            let post = post_measurement_state(&s, &pm).unwrap();
            assert!((obj - post.purity()).abs() < 1e-10, "case {case}");
            // both disturbances follow from the same number
            let hs = hs_disturbance(&s, &pm).unwrap();
            assert!((hs - (s.purity() - obj)).abs() < 1e-10);
            let fd = fidelity_disturbance(&s, &pm).unwrap();
            assert!((fd - (1.0 - obj / s.purity())).abs() < 1e-10);
        }
    }

    #[test]
    fn coefficient_rows_have_unit_norm() {
        let mut rng = RandomSource::new(8);
        let pm = ProjectiveMeasurement::from_basis(&crate::random::random_unitary(3, &mut rng)).unwrap();
        let a = MeasurementCoefficientMatrix::new(&pm);
        assert_eq!((a.rows(), a.cols()), (3, 9));
        for k in 0..3 {
            assert!((a.row_norm(k) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_2xn_examples() {
        let e = min_exact_2xn(&bell()).unwrap();
        assert!((e.hs_min - 0.5).abs() < 1e-14);
        assert!((e.f_min - 0.5).abs() < 1e-14);

        // nondegenerate marginal: only the z measurement is allowed and it leaves the state alone
        let cc =
            BipartiteState::from_matrix(ComplexMatrix::from_real_diag(&[0.5, 0.1, 0.2, 0.2]), 2, 2).unwrap();
        let e = min_exact_2xn(&cc).unwrap();
        assert!(e.hs_min.abs() < 1e-14 && e.f_min.abs() < 1e-14);

        // ρ^a = 1/2: measuring along x erases t_zz = 0.2
        let cc =
            BipartiteState::from_matrix(ComplexMatrix::from_real_diag(&[0.4, 0.1, 0.2, 0.3]), 2, 2).unwrap();
        let e = min_exact_2xn(&cc).unwrap();
        assert!((e.hs_min - 0.04).abs() < 1e-14);
        assert!((e.f_min - 0.04 / 0.3).abs() < 1e-14);

        let s3 = BipartiteState::new(DensityMatrix::maximally_mixed(9), 3, 3).unwrap();
        assert!(min_exact_2xn(&s3).is_err());
        assert!(fmin_paper_2xn(&s3).is_err());
    }

    #[test]
    fn exact_2xn_measurement_achieves_reported_value() {
        let mut rng = RandomSource::new(12);
        for _ in 0..20 {
            let s = random_mixed_bipartite(2, 3, &mut rng);
            let e = min_exact_2xn(&s).unwrap();
            let hs = hs_disturbance(&s, &e.measurement).unwrap();
            assert!((hs - e.hs_min).abs() < 1e-12);
            // marginal preserved
            let post = post_measurement_state(&s, &e.measurement).unwrap();
            let ra = s.partial_trace(crate::Subsystem::A);
            let pa = post.partial_trace(crate::Subsystem::A);
            assert!(ra.matrix().max_abs_diff(pa.matrix()) < 1e-12);
        }
    }

    #[test]
    fn paper_2xn_examples() {
        assert!((fmin_paper_2xn(&bell()).unwrap() - 0.5).abs() < 1e-14);
        let mm = BipartiteState::new(DensityMatrix::maximally_mixed(4), 2, 2).unwrap();
        assert!(fmin_paper_2xn(&mm).unwrap().abs() < 1e-15);
        assert!((fmin_upper_bound(&bell()).unwrap() - fmin_paper_2xn(&bell()).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let mut rng = RandomSource::new(3);
        let a = crate::state::random_density(2, &mut rng);
        let b = crate::state::random_density(2, &mut rng);
        let p = BipartiteState::product(&a, &b).unwrap();
        assert!(concurrence(&p).unwrap() < 1e-7);
        let s3 = BipartiteState::new(DensityMatrix::maximally_mixed(6), 2, 3).unwrap();
        assert!(concurrence(&s3).is_err());
    }

    #[test]
    fn measurement_validation() {
        let bad = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(ProjectiveMeasurement::from_basis(&bad).is_err());
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        assert!(ProjectiveMeasurement::from_projectors(vec![p0.clone(), p1]).is_ok());
        assert!(ProjectiveMeasurement::from_projectors(vec![p0.clone(), p0]).is_err());
    }
}
