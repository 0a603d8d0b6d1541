//! Density matrices, bipartite splits, partial traces and Schmidt
//! decompositions.
//!
//! Product basis convention: `|i⟩_a ⊗ |j⟩_b` sits at index `i·n + j`, so the
//! `a` index is the slower one. With 1-based labels the two-qubit elements
//! `ρ₁₁, ρ₁₄, ρ₂₂, ρ₄₄` are `|00⟩⟨00|, |00⟩⟨11|, |01⟩⟨01|, |11⟩⟨11|`.

use crate::config::TOLERANCES;
use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result, StateViolation, ViolationKind};
use crate::linalg::{norm, ComplexMatrix, C64, ZERO};
use crate::random::RandomSource;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, trace and positivity (in that order) and reports
    /// the first violated axiom with its magnitude.
    pub fn validate(mat: ComplexMatrix) -> std::result::Result<Self, StateViolation> {
        if !mat.is_square() {
            return Err(StateViolation {
                kind: ViolationKind::Shape,
                magnitude: (mat.rows() as f64 - mat.cols() as f64).abs(),
            });
        }
        let herm = mat.hermiticity_defect();
        if herm > TOLERANCES.hermitian {
            return Err(StateViolation {
                kind: ViolationKind::Hermiticity,
                magnitude: herm,
            });
        }
        let tr = mat.trace().expect("square");
        let trace_err = (tr - C64::new(1.0, 0.0)).norm();
        if trace_err > TOLERANCES.trace {
            return Err(StateViolation {
                kind: ViolationKind::Trace,
                magnitude: trace_err,
            });
        }
        let smallest = hermitian_eigensystem(&mat).expect("hermitian").values[0];
        if smallest < -TOLERANCES.positivity {
            return Err(StateViolation {
                kind: ViolationKind::Positivity,
                magnitude: -smallest,
            });
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|` for `ψ` renormalised to unit length.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let psi = normalized(psi)?;
        Ok(Self {
            mat: ComplexMatrix::outer(&psi),
        })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
        }
    }

    /// Skips validation; callers guarantee the axioms by construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        debug_assert!(mat.is_square());
        Self { mat }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // ρ Hermitian: tr ρ² = Σ |ρ_ij|²
        self.mat.data().iter().map(C64::norm_sqr).sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            mat: self.mat.kron(&other.mat),
        }
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        let out = u.matmul(&self.mat)?.matmul(&u.dagger())?;
        Ok(Self::from_trusted(out))
    }
}

/// Which factor of `H_a ⊗ H_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A density matrix with a declared `m × n` split.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    rho: DensityMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteState {
    pub fn new(rho: DensityMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a < 2 || dim_b < 2 {
            return Err(Error::DimensionMismatch(format!(
                "subsystems need dimension >= 2, got {dim_a}x{dim_b}"
            )));
        }
        if dim_a * dim_b != rho.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{dim_a}x{dim_b} split of a {}-dimensional state",
                rho.dim()
            )));
        }
        Ok(Self { rho, dim_a, dim_b })
    }

    pub fn from_matrix(mat: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(DensityMatrix::validate(mat)?, dim_a, dim_b)
    }

    pub fn from_pure(psi: &[C64], dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(DensityMatrix::from_pure(psi)?, dim_a, dim_b)
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new(a.tensor(b), a.dim(), b.dim())
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.rho.matrix()
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn purity(&self) -> f64 {
        self.rho.purity()
    }

    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let (m, n) = (self.dim_a, self.dim_b);
        let r = self.matrix();
        let out = match keep {
            Subsystem::A => {
                ComplexMatrix::from_fn(m, m, |i, k| (0..n).map(|j| r[(i * n + j, k * n + j)]).sum())
            }
            Subsystem::B => {
                ComplexMatrix::from_fn(n, n, |j, l| (0..m).map(|i| r[(i * n + j, i * n + l)]).sum())
            }
        };
        DensityMatrix::from_trusted(out)
    }

    /// Regroups `(a ⊗ b) ⊗ c` as `a : (b ⊗ c)`.
    pub fn append_to_b(&self, ancilla: &DensityMatrix) -> Result<Self> {
        Self::new(self.rho.tensor(ancilla), self.dim_a, self.dim_b * ancilla.dim())
    }

    /// `(U_a ⊗ U_b) ρ (U_a ⊗ U_b)†`.
    pub fn local_unitary(&self, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<Self> {
        let u = ua.kron(ub);
        Self::new(self.rho.conjugate_by(&u)?, self.dim_a, self.dim_b)
    }
}

#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending; `min(m, n)` entries summing to one.
    pub coefficients: Vec<f64>,
    /// Columns `|α_i⟩`, `m × min(m, n)`.
    pub basis_a: ComplexMatrix,
    /// Columns `|β_i⟩`, `n × min(m, n)`.
    pub basis_b: ComplexMatrix,
}

impl SchmidtDecomposition {
    /// `Σ √λ_i |α_i⟩ ⊗ |β_i⟩`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let (m, n) = (self.basis_a.rows(), self.basis_b.rows());
        let mut psi = vec![ZERO; m * n];
        for (k, &lambda) in self.coefficients.iter().enumerate() {
            let w = lambda.max(0.0).sqrt();
            for i in 0..m {
                for j in 0..n {
                    psi[i * n + j] += self.basis_a[(i, k)] * self.basis_b[(j, k)] * w;
                }
            }
        }
        psi
    }
}

/// Schmidt decomposition from the spectrum of the reduced state of `a`.
pub fn schmidt(psi: &[C64], m: usize, n: usize) -> Result<SchmidtDecomposition> {
    if psi.len() != m * n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {m}x{n} split",
            psi.len()
        )));
    }
    let len = norm(psi);
    if (len - 1.0).abs() > 1e-10 {
        return Err(Error::OutOfRange {
            name: "|psi|",
            value: len,
            range: "1 ± 1e-10",
        });
    }
    let rho_a = ComplexMatrix::from_fn(m, m, |i, k| {
        (0..n).map(|j| psi[i * n + j] * psi[k * n + j].conj()).sum()
    });
    let eig = hermitian_eigensystem(&rho_a)?;
    let r = m.min(n);

    let mut coefficients = Vec::with_capacity(r);
    let mut cols_a = Vec::with_capacity(r);
    let mut cols_b: Vec<Vec<C64>> = Vec::with_capacity(r);
    for k in (m - r..m).rev() {
        let lambda = eig.values[k].max(0.0);
        let alpha = eig.vector(k);
        // |β⟩ ∝ (⟨α| ⊗ 1)|ψ⟩
        let beta: Vec<C64> = (0..n)
            .map(|j| (0..m).map(|i| alpha[i].conj() * psi[i * n + j]).sum())
            .collect();
        coefficients.push(lambda);
        cols_a.push(alpha);
        cols_b.push(beta);
    }
    // normalise β for nonzero coefficients, complete the rest orthonormally
    for k in 0..r {
        let b = norm(&cols_b[k]);
        if coefficients[k] > 1e-14 && b > 1e-12 {
            cols_b[k].iter_mut().for_each(|z| *z /= b);
        } else {
            cols_b[k] = orthogonal_completion(&cols_b[..k], n);
        }
    }
    let total: f64 = coefficients.iter().sum();
    coefficients.iter_mut().for_each(|c| *c /= total);
    Ok(SchmidtDecomposition {
        coefficients,
        basis_a: ComplexMatrix::from_columns(&cols_a)?,
        basis_b: ComplexMatrix::from_columns(&cols_b)?,
    })
}

fn orthogonal_completion(existing: &[Vec<C64>], n: usize) -> Vec<C64> {
    for e in 0..n {
        let mut v = vec![ZERO; n];
        v[e] = C64::new(1.0, 0.0);
        for u in existing {
            let p = crate::linalg::inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= p * ui;
            }
        }
        let nv = norm(&v);
        if nv > 1e-6 {
            v.iter_mut().for_each(|z| *z /= nv);
            return v;
        }
    }
    unreachable!("fewer than n vectors always admit a completion")
}

pub fn normalized(psi: &[C64]) -> Result<Vec<C64>> {
    let n = norm(psi);
    if n <= f64::MIN_POSITIVE || !n.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(psi.iter().map(|z| z / n).collect())
}

/// Haar-random pure state vector.
pub fn random_pure_vector(d: usize, rng: &mut RandomSource) -> Vec<C64> {
    normalized(&rng.gaussian_vector(d)).expect("gaussian vector is nonzero")
}

/// Full-rank random state `G G† / tr(G G†)` with complex Ginibre `G`.
pub fn random_density(d: usize, rng: &mut RandomSource) -> DensityMatrix {
    let g = rng.gaussian_matrix(d, d);
    let w = &g * &g.dagger();
    let tr = w.trace().expect("square").re;
    let mut m = w.scale_re(1.0 / tr);
    // exact Hermiticity
    m = ComplexMatrix::from_fn(d, d, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    DensityMatrix::from_trusted(m)
}

pub fn random_mixed_bipartite(m: usize, n: usize, rng: &mut RandomSource) -> BipartiteState {
    BipartiteState::new(random_density(m * n, rng), m, n).expect("valid split")
}

pub fn random_pure_bipartite(m: usize, n: usize, rng: &mut RandomSource) -> BipartiteState {
    BipartiteState::from_pure(&random_pure_vector(m * n, rng), m, n).expect("valid split")
}

/// `½(ρ + (σy ⊗ 1) ρ* (σy ⊗ 1))` for a qubit `a`. The mirrored state has
/// Bloch vector `−x` on `a`, so the mixture has `ρ^a = 1/2` while keeping
/// part of the correlations.
pub fn balance_qubit_marginal(s: &BipartiteState) -> Result<BipartiteState> {
    if s.dim_a() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit marginal needs dim_a = 2, got {}",
            s.dim_a()
        )));
    }
    let u = crate::linalg::pauli_y().kron(&ComplexMatrix::identity(s.dim_b()));
    let mirrored = &(&u * &s.matrix().conj()) * &u;
    let mixed = (s.matrix() + &mirrored).scale_re(0.5);
    BipartiteState::new(DensityMatrix::from_trusted(mixed), 2, s.dim_b())
}
