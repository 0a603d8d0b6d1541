//! Orthonormal Hermitian operator bases and the Γ-matrix expansion
//! `ρ = Σ γ_ij X_i ⊗ Y_j`.
//!
//! The basis for dimension `d` is `X_0 = 1/√d` followed by the generalized
//! Gell-Mann matrices scaled by `1/√2`: the symmetric family
//! `(|j⟩⟨k| + |k⟩⟨j|)/√2`, the antisymmetric family
//! `(−i|j⟩⟨k| + i|k⟩⟨j|)/√2` (both over `j < k` in lexicographic order), then
//! the diagonal family `(Σ_{j<l} |j⟩⟨j| − l|l⟩⟨l|)/√(l(l+1))` for
//! `l = 1, …, d−1`. For `d = 2` this is `{1, σx, σy, σz}/√2`.

use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, I, ZERO};
use crate::state::BipartiteState;

#[derive(Debug, Clone)]
pub struct OperatorBasis {
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

pub fn orthonormal_hermitian_basis(d: usize) -> OperatorBasis {
    assert!(d >= 2, "operator basis needs d >= 2");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut ops = Vec::with_capacity(d * d);
    ops.push(ComplexMatrix::identity(d).scale_re(1.0 / (d as f64).sqrt()));

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| ((j + 1)..d).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = C64::new(s, 0.0);
        m[(k, j)] = C64::new(s, 0.0);
        ops.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = -I * s;
        m[(k, j)] = I * s;
        ops.push(m);
    }
    for l in 1..d {
        let w = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = C64::new(w, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * w, 0.0);
        ops.push(m);
    }
    OperatorBasis { dim: d, ops }
}

/// Expansion coefficients of a bipartite state.
///
/// With `X_0 = 1/√m`, `Y_0 = 1/√n`:
/// `γ_00 = 1/√(mn)`, `x_i = γ_i0 = tr(ρ X_i⊗1)/√n`,
/// `y_j = γ_0j = tr(ρ 1⊗Y_j)/√m`, `t_ij = tr(ρ X_i⊗Y_j)` for `i, j ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaDecomposition {
    pub m: usize,
    pub n: usize,
    pub gamma00: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Row-major `(m²−1) × (n²−1)`.
    pub t: Vec<f64>,
    /// `‖Γ‖² = 1/(mn) + yᵗy + tr(xxᵗ + TTᵗ)`.
    pub gamma_norm_sq: f64,
}

impl GammaDecomposition {
    pub fn t_at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.n * self.n - 1) + j]
    }

    /// Full Γ entry, `0 ≤ i < m²`, `0 ≤ j < n²`.
    pub fn gamma(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.gamma00,
            (i, 0) => self.x[i - 1],
            (0, j) => self.y[j - 1],
            (i, j) => self.t_at(i - 1, j - 1),
        }
    }

    pub fn x_norm(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `TTᵗ`, `(m²−1) × (m²−1)`.
    pub fn t_gram(&self) -> ComplexMatrix {
        let (rows, cols) = (self.m * self.m - 1, self.n * self.n - 1);
        ComplexMatrix::from_fn(rows, rows, |i, k| {
            let s: f64 = (0..cols).map(|j| self.t_at(i, j) * self.t_at(k, j)).sum();
            C64::new(s, 0.0)
        })
    }

    /// `xxᵗ + TTᵗ`, the matrix whose spectrum drives every closed form.
    pub fn correlation_gram(&self) -> ComplexMatrix {
        let tt = self.t_gram();
        ComplexMatrix::from_fn(tt.rows(), tt.cols(), |i, k| {
            tt[(i, k)] + C64::new(self.x[i] * self.x[k], 0.0)
        })
    }

    /// `1/(mn) + yᵗy + tr(xxᵗ + TTᵗ)` recomputed from the parts.
    pub fn norm_sq_from_parts(&self) -> f64 {
        1.0 / (self.m * self.n) as f64
            + self.y.iter().map(|v| v * v).sum::<f64>()
            + self.x.iter().map(|v| v * v).sum::<f64>()
            + self.t.iter().map(|v| v * v).sum::<f64>()
    }
}

pub fn gamma_decompose(s: &BipartiteState) -> Result<GammaDecomposition> {
    let (m, n) = (s.dim_a(), s.dim_b());
    let xb = orthonormal_hermitian_basis(m);
    let yb = orthonormal_hermitian_basis(n);
    let r = s.matrix();

    let mut full = vec![0.0; m * m * n * n];
    let mut worst_imag: f64 = 0.0;
    for (i, xi) in xb.ops().iter().enumerate() {
        // K_i[b, b'] = Σ_{a,a'} ρ[(a,b),(a',b')] X_i[a', a]
        let k = ComplexMatrix::from_fn(n, n, |b, bp| {
            let mut acc = ZERO;
            for a in 0..m {
                for ap in 0..m {
                    let xv = xi[(ap, a)];
                    if xv != ZERO {
                        acc += r[(a * n + b, ap * n + bp)] * xv;
                    }
                }
            }
            acc
        });
        for (j, yj) in yb.ops().iter().enumerate() {
            let g = k.trace_product(yj);
            worst_imag = worst_imag.max(g.im.abs());
            full[i * n * n + j] = g.re;
        }
    }
    if worst_imag > TOLERANCES.gamma_imaginary {
        return Err(Error::Inconsistent(format!(
            "Gamma coefficient with imaginary part {worst_imag:.3e}"
        )));
    }

    let nn = n * n;
    let x: Vec<f64> = (1..m * m).map(|i| full[i * nn]).collect();
    let y: Vec<f64> = (1..nn).map(|j| full[j]).collect();
    let t: Vec<f64> = (1..m * m)
        .flat_map(|i| (1..nn).map(move |j| (i, j)))
        .map(|(i, j)| full[i * nn + j])
        .collect();
    let mut g = GammaDecomposition {
        m,
        n,
        gamma00: 1.0 / ((m * n) as f64).sqrt(),
        x,
        y,
        t,
        gamma_norm_sq: 0.0,
    };
    g.gamma_norm_sq = g.norm_sq_from_parts();
    Ok(g)
}

/// `Σ γ_ij X_i ⊗ Y_j`, validated as a density matrix.
pub fn reconstruct(g: &GammaDecomposition) -> Result<BipartiteState> {
    let (m, n) = (g.m, g.n);
    if g.x.len() != m * m - 1 || g.y.len() != n * n - 1 || g.t.len() != (m * m - 1) * (n * n - 1) {
        return Err(Error::DimensionMismatch("Gamma parts do not match m, n".into()));
    }
    let xb = orthonormal_hermitian_basis(m);
    let yb = orthonormal_hermitian_basis(n);
    let d = m * n;
    let mut out = ComplexMatrix::zeros(d, d);
    for (i, xi) in xb.ops().iter().enumerate() {
        for (j, yj) in yb.ops().iter().enumerate() {
            let c = g.gamma(i, j);
            if c == 0.0 {
                continue;
            }
            for a in 0..m {
                for ap in 0..m {
                    let xv = xi[(a, ap)];
                    if xv == ZERO {
                        continue;
                    }
                    for b in 0..n {
                        for bp in 0..n {
                            out[(a * n + b, ap * n + bp)] += xv * yj[(b, bp)] * c;
                        }
                    }
                }
            }
        }
    }
    BipartiteState::from_matrix(out, m, n)
}

/// `tr(A† B)`, the Hilbert–Schmidt inner product.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_x, pauli_y, pauli_z};
    use crate::state::DensityMatrix;

    #[test]
    fn qubit_basis_is_scaled_pauli() {
        let b = orthonormal_hermitian_basis(2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
        for (op, e) in b.ops().iter().zip(expect) {
            assert!(op.max_abs_diff(&e.scale_re(s)) < 1e-15);
        }
    }

    #[test]
    fn orthonormal_in_several_dimensions() {
        for d in 2..=5 {
            let b = orthonormal_hermitian_basis(d);
            assert_eq!(b.len(), d * d);
            let mut norm_sum = 0.0;
            for (k, xk) in b.ops().iter().enumerate() {
                assert!(xk.hermiticity_defect() < 1e-12);
                norm_sum += xk.trace_product(xk).re;
                for (l, xl) in b.ops().iter().enumerate() {
                    let ip = hs_inner(xk, xl);
                    let want = if k == l { 1.0 } else { 0.0 };
                    assert!((ip - C64::new(want, 0.0)).norm() < 1e-12, "d={d} ({k},{l})");
                }
            }
            assert!((norm_sum - (d * d) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_decomposition() {
        let s = BipartiteState::new(DensityMatrix::maximally_mixed(4), 2, 2).unwrap();
        let g = gamma_decompose(&s).unwrap();
        assert!(g.x.iter().chain(&g.y).chain(&g.t).all(|v| v.abs() < 1e-15));
        assert!((g.gamma_norm_sq - 0.25).abs() < 1e-15);
    }

    #[test]
    fn bell_decomposition() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0)];
        let bell = BipartiteState::from_pure(&psi, 2, 2).unwrap();
        let g = gamma_decompose(&bell).unwrap();
        // t_ij = tr(ρ σ_i⊗σ_j)/2 with ⟨σxσx⟩ = 1, ⟨σyσy⟩ = −1, ⟨σzσz⟩ = 1
        let want = [0.5, 0.0, 0.0, 0.0, -0.5, 0.0, 0.0, 0.0, 0.5];
        for (a, b) in g.t.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(g.x_norm() < 1e-15);
        assert!((g.gamma_norm_sq - 1.0).abs() < 1e-14);

        let back = reconstruct(&g).unwrap();
        assert!(back.matrix().max_abs_diff(bell.matrix()) < 1e-14);
    }

    #[test]
    fn zero_coefficients_reconstruct_to_identity() {
        let g = GammaDecomposition {
            m: 2,
            n: 3,
            gamma00: 1.0 / 6f64.sqrt(),
            x: vec![0.0; 3],
            y: vec![0.0; 8],
            t: vec![0.0; 24],
            gamma_norm_sq: 1.0 / 6.0,
        };
        let s = reconstruct(&g).unwrap();
        assert!(
            s.matrix()
                .max_abs_diff(&ComplexMatrix::identity(6).scale_re(1.0 / 6.0))
                < 1e-15
        );
    }

    #[test]
    fn inconsistent_coefficients_fail_validation() {
        let mut g =
            gamma_decompose(&BipartiteState::new(DensityMatrix::maximally_mixed(4), 2, 2).unwrap()).unwrap();
        g.x[2] = 3.0;
        assert!(matches!(reconstruct(&g), Err(Error::InvalidState(_))));
    }
}
