//! Numerical tolerances shared by every module.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Entrywise `|h - h†|` accepted as Hermitian.
    pub hermitian: f64,
    /// `|tr ρ - 1|` accepted for a density matrix.
    pub trace: f64,
    /// Smallest eigenvalue accepted is `-positivity`.
    pub positivity: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm drops below this
    /// (relative to `max(1, ‖H‖_F)`).
    pub jacobi_off_diagonal: f64,
    pub jacobi_max_sweeps: usize,
    /// Imaginary parts of Γ coefficients below this are dropped.
    pub gamma_imaginary: f64,
    /// Below this `‖x‖` the marginal of a `2 × n` state counts as maximally mixed.
    pub bloch_zero: f64,
    /// Eigenvalue gap separating blocks of the marginal spectrum.
    pub eigenvalue_gap: f64,
    /// Projector identities `Π² = Π`, `Π_k Π_l = 0`, `Σ Π = I`.
    pub projector: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    hermitian: 1e-10,
    trace: 1e-10,
    positivity: 1e-10,
    jacobi_off_diagonal: 1e-12,
    jacobi_max_sweeps: 100,
    gamma_imaginary: 1e-10,
    bloch_zero: 1e-9,
    eigenvalue_gap: 1e-8,
    projector: 1e-10,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}
