//! Measurement-induced nonlocality for bipartite quantum states.
//!
//! The crate computes three correlation measures of a bipartite density
//! matrix `ρ` on `H_a ⊗ H_b`:
//!
//! * the Hilbert–Schmidt MIN, the largest squared Hilbert–Schmidt distance
//!   between `ρ` and its image under a von Neumann measurement on `a` that
//!   leaves the marginal `ρ^a` untouched;
//! * the fidelity MIN, the same maximisation with the squared sine metric
//!   `1 − F(ρ, σ)`, `F(ρ, σ) = tr(ρσ)² / (tr ρ² tr σ²)`;
//! * the Wootters concurrence (two qubits only).
//!
//! Closed forms (pure states, `2 × n` states, the eigenvalue upper bound,
//! isotropic and Werner families, X states under noise) sit next to a
//! brute-force measurement optimiser in [`optimizer`] that validates them.
//! [`channels`] evolves two-qubit states under amplitude damping,
//! depolarizing and generalized amplitude damping noise.
//!
//! ```
//! use qmin::{families, measures};
//!
//! let bell = families::pure_alpha(0.5).unwrap();
//! let exact = measures::min_exact_2xn(&bell).unwrap();
//! assert!((exact.f_min - 0.5).abs() < 1e-12);
//! assert!((measures::concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod basis;
pub mod channels;
pub mod cli;
pub mod config;
pub mod eigen;
pub mod error;
pub mod families;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod optimizer;
pub mod random;
pub mod state;
pub mod verify;

pub use error::{Error, Result, StateViolation, ViolationKind};
pub use linalg::{ComplexMatrix, C64};
pub use state::{BipartiteState, DensityMatrix, Subsystem};
