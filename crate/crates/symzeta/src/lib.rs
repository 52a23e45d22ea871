//! Evaluation and numerical verification of the symmetric triple zeta function
//!
//! ```text
//! ζ_S(s₁,s₂,s₃) = Σ_{n₁,n₂,n₃ ≥ 1} 1 / ((n₁+n₂)^s₁ (n₂+n₃)^s₂ (n₃+n₁)^s₃)
//! ```
//!
//! and of the family of lattice sums, nested harmonic sums, and companion
//! integrals attached to it. The crate evaluates everything at extended
//! precision (40 decimal digits by default) and cross-checks each closed-form
//! identity, residue, and asymptotic expansion against an independent route:
//!
//! * [`numerics`] — extended-precision reals (`Real`), exact rationals
//!   (`Rat`), compensated summation, and the constants π and log 2.
//! * [`specials`] — ζ(n) for integer n ≥ 2, the Euler constant γ, the
//!   dilogarithm Li₂ on [0, 1/2], and the table of derived constants
//!   (π²/24, π²/12, π²/4, Li₂(1/2), …).
//! * [`sums`] — harmonic numbers, Euler–Maclaurin power-sum bound checks,
//!   the nested sums M(k), N₁(k), N₂(k), N₃(k), H(k), the triple lattice
//!   sum S(k) with its exact reduction S(k) = ½H_k³ − (3/2)H(k), the
//!   2^(−q)-weighted double sums, and the alternating double sum.
//! * [`quad`] — adaptive Gauss–Kronrod quadrature, the 2-D dilogarithm
//!   integral (= π²/24), the 1-D reduced integral J(k), the triple integral
//!   I₃(k) over [1,k+1]³, and closed-form product integrals.
//! * [`zeta`] — truncated lattice evaluation of ζ_S in its convergence
//!   region with a rigorous tail bound, and the residue π²/4 at (1,1,1).
//! * [`verify`] — the verification harness: f(k) = S(k) − I₃(k), its limit
//!   (3/2)ζ(2)γ + ζ(3)/8, and a registry of machine-checkable reports for
//!   every identity and asymptotic expansion.
//!
//! The `symzeta` binary exposes all of this behind a small CLI; the
//! crate-level `examples/` directory has one runnable example per
//! capability.

pub mod numerics;
pub mod quad;
pub mod specials;
pub mod sums;
pub mod verify;
pub mod zeta;

pub use numerics::{compensated_sum, log2_const, pi_const, real_of_rational};
pub use numerics::{Rat, Real, SumResult, DEFAULT_DIGITS, MIN_DIGITS};

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precision below [`MIN_DIGITS`] decimal digits was requested.
    #[error("working precision must be at least {MIN_DIGITS} decimal digits, got {0}")]
    PrecisionTooLow(u32),
    /// An argument lies outside the domain an operation supports.
    #[error("domain error: {0}")]
    Domain(String),
    /// Adaptive quadrature exceeded its panel budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    /// The exponent triple lies outside the convergence region of ζ_S.
    #[error("divergent arguments: {0}")]
    Divergent(String),
    /// `run_check` was asked for a name that is not in the registry.
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    /// A fit was requested with fewer grid points than model parameters.
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
