//! Construction and verification of rank-stability certificates for Mordell
//! curves y² = x³ + n over Q(ω).
//!
//! Given a quadratic extension K = Q(ω, √q), the library produces an explicit
//! twist parameterized by a prime-triple solution of p₁ + βp₂ = p₃, a
//! non-torsion rational point on it obtained from the Σ-unit identity
//! a + 2rb = 1, and a machine-checkable certificate of every unconditional
//! step. The one analytic input — vanishing of an isogeny Selmer group for
//! the companion twist — is consumed as an explicitly flagged oracle
//! assertion, never computed.
//!
//! Modules follow the pipeline order:
//! - [`eisenstein`]: exact arithmetic in Z[ω] and Q(ω), residue rings,
//!   power-residue symbols, local power tests;
//! - [`quad_ext`]: the extension K/F, prime splitting, Σ-sets, inert
//!   residue targets and the unit-conic solver;
//! - [`curve`]: Mordell models, the chord-tangent group law, the ζ-action
//!   and φ = 1 − ζ, point counts over residue fields, torsion bounds, and
//!   quadratic-twist point transport;
//! - [`selmer`]: silent-prime classification and the per-prime local
//!   condition report;
//! - [`sieve`]: the congruence system and the parallel triple sieve;
//! - [`construction`]: the twisted-Fermat cover and the positive-rank
//!   witness;
//! - [`certificate`] / [`pipeline`]: certificate assembly, status algebra,
//!   and the independent re-verifier.

pub mod certificate;
pub mod construction;
pub mod curve;
pub mod eisenstein;
pub mod pipeline;
pub mod quad_ext;
pub mod selmer;
pub mod sieve;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("{0}")]
    ZeroInput(&'static str),
    #[error("operation undefined for unit input {0}")]
    UnitInput(String),
    #[error("element is not coprime to λ")]
    NotCoprimeToLambda,
    #[error("{0} is not a prime element")]
    NotPrime(String),
    #[error("norm too large for trial-division factorization: {0}")]
    NormTooLarge(String),
    #[error("cannot parse Eisenstein integer from {0:?}")]
    ParseEisInt(String),
    #[error("bad modulus: {0}")]
    BadModulus(&'static str),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("inconsistent congruence constraints: {0}")]
    CrtConflict(String),
    #[error("residue symbol undefined ({0})")]
    SymbolAtRamifiedLocus(&'static str),
    #[error("unsupported power-residue exponent {0}; only 2 and 3 arise here")]
    UnsupportedExponent(u32),
    #[error("reduction failed: {0}")]
    BadReduction(String),
    #[error("trivial extension: {0} is a square in Q(ω)")]
    TrivialExtension(String),
    #[error("unsupported instance: λ ramifies in K = Q(ω, √q) for q = {0}")]
    LambdaRamified(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("point is not on the curve: {0}")]
    OffCurve(String),
    #[error("bad reduction at {0}")]
    BadReductionPrime(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("certificate schema violation: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
