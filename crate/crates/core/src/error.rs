use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The radicand is a perfect square (this includes 0 and 1), so √d is
    /// rational and has no periodic expansion. Equations with a square `d`
    /// factor over the integers and are solved by factoring instead.
    #[error("{d} is a perfect square; x^2 - {d}y^2 = m factors over the integers")]
    PerfectSquare { d: BigUint },

    /// The period search ran past its iteration cap. Lagrange's theorem
    /// guarantees termination, so this always indicates a bug.
    #[error("period of sqrt({d}) not found within {cap} steps (internal error)")]
    InternalPeriodOverflow { d: BigUint, cap: u64 },

    #[error("(u + sqrt(d))/v with u = {u}, v = {v}, d = {d}: v must divide d - u^2")]
    NormalizationRequired { d: BigUint, u: BigInt, v: BigInt },

    #[error("v must be nonzero")]
    ZeroDenominator,

    #[error("surd is not reduced")]
    NotReduced,

    /// `m` must satisfy `1 <= |m| < sqrt(d)`, tested exactly as `0 < m^2 < d`.
    #[error("m = {m} is outside 1 <= |m| < sqrt({d})")]
    MagnitudeOutOfRange { d: BigUint, m: BigInt },

    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: BigUint, b: BigUint },

    #[error("equation has no solutions")]
    NotSolvable,

    /// A convergent numerator that must be divisible by `divisor` was not.
    #[error("p_{index} is not divisible by {divisor} (internal error)")]
    InternalDivisibility { index: u64, divisor: BigUint },

    #[error("({x}, {y}) does not satisfy {equation}")]
    NotASolution {
        x: BigUint,
        y: BigUint,
        equation: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search range too large for exact 128-bit arithmetic")]
    SearchOverflow,
}
