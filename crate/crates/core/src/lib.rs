//! Exact continued fractions of √d and the Diophantine equations they solve.
//!
//! * [`cf_engine`]: the periodic expansion of √d, its complete quotients
//!   `(u_n + √d)/v_n` and its convergents.
//! * [`quadratics`]: canonical quadratic surds, conjugation, reducedness,
//!   purely periodic expansions and period reversal.
//! * [`pell_solver`]: `x² − d·y² = m` for `1 ≤ |m| < √d`, including the
//!   Pell–Fermat equation `m = 1`.
//! * [`ab_solver`]: `a·x² − b·y² = 1` decided from the midpoint of the
//!   period of √(ab).
//! * [`oracle`]: brute-force searches used to validate the solvers.
//!
//! All arithmetic on convergents is arbitrary precision.

pub mod ab_solver;
pub mod cf_engine;
pub mod error;
pub mod oracle;
pub mod pell_solver;
pub mod quadratics;

pub use ab_solver::{
    check_corollary21, enumerate_ab, solve_ab, AbProblem, AbSolvable, AbVerdict, NoSolutionReason,
    Orientation, PellCase,
};
pub use cf_engine::{expand_sqrt, Convergent, Convergents, SurdExpansion};
pub use error::{Error, Result};
pub use oracle::{Equation, Hit, SearchReport};
pub use pell_solver::{
    enumerate_family, residue_sets, solve_pell, solve_pell_general, Branch, Solution,
    SolutionFamily,
};
pub use quadratics::QuadraticSurd;

pub use num_bigint::{BigInt, BigUint};
