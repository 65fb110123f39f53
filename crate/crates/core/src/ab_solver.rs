//! Solutions of `a·x² − b·y² = 1` for coprime `a, b`.
//!
//! With `d = a·b` nonsquare, `T` the period of √d and `N = T/2`:
//!
//! * `a < b`: solvable iff `T ≡ 0 (mod 4)`, `v_N = a` and `v_N | u_N`; the
//!   solutions are `(p_{N−1+ℓT}/a, q_{N−1+ℓT})`.
//! * `b < a`: solvable iff `T ≡ 2 (mod 4)`, `v_N = b` and `v_N | u_N`; the
//!   solutions are `(q_{N−1+ℓT}, p_{N−1+ℓT}/b)`.
//!
//! An odd period rules out solutions. The three conditions are checked in
//! that order so the reported failure reason is deterministic. When `a = 1`
//! or `b = 1` the equation is a Pell equation and is delegated.
//!
//! The equation `a·x² − b·y² = −1` is `b·y² − a·x² = 1`: solve `(b, a)` and
//! swap coordinates.
//!
//! Matthews' alternative criterion via the expansion of √(b/a) is not
//! implemented.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cf_engine::{expand_sqrt, is_perfect_square, Convergents, SurdExpansion};
use crate::error::{Error, Result};
use crate::pell_solver::{solve_pell_general, Branch, FamilySolutions, Solution, SolutionFamily};

/// `a·x² − b·y² = 1` with `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbProblem {
    a: BigUint,
    b: BigUint,
    d: BigUint,
}

impl AbProblem {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() || b.is_zero() || !a.gcd(&b).is_one() {
            return Err(Error::NotCoprime { a, b });
        }
        let d = &a * &b;
        Ok(AbProblem { a, b, d })
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoSolutionReason {
    /// `a, b ≥ 2` with `a·b` a square (or `b = 1` with `a ≥ 4` a square).
    PerfectSquareAB,
    OddPeriod,
    /// `T mod 4` does not match the orientation of `a` and `b`.
    PeriodParityMismatch,
    MidpointValueMismatch,
    MidpointDivisibilityFails,
}

impl NoSolutionReason {
    pub fn code(&self) -> &'static str {
        match self {
            NoSolutionReason::PerfectSquareAB => "PerfectSquareAB",
            NoSolutionReason::OddPeriod => "OddPeriod",
            NoSolutionReason::PeriodParityMismatch => "PeriodParityMismatch",
            NoSolutionReason::MidpointValueMismatch => "MidpointValueMismatch",
            NoSolutionReason::MidpointDivisibilityFails => "MidpointDivisibilityFails",
        }
    }
}

impl fmt::Display for NoSolutionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Which coordinate comes from the divided numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `a < b`: `x = p/a`, `y = q`.
    DivideX,
    /// `b < a`: `x = q`, `y = p/b`.
    DivideY,
}

#[derive(Debug, Clone)]
pub struct AbSolvable {
    pub problem: AbProblem,
    pub expansion: Arc<SurdExpansion>,
    /// Start `N = T/2`, stride `T`.
    pub branch: Branch,
    pub divisor: BigUint,
    pub orientation: Orientation,
}

#[derive(Debug, Clone)]
pub enum PellCase {
    /// `a = 1`: `x² − b·y² = 1`.
    AIsOne(SolutionFamily),
    /// `b = 1`: `y² − a·x² = −1`, the family is in `(y, x)` coordinates.
    BIsOne(SolutionFamily),
    /// `a = 1` and `b` a perfect square (this includes `a = b = 1`): the
    /// only solution is `(1, 0)`.
    TrivialOnly,
}

#[derive(Debug, Clone)]
pub enum AbVerdict {
    Solvable(AbSolvable),
    NoSolution(NoSolutionReason),
    PellCase(PellCase),
}

impl AbVerdict {
    pub fn is_solvable(&self) -> bool {
        match self {
            AbVerdict::Solvable(_) => true,
            AbVerdict::NoSolution(_) => false,
            AbVerdict::PellCase(PellCase::BIsOne(f)) => !f.is_empty(),
            AbVerdict::PellCase(_) => true,
        }
    }

    /// Lazy stream of all solutions in increasing `x`; empty for
    /// `NoSolution`.
    pub fn solutions(&self) -> AbSolutions {
        match self {
            AbVerdict::Solvable(s) => AbSolutions::Midpoint {
                convergents: s.expansion.convergents(),
                solvable: s.clone(),
            },
            AbVerdict::NoSolution(_) => AbSolutions::Done,
            AbVerdict::PellCase(PellCase::AIsOne(f)) => AbSolutions::Pell {
                inner: f.solutions(true, false),
                swap: false,
                problem: AbProblem::new(1u32, f.d().clone()).expect("1 is coprime to b"),
            },
            AbVerdict::PellCase(PellCase::BIsOne(f)) => AbSolutions::Pell {
                inner: f.solutions(false, false),
                swap: true,
                problem: AbProblem::new(f.d().clone(), 1u32).expect("a is coprime to 1"),
            },
            AbVerdict::PellCase(PellCase::TrivialOnly) => AbSolutions::Trivial,
        }
    }
}

/// Decides `a·x² − b·y² = 1`.
pub fn solve_ab(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Result<AbVerdict> {
    let problem = AbProblem::new(a, b)?;
    let (a, b) = (problem.a.clone(), problem.b.clone());

    if a.is_one() {
        if is_perfect_square(&b) {
            return Ok(AbVerdict::PellCase(PellCase::TrivialOnly));
        }
        let family = solve_pell_general(b, 1)?;
        return Ok(AbVerdict::PellCase(PellCase::AIsOne(family)));
    }
    if b.is_one() {
        if is_perfect_square(&a) {
            return Ok(AbVerdict::NoSolution(NoSolutionReason::PerfectSquareAB));
        }
        let family = solve_pell_general(a, -1)?;
        return Ok(AbVerdict::PellCase(PellCase::BIsOne(family)));
    }
    if is_perfect_square(&problem.d) {
        return Ok(AbVerdict::NoSolution(NoSolutionReason::PerfectSquareAB));
    }

    let expansion = expand_sqrt(problem.d.clone())?;
    let t = expansion.period_len();
    if t % 2 == 1 {
        return Ok(AbVerdict::NoSolution(NoSolutionReason::OddPeriod));
    }
    let n = t / 2;
    let (orientation, divisor, residue) = if a < b {
        (Orientation::DivideX, a, 0)
    } else {
        (Orientation::DivideY, b, 2)
    };
    if t % 4 != residue {
        return Ok(AbVerdict::NoSolution(NoSolutionReason::PeriodParityMismatch));
    }
    let (u_n, v_n) = expansion.uv_at(n);
    if *v_n != divisor {
        return Ok(AbVerdict::NoSolution(NoSolutionReason::MidpointValueMismatch));
    }
    if !u_n.is_multiple_of(v_n) {
        return Ok(AbVerdict::NoSolution(NoSolutionReason::MidpointDivisibilityFails));
    }
    Ok(AbVerdict::Solvable(AbSolvable {
        problem,
        expansion: Arc::new(expansion),
        branch: Branch { start: n, stride: t },
        divisor,
        orientation,
    }))
}

/// The first `count` solutions of a solvable verdict.
pub fn enumerate_ab(verdict: &AbVerdict, count: usize) -> Result<Vec<Solution>> {
    if let AbVerdict::NoSolution(_) = verdict {
        return Err(Error::NotSolvable);
    }
    verdict.solutions().take(count).collect()
}

/// Cross-check for the odd-divisor case, where the midpoint divisibility
/// condition is automatic.
///
/// Returns `Some(v_N == a)` when `2 ≤ a < b`, `a` odd, `a·b` nonsquare and
/// `T ≡ 0 (mod 4)`; symmetrically `Some(v_N == b)` when `2 ≤ b < a`, `b`
/// odd and `T ≡ 2 (mod 4)`. Otherwise `None`.
pub fn check_corollary21(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Option<bool> {
    let problem = AbProblem::new(a, b).ok()?;
    let (a, b) = (problem.a(), problem.b());
    let two = BigUint::from(2u32);
    let (small, residue) = if a < b { (a, 0) } else { (b, 2) };
    if *small < two || small.is_even() || is_perfect_square(problem.d()) {
        return None;
    }
    let expansion = expand_sqrt(problem.d().clone()).ok()?;
    let t = expansion.period_len();
    if t % 2 == 1 || t % 4 != residue {
        return None;
    }
    Some(expansion.uv_at(t / 2).1 == small)
}

#[derive(Debug, Clone)]
pub enum AbSolutions {
    Midpoint {
        convergents: Convergents,
        solvable: AbSolvable,
    },
    Pell {
        inner: FamilySolutions,
        swap: bool,
        problem: AbProblem,
    },
    Trivial,
    Done,
}

impl Iterator for AbSolutions {
    type Item = Result<Solution>;

    fn next(&mut self) -> Option<Result<Solution>> {
        match self {
            AbSolutions::Done => None,
            AbSolutions::Trivial => {
                *self = AbSolutions::Done;
                Some(Ok(Solution::ab(
                    BigUint::one(),
                    BigUint::zero(),
                    &BigUint::one(),
                    &BigUint::one(),
                )
                .expect("1 - 0 = 1")))
            }
            AbSolutions::Pell {
                inner,
                swap,
                problem,
            } => {
                let (x, y) = inner.next()?.into_parts();
                let (x, y) = if *swap { (y, x) } else { (x, y) };
                Some(Solution::ab(x, y, problem.a(), problem.b()))
            }
            AbSolutions::Midpoint {
                convergents,
                solvable,
            } => loop {
                let c = convergents.next()?;
                let index = c.index as u64;
                if !solvable.branch.contains_index(index) {
                    continue;
                }
                let (p_div, rem) = c.p.div_rem(&solvable.divisor);
                if !rem.is_zero() {
                    let err = Error::InternalDivisibility {
                        index,
                        divisor: solvable.divisor.clone(),
                    };
                    *self = AbSolutions::Done;
                    return Some(Err(err));
                }
                let (x, y) = match solvable.orientation {
                    Orientation::DivideX => (p_div, c.q),
                    Orientation::DivideY => (c.q, p_div),
                };
                return Some(Solution::ab(x, y, solvable.problem.a(), solvable.problem.b()));
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(sols: &[Solution]) -> Vec<(u64, u64)> {
        sols.iter()
            .map(|s| (u64::try_from(s.x()).unwrap(), u64::try_from(s.y()).unwrap()))
            .collect()
    }

    fn reason(a: u64, b: u64) -> Option<NoSolutionReason> {
        match solve_ab(a, b).unwrap() {
            AbVerdict::NoSolution(r) => Some(r),
            _ => None,
        }
    }

    #[test]
    fn solvable_examples() {
        let v = solve_ab(18u64, 23u64).unwrap();
        let AbVerdict::Solvable(s) = &v else {
            panic!("18, 23 should be solvable");
        };
        assert_eq!(s.branch, Branch { start: 4, stride: 8 });
        assert_eq!(s.orientation, Orientation::DivideX);
        assert_eq!(
            pairs(&enumerate_ab(&v, 3).unwrap()),
            [(26, 23), (1_265_394, 1_119_433), (61_586_725_954, 54_482_804_087)]
        );

        let v = solve_ab(25u64, 19u64).unwrap();
        assert_eq!(
            pairs(&enumerate_ab(&v, 3).unwrap()),
            [(34, 39), (3_930_298, 4_508_361), (454_334_588_170, 521_157_514_839)]
        );
        assert!(enumerate_ab(&v, 0).unwrap().is_empty());
    }

    #[test]
    fn failure_reasons() {
        use NoSolutionReason::*;
        assert_eq!(reason(19, 25), Some(PeriodParityMismatch));
        assert_eq!(reason(18, 25), Some(MidpointValueMismatch));
        assert_eq!(reason(16, 19), Some(MidpointDivisibilityFails));
        assert_eq!(reason(23, 18), Some(PeriodParityMismatch));
        assert_eq!(reason(4, 9), Some(PerfectSquareAB));
        // √6 = [2; 2, 4], T = 2; √15 = [3; 1, 6]
        assert_eq!(reason(2, 3), Some(PeriodParityMismatch));
        // √13 has period 5
        assert!(reason(13, 1).is_none());
        assert!(matches!(
            enumerate_ab(&solve_ab(16u64, 19u64).unwrap(), 1),
            Err(Error::NotSolvable)
        ));
    }

    #[test]
    fn odd_period() {
        // 2·13 = 26, √26 = [5; 10], T = 1
        assert_eq!(reason(2, 13), Some(NoSolutionReason::OddPeriod));
    }

    #[test]
    fn not_coprime() {
        assert!(matches!(solve_ab(18u64, 24u64), Err(Error::NotCoprime { .. })));
        assert!(matches!(solve_ab(0u64, 5u64), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn pell_cases() {
        let v = solve_ab(1u64, 21u64).unwrap();
        assert!(matches!(v, AbVerdict::PellCase(PellCase::AIsOne(_))));
        assert_eq!(pairs(&enumerate_ab(&v, 2).unwrap()), [(1, 0), (55, 12)]);

        // 2x² − y² = 1 ⇔ y² − 2x² = −1
        let v = solve_ab(2u64, 1u64).unwrap();
        assert_eq!(pairs(&enumerate_ab(&v, 3).unwrap()), [(1, 1), (5, 7), (29, 41)]);

        // 3x² − y² = 1 has no solution: y² ≡ −1 (mod 3)
        let v = solve_ab(3u64, 1u64).unwrap();
        assert!(!v.is_solvable());
        assert!(enumerate_ab(&v, 3).unwrap().is_empty());

        let v = solve_ab(1u64, 1u64).unwrap();
        assert!(matches!(v, AbVerdict::PellCase(PellCase::TrivialOnly)));
        assert_eq!(pairs(&enumerate_ab(&v, 3).unwrap()), [(1, 0)]);
        assert_eq!(pairs(&enumerate_ab(&solve_ab(1u64, 9u64).unwrap(), 3).unwrap()), [(1, 0)]);

        assert_eq!(reason(9, 1), Some(NoSolutionReason::PerfectSquareAB));
    }

    #[test]
    fn corollary_cross_check() {
        assert_eq!(check_corollary21(25u64, 19u64), Some(true));
        assert_eq!(check_corollary21(16u64, 19u64), None);
        // √90 = [9; 2, 18], T = 2 ≢ 0 (mod 4)
        assert_eq!(check_corollary21(9u64, 10u64), None);
        assert_eq!(check_corollary21(18u64, 24u64), None);
    }
}
