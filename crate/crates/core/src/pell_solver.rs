//! Solutions of `x² − d·y² = m` for `1 ≤ |m| < √d`.
//!
//! Every coprime solution with `y > 0` is a convergent `p_{j−1}/q_{j−1}`
//! and `p_{j−1}² − d·q_{j−1}² = (−1)^j·v_j`. So the solution set is a
//! finite union of arithmetic progressions of convergent indices, read
//! off from the sets `E_ℓ = { j ∈ [1, T] : (−1)^j·v_j = ℓ }`:
//!
//! * `T` even: starts `N ∈ E_m`, stride `T`;
//! * `T` odd: starts `N ∈ E_m` with stride `2T`, plus starts `M + T` for
//!   `M ∈ E_{−m}`, also with stride `2T`.
//!
//! A family enumerates in increasing `y` because `q_n` increases with `n`.
//! Imprimitive solutions with `gcd(x, y) = δ` come from primitive solutions
//! of `x² − d·y² = m/δ²` scaled by `δ`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf_engine::{expand_sqrt, isqrt_exact, Convergents, SurdExpansion};
use crate::error::{Error, Result};

/// A pair of naturals checked against its equation when built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    x: BigUint,
    y: BigUint,
}

impl Solution {
    /// Checks `x² − d·y² = m`.
    pub fn pell(x: BigUint, y: BigUint, d: &BigUint, m: &BigInt) -> Result<Self> {
        let lhs = BigInt::from(&x * &x) - BigInt::from(d * &y * &y);
        if lhs != *m {
            return Err(Error::NotASolution {
                x,
                y,
                equation: format!("x^2 - {d}y^2 = {m}"),
            });
        }
        Ok(Solution { x, y })
    }

    /// Checks `a·x² − b·y² = 1`.
    pub fn ab(x: BigUint, y: BigUint, a: &BigUint, b: &BigUint) -> Result<Self> {
        let lhs = BigInt::from(a * &x * &x) - BigInt::from(b * &y * &y);
        if !lhs.is_one() {
            return Err(Error::NotASolution {
                x,
                y,
                equation: format!("{a}x^2 - {b}y^2 = 1"),
            });
        }
        Ok(Solution { x, y })
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn into_parts(self) -> (BigUint, BigUint) {
        (self.x, self.y)
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    fn scaled(&self, k: &BigUint) -> Solution {
        Solution {
            x: &self.x * k,
            y: &self.y * k,
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Convergent indices `start − 1 + k·stride` for `k = 0, 1, 2, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub start: u64,
    pub stride: u64,
}

impl Branch {
    pub fn contains_index(&self, index: u64) -> bool {
        index + 1 >= self.start && (index + 1 - self.start).is_multiple_of(self.stride)
    }

    /// The `k`-th convergent index of this branch.
    pub fn index(&self, k: u64) -> u64 {
        self.start - 1 + k * self.stride
    }
}

/// The index sets `E_m` and `E_{−m}` within one period.
pub fn residue_sets(exp: &SurdExpansion, m: &BigInt) -> Result<(Vec<u64>, Vec<u64>)> {
    check_magnitude(exp.d(), m)?;
    Ok(index_sets(exp, m))
}

/// `E_m` and `E_{−m}` without the range check on `m`.
fn index_sets(exp: &SurdExpansion, m: &BigInt) -> (Vec<u64>, Vec<u64>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (j, v) in (1u64..).zip(exp.v_seq()) {
        let signed = if j % 2 == 0 {
            BigInt::from(v.clone())
        } else {
            -BigInt::from(v.clone())
        };
        if signed == *m {
            pos.push(j);
        }
        if signed == -m {
            neg.push(j);
        }
    }
    (pos, neg)
}

fn check_magnitude(d: &BigUint, m: &BigInt) -> Result<()> {
    if m.is_zero() || m.magnitude() * m.magnitude() >= *d {
        return Err(Error::MagnitudeOutOfRange {
            d: d.clone(),
            m: m.clone(),
        });
    }
    Ok(())
}

/// All solutions of one equation `x² − d·y² = m`, described by index
/// progressions over the convergents of √d.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    expansion: Arc<SurdExpansion>,
    m: BigInt,
    branches: Vec<Branch>,
    trivial: Option<Solution>,
    e_pos: Vec<u64>,
    e_neg: Vec<u64>,
    obstruction: Option<BigUint>,
}

impl SolutionFamily {
    fn build(expansion: Arc<SurdExpansion>, m: BigInt) -> Result<Self> {
        if let Err(range_err) = check_magnitude(expansion.d(), &m) {
            // Outside the range of the convergent method we can still prove
            // emptiness when m is not a square modulo the odd part of d.
            let Some(modulus) = non_residue_witness(expansion.d(), &m) else {
                return Err(range_err);
            };
            let (e_pos, e_neg) = index_sets(&expansion, &m);
            return Ok(SolutionFamily {
                expansion,
                m,
                branches: Vec::new(),
                trivial: None,
                e_pos,
                e_neg,
                obstruction: Some(modulus),
            });
        }
        let (pos, neg) = index_sets(&expansion, &m);
        let t = expansion.period_len();
        let mut branches: Vec<Branch> = if t.is_multiple_of(2) {
            pos.iter().map(|&n| Branch { start: n, stride: t }).collect()
        } else {
            pos.iter()
                .map(|&n| Branch { start: n, stride: 2 * t })
                .chain(neg.iter().map(|&n| Branch {
                    start: n + t,
                    stride: 2 * t,
                }))
                .collect()
        };
        branches.sort();

        let trivial = match m.sign() {
            Sign::Plus => {
                let (r, square) = isqrt_exact(m.magnitude());
                square.then(|| Solution {
                    x: r,
                    y: BigUint::zero(),
                })
            }
            _ => None,
        };
        Ok(SolutionFamily {
            expansion,
            m,
            branches,
            trivial,
            e_pos: pos,
            e_neg: neg,
            obstruction: None,
        })
    }

    pub fn d(&self) -> &BigUint {
        self.expansion.d()
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn expansion(&self) -> &SurdExpansion {
        &self.expansion
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// `(√m, 0)` when `m` is a perfect square.
    pub fn trivial(&self) -> Option<&Solution> {
        self.trivial.as_ref()
    }

    /// `E_m` and `E_{−m}`.
    pub fn residue_sets(&self) -> (&[u64], &[u64]) {
        (&self.e_pos, &self.e_neg)
    }

    /// For `m² ≥ d` (outside the convergent method), an odd divisor `n` of
    /// `d` with Jacobi symbol `(m/n) = −1`. Then `x² ≡ m (mod n)` has no
    /// root, so the equation has no solutions at all.
    pub fn obstruction(&self) -> Option<&BigUint> {
        self.obstruction.as_ref()
    }

    /// True when the equation has no coprime nontrivial solution.
    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Coprime nontrivial solutions in increasing `y`.
    pub fn primitive(&self) -> PrimitiveSolutions {
        PrimitiveSolutions {
            convergents: self.expansion.convergents(),
            branches: self.branches.clone(),
            d: self.expansion.d().clone(),
            m: self.m.clone(),
        }
    }

    /// Solutions in increasing `y`, optionally with the trivial solution
    /// first and with imprimitive solutions merged in.
    pub fn solutions(&self, include_trivial: bool, include_imprimitive: bool) -> FamilySolutions {
        let mut streams = vec![Scaled {
            scale: BigUint::one(),
            inner: self.primitive(),
            head: None,
        }];
        if include_imprimitive && self.obstruction.is_none() {
            for (delta, reduced_m) in square_divisors(&self.m) {
                let sub = SolutionFamily::build(Arc::clone(&self.expansion), reduced_m)
                    .expect("m/δ² stays within range");
                streams.push(Scaled {
                    scale: delta,
                    inner: sub.primitive(),
                    head: None,
                });
            }
        }
        let trivial = if include_trivial {
            self.trivial.clone()
        } else {
            None
        };
        FamilySolutions { trivial, streams }
    }
}

/// `(δ, m/δ²)` for every `δ ≥ 2` with `δ² | m`.
fn square_divisors(m: &BigInt) -> Vec<(BigUint, BigInt)> {
    let limit = isqrt_exact(m.magnitude()).0;
    let mut out = Vec::new();
    let mut delta = BigUint::from(2u32);
    while delta <= limit {
        let sq = BigInt::from(&delta * &delta);
        if m.is_multiple_of(&sq) {
            out.push((delta.clone(), m / &sq));
        }
        delta += 1u32;
    }
    out
}

/// The odd part `n` of `d` when `n > 1` and `(m/n) = −1`.
fn non_residue_witness(d: &BigUint, m: &BigInt) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    let mut n = d.clone();
    while n.is_even() && !n.is_zero() {
        n >>= 1;
    }
    if n <= BigUint::one() {
        return None;
    }
    let residue = m.mod_floor(&BigInt::from(n.clone())).magnitude().clone();
    (jacobi(&residue, &n) == -1).then_some(n)
}

/// Jacobi symbol `(a/n)` for odd `n ≥ 1`.
pub fn jacobi(a: &BigUint, n: &BigUint) -> i8 {
    debug_assert!(n.is_odd());
    let mut a = a % n;
    let mut n = n.clone();
    let mut sign = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32_digits().first().copied().unwrap_or(0);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let a4 = (&a % 4u32).to_u32_digits().first().copied().unwrap_or(0);
        let n4 = (&n % 4u32).to_u32_digits().first().copied().unwrap_or(0);
        if a4 == 3 && n4 == 3 {
            sign = -sign;
        }
        a = &a % &n;
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Solves `x² − d·y² = m` for `1 ≤ |m| < √d`.
///
/// For larger `|m|` the only answer given is a proof of emptiness from a
/// quadratic-residue obstruction (see [`SolutionFamily::obstruction`]);
/// otherwise such `m` is rejected with [`Error::MagnitudeOutOfRange`].
pub fn solve_pell_general(d: impl Into<BigUint>, m: impl Into<BigInt>) -> Result<SolutionFamily> {
    let d = d.into();
    let m = m.into();
    let expansion = expand_sqrt(d)?;
    SolutionFamily::build(Arc::new(expansion), m)
}

/// [`solve_pell_general`] reusing an existing expansion.
pub fn family_from_expansion(exp: &SurdExpansion, m: impl Into<BigInt>) -> Result<SolutionFamily> {
    SolutionFamily::build(Arc::new(exp.clone()), m.into())
}

/// Fundamental solution of `x² − d·y² = 1` and the family of all
/// nontrivial solutions.
pub fn solve_pell(d: impl Into<BigUint>) -> Result<(Solution, SolutionFamily)> {
    let mut family = solve_pell_general(d, 1)?;
    family.trivial = None;
    let fundamental = family
        .primitive()
        .next()
        .expect("x^2 - dy^2 = 1 always has a nontrivial solution");
    Ok((fundamental, family))
}

/// The first `count` solutions of `f` in increasing `y`.
pub fn enumerate_family(
    f: &SolutionFamily,
    count: usize,
    include_trivial: bool,
    include_imprimitive: bool,
) -> Vec<Solution> {
    f.solutions(include_trivial, include_imprimitive)
        .take(count)
        .collect()
}

/// Lazy stream of coprime nontrivial solutions.
#[derive(Debug, Clone)]
pub struct PrimitiveSolutions {
    convergents: Convergents,
    branches: Vec<Branch>,
    d: BigUint,
    m: BigInt,
}

impl Iterator for PrimitiveSolutions {
    type Item = Solution;

    fn next(&mut self) -> Option<Solution> {
        if self.branches.is_empty() {
            return None;
        }
        loop {
            let c = self.convergents.next()?;
            let index = c.index as u64;
            if self.branches.iter().any(|b| b.contains_index(index)) {
                let sol = Solution::pell(c.p, c.q, &self.d, &self.m)
                    .unwrap_or_else(|e| panic!("family emitted a non-solution at R_{index}: {e}"));
                return Some(sol);
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Scaled {
    scale: BigUint,
    inner: PrimitiveSolutions,
    head: Option<Solution>,
}

impl Scaled {
    fn peek(&mut self) -> Option<&Solution> {
        if self.head.is_none() {
            self.head = self.inner.next().map(|s| s.scaled(&self.scale));
        }
        self.head.as_ref()
    }
}

/// k-way merge of scaled primitive streams, ordered by `y`.
#[derive(Debug, Clone)]
pub struct FamilySolutions {
    trivial: Option<Solution>,
    streams: Vec<Scaled>,
}

impl Iterator for FamilySolutions {
    type Item = Solution;

    fn next(&mut self) -> Option<Solution> {
        if let Some(t) = self.trivial.take() {
            return Some(t);
        }
        let mut best: Option<usize> = None;
        for i in 0..self.streams.len() {
            let Some(y) = self.streams[i].peek().map(|s| s.y.clone()) else {
                continue;
            };
            let better = match best {
                None => true,
                Some(j) => {
                    let current = self.streams[j].head.as_ref().expect("peeked");
                    y.cmp(&current.y) == Ordering::Less
                }
            };
            if better {
                best = Some(i);
            }
        }
        best.and_then(|i| self.streams[i].head.take())
    }
}

/// True when `m` is a nonnegative perfect square.
pub fn is_square_int(m: &BigInt) -> bool {
    !m.is_negative() && isqrt_exact(m.magnitude()).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(sols: &[Solution]) -> Vec<(u64, u64)> {
        sols.iter()
            .map(|s| {
                (
                    u64::try_from(s.x()).unwrap(),
                    u64::try_from(s.y()).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn residue_sets_of_21() {
        let e = expand_sqrt(21u64).unwrap();
        assert_eq!(residue_sets(&e, &1.into()).unwrap(), (vec![6], vec![]));
        assert_eq!(residue_sets(&e, &4.into()).unwrap().0, vec![2, 4]);
        assert_eq!(residue_sets(&e, &(-3).into()).unwrap().0, vec![3]);
    }

    #[test]
    fn magnitude_bounds() {
        let e = expand_sqrt(21u64).unwrap();
        for m in [0, 5, -5, 100] {
            assert!(matches!(
                residue_sets(&e, &m.into()),
                Err(Error::MagnitudeOutOfRange { .. })
            ));
        }
        assert!(residue_sets(&e, &(-4).into()).is_ok());
    }

    #[test]
    fn pell_21() {
        let f = solve_pell_general(21u64, 1).unwrap();
        assert_eq!(f.trivial().map(|s| s.to_string()).as_deref(), Some("(1, 0)"));
        let got: Vec<_> = f.primitive().take(3).collect();
        assert_eq!(pairs(&got), [(55, 12), (6049, 1320), (665_335, 145_188)]);
    }

    #[test]
    fn minus_three_over_21() {
        let f = solve_pell_general(21u64, -3).unwrap();
        assert_eq!(f.branches(), &[Branch { start: 3, stride: 6 }]);
        let got = enumerate_family(&f, 2, false, false);
        // R_2 and R_8 = 999/218
        assert_eq!(pairs(&got), [(9, 2), (999, 218)]);
    }

    #[test]
    fn seven_five_is_empty() {
        let f = solve_pell_general(7u64, 5).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.primitive().next(), None);
        assert_eq!(enumerate_family(&f, 5, true, true), vec![]);
        assert_eq!(f.obstruction(), Some(&BigUint::from(7u32)));
        assert_eq!(f.residue_sets(), (&[][..], &[][..]));
    }

    #[test]
    fn out_of_range_without_obstruction() {
        // −3 ≡ 4 = 2² (mod 7)
        assert!(matches!(
            solve_pell_general(7u64, -3),
            Err(Error::MagnitudeOutOfRange { .. })
        ));
        assert!(solve_pell_general(7u64, 0).is_err());
        // 2·5 = 10: odd part 5, 3 is a non-residue mod 5
        assert!(solve_pell_general(10u64, 13).unwrap().obstruction().is_some());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..2 * p {
                let want = if a % p == 0 {
                    0
                } else if squares.contains(&(a % p)) {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(&a.into(), &p.into()), want, "({a}/{p})");
            }
        }
        // (2/15) = (2/3)(2/5) = 1 although 2 is not a square mod 15
        assert_eq!(jacobi(&2u32.into(), &15u32.into()), 1);
    }

    #[test]
    fn two_minus_one() {
        let f = solve_pell_general(2u64, -1).unwrap();
        assert_eq!(pairs(&enumerate_family(&f, 3, false, false)), [(1, 1), (7, 5), (41, 29)]);
    }

    #[test]
    fn fundamental_solutions() {
        for (d, x, y) in [(21u64, 55u64, 12u64), (2, 3, 2), (5, 9, 4), (61, 1_766_319_049, 226_153_980)] {
            let (fund, family) = solve_pell(d).unwrap();
            assert_eq!(pairs(&[fund]), [(x, y)], "d = {d}");
            assert!(family.trivial().is_none());
        }
    }

    #[test]
    fn imprimitive_and_trivial() {
        let f = solve_pell_general(21u64, 4).unwrap();
        assert_eq!(
            pairs(&enumerate_family(&f, 4, true, true)),
            [(2, 0), (5, 1), (23, 5), (110, 24)]
        );
        assert_eq!(pairs(&enumerate_family(&f, 3, false, false)), [(5, 1), (23, 5), (527, 115)]);
        assert!(enumerate_family(&f, 0, true, true).is_empty());
        let with = enumerate_family(&f, 8, false, true);
        assert!(pairs(&with).contains(&(12_098, 2640)));
    }

    #[test]
    fn solution_checks() {
        let d = BigUint::from(21u32);
        assert!(Solution::pell(55u32.into(), 12u32.into(), &d, &BigInt::one()).is_ok());
        assert!(Solution::pell(55u32.into(), 11u32.into(), &d, &BigInt::one()).is_err());
        let (a, b) = (BigUint::from(18u32), BigUint::from(23u32));
        assert!(Solution::ab(26u32.into(), 23u32.into(), &a, &b).is_ok());
        assert!(Solution::ab(23u32.into(), 26u32.into(), &a, &b).is_err());
    }

    #[test]
    fn square_divisor_scan() {
        let got: Vec<(u64, i64)> = square_divisors(&BigInt::from(-72))
            .into_iter()
            .map(|(d, m)| (u64::try_from(&d).unwrap(), i64::try_from(&m).unwrap()))
            .collect();
        assert_eq!(got, [(2, -18), (3, -8), (6, -2)]);
    }
}
