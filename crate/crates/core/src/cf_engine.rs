//! Periodic continued-fraction expansion of √d and its convergents.
//!
//! The expansion is driven by the complete quotients of `x = ⌊√d⌋ + √d`,
//! each kept in the integer form `x_n = (u_n + √d) / v_n`. From
//! `(u_0, v_0) = (a_0, 1)` the recurrence is
//!
//! ```text
//! a'_n    = ⌊(u_n + a_0) / v_n⌋
//! u_{n+1} = a'_n · v_n − u_n
//! v_{n+1} = (d − u_{n+1}²) / v_n
//! ```
//!
//! and the division defining `v_{n+1}` is always exact. For `n >= 1` the
//! quotients `a'_n` are the partial quotients of √d itself, and the first
//! index `k >= 1` with `a_k = 2·a_0` is the minimal period.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Smallest iteration cap ever used by [`expand_sqrt`].
pub const MIN_PERIOD_CAP: u64 = 1_000_000;

/// Exact integer square root and perfect-square flag.
pub fn isqrt_exact(n: &BigUint) -> (BigUint, bool) {
    let r = n.sqrt();
    let square = &r * &r == *n;
    (r, square)
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    isqrt_exact(n).1
}

/// One minimal period of the continued fraction of √d together with the
/// complete-quotient data `(u_n, v_n)` for `n = 1..=T`.
///
/// `u_0 = a_0` and `v_0 = 1` are implicit; index `T` closes the period with
/// `u_T = a_0`, `v_T = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpansion {
    d: BigUint,
    a0: BigUint,
    period: Arc<[BigUint]>,
    u_seq: Vec<BigUint>,
    v_seq: Vec<BigUint>,
}

impl SurdExpansion {
    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// `⌊√d⌋`
    pub fn a0(&self) -> &BigUint {
        &self.a0
    }

    /// Partial quotients `a_1, …, a_T`; the last one is `2·a_0`.
    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn u_seq(&self) -> &[BigUint] {
        &self.u_seq
    }

    pub fn v_seq(&self) -> &[BigUint] {
        &self.v_seq
    }

    /// Minimal period length `T`.
    pub fn period_len(&self) -> u64 {
        self.period.len() as u64
    }

    /// `a_n` for any `n >= 0`, using `a_{n+T} = a_n` for `n >= 1`.
    pub fn partial_quotient(&self, n: u64) -> &BigUint {
        if n == 0 {
            &self.a0
        } else {
            &self.period[self.slot(n)]
        }
    }

    /// `(u_n, v_n)` for any `n >= 0`, extended T-periodically.
    pub fn uv_at(&self, n: u64) -> (&BigUint, &BigUint) {
        if n == 0 {
            // x_0 = (a_0 + √d)/1 closes the cycle, same as index T.
            let last = self.u_seq.len() - 1;
            return (&self.u_seq[last], &self.v_seq[last]);
        }
        let r = self.slot(n);
        (&self.u_seq[r], &self.v_seq[r])
    }

    /// Position of index `n >= 1` inside one period (0-based).
    fn slot(&self, n: u64) -> usize {
        ((n - 1) % self.period_len()) as usize
    }

    /// Fresh cursor over `R_0, R_1, R_2, …`.
    pub fn convergents(&self) -> Convergents {
        Convergents::new(self)
    }

    /// The convergent `R_n`.
    pub fn convergent(&self, n: u64) -> Convergent {
        self.convergents()
            .nth(n as usize)
            .expect("convergent stream is unbounded")
    }

    /// `p_{n−1}² − d·q_{n−1}²`, which equals `(−1)^n · v_n`.
    pub fn pell_value(&self, n: u64) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        self.convergent(n - 1).pell_value(&self.d)
    }
}

/// Expands √d. Fails with [`Error::PerfectSquare`] for `d < 2` or square `d`.
pub fn expand_sqrt(d: impl Into<BigUint>) -> Result<SurdExpansion> {
    let d = d.into();
    let cap = default_cap(&d);
    expand_sqrt_with_cap(d, cap)
}

/// `max(10^6, 100·⌈√d⌉)`, saturating at `u64::MAX`.
pub fn default_cap(d: &BigUint) -> u64 {
    let (r, square) = isqrt_exact(d);
    let ceil = if square { r } else { r + 1u32 };
    let scaled: BigUint = ceil * 100u32;
    u64::try_from(&scaled)
        .unwrap_or(u64::MAX)
        .max(MIN_PERIOD_CAP)
}

/// [`expand_sqrt`] with an explicit iteration cap.
pub fn expand_sqrt_with_cap(d: impl Into<BigUint>, cap: u64) -> Result<SurdExpansion> {
    let d = d.into();
    let (a0, square) = isqrt_exact(&d);
    if square {
        return Err(Error::PerfectSquare { d });
    }
    let two_a0: BigUint = &a0 * 2u32;

    let mut period = Vec::new();
    let mut u_seq = Vec::new();
    let mut v_seq = Vec::new();

    let mut u = a0.clone();
    let mut v = BigUint::one();
    let mut a = two_a0.clone();
    for _ in 0..cap {
        u = &a * &v - &u;
        v = (&d - &u * &u) / &v;
        a = (&u + &a0) / &v;
        u_seq.push(u.clone());
        v_seq.push(v.clone());
        period.push(a.clone());
        if a == two_a0 {
            return Ok(SurdExpansion {
                d,
                a0,
                period: period.into(),
                u_seq,
                v_seq,
            });
        }
    }
    Err(Error::InternalPeriodOverflow { d, cap })
}

/// `(u_n, v_n)` with `n` reduced into `1..=T`.
pub fn uv_at(exp: &SurdExpansion, n: u64) -> (&BigUint, &BigUint) {
    exp.uv_at(n)
}

pub fn convergents(exp: &SurdExpansion) -> Convergents {
    exp.convergents()
}

pub fn pell_value(exp: &SurdExpansion, n: u64) -> BigInt {
    exp.pell_value(n)
}

/// The convergent `R_n = p_n / q_n`, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub index: i64,
    pub p: BigUint,
    pub q: BigUint,
}

impl Convergent {
    /// `R_{−2} = 0/1`
    pub fn minus_two() -> Self {
        Convergent {
            index: -2,
            p: BigUint::zero(),
            q: BigUint::one(),
        }
    }

    /// `R_{−1} = 1/0`
    pub fn minus_one() -> Self {
        Convergent {
            index: -1,
            p: BigUint::one(),
            q: BigUint::zero(),
        }
    }

    /// `p² − d·q²`
    pub fn pell_value(&self, d: &BigUint) -> BigInt {
        let p2 = BigInt::from(&self.p * &self.p);
        let dq2 = BigInt::from(d * &self.q * &self.q);
        p2 - dq2
    }
}

/// Unbounded cursor over the convergents of √d.
///
/// Each cursor is independent; cloning one forks the stream at its
/// current position.
#[derive(Debug, Clone)]
pub struct Convergents {
    a0: BigUint,
    period: Arc<[BigUint]>,
    next_index: u64,
    // (p_{n-1}, q_{n-1}) and (p_{n-2}, q_{n-2}) for the next n
    p1: BigUint,
    q1: BigUint,
    p2: BigUint,
    q2: BigUint,
}

impl Convergents {
    fn new(exp: &SurdExpansion) -> Self {
        Convergents {
            a0: exp.a0.clone(),
            period: Arc::clone(&exp.period),
            next_index: 0,
            p1: BigUint::one(),
            q1: BigUint::zero(),
            p2: BigUint::zero(),
            q2: BigUint::one(),
        }
    }

    /// Index of the convergent the next call to `next` returns.
    pub fn next_index(&self) -> u64 {
        self.next_index
    }
}

impl Iterator for Convergents {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let n = self.next_index;
        let a = if n == 0 {
            &self.a0
        } else {
            &self.period[((n - 1) % self.period.len() as u64) as usize]
        };
        let p = a * &self.p1 + &self.p2;
        let q = a * &self.q1 + &self.q2;
        self.p2 = std::mem::replace(&mut self.p1, p.clone());
        self.q2 = std::mem::replace(&mut self.q1, q.clone());
        self.next_index += 1;
        Some(Convergent {
            index: n as i64,
            p,
            q,
        })
    }
}
