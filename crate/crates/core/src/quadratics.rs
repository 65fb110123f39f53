//! Quadratic surds `(u + √d) / v` in canonical integer form.
//!
//! A triple `(d, u, v)` is canonical when `v ≠ 0` and `v | d − u²`. Every
//! operation here preserves that, so the continued-fraction step
//! `x ↦ 1 / (x − ⌊x⌋)` never leaves integer arithmetic. The conjugate
//! `(u − √d)/v` is stored as `(−u + √d)/(−v)`, so `v` may be negative.
//!
//! Comparisons against integers never use floating point. To decide
//! `(u + √d)/v  ?  k` we move `v` across (flipping the relation when
//! `v < 0`) and compare `√d` with `c = k·v − u`:
//!
//! | `c`     | `√d` vs `c`                        |
//! |---------|------------------------------------|
//! | `c < 0` | `√d > c`                           |
//! | `c ≥ 0` | same ordering as `d` vs `c²`       |
//!
//! Equality never occurs because `d` is not a perfect square.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf_engine::isqrt_exact;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    d: BigUint,
    u: BigInt,
    v: BigInt,
}

impl QuadraticSurd {
    /// Builds `(u + √d)/v`, rejecting square `d`, `v = 0`, and triples with
    /// `v ∤ d − u²`.
    pub fn new(d: impl Into<BigUint>, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (d, u, v) = (d.into(), u.into(), v.into());
        if isqrt_exact(&d).1 {
            return Err(Error::PerfectSquare { d });
        }
        if v.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !(BigInt::from(d.clone()) - &u * &u).is_multiple_of(&v) {
            return Err(Error::NormalizationRequired { d, u, v });
        }
        Ok(QuadraticSurd { d, u, v })
    }

    /// The same real number written over `d·v²`:
    /// `(u·|v| + √(d·v²)) / (v·|v|)`, which is always canonical.
    pub fn scaled_canonical(
        d: impl Into<BigUint>,
        u: impl Into<BigInt>,
        v: impl Into<BigInt>,
    ) -> Result<Self> {
        let (d, u, v) = (d.into(), u.into(), v.into());
        if v.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let abs_v = v.abs();
        let d2 = d * abs_v.magnitude() * abs_v.magnitude();
        Self::new(d2, u * &abs_v, v * abs_v)
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    /// `(d − u²)/v`, exact by canonicity.
    fn cofactor(&self) -> BigInt {
        (BigInt::from(self.d.clone()) - &self.u * &self.u) / &self.v
    }

    /// `(u − √d)/v`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            d: self.d.clone(),
            u: -&self.u,
            v: -&self.v,
        }
    }

    /// `1 / self = (−u + √d) / ((d − u²)/v)`.
    pub fn recip(&self) -> Self {
        QuadraticSurd {
            d: self.d.clone(),
            u: -&self.u,
            v: self.cofactor(),
        }
    }

    /// `self + c`
    pub fn add_int(&self, c: &BigInt) -> Self {
        QuadraticSurd {
            d: self.d.clone(),
            u: &self.u + c * &self.v,
            v: self.v.clone(),
        }
    }

    /// Exact ordering of the surd against the integer `k`.
    pub fn cmp_int(&self, k: &BigInt) -> Ordering {
        let c = k * &self.v - &self.u;
        let root_vs_c = if c.sign() == Sign::Minus {
            Ordering::Greater
        } else {
            self.d.cmp(&(c.magnitude() * c.magnitude()))
        };
        if self.v.is_positive() {
            root_vs_c
        } else {
            root_vs_c.reverse()
        }
    }

    /// `⌊(u + √d)/v⌋`
    pub fn floor(&self) -> BigInt {
        let root = BigInt::from(isqrt_exact(&self.d).0);
        let num = &self.u + root;
        if self.v.is_positive() {
            num.div_floor(&self.v)
        } else {
            // (u+√d)/|v| is irrational, so floor(−t) = −floor(t) − 1
            -num.div_floor(&-&self.v) - 1
        }
    }

    /// Reduced: `x > 1` and `−1 < x* < 0`.
    pub fn is_reduced(&self) -> bool {
        let one = BigInt::one();
        let conj = self.conjugate();
        self.cmp_int(&one) == Ordering::Greater
            && conj.cmp_int(&BigInt::zero()) == Ordering::Less
            && conj.cmp_int(&-one) == Ordering::Greater
    }

    /// One continued-fraction step: returns `(⌊x⌋, 1/(x − ⌊x⌋))`.
    pub fn step(&self) -> (BigInt, Self) {
        let a = self.floor();
        let next = self.add_int(&-&a).recip();
        (a, next)
    }

    /// Minimal period of a purely periodic expansion.
    pub fn expand_reduced(&self) -> Result<Vec<BigUint>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let mut quotients = Vec::new();
        let mut x = self.clone();
        loop {
            let (a, next) = x.step();
            quotients.push(a.to_biguint().expect("reduced surds have positive quotients"));
            if next == *self {
                return Ok(quotients);
            }
            x = next;
        }
    }

    /// `−1 / x*`, whose period is the reverse of this surd's period.
    pub fn reversed_surd(&self) -> Result<Self> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(QuadraticSurd {
            d: self.d.clone(),
            u: self.u.clone(),
            v: self.cofactor(),
        })
    }
}

pub fn conjugate(s: &QuadraticSurd) -> QuadraticSurd {
    s.conjugate()
}

pub fn is_reduced(s: &QuadraticSurd) -> bool {
    s.is_reduced()
}

pub fn expand_reduced(s: &QuadraticSurd) -> Result<Vec<BigUint>> {
    s.expand_reduced()
}

pub fn reversed_surd(s: &QuadraticSurd) -> Result<QuadraticSurd> {
    s.reversed_surd()
}

impl fmt::Display for QuadraticSurd {
    /// Prints with a positive denominator, e.g. `(1-√5)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, sign, v) = if self.v.is_negative() {
            (-&self.u, '-', -&self.v)
        } else {
            (self.u.clone(), '+', self.v.clone())
        };
        write!(f, "({u}{sign}√{})/{v}", self.d)
    }
}
