//! Brute-force searches over bounded boxes.
//!
//! Nothing here touches the continued-fraction code: these are the
//! independent references the solvers are checked against. All arithmetic
//! is exact 128-bit integer arithmetic. Each search checks up front that
//! the largest intermediate value fits, and fails with
//! [`Error::SearchOverflow`] otherwise, so the inner loops never overflow.
//!
//! A report only ever says what happens *within its bound*.

use std::fmt;

use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    /// `x² − d·y² = m`
    PellGeneral { d: u64, m: i64 },
    /// `a·x² − b·y² = 1`
    Ab { a: u64, b: u64 },
    /// `a·xⁿ − b·yⁿ = 1`
    Thue { a: i64, b: i64, n: u32 },
    /// `|√d − p/q| < 1/(2q²)`, hits reported as `(p, q)`
    Legendre { d: u64 },
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Equation::PellGeneral { d, m } => write!(f, "x^2 - {d}y^2 = {m}"),
            Equation::Ab { a, b } => write!(f, "{a}x^2 - {b}y^2 = 1"),
            Equation::Thue { a, b, n } => write!(f, "{a}x^{n} - {b}y^{n} = 1"),
            Equation::Legendre { d } => write!(f, "|sqrt({d}) - p/q| < 1/(2q^2)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hit {
    pub x: i128,
    pub y: i128,
}

impl fmt::Display for Hit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub equation: Equation,
    pub bound: u64,
    /// Sorted by `y`, then `x`.
    pub hits: Vec<Hit>,
    /// Number of candidate values of the scanned coordinate.
    pub iterations: u64,
    /// Legendre hits that are not convergents of √d. Always empty for the
    /// other searches.
    pub anomalies: Vec<Hit>,
}

impl SearchReport {
    fn new(equation: Equation, bound: u64, mut hits: Vec<Hit>, iterations: u64) -> Self {
        hits.sort_by_key(|h| (h.y, h.x));
        SearchReport {
            equation,
            bound,
            hits,
            iterations,
            anomalies: Vec::new(),
        }
    }

    /// Hits with `y ≠ 0` and `gcd(x, y) = 1`.
    pub fn coprime_nontrivial(&self) -> Vec<Hit> {
        self.hits
            .iter()
            .copied()
            .filter(|h| h.y != 0 && h.x.gcd(&h.y) == 1)
            .collect()
    }

    /// Hits with `x·y ≠ 0`.
    pub fn off_axis(&self) -> Vec<Hit> {
        self.hits
            .iter()
            .copied()
            .filter(|h| h.x != 0 && h.y != 0)
            .collect()
    }
}

/// Exact square root of `n` if it is a perfect square.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    // squares mod 16 are 0, 1, 4, 9
    if !matches!(n & 15, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Exact `n`-th root of `t` (with sign for odd `n`) if one exists.
fn exact_root(t: i128, n: u32) -> Option<i128> {
    let mag = t.unsigned_abs();
    let r = mag.nth_root(n);
    if r.checked_pow(n) != Some(mag) {
        return None;
    }
    let r = i128::try_from(r).ok()?;
    match (t < 0, n % 2 == 1) {
        (false, _) => Some(r),
        (true, true) => Some(-r),
        (true, false) => None,
    }
}

fn is_square_u64(d: u64) -> bool {
    exact_sqrt(d as u128).is_some()
}

fn fits(parts: &[u128]) -> Result<u128> {
    parts
        .iter()
        .try_fold(1u128, |acc, &p| acc.checked_mul(p))
        .filter(|&v| v < i128::MAX as u128 / 4)
        .ok_or(Error::SearchOverflow)
}

/// Every `(x, y)` with `0 ≤ y ≤ y_bound` and `x² − d·y² = m`, `x ≥ 0`.
pub fn oracle_pell_general(d: u64, m: i64, y_bound: u64) -> Result<SearchReport> {
    if d < 2 || is_square_u64(d) {
        return Err(Error::InvalidArgument(format!("d = {d} must be a nonsquare >= 2")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be nonzero".into()));
    }
    let yb = y_bound as u128;
    fits(&[d as u128, yb, yb])?;
    let (d, m) = (d as i128, m as i128);

    let mut hits = Vec::new();
    for y in 0..=y_bound as i128 {
        let rhs = m + d * y * y;
        if rhs < 0 {
            continue;
        }
        if let Some(x) = exact_sqrt(rhs as u128) {
            hits.push(Hit { x: x as i128, y });
        }
    }
    let equation = Equation::PellGeneral {
        d: d as u64,
        m: m as i64,
    };
    Ok(SearchReport::new(equation, y_bound, hits, y_bound + 1))
}

/// Every `(x, y)` with `1 ≤ x ≤ x_bound`, `y ≥ 0` and `a·x² − b·y² = 1`.
pub fn oracle_ab(a: u64, b: u64, x_bound: u64) -> Result<SearchReport> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    let xb = x_bound as u128;
    fits(&[a as u128, xb, xb])?;
    let (a128, b128) = (a as u128, b as u128);

    let mut hits = Vec::new();
    for x in 1..=xb {
        let lhs = a128 * x * x - 1;
        if lhs % b128 != 0 {
            continue;
        }
        if let Some(y) = exact_sqrt(lhs / b128) {
            hits.push(Hit {
                x: x as i128,
                y: y as i128,
            });
        }
    }
    Ok(SearchReport::new(Equation::Ab { a, b }, x_bound, hits, x_bound))
}

/// Every `(x, y) ∈ [−bound, bound]²` with `a·xⁿ − b·yⁿ = 1`.
///
/// For each `x` the equation pins `yⁿ = (a·xⁿ − 1)/b`, so testing that
/// value for an exact `n`-th root covers the whole box.
pub fn oracle_thue(a: i64, b: i64, n: u32, bound: u64) -> Result<SearchReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be >= 3")));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be nonzero".into()));
    }
    let pow = (bound as u128).checked_pow(n).ok_or(Error::SearchOverflow)?;
    fits(&[a.unsigned_abs() as u128, pow])?;
    let (a128, b128, bound) = (a as i128, b as i128, bound as i128);

    let mut hits = Vec::new();
    for x in -bound..=bound {
        let lhs = a128 * x.pow(n) - 1;
        if lhs % b128 != 0 {
            continue;
        }
        let t = lhs / b128;
        let Some(y) = exact_root(t, n) else {
            continue;
        };
        if y.abs() > bound {
            continue;
        }
        hits.push(Hit { x, y });
        if y != 0 && n.is_multiple_of(2) {
            hits.push(Hit { x, y: -y });
        }
    }
    let iterations = 2 * bound as u64 + 1;
    Ok(SearchReport::new(Equation::Thue { a, b, n }, bound as u64, hits, iterations))
}

/// Every coprime `(p, q)` with `1 ≤ q ≤ q_bound` and
/// `|√d − p/q| < 1/(2q²)`, reported as `Hit { x: p, y: q }`.
///
/// Such `p` satisfies `|q√d − p| < 1/2`, so only `⌊q√d⌋` and `⌊q√d⌋ + 1`
/// can qualify. Clearing denominators, with `p, q ≥ 1`:
///
/// ```text
/// |√d − p/q| < 1/(2q²)  ⟺  (2pq − 1)² < 4q⁴d < (2pq + 1)²
/// ```
///
/// Neither side can be an equality since `4q⁴d` is even and `2pq ± 1` is
/// odd. Every hit is then checked with [`is_sqrt_convergent`]; failures are
/// listed in [`SearchReport::anomalies`].
pub fn oracle_legendre(d: u64, q_bound: u64) -> Result<SearchReport> {
    if d < 2 || is_square_u64(d) {
        return Err(Error::InvalidArgument(format!("d = {d} must be a nonsquare >= 2")));
    }
    let qb = q_bound as u128;
    fits(&[4, d as u128, qb, qb, qb, qb])?;
    let d128 = d as u128;

    let mut hits = Vec::new();
    for q in 1..=qb {
        let floor = (d128 * q * q).sqrt();
        let target = 4 * q * q * q * q * d128;
        for p in [floor, floor + 1] {
            if p == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let lo = 2 * p * q - 1;
            let hi = 2 * p * q + 1;
            if lo * lo < target && target < hi * hi {
                hits.push(Hit {
                    x: p as i128,
                    y: q as i128,
                });
            }
        }
    }
    let mut report = SearchReport::new(Equation::Legendre { d }, q_bound, hits, q_bound);
    report.anomalies = report
        .hits
        .iter()
        .copied()
        .filter(|h| !is_sqrt_convergent(d, h.x as u128, h.y as u128))
        .collect();
    Ok(report)
}

/// Whether `p/q` (in lowest terms, `q ≥ 1`) is a convergent of √d.
///
/// Writes `p/q = [c_0; …, c_k]` by Euclid's algorithm. `p/q` is a
/// convergent exactly when √d = `[c_0; …, c_k, y]` for some `y > 1`, that
/// is when √d lies strictly between `p/q` and `(p + p')/(q + q')`, where
/// `p'/q'` is the previous convergent of the finite expansion. Both finite
/// expansions of `p/q` (ending in `c_k` or in `c_k − 1, 1`) are tried.
pub fn is_sqrt_convergent(d: u64, p: u128, q: u128) -> bool {
    if q == 0 || p.gcd(&q) != 1 {
        return false;
    }
    let mut quotients = Vec::new();
    let (mut num, mut den) = (p, q);
    while den != 0 {
        quotients.push(num / den);
        (num, den) = (den, num % den);
    }
    let mut alt = quotients.clone();
    let last = alt.pop().expect("nonempty");
    if last == 0 {
        return false;
    }
    alt.push(last - 1);
    alt.push(1);

    [quotients, alt].iter().any(|cf| {
        let (prev_p, prev_q) = finite_convergent(&cf[..cf.len() - 1]);
        sqrt_strictly_between(d, (p, q), (p + prev_p, q + prev_q))
    })
}

/// Numerator and denominator of `[c_0; …, c_k]`, with `1/0` for the empty
/// list.
fn finite_convergent(cf: &[u128]) -> (u128, u128) {
    let (mut p1, mut q1, mut p2, mut q2) = (1u128, 0u128, 0u128, 1u128);
    for &c in cf {
        let p = c * p1 + p2;
        let q = c * q1 + q2;
        (p2, q2, p1, q1) = (p1, q1, p, q);
    }
    (p1, q1)
}

/// `√d` strictly between `r/s` and `t/w` (in either order).
fn sqrt_strictly_between(d: u64, (r, s): (u128, u128), (t, w): (u128, u128)) -> bool {
    let below = |num: u128, den: u128| (d as u128) * den * den < num * num;
    below(r, s) != below(t, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hits(xs: &[(i128, i128)]) -> Vec<Hit> {
        xs.iter().map(|&(x, y)| Hit { x, y }).collect()
    }

    #[test]
    fn pell_general_21() {
        let r = oracle_pell_general(21, 1, 2000).unwrap();
        assert_eq!(r.hits, hits(&[(1, 0), (55, 12), (6049, 1320)]));
        assert_eq!(r.coprime_nontrivial(), hits(&[(55, 12), (6049, 1320)]));

        let r = oracle_pell_general(21, 4, 100).unwrap();
        assert_eq!(r.hits, hits(&[(2, 0), (5, 1), (23, 5), (110, 24)]));
        assert_eq!(r.coprime_nontrivial(), hits(&[(5, 1), (23, 5)]));
    }

    #[test]
    fn pell_general_mod7_obstruction() {
        let r = oracle_pell_general(7, 5, 10_000).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.iterations, 10_001);
    }

    #[test]
    fn ab_searches() {
        assert_eq!(oracle_ab(18, 23, 10_000).unwrap().hits, hits(&[(26, 23)]));
        assert!(oracle_ab(19, 25, 100_000).unwrap().hits.is_empty());
        assert_eq!(oracle_ab(1, 21, 100).unwrap().hits, hits(&[(1, 0), (55, 12)]));
        assert_eq!(oracle_ab(25, 19, 100).unwrap().hits, hits(&[(34, 39)]));
    }

    #[test]
    fn thue_searches() {
        let r = oracle_thue(2, 1, 3, 100).unwrap();
        assert!(r.hits.contains(&Hit { x: 1, y: 1 }));
        // x³ − y³ = 1 only on the axes
        let r = oracle_thue(1, 1, 3, 1000).unwrap();
        assert_eq!(r.hits, hits(&[(0, -1), (1, 0)]));
        assert!(r.off_axis().is_empty());
        let r = oracle_thue(6, 5, 3, 1000).unwrap();
        assert!(r.off_axis().len() <= 1);
        // even exponent: both signs of y
        let r = oracle_thue(2, 1, 4, 10).unwrap();
        assert_eq!(r.hits, hits(&[(-1, -1), (1, -1), (-1, 1), (1, 1)]));
    }

    #[test]
    fn legendre_sqrt2() {
        let r = oracle_legendre(2, 50).unwrap();
        assert_eq!(r.hits, hits(&[(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]));
        assert!(r.anomalies.is_empty());
    }

    #[test]
    fn legendre_21() {
        assert!(oracle_legendre(21, 12).unwrap().hits.contains(&Hit { x: 55, y: 12 }));
        assert!(oracle_legendre(21, 1).unwrap().hits.contains(&Hit { x: 5, y: 1 }));
    }

    #[test]
    fn convergent_check() {
        for (p, q) in [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)] {
            assert!(is_sqrt_convergent(2, p, q), "{p}/{q}");
        }
        assert!(!is_sqrt_convergent(2, 4, 3));
        assert!(!is_sqrt_convergent(2, 2, 1));
        // √21 = [4; 1, 1, 2, …]: R_0 = 4, R_1 = 5 share q = 1
        assert!(is_sqrt_convergent(21, 4, 1));
        assert!(is_sqrt_convergent(21, 5, 1));
        assert!(!is_sqrt_convergent(21, 6, 1));
        assert!(is_sqrt_convergent(21, 55, 12));
    }

    #[test]
    fn cleared_inequality_matches_high_precision() {
        // f64 is ample for these tiny cases; it only cross-checks the
        // integer form in this test.
        for d in [2u64, 3, 5, 7, 21] {
            let root = (d as f64).sqrt();
            let r = oracle_legendre(d, 30).unwrap();
            for q in 1..=30u64 {
                for p in 1..=(6 * q) {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    let gap = (root - p as f64 / q as f64).abs();
                    let bound = 1.0 / (2.0 * (q * q) as f64);
                    let hit = r.hits.contains(&Hit {
                        x: p as i128,
                        y: q as i128,
                    });
                    assert_eq!(gap < bound, hit, "d={d} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn overflow_and_bad_input() {
        assert_eq!(oracle_ab(u64::MAX, 2, u64::MAX).unwrap_err(), Error::SearchOverflow);
        assert_eq!(oracle_thue(2, 1, 40, 1000).unwrap_err(), Error::SearchOverflow);
        assert!(matches!(oracle_pell_general(16, 1, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(oracle_pell_general(21, 0, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(oracle_thue(1, 1, 2, 10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn deterministic() {
        assert_eq!(oracle_thue(7, 3, 3, 200).unwrap(), oracle_thue(7, 3, 3, 200).unwrap());
    }
}
