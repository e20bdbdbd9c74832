//! Binomial arithmetic and Macaulay's `d`-binomial expansions.
//!
//! Every Hilbert-function bound used elsewhere in the crate is a shift of
//! the expansion `n = C(n_d, d) + C(n_{d-1}, d-1) + ... + C(n_j, j)`:
//!
//! | bound                 | shift `(a, b)` on `C(n_i + b, i + a)` |
//! |-----------------------|----------------------------------------|
//! | [`macaulay_next`]     | `(+1, +1)`                             |
//! | [`macaulay_prev`]     | `(-1, -1)`                             |
//! | [`green_restrict`]    | `(0, -1)`                              |
//! | [`gotzmann_persistence`] | `(+s, +s)`                          |
//!
//! All arithmetic is exact `u64`; overflow is reported as
//! [`Error::Overflow`], never wrapped. A value that overflows is strictly
//! larger than `u64::MAX`, so callers comparing an entry against a bound
//! may treat an overflowing bound as satisfied (see [`within_next`]).

use std::fmt;

use crate::error::{Error, Result};

/// `C(n, k)` with the convention `C(n, k) = 0` for `k < 0` or `n < k`.
pub fn binomial(n: u64, k: i64) -> Result<u64> {
    if k < 0 || (k as u64) > n {
        return Ok(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc == C(n, i) here, and C(n, i) <= C(n, k) for i <= k <= n/2,
        // so acc fits in u64 whenever the final value does.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(acc as u64)
}

/// Binomial coefficient with a possibly negative top, using the same zero
/// convention (`m < c` gives 0, and so does any negative `m` with `c >= 0`).
fn binomial_signed(top: i128, bottom: i128) -> Result<u64> {
    if bottom < 0 || top < bottom {
        return Ok(0);
    }
    let top = u64::try_from(top).map_err(|_| Error::Overflow("binomial"))?;
    let bottom = i64::try_from(bottom).map_err(|_| Error::Overflow("binomial"))?;
    binomial(top, bottom)
}

/// One summand `C(top, bottom)` of a [`BinomialExpansion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinomialTerm {
    pub top: u64,
    pub bottom: usize,
}

/// The unique Macaulay `degree`-binomial expansion of a positive integer.
///
/// Terms are stored from the leading bottom `degree` downwards; bottoms
/// are consecutive and tops strictly decreasing with `top >= bottom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialExpansion {
    degree: usize,
    terms: Vec<BinomialTerm>,
}

impl BinomialExpansion {
    /// Builds an expansion from explicit terms, checking the invariants.
    pub fn from_terms(degree: usize, terms: Vec<BinomialTerm>) -> Result<Self> {
        if degree == 0 || terms.is_empty() {
            return Err(Error::domain("expansion needs degree >= 1 and a term"));
        }
        for (offset, term) in terms.iter().enumerate() {
            let expected = degree.checked_sub(offset).filter(|&b| b >= 1);
            if expected != Some(term.bottom) {
                return Err(Error::domain(format!(
                    "term {offset} has bottom {}, expected consecutive bottoms from {degree}",
                    term.bottom
                )));
            }
            if term.top < term.bottom as u64 {
                return Err(Error::domain(format!(
                    "term C({},{}) has top below bottom",
                    term.top, term.bottom
                )));
            }
        }
        if terms.windows(2).any(|w| w[0].top <= w[1].top) {
            return Err(Error::domain("expansion tops must strictly decrease"));
        }
        Ok(BinomialExpansion { degree, terms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[BinomialTerm] {
        &self.terms
    }

    /// The represented integer.
    pub fn value(&self) -> Result<u64> {
        self.shifted(0, 0)
    }

    /// `sum C(top + b, bottom + a)` under the zero convention.
    pub fn shifted(&self, a: i64, b: i64) -> Result<u64> {
        self.terms.iter().try_fold(0u64, |acc, term| {
            let value = binomial_signed(
                i128::from(term.top) + i128::from(b),
                term.bottom as i128 + i128::from(a),
            )?;
            acc.checked_add(value)
                .ok_or(Error::Overflow("shifted expansion"))
        })
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "C({},{})", term.top, term.bottom)?;
        }
        Ok(())
    }
}

/// Largest `m` with `C(m, d) <= n`; requires `n >= 1`, `d >= 1`.
fn largest_top(n: u64, d: usize) -> u64 {
    let fits = |m: u64| matches!(binomial(m, d as i64), Ok(v) if v <= n);
    let mut lo = d as u64;
    let mut step = 1u64;
    let mut hi = loop {
        match lo.checked_add(step) {
            Some(candidate) if fits(candidate) => {
                lo = candidate;
                step = step.saturating_mul(2);
            }
            Some(candidate) => break candidate,
            None => break u64::MAX,
        }
    };
    // fits(lo) holds and fits(hi) fails (or hi is the ceiling).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi == u64::MAX && fits(hi) {
        hi
    } else {
        lo
    }
}

/// Greedy Macaulay expansion of `n` in degree `d`.
pub fn macaulay_rep(n: u64, d: usize) -> Result<BinomialExpansion> {
    if n == 0 || d == 0 {
        return Err(Error::domain(format!(
            "macaulay_rep needs n >= 1 and d >= 1 (got n={n}, d={d})"
        )));
    }
    let mut terms = Vec::new();
    let mut remainder = n;
    let mut bottom = d;
    while remainder > 0 {
        if bottom == 0 {
            // unreachable: C(m, 1) = m absorbs any remainder
            return Err(Error::domain("expansion did not terminate"));
        }
        let top = largest_top(remainder, bottom);
        remainder -= binomial(top, bottom as i64)?;
        terms.push(BinomialTerm { top, bottom });
        bottom -= 1;
    }
    Ok(BinomialExpansion { degree: d, terms })
}

/// Inverse of [`macaulay_rep`].
pub fn expansion_value(expansion: &BinomialExpansion) -> Result<u64> {
    expansion.value()
}

/// `(n_(i))^b_a` for the expansion `e`.
pub fn shifted_value(expansion: &BinomialExpansion, a: i64, b: i64) -> Result<u64> {
    expansion.shifted(a, b)
}

fn shift_of(n: u64, d: usize, a: i64, b: i64) -> Result<u64> {
    if n == 0 {
        if d == 0 {
            return Err(Error::domain("bounds need degree d >= 1"));
        }
        return Ok(0);
    }
    macaulay_rep(n, d)?.shifted(a, b)
}

/// Maximal value in degree `d + 1` after value `n` in degree `d`.
pub fn macaulay_next(n: u64, d: usize) -> Result<u64> {
    shift_of(n, d, 1, 1)
}

/// `((n)_(d))^{-1}_{-1}`, the least value in degree `d - 1` from which `n`
/// is reachable by maximal growth.
pub fn macaulay_prev(n: u64, d: usize) -> Result<u64> {
    shift_of(n, d, -1, -1)
}

/// Green's bound on the restriction to a general hyperplane in degree `d`.
pub fn green_restrict(n: u64, d: usize) -> Result<u64> {
    shift_of(n, d, 0, -1)
}

/// Value forced in degree `d + s` after maximal growth from `n` in degree
/// `d` when there are no generators beyond degree `d + 1`.
pub fn gotzmann_persistence(n: u64, d: usize, s: usize) -> Result<u64> {
    if s == 0 {
        return Err(Error::domain("persistence needs s >= 1"));
    }
    let s = i64::try_from(s).map_err(|_| Error::Overflow("persistence shift"))?;
    shift_of(n, d, s, s)
}

/// `value <= macaulay_next(n, d)`, treating an overflowing bound as
/// unbounded.
pub fn within_next(value: u64, n: u64, d: usize) -> bool {
    match macaulay_next(n, d) {
        Ok(bound) => value <= bound,
        Err(Error::Overflow(_)) => true,
        Err(_) => false,
    }
}

/// `value <= green_restrict(n, d)` with the same overflow reading.
pub fn within_green(value: u64, n: u64, d: usize) -> bool {
    match green_restrict(n, d) {
        Ok(bound) => value <= bound,
        Err(Error::Overflow(_)) => true,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(pairs: &[(u64, usize)]) -> Vec<BinomialTerm> {
        pairs
            .iter()
            .map(|&(top, bottom)| BinomialTerm { top, bottom })
            .collect()
    }

    /// Falling-product oracle, independent of the implementation loop.
    fn product_oracle(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let num: u128 = (0..k).map(|i| u128::from(n - i)).product();
        let den: u128 = (1..=k).map(u128::from).product();
        num / den
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 2), Ok(15));
        assert_eq!(binomial(3, 5), Ok(0));
        assert_eq!(binomial(5, 3), Ok(10));
        assert_eq!(binomial(5, -1), Ok(0));
        assert_eq!(binomial(0, 0), Ok(1));
    }

    #[test]
    fn binomial_matches_pascal_and_product() {
        let mut row = vec![1u64];
        for n in 0..=60u64 {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as i64), Ok(v), "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        for n in 0..=30 {
            for k in 0..=n {
                assert_eq!(u128::from(binomial(n, k as i64).unwrap()), product_oracle(n, k));
            }
        }
    }

    #[test]
    fn binomial_overflow_is_reported() {
        assert_eq!(binomial(200, 100), Err(Error::Overflow("binomial")));
        assert_eq!(binomial(u64::MAX, 1), Ok(u64::MAX));
        assert_eq!(binomial(u64::MAX, 2), Err(Error::Overflow("binomial")));
        // largest central coefficient that fits
        assert_eq!(binomial(67, 33), Ok(14_226_520_737_620_288_370));
        assert!(binomial(68, 34).is_err());
    }

    #[test]
    fn rep_examples() {
        assert_eq!(macaulay_rep(12, 3).unwrap().terms(), &terms(&[(5, 3), (2, 2), (1, 1)])[..]);
        assert_eq!(macaulay_rep(15, 2).unwrap().terms(), &terms(&[(6, 2)])[..]);
        for d in 1..10 {
            assert_eq!(macaulay_rep(1, d).unwrap().terms(), &terms(&[(d as u64, d)])[..]);
        }
        assert_eq!(macaulay_rep(12, 3).unwrap().to_string(), "C(5,3)+C(2,2)+C(1,1)");
    }

    #[test]
    fn rep_domain_errors() {
        assert!(matches!(macaulay_rep(0, 3), Err(Error::Domain(_))));
        assert!(matches!(macaulay_rep(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn rep_of_huge_values() {
        let e = macaulay_rep(u64::MAX, 1).unwrap();
        assert_eq!(e.terms(), &terms(&[(u64::MAX, 1)])[..]);
        let e = macaulay_rep(u64::MAX, 3).unwrap();
        assert_eq!(e.value(), Ok(u64::MAX));
        assert_eq!(macaulay_next(u64::MAX, 1), Err(Error::Overflow("binomial")));
        assert!(within_next(u64::MAX, u64::MAX, 1));
    }

    #[test]
    fn expansion_value_examples() {
        let e = BinomialExpansion::from_terms(3, terms(&[(5, 3), (2, 2), (1, 1)])).unwrap();
        assert_eq!(expansion_value(&e), Ok(12));
        let e = BinomialExpansion::from_terms(4, terms(&[(4, 4)])).unwrap();
        assert_eq!(expansion_value(&e), Ok(1));
        let e = BinomialExpansion::from_terms(4, terms(&[(6, 4), (3, 3)])).unwrap();
        assert_eq!(expansion_value(&e), Ok(16));
    }

    #[test]
    fn from_terms_rejects_invalid() {
        assert!(BinomialExpansion::from_terms(3, terms(&[(5, 3), (5, 2)])).is_err());
        assert!(BinomialExpansion::from_terms(3, terms(&[(5, 3), (2, 1)])).is_err());
        assert!(BinomialExpansion::from_terms(3, terms(&[(2, 3)])).is_err());
        assert!(BinomialExpansion::from_terms(1, terms(&[(3, 1), (1, 0)])).is_err());
        assert!(BinomialExpansion::from_terms(2, vec![]).is_err());
    }

    #[test]
    fn shifted_examples() {
        let e = macaulay_rep(12, 3).unwrap();
        assert_eq!(shifted_value(&e, 1, 1), Ok(17));
        assert_eq!(shifted_value(&e, -1, -1), Ok(8));
        for n in 1..200 {
            for d in 1..6 {
                assert_eq!(shifted_value(&macaulay_rep(n, d).unwrap(), 0, 0), Ok(n));
            }
        }
    }

    #[test]
    fn next_examples() {
        assert_eq!(macaulay_next(16, 4), Ok(22));
        assert_eq!(macaulay_next(3, 2), Ok(4));
        for d in 1..12 {
            assert_eq!(macaulay_next(1, d), Ok(1));
        }
    }

    #[test]
    fn prev_examples() {
        assert_eq!(macaulay_prev(12, 3), Ok(8));
        assert_eq!(macaulay_prev(25, 4), Ok(16));
        for d in 1..12 {
            assert_eq!(macaulay_prev(1, d), Ok(1));
        }
    }

    #[test]
    fn green_examples() {
        assert_eq!(green_restrict(12, 3), Ok(4));
        assert_eq!(green_restrict(15, 2), Ok(10));
        assert_eq!(green_restrict(17, 4), Ok(5));
        for d in 1..12 {
            assert_eq!(green_restrict(1, d), Ok(0));
            assert_eq!(green_restrict(0, d), Ok(0));
        }
    }

    #[test]
    fn persistence_examples() {
        for s in 1..=3 {
            assert_eq!(gotzmann_persistence(4, 3, s), Ok(s as u64 + 4));
        }
        for s in 1..=2 {
            assert_eq!(gotzmann_persistence(7, 3, s), Ok(2 * s as u64 + 7));
        }
        for n in 1..100 {
            for d in 1..6 {
                assert_eq!(gotzmann_persistence(n, d, 1), macaulay_next(n, d));
            }
        }
        assert!(gotzmann_persistence(4, 3, 0).is_err());
    }

    #[test]
    fn bounds_on_zero_are_zero() {
        assert_eq!(macaulay_next(0, 2), Ok(0));
        assert_eq!(macaulay_prev(0, 2), Ok(0));
        assert_eq!(gotzmann_persistence(0, 2, 3), Ok(0));
        assert!(macaulay_next(0, 0).is_err());
    }

    #[test]
    fn pure_binomial_growth() {
        for d in 1..12usize {
            for m in (d as u64 + 1)..=12 {
                let n = binomial(m, d as i64).unwrap();
                assert_eq!(macaulay_next(n, d), binomial(m + 1, d as i64 + 1), "C({m},{d})");
            }
        }
    }
}
