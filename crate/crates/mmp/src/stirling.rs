//! Exact Stirling-number and harmonic-sum arithmetic.
//!
//! Covers the unsigned/signed Stirling numbers of the first kind, the
//! r-Stirling numbers `[n m]_r` (permutations of `S_n` with `m`
//! left-to-right maxima, the top `r` values among them), several
//! independent routes to the same r-Stirling values, iterated and nested
//! harmonic sums, and negative-index Stirling numbers. Everything is exact:
//! `BigInt` for counts, `BigRational` for harmonic values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("non-integral result where an integer was required")]
    NonIntegral,
}

fn domain(msg: impl Into<String>) -> IdentityError {
    IdentityError::Domain(msg.into())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients of `(x + lo)(x + lo + 1) ... (x + hi)`, ascending degree.
/// Empty when `lo > hi` (the empty product, `[1]`).
pub fn rising_product(lo: usize, hi_exclusive: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for i in lo..hi_exclusive {
        // multiply by (x + i)
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d] += c * BigInt::from(i);
            next[d + 1] += c;
        }
        coeffs = next;
    }
    coeffs
}

/// Unsigned Stirling number of the first kind `c(n, k)`:
/// `x(x+1)...(x+n-1) = sum c(n,k) x^k`.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one(); // c(0,0)
    }
    if k == 0 {
        return BigInt::zero();
    }
    // c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1), computed row by row
    let mut row = vec![BigInt::one()]; // row for n = 0: [c(0,0)]
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for (j, c) in row.iter().enumerate() {
            let factor = BigInt::from(m - 1);
            next[j] += c * factor;
            next[j + 1] += c;
        }
        row = next;
    }
    row[k].clone()
}

/// Signed Stirling number `s(n, k) = (-1)^{n-k} c(n, k)`.
pub fn stirling1_signed(n: usize, k: usize) -> BigInt {
    let c = stirling1_unsigned(n, k);
    if (n.wrapping_sub(k)) % 2 == 1 {
        -c
    } else {
        c
    }
}

/// r-Stirling number `[n m]_r`: coefficient of `x^{m-r}` in
/// `(x+r)(x+r+1)...(x+n-1)`.
pub fn r_stirling(n: usize, m: usize, r: usize) -> Result<BigInt, IdentityError> {
    if r < 1 {
        return Err(domain("r must be >= 1"));
    }
    if n < r {
        return Err(domain(format!("need n >= r, got n={n} r={r}")));
    }
    if m < r {
        return Err(domain(format!("need m >= r, got m={m} r={r}")));
    }
    if m > n {
        return Ok(BigInt::zero());
    }
    let coeffs = rising_product(r, n);
    Ok(coeffs.get(m - r).cloned().unwrap_or_else(BigInt::zero))
}

/// `[n j+k-1]_{k-1}` via the classical-Stirling expansion
/// `sum_{i=j}^{n-k+1} binom(i,j) c(n-k+1,i) (k-1)^{i-j}`.
///
/// Arguments follow the r-Stirling indexing: `m = j+k-1`, `r = k-1`.
pub fn r_stirling_via_classical(n: usize, m: usize, r: usize) -> Result<BigInt, IdentityError> {
    if r < 1 {
        return Err(domain("r must be >= 1"));
    }
    if m < r || n < r {
        return Err(domain(format!("need n, m >= r, got n={n} m={m} r={r}")));
    }
    let j = m - r;
    if j > n - r {
        return Ok(BigInt::zero());
    }
    let mut total = BigInt::zero();
    let mut power = BigInt::one(); // r^{i-j}
    for i in j..=(n - r) {
        total += binomial(i, j) * stirling1_unsigned(n - r, i) * &power;
        power *= BigInt::from(r);
    }
    Ok(total)
}

/// `[n j+k]_k` via the alternating cross-recurrence in `r`:
/// `sum_{i=j+1}^{n-k+1} (1-k)^{i-j-1} [n i+k-1]_{k-1}`.
pub fn r_stirling_cross_recurrence(n: usize, j: usize, k: usize) -> Result<BigInt, IdentityError> {
    if k < 2 {
        return Err(domain("k must be >= 2"));
    }
    if n < k || j > n - k {
        return Err(domain(format!("need 0 <= j <= n-k, got n={n} j={j} k={k}")));
    }
    let step = BigInt::from(1i64 - k as i64);
    let mut total = BigInt::zero();
    let mut power = BigInt::one(); // (1-k)^{i-j-1}
    for i in (j + 1)..=(n - k + 1) {
        total += r_stirling(n, i + k - 1, k - 1)? * &power;
        power *= &step;
    }
    Ok(total)
}

/// Iterated harmonic sum `H_n^{(j)}`: `H_n^{(0)} = 1`,
/// `H_n^{(j)} = sum_{i=1}^n H_i^{(j-1)} / i`.
pub fn harmonic_iterated(n: usize, j: usize) -> BigRational {
    if j == 0 {
        return BigRational::one();
    }
    if n == 0 {
        return BigRational::zero();
    }
    // prev[i] = H_i^{(level)}, built up level by level
    let mut prev: Vec<BigRational> = vec![BigRational::one(); n + 1];
    prev[0] = BigRational::one(); // unused beyond seeding level 0
    for _ in 1..=j {
        let mut next = vec![BigRational::zero(); n + 1];
        let mut acc = BigRational::zero();
        for i in 1..=n {
            acc += &prev[i] / BigRational::from(BigInt::from(i));
            next[i] = acc.clone();
        }
        prev = next;
    }
    prev[n].clone()
}

/// Nested harmonic sum `H^k_{n,j}`: level 1 is the elementary-symmetric sum
/// of reciprocals `sum_{i_1 < ... < i_j <= n} 1/(i_1 ... i_j)`; higher
/// levels are plain prefix sums. Zero whenever `n < j`.
pub fn harmonic_nested(n: usize, j: usize, level: usize) -> Result<BigRational, IdentityError> {
    if level < 1 {
        return Err(domain("level must be >= 1"));
    }
    // level 1 for every 0..=n via the elementary-symmetric recurrence
    let mut table: Vec<BigRational> = Vec::with_capacity(n + 1);
    {
        let mut e = vec![BigRational::zero(); j + 1];
        e[0] = BigRational::one();
        table.push(e[j].clone()); // H^1_{0,j}
        for i in 1..=n {
            let inv = BigRational::new(BigInt::one(), BigInt::from(i));
            for t in (1..=j.min(i)).rev() {
                let add = &e[t - 1] * &inv;
                e[t] += add;
            }
            table.push(e[j].clone());
        }
    }
    for _ in 2..=level {
        let mut acc = BigRational::zero();
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigRational::zero()); // empty sum at n = 0
        for value in table.iter().skip(1) {
            acc += value;
            next.push(acc.clone());
        }
        table = next;
    }
    Ok(table[n].clone())
}

/// Negative-index Stirling number `s(-n, k) = (-1)^k H_n^{(k)} / n!`.
pub fn stirling1_negative(n: usize, k: usize) -> Result<BigRational, IdentityError> {
    if n < 1 {
        return Err(domain("n must be >= 1"));
    }
    let h = harmonic_iterated(n, k);
    let value = h / BigRational::from(factorial(n));
    Ok(if k % 2 == 1 { -value } else { value })
}

fn rational_to_int(value: BigRational) -> Result<BigInt, IdentityError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(IdentityError::NonIntegral)
    }
}

/// `[n m]_r = (n-r)! H^r_{n-r, m-r}`.
pub fn r_stirling_via_harmonic(n: usize, m: usize, r: usize) -> Result<BigInt, IdentityError> {
    if r < 1 || m <= r || n < r {
        return Err(domain(format!(
            "need r >= 1, m > r, n >= r, got n={n} m={m} r={r}"
        )));
    }
    let h = harmonic_nested(n - r, m - r, r)?;
    rational_to_int(BigRational::from(factorial(n - r)) * h)
}

/// `[n j+r]_r = sum_{i=1}^{j+1} s(1-r, j+1-i) c(n, i)`.
pub fn r_stirling_via_neg_stirling(n: usize, j: usize, r: usize) -> Result<BigInt, IdentityError> {
    if r < 2 {
        return Err(domain("r must be >= 2"));
    }
    if j < 1 || n + 1 < j + r {
        return Err(domain(format!(
            "need j >= 1 and n >= j+r-1, got n={n} j={j} r={r}"
        )));
    }
    let mut total = BigRational::zero();
    for i in 1..=(j + 1) {
        let s_neg = stirling1_negative(r - 1, j + 1 - i)?;
        total += s_neg * BigRational::from(stirling1_unsigned(n, i));
    }
    rational_to_int(total)
}

/// `[n m]_r` by conditioning on the position of `n`:
/// `sum_{i=0}^{n-m} (n-r)!/(m+i-r)! [m+i-1 m-1]_{r-1}`.
pub fn position_recurrence(n: usize, m: usize, r: usize) -> Result<BigInt, IdentityError> {
    if r <= 1 {
        return Err(domain("r must be > 1"));
    }
    if n < m || m < r {
        return Err(domain(format!("need n >= m >= r, got n={n} m={m} r={r}")));
    }
    let mut total = BigInt::zero();
    for i in 0..=(n - m) {
        // (n-r)! / (m+i-r)! as a falling product
        let ratio = ((m + i - r + 1)..=(n - r)).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
        total += ratio * r_stirling(m + i - 1, m - 1, r - 1)?;
    }
    Ok(total)
}

/// The OEIS A001712-style signed formula for `C_{n,4,2}`:
/// `6 sum_{i=2}^{n-3} (-1)^{n+i+1} binom(i,2) 3^{i-2} s(n-3, i)`.
pub fn a001712_signed_formula(n: usize) -> Result<BigInt, IdentityError> {
    if n < 5 {
        return Err(domain("n must be >= 5"));
    }
    let mut total = BigInt::zero();
    let mut power = BigInt::one(); // 3^{i-2}
    for i in 2..=(n - 3) {
        let term = binomial(i, 2) * &power * stirling1_signed(n - 3, i);
        if (n + i + 1) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        power *= BigInt::from(3);
    }
    Ok(total * BigInt::from(6))
}

/// True when `q` has zero fractional part.
pub fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}

/// Sign-agnostic absolute value helper for signed Stirling sums.
pub fn abs(value: BigInt) -> BigInt {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn stirling_unsigned_values() {
        assert_eq!(stirling1_unsigned(5, 2), big(50));
        assert_eq!(stirling1_unsigned(7, 7), big(1));
        assert_eq!(stirling1_unsigned(7, 5), big(175));
        assert_eq!(stirling1_unsigned(0, 0), big(1));
        assert_eq!(stirling1_unsigned(4, 0), big(0));
        assert_eq!(stirling1_unsigned(3, 5), big(0));
    }

    #[test]
    fn stirling_unsigned_matches_product_expansion() {
        // independent oracle: expand x(x+1)...(x+n-1) directly
        for n in 1..=10 {
            let coeffs = rising_product(0, n);
            for k in 0..=n {
                assert_eq!(stirling1_unsigned(n, k), coeffs[k], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn stirling_signed_values() {
        assert_eq!(stirling1_signed(5, 2), big(-50));
        assert_eq!(stirling1_signed(6, 6), big(1));
        assert_eq!(stirling1_signed(5, 1), big(24));
    }

    #[test]
    fn r_stirling_values() {
        assert_eq!(r_stirling(7, 5, 3).unwrap(), big(119));
        assert_eq!(r_stirling(6, 6, 2).unwrap(), big(1));
        assert_eq!(r_stirling(5, 3, 2).unwrap(), big(26));
        assert_eq!(r_stirling(3, 3, 3).unwrap(), big(1));
        assert_eq!(r_stirling(5, 7, 2).unwrap(), big(0));
        assert!(r_stirling(2, 3, 3).is_err());
        assert!(r_stirling(5, 1, 2).is_err());
    }

    #[test]
    fn r_stirling_reduces_to_classical_at_r1() {
        for n in 1..=10 {
            for m in 1..=n {
                assert_eq!(r_stirling(n, m, 1).unwrap(), stirling1_unsigned(n, m));
            }
        }
    }

    #[test]
    fn classical_route() {
        // worked example: 119 = 6*1*9 + 3*6*3 + 1*11*1
        assert_eq!(r_stirling_via_classical(7, 5, 3).unwrap(), big(119));
        assert_eq!(r_stirling_via_classical(6, 6, 3).unwrap(), big(1));
        assert_eq!(
            r_stirling_via_classical(6, 5, 3).unwrap(),
            r_stirling(6, 5, 3).unwrap()
        );
    }

    #[test]
    fn cross_recurrence_route() {
        assert_eq!(r_stirling_cross_recurrence(5, 1, 3).unwrap(), big(7));
        assert_eq!(r_stirling_cross_recurrence(7, 2, 4).unwrap(), big(15));
        for n in 2..=12 {
            for k in 2..=n {
                for j in 0..=(n - k) {
                    assert_eq!(
                        r_stirling_cross_recurrence(n, j, k).unwrap(),
                        r_stirling(n, j + k, k).unwrap(),
                        "n={n} j={j} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn harmonic_iterated_values() {
        assert_eq!(harmonic_iterated(3, 1), rat(11, 6));
        assert_eq!(harmonic_iterated(1, 7), rat(1, 1));
        assert_eq!(harmonic_iterated(2, 2), rat(7, 4));
        assert_eq!(harmonic_iterated(5, 0), rat(1, 1));
        assert_eq!(harmonic_iterated(0, 3), rat(0, 1));
    }

    #[test]
    fn harmonic_iterated_against_direct_nesting() {
        // oracle: literal recursive definition
        fn direct(n: usize, j: usize) -> BigRational {
            if j == 0 {
                return BigRational::one();
            }
            (1..=n)
                .map(|i| direct(i, j - 1) / BigRational::from(big(i as i64)))
                .fold(BigRational::zero(), |a, b| a + b)
        }
        for n in 0..=6 {
            for j in 0..=4 {
                assert_eq!(harmonic_iterated(n, j), direct(n, j), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn harmonic_nested_values() {
        assert_eq!(harmonic_nested(3, 2, 1).unwrap(), rat(1, 1));
        assert_eq!(harmonic_nested(4, 2, 3).unwrap(), rat(119, 24));
        assert_eq!(harmonic_nested(4, 2, 1).unwrap(), rat(35, 24));
        assert_eq!(harmonic_nested(2, 5, 1).unwrap(), rat(0, 1));
        assert_eq!(harmonic_nested(6, 0, 1).unwrap(), rat(1, 1));
        assert!(harmonic_nested(3, 1, 0).is_err());
    }

    #[test]
    fn harmonic_nested_level1_against_subset_enumeration() {
        // oracle: enumerate all j-subsets of 1..=n
        fn subsets(n: usize, j: usize) -> BigRational {
            fn go(start: usize, n: usize, left: usize, prod: BigInt) -> BigRational {
                if left == 0 {
                    return BigRational::new(BigInt::one(), prod);
                }
                (start..=n)
                    .map(|i| go(i + 1, n, left - 1, &prod * BigInt::from(i)))
                    .fold(BigRational::zero(), |a, b| a + b)
            }
            go(1, n, j, BigInt::one())
        }
        for n in 0..=7 {
            for j in 0..=n {
                assert_eq!(harmonic_nested(n, j, 1).unwrap(), subsets(n, j), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn nested_level1_j1_is_plain_harmonic() {
        for n in 1..=10 {
            assert_eq!(harmonic_nested(n, 1, 1).unwrap(), harmonic_iterated(n, 1));
        }
    }

    #[test]
    fn negative_stirling_values() {
        assert_eq!(stirling1_negative(1, 1).unwrap(), rat(-1, 1));
        assert_eq!(stirling1_negative(3, 0).unwrap(), rat(1, 6));
        assert_eq!(stirling1_negative(2, 1).unwrap(), rat(-3, 4));
        assert!(stirling1_negative(0, 2).is_err());
    }

    #[test]
    fn harmonic_route() {
        assert_eq!(r_stirling_via_harmonic(7, 5, 3).unwrap(), big(119));
        assert_eq!(r_stirling_via_harmonic(6, 6, 3).unwrap(), big(1));
        assert_eq!(r_stirling_via_harmonic(5, 3, 1).unwrap(), big(35));
        assert!(r_stirling_via_harmonic(5, 3, 3).is_err());
    }

    #[test]
    fn neg_stirling_route() {
        assert_eq!(r_stirling_via_neg_stirling(5, 1, 2).unwrap(), big(26));
        assert_eq!(r_stirling_via_neg_stirling(5, 2, 3).unwrap(), big(1));
        assert_eq!(r_stirling_via_neg_stirling(7, 2, 3).unwrap(), big(119));
        assert!(r_stirling_via_neg_stirling(5, 1, 1).is_err());
    }

    #[test]
    fn position_recurrence_route() {
        assert_eq!(position_recurrence(7, 5, 3).unwrap(), big(119));
        assert_eq!(position_recurrence(6, 6, 4).unwrap(), big(1));
        assert_eq!(position_recurrence(5, 3, 2).unwrap(), big(26));
        assert!(position_recurrence(5, 3, 1).is_err());
    }

    #[test]
    fn a001712_values() {
        assert_eq!(a001712_signed_formula(7).unwrap(), big(714));
        assert_eq!(a001712_signed_formula(5).unwrap(), big(6));
        assert_eq!(
            a001712_signed_formula(6).unwrap(),
            big(6) * r_stirling(6, 5, 3).unwrap()
        );
        assert!(a001712_signed_formula(4).is_err());
    }

    #[test]
    fn row_sum_is_n_factorial_over_r_factorial() {
        for n in 1..=12 {
            for r in 1..=n {
                let total: BigInt = (r..=n).map(|m| r_stirling(n, m, r).unwrap()).sum();
                assert_eq!(total, factorial(n) / factorial(r), "n={n} r={r}");
            }
        }
    }
}
