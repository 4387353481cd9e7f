//! Generating polynomials for the `MMP^k` statistics.
//!
//! `P_n^k(x)` counts `S_n` by the primed statistic `mmp^{k'}`; `R_n^k(x)`
//! by the plain statistic. `C_{n,k,j}` is the `x^j` coefficient of
//! `P_n^k`. The arrow table reproduces the recursive layout that derives
//! each `P_n^{k+1}` row from `P_n^k` via the swap-correspondence counts
//! `m_{n,k,i,j}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::stirling::{
    factorial, harmonic_iterated, rising_product, stirling1_negative, stirling1_signed,
    stirling1_unsigned, IdentityError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("k must be at least {min}, got {k}")]
    KTooSmall { k: usize, min: usize },
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

/// Dense integer polynomial, coefficients indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::new(vec![])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul_linear(&self, constant: &BigInt) -> IntPolynomial {
        // multiply by (x + constant)
        let mut next = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            next[d] += c * constant;
            next[d + 1] += c;
        }
        IntPolynomial::new(next)
    }

    pub fn scale(&self, factor: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// JSON form: array of decimal strings, ascending degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending-degree text form: `6 + 11x + 6x^2 + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if d == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `P_n^k(x) = (k-1)! prod_{i=k-1}^{n-1} (x+i)` for `n >= k-1`; the
/// constant `n!` for shorter permutations (nothing can match).
pub fn p_poly(n: usize, k: usize) -> Result<IntPolynomial, PolyError> {
    if k < 2 {
        return Err(PolyError::KTooSmall { k, min: 2 });
    }
    if n < 1 {
        return Err(PolyError::NTooSmall { n, min: 1 });
    }
    if n < k - 1 {
        return Ok(IntPolynomial::constant(factorial(n)));
    }
    let product = IntPolynomial::new(rising_product(k - 1, n));
    Ok(product.scale(&factorial(k - 1)))
}

/// `R_n^k(x)`: constant term `C_{n,k,0} + C_{n,k,1}`, then the `P`
/// coefficients shifted down one degree.
pub fn r_poly(n: usize, k: usize) -> Result<IntPolynomial, PolyError> {
    let p = p_poly(n, k)?;
    let mut coeffs = vec![p.coeff(0) + p.coeff(1)];
    for s in 1..p.coeffs().len().saturating_sub(1) {
        coeffs.push(p.coeff(s + 1));
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `C_{n,k,j}`, the coefficient of `x^j` in `P_n^k(x)`.
pub fn coefficient(n: usize, k: usize, j: usize) -> Result<BigInt, PolyError> {
    Ok(p_poly(n, k)?.coeff(j))
}

/// Closed form for `P_n^3(x)`: `sum_j 2 |sum_{i=1}^{j+1} s(n,i)| x^j`.
pub fn p3_closed_form(n: usize) -> Result<IntPolynomial, PolyError> {
    if n <= 1 {
        return Err(PolyError::NTooSmall { n, min: 2 });
    }
    let mut coeffs = Vec::with_capacity(n - 1);
    let mut partial = BigInt::zero();
    for j in 0..=(n - 2) {
        partial += stirling1_signed(n, j + 1);
        coeffs.push(BigInt::from(2) * partial.abs());
    }
    Ok(IntPolynomial::new(coeffs))
}

/// The almost-match count `C_{n,k,1} = (k-1) c(n,2) - A c(n,1)` with
/// `A = (c(k,2) - (k-2)!) / (k-2)!`.
pub fn almost_match_closed_form(n: usize, k: usize) -> Result<BigInt, PolyError> {
    if k < 3 {
        return Err(PolyError::KTooSmall { k, min: 3 });
    }
    if n + 1 < k {
        return Err(PolyError::NTooSmall { n, min: k - 1 });
    }
    let fact = BigRational::from(factorial(k - 2));
    let a = (BigRational::from(stirling1_unsigned(k, 2)) - &fact) / fact;
    let value = BigRational::from(BigInt::from(k - 1) * stirling1_unsigned(n, 2))
        - a * BigRational::from(stirling1_unsigned(n, 1));
    if !value.is_integer() {
        return Err(IdentityError::NonIntegral.into());
    }
    Ok(value.to_integer())
}

/// `C_{n,k,j}` via the iterated-harmonic linear combination
/// `sum_{i=1}^{j+1} (k-1) H_{k-2}^{(j+1-i)} (-1)^{j+1-i} c(n,i)`.
pub fn c_nkj_via_harmonic(n: usize, k: usize, j: usize) -> Result<BigInt, PolyError> {
    if k <= 2 {
        return Err(PolyError::KTooSmall { k, min: 3 });
    }
    if j == 0 {
        return Err(PolyError::NTooSmall { n: j, min: 1 });
    }
    let mut total = BigRational::zero();
    for i in 1..=(j + 1) {
        let t = j + 1 - i;
        let mut term = BigRational::from(BigInt::from(k - 1))
            * harmonic_iterated(k - 2, t)
            * BigRational::from(stirling1_unsigned(n, i));
        if t % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    if !total.is_integer() {
        return Err(IdentityError::NonIntegral.into());
    }
    Ok(total.to_integer())
}

/// The same coefficient through negative-index Stirling numbers:
/// `sum_{i=1}^{j+1} (k-1)! s(2-k, j+1-i) c(n,i)`.
pub fn c_nkj_via_neg_stirling(n: usize, k: usize, j: usize) -> Result<BigInt, PolyError> {
    if k <= 2 {
        return Err(PolyError::KTooSmall { k, min: 3 });
    }
    if j == 0 {
        return Err(PolyError::NTooSmall { n: j, min: 1 });
    }
    let kfact = BigRational::from(factorial(k - 1));
    let mut total = BigRational::zero();
    for i in 1..=(j + 1) {
        let s_neg = stirling1_negative(k - 2, j + 1 - i)?;
        total += &kfact * s_neg * BigRational::from(stirling1_unsigned(n, i));
    }
    if !total.is_integer() {
        return Err(IdentityError::NonIntegral.into());
    }
    Ok(total.to_integer())
}

/// One row of arrows out of the `P_n^k` row: for each degree `j`, the
/// vertical mark `m_{n,k,j,j}` and the diagonal mark `m_{n,k,j,j-1}`
/// (zero where no such arrow exists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowRow {
    pub k: usize,
    pub vertical: Vec<BigInt>,
    pub diagonal: Vec<BigInt>,
}

/// The arrow table: `P_n^k` rows for `k = 2..=n+1` with the
/// arrow marks between consecutive rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowTable {
    pub n: usize,
    pub rows: Vec<IntPolynomial>,
    pub arrows: Vec<ArrowRow>,
}

pub fn arrow_table(n: usize) -> Result<ArrowTable, PolyError> {
    if n < 1 {
        return Err(PolyError::NTooSmall { n, min: 1 });
    }
    let rows: Vec<IntPolynomial> = (2..=n + 1).map(|k| p_poly(n, k)).collect::<Result<_, _>>()?;
    let mut arrows = Vec::new();
    for k in 2..=n {
        let row = &rows[k - 2];
        let top = row.degree();
        let mut vertical = vec![BigInt::zero(); top + 1];
        let mut diagonal = vec![BigInt::zero(); top + 1];
        // right to left: the top diagonal is the whole top coefficient,
        // each vertical is (k-1) times the diagonal entering its term
        for j in (0..=top).rev() {
            vertical[j] = if j == top {
                BigInt::zero()
            } else {
                BigInt::from(k - 1) * &diagonal[j + 1]
            };
            diagonal[j] = row.coeff(j) - &vertical[j];
        }
        debug_assert!(diagonal[0].is_zero());
        arrows.push(ArrowRow { k, vertical, diagonal });
    }
    Ok(ArrowTable { n, rows, arrows })
}

impl ArrowTable {
    /// LaTeX array: polynomial rows with
    /// interleaved arrow rows.
    pub fn to_latex(&self) -> String {
        let width = 2 * self.rows[0].coeffs().len() - 1;
        let mut out = String::new();
        out.push_str("\\begin{array}{");
        out.push_str(&"c".repeat(width));
        out.push_str("}\n");
        for (idx, row) in self.rows.iter().enumerate() {
            let mut cells: Vec<String> = Vec::with_capacity(width);
            for d in 0..row.coeffs().len() {
                let c = row.coeff(d);
                let term = match d {
                    0 => format!("{c}"),
                    1 => format!("+{c}x"),
                    _ => format!("+{c}x^{{{d}}}"),
                };
                cells.push(if d == 0 { term } else { term });
                if d + 1 < row.coeffs().len() {
                    cells.push("\\,".to_string());
                }
            }
            while cells.len() < width {
                cells.push("\\,".to_string());
            }
            out.push_str(&cells.join(" & "));
            out.push_str(" \\\\\n");
            if idx < self.arrows.len() {
                let arrow = &self.arrows[idx];
                let mut cells: Vec<String> = Vec::with_capacity(width);
                for j in 0..arrow.vertical.len() {
                    cells.push(format!("\\downarrow_{{{}}}", arrow.vertical[j]));
                    if j + 1 < arrow.diagonal.len() {
                        cells.push(format!("\\swarrow_{{{}}}", arrow.diagonal[j + 1]));
                    }
                }
                while cells.len() < width {
                    cells.push("\\,".to_string());
                }
                out.push_str(&cells.join(" & "));
                out.push_str(" \\\\\n");
            }
        }
        out.push_str("\\end{array}\n");
        out
    }
}
