//! Exact univariate polynomials over the integers and truncated bivariate
//! power series over the rationals.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with big-integer coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero outside the stored range.
    pub fn coeff(&self, i: i64) -> BigInt {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(BigInt::zero)
    }

    /// Sum of the coefficients of `t^lo ..= t^hi` (clipped to the support).
    pub fn coeff_range_sum(&self, lo: i64, hi: i64) -> BigInt {
        let lo = lo.max(0);
        let hi = hi.min(self.coeffs.len() as i64 - 1);
        (lo..=hi).map(|i| self.coeffs[i as usize].clone()).sum()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> IntPolynomial {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `(1 + t + ... + t^(len-1))^n`.
pub fn geometric_power(len: usize, n: usize) -> IntPolynomial {
    assert!(len >= 1, "geometric_power needs len >= 1");
    IntPolynomial::new(vec![BigInt::one(); len]).pow(n as u32)
}

/// Coefficient of `t^r` in `(1 + t + ... + t^(len-1))^n`.
pub fn restricted_binomial(n: usize, r: i64, len: usize) -> BigInt {
    if r < 0 || r > (n * (len - 1)) as i64 {
        return BigInt::zero();
    }
    geometric_power(len, n).coeff(r)
}

/// Ordinary binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Numerator coefficients of `Σ counts[r] t^r = h(t) / (1-t)^exponent`:
/// `c_j = Σ_{i<=j} (-1)^(j-i) C(exponent, j-i) counts[i]` for `j < exponent`.
pub fn binomial_transform_h(counts: &[BigInt], exponent: usize) -> Result<Vec<BigInt>> {
    if counts.len() < exponent {
        return Err(Error::InsufficientCounts {
            need: exponent,
            have: counts.len(),
        });
    }
    Ok((0..exponent)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let term = binomial(exponent as u64, (j - i) as u64) * &counts[i];
                    if (j - i) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect())
}

/// Power series in `u` and `s` truncated at `u^trunc_u` and `s^trunc_s`
/// (exclusive). Coefficients are indexed `[deg_u][deg_s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Vec<BigRational>>,
    trunc_u: usize,
    trunc_s: usize,
}

impl BivariateSeries {
    pub fn zero(trunc_u: usize, trunc_s: usize) -> Self {
        assert!(
            trunc_u >= 1 && trunc_s >= 1,
            "truncation orders must be positive"
        );
        Self {
            coeffs: vec![vec![BigRational::zero(); trunc_s]; trunc_u],
            trunc_u,
            trunc_s,
        }
    }

    pub fn one(trunc_u: usize, trunc_s: usize) -> Self {
        Self::constant(BigRational::one(), trunc_u, trunc_s)
    }

    pub fn constant(c: BigRational, trunc_u: usize, trunc_s: usize) -> Self {
        let mut z = Self::zero(trunc_u, trunc_s);
        z.coeffs[0][0] = c;
        z
    }

    /// Build from `(deg_u, deg_s, coefficient)` terms; terms past truncation are dropped.
    pub fn from_terms(terms: &[(usize, usize, i64)], trunc_u: usize, trunc_s: usize) -> Self {
        let mut z = Self::zero(trunc_u, trunc_s);
        for &(i, j, c) in terms {
            if i < trunc_u && j < trunc_s {
                z.coeffs[i][j] += BigRational::from_integer(c.into());
            }
        }
        z
    }

    pub fn truncation(&self) -> (usize, usize) {
        (self.trunc_u, self.trunc_s)
    }

    pub fn coeff(&self, deg_u: usize, deg_s: usize) -> &BigRational {
        &self.coeffs[deg_u][deg_s]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(
                self.trunc_u,
                self.trunc_s,
                other.trunc_u,
                other.trunc_s,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c -= o;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.trunc_u, self.trunc_s);
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, row2) in other.coeffs[..self.trunc_u - i1].iter().enumerate() {
                    for (j2, b) in row2[..self.trunc_s - j1].iter().enumerate() {
                        if !b.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc_u, self.trunc_s);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same truncation");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same truncation");
            }
        }
        acc
    }

    /// Multiplicative inverse within the truncation. Requires a nonzero
    /// constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a00 = &self.coeffs[0][0];
        if a00.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv00 = a00.recip();
        let mut out = Self::zero(self.trunc_u, self.trunc_s);
        // Solve Σ a[p][q] b[i-p][j-q] = δ_{ij,00} in graded order.
        for i in 0..self.trunc_u {
            for j in 0..self.trunc_s {
                let mut acc = if i == 0 && j == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                for p in 0..=i {
                    for q in 0..=j {
                        if p == 0 && q == 0 {
                            continue;
                        }
                        let a = &self.coeffs[p][q];
                        if !a.is_zero() {
                            acc -= a * &out.coeffs[i - p][j - q];
                        }
                    }
                }
                out.coeffs[i][j] = acc * &inv00;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BivariateSeries {
    /// One row per power of `u`, entries `p/q` per power of `s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.coeffs {
            let cells: Vec<String> = row
                .iter()
                .map(|c| {
                    if c.denom().is_one() {
                        c.numer().to_string()
                    } else {
                        format!("{}/{}", c.numer(), c.denom())
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through `(x_i, y_i)`, returning the
/// coefficients of the interpolant lowest degree first.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis = Π_{j≠i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (d, c) in basis.iter().enumerate() {
            result[d] += c * &scale;
        }
    }
    while result.len() > 1 && result.last().is_some_and(Zero::is_zero) {
        result.pop();
    }
    result
}

/// Evaluate a rational polynomial (lowest degree first) at `x`.
pub fn evaluate(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub(crate) fn is_nonnegative(x: &BigInt) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn poly_mul_examples() {
        let one_t = IntPolynomial::from_i64s(&[1, 1]);
        assert_eq!(one_t.mul(&one_t), IntPolynomial::from_i64s(&[1, 2, 1]));
        assert!(one_t.mul(&IntPolynomial::zero()).is_zero());
        let q = IntPolynomial::from_i64s(&[1, 1, 1]);
        assert_eq!(q.mul(&q), IntPolynomial::from_i64s(&[1, 2, 3, 2, 1]));
        assert_eq!(q.mul(&q).degree(), Some(4));
        assert_eq!(IntPolynomial::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn geometric_power_examples() {
        assert_eq!(
            geometric_power(2, 3),
            IntPolynomial::from_i64s(&[1, 3, 3, 1])
        );
        assert_eq!(geometric_power(1, 5), IntPolynomial::one());
        let g = geometric_power(3, 3);
        assert_eq!(g.degree(), Some(6));
        assert_eq!(g.coeff(3), BigInt::from(7));
        assert_eq!(geometric_power(4, 0), IntPolynomial::one());
    }

    #[test]
    fn restricted_binomial_examples() {
        assert_eq!(restricted_binomial(2, 1, 2), BigInt::from(2));
        for n in 0..5 {
            for l in 1..5 {
                assert_eq!(restricted_binomial(n, 0, l), BigInt::one());
            }
        }
        assert_eq!(restricted_binomial(3, 3, 3), BigInt::from(7));
        assert_eq!(restricted_binomial(3, -1, 3), BigInt::zero());
        assert_eq!(restricted_binomial(3, 7, 3), BigInt::zero());
    }

    /// Inclusion–exclusion count of compositions with bounded parts.
    fn restricted_binomial_oracle(n: i64, r: i64, l: i64) -> BigInt {
        if n == 0 {
            return if r == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let mut total = BigInt::zero();
        for i in 0..=n {
            let top = n - 1 + r - l * i;
            if top < n - 1 {
                break;
            }
            let term = binomial(n as u64, i as u64) * binomial(top as u64, (n - 1) as u64);
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn restricted_binomial_matches_inclusion_exclusion() {
        for n in 0..=6usize {
            for l in 1..=6usize {
                let mut sum = BigInt::zero();
                for r in -1..=(n * (l - 1) + 2) as i64 {
                    let got = restricted_binomial(n, r, l);
                    let want = if r < 0 {
                        BigInt::zero()
                    } else {
                        restricted_binomial_oracle(n as i64, r, l as i64)
                    };
                    assert_eq!(got, want, "n={n} r={r} l={l}");
                    sum += got;
                }
                assert_eq!(sum, BigInt::from(l).pow(n as u32));
            }
        }
    }

    #[test]
    fn binomial_transform_examples() {
        assert_eq!(
            binomial_transform_h(&big(&[0, 1, 3]), 3).unwrap(),
            big(&[0, 1, 0])
        );
        assert_eq!(
            binomial_transform_h(&big(&[1, 3, 6]), 3).unwrap(),
            big(&[1, 0, 0])
        );
        assert_eq!(
            binomial_transform_h(&big(&[0, 0, 0, 0]), 4).unwrap(),
            big(&[0, 0, 0, 0])
        );
        assert_eq!(
            binomial_transform_h(&big(&[1, 3]), 3),
            Err(Error::InsufficientCounts { need: 3, have: 2 })
        );
    }

    #[test]
    fn binomial_transform_inverts_the_generating_identity() {
        // Expand h(t)/(1-t)^n and transform back.
        let h = big(&[0, 4, 6, 1]);
        let n = 5;
        let counts: Vec<BigInt> = (0..8)
            .map(|r: usize| {
                (0..=r.min(h.len() - 1))
                    .map(|j| &h[j] * binomial((r - j + n - 1) as u64, (n - 1) as u64))
                    .sum()
            })
            .collect();
        let back = binomial_transform_h(&counts, n).unwrap();
        assert_eq!(&back[..4], &h[..]);
        assert!(back[4..].iter().all(Zero::is_zero));
    }

    #[test]
    fn series_identities() {
        let one = BivariateSeries::one(5, 4);
        let a = BivariateSeries::from_terms(&[(0, 0, 2), (1, 2, -3), (3, 1, 5)], 5, 4);
        assert_eq!(a.mul(&one).unwrap(), a);

        let one_minus_u = BivariateSeries::from_terms(&[(0, 0, 1), (1, 0, -1)], 5, 4);
        let geometric_u: Vec<_> = (0..5).map(|i| (i, 0, 1)).collect();
        let sum_u = BivariateSeries::from_terms(&geometric_u, 5, 4);
        assert_eq!(one_minus_u.mul(&sum_u).unwrap(), one);
        assert_eq!(one_minus_u.inverse().unwrap(), sum_u);

        let one_minus_us = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -1)], 5, 4);
        assert_eq!(
            one_minus_us.pow(2),
            BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -2), (2, 2, 1)], 5, 4)
        );
        let diag: Vec<_> = (0..4).map(|i| (i, i, 1)).collect();
        assert_eq!(
            one_minus_us.inverse().unwrap(),
            BivariateSeries::from_terms(&diag, 5, 4)
        );

        let one_minus_s = BivariateSeries::from_terms(&[(0, 0, 1), (0, 1, -1)], 2, 3);
        assert_eq!(
            one_minus_s.inverse().unwrap(),
            BivariateSeries::from_terms(&[(0, 0, 1), (0, 1, 1), (0, 2, 1)], 2, 3)
        );
    }

    #[test]
    fn series_errors() {
        let a = BivariateSeries::one(3, 3);
        let b = BivariateSeries::one(3, 4);
        assert_eq!(a.mul(&b), Err(Error::TruncationMismatch(3, 3, 3, 4)));
        assert!(a.add(&b).is_err());
        let u = BivariateSeries::from_terms(&[(1, 0, 1)], 3, 3);
        assert_eq!(u.inverse(), Err(Error::NonUnit));
    }

    #[test]
    fn series_display_uses_fractions() {
        let mut a = BivariateSeries::zero(1, 2);
        a.coeffs[0][1] = BigRational::new(3.into(), 6.into());
        assert_eq!(a.to_string(), "0 1/2\n");
    }

    #[test]
    fn interpolation_recovers_triangle_numbers() {
        let pts: Vec<_> = (0..3).map(|r| (rat(r), rat(r * (r + 1) / 2))).collect();
        let poly = interpolate(&pts);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(poly, vec![rat(0), half.clone(), half]);
        assert_eq!(evaluate(&poly, &rat(10)), rat(55));
    }
}
