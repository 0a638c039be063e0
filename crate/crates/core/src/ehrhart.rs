//! Lattice-point counts and h-vectors of hypersimplices by non-geometric
//! methods: the excedance/descent statistic, Ehrhart counting, and the
//! closed restricted-binomial formula. Also the truncated-series check of
//! the joint descent/excedance generating function.

use std::fmt;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::series::{self, geometric_power, restricted_binomial, BivariateSeries};

/// The hypersimplex `Δ_{k,n}` (closed) or `Δ'_{k,n}` (half-open): the slice
/// of `[0,1]^(n-1)` with coordinate sum in `[k-1, k]`, resp. `(k-1, k]`.
/// `Δ'_{1,n}` keeps its lower facet and equals `Δ_{1,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypersimplexId {
    pub k: usize,
    pub n: usize,
    pub half_open: bool,
}

impl HypersimplexId {
    pub fn new(k: usize, n: usize, half_open: bool) -> Result<Self> {
        if n < 2 || k < 1 || k > n - 1 {
            return Err(Error::InvalidHypersimplex { k, n });
        }
        Ok(Self { k, n, half_open })
    }

    pub fn half_open(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, true)
    }

    pub fn closed(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, false)
    }

    /// Ambient (and actual) dimension `n - 1`.
    pub fn dim(&self) -> usize {
        self.n - 1
    }

    /// Whether the lower facet is actually missing.
    pub fn removes_lower_facet(&self) -> bool {
        self.half_open && self.k > 1
    }
}

impl fmt::Display for HypersimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.half_open { "'" } else { "" };
        write!(f, "Δ{prime}_{{{},{}}}", self.k, self.n)
    }
}

/// h-vector `(c_0, ..., c_{n-2})` of a hypersimplex. The top coefficient
/// `c_{n-1}` is always zero for hypersimplices; it is dropped on
/// construction when zero and kept otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    owner: HypersimplexId,
    coeffs: Vec<BigInt>,
}

impl HVector {
    pub fn new(owner: HypersimplexId, mut coeffs: Vec<BigInt>) -> Self {
        let len = owner.n - 1;
        coeffs.resize(coeffs.len().max(len), BigInt::zero());
        while coeffs.len() > len && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { owner, coeffs }
    }

    pub fn from_u64s(owner: HypersimplexId, coeffs: &[u64]) -> Self {
        Self::new(owner, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn owner(&self) -> HypersimplexId {
        self.owner
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(series::is_nonnegative)
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Same coefficients, ignoring which polytope they belong to.
    pub fn same_coeffs(&self, other: &HVector) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `A(n, k)`: permutations of `n` letters with `k-1` descents.
pub fn eulerian_number(n: usize, k: usize) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(Error::EulerianRange { n, k });
    }
    Ok(eulerian_row(n)[k - 1].clone())
}

/// `[A(n,1), ..., A(n,n)]`, the descent distribution of `S_n`.
pub fn eulerian_row(n: usize) -> Vec<BigInt> {
    // row[d] = #{w ∈ S_len : des(w) = d}
    let mut row = vec![BigInt::from(1)];
    for len in 2..=n {
        let mut next = vec![BigInt::zero(); len];
        for (d, a) in row.iter().enumerate() {
            // insert letter `len`: d+1 slots keep des, len-1-d slots add one
            next[d] += a * BigInt::from(d + 1);
            next[d + 1] += a * BigInt::from(len - 1 - d);
        }
        row = next;
    }
    row
}

/// Joint distribution of `(exc, des)` over `S_m`; `cells[e][d]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointTable {
    m: usize,
    cells: Vec<Vec<u64>>,
}

impl JointTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cell(&self, exc: usize, des: usize) -> u64 {
        self.cells
            .get(exc)
            .and_then(|row| row.get(des))
            .copied()
            .unwrap_or(0)
    }

    pub fn row(&self, exc: usize) -> &[u64] {
        &self.cells[exc]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.cells.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.m)
            .map(|d| self.cells.iter().map(|r| r[d]).sum())
            .collect()
    }

    /// Rows are excedance counts, columns descent counts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exc");
        for d in 0..self.m {
            out.push_str(&format!(",des={d}"));
        }
        out.push('\n');
        for (e, row) in self.cells.iter().enumerate() {
            out.push_str(&e.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn joint_table(m: usize) -> JointTable {
    assert!(m >= 1, "joint_table needs m >= 1");
    let mut cells = vec![vec![0u64; m]; m];
    for w in Permutation::all(m) {
        cells[w.exc()][w.des()] += 1;
    }
    JointTable { m, cells }
}

/// Lattice points in the `r`-th dilate of the slice of `[0,1]^(n-1)` with
/// coordinate sum in `(k-1, k]` (half-open, `k > 1`) or `[k-1, k]`.
///
/// Unlike [`count_points`] this accepts any `n >= 1` and `k >= 1`, including
/// empty slices with `k >= n`.
pub fn lattice_count(k: usize, n: usize, r: usize, half_open: bool) -> BigInt {
    assert!(k >= 1 && n >= 1);
    let poly = geometric_power(r + 1, n - 1);
    let (k, r) = (k as i64, r as i64);
    let lo = if half_open && k > 1 {
        (k - 1) * r + 1
    } else {
        (k - 1) * r
    };
    poly.coeff_range_sum(lo, k * r)
}

pub fn count_points(id: HypersimplexId, r: usize) -> BigInt {
    lattice_count(id.k, id.n, r, id.half_open)
}

pub fn h_by_counting(id: HypersimplexId) -> HVector {
    let counts: Vec<BigInt> = (0..id.n).map(|r| count_points(id, r)).collect();
    let coeffs = series::binomial_transform_h(&counts, id.n).expect("n counts supplied");
    HVector::new(id, coeffs)
}

pub fn h_by_statistics(id: HypersimplexId) -> Result<HVector> {
    h_from_table(&joint_table(id.n - 1), id)
}

/// Row `exc = k-1` of a precomputed joint table for `S_{n-1}`.
pub fn h_from_table(table: &JointTable, id: HypersimplexId) -> Result<HVector> {
    if !id.half_open {
        return Err(Error::ClosedNotSupported);
    }
    assert_eq!(
        table.m(),
        id.n - 1,
        "joint table for the wrong symmetric group"
    );
    Ok(HVector::from_u64s(id, table.row(id.k - 1)))
}

/// `c_d = Σ_{i<k} (-1)^i C(n,i) (n choose (k-i)d - i)_{k-i}` for the closed
/// hypersimplex.
pub fn h_closed_formula(k: usize, n: usize) -> Result<HVector> {
    let id = HypersimplexId::closed(k, n)?;
    let coeffs = (0..n)
        .map(|d| {
            (0..k)
                .map(|i| {
                    let r = ((k - i) * d) as i64 - i as i64;
                    let term =
                        series::binomial(n as u64, i as u64) * restricted_binomial(n, r, k - i);
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    Ok(HVector::new(id, coeffs))
}

/// Ehrhart polynomial in `r`, interpolated on `r = 0..n-1`; coefficients
/// lowest degree first.
pub fn ehrhart_polynomial(id: HypersimplexId) -> Vec<BigRational> {
    let points: Vec<_> = (0..id.n)
        .map(|r| {
            (
                BigRational::from_integer(BigInt::from(r)),
                BigRational::from_integer(count_points(id, r)),
            )
        })
        .collect();
    series::interpolate(&points)
}

/// Location where the two sides of the generating-function identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesMismatch {
    /// Power of `u`; the polytope is `Δ'_{k+1, n+1}`.
    pub n: usize,
    /// Power of `s`.
    pub k: usize,
    pub series_coeff: String,
    pub lattice_count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoataHanReport {
    pub r: usize,
    pub max_n: usize,
    pub max_k: usize,
    pub checked: usize,
    pub mismatch: Option<SeriesMismatch>,
}

impl FoataHanReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.checked == (self.max_n + 1) * (self.max_k + 1)
    }
}

/// `(1-s) / ((1-u)^(r+1) (1-us)^(-r) - s(1-u))`, truncated after `u^max_n`
/// and `s^max_k`.
pub fn foata_han_series(r: usize, max_n: usize, max_k: usize) -> BivariateSeries {
    let (tu, ts) = (max_n + 1, max_k + 1);
    let one_minus_u = BivariateSeries::from_terms(&[(0, 0, 1), (1, 0, -1)], tu, ts);
    let one_minus_s = BivariateSeries::from_terms(&[(0, 0, 1), (0, 1, -1)], tu, ts);
    let one_minus_us = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -1)], tu, ts);
    let s = BivariateSeries::from_terms(&[(0, 1, 1)], tu, ts);

    let inv_one_minus_us = one_minus_us.inverse().expect("unit constant term");
    let first = one_minus_u
        .pow(r as u32 + 1)
        .mul(&inv_one_minus_us.pow(r as u32))
        .expect("same truncation");
    let denom = first
        .sub(&s.mul(&one_minus_u).expect("same truncation"))
        .expect("same truncation");
    one_minus_s
        .mul(&denom.inverse().expect("constant term is 1"))
        .expect("same truncation")
}

/// Compare every coefficient `[u^n s^k]` of [`foata_han_series`] with the
/// lattice count of `Δ'_{k+1, n+1}` at dilation `r`. Stops at the first
/// mismatch.
pub fn foata_han_verify(r: usize, max_n: usize, max_k: usize) -> FoataHanReport {
    let series = foata_han_series(r, max_n, max_k);
    let mut report = FoataHanReport {
        r,
        max_n,
        max_k,
        checked: 0,
        mismatch: None,
    };
    for n in 0..=max_n {
        for k in 0..=max_k {
            let want = BigRational::from_integer(lattice_count(k + 1, n + 1, r, true));
            let got = series.coeff(n, k);
            if *got != want {
                report.mismatch = Some(SeriesMismatch {
                    n,
                    k,
                    series_coeff: got.to_string(),
                    lattice_count: want.to_string(),
                });
                return report;
            }
            report.checked += 1;
        }
    }
    report
}
