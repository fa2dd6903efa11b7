//! Truncated power series in one variable `q` with big-integer coefficients.
//!
//! A [`TruncSeries`] stores the coefficients of `q^0..=q^trunc` and nothing
//! else. Binary operations work at the smaller of the two truncation orders,
//! so comparing series computed to different depths is always well defined.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `c_0 + c_1 q + ... + c_trunc q^trunc + O(q^{trunc+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRecord", into = "SeriesRecord")]
pub struct TruncSeries {
    trunc: usize,
    coeffs: Vec<BigInt>,
}

/// Wire form: `{"trunc": N, "coeffs": ["1", "0", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub trunc: usize,
    pub coeffs: Vec<String>,
}

impl From<TruncSeries> for SeriesRecord {
    fn from(s: TruncSeries) -> Self {
        SeriesRecord {
            trunc: s.trunc,
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<SeriesRecord> for TruncSeries {
    type Error = String;

    fn try_from(r: SeriesRecord) -> Result<Self, String> {
        if r.coeffs.len() != r.trunc + 1 {
            return Err(format!(
                "expected {} coefficients, found {}",
                r.trunc + 1,
                r.coeffs.len()
            ));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("`{s}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncSeries {
            trunc: r.trunc,
            coeffs,
        })
    }
}

impl TruncSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncSeries {
            trunc,
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(BigInt::one(), 0, trunc)
    }

    /// `c q^k`, or zero if `k > trunc`.
    pub fn monomial(c: BigInt, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or drops the tail so that exactly `trunc + 1`
    /// coefficients remain.
    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<BigInt>) -> Self {
        coeffs.resize(trunc + 1, BigInt::zero());
        TruncSeries { trunc, coeffs }
    }

    pub fn from_i64s(trunc: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(trunc, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops everything above `q^trunc`; `trunc` may not grow.
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc);
        TruncSeries {
            trunc: t,
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.trunc);
        for i in 0..=self.trunc {
            if i + k > self.trunc {
                break;
            }
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies in place by `(1 - q^j)^e`.
    pub fn mul_euler_factor(&mut self, j: usize, e: i64) {
        if e == 0 || j == 0 || j > self.trunc {
            return;
        }
        let factor = binomial_factor(j, e, self.trunc);
        *self = &*self * &factor;
    }
}

/// Expansion of `(1 - q^j)^e` to order `trunc`: the coefficient of
/// `q^{jk}` is `(-1)^k binom(e, k)` with the generalized binomial.
fn binomial_factor(j: usize, e: i64, trunc: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(trunc);
    let mut c = BigInt::one();
    let e = BigInt::from(e);
    let mut k = 0usize;
    while j * k <= trunc {
        s.coeffs[j * k] = c.clone();
        k += 1;
        // c_k = c_{k-1} * (-(e - k + 1)) / k, exact for integer e.
        c = -(&c * (&e - BigInt::from(k) + 1u32)) / BigInt::from(k);
        if c.is_zero() {
            break;
        }
    }
    s
}

/// `prod_{j=1}^{trunc} (1 - q^j)^{e_j}` expanded to order `trunc`.
pub fn euler_product(exps: impl Fn(usize) -> i64, trunc: usize) -> TruncSeries {
    let mut s = TruncSeries::one(trunc);
    for j in 1..=trunc {
        s.mul_euler_factor(j, exps(j));
    }
    s
}

/// The partition generating function `P(q)` to order `trunc`.
pub fn partition_series(trunc: usize) -> TruncSeries {
    euler_product(|_| -1, trunc)
}

pub fn series_add(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    let t = a.trunc.min(b.trunc);
    TruncSeries {
        trunc: t,
        coeffs: (0..=t).map(|k| &a.coeffs[k] + &b.coeffs[k]).collect(),
    }
}

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    let t = a.trunc.min(b.trunc);
    let mut out = TruncSeries::zero(t);
    for (i, x) in a.coeffs[..=t].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=t - i].iter().enumerate() {
            if !y.is_zero() {
                out.coeffs[i + j] += x * y;
            }
        }
    }
    out
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        series_add(self, rhs)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        series_add(self, &-rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        series_mul(self, rhs)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}
