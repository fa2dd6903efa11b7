//! Sparse Laurent polynomials in `e^{e_1}, ..., e^{e_n}` with half-integer
//! exponents and big-integer coefficients. Formal characters live here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{SignedPerm, Weight};

/// `sum_mu c_mu e^mu`; exponents are stored doubled, zero coefficients never.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(&Weight::zero(n), BigInt::one())
    }

    /// `c e^mu`.
    pub fn monomial(mu: &Weight, c: BigInt) -> Self {
        let mut p = Self::zero(mu.rank());
        p.add_term(mu.coords2().to_vec(), c);
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(doubled exponent, coefficient)`, ascending lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, mu: &Weight) -> BigInt {
        self.terms.get(mu.coords2()).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp2: Vec<i64>, c: BigInt) {
        debug_assert_eq!(exp2.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp2) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &BigInt) {
        assert_eq!(self.n, other.n, "rank mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Multiplication by the monomial `c e^mu`.
    pub fn mul_monomial(&self, mu2: &[i64], c: &BigInt) -> LaurentPoly {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            let e: Vec<i64> = k.iter().zip(mu2).map(|(a, b)| a + b).collect();
            out.terms.insert(e, v * c);
        }
        out
    }

    /// Image under `e^mu -> e^{w mu}`.
    pub fn act(&self, w: &SignedPerm) -> LaurentPoly {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.terms.insert(w.apply_doubled(k), v.clone());
        }
        out
    }

    pub fn is_invariant_under(&self, gens: &[SignedPerm]) -> bool {
        gens.iter().all(|w| &self.act(w) == self)
    }

    /// Sum of the coefficients, i.e. the image under every `e^mu -> 1`.
    pub fn specialize_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Runs lexicographic long division. For an exact division the quotient
    /// exponents lie in the box `[min_i(self) - min_i(divisor),
    /// max_i(self) - max_i(divisor)]` coordinate by coordinate; a candidate
    /// term outside it (or a non-integral coefficient) means inexact.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(self.n, divisor.n, "rank mismatch");
        let (d_lead, d_lc) = divisor.terms.last_key_value().ok_or(Error::InexactDivision)?;
        let mut quotient = Self::zero(self.n);
        if self.is_zero() {
            return Ok(quotient);
        }
        let (a_min, a_max) = self.coord_ranges();
        let (d_min, d_max) = divisor.coord_ranges();
        let lo: Vec<i64> = a_min.iter().zip(&d_min).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = a_max.iter().zip(&d_max).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        while let Some((lead, lc)) = rem.terms.last_key_value() {
            let e: Vec<i64> = lead.iter().zip(d_lead).map(|(a, b)| a - b).collect();
            let inside = e.iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h);
            if !inside || !(lc % d_lc).is_zero() {
                return Err(Error::InexactDivision);
            }
            let c = lc / d_lc;
            rem.add_scaled(&divisor.mul_monomial(&e, &c), &-BigInt::one());
            quotient.add_term(e, c);
        }
        Ok(quotient)
    }

    fn coord_ranges(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.n];
        let mut hi = vec![i64::MIN; self.n];
        for k in self.terms.keys() {
            for (i, &x) in k.iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let e: Vec<i64> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += va * vb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        LaurentPoly {
            n: self.n,
            terms: acc,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().rev().enumerate() {
            let mag = v.abs();
            match (i, v.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let w = Weight::from_doubled(k.clone());
            if w.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "e^({w})")?;
            } else {
                write!(f, "{mag}e^({w})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = poly(1, &[(&[2], 1), (&[2], -1), (&[0], 3)]);
        assert_eq!(p.len(), 1);
        let q = &p - &p;
        assert!(q.is_zero());
    }

    #[test]
    fn exact_division() {
        // (x - x^-1)(x + 1 + x^-1) = x^2 + x - x^-1 - x^-2, exponents doubled
        let a = poly(1, &[(&[2], 1), (&[-2], -1)]);
        let b = poly(1, &[(&[2], 1), (&[0], 1), (&[-2], 1)]);
        let prod = &a * &b;
        assert_eq!(prod, poly(1, &[(&[4], 1), (&[2], 1), (&[-2], -1), (&[-4], -1)]));
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let bad = poly(1, &[(&[4], 1), (&[0], 1)]);
        assert_eq!(bad.div_exact(&a), Err(Error::InexactDivision));
        assert!(LaurentPoly::zero(1).div_exact(&a).unwrap().is_zero());
    }

    #[test]
    fn display_highest_first() {
        let p = poly(1, &[(&[1], 1), (&[-1], -1)]);
        assert_eq!(p.to_string(), "e^(1/2) - e^(-1/2)");
        assert_eq!(LaurentPoly::one(2).to_string(), "1");
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i64..=3, n), -3i64..=3), 0..6).prop_map(
            move |ts| {
                let mut p = LaurentPoly::zero(n);
                for (e, c) in ts {
                    p.add_term(e.iter().map(|x| 2 * x).collect(), BigInt::from(c));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(a in arb_poly(2), b in arb_poly(2)) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }
    }
}
