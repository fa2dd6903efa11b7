//! Weights on the half-integer lattice, the root data of `sp(2n)`, its odd
//! roots inside `osp(1|2n)`, and `so(2n+1)`, plus the common Weyl group of
//! signed permutations.
//!
//! Conventions: the form is `(e_i, e_j) = delta_ij`, and the positive roots
//! are `-e_i + e_j`, `e_i + e_j` (`i < j`) together with `2e_i` (resp. `e_i`).
//! A dominant weight therefore has *increasing* coordinates
//! `0 <= l_1 <= ... <= l_n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{parse_err, Error, Result};
use crate::rational::{parse_rational_at, Rational};

/// A point of `(1/2 Z)^n`, stored as doubled integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords2: Vec<i64>,
}

impl Weight {
    pub fn from_doubled(coords2: Vec<i64>) -> Self {
        Weight { coords2 }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight {
            coords2: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            coords2: vec![0; n],
        }
    }

    /// The unit vector `e_i`, `i` counted from 0.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.coords2[i] = 2;
        w
    }

    pub fn rank(&self) -> usize {
        self.coords2.len()
    }

    pub fn coords2(&self) -> &[i64] {
        &self.coords2
    }

    pub fn coord(&self, i: usize) -> Rational {
        BigRational::new(BigInt::from(self.coords2[i]), BigInt::from(2))
    }

    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|&c| c == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.coords2.iter().all(|c| c % 2 == 0)
    }

    /// Integral with `0 <= l_1 <= l_2 <= ... <= l_n`.
    pub fn is_dominant(&self) -> bool {
        self.is_integral()
            && self.coords2.first().is_none_or(|&c| c >= 0)
            && self.coords2.windows(2).all(|w| w[0] <= w[1])
    }

    /// Integer coordinates; `None` if some coordinate is a half-integer.
    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.is_integral()
            .then(|| self.coords2.iter().map(|c| c / 2).collect())
    }

    /// `1/2 (l + rho_1, l + rho_1) - 1/2 (rho_1, rho_1) = sum l_i (l_i + 1) / 2`.
    pub fn conformal_weight(&self) -> Rational {
        let num: i64 = self.coords2.iter().map(|c| c * (c + 2)).sum();
        BigRational::new(BigInt::from(num), BigInt::from(8))
    }

    /// [`Self::conformal_weight`] as an integer, when it is one.
    pub fn conformal_weight_int(&self) -> Option<i64> {
        let num: i64 = self.coords2.iter().map(|c| c * (c + 2)).sum();
        (num % 8 == 0).then_some(num / 8)
    }

    /// Whether `other - self` is a non-negative integer combination of
    /// simple roots `2e_1, e_2 - e_1, ..., e_n - e_{n-1}`.
    pub fn dominated_by(&self, other: &Weight) -> bool {
        assert_eq!(self.rank(), other.rank());
        let mut suffix = 0i64;
        for (a, b) in self.coords2.iter().zip(&other.coords2).rev() {
            let d = b - a;
            if d % 2 != 0 {
                return false;
            }
            suffix += d / 2;
            if suffix < 0 {
                return false;
            }
        }
        suffix % 2 == 0
    }

    fn check_rank(&self, other: &Weight) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }
}

/// Total order used to pick highest weights: first by conformal weight, then
/// lexicographically on the coordinates read from `l_n` down to `l_1`.
///
/// If `mu` lies strictly below `lambda` in the dominance order then
/// `mu < lambda` here, so the maximum of any finite set is a maximal element.
pub fn dominant_order(a: &Weight, b: &Weight) -> Ordering {
    a.conformal_weight()
        .cmp(&b.conformal_weight())
        .then_with(|| a.coords2.iter().rev().cmp(b.coords2.iter().rev()))
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Weight {
            coords2: self.coords2.iter().zip(&rhs.coords2).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Weight {
            coords2: self.coords2.iter().zip(&rhs.coords2).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords2: self.coords2.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords2.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        Ok(())
    }
}

/// Parses `"l1,l2,...,ln"`; entries are integers or halves such as `3/2`.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        if s.trim().is_empty() {
            return Err(parse_err(0, "empty weight"));
        }
        let mut coords2 = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let r = parse_rational_at(part, pos)?;
            let doubled = r * BigRational::from_integer(BigInt::from(2));
            if !doubled.is_integer() {
                return Err(parse_err(pos, format!("`{}` is not a half-integer", part.trim())));
            }
            let v = doubled
                .to_integer()
                .to_i64()
                .ok_or_else(|| parse_err(pos, "coordinate out of range"))?;
            coords2.push(v);
            pos += part.len() + 1;
        }
        Ok(Weight { coords2 })
    }
}

/// `(u, v) = sum u_i v_i`.
pub fn inner(u: &Weight, v: &Weight) -> Result<Rational> {
    u.check_rank(v)?;
    Ok(BigRational::new(BigInt::from(inner4(u, v)), BigInt::from(4)))
}

/// Four times the inner product, as an integer.
pub(crate) fn inner4(u: &Weight, v: &Weight) -> i64 {
    u.coords2.iter().zip(&v.coords2).map(|(a, b)| a * b).sum()
}

/// A signed permutation: `w(e_j) = sign_j e_{perm_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
    parity: i8,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(perm.len(), signs.len());
        let flips = signs.iter().filter(|&&s| s < 0).count();
        let parity = perm_sign(&perm) * if flips % 2 == 0 { 1 } else { -1 };
        SignedPerm {
            perm,
            signs,
            parity,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect(), vec![1; n])
    }

    /// `(-1)^{l(w)}`, which equals the determinant of `w`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight {
            coords2: self.apply_doubled(&w.coords2),
        }
    }

    pub(crate) fn apply_doubled(&self, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0; c.len()];
        for (j, &x) in c.iter().enumerate() {
            out[self.perm[j]] = self.signs[j] as i64 * x;
        }
        out
    }
}

fn perm_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `2^n n!`, or `None` on overflow.
pub fn weyl_order(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(2 * k))
}

/// All signed permutations of `n` letters with their length parities.
pub fn weyl_elements(n: usize, cap: u128) -> Result<Vec<SignedPerm>> {
    let order = weyl_order(n).unwrap_or(u128::MAX);
    if order > cap {
        return Err(Error::CapExceeded {
            cap: "weyl",
            needed: order,
            limit: cap,
        });
    }
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(order as usize);
    for p in perms {
        for mask in 0..(1u32 << n) {
            let signs = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPerm::new(p.clone(), signs));
        }
    }
    Ok(out)
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Reflections in the simple roots `2e_1` and `e_{i+1} - e_i`; they generate
/// the Weyl group.
pub fn simple_reflections(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::with_capacity(n);
    let mut signs = vec![1; n];
    if n > 0 {
        signs[0] = -1;
        out.push(SignedPerm::new((0..n).collect(), signs));
    }
    for i in 1..n {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i - 1, i);
        out.push(SignedPerm::new(p, vec![1; n]));
    }
    out
}

/// Positive roots and Weyl vectors for `sp(2n)`, the odd part of
/// `osp(1|2n)`, and `so(2n+1)`.
#[derive(Clone, Debug)]
pub struct RootData {
    pub n: usize,
    /// Positive roots of `sp(2n)`.
    pub phi0_plus: Vec<Weight>,
    /// Positive odd roots `e_i`.
    pub phi1_plus: Vec<Weight>,
    /// Positive roots of `so(2n+1)`.
    pub phi_plus: Vec<Weight>,
    pub rho0: Weight,
    pub rho1: Weight,
    pub rho: Weight,
}

pub fn build_root_data(n: usize) -> Result<RootData> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let e = |i| Weight::epsilon(n, i);
    let mut mixed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            mixed.push(&e(j) - &e(i));
            mixed.push(&e(i) + &e(j));
        }
    }
    let long: Vec<Weight> = (0..n).map(|i| &e(i) + &e(i)).collect();
    let short: Vec<Weight> = (0..n).map(e).collect();

    let mut phi0_plus = mixed.clone();
    phi0_plus.extend(long);
    let mut phi_plus = mixed;
    phi_plus.extend(short.iter().cloned());

    let rho0 = Weight::from_doubled((1..=n as i64).map(|i| 2 * i).collect());
    let rho1 = Weight::from_doubled(vec![1; n]);
    let rho = &rho0 - &rho1;
    Ok(RootData {
        n,
        phi0_plus,
        phi1_plus: short,
        phi_plus,
        rho0,
        rho1,
        rho,
    })
}

/// Dominant weights with conformal weight at most `bound`, sorted by
/// conformal weight and then lexicographically on the coordinates.
pub fn dominant_weights_up_to(n: usize, bound: u64) -> Vec<Weight> {
    fn rec(n: usize, prefix: &mut Vec<i64>, min: i64, budget: i64, out: &mut Vec<Weight>) {
        if prefix.len() == n {
            out.push(Weight::from_ints(prefix));
            return;
        }
        let mut v = min;
        while v * (v + 1) / 2 <= budget {
            // every remaining coordinate is at least v
            let slots = (n - prefix.len()) as i64;
            if slots * v * (v + 1) / 2 > budget {
                break;
            }
            prefix.push(v);
            rec(n, prefix, v, budget - v * (v + 1) / 2, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), 0, bound as i64, &mut out);
    out.sort_by(|a, b| {
        a.conformal_weight_int()
            .cmp(&b.conformal_weight_int())
            .then_with(|| a.coords2.cmp(&b.coords2))
    });
    out
}
