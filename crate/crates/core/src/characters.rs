//! The q-graded `sp(2n)` character of the fermionic Fock space on
//! `h (x) W_n` and the graded dimension of its invariant part.
//!
//! Two routes to the invariant series are provided:
//! [`theorem2_character`] sums `m^0_{l_1..l_d} B_{l_1}(q)...B_{l_d}(q)` over
//! multisets of dominant weights, while [`invariant_series_oracle`] expands the
//! full fermionic character and reads off the trivial isotypic component.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::branching::branching_product;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qseries::TruncSeries;
use crate::rootsys::{dominant_weights_up_to, Weight};
use crate::weylchar::CharacterTable;
use crate::Caps;

/// A q-series whose coefficients are Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLaurent {
    pub n: usize,
    pub trunc: usize,
    /// `levels[k]` is the coefficient of `q^k`.
    pub levels: Vec<LaurentPoly>,
}

impl QLaurent {
    /// Image under every `e^mu -> 1`.
    pub fn specialize_ones(&self) -> TruncSeries {
        TruncSeries::from_coeffs(
            self.trunc,
            self.levels.iter().map(LaurentPoly::specialize_ones).collect(),
        )
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if d == 0 {
        return Err(Error::Invalid("dim h must be at least 1".into()));
    }
    Ok(())
}

/// `prod_{i=1..n, j>=1} (1 + e^{-e_i} q^j)^d (1 + e^{e_i} q^j)^d` to order `trunc`.
pub fn fermion_character(n: usize, d: usize, trunc: usize) -> Result<QLaurent> {
    check_nd(n, d)?;
    let mut levels = vec![LaurentPoly::zero(n); trunc + 1];
    levels[0] = LaurentPoly::one(n);
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut mu = vec![0i64; n];
            mu[i] = 2 * sign;
            for j in 1..=trunc {
                for _ in 0..d {
                    // multiply by (1 + e^mu q^j) in place, top level first
                    for k in (j..=trunc).rev() {
                        let shifted = levels[k - j].mul_monomial(&mu, &BigInt::one());
                        levels[k] = &levels[k] + &shifted;
                    }
                }
            }
        }
    }
    Ok(QLaurent { n, trunc, levels })
}

/// Splits `chi = sum_l ch L(l) S_l(q)`; weights absent from every level are
/// absent from the result.
pub fn decompose_by_level(
    table: &CharacterTable,
    chi: &QLaurent,
) -> Result<BTreeMap<Weight, TruncSeries>> {
    let per_level: Vec<_> = chi
        .levels
        .par_iter()
        .map(|p| table.decompose(p))
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<Weight, TruncSeries> = BTreeMap::new();
    for (k, m) in per_level.into_iter().enumerate() {
        for (l, c) in m {
            let entry = out
                .entry(l)
                .or_insert_with(|| TruncSeries::zero(chi.trunc));
            *entry = &*entry + &TruncSeries::monomial(c, k, chi.trunc);
        }
    }
    Ok(out)
}

/// The trivial isotypic component of the fermionic character.
pub fn invariant_series_oracle_with(
    table: &CharacterTable,
    d: usize,
    trunc: usize,
) -> Result<TruncSeries> {
    let chi = fermion_character(table.rank(), d, trunc)?;
    let parts = decompose_by_level(table, &chi)?;
    Ok(parts
        .get(&Weight::zero(table.rank()))
        .cloned()
        .unwrap_or_else(|| TruncSeries::zero(trunc)))
}

pub fn invariant_series_oracle(n: usize, d: usize, trunc: usize, caps: &Caps) -> Result<TruncSeries> {
    check_nd(n, d)?;
    invariant_series_oracle_with(&CharacterTable::new(n, caps)?, d, trunc)
}

/// Non-decreasing index sequences of length `d` into `hs` (sorted ascending)
/// with total at most `trunc`.
fn multisets(hs: &[usize], d: usize, trunc: usize) -> Vec<Vec<usize>> {
    fn rec(
        hs: &[usize],
        d: usize,
        start: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let slots = d - cur.len();
        for i in start..hs.len() {
            if hs[i] * slots > budget {
                break;
            }
            cur.push(i);
            rec(hs, d, i, budget - hs[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(hs, d, 0, trunc, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Number of distinct orderings of a sorted multiset: `d! / prod mult!`.
fn arrangements(sorted: &[usize]) -> BigInt {
    let mut total = BigInt::one();
    let mut run = 0u32;
    for (i, x) in sorted.iter().enumerate() {
        run = if i > 0 && sorted[i - 1] == *x { run + 1 } else { 1 };
        // multiply by (i+1)/run incrementally keeps everything integral
        total = total * BigInt::from(i + 1) / BigInt::from(run);
    }
    total
}

/// `sum_{l_1..l_d} m^0_{l_1..l_d} B_{l_1}(q) ... B_{l_d}(q)` to order `trunc`.
pub fn theorem2_character_with(
    table: &CharacterTable,
    d: usize,
    trunc: usize,
) -> Result<TruncSeries> {
    let n = table.rank();
    check_nd(n, d)?;
    let weights = dominant_weights_up_to(n, trunc as u64);
    let hs: Vec<usize> = weights
        .iter()
        .map(|w| w.conformal_weight_int().unwrap() as usize)
        .collect();
    let bs: Vec<TruncSeries> = weights
        .iter()
        .map(|w| branching_product(w, n, trunc))
        .collect::<Result<_>>()?;
    let zero = Weight::zero(n);
    let terms: Vec<Option<TruncSeries>> = multisets(&hs, d, trunc)
        .par_iter()
        .map(|idx| {
            let lambdas: Vec<Weight> = idx.iter().map(|&i| weights[i].clone()).collect();
            let m0 = table.tensor_multiplicity(&lambdas, &zero)?;
            if m0.is_zero() {
                return Ok(None);
            }
            let prod = idx
                .iter()
                .fold(TruncSeries::one(trunc), |acc, &i| &acc * &bs[i]);
            Ok(Some(prod.scale(&(m0 * arrangements(idx)))))
        })
        .collect::<Result<_>>()?;
    Ok(terms
        .iter()
        .flatten()
        .fold(TruncSeries::zero(trunc), |acc, t| &acc + t))
}

pub fn theorem2_character(n: usize, d: usize, trunc: usize, caps: &Caps) -> Result<TruncSeries> {
    check_nd(n, d)?;
    theorem2_character_with(&CharacterTable::new(n, caps)?, d, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::branching_product;

    fn s(t: usize, c: &[i64]) -> TruncSeries {
        TruncSeries::from_i64s(t, c)
    }

    fn table(n: usize) -> CharacterTable {
        CharacterTable::new(n, &Caps::default()).unwrap()
    }

    #[test]
    fn fermion_character_low_levels() {
        for (n, d) in [(1, 1), (1, 2), (2, 1), (2, 3)] {
            let chi = fermion_character(n, d, 3).unwrap();
            assert_eq!(chi.levels[0], LaurentPoly::one(n));
            let dims = chi.specialize_ones();
            assert_eq!(dims.coeff(1), BigInt::from(2 * n * d));
            let t = table(n);
            for level in &chi.levels {
                assert!(level.is_invariant_under(t.generators()));
            }
        }
        // (1+x q)(1+x^-1 q)(1+x q^2)(1+x^-1 q^2) at q^2: 1 + x + x^-1
        let chi = fermion_character(1, 1, 2).unwrap();
        assert_eq!(chi.levels[2].to_string(), "e^(1) + 1 + e^(-1)");
        assert_eq!(chi.specialize_ones().coeff(2), BigInt::from(3));
    }

    #[test]
    fn specialized_character_is_product() {
        // prod_j (1 + q^j)^{2nd}
        let (n, d, t) = (2, 2, 8);
        let mut expected = TruncSeries::one(t);
        for j in 1..=t {
            for _ in 0..2 * n * d {
                expected = &expected * &(&TruncSeries::one(t) + &TruncSeries::monomial(1.into(), j, t));
            }
        }
        assert_eq!(fermion_character(n, d, t).unwrap().specialize_ones(), expected);
    }

    #[test]
    fn levels_decompose_into_branching_functions() {
        for (n, t) in [(1usize, 10usize), (2, 7)] {
            let tab = table(n);
            let chi = fermion_character(n, 1, t).unwrap();
            let parts = decompose_by_level(&tab, &chi).unwrap();
            assert!(!parts.is_empty());
            for (l, series) in &parts {
                assert_eq!(series, &branching_product(l, n, t).unwrap(), "n={n} l={l}");
            }
            // every weight with h <= t must appear
            for l in dominant_weights_up_to(n, t as u64) {
                assert!(parts.contains_key(&l), "{l}");
            }
        }
    }

    #[test]
    fn theorem2_examples() {
        let caps = Caps::default();
        assert_eq!(
            theorem2_character(1, 1, 8, &caps).unwrap(),
            branching_product(&Weight::zero(1), 1, 8).unwrap()
        );
        assert_eq!(theorem2_character(1, 2, 3, &caps).unwrap(), s(3, &[1, 0, 3, 4]));
        for n in 1..=2 {
            for d in 2..=4 {
                let c = theorem2_character(n, d, 2, &caps).unwrap();
                assert_eq!(c, s(2, &[1, 0, (d * (d + 1) / 2) as i64]), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let caps = Caps::default();
        assert_eq!(invariant_series_oracle(1, 1, 6, &caps).unwrap(), s(6, &[1, 0, 1, 1, 2, 2, 4]));
        assert_eq!(invariant_series_oracle(1, 2, 3, &caps).unwrap(), s(3, &[1, 0, 3, 4]));
        assert_eq!(invariant_series_oracle(2, 3, 0, &caps).unwrap(), TruncSeries::one(0));
    }

    #[test]
    fn both_routes_agree_small() {
        let caps = Caps::default();
        for (n, d, t) in [(1, 3, 6), (2, 2, 5), (2, 1, 6)] {
            assert_eq!(
                theorem2_character(n, d, t, &caps).unwrap(),
                invariant_series_oracle(n, d, t, &caps).unwrap(),
                "n={n} d={d}"
            );
        }
    }

    #[test]
    fn multiset_bookkeeping() {
        assert_eq!(arrangements(&[0, 0, 1]), BigInt::from(3));
        assert_eq!(arrangements(&[0, 1, 2]), BigInt::from(6));
        assert_eq!(arrangements(&[2, 2, 2, 2]), BigInt::from(1));
        assert_eq!(arrangements(&[0, 0, 1, 1]), BigInt::from(6));
        let ms = multisets(&[0, 1, 3], 2, 3);
        assert_eq!(ms, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1]]);
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(matches!(fermion_character(1, 0, 2), Err(Error::Invalid(_))));
        assert!(matches!(fermion_character(0, 1, 2), Err(Error::ZeroRank)));
    }
}
