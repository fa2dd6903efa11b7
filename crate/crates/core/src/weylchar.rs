//! Characters of finite-dimensional simple `sp(2n)`-modules and their
//! tensor-product multiplicities.
//!
//! `ch L(l)` is obtained as the exact quotient of two alternating sums,
//! `A(l + rho_0) / A(rho_0)`. Decomposition peels off highest weights in the
//! order of [`dominant_order`]. [`CharacterTable`] caches characters and
//! pairwise tensor decompositions behind read-write locks; entries are pure
//! functions of their keys, so concurrent inserts are harmless.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rootsys::{
    build_root_data, dominant_order, inner4, simple_reflections, weyl_elements, SignedPerm,
    Weight,
};
use crate::Caps;

/// Multiplicities indexed by highest weight.
pub type Multiplicities = BTreeMap<Weight, BigInt>;

const MAX_PEEL_STEPS: usize = 1_000_000;

/// `sum_{w in W} (-1)^{l(w)} e^{w(mu)}`.
pub fn alternating_sum(mu: &Weight, weyl: &[SignedPerm]) -> LaurentPoly {
    let mut out = LaurentPoly::zero(mu.rank());
    for w in weyl {
        out.add_term(w.apply_doubled(mu.coords2()), BigInt::from(w.parity()));
    }
    out
}

fn require_dominant(lambda: &Weight) -> Result<()> {
    if lambda.rank() == 0 {
        return Err(Error::ZeroRank);
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(())
}

/// `ch L(lambda)` without caching.
pub fn irr_character(lambda: &Weight, weyl: &[SignedPerm]) -> Result<LaurentPoly> {
    require_dominant(lambda)?;
    let rho0 = build_root_data(lambda.rank())?.rho0;
    let num = alternating_sum(&(lambda + &rho0), weyl);
    let den = alternating_sum(&rho0, weyl);
    num.div_exact(&den)
}

/// `prod_{a > 0} (l + rho_0, a) / (rho_0, a)`.
pub fn weyl_dim(lambda: &Weight) -> Result<BigInt> {
    require_dominant(lambda)?;
    let rd = build_root_data(lambda.rank())?;
    let shifted = lambda + &rd.rho0;
    let mut acc = BigRational::one();
    for alpha in &rd.phi0_plus {
        acc *= BigRational::new(
            BigInt::from(inner4(&shifted, alpha)),
            BigInt::from(inner4(&rd.rho0, alpha)),
        );
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer())
}

/// Characters and tensor decompositions for a fixed rank, memoized.
pub struct CharacterTable {
    n: usize,
    weyl: Vec<SignedPerm>,
    generators: Vec<SignedPerm>,
    rho0: Weight,
    denominator: LaurentPoly,
    chars: RwLock<HashMap<Weight, Arc<LaurentPoly>>>,
    pairs: RwLock<HashMap<(Weight, Weight), Arc<Multiplicities>>>,
}

impl CharacterTable {
    pub fn new(n: usize, caps: &Caps) -> Result<Self> {
        let rd = build_root_data(n)?;
        let weyl = weyl_elements(n, caps.weyl)?;
        let denominator = alternating_sum(&rd.rho0, &weyl);
        Ok(CharacterTable {
            n,
            generators: simple_reflections(n),
            weyl,
            rho0: rd.rho0,
            denominator,
            chars: RwLock::default(),
            pairs: RwLock::default(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn weyl(&self) -> &[SignedPerm] {
        &self.weyl
    }

    /// Simple reflections; invariance under these is invariance under `W`.
    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: w.rank(),
            });
        }
        Ok(())
    }

    pub fn character(&self, lambda: &Weight) -> Result<Arc<LaurentPoly>> {
        self.check_rank(lambda)?;
        if let Some(c) = self.chars.read().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        require_dominant(lambda)?;
        let num = alternating_sum(&(lambda + &self.rho0), &self.weyl);
        let ch = Arc::new(num.div_exact(&self.denominator)?);
        self.chars
            .write()
            .unwrap()
            .entry(lambda.clone())
            .or_insert_with(|| ch.clone());
        Ok(ch)
    }

    /// The unique `m` with `chi = sum_l m_l ch L(l)`.
    pub fn decompose(&self, chi: &LaurentPoly) -> Result<Multiplicities> {
        if chi.rank() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: chi.rank(),
            });
        }
        if !chi.is_invariant_under(&self.generators) {
            return Err(Error::NotWeylInvariant);
        }
        let mut rem = chi.clone();
        let mut out = Multiplicities::new();
        for _ in 0..MAX_PEEL_STEPS {
            let top = rem
                .terms()
                .filter(|(e, _)| e.first().is_none_or(|&c| c >= 0) && e.windows(2).all(|w| w[0] <= w[1]))
                .map(|(e, _)| Weight::from_doubled(e.to_vec()))
                .max_by(dominant_order);
            let Some(top) = top else {
                return if rem.is_zero() {
                    Ok(out)
                } else {
                    Err(Error::NotWeylInvariant)
                };
            };
            if !top.is_integral() {
                return Err(Error::NotDominant(top.to_string()));
            }
            let m = rem.coeff(&top);
            rem.add_scaled(&*self.character(&top)?, &-&m);
            out.insert(top, m);
        }
        Err(Error::NonTerminating)
    }

    /// Decomposition of `L(l) (x) L(m)`, cached under the sorted pair.
    pub fn tensor_pair(&self, a: &Weight, b: &Weight) -> Result<Arc<Multiplicities>> {
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(m) = self.pairs.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let prod = &*self.character(&key.0)? * &*self.character(&key.1)?;
        let m = Arc::new(self.decompose(&prod)?);
        self.pairs
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| m.clone());
        Ok(m)
    }

    /// Folds pairwise decompositions over `lambdas`. When `target` is given,
    /// intermediate components that can no longer reach `L(target)` are
    /// dropped: after the first `i` factors a component `k` survives only if
    /// `k` is dominated by `target + (sum of the remaining highest weights)`.
    fn fold(&self, lambdas: &[Weight], target: Option<&Weight>) -> Result<Multiplicities> {
        let mut cur = Multiplicities::new();
        let Some(first) = lambdas.first() else {
            cur.insert(Weight::zero(self.n), BigInt::one());
            return Ok(cur);
        };
        for l in lambdas {
            self.check_rank(l)?;
            require_dominant(l)?;
        }
        let mut suffix = vec![Weight::zero(self.n); lambdas.len() + 1];
        for i in (0..lambdas.len()).rev() {
            suffix[i] = &suffix[i + 1] + &lambdas[i];
        }
        let reachable = |k: &Weight, i: usize| match target {
            Some(t) => k.dominated_by(&(t + &suffix[i])),
            None => true,
        };
        if reachable(first, 1) {
            cur.insert(first.clone(), BigInt::one());
        }
        for (i, l) in lambdas.iter().enumerate().skip(1) {
            let mut next = Multiplicities::new();
            for (k, c) in &cur {
                for (kk, m) in self.tensor_pair(k, l)?.iter() {
                    if reachable(kk, i + 1) {
                        *next.entry(kk.clone()).or_default() += c * m;
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
        Ok(cur)
    }

    /// Full decomposition of `L(l_1) (x) ... (x) L(l_d)`.
    pub fn tensor_decomposition(&self, lambdas: &[Weight]) -> Result<Multiplicities> {
        self.fold(lambdas, None)
    }

    /// `m^mu_{l_1, ..., l_d}`.
    pub fn tensor_multiplicity(&self, lambdas: &[Weight], mu: &Weight) -> Result<BigInt> {
        self.check_rank(mu)?;
        require_dominant(mu)?;
        Ok(self
            .fold(lambdas, Some(mu))?
            .get(mu)
            .cloned()
            .unwrap_or_default())
    }

    pub fn cached_characters(&self) -> usize {
        self.chars.read().unwrap().len()
    }
}

/// Multiplicities as a map of plain highest weights to integers, in the
/// [`dominant_order`] sequence, skipping zeros.
pub fn sorted_multiplicities(m: &Multiplicities) -> Vec<(Weight, BigInt)> {
    let mut v: Vec<(Weight, BigInt)> = m
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();
    v.sort_by(|a, b| dominant_order(&a.0, &b.0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::dominant_weights_up_to;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn table(n: usize) -> CharacterTable {
        CharacterTable::new(n, &Caps::default()).unwrap()
    }

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn alternating_sum_examples() {
        let w1 = weyl_elements(1, 10).unwrap();
        let rho = build_root_data(1).unwrap().rho;
        assert_eq!(alternating_sum(&rho, &w1), poly(1, &[(&[1], 1), (&[-1], -1)]));
        assert!(alternating_sum(&Weight::zero(1), &w1).is_zero());
        let w2 = weyl_elements(2, 10).unwrap();
        let a = alternating_sum(&w(&[1, 2]), &w2);
        assert_eq!(a.len(), 8);
        assert!(a.terms().all(|(_, c)| c == &BigInt::one() || c == &-BigInt::one()));
    }

    #[test]
    fn character_examples() {
        let t = table(1);
        assert_eq!(*t.character(&w(&[1])).unwrap(), poly(1, &[(&[2], 1), (&[-2], 1)]));
        assert_eq!(
            *t.character(&w(&[2])).unwrap(),
            poly(1, &[(&[4], 1), (&[0], 1), (&[-4], 1)])
        );
        for n in 1..=3 {
            assert_eq!(*table(n).character(&Weight::zero(n)).unwrap(), LaurentPoly::one(n));
        }
        assert!(matches!(t.character(&Weight::from_doubled(vec![1])), Err(Error::NotDominant(_))));
        assert!(matches!(table(2).character(&w(&[1, 0])), Err(Error::NotDominant(_))));
        // the uncached path agrees
        let w2 = weyl_elements(2, 10).unwrap();
        assert_eq!(irr_character(&w(&[1, 2]), &w2).unwrap(), *table(2).character(&w(&[1, 2])).unwrap());
    }

    #[test]
    fn weyl_dim_examples() {
        for k in 0..6 {
            assert_eq!(weyl_dim(&w(&[k])).unwrap(), BigInt::from(k + 1));
        }
        assert_eq!(weyl_dim(&Weight::zero(3)).unwrap(), BigInt::one());
        assert_eq!(weyl_dim(&w(&[0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(weyl_dim(&w(&[1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(weyl_dim(&w(&[0, 2])).unwrap(), BigInt::from(10));
        assert_eq!(weyl_dim(&w(&[0, 0, 1])).unwrap(), BigInt::from(6));
    }

    #[test]
    fn character_dimension_matches_weyl_dim() {
        for n in 1..=3 {
            let t = table(n);
            for l in dominant_weights_up_to(n, 6) {
                let ch = t.character(&l).unwrap();
                assert_eq!(ch.specialize_ones(), weyl_dim(&l).unwrap(), "{l}");
                let d = t.decompose(&ch).unwrap();
                assert_eq!(d, Multiplicities::from([(l.clone(), BigInt::one())]));
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let t = table(1);
        let c = t.character(&w(&[1])).unwrap();
        let d = t.decompose(&(&*c * &*c)).unwrap();
        assert_eq!(d, Multiplicities::from([(w(&[2]), 1.into()), (w(&[0]), 1.into())]));
        assert_eq!(
            t.decompose(&LaurentPoly::one(1)).unwrap(),
            Multiplicities::from([(w(&[0]), 1.into())])
        );
        let t2 = table(2);
        let c = t2.character(&w(&[0, 1])).unwrap();
        let d = t2.decompose(&(&*c * &*c)).unwrap();
        // 4 (x) 4 = 10 + 5 + 1
        assert_eq!(
            d,
            Multiplicities::from([
                (w(&[0, 2]), 1.into()),
                (w(&[1, 1]), 1.into()),
                (w(&[0, 0]), 1.into())
            ])
        );
        let total: BigInt = d.iter().map(|(l, m)| m * weyl_dim(l).unwrap()).sum();
        assert_eq!(total, BigInt::from(16));
    }

    #[test]
    fn decompose_rejects_non_invariant() {
        let t = table(1);
        assert_eq!(t.decompose(&poly(1, &[(&[2], 1)])), Err(Error::NotWeylInvariant));
        let t2 = table(2);
        assert_eq!(
            t2.decompose(&poly(2, &[(&[0, 2], 1), (&[0, -2], 1)])),
            Err(Error::NotWeylInvariant)
        );
    }

    #[test]
    fn decompose_handles_virtual_characters() {
        let t = table(1);
        let chi = &*t.character(&w(&[1])).unwrap() - &*t.character(&w(&[3])).unwrap();
        let d = t.decompose(&chi).unwrap();
        assert_eq!(d, Multiplicities::from([(w(&[1]), 1.into()), (w(&[3]), (-1).into())]));
    }

    #[test]
    fn tensor_multiplicity_examples() {
        let t = table(1);
        let e1 = w(&[1]);
        let zero = w(&[0]);
        assert_eq!(t.tensor_multiplicity(&[e1.clone(), e1.clone()], &zero).unwrap(), 1.into());
        assert_eq!(t.tensor_multiplicity(&vec![e1.clone(); 3], &zero).unwrap(), 0.into());
        assert_eq!(t.tensor_multiplicity(&vec![e1.clone(); 4], &zero).unwrap(), 2.into());
        for l in dominant_weights_up_to(2, 6) {
            assert_eq!(table(2).tensor_multiplicity(std::slice::from_ref(&l), &l).unwrap(), 1.into());
        }
        assert_eq!(t.tensor_multiplicity(&[], &zero).unwrap(), 1.into());
    }

    #[test]
    fn pruned_fold_matches_full_decomposition() {
        let t = table(2);
        let ls = [w(&[0, 1]), w(&[1, 1]), w(&[0, 1]), w(&[0, 2])];
        let full = t.tensor_decomposition(&ls).unwrap();
        for mu in dominant_weights_up_to(2, 10) {
            let m = t.tensor_multiplicity(&ls, &mu).unwrap();
            assert_eq!(m, full.get(&mu).cloned().unwrap_or_default(), "{mu}");
        }
    }

    #[test]
    fn pair_dimensions_add_up() {
        for n in 1..=2 {
            let t = table(n);
            let ws = dominant_weights_up_to(n, 4);
            for a in &ws {
                for b in &ws {
                    let m = t.tensor_pair(a, b).unwrap();
                    let total: BigInt = m.iter().map(|(l, c)| c * weyl_dim(l).unwrap()).sum();
                    assert_eq!(total, weyl_dim(a).unwrap() * weyl_dim(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn trivial_in_pair_iff_equal() {
        for n in 1..=2 {
            let t = table(n);
            let ws = dominant_weights_up_to(n, 4);
            let zero = Weight::zero(n);
            for a in &ws {
                for b in &ws {
                    let m = t.tensor_multiplicity(&[a.clone(), b.clone()], &zero).unwrap();
                    assert_eq!(m, BigInt::from((a == b) as i64), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn concurrent_cache_use_is_consistent() {
        use rayon::prelude::*;
        let t = table(2);
        let ws = dominant_weights_up_to(2, 6);
        let dims: Vec<BigInt> = ws
            .par_iter()
            .map(|l| t.character(l).unwrap().specialize_ones())
            .collect();
        for (l, d) in ws.iter().zip(dims) {
            assert_eq!(d, weyl_dim(l).unwrap());
        }
        assert_eq!(t.cached_characters(), ws.len());
    }
}
