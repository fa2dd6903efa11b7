//! The fermionic Fock space of `h (x) W_n` at bounded degree, where `W_n` is
//! the `2n`-dimensional symplectic space with basis `psi_1..psi_n`,
//! `psi*_1..psi*_n` and `<psi*_i, psi_j> = delta_ij`.
//!
//! A factor `(m, a, w)` stands for the mode `(e_a (x) x_w)(-m)`, where
//! `x_w = psi_w` for `w <= n` and `x_w = psi*_{w-n}` otherwise. Modes satisfy
//! `{x(p), y(q)} = p <x,y> delta_{p+q,0}`, positive modes and zero modes kill
//! the vacuum, and a monomial lists its factors in increasing order.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{null_space, SparseVec, Span};
use crate::modealg::GenKey;
use crate::rational::{format_rational, int, rat, Rational};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    /// The mode is `-m`, `m >= 1`.
    pub m: u32,
    /// Index into the orthonormal basis of `h`, from 1.
    pub a: usize,
    /// Index into `psi_1..psi_n, psi*_1..psi*_n`, from 1.
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockMonomial(Vec<Factor>);

impl FockMonomial {
    pub fn vacuum() -> Self {
        FockMonomial(Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|f| f.m as usize).sum()
    }

    /// Sorts `factors` and returns the sign of the sorting permutation, or
    /// `None` if a factor repeats.
    pub fn from_factors(mut factors: Vec<Factor>) -> Option<(i64, Self)> {
        let mut sign = 1i64;
        // insertion sort, counting transpositions
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] > factors[j] {
                factors.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if factors.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some((sign, FockMonomial(factors)))
    }
}

/// A finite linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, Rational>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(FockMonomial::vacuum())
    }

    pub fn basis(m: FockMonomial) -> Self {
        let mut v = Self::zero();
        v.add_term(m, Rational::one());
        v
    }

    pub fn terms(&self) -> &BTreeMap<FockMonomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &FockMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(FockMonomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    fn map_monomials(&self, f: impl Fn(&FockMonomial) -> FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Coordinates against an index of monomials; `None` if a monomial is missing.
    pub fn to_sparse(&self, index: &HashMap<FockMonomial, usize>) -> Option<SparseVec> {
        self.terms
            .iter()
            .map(|(m, c)| index.get(m).map(|i| (*i, c.clone())))
            .collect()
    }
}

/// A Chevalley generator of `sp(2n)`. Index 0 is the long simple root
/// `2 e_1`; index `i >= 1` is `e_{i+1} - e_i`. `H(i)` reads coordinate `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpGen {
    E(usize),
    F(usize),
    H(usize),
}

/// One invariant level.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub level: usize,
    pub dim: usize,
    pub basis: Vec<FockVector>,
}

/// Outcome of [`FockSpace::virasoro_check`].
#[derive(Clone, Debug)]
pub struct VirasoroReport {
    /// `omega(3) omega` as computed.
    pub omega3_omega: FockVector,
    /// Twice the vacuum coefficient of `omega(3) omega`.
    pub c: Rational,
    pub expected_c: Rational,
    /// `omega(1)` acts as the degree on every basis monomial checked.
    pub grading_ok: bool,
    pub grading_levels: usize,
}

impl VirasoroReport {
    pub fn passed(&self) -> bool {
        self.grading_ok && self.c == self.expected_c
    }
}

/// One level of [`FockSpace::generation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationLevel {
    pub level: usize,
    pub generated: usize,
    pub invariant: usize,
    /// Every generated state is annihilated by the Chevalley generators.
    pub generated_invariant: bool,
}

impl GenerationLevel {
    pub fn ok(&self) -> bool {
        self.generated_invariant && self.generated == self.invariant
    }
}

/// Which operators [`FockSpace::generation_check`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    /// `L_{a,b}(-s,-t)` with `s, t >= 1`.
    Creation,
    /// The field modes `u(l)` of the degree-2 states `u = L_{a,b}(-1,-1) 1`.
    FieldModes,
}

/// `2n` symplectic fermions tensored with a `d`-dimensional `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub n: usize,
    pub d: usize,
}

impl FockSpace {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if d == 0 {
            return Err(Error::Invalid("dim h must be at least 1".into()));
        }
        Ok(FockSpace { n, d })
    }

    /// `<x_w, x_v>` on `W_n`.
    pub fn symplectic(&self, w: usize, v: usize) -> i64 {
        let n = self.n;
        if w > n && v <= n && w - n == v {
            1
        } else if w <= n && v > n && v - n == w {
            -1
        } else {
            0
        }
    }

    /// Weight of `x_w` as integer coordinates.
    fn w_weight(&self, w: usize) -> (usize, i64) {
        if w <= self.n {
            (w - 1, 1)
        } else {
            (w - self.n - 1, -1)
        }
    }

    pub fn weight(&self, m: &FockMonomial) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        for f in m.factors() {
            let (i, s) = self.w_weight(f.w);
            out[i] += s;
        }
        out
    }

    /// Number of monomials of degree `level`, the coefficient of `q^level`
    /// in `prod_j (1+q^j)^{2nd}`; saturates.
    pub fn basis_count(&self, level: usize) -> u128 {
        let per_mode = 2 * self.n * self.d;
        let mut dp = vec![0u128; level + 1];
        dp[0] = 1;
        for m in 1..=level {
            for _ in 0..per_mode {
                for k in (m..=level).rev() {
                    dp[k] = dp[k].saturating_add(dp[k - m]);
                }
            }
        }
        dp[level]
    }

    fn all_factors(&self, max_m: usize) -> Vec<Factor> {
        let mut v = Vec::new();
        for m in 1..=max_m as u32 {
            for a in 1..=self.d {
                for w in 1..=2 * self.n {
                    v.push(Factor { m, a, w });
                }
            }
        }
        v
    }

    /// All monomials of degree `level`, sorted.
    pub fn graded_basis(&self, level: usize, caps: &Caps) -> Result<Vec<FockMonomial>> {
        let needed = self.basis_count(level);
        if needed > caps.basis as u128 {
            return Err(Error::CapExceeded {
                cap: "basis",
                needed,
                limit: caps.basis as u128,
            });
        }
        fn rec(fs: &[Factor], start: usize, budget: usize, cur: &mut Vec<Factor>, out: &mut Vec<FockMonomial>) {
            if budget == 0 {
                out.push(FockMonomial(cur.clone()));
                return;
            }
            for i in start..fs.len() {
                let m = fs[i].m as usize;
                if m > budget {
                    break;
                }
                cur.push(fs[i]);
                rec(fs, i + 1, budget - m, cur, out);
                cur.pop();
            }
        }
        let fs = self.all_factors(level);
        let mut out = Vec::new();
        rec(&fs, 0, level, &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    /// `(e_a (x) x_w)(p)` on a monomial.
    fn mode_on_monomial(&self, a: usize, w: usize, p: i64, mono: &FockMonomial) -> FockVector {
        let fs = mono.factors();
        if p < 0 {
            let f = Factor { m: (-p) as u32, a, w };
            let pos = fs.partition_point(|x| *x < f);
            if fs.get(pos) == Some(&f) {
                return FockVector::zero();
            }
            let mut v = fs.to_vec();
            v.insert(pos, f);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let mut out = FockVector::zero();
            out.add_term(FockMonomial(v), int(sign));
            return out;
        }
        let mut out = FockVector::zero();
        if p == 0 {
            return out;
        }
        for (i, f) in fs.iter().enumerate() {
            if f.m as i64 != p || f.a != a {
                continue;
            }
            let pairing = self.symplectic(w, f.w);
            if pairing == 0 {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let mut v = fs.to_vec();
            v.remove(i);
            out.add_term(FockMonomial(v), int(sign * p * pairing));
        }
        out
    }

    /// `(e_a (x) x_w)(p) v`.
    pub fn creation_annihilation(&self, a: usize, w: usize, p: i64, v: &FockVector) -> FockVector {
        v.map_monomials(|m| self.mode_on_monomial(a, w, p, m))
    }

    /// Image of `x_w` under a Chevalley generator, as `(coefficient, w')` pairs.
    fn sp_on_w(&self, g: SpGen, w: usize) -> Vec<(i64, usize)> {
        let n = self.n;
        let psi = |j: usize| j;
        let star = |j: usize| n + j;
        match g {
            SpGen::E(0) => {
                if w == star(1) {
                    vec![(1, psi(1))]
                } else {
                    vec![]
                }
            }
            SpGen::F(0) => {
                if w == psi(1) {
                    vec![(1, star(1))]
                } else {
                    vec![]
                }
            }
            SpGen::E(i) => {
                if w == psi(i) {
                    vec![(1, psi(i + 1))]
                } else if w == star(i + 1) {
                    vec![(-1, star(i))]
                } else {
                    vec![]
                }
            }
            SpGen::F(i) => {
                if w == psi(i + 1) {
                    vec![(1, psi(i))]
                } else if w == star(i) {
                    vec![(-1, star(i + 1))]
                } else {
                    vec![]
                }
            }
            SpGen::H(i) => {
                let (j, s) = self.w_weight(w);
                if j + 1 == i {
                    vec![(s, w)]
                } else {
                    vec![]
                }
            }
        }
    }

    fn check_gen(&self, g: SpGen) -> Result<()> {
        let ok = match g {
            SpGen::E(i) | SpGen::F(i) => i < self.n,
            SpGen::H(i) => (1..=self.n).contains(&i),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{g:?} is not a generator of sp({})", 2 * self.n)))
        }
    }

    /// All Chevalley `e_i` and `f_i`.
    pub fn chevalley(&self) -> Vec<SpGen> {
        (0..self.n).flat_map(|i| [SpGen::E(i), SpGen::F(i)]).collect()
    }

    /// Derivation action of a Chevalley generator.
    pub fn sp_action(&self, g: SpGen, v: &FockVector) -> Result<FockVector> {
        self.check_gen(g)?;
        Ok(v.map_monomials(|mono| {
            let mut out = FockVector::zero();
            for (i, f) in mono.factors().iter().enumerate() {
                for (c, w2) in self.sp_on_w(g, f.w) {
                    let mut fs = mono.factors().to_vec();
                    fs[i].w = w2;
                    if let Some((sign, m)) = FockMonomial::from_factors(fs) {
                        out.add_term(m, int(sign * c));
                    }
                }
            }
            out
        }))
    }

    /// Basis of the `sp(2n)`-invariants in degree `level`.
    pub fn invariant_subspace(&self, level: usize, caps: &Caps) -> Result<InvariantSubspace> {
        let basis: Vec<FockMonomial> = self
            .graded_basis(level, caps)?
            .into_iter()
            .filter(|m| self.weight(m).iter().all(|x| *x == 0))
            .collect();
        let mut rows: BTreeMap<(usize, FockMonomial), SparseVec> = BTreeMap::new();
        for (gi, g) in self.chevalley().into_iter().enumerate() {
            for (col, m) in basis.iter().enumerate() {
                let img = self.sp_action(g, &FockVector::basis(m.clone()))?;
                for (out, c) in img.terms {
                    rows.entry((gi, out)).or_default().insert(col, c);
                }
            }
        }
        let rows: Vec<SparseVec> = rows.into_values().collect();
        let kernel = null_space(&rows, basis.len());
        let vectors = kernel
            .iter()
            .map(|k| {
                let mut v = FockVector::zero();
                for (i, c) in k {
                    v.add_term(basis[*i].clone(), c.clone());
                }
                v
            })
            .collect::<Vec<_>>();
        Ok(InvariantSubspace {
            level,
            dim: vectors.len(),
            basis: vectors,
        })
    }

    /// `:x(k) y(l):` applied to `v`.
    fn normal_pair(&self, x: (usize, usize), k: i64, y: (usize, usize), l: i64, v: &FockVector) -> FockVector {
        if k < l {
            let t = self.creation_annihilation(y.0, y.1, l, v);
            self.creation_annihilation(x.0, x.1, k, &t)
        } else {
            let t = self.creation_annihilation(x.0, x.1, k, v);
            self.creation_annihilation(y.0, y.1, l, &t).scale(&int(-1))
        }
    }

    /// `L_{a,b}(k,l) = 1/2 sum_j :(a psi_j)(k)(b psi*_j)(l): - 1/2 sum_j :(a psi*_j)(k)(b psi_j)(l):`.
    pub fn mode_apply(&self, a: usize, b: usize, k: i64, l: i64, v: &FockVector) -> FockVector {
        let half = rat(1, 2);
        let mut out = FockVector::zero();
        for j in 1..=self.n {
            let (psi, star) = (j, self.n + j);
            out.add_scaled(&self.normal_pair((a, psi), k, (b, star), l, v), &half);
            out.add_scaled(&self.normal_pair((a, star), k, (b, psi), l, v), &-half.clone());
        }
        out
    }

    pub fn apply_key(&self, key: &GenKey, v: &FockVector) -> FockVector {
        self.mode_apply(key.a, key.b, key.m, key.n, v)
    }

    /// `u(l) v` for `u = L_{a,b}(-1,-1) 1`, i.e. `sum_k L_{a,b}(l-1-k, k) v`.
    pub fn field_mode(&self, a: usize, b: usize, l: i64, v: &FockVector) -> FockVector {
        let top = v.max_degree() as i64;
        let mut out = FockVector::zero();
        for k in (l - 1 - top)..=top {
            out.add_scaled(&self.mode_apply(a, b, l - 1 - k, k, v), &Rational::one());
        }
        out
    }

    /// `omega = sum_a L_{a,a}(-1,-1) 1`.
    pub fn omega(&self) -> FockVector {
        let mut w = FockVector::zero();
        for a in 1..=self.d {
            w.add_scaled(&self.mode_apply(a, a, -1, -1, &FockVector::vacuum()), &Rational::one());
        }
        w
    }

    /// `omega(l) v = sum_a L_{a,a}(l) v`.
    pub fn omega_mode(&self, l: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for a in 1..=self.d {
            out.add_scaled(&self.field_mode(a, a, l, v), &Rational::one());
        }
        out
    }

    /// Central charge from `omega(3) omega = (c/2) 1` and the grading by
    /// `omega(1)` on every basis monomial up to `levels`.
    pub fn virasoro_check(&self, levels: usize, caps: &Caps) -> Result<VirasoroReport> {
        let omega = self.omega();
        let w3 = self.omega_mode(3, &omega);
        let vac = FockMonomial::vacuum();
        if w3.terms.keys().any(|m| *m != vac) {
            return Err(Error::IdentityFailed(
                "omega(3) omega is not a multiple of the vacuum".into(),
            ));
        }
        let c = w3.coeff(&vac) * int(2);
        let bases = (0..=levels)
            .map(|k| self.graded_basis(k, caps))
            .collect::<Result<Vec<_>>>()?;
        let grading_ok = bases.par_iter().enumerate().all(|(k, basis)| {
            basis.iter().all(|m| {
                let v = FockVector::basis(m.clone());
                self.omega_mode(1, &v) == v.scale(&int(k as i64))
            })
        });
        Ok(VirasoroReport {
            omega3_omega: w3,
            c,
            expected_c: int(-2 * (self.n * self.d) as i64),
            grading_ok,
            grading_levels: levels,
        })
    }

    /// Compares, level by level up to `maxlevel`, the span of the states
    /// reachable from the vacuum with the invariant subspace.
    pub fn generation_check(
        &self,
        maxlevel: usize,
        generators: Generators,
        caps: &Caps,
    ) -> Result<Vec<GenerationLevel>> {
        let invariants = (0..=maxlevel)
            .into_par_iter()
            .map(|k| self.invariant_subspace(k, caps))
            .collect::<Result<Vec<_>>>()?;
        let index: Vec<HashMap<FockMonomial, usize>> = (0..=maxlevel)
            .map(|k| {
                self.graded_basis(k, caps)
                    .map(|b| b.into_iter().enumerate().map(|(i, m)| (m, i)).collect())
            })
            .collect::<Result<_>>()?;
        let mut spans: Vec<Span> = vec![Span::new(); maxlevel + 1];
        let mut states: Vec<Vec<FockVector>> = vec![Vec::new(); maxlevel + 1];
        let push = |v: FockVector, spans: &mut Vec<Span>, states: &mut Vec<Vec<FockVector>>| -> Result<bool> {
            if v.is_zero() {
                return Ok(false);
            }
            let lvl = v.max_degree();
            let sv = v.to_sparse(&index[lvl]).ok_or_else(|| {
                Error::Invalid("generated state is not homogeneous".into())
            })?;
            if spans[lvl].insert(&sv) {
                states[lvl].push(v);
                Ok(true)
            } else {
                Ok(false)
            }
        };
        push(FockVector::vacuum(), &mut spans, &mut states)?;
        let pairs: Vec<(usize, usize)> = (1..=self.d).flat_map(|a| (a..=self.d).map(move |b| (a, b))).collect();
        match generators {
            Generators::Creation => {
                let mut keys = BTreeSet::new();
                for &(a, b) in &pairs {
                    for s in 1..maxlevel as i64 {
                        for t in 1..=(maxlevel as i64 - s) {
                            keys.insert(GenKey::new(a, b, -s, -t));
                        }
                    }
                }
                // the creation operators commute, so one sweep in level order suffices
                for lvl in 0..=maxlevel {
                    let sources = states[lvl].clone();
                    for v in &sources {
                        for key in &keys {
                            if lvl as i64 + key.degree() > maxlevel as i64 {
                                continue;
                            }
                            push(self.apply_key(key, v), &mut spans, &mut states)?;
                        }
                    }
                }
            }
            Generators::FieldModes => {
                let mut processed = vec![0usize; maxlevel + 1];
                loop {
                    let mut grew = false;
                    for lvl in 0..=maxlevel {
                        while processed[lvl] < states[lvl].len() {
                            let v = states[lvl][processed[lvl]].clone();
                            processed[lvl] += 1;
                            let lo = lvl as i64 + 1 - maxlevel as i64;
                            let hi = lvl as i64 + 1;
                            for &(a, b) in &pairs {
                                for l in lo..=hi {
                                    let img = self.field_mode(a, b, l, &v);
                                    grew |= push(img, &mut spans, &mut states)?;
                                }
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
            }
        }
        let chev = self.chevalley();
        (0..=maxlevel)
            .map(|lvl| {
                let mut inv = true;
                for v in &states[lvl] {
                    for g in &chev {
                        inv &= self.sp_action(*g, v)?.is_zero();
                    }
                }
                Ok(GenerationLevel {
                    level: lvl,
                    generated: spans[lvl].rank(),
                    invariant: invariants[lvl].dim,
                    generated_invariant: inv,
                })
            })
            .collect()
    }
}

/// The first failing level as an error.
pub fn require_generated(levels: &[GenerationLevel]) -> Result<()> {
    match levels.iter().find(|l| !l.ok()) {
        None => Ok(()),
        Some(l) => Err(Error::SpanDeficiency {
            level: l.level,
            generated: l.generated,
            invariant: l.invariant,
        }),
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}](-{})", self.a, self.w, self.m)
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x} ")?;
        }
        write!(f, "1")
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{} {m}", format_rational(c)))
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}
