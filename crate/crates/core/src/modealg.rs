//! The Lie algebra spanned by the quadratic generators
//! `L_{a,b}(m,n) = 1/2 :a(m) b(n):` of a rank-`d` Heisenberg algebra with the
//! central element set to a scalar `r`, its vacuum module, and the degree-2
//! product it induces on symmetric `d x d` matrices.
//!
//! `h` carries the orthonormal basis `e_1..e_d`, so `(a,b) = delta_{ab}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::rational::{format_rational, int, parse_rational_at, rat, Rational};

/// `L_{a,b}(m,n)` in canonical form: `(m, a) <= (n, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenKey {
    pub m: i64,
    pub n: i64,
    pub a: usize,
    pub b: usize,
}

impl GenKey {
    /// Canonicalises through `L_{a,b}(m,n) = L_{b,a}(n,m)`.
    pub fn new(a: usize, b: usize, m: i64, n: i64) -> Self {
        if (m, a) <= (n, b) {
            GenKey { m, n, a, b }
        } else {
            GenKey { m: n, n: m, a: b, b: a }
        }
    }

    /// Both modes negative.
    pub fn is_creation(&self) -> bool {
        self.m < 0 && self.n < 0
    }

    /// `-(m+n)`, the amount by which the generator raises the grading.
    pub fn degree(&self) -> i64 {
        -(self.m + self.n)
    }

    fn max_index(&self) -> usize {
        self.a.max(self.b)
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{},{}]({},{})", self.a, self.b, self.m, self.n)
    }
}

impl FromStr for GenKey {
    type Err = Error;

    /// Parses `L[a,b](m,n)`, whitespace allowed between tokens.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Cursor { s, pos: 0 };
        p.expect('L')?;
        p.expect('[')?;
        let a = p.int()?;
        p.expect(',')?;
        let b = p.int()?;
        p.expect(']')?;
        p.expect('(')?;
        let m = p.int()?;
        p.expect(',')?;
        let n = p.int()?;
        p.expect(')')?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(parse_err(p.pos, "trailing input"));
        }
        if a < 1 || b < 1 {
            return Err(parse_err(0, "basis indices start at 1"));
        }
        Ok(GenKey::new(a as usize, b as usize, m, n))
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_err(self.pos, format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.s[start..];
        let len = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && (*c == '-' || *c == '+')))
            .count();
        self.pos += len;
        rest[..len]
            .parse()
            .map_err(|_| parse_err(start, "expected an integer"))
    }
}

/// A linear combination of generators plus a multiple of the vacuum scalar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenCombo {
    pub terms: BTreeMap<GenKey, Rational>,
    pub central: Rational,
}

impl GenCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(k: GenKey) -> Self {
        let mut g = Self::zero();
        g.add_term(k, Rational::one());
        g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add_term(&mut self, k: GenKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &GenCombo, c: &Rational) {
        for (k, x) in &other.terms {
            self.add_term(*k, x * c);
        }
        self.central += &other.central * c;
    }

    pub fn scale(&self, c: &Rational) -> GenCombo {
        let mut out = GenCombo::zero();
        out.add_scaled(self, c);
        out
    }
}

impl fmt::Display for GenCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{} {k}", format_rational(c)))
            .collect();
        if !self.central.is_zero() {
            parts.push(format_rational(&self.central));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

fn delta(x: i64) -> bool {
    x == 0
}

fn pair(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

fn same_sign(s: i64, t: i64) -> i64 {
    match (s.signum(), t.signum()) {
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => 0,
    }
}

/// `[L_{a,b}(s,t), L_{u,v}(k,l)]` with the central element evaluated at `r`.
pub fn bracket(x: &GenKey, y: &GenKey, r: &Rational) -> GenCombo {
    let GenKey { a, b, m: s, n: t } = *x;
    let GenKey { a: u, b: v, m: k, n: l } = *y;
    let half = rat(1, 2);
    let mut out = GenCombo::zero();
    let mut lin = |cond: bool, coef: i64, key: GenKey| {
        if cond && coef != 0 {
            out.add_term(key, int(coef) * &half);
        }
    };
    lin(delta(t + k), t * pair(b, u), GenKey::new(a, v, s, l));
    lin(delta(s + k), s * pair(a, u), GenKey::new(b, v, t, l));
    lin(delta(t + l), t * pair(b, v), GenKey::new(a, u, s, k));
    lin(delta(s + l), s * pair(a, v), GenKey::new(b, u, t, k));
    let sigma = same_sign(s, t);
    if sigma != 0 {
        let mut c = 0i64;
        if delta(t + k) && delta(s + l) {
            c += pair(b, u) * pair(a, v);
        }
        if delta(t + l) && delta(s + k) {
            c += pair(b, v) * pair(a, u);
        }
        out.central = int(s * t * sigma * c) * r / int(4);
    }
    out
}

/// Bilinear extension of [`bracket`]; central parts bracket to zero.
pub fn bracket_combo(x: &GenCombo, y: &GenCombo, r: &Rational) -> GenCombo {
    let mut out = GenCombo::zero();
    for (kx, cx) in &x.terms {
        for (ky, cy) in &y.terms {
            out.add_scaled(&bracket(kx, ky, r), &(cx * cy));
        }
    }
    out
}

/// A state of the vacuum module: a combination of monomials
/// `L(k_1) ... L(k_j) 1` in creation generators, keys non-increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBWState {
    terms: BTreeMap<Vec<GenKey>, Rational>,
}

impl PBWState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(Vec::new(), c);
        s
    }

    /// `L(k_1) ... L(k_j) 1`; every key must be a creation generator.
    pub fn monomial(keys: &[GenKey]) -> Result<Self> {
        if let Some(k) = keys.iter().find(|k| !k.is_creation()) {
            return Err(Error::Invalid(format!("{k} is not a creation generator")));
        }
        let mut v = keys.to_vec();
        v.sort_unstable_by(|x, y| y.cmp(x));
        let mut s = Self::zero();
        s.add_term(v, Rational::one());
        Ok(s)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<GenKey>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, keys: &[GenKey]) -> Rational {
        self.terms.get(keys).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest degree of a monomial, 0 for the zero state.
    pub fn max_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.iter().map(GenKey::degree).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, keys: Vec<GenKey>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(keys) {
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

    pub fn add_scaled(&mut self, other: &PBWState, c: &Rational) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> PBWState {
        let mut out = PBWState::zero();
        out.add_scaled(self, c);
        out
    }

    fn insert_creation(&self, k: GenKey) -> PBWState {
        let mut out = PBWState::zero();
        for (m, c) in &self.terms {
            let mut v = m.clone();
            let pos = v.partition_point(|x| *x > k);
            v.insert(pos, k);
            out.add_term(v, c.clone());
        }
        out
    }
}

impl fmt::Display for PBWState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let body: Vec<String> = m.iter().map(|k| k.to_string()).collect();
                let body = if body.is_empty() { "1".to_string() } else { format!("{} 1", body.join(" ")) };
                format!("{} {body}", format_rational(c))
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

fn apply_to_monomial(x: &GenKey, mono: &[GenKey], r: &Rational) -> PBWState {
    if x.is_creation() {
        let mut v = mono.to_vec();
        let pos = v.partition_point(|y| y > x);
        v.insert(pos, *x);
        let mut s = PBWState::zero();
        s.add_term(v, Rational::one());
        return s;
    }
    let Some((y1, rest)) = mono.split_first() else {
        return PBWState::zero();
    };
    // x y1 rest = [x, y1] rest + y1 (x rest)
    let mut out = apply_to_monomial(x, rest, r).insert_creation(*y1);
    let br = bracket(x, y1, r);
    if !br.is_zero() {
        let mut rest_state = PBWState::zero();
        rest_state.add_term(rest.to_vec(), Rational::one());
        for (k, c) in &br.terms {
            out.add_scaled(&apply_to_monomial(k, rest, r), c);
        }
        out.add_scaled(&rest_state, &br.central);
    }
    out
}

/// Normal form of `x v`.
pub fn apply_generator(x: &GenKey, v: &PBWState, r: &Rational) -> PBWState {
    let mut out = PBWState::zero();
    for (m, c) in &v.terms {
        out.add_scaled(&apply_to_monomial(x, m, r), c);
    }
    out
}

/// `L_{a,b}(l) v = sum_k L_{a,b}(l-1-k, k) v`; only finitely many `k`
/// contribute because a positive mode larger than the degree of `v` kills it.
pub fn mode_operator(a: usize, b: usize, l: i64, v: &PBWState, r: &Rational) -> PBWState {
    let top = v.max_degree();
    let mut out = PBWState::zero();
    for k in (l - 1 - top)..=top {
        let key = GenKey::new(a, b, l - 1 - k, k);
        out.add_scaled(&apply_generator(&key, v, r), &Rational::one());
    }
    out
}

/// A symmetric `d x d` rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    d: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    /// From row-major entries; rejects non-square or non-symmetric input.
    pub fn new(d: usize, entries: Vec<Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("matrix dimension must be at least 1".into()));
        }
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: d * d,
            });
        }
        for i in 0..d {
            for j in 0..i {
                if entries[i * d + j] != entries[j * d + i] {
                    return Err(Error::Invalid(format!("entry ({},{}) breaks symmetry", i + 1, j + 1)));
                }
            }
        }
        Ok(SymMatrix { d, entries })
    }

    pub fn zero(d: usize) -> Self {
        SymMatrix {
            d,
            entries: vec![Rational::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = Rational::one();
        }
        m
    }

    /// `E_ii` if `i = j`, else `E_ij + E_ji`; indices start at 1.
    pub fn unit(d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(d);
        m.entries[(i - 1) * d + (j - 1)] = Rational::one();
        m.entries[(j - 1) * d + (i - 1)] = Rational::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1) * self.d + (j - 1)]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    fn mul(&self, other: &SymMatrix) -> Vec<Rational> {
        let d = self.d;
        let mut out = vec![Rational::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = &self.entries[i * d + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += x * &other.entries[k * d + j];
                }
            }
        }
        out
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.d)
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `x o y = (xy + yx) / 2`.
pub fn jordan_product(x: &SymMatrix, y: &SymMatrix) -> Result<SymMatrix> {
    if x.d != y.d {
        return Err(Error::DimensionMismatch { left: x.d, right: y.d });
    }
    let xy = x.mul(y);
    let yx = y.mul(x);
    let half = rat(1, 2);
    Ok(SymMatrix {
        d: x.d,
        entries: xy.iter().zip(&yx).map(|(p, q)| (p + q) * &half).collect(),
    })
}

/// The degree-2 state of a symmetric matrix, identifying `L_{a,b}(-1,-1) 1`
/// with `E_ab + E_ba` (so `L_{a,a}(-1,-1) 1` is `2 E_aa`).
pub fn lift(x: &SymMatrix) -> PBWState {
    let mut s = PBWState::zero();
    for a in 1..=x.d {
        for b in a..=x.d {
            let c = if a == b { x.get(a, a) * rat(1, 2) } else { x.get(a, b).clone() };
            s.add_term(vec![GenKey::new(a, b, -1, -1)], c);
        }
    }
    s
}

/// Inverse of [`lift`] on degree-2 states.
pub fn read_back(d: usize, v: &PBWState) -> Result<SymMatrix> {
    let mut m = SymMatrix::zero(d);
    for (mono, c) in &v.terms {
        let [k] = mono.as_slice() else {
            return Err(Error::GriessReadback(format!("monomial of length {}", mono.len())));
        };
        if k.m != -1 || k.n != -1 || k.max_index() > d {
            return Err(Error::GriessReadback(k.to_string()));
        }
        let (a, b) = (k.a - 1, k.b - 1);
        let val = if a == b { c * int(2) } else { c.clone() };
        m.entries[a * d + b] = val.clone();
        m.entries[b * d + a] = val;
    }
    Ok(m)
}

/// `u(1) v` for the lifts of `x` and `y`, read back as a matrix.
pub fn griess_product(x: &SymMatrix, y: &SymMatrix, r: &Rational) -> Result<SymMatrix> {
    if x.d != y.d {
        return Err(Error::DimensionMismatch { left: x.d, right: y.d });
    }
    let u = lift(x);
    let v = lift(y);
    let mut out = PBWState::zero();
    for (mono, c) in &u.terms {
        let k = mono[0];
        out.add_scaled(&mode_operator(k.a, k.b, 1, &v, r), c);
    }
    read_back(x.d, &out)
}

/// A pair `(k, l)` whose pairing value `-r + k + l` is a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub k: usize,
    pub l: usize,
    pub value: BigInt,
}

/// Pairs `1 <= k <= l <= dN` with `-r + k + l` a positive integer. An empty
/// result means the irreducibility criterion holds at truncation `N`.
pub fn simplicity_scan(r: &Rational, d: usize, big_n: usize) -> Result<Vec<Violation>> {
    if big_n == 0 || d == 0 {
        return Err(Error::Invalid("d and N must be at least 1".into()));
    }
    if !r.is_integer() {
        return Ok(Vec::new());
    }
    let r = r.to_integer();
    let top = d * big_n;
    let mut out = Vec::new();
    for k in 1..=top {
        for l in k..=top {
            let value = BigInt::from(k + l) - &r;
            if value.is_positive() {
                out.push(Violation { k, l, value });
            }
        }
    }
    Ok(out)
}

/// Parses a comma- or whitespace-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ','))) {
        if c == ',' || c.is_whitespace() {
            if !s[start..i].trim().is_empty() {
                out.push(parse_rational_at(&s[start..i], start)?);
            }
            start = i + c.len_utf8();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: usize, b: usize, m: i64, n: i64) -> GenKey {
        GenKey::new(a, b, m, n)
    }

    fn st(keys: &[GenKey]) -> PBWState {
        PBWState::monomial(keys).unwrap()
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(g(2, 1, -1, -3), g(1, 2, -3, -1));
        assert_eq!(g(2, 1, -1, -1), g(1, 2, -1, -1));
        assert_eq!(g(1, 1, 1, -1), g(1, 1, -1, 1));
        let k: GenKey = " L[2, 1] ( 3 ,-4 )".parse().unwrap();
        assert_eq!(k, g(1, 2, -4, 3));
        assert_eq!(k.to_string(), "L[1,2](-4,3)");
        assert!(matches!("L[1,2](3".parse::<GenKey>(), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!("L[0,2](3,1)".parse::<GenKey>(), Err(Error::Parse { .. })));
        assert!(matches!("M[1,2](3,1)".parse::<GenKey>(), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn bracket_examples() {
        let r = rat(7, 3);
        for y in [g(1, 2, 3, -5), g(1, 1, -1, -1), g(2, 2, 0, 4)] {
            assert!(bracket(&g(1, 1, 0, 0), &y, &r).is_zero());
        }
        assert!(bracket(&g(1, 1, 1, -1), &g(1, 1, -1, 1), &r).is_zero());
        // central term: [L_{a,b}(1,1), L_{a,b}(-1,-1)] for a != b
        let c = bracket(&g(1, 2, 1, 1), &g(1, 2, -1, -1), &r);
        assert_eq!(c.central, &r / int(4));
        let c = bracket(&g(1, 1, 1, 1), &g(1, 1, -1, -1), &r);
        assert_eq!(c.central, &r / int(2));
        assert_eq!(c.terms, BTreeMap::from([(g(1, 1, -1, 1), int(2))]));
    }

    #[test]
    fn zero_mode_acts_as_derivation() {
        let r = rat(-5, 2);
        for (m, n) in [(1, 1), (1, 3), (2, 5)] {
            let v = st(&[g(1, 2, -m, -n)]);
            let got = mode_operator(1, 1, 0, &v, &r);
            assert_eq!(got, st(&[g(1, 2, -m - 1, -n)]).scale(&int(m)));
            let w = st(&[g(1, 1, -m, -n)]);
            let mut expect = st(&[g(1, 1, -m - 1, -n)]).scale(&int(m));
            expect.add_scaled(&st(&[g(1, 1, -m, -n - 1)]), &int(n));
            assert_eq!(mode_operator(1, 1, 0, &w, &r), expect);
        }
    }

    #[test]
    fn vacuum_annihilation() {
        let r = int(3);
        let vac = PBWState::vacuum();
        for k in [g(1, 2, 0, -1), g(1, 2, 1, -1), g(1, 1, 2, 3), g(1, 1, 0, 0)] {
            assert!(apply_generator(&k, &vac, &r).is_zero(), "{k}");
        }
        assert_eq!(apply_generator(&g(1, 2, -1, -1), &vac, &r), st(&[g(1, 2, -1, -1)]));
        for l in 0..=3 {
            assert!(mode_operator(1, 2, l, &vac, &r).is_zero(), "l={l}");
        }
        // u(-1) 1 = u and u(-2) 1 is its translate
        assert_eq!(mode_operator(1, 2, -1, &vac, &r), st(&[g(1, 2, -1, -1)]));
        let mut t = st(&[g(1, 2, -2, -1)]);
        t.add_scaled(&st(&[g(2, 1, -2, -1)]), &Rational::one());
        assert_eq!(mode_operator(1, 2, -2, &vac, &r), t);
        assert!(PBWState::monomial(&[g(1, 1, 0, -1)]).is_err());
    }

    #[test]
    fn mode_one_on_degree_two() {
        // L_{a,b}(1) L_{u,v}(-1,-1) 1 with (a,b,u,v) = (1,2,2,3)
        let r = rat(3, 1);
        let got = mode_operator(1, 2, 1, &st(&[g(2, 3, -1, -1)]), &r);
        assert_eq!(got, st(&[g(1, 3, -1, -1)]).scale(&rat(1, 2)));
        // a = b = u = v
        let got = mode_operator(1, 1, 1, &st(&[g(1, 1, -1, -1)]), &r);
        assert_eq!(got, st(&[g(1, 1, -1, -1)]).scale(&int(2)));
    }

    #[test]
    fn central_charge_is_d_times_r() {
        for d in 1..=3usize {
            let r = rat(-7, 3);
            let mut omega = PBWState::zero();
            for a in 1..=d {
                omega.add_scaled(&st(&[g(a, a, -1, -1)]), &Rational::one());
            }
            let mut w3 = PBWState::zero();
            let mut w1 = PBWState::zero();
            for a in 1..=d {
                w3.add_scaled(&mode_operator(a, a, 3, &omega, &r), &Rational::one());
                w1.add_scaled(&mode_operator(a, a, 1, &omega, &r), &Rational::one());
            }
            assert_eq!(w3, PBWState::scalar(int(d as i64) * &r * rat(1, 2)));
            assert_eq!(w1, omega.scale(&int(2)));
        }
    }

    #[test]
    fn omega_one_grades() {
        let r = rat(5, 2);
        let d = 2;
        let states = [
            st(&[g(1, 2, -1, -1)]),
            st(&[g(1, 2, -1, -2), g(2, 2, -3, -1)]),
            st(&[g(1, 1, -1, -1), g(1, 1, -1, -1)]),
            PBWState::vacuum(),
        ];
        for v in states {
            let mut w = PBWState::zero();
            for a in 1..=d {
                w.add_scaled(&mode_operator(a, a, 1, &v, &r), &Rational::one());
            }
            assert_eq!(w, v.scale(&int(v.max_degree())));
        }
    }

    #[test]
    fn griess_examples() {
        let r = int(-2);
        let x = SymMatrix::unit(2, 1, 2);
        let sq = SymMatrix::identity(2);
        assert_eq!(griess_product(&x, &x, &r).unwrap(), sq);
        assert_eq!(jordan_product(&x, &x).unwrap(), sq);
        let e11 = SymMatrix::unit(2, 1, 1);
        let e22 = SymMatrix::unit(2, 2, 2);
        assert_eq!(griess_product(&e11, &e22, &r).unwrap(), SymMatrix::zero(2));
        assert_eq!(jordan_product(&e11, &e22).unwrap(), SymMatrix::zero(2));
        assert_eq!(jordan_product(&x, &SymMatrix::identity(2)).unwrap(), x);
        // L_{a,a} = 2 E_aa squares to 2 L_{a,a}
        let laa = e11.clone();
        let laa2 = SymMatrix::new(2, vec![int(2), int(0), int(0), int(0)]).unwrap();
        assert_eq!(griess_product(&laa2, &laa2, &r).unwrap(), SymMatrix::new(2, vec![int(4), int(0), int(0), int(0)]).unwrap());
        assert_eq!(griess_product(&laa, &laa, &r).unwrap(), laa);
    }

    #[test]
    fn sym_matrix_validation() {
        assert!(SymMatrix::new(2, vec![int(1), int(2), int(3), int(4)]).is_err());
        assert!(matches!(
            SymMatrix::new(2, vec![int(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(SymMatrix::identity(2).to_string(), "[1 0; 0 1]");
        assert_eq!(read_back(2, &lift(&SymMatrix::unit(2, 1, 2))).unwrap(), SymMatrix::unit(2, 1, 2));
        assert!(matches!(read_back(2, &PBWState::vacuum()), Err(Error::GriessReadback(_))));
    }

    #[test]
    fn simplicity_examples() {
        assert!(simplicity_scan(&rat(1, 2), 3, 4).unwrap().is_empty());
        let v = simplicity_scan(&int(2), 1, 2).unwrap();
        let pairs: Vec<_> = v.iter().map(|x| (x.k, x.l, x.value.clone())).collect();
        assert_eq!(pairs, vec![(1, 2, BigInt::from(1)), (2, 2, BigInt::from(2))]);
        let v = simplicity_scan(&int(-1), 1, 1).unwrap();
        assert_eq!(v, vec![Violation { k: 1, l: 1, value: BigInt::from(3) }]);
        assert!(simplicity_scan(&int(1), 1, 0).is_err());
    }

    #[test]
    fn rational_lists() {
        assert_eq!(parse_rational_list("1, 1/2 -3").unwrap(), vec![int(1), rat(1, 2), int(-3)]);
        assert!(matches!(parse_rational_list("1,x"), Err(Error::Parse { pos: 2, .. })));
    }

    fn key() -> impl Strategy<Value = GenKey> {
        (1usize..=3, 1usize..=3, -4i64..=4, -4i64..=4).prop_map(|(a, b, m, n)| GenKey::new(a, b, m, n))
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
    }

    fn sym(d: usize) -> impl Strategy<Value = SymMatrix> {
        prop::collection::vec(-3i64..=3, d * d).prop_map(move |v| {
            let mut e = vec![Rational::zero(); d * d];
            for i in 0..d {
                for j in i..d {
                    e[i * d + j] = int(v[i * d + j]);
                    e[j * d + i] = int(v[i * d + j]);
                }
            }
            SymMatrix::new(d, e).unwrap()
        })
    }

    proptest! {
        #[test]
        fn antisymmetry(x in key(), y in key(), r in rational()) {
            let xy = bracket(&x, &y, &r);
            let yx = bracket(&y, &x, &r);
            prop_assert_eq!(xy, yx.scale(&int(-1)));
        }

        #[test]
        fn jacobi(x in key(), y in key(), z in key(), r in rational()) {
            let (gx, gy, gz) = (GenCombo::generator(x), GenCombo::generator(y), GenCombo::generator(z));
            let mut sum = bracket_combo(&gx, &bracket_combo(&gy, &gz, &r), &r);
            sum.add_scaled(&bracket_combo(&gy, &bracket_combo(&gz, &gx, &r), &r), &Rational::one());
            sum.add_scaled(&bracket_combo(&gz, &bracket_combo(&gx, &gy, &r), &r), &Rational::one());
            prop_assert!(sum.is_zero(), "{}", sum);
        }

        #[test]
        fn griess_is_jordan(x in sym(3), y in sym(3), r in rational()) {
            prop_assert_eq!(griess_product(&x, &y, &r).unwrap(), jordan_product(&x, &y).unwrap());
        }

        #[test]
        fn jordan_identity(x in sym(4), y in sym(4)) {
            let xx = jordan_product(&x, &x).unwrap();
            let lhs = jordan_product(&jordan_product(&x, &y).unwrap(), &xx).unwrap();
            let rhs = jordan_product(&x, &jordan_product(&y, &xx).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn non_integer_levels_are_clean(p in -40i64..=40, q in 2i64..=7, d in 1usize..=3, n in 1usize..=5) {
            let r = rat(p, q);
            prop_assume!(!r.is_integer());
            prop_assert!(simplicity_scan(&r, d, n).unwrap().is_empty());
        }
    }
}
