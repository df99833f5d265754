//! Monomials `τ₀^{ε₀} ξ₁^{r₁} τ₁^{ε₁} ⋯` of the dual algebra and the
//! coaction on `H^{*,*}(Bμ_p) = F_p[[v]] ⊗ Λ(u)`:
//!
//! ```text
//! u ↦ u + Σ_{i≥0} τ_i ⊗ v^{p^i}
//! v ↦ v + Σ_{j≥1} ξ_j ⊗ v^{p^j}
//! ```
//!
//! Power series are cut off at a caller-supplied `v`-degree `N`. Signs
//! follow the Koszul rule for the first grading: every `τ_i` and `u` are
//! odd, every `ξ_j` and `v` are even.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::parse::Cursor;

/// `Π τ_i^{ε_i} Π ξ_j^{r_j}` with every `ε_i ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DualMonomial {
    pub eps: BTreeSet<u32>,
    pub xi: BTreeMap<u32, u64>,
    pub prime: Prime,
}

impl DualMonomial {
    pub fn one(prime: Prime) -> Self {
        DualMonomial {
            eps: BTreeSet::new(),
            xi: BTreeMap::new(),
            prime,
        }
    }

    pub fn tau(i: u32, prime: Prime) -> Self {
        let mut m = Self::one(prime);
        m.eps.insert(i);
        m
    }

    /// `ξ_j^r` for `j ≥ 1`.
    pub fn xi(j: u32, r: u64, prime: Prime) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidArgument("ξ generators start at ξ_1".into()));
        }
        let mut m = Self::one(prime);
        if r > 0 {
            m.xi.insert(j, r);
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.eps.is_empty() && self.xi.is_empty()
    }

    /// Parity of the first degree: the number of `τ` factors mod 2.
    pub fn is_odd(&self) -> bool {
        self.eps.len() % 2 == 1
    }

    /// `(Σ ε_i(2p^i−1) + Σ r_j(2p^j−2), Σ ε_i(p^i−1) + Σ r_j(p^j−1))`.
    pub fn bidegree(&self) -> (i128, i128) {
        let p = self.prime.get() as i128;
        let mut deg = (0i128, 0i128);
        for &i in &self.eps {
            let q = p.pow(i);
            deg.0 += 2 * q - 1;
            deg.1 += q - 1;
        }
        for (&j, &r) in &self.xi {
            let q = p.pow(j);
            deg.0 += r as i128 * (2 * q - 2);
            deg.1 += r as i128 * (q - 1);
        }
        deg
    }

    fn max_index(&self) -> u32 {
        let e = self.eps.iter().next_back().copied().unwrap_or(0);
        let x = self.xi.keys().next_back().copied().unwrap_or(0);
        e.max(x)
    }
}

/// Product of two monomials: `None` when some `τ_i` repeats, otherwise the
/// sign from reordering the odd generators and the merged monomial.
pub fn dual_mul(a: &DualMonomial, b: &DualMonomial) -> Result<Option<(FpScalar, DualMonomial)>> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime.get(), b.prime.get()));
    }
    if !a.eps.is_disjoint(&b.eps) {
        return Ok(None);
    }
    // Each τ_k of b moves left past the τ_i of a with i > k.
    let swaps: usize = b.eps.iter().map(|k| a.eps.range(k + 1..).count()).sum();
    let sign = if swaps.is_multiple_of(2) {
        FpScalar::one(a.prime)
    } else {
        -FpScalar::one(a.prime)
    };
    let mut out = a.clone();
    out.eps.extend(b.eps.iter().copied());
    for (&j, &r) in &b.xi {
        *out.xi.entry(j).or_insert(0) += r;
    }
    Ok(Some((sign, out)))
}

/// `⟨m, P^n⟩`: one exactly when `m = ξ₁^n`.
pub fn pair_with_pn(m: &DualMonomial, n: u64) -> FpScalar {
    let is_xi1_power = m.eps.is_empty()
        && match n {
            0 => m.xi.is_empty(),
            _ => m.xi.len() == 1 && m.xi.get(&1) == Some(&n),
        };
    if is_xi1_power {
        FpScalar::one(m.prime)
    } else {
        FpScalar::zero(m.prime)
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for k in 0..=self.max_index() {
            if self.eps.contains(&k) {
                parts.push(format!("t{k}"));
            }
            match self.xi.get(&(k + 1)) {
                Some(1) => parts.push(format!("x{}", k + 1)),
                Some(&r) => parts.push(format!("x{}^{r}", k + 1)),
                None => {}
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses `t0 x1^3 t2` (factors in any order, separated by spaces). The
/// canonical order is restored, and a repeated `τ` is an error.
pub fn parse_dual_monomial(src: &str, prime: Prime) -> Result<DualMonomial> {
    let mut cur = Cursor::new(src);
    let mut m = DualMonomial::one(prime);
    cur.skip_ws();
    if cur.eat('1') {
        cur.skip_ws();
        return if cur.at_end() {
            Ok(m)
        } else {
            Err(cur.error("trailing input after 1"))
        };
    }
    loop {
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        let start = cur.pos();
        if cur.eat('t') {
            let i = cur.number()? as u32;
            if !m.eps.insert(i) {
                return Err(Error::parse(start, format!("t{i} repeated; τ_i² = 0")));
            }
        } else if cur.eat('x') {
            let j = cur.number()? as u32;
            if j == 0 {
                return Err(Error::parse(start, "ξ generators start at x1"));
            }
            let r = if cur.eat('^') {
                cur.number()? as u64
            } else {
                1
            };
            if r > 0 {
                *m.xi.entry(j).or_insert(0) += r;
            }
        } else {
            return Err(cur.error("expected t<i> or x<j>"));
        }
    }
    Ok(m)
}

/// Element of `H^{*,*}(Bμ_p)` truncated at `v^N`, with `u² = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmuElement {
    prime: Prime,
    trunc: u32,
    // (u exponent, v exponent) -> residue
    terms: BTreeMap<(u8, u32), u64>,
}

impl BmuElement {
    pub fn zero(prime: Prime, trunc: u32) -> Self {
        BmuElement {
            prime,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// `c·u^e v^k`; vanishes if `e ≥ 2` or `k > N`.
    pub fn monomial(prime: Prime, trunc: u32, e: u8, k: u32, c: FpScalar) -> Self {
        let mut x = Self::zero(prime, trunc);
        x.add_term(e, k, c);
        x
    }

    pub fn u(prime: Prime, trunc: u32) -> Self {
        Self::monomial(prime, trunc, 1, 0, FpScalar::one(prime))
    }

    pub fn v(prime: Prime, trunc: u32) -> Self {
        Self::monomial(prime, trunc, 0, 1, FpScalar::one(prime))
    }

    pub fn one(prime: Prime, trunc: u32) -> Self {
        Self::monomial(prime, trunc, 0, 0, FpScalar::one(prime))
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, u32, FpScalar)> + '_ {
        self.terms
            .iter()
            .map(move |(&(e, k), &c)| (e, k, FpScalar::new(c, self.prime)))
    }

    pub fn add_term(&mut self, e: u8, k: u32, c: FpScalar) {
        if e > 1 || k > self.trunc || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((e, k)).or_insert(0);
        let sum = FpScalar::new(*slot, self.prime) + c;
        if sum.is_zero() {
            self.terms.remove(&(e, k));
        } else {
            *slot = sum.value();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, k, c) in other.terms() {
            out.add_term(e, k, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.prime, self.trunc.min(other.trunc));
        for (e1, k1, c1) in self.terms() {
            for (e2, k2, c2) in other.terms() {
                out.add_term(e1 + e2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Parses a polynomial in `u`, `v` such as `u*v^2 + 2*v` or `u*u`.
    pub fn parse(src: &str, prime: Prime, trunc: u32) -> Result<Self> {
        let mut cur = Cursor::new(src);
        let mut out = Self::zero(prime, trunc);
        cur.skip_ws();
        if cur.at_end() {
            return Err(Error::parse(0, "empty expression"));
        }
        let mut negate = cur.eat('-');
        loop {
            let mut term = Self::one(prime, trunc);
            loop {
                cur.skip_ws();
                match cur.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let n = cur.number()?;
                        let c = FpScalar::new((n % prime.get() as u128) as u64, prime);
                        term = term.mul(&Self::monomial(prime, trunc, 0, 0, c));
                    }
                    Some('u') | Some('v') => {
                        let gen = if cur.bump() == Some('u') {
                            Self::u(prime, trunc)
                        } else {
                            Self::v(prime, trunc)
                        };
                        let k = if cur.eat('^') { cur.number()? } else { 1 };
                        for _ in 0..k.min(trunc as u128 + 2) {
                            term = term.mul(&gen);
                        }
                    }
                    _ => return Err(cur.error("expected a number, u or v")),
                }
                cur.skip_ws();
                if !cur.eat('*') {
                    break;
                }
            }
            if negate {
                term = term.mul(&Self::monomial(prime, trunc, 0, 0, -FpScalar::one(prime)));
            }
            out = out.add(&term);
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            if cur.eat('+') {
                negate = false;
            } else if cur.eat('-') {
                negate = true;
            } else {
                return Err(cur.error("expected '+', '-' or end of input"));
            }
        }
        Ok(out)
    }
}

fn render_uv(e: u8, k: u32) -> String {
    let v = match k {
        0 => None,
        1 => Some("v".to_string()),
        k => Some(format!("v^{k}")),
    };
    match (e, v) {
        (0, None) => "1".into(),
        (0, Some(v)) => v,
        (_, None) => "u".into(),
        (_, Some(v)) => format!("u*{v}"),
    }
}

impl fmt::Display for BmuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms().collect();
        keys.sort_by_key(|&(e, k, _)| (k, e));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|(e, k, c)| match (c.value(), e, k) {
                (1, _, _) => render_uv(e, k),
                (_, 0, 0) => c.to_string(),
                _ => format!("{c}*{}", render_uv(e, k)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `A ⊗ H^{*,*}(Bμ_p)`, stored as
/// `(v exponent, u exponent, dual monomial) → residue`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionElement {
    prime: Prime,
    trunc: u32,
    terms: BTreeMap<(u32, u8, DualMonomial), u64>,
}

impl CoactionElement {
    pub fn zero(prime: Prime, trunc: u32) -> Self {
        CoactionElement {
            prime,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// `c · m ⊗ u^e v^k`.
    pub fn term(m: DualMonomial, e: u8, k: u32, c: FpScalar, trunc: u32) -> Self {
        let mut x = Self::zero(m.prime, trunc);
        x.add_term(m, e, k, c);
        x
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(dual monomial, u exponent, v exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&DualMonomial, u8, u32, FpScalar)> + '_ {
        self.terms
            .iter()
            .map(move |((k, e, m), &c)| (m, *e, *k, FpScalar::new(c, self.prime)))
    }

    /// Coefficient of `m ⊗ u^e v^k`.
    pub fn coeff(&self, m: &DualMonomial, e: u8, k: u32) -> FpScalar {
        self.terms
            .get(&(k, e, m.clone()))
            .map_or(FpScalar::zero(self.prime), |&c| {
                FpScalar::new(c, self.prime)
            })
    }

    /// Sum over all dual monomials of the terms at `u^e v^k`.
    pub fn slice(&self, e: u8, k: u32) -> Vec<(DualMonomial, FpScalar)> {
        self.terms()
            .filter(|&(_, e2, k2, _)| e2 == e && k2 == k)
            .map(|(m, _, _, c)| (m.clone(), c))
            .collect()
    }

    pub fn add_term(&mut self, m: DualMonomial, e: u8, k: u32, c: FpScalar) {
        if e > 1 || k > self.trunc || c.is_zero() {
            return;
        }
        let key = (k, e, m);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        let sum = FpScalar::new(*slot, self.prime) + c;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            *slot = sum.value();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e, k, c) in other.terms() {
            out.add_term(m.clone(), e, k, c);
        }
        out
    }

    /// `(a ⊗ x)(b ⊗ y) = (−1)^{|x||b|} ab ⊗ xy`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        let mut out = Self::zero(self.prime, self.trunc.min(other.trunc));
        for (a, e1, k1, c1) in self.terms() {
            for (b, e2, k2, c2) in other.terms() {
                if e1 + e2 > 1 || k1 + k2 > out.trunc {
                    continue;
                }
                let Some((sign, ab)) = dual_mul(a, b)? else {
                    continue;
                };
                let koszul = if e1 == 1 && b.is_odd() {
                    -FpScalar::one(self.prime)
                } else {
                    FpScalar::one(self.prime)
                };
                out.add_term(ab, e1 + e2, k1 + k2, c1 * c2 * sign * koszul);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CoactionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, e, k, c)| {
                let body = if m.is_one() {
                    render_uv(e, k)
                } else {
                    format!("{m}@{}", render_uv(e, k))
                };
                if c.value() == 1 {
                    body
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of `u`: `u + Σ τ_i ⊗ v^{p^i}` over `p^i ≤ N`.
pub fn coaction_of_u(prime: Prime, trunc: u32) -> CoactionElement {
    let one = FpScalar::one(prime);
    let mut out = CoactionElement::term(DualMonomial::one(prime), 1, 0, one, trunc);
    for (i, q) in prime_powers(prime, trunc) {
        out.add_term(DualMonomial::tau(i, prime), 0, q, one);
    }
    out
}

/// Image of `v`: `v + Σ ξ_j ⊗ v^{p^j}` over `j ≥ 1`, `p^j ≤ N`.
pub fn coaction_of_v(prime: Prime, trunc: u32) -> CoactionElement {
    let one = FpScalar::one(prime);
    let mut out = CoactionElement::term(DualMonomial::one(prime), 0, 1, one, trunc);
    for (j, q) in prime_powers(prime, trunc).skip(1) {
        let xi = DualMonomial::xi(j, 1, prime).expect("j ≥ 1");
        out.add_term(xi, 0, q, one);
    }
    out
}

// (i, p^i) for p^i ≤ trunc
fn prime_powers(prime: Prime, trunc: u32) -> impl Iterator<Item = (u32, u32)> {
    let p = prime.get();
    let limit = trunc as u64;
    (0u32..)
        .map(move |i| (i, p.checked_pow(i)))
        .take_while(move |&(_, q)| q.is_some_and(|q| q <= limit))
        .map(|(i, q)| (i, q.unwrap() as u32))
}

/// Ring-homomorphic extension of the generator coaction, truncated at `v^N`.
pub fn bmu_coaction(x: &BmuElement) -> CoactionElement {
    let prime = x.prime();
    let trunc = x.trunc();
    let lu = coaction_of_u(prime, trunc);
    let lv = coaction_of_v(prime, trunc);
    let one = CoactionElement::term(DualMonomial::one(prime), 0, 0, FpScalar::one(prime), trunc);

    let max_k = x.terms().map(|(_, k, _)| k).max().unwrap_or(0);
    let mut v_powers = vec![one];
    for k in 1..=max_k as usize {
        let next = v_powers[k - 1].mul(&lv).expect("same prime");
        v_powers.push(next);
    }

    let mut out = CoactionElement::zero(prime, trunc);
    for (e, k, c) in x.terms() {
        let base = &v_powers[k as usize];
        let img = if e == 1 {
            lu.mul(base).expect("same prime")
        } else {
            base.clone()
        };
        for (m, e2, k2, c2) in img.terms() {
            out.add_term(m.clone(), e2, k2, c * c2);
        }
    }
    out
}

/// Record form of a coaction element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoactionRecord {
    pub prime: Prime,
    pub truncation: u32,
    pub terms: Vec<CoactionTermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoactionTermRecord {
    pub eps: Vec<u32>,
    pub xi: BTreeMap<u32, u64>,
    pub u: u8,
    pub v: u32,
    pub coeff: u64,
}

impl From<&CoactionElement> for CoactionRecord {
    fn from(x: &CoactionElement) -> Self {
        CoactionRecord {
            prime: x.prime,
            truncation: x.trunc,
            terms: x
                .terms()
                .map(|(m, e, k, c)| CoactionTermRecord {
                    eps: m.eps.iter().copied().collect(),
                    xi: m.xi.clone(),
                    u: e,
                    v: k,
                    coeff: c.value(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CoactionRecord> for CoactionElement {
    type Error = Error;
    fn try_from(rec: CoactionRecord) -> Result<Self> {
        let mut out = CoactionElement::zero(rec.prime, rec.truncation);
        for t in rec.terms {
            let eps: BTreeSet<u32> = t.eps.iter().copied().collect();
            if eps.len() != t.eps.len() {
                return Err(Error::InvalidArgument("repeated τ index".into()));
            }
            if t.xi.contains_key(&0) {
                return Err(Error::InvalidArgument("ξ generators start at ξ_1".into()));
            }
            if t.u > 1 || t.v > rec.truncation {
                return Err(Error::InvalidArgument("u/v exponent out of range".into()));
            }
            let m = DualMonomial {
                eps,
                xi: t.xi.into_iter().filter(|&(_, r)| r > 0).collect(),
                prime: rec.prime,
            };
            out.add_term(m, t.u, t.v, FpScalar::new(t.coeff, rec.prime));
        }
        Ok(out)
    }
}

impl Serialize for CoactionElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoactionRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoactionElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CoactionRecord::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
