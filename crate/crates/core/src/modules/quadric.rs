//! Mod-2 Chow ring of a split quadric of dimension `D`.
//!
//! The basis is `h^i` (codimension `i`) and `l_i` (dimension `i`) for
//! `0 ≤ i ≤ d = ⌊D/2⌋`, with `h·l_i = l_{i−1}`. In even dimension only one
//! of the two middle rulings is carried, so `h^d` is kept as its own basis
//! vector.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CellularModule;
use crate::charclass::VirtualBundleSpec;
use crate::error::{Error, Result};
use crate::fp::{binom_mod_p, FpScalar, Prime};
use crate::parse::Cursor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadricRing {
    #[serde(rename = "dimX")]
    dim_x: u32,
}

impl QuadricRing {
    pub fn new(dim_x: u32) -> Result<Self> {
        if dim_x == 0 {
            return Err(Error::InvalidArgument(
                "quadric dimension must be positive".into(),
            ));
        }
        Ok(QuadricRing { dim_x })
    }

    pub fn dim_x(&self) -> u32 {
        self.dim_x
    }

    pub fn d(&self) -> u32 {
        self.dim_x / 2
    }

    pub fn basis(&self) -> Vec<QuadricBasis> {
        let d = self.d();
        (0..=d)
            .map(QuadricBasis::H)
            .chain((0..=d).map(QuadricBasis::L))
            .collect()
    }

    pub fn codim(&self, b: QuadricBasis) -> u32 {
        match b {
            QuadricBasis::H(i) => i,
            QuadricBasis::L(i) => self.dim_x - i,
        }
    }

    /// Product of two basis vectors mod 2.
    pub fn mul_basis(&self, a: QuadricBasis, b: QuadricBasis) -> Option<QuadricBasis> {
        use QuadricBasis::*;
        let d = self.d();
        match (a, b) {
            (H(i), H(j)) => (i + j <= d).then_some(H(i + j)),
            (H(i), L(j)) | (L(j), H(i)) => (j >= i).then(|| L(j - i)),
            (L(i), L(j)) => (i == d && j == d && self.dim_x.is_multiple_of(4)).then_some(L(0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuadricBasis {
    H(u32),
    L(u32),
}

impl fmt::Display for QuadricBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            QuadricBasis::H(0) => write!(f, "1"),
            QuadricBasis::H(1) => write!(f, "h"),
            QuadricBasis::H(i) => write!(f, "h^{i}"),
            QuadricBasis::L(i) => write!(f, "l_{i}"),
        }
    }
}

/// A class in `CH^*(X)/2`, stored as the set of basis vectors with
/// coefficient one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadricClass {
    ring: QuadricRing,
    support: BTreeSet<QuadricBasis>,
}

impl QuadricClass {
    pub fn zero(ring: QuadricRing) -> Self {
        QuadricClass {
            ring,
            support: BTreeSet::new(),
        }
    }

    /// A single basis vector; `h^i` above `d` is zero mod 2.
    pub fn basis(ring: QuadricRing, b: QuadricBasis) -> Result<Self> {
        let mut x = Self::zero(ring);
        match b {
            QuadricBasis::H(i) if i > ring.d() => {}
            QuadricBasis::L(i) if i > ring.d() => {
                return Err(Error::InvalidArgument(format!(
                    "l_{i} is not a class on a {}-dimensional quadric",
                    ring.dim_x
                )))
            }
            b => {
                x.support.insert(b);
            }
        }
        Ok(x)
    }

    pub fn h_pow(ring: QuadricRing, i: u32) -> Self {
        Self::basis(ring, QuadricBasis::H(i)).expect("h powers are always valid")
    }

    pub fn l(ring: QuadricRing, i: u32) -> Result<Self> {
        Self::basis(ring, QuadricBasis::L(i))
    }

    pub fn ring(&self) -> QuadricRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = QuadricBasis> + '_ {
        self.support.iter().copied()
    }

    pub fn coeff(&self, b: QuadricBasis) -> FpScalar {
        FpScalar::new(self.support.contains(&b) as u64, Prime::TWO)
    }

    fn toggle(&mut self, b: QuadricBasis) {
        if !self.support.remove(&b) {
            self.support.insert(b);
        }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "classes on different quadrics");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        QuadricClass {
            ring: self.ring,
            support: self
                .support
                .symmetric_difference(&other.support)
                .copied()
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(self.ring);
        for &a in &self.support {
            for &b in &other.support {
                if let Some(ab) = self.ring.mul_basis(a, b) {
                    out.toggle(ab);
                }
            }
        }
        out
    }

    /// `x^n`.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::h_pow(self.ring, 0), |acc, _| acc.mul(self))
    }

    /// Whether every term has codimension `c`.
    pub fn is_homogeneous_of(&self, c: u32) -> bool {
        self.support.iter().all(|&b| self.ring.codim(b) == c)
    }

    /// Degree of a zero-cycle mod 2: the coefficient of `l_0`.
    pub fn degree(&self) -> Result<FpScalar> {
        if !self.is_homogeneous_of(self.ring.dim_x) {
            return Err(Error::NotDimensionZero);
        }
        Ok(self.coeff(QuadricBasis::L(0)))
    }

    /// Parses `h^3 + l_2 + l_0`, `1`, `0` or `3*h`.
    pub fn parse(src: &str, ring: QuadricRing) -> Result<Self> {
        let two = Prime::TWO;
        let mut cur = Cursor::new(src);
        let mut out = Self::zero(ring);
        cur.skip_ws();
        if cur.at_end() {
            return Err(Error::parse(0, "empty class"));
        }
        cur.eat('-');
        loop {
            cur.skip_ws();
            let mut coeff = FpScalar::one(two);
            let mut gen = None;
            loop {
                cur.skip_ws();
                let start = cur.pos();
                match cur.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        coeff *= FpScalar::new((cur.number()? % 2) as u64, two);
                    }
                    Some('h') if gen.is_none() => {
                        cur.bump();
                        let i = if cur.eat('^') { cur.number()? } else { 1 };
                        gen = Some(QuadricBasis::H(u32::try_from(i).unwrap_or(u32::MAX)));
                    }
                    Some('l') if gen.is_none() => {
                        cur.bump();
                        if !cur.eat('_') {
                            return Err(cur.error("expected '_' after l"));
                        }
                        let i = cur.number()?;
                        if i > ring.d() as u128 {
                            return Err(Error::parse(
                                start,
                                format!("l_{i} is out of range (d = {})", ring.d()),
                            ));
                        }
                        gen = Some(QuadricBasis::L(i as u32));
                    }
                    _ => return Err(cur.error("expected a number, h^i or l_i")),
                }
                cur.skip_ws();
                if !cur.eat('*') {
                    break;
                }
            }
            if !coeff.is_zero() {
                let b = gen.unwrap_or(QuadricBasis::H(0));
                out = out.add(&Self::basis(ring, b)?);
            }
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            if !(cur.eat('+') || cur.eat('-')) {
                return Err(cur.error("expected '+', '-' or end of input"));
            }
        }
        Ok(out)
    }
}

/// `Sq^{2j}` on `CH^*(X)/2`:
/// `Sq^{2j}(h^i) = C(i,j) h^{i+j}` and `Sq^{2j}(l_i) = C(D+1−i, j) l_{i−j}`.
pub fn sq_on_quadric(j: u32, x: &QuadricClass) -> QuadricClass {
    let ring = x.ring;
    let two = Prime::TWO;
    let mut out = QuadricClass::zero(ring);
    for b in x.support() {
        let (coeff, target) = match b {
            QuadricBasis::H(i) => (binom_mod_p(i as u64, j as i64, two), QuadricBasis::H(i + j)),
            QuadricBasis::L(i) => {
                if j > i {
                    continue;
                }
                let c = binom_mod_p((ring.dim_x + 1 - i) as u64, j as i64, two);
                (c, QuadricBasis::L(i - j))
            }
        };
        if !coeff.is_zero() {
            out = out.add(&QuadricClass::basis(ring, target).expect("target index in range"));
        }
    }
    out
}

/// `Σ_j Sq^{2j}(x)`.
pub fn total_sq(x: &QuadricClass) -> QuadricClass {
    (0..=x.ring.dim_x).fold(QuadricClass::zero(x.ring), |acc, j| {
        acc.add(&sq_on_quadric(j, x))
    })
}

/// Total `Sq(l_i)` from the normal bundle of `P^i ⊂ X`:
/// `c(N) = (1+H)^{D+1−i}` pushed forward along `H^j ↦ l_{i−j}`.
pub fn wu_oracle_sq_l(i: u32, ring: QuadricRing) -> Result<QuadricClass> {
    if i > ring.d() {
        return Err(Error::InvalidArgument(format!("l_{i} is out of range")));
    }
    let e = (ring.dim_x + 1 - i) as i64;
    let series = VirtualBundleSpec::new(vec![(1, e)]).chern_series::<i128>(i as usize);
    let mut out = QuadricClass::zero(ring);
    for (j, c) in series.reduce_mod(Prime::TWO).into_iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&QuadricClass::l(ring, i - j as u32)?);
        }
    }
    Ok(out)
}

impl CellularModule for QuadricClass {
    fn prime(&self) -> Prime {
        Prime::TWO
    }

    fn zero_like(&self) -> Self {
        QuadricClass::zero(self.ring)
    }

    fn apply_power(&self, j: u32) -> Self {
        sq_on_quadric(j, self)
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn scale(&self, c: FpScalar) -> Self {
        if c.is_zero() {
            self.zero_like()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let hs = self
            .support
            .iter()
            .filter(|b| matches!(b, QuadricBasis::H(_)))
            .rev();
        let ls = self
            .support
            .iter()
            .filter(|b| matches!(b, QuadricBasis::L(_)))
            .rev();
        let parts: Vec<String> = hs.chain(ls).map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricClassRecord {
    #[serde(rename = "dimX")]
    pub dim_x: u32,
    pub terms: Vec<QuadricTermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricTermRecord {
    pub gen: String,
    pub idx: u32,
    pub coeff: u64,
}

impl From<&QuadricClass> for QuadricClassRecord {
    fn from(x: &QuadricClass) -> Self {
        QuadricClassRecord {
            dim_x: x.ring.dim_x,
            terms: x
                .support()
                .map(|b| {
                    let (gen, idx) = match b {
                        QuadricBasis::H(i) => ("h", i),
                        QuadricBasis::L(i) => ("l", i),
                    };
                    QuadricTermRecord {
                        gen: gen.into(),
                        idx,
                        coeff: 1,
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<QuadricClassRecord> for QuadricClass {
    type Error = Error;
    fn try_from(rec: QuadricClassRecord) -> Result<Self> {
        let ring = QuadricRing::new(rec.dim_x)?;
        let mut out = QuadricClass::zero(ring);
        for t in rec.terms {
            let b = match t.gen.as_str() {
                "h" => QuadricBasis::H(t.idx),
                "l" => QuadricBasis::L(t.idx),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown generator {other:?}"
                    )))
                }
            };
            if t.coeff % 2 == 1 {
                out = out.add(&QuadricClass::basis(ring, b)?);
            }
        }
        Ok(out)
    }
}

impl Serialize for QuadricClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadricClassRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadricClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        QuadricClassRecord::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
