//! `CH^*(P^n)/p = F_p[h]/(h^{n+1})` with `P^j(h^i) = C(i,j) h^{i+(p−1)j}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CellularModule;
use crate::error::{Error, Result};
use crate::fp::{binom_mod_p, FpScalar, Prime};
use crate::parse::Cursor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjSpaceRing {
    n: u32,
    prime: Prime,
}

impl ProjSpaceRing {
    pub fn new(n: u32, prime: Prime) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "projective dimension must be positive".into(),
            ));
        }
        Ok(ProjSpaceRing { n, prime })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }
}

/// `Σ c_i h^i` with `i ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjClass {
    ring: ProjSpaceRing,
    coeffs: Vec<u64>,
}

impl ProjClass {
    pub fn zero(ring: ProjSpaceRing) -> Self {
        ProjClass {
            ring,
            coeffs: vec![0; ring.n as usize + 1],
        }
    }

    /// `c·h^i`, zero when `i > n`.
    pub fn monomial(ring: ProjSpaceRing, i: u32, c: FpScalar) -> Self {
        let mut x = Self::zero(ring);
        x.add_term(i, c);
        x
    }

    pub fn h_pow(ring: ProjSpaceRing, i: u32) -> Self {
        Self::monomial(ring, i, FpScalar::one(ring.prime))
    }

    pub fn ring(&self) -> ProjSpaceRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, i: u32) -> FpScalar {
        FpScalar::new(
            self.coeffs.get(i as usize).copied().unwrap_or(0),
            self.ring.prime,
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, FpScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (i as u32, FpScalar::new(c, self.ring.prime)))
    }

    fn add_term(&mut self, i: u32, c: FpScalar) {
        if let Some(slot) = self.coeffs.get_mut(i as usize) {
            *slot = (FpScalar::new(*slot, self.ring.prime) + c).value();
        }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "classes on different projective spaces"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(self.ring);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::h_pow(self.ring, 0), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: FpScalar) -> Self {
        let mut out = Self::zero(self.ring);
        for (i, a) in self.terms() {
            out.add_term(i, a * c);
        }
        out
    }

    /// Parses a polynomial in `h`, e.g. `2*h^4 + h - 1`.
    pub fn parse(src: &str, ring: ProjSpaceRing) -> Result<Self> {
        let p = ring.prime;
        let mut cur = Cursor::new(src);
        let mut out = Self::zero(ring);
        cur.skip_ws();
        if cur.at_end() {
            return Err(Error::parse(0, "empty class"));
        }
        let mut negate = cur.eat('-');
        loop {
            let mut coeff = FpScalar::one(p);
            let mut exp = 0u128;
            loop {
                cur.skip_ws();
                match cur.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let v = cur.number()? % p.get() as u128;
                        coeff *= FpScalar::new(v as u64, p);
                    }
                    Some('h') => {
                        cur.bump();
                        exp += if cur.eat('^') { cur.number()? } else { 1 };
                    }
                    _ => return Err(cur.error("expected a number or h^i")),
                }
                cur.skip_ws();
                if !cur.eat('*') {
                    break;
                }
            }
            if negate {
                coeff = -coeff;
            }
            if exp <= ring.n as u128 {
                out.add_term(exp as u32, coeff);
            }
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

/// `P^j` on `CH^*(P^n)/p`.
pub fn p_on_projspace(j: u32, x: &ProjClass) -> ProjClass {
    let p = x.ring.prime;
    let shift = (p.get() - 1) * j as u64;
    let mut out = ProjClass::zero(x.ring);
    for (i, c) in x.terms() {
        let target = i as u64 + shift;
        if target <= x.ring.n as u64 {
            out.add_term(target as u32, c * binom_mod_p(i as u64, j as i64, p));
        }
    }
    out
}

/// `Σ_j P^j(x)`.
pub fn total_p(x: &ProjClass) -> ProjClass {
    (0..=x.ring.n).fold(ProjClass::zero(x.ring), |acc, j| {
        acc.add(&p_on_projspace(j, x))
    })
}

impl CellularModule for ProjClass {
    fn prime(&self) -> Prime {
        self.ring.prime
    }

    fn zero_like(&self) -> Self {
        ProjClass::zero(self.ring)
    }

    fn apply_power(&self, j: u32) -> Self {
        p_on_projspace(j, self)
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn scale(&self, c: FpScalar) -> Self {
        ProjClass::scale(self, c)
    }
}

impl fmt::Display for ProjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(i, c)| {
                let h = match i {
                    0 => String::new(),
                    1 => "h".into(),
                    i => format!("h^{i}"),
                };
                match (c.value(), i) {
                    (_, 0) => c.to_string(),
                    (1, _) => h,
                    _ => format!("{c}*{h}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjClassRecord {
    pub n: u32,
    pub prime: Prime,
    pub coeffs: Vec<u64>,
}

impl From<&ProjClass> for ProjClassRecord {
    fn from(x: &ProjClass) -> Self {
        ProjClassRecord {
            n: x.ring.n,
            prime: x.ring.prime,
            coeffs: x.coeffs.clone(),
        }
    }
}

impl TryFrom<ProjClassRecord> for ProjClass {
    type Error = Error;
    fn try_from(rec: ProjClassRecord) -> Result<Self> {
        let ring = ProjSpaceRing::new(rec.n, rec.prime)?;
        if rec.coeffs.len() != rec.n as usize + 1 {
            return Err(Error::InvalidArgument("expected n+1 coefficients".into()));
        }
        let mut out = ProjClass::zero(ring);
        for (i, c) in rec.coeffs.into_iter().enumerate() {
            out.add_term(i as u32, FpScalar::new(c % rec.prime.get(), rec.prime));
        }
        Ok(out)
    }
}

impl Serialize for ProjClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProjClassRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProjClassRecord::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
