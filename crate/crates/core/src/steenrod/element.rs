use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::adem::move_tau_power_left;
use super::coeff::{tau_rho_bidegree, MotivicCoeff};
use super::monomial::OpMonomial;
use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};

/// Which set of relations the operations obey.
///
/// `CharPChow` is the operation algebra restricted to mod-p Chow groups over
/// a field of characteristic p: Bocksteins act as zero and `τ = ρ = 0`, so
/// only `P^n` words survive. `Char0Motivic` keeps `β` and, at p = 2, the
/// `τ`/`ρ` coefficients of the characteristic-0 relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "charp")]
    CharPChow,
    #[serde(rename = "char0")]
    Char0Motivic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::CharPChow => write!(f, "charp"),
            Mode::Char0Motivic => write!(f, "char0"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "charp" | "char-p" | "chow" => Ok(Mode::CharPChow),
            "char0" | "char-0" | "motivic" => Ok(Mode::Char0Motivic),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// A finite linear combination of operation monomials.
///
/// Terms are kept as inserted until [`SteenrodElement::adem_reduce`] brings
/// them to admissible normal form; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SteenrodElement {
    pub(crate) prime: Prime,
    pub(crate) mode: Mode,
    pub(crate) terms: BTreeMap<OpMonomial, MotivicCoeff>,
}

impl SteenrodElement {
    pub fn zero(prime: Prime, mode: Mode) -> Self {
        SteenrodElement {
            prime,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(prime: Prime, mode: Mode) -> Self {
        Self::from_monomial(prime, mode, OpMonomial::identity())
    }

    /// The element `1·m`. In `CharPChow` mode a monomial containing `β` is
    /// the zero operation.
    pub fn from_monomial(prime: Prime, mode: Mode, m: OpMonomial) -> Self {
        let mut e = Self::zero(prime, mode);
        e.push(m, MotivicCoeff::one(prime));
        e
    }

    /// `P^n`.
    pub fn power(prime: Prime, mode: Mode, n: u32) -> Self {
        Self::from_monomial(prime, mode, OpMonomial::power(n))
    }

    pub fn beta(prime: Prime, mode: Mode) -> Self {
        Self::from_monomial(prime, mode, OpMonomial::beta())
    }

    /// `Sq^n` at p = 2.
    pub fn sq(mode: Mode, n: u32) -> Self {
        match OpMonomial::from_sq(&[n]) {
            Some(m) => Self::from_monomial(Prime::TWO, mode, m),
            None => Self::zero(Prime::TWO, mode),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &MotivicCoeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &OpMonomial) -> Option<&MotivicCoeff> {
        self.terms.get(m)
    }

    /// Adds `c·m`, checking that the coefficient is legal for the mode.
    pub fn add_term(&mut self, m: OpMonomial, c: MotivicCoeff) -> Result<()> {
        if c.prime() != self.prime {
            return Err(Error::PrimeMismatch(self.prime.get(), c.prime().get()));
        }
        if c.has_tau_rho() && !self.allows_tau_rho() {
            return Err(Error::InvalidArgument(format!(
                "τ/ρ coefficients need char0 mode at p = 2 (have {} mode, p = {})",
                self.mode, self.prime
            )));
        }
        self.push(m, c);
        Ok(())
    }

    pub(crate) fn allows_tau_rho(&self) -> bool {
        self.mode == Mode::Char0Motivic && self.prime.is_two()
    }

    // Unchecked insert; drops β words in CharPChow mode.
    pub(crate) fn push(&mut self, m: OpMonomial, c: MotivicCoeff) {
        if c.is_zero() || (self.mode == Mode::CharPChow && m.has_beta()) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &SteenrodElement) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    pub fn add(&self, other: &SteenrodElement) -> Result<SteenrodElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: FpScalar) -> SteenrodElement {
        let mut out = Self::zero(self.prime, self.mode);
        for (m, v) in &self.terms {
            out.push(m.clone(), v.scale(c));
        }
        out
    }

    pub fn neg(&self) -> SteenrodElement {
        self.scale(-FpScalar::one(self.prime))
    }

    /// Formal composition `self ∘ other` without normalising.
    pub fn compose_unreduced(&self, other: &SteenrodElement) -> Result<SteenrodElement> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.prime, self.mode);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if !self.allows_tau_rho() {
                    if let Some(m) = m1.concat(m2) {
                        out.push(m, c1.mul(c2));
                    }
                    continue;
                }
                // τ on the right factor has to move past m1.
                let tail = m2.sq_sequence();
                for (t, r, c) in c2.terms() {
                    for (t1, r1, mut word) in move_tau_power_left(&m1.sq_sequence(), t) {
                        word.extend_from_slice(&tail);
                        if let Some(m) = OpMonomial::from_sq(&word) {
                            out.push(m, c1.mul(&MotivicCoeff::monomial(t1, r + r1, c)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Composition followed by Adem normalisation.
    pub fn compose(&self, other: &SteenrodElement) -> Result<SteenrodElement> {
        Ok(self.compose_unreduced(other)?.adem_reduce())
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|m| m.is_admissible(self.prime))
    }

    /// Bidegrees of all terms, coefficient symbols included.
    pub fn bidegrees(&self) -> BTreeSet<(i64, i64)> {
        let mut out = BTreeSet::new();
        for (m, c) in &self.terms {
            let (a, b) = m.bidegree(self.prime);
            for (t, r, _) in c.terms() {
                let (ta, tb) = tau_rho_bidegree(t, r);
                out.insert((a + ta, b + tb));
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.bidegrees().len() <= 1
    }

    /// Image in the Chow-restricted algebra: `β`-words vanish and
    /// `τ = ρ = 0`. Only meaningful for a reduced element when the image is
    /// reduced again afterwards.
    pub fn to_chow_mode(&self) -> SteenrodElement {
        let zero = FpScalar::zero(self.prime);
        let mut out = Self::zero(self.prime, Mode::CharPChow);
        for (m, c) in &self.terms {
            out.push(m.clone(), MotivicCoeff::constant(c.evaluate(zero, zero)));
        }
        out
    }
}
