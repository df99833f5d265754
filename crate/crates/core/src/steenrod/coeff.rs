use std::collections::BTreeMap;
use std::fmt;

use crate::fp::{FpScalar, Prime};

/// Coefficient of an operation monomial: a polynomial over F_p in `τ`
/// (bidegree (0,1)) and `ρ` (bidegree (1,1)), written to the left of the
/// word. `ρ` is central; `τ` is not, since `Sq¹τ = ρ`.
///
/// Outside the characteristic-0 mod-2 setting only the constant term is
/// ever populated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotivicCoeff {
    prime: Prime,
    // (τ exponent, ρ exponent) -> nonzero residue
    terms: BTreeMap<(u32, u32), u64>,
}

impl MotivicCoeff {
    pub fn zero(prime: Prime) -> Self {
        MotivicCoeff {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FpScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one(prime: Prime) -> Self {
        Self::constant(FpScalar::one(prime))
    }

    pub fn monomial(tau: u32, rho: u32, c: FpScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((tau, rho), c.value());
        }
        MotivicCoeff {
            prime: c.prime(),
            terms,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if the coefficient has no `τ`/`ρ` part.
    pub fn as_constant(&self) -> Option<FpScalar> {
        match self.terms.len() {
            0 => Some(FpScalar::zero(self.prime)),
            1 => self
                .terms
                .get(&(0, 0))
                .map(|&v| FpScalar::new(v, self.prime)),
            _ => None,
        }
    }

    pub fn has_tau_rho(&self) -> bool {
        self.terms.keys().any(|&k| k != (0, 0))
    }

    /// `(τ exponent, ρ exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, FpScalar)> + '_ {
        self.terms
            .iter()
            .map(move |(&(t, r), &v)| (t, r, FpScalar::new(v, self.prime)))
    }

    pub fn add_term(&mut self, tau: u32, rho: u32, c: FpScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((tau, rho)).or_insert(0);
        let sum = FpScalar::new(*entry, self.prime) + c;
        if sum.is_zero() {
            self.terms.remove(&(tau, rho));
        } else {
            *entry = sum.value();
        }
    }

    pub fn add_assign(&mut self, other: &MotivicCoeff) {
        for (t, r, c) in other.terms() {
            self.add_term(t, r, c);
        }
    }

    pub fn mul(&self, other: &MotivicCoeff) -> MotivicCoeff {
        let mut out = MotivicCoeff::zero(self.prime);
        for (t1, r1, c1) in self.terms() {
            for (t2, r2, c2) in other.terms() {
                out.add_term(t1 + t2, r1 + r2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: FpScalar) -> MotivicCoeff {
        let mut out = MotivicCoeff::zero(self.prime);
        for (t, r, v) in self.terms() {
            out.add_term(t, r, v * c);
        }
        out
    }

    /// Sends `τ ↦ tau_value`, `ρ ↦ rho_value`.
    pub fn evaluate(&self, tau_value: FpScalar, rho_value: FpScalar) -> FpScalar {
        self.terms()
            .fold(FpScalar::zero(self.prime), |acc, (t, r, c)| {
                acc + c * tau_value.pow(t as u64) * rho_value.pow(r as u64)
            })
    }
}

/// Bidegree contributed by `τ^t ρ^r`.
pub fn tau_rho_bidegree(tau: u32, rho: u32) -> (i64, i64) {
    (rho as i64, tau as i64 + rho as i64)
}

impl fmt::Display for MotivicCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(t, r, c)| super::text::render_coeff_factors(t, r, c).join("*"))
            .map(|s| if s.is_empty() { "1".to_string() } else { s })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
