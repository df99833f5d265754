//! Canonical text and record forms for operation elements.
//!
//! Text: `2*P2 + P3.P1`, `t*Sq3.Sq1`, `P1.b.P1`. Terms are joined by ` + `,
//! factors by `*`, and generators of a composition by `.`. At p = 2
//! monomials print in `Sq` notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::coeff::MotivicCoeff;
use super::element::{Mode, SteenrodElement};
use super::monomial::{Letter, OpMonomial};
use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::parse::Cursor;

pub(crate) fn render_coeff_factors(tau: u32, rho: u32, c: FpScalar) -> Vec<String> {
    let mut parts = Vec::new();
    if c.value() != 1 {
        parts.push(c.to_string());
    }
    match tau {
        0 => {}
        1 => parts.push("t".into()),
        k => parts.push(format!("t^{k}")),
    }
    match rho {
        0 => {}
        1 => parts.push("r".into()),
        k => parts.push(format!("r^{k}")),
    }
    parts
}

/// Renders a monomial; the identity is `1`.
pub fn render_monomial(m: &OpMonomial, p: Prime) -> String {
    if m.is_identity() {
        return "1".into();
    }
    if p.is_two() {
        m.sq_sequence()
            .iter()
            .map(|a| format!("Sq{a}"))
            .collect::<Vec<_>>()
            .join(".")
    } else {
        m.letters()
            .iter()
            .map(|l| match l {
                Letter::Beta => "b".to_string(),
                Letter::P(n) => format!("P{n}"),
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            for (t, r, v) in c.terms() {
                let mut parts = render_coeff_factors(t, r, v);
                if !m.is_identity() || parts.is_empty() {
                    parts.push(render_monomial(m, self.prime()));
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses an operation expression. The result is not reduced.
pub fn parse_element(src: &str, prime: Prime, mode: Mode) -> Result<SteenrodElement> {
    let mut cur = Cursor::new(src);
    let mut out = SteenrodElement::zero(prime, mode);
    cur.skip_ws();
    if cur.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut negate = cur.eat('-');
    loop {
        cur.skip_ws();
        let (m, mut c) = parse_term(&mut cur, prime)?;
        if negate {
            c = c.scale(-FpScalar::one(prime));
        }
        if let Some(m) = m {
            out.add_term(m, c)
                .map_err(|e| Error::parse(cur.pos(), e.to_string()))?;
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

// Returns None for the monomial when the word itself vanishes (ββ).
fn parse_term(cur: &mut Cursor<'_>, prime: Prime) -> Result<(Option<OpMonomial>, MotivicCoeff)> {
    let mut coeff = MotivicCoeff::one(prime);
    let mut word: Option<Vec<Letter>> = None;
    loop {
        cur.skip_ws();
        let start = cur.pos();
        match cur.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let n = cur.number()?;
                coeff = coeff.scale(FpScalar::new((n % prime.get() as u128) as u64, prime));
            }
            Some('t') | Some('r') => {
                let is_tau = cur.peek() == Some('t');
                cur.bump();
                let k = if cur.eat('^') {
                    cur.number()? as u32
                } else {
                    1
                };
                let factor = if is_tau {
                    MotivicCoeff::monomial(k, 0, FpScalar::one(prime))
                } else {
                    MotivicCoeff::monomial(0, k, FpScalar::one(prime))
                };
                coeff = coeff.mul(&factor);
            }
            Some('S') | Some('P') | Some('b') => {
                if word.is_some() {
                    return Err(Error::parse(
                        start,
                        "a term may contain only one composition",
                    ));
                }
                word = Some(parse_word(cur, prime)?);
            }
            Some(_) => return Err(cur.error("expected a coefficient or an operation")),
            None => return Err(cur.error("unexpected end of input")),
        }
        cur.skip_ws();
        if !cur.eat('*') {
            break;
        }
    }
    let m = match word {
        None => Some(OpMonomial::identity()),
        Some(w) => OpMonomial::from_letters(&w),
    };
    Ok((m, coeff))
}

fn parse_word(cur: &mut Cursor<'_>, prime: Prime) -> Result<Vec<Letter>> {
    let mut word = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.pos();
        if cur.eat_str("Sq") {
            if !prime.is_two() {
                return Err(Error::parse(
                    start,
                    "Sq generators need p = 2; use Pn and b",
                ));
            }
            let n = cur.number()? as u32;
            if n % 2 == 1 {
                word.push(Letter::Beta);
            }
            word.push(Letter::P(n / 2));
        } else if cur.eat('P') {
            word.push(Letter::P(cur.number()? as u32));
        } else if cur.eat('b') {
            word.push(Letter::Beta);
        } else {
            return Err(cur.error("expected Sq<n>, P<n> or b"));
        }
        cur.skip_ws();
        if !cur.eat('.') {
            break;
        }
    }
    Ok(word)
}

/// Structured record form of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub prime: Prime,
    pub mode: Mode,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub eps: Vec<u8>,
    pub powers: Vec<u32>,
    pub coeff: u64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub tau: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub rho: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

impl From<&SteenrodElement> for ElementRecord {
    fn from(e: &SteenrodElement) -> Self {
        let mut terms = Vec::new();
        for (m, c) in e.terms() {
            for (tau, rho, v) in c.terms() {
                terms.push(TermRecord {
                    eps: m.eps().to_vec(),
                    powers: m.powers().to_vec(),
                    coeff: v.value(),
                    tau,
                    rho,
                });
            }
        }
        ElementRecord {
            prime: e.prime(),
            mode: e.mode(),
            terms,
        }
    }
}

impl TryFrom<ElementRecord> for SteenrodElement {
    type Error = Error;
    fn try_from(rec: ElementRecord) -> Result<Self> {
        let mut e = SteenrodElement::zero(rec.prime, rec.mode);
        for t in rec.terms {
            let m = OpMonomial::new(t.eps, t.powers)?;
            let c = MotivicCoeff::monomial(t.tau, t.rho, FpScalar::new(t.coeff, rec.prime));
            e.add_term(m, c)?;
        }
        Ok(e)
    }
}

impl Serialize for SteenrodElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SteenrodElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = ElementRecord::deserialize(d)?;
        SteenrodElement::try_from(rec).map_err(serde::de::Error::custom)
    }
}
