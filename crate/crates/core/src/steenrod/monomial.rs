use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;

/// A single generator in a composition word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Beta,
    P(u32),
}

/// `β^{ε₀} P^{s₁} β^{ε₁} ⋯ P^{s_m} β^{ε_m}` in composition order (leftmost
/// operation is applied last).
///
/// `eps` always has one more entry than `powers`, and every power is
/// positive. The empty word is the identity `P⁰`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial", into = "RawMonomial")]
pub struct OpMonomial {
    eps: Vec<u8>,
    powers: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawMonomial {
    eps: Vec<u8>,
    powers: Vec<u32>,
}

impl TryFrom<RawMonomial> for OpMonomial {
    type Error = Error;
    fn try_from(raw: RawMonomial) -> Result<Self> {
        OpMonomial::new(raw.eps, raw.powers)
    }
}

impl From<OpMonomial> for RawMonomial {
    fn from(m: OpMonomial) -> Self {
        RawMonomial {
            eps: m.eps,
            powers: m.powers,
        }
    }
}

impl OpMonomial {
    pub fn new(eps: Vec<u8>, powers: Vec<u32>) -> Result<Self> {
        if eps.len() != powers.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} Bockstein flags for {} powers, got {}",
                powers.len() + 1,
                powers.len(),
                eps.len()
            )));
        }
        if eps.iter().any(|&e| e > 1) {
            return Err(Error::InvalidArgument(
                "Bockstein flags must be 0 or 1".into(),
            ));
        }
        if powers.contains(&0) {
            return Err(Error::InvalidArgument("powers must be positive".into()));
        }
        Ok(OpMonomial { eps, powers })
    }

    pub fn identity() -> Self {
        OpMonomial {
            eps: vec![0],
            powers: Vec::new(),
        }
    }

    pub fn beta() -> Self {
        OpMonomial {
            eps: vec![1],
            powers: Vec::new(),
        }
    }

    /// `P^n`; `P⁰` is the identity.
    pub fn power(n: u32) -> Self {
        if n == 0 {
            Self::identity()
        } else {
            OpMonomial {
                eps: vec![0, 0],
                powers: vec![n],
            }
        }
    }

    pub fn eps(&self) -> &[u8] {
        &self.eps
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    pub fn is_identity(&self) -> bool {
        self.powers.is_empty() && self.eps[0] == 0
    }

    pub fn has_beta(&self) -> bool {
        self.eps.contains(&1)
    }

    /// Builds a monomial from a word, dropping `P⁰`. Returns `None` when two
    /// Bocksteins become adjacent, since `β² = 0`.
    pub fn from_letters(word: &[Letter]) -> Option<Self> {
        let mut eps = vec![0u8];
        let mut powers = Vec::new();
        for &letter in word {
            match letter {
                Letter::P(0) => {}
                Letter::P(n) => {
                    powers.push(n);
                    eps.push(0);
                }
                Letter::Beta => {
                    let last = eps.last_mut().expect("eps is never empty");
                    if *last == 1 {
                        return None;
                    }
                    *last = 1;
                }
            }
        }
        Some(OpMonomial { eps, powers })
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_count());
        for (i, &s) in self.powers.iter().enumerate() {
            if self.eps[i] == 1 {
                out.push(Letter::Beta);
            }
            out.push(Letter::P(s));
        }
        if self.eps[self.powers.len()] == 1 {
            out.push(Letter::Beta);
        }
        out
    }

    pub fn letter_count(&self) -> usize {
        self.powers.len() + self.eps.iter().filter(|&&e| e == 1).count()
    }

    /// Mod-2 reading: `Sq^{2n} = P^n`, `Sq^{2n+1} = β P^n`.
    pub fn from_sq(seq: &[u32]) -> Option<Self> {
        let mut word = Vec::with_capacity(seq.len() * 2);
        for &a in seq {
            if a % 2 == 1 {
                word.push(Letter::Beta);
            }
            word.push(Letter::P(a / 2));
        }
        Self::from_letters(&word)
    }

    /// Inverse of [`OpMonomial::from_sq`]; a trailing `β` becomes `Sq¹`.
    pub fn sq_sequence(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .powers
            .iter()
            .zip(&self.eps)
            .map(|(&s, &e)| 2 * s + e as u32)
            .collect();
        if self.eps[self.powers.len()] == 1 {
            out.push(1);
        }
        out
    }

    /// Concatenation `self ∘ other`; `None` if a `ββ` is created.
    pub fn concat(&self, other: &OpMonomial) -> Option<Self> {
        let mut word = self.letters();
        word.extend(other.letters());
        Self::from_letters(&word)
    }

    /// Bidegree `(Σ 2s(p−1) + Σ ε, Σ s(p−1))`.
    pub fn bidegree(&self, p: Prime) -> (i64, i64) {
        let q = p.get() as i64 - 1;
        let total: i64 = self.powers.iter().map(|&s| s as i64).sum();
        let betas = self.eps.iter().map(|&e| e as i64).sum::<i64>();
        (2 * total * q + betas, total * q)
    }

    /// Total P-degree `Σ s_i`; bounds the length of any rewriting chain.
    pub fn total_power(&self) -> u64 {
        self.powers.iter().map(|&s| s as u64).sum()
    }

    /// Whether the pair `powers[i], powers[i+1]` violates
    /// `s_i ≥ p·s_{i+1} + ε_i`.
    pub fn pair_is_inadmissible(&self, i: usize, p: Prime) -> bool {
        let a = self.powers[i] as u64;
        let b = self.powers[i + 1] as u64;
        a < p.get() * b + self.eps[i + 1] as u64
    }

    pub fn is_admissible(&self, p: Prime) -> bool {
        self.first_inadmissible(p).is_none()
    }

    pub fn first_inadmissible(&self, p: Prime) -> Option<usize> {
        (0..self.powers.len().saturating_sub(1)).find(|&i| self.pair_is_inadmissible(i, p))
    }

    pub fn last_inadmissible(&self, p: Prime) -> Option<usize> {
        (0..self.powers.len().saturating_sub(1))
            .rev()
            .find(|&i| self.pair_is_inadmissible(i, p))
    }

    /// Context of the pair `P^{s_i} β^{ε} P^{s_{i+1}}`: everything before
    /// `P^{s_i}` and everything after `P^{s_{i+1}}`.
    pub(crate) fn split_around_pair(&self, i: usize) -> (Vec<Letter>, Vec<Letter>) {
        let mut prefix = Vec::new();
        for k in 0..i {
            if self.eps[k] == 1 {
                prefix.push(Letter::Beta);
            }
            prefix.push(Letter::P(self.powers[k]));
        }
        if self.eps[i] == 1 {
            prefix.push(Letter::Beta);
        }
        let mut suffix = Vec::new();
        for k in i + 2..self.powers.len() {
            if self.eps[k] == 1 {
                suffix.push(Letter::Beta);
            }
            suffix.push(Letter::P(self.powers[k]));
        }
        if self.eps[self.powers.len()] == 1 {
            suffix.push(Letter::Beta);
        }
        (prefix, suffix)
    }
}

impl PartialOrd for OpMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length (in letters) first, then lexicographic on the word.
impl Ord for OpMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter_count()
            .cmp(&other.letter_count())
            .then_with(|| self.letters().cmp(&other.letters()))
    }
}
