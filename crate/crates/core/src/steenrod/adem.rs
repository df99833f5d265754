//! Adem relations and the rewriting loop that brings a composition to its
//! admissible normal form.
//!
//! Three relation sets are supported:
//!
//! * Chow-restricted (any p): `P^a P^b = Σ_j (−1)^{a+j} C((p−1)(b−j)−1, a−pj) P^{a+b−j} P^j`
//!   for `a < pb`. This is the characteristic-0 relation with every `β`,
//!   `τ` and `ρ` term removed.
//! * Characteristic 0, p = 2: the four parity cases for `Sq^a Sq^b`, with
//!   `τ` and `ρ` coefficients.
//! * Characteristic 0, odd p: the relations for `P^a P^b` (`a < pb`) and
//!   `P^a β P^b` (`a ≤ pb`).

use super::coeff::MotivicCoeff;
use super::element::{Mode, SteenrodElement};
use super::monomial::{Letter, OpMonomial};
use crate::error::{Error, Result};
use crate::fp::{binom_signed, FpScalar, Prime};

/// Which inadmissible pair to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl Strategy {
    fn pick(self, m: &OpMonomial, p: Prime) -> Option<usize> {
        match self {
            Strategy::Leftmost => m.first_inadmissible(p),
            Strategy::Rightmost => m.last_inadmissible(p),
        }
    }
}

fn sign(exp: u64, p: Prime) -> FpScalar {
    if exp.is_multiple_of(2) {
        FpScalar::one(p)
    } else {
        -FpScalar::one(p)
    }
}

/// One rewrite of the leftmost inadmissible pair of `m`.
pub fn adem_step(prime: Prime, mode: Mode, m: &OpMonomial) -> Result<SteenrodElement> {
    let i = m
        .first_inadmissible(prime)
        .ok_or(Error::AlreadyAdmissible)?;
    adem_step_at(prime, mode, m, i)
}

/// Rewrites the pair `powers[i], powers[i+1]` of `m`.
pub fn adem_step_at(prime: Prime, mode: Mode, m: &OpMonomial, i: usize) -> Result<SteenrodElement> {
    if i + 1 >= m.powers().len() || !m.pair_is_inadmissible(i, prime) {
        return Err(Error::AlreadyAdmissible);
    }
    let mut out = SteenrodElement::zero(prime, mode);
    match (mode, prime.is_two()) {
        (Mode::Char0Motivic, true) => rewrite_sq_pair(m, i, &mut out),
        (Mode::CharPChow, _) if m.has_beta() => {}
        _ => rewrite_power_pair(prime, mode, m, i, &mut out),
    }
    Ok(out)
}

// P^a β^ε P^b with the surrounding word kept intact.
fn rewrite_power_pair(
    prime: Prime,
    mode: Mode,
    m: &OpMonomial,
    i: usize,
    out: &mut SteenrodElement,
) {
    let p = prime.get() as i64;
    let a = m.powers()[i] as i64;
    let b = m.powers()[i + 1] as i64;
    let beta_between = m.eps()[i + 1] == 1;
    let (prefix, suffix) = m.split_around_pair(i);

    let mut emit = |c: FpScalar, middle: &[Letter]| {
        if c.is_zero() {
            return;
        }
        let mut word = prefix.clone();
        word.extend_from_slice(middle);
        word.extend_from_slice(&suffix);
        if let Some(w) = OpMonomial::from_letters(&word) {
            out.push(w, MotivicCoeff::constant(c));
        }
    };

    if !beta_between {
        for j in 0..=a / p {
            let c =
                sign((a + j) as u64, prime) * binom_signed((p - 1) * (b - j) - 1, a - p * j, prime);
            emit(c, &[Letter::P((a + b - j) as u32), Letter::P(j as u32)]);
        }
    } else if mode == Mode::Char0Motivic {
        // The β P P sum uses C((p−1)(b−j), a−pj); the P β P sum has the −1.
        for j in 0..=a / p {
            let c = sign((a + j) as u64, prime) * binom_signed((p - 1) * (b - j), a - p * j, prime);
            emit(
                c,
                &[
                    Letter::Beta,
                    Letter::P((a + b - j) as u32),
                    Letter::P(j as u32),
                ],
            );
        }
        for j in 0..=(a - 1) / p {
            let c = sign((a + j + 1) as u64, prime)
                * binom_signed((p - 1) * (b - j) - 1, a - p * j - 1, prime);
            emit(
                c,
                &[
                    Letter::P((a + b - j) as u32),
                    Letter::Beta,
                    Letter::P(j as u32),
                ],
            );
        }
    }
}

// `Sq^n ∘ τ` as a sum of `τ^t ρ^r Sq^m`, read off from the Cartan formula
// with `Sq¹τ = ρ` and `ρ` central.
fn sq_past_tau(n: u32) -> Vec<(u32, u32, Option<u32>)> {
    let nonzero = |m: u32| (m > 0).then_some(m);
    if n == 0 {
        vec![(1, 0, None)]
    } else if n.is_multiple_of(2) {
        vec![(1, 0, Some(n)), (1, 1, Some(n - 1))]
    } else {
        let mut terms = vec![(1, 0, Some(n)), (0, 1, nonzero(n - 1))];
        if n >= 3 {
            terms.push((0, 2, Some(n - 2)));
        }
        terms
    }
}

// `Sq^{s_1} ⋯ Sq^{s_k} ∘ τ = Σ τ^t ρ^r · word`.
pub(crate) fn move_tau_left(prefix: &[u32]) -> Vec<(u32, u32, Vec<u32>)> {
    let Some((&last, rest)) = prefix.split_last() else {
        return vec![(1, 0, Vec::new())];
    };
    let mut out = Vec::new();
    for (t, r, letter) in sq_past_tau(last) {
        let heads = if t == 1 {
            move_tau_left(rest)
        } else {
            vec![(0, 0, rest.to_vec())]
        };
        for (t2, r2, mut word) in heads {
            word.extend(letter);
            out.push((t2, r + r2, word));
        }
    }
    out
}

// `word ∘ τ^t`, one τ at a time.
pub(crate) fn move_tau_power_left(word: &[u32], t: u32) -> Vec<(u32, u32, Vec<u32>)> {
    let mut terms = vec![(0, 0, word.to_vec())];
    for _ in 0..t {
        terms = terms
            .into_iter()
            .flat_map(|(t0, r0, w)| {
                move_tau_left(&w)
                    .into_iter()
                    .map(move |(t1, r1, w1)| (t0 + t1, r0 + r1, w1))
            })
            .collect();
    }
    terms
}

// Characteristic-0 mod-2 relation on the Sq reading of the word.
fn rewrite_sq_pair(m: &OpMonomial, i: usize, out: &mut SteenrodElement) {
    let two = Prime::TWO;
    let seq = m.sq_sequence();
    let (a, b) = (seq[i] as i64, seq[i + 1] as i64);
    let bin = |n: i64, k: i64| binom_signed(n, k, two);
    let one = FpScalar::one(two);

    let mut emit = |tau: u32, rho: u32, c: FpScalar, pair: [i64; 2]| {
        if c.is_zero() {
            return;
        }
        let prefixes = if tau == 0 {
            vec![(0, 0, seq[..i].to_vec())]
        } else {
            move_tau_left(&seq[..i])
        };
        for (t, r, mut word) in prefixes {
            word.extend(pair.iter().filter(|&&x| x > 0).map(|&x| x as u32));
            word.extend_from_slice(&seq[i + 2..]);
            if let Some(w) = OpMonomial::from_sq(&word) {
                out.push(w, MotivicCoeff::monomial(t, rho + r, one * c));
            }
        }
    };

    for j in 0..=a / 2 {
        let odd = j % 2 == 1;
        match (a % 2 == 1, b % 2 == 1) {
            (false, true) => {
                emit(0, 0, bin(b - 1 - j, a - 2 * j), [a + b - j, j]);
                if odd {
                    emit(0, 1, bin(b - 1 - j, a - 2 * j), [a + b - j - 1, j]);
                }
            }
            (true, true) => {
                if odd {
                    emit(0, 0, bin(b - 1 - j, a - 2 * j), [a + b - j, j]);
                }
            }
            (false, false) => {
                emit(j as u32 % 2, 0, bin(b - 1 - j, a - 2 * j), [a + b - j, j]);
            }
            (true, false) => {
                if odd {
                    emit(0, 1, bin(b - 1 - j, a - 1 - 2 * j), [a + b - j - 1, j]);
                } else {
                    emit(0, 0, bin(b - 1 - j, a - 2 * j), [a + b - j, j]);
                }
            }
        }
    }
}

/// Outcome of a normalisation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub result: SteenrodElement,
    /// Number of single-pair rewrites performed.
    pub steps: usize,
}

impl SteenrodElement {
    /// Admissible normal form, rewriting leftmost pairs first.
    pub fn adem_reduce(&self) -> SteenrodElement {
        self.reduce_with(Strategy::Leftmost).result
    }

    pub fn reduce_with(&self, strategy: Strategy) -> Reduction {
        let prime = self.prime;
        let mut done = SteenrodElement::zero(prime, self.mode);
        let mut pending = SteenrodElement::zero(prime, self.mode);
        for (m, c) in &self.terms {
            if m.is_admissible(prime) {
                done.push(m.clone(), c.clone());
            } else {
                pending.push(m.clone(), c.clone());
            }
        }
        let mut steps = 0;
        while let Some((m, c)) = pending.terms.pop_first() {
            let i = strategy
                .pick(&m, prime)
                .expect("pending terms are inadmissible");
            let rewritten = adem_step_at(prime, self.mode, &m, i).expect("pair is inadmissible");
            steps += 1;
            for (m2, c2) in rewritten.terms {
                let coeff = c.mul(&c2);
                if m2.is_admissible(prime) {
                    done.push(m2, coeff);
                } else {
                    pending.push(m2, coeff);
                }
            }
        }
        Reduction {
            result: done,
            steps,
        }
    }
}
