//! Independent models of the classical action, used as oracles.
//!
//! * p = 2: `F_2[x_1..x_k]` with `|x_i| = 1` and `Sq(x) = x + x²`.
//! * odd p: `Λ(u_1..u_k) ⊗ F_p[v_1..v_k]` with `βu = v`, `P(v) = v + v^p`.
//!
//! Both use plain binomials computed by Pascal's rule rather than the
//! library's Lucas implementation.

#![allow(dead_code)]

pub mod sweeps;

use std::collections::BTreeMap;

use motivic_steenrod::steenrod::Letter;
use motivic_steenrod::{FpScalar, Prime, SteenrodElement};

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// `C(n, k) mod p` by Pascal's triangle.
pub fn pascal(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row[k as usize] % p
}

/// Exponent vectors `(u exponents, v exponents)`; at p = 2 only `v` is used
/// and stands for the degree-one generators `x_i`.
pub type Mono = (Vec<u8>, Vec<u32>);
pub type Poly = BTreeMap<Mono, u64>;

fn add_into(acc: &mut Poly, m: Mono, c: u64, p: u64) {
    let c = c % p;
    if c == 0 {
        return;
    }
    let slot = acc.entry(m.clone()).or_insert(0);
    *slot = (*slot + c) % p;
    if *slot == 0 {
        acc.remove(&m);
    }
}

/// Reduced power of weight `n` on one monomial: `v^a ↦ C(a, n_i) v^{a + n_i·shift}`
/// distributed over all ways of writing `n = Σ n_i`.
fn power_on_mono(n: u32, m: &Mono, shift: u32, p: u64) -> Poly {
    // (exponents so far, weight left to distribute, coefficient)
    let mut partial = vec![(Vec::new(), n, 1u64)];
    for &a in &m.1 {
        let mut next = Vec::new();
        for (exps, left, c) in partial {
            for ni in 0..=left.min(a) {
                let b = pascal(a as u64, ni as u64, p);
                if b == 0 {
                    continue;
                }
                let mut e: Vec<u32> = exps.clone();
                e.push(a + ni * shift);
                next.push((e, left - ni, c * b % p));
            }
        }
        partial = next;
    }
    let mut out = Poly::new();
    for (exps, left, c) in partial {
        if left == 0 {
            add_into(&mut out, (m.0.clone(), exps), c, p);
        }
    }
    out
}

/// `β` as an odd derivation with `βu_i = v_i`.
fn beta_on_mono(m: &Mono, p: u64) -> Poly {
    let mut out = Poly::new();
    let mut seen_odd = 0;
    for i in 0..m.0.len() {
        if m.0[i] == 1 {
            let mut e = m.0.clone();
            let mut a = m.1.clone();
            e[i] = 0;
            a[i] += 1;
            let sign = if seen_odd % 2 == 0 { 1 } else { p - 1 };
            add_into(&mut out, (e, a), sign, p);
            seen_odd += 1;
        }
    }
    out
}

fn map_poly(x: &Poly, p: u64, f: impl Fn(&Mono) -> Poly) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in x {
        for (m2, c2) in f(m) {
            add_into(&mut out, m2, c * c2, p);
        }
    }
    out
}

/// Odd-p action of a word of letters, applied right to left.
pub fn odd_word_action(letters: &[Letter], x: &Poly, p: u64) -> Poly {
    letters.iter().rev().fold(x.clone(), |acc, l| match *l {
        Letter::Beta => map_poly(&acc, p, |m| beta_on_mono(m, p)),
        Letter::P(n) => map_poly(&acc, p, |m| power_on_mono(n, m, (p - 1) as u32, p)),
    })
}

/// Odd-p action of an element whose coefficients are constants.
pub fn odd_action(e: &SteenrodElement, x: &Poly) -> Poly {
    let p = e.prime().get();
    let mut out = Poly::new();
    for (m, c) in e.terms() {
        let c = c.as_constant().expect("constant coefficient").value();
        for (m2, c2) in odd_word_action(&m.letters(), x, p) {
            add_into(&mut out, m2, c * c2, p);
        }
    }
    out
}

/// Classical mod-2 action on `F_2[x_1..x_k]` of a characteristic-0 element
/// with `τ = 1`, `ρ = 0`.
pub fn classical_sq_action(e: &SteenrodElement, x: &Poly) -> Poly {
    let two = Prime::TWO;
    let mut out = Poly::new();
    for (m, c) in e.terms() {
        let c = c.evaluate(FpScalar::one(two), FpScalar::zero(two)).value();
        if c == 0 {
            continue;
        }
        let y = m.sq_sequence().iter().rev().fold(x.clone(), |acc, &n| {
            map_poly(&acc, 2, |mono| power_on_mono(n, mono, 1, 2))
        });
        for (m2, c2) in y {
            add_into(&mut out, m2, c * c2, 2);
        }
    }
    out
}

/// `x_1 ⋯ x_k` in the p = 2 model.
pub fn product_of_generators(k: usize) -> Poly {
    Poly::from([((Vec::new(), vec![1; k]), 1)])
}

/// All monomials `u^e v^a` in `k` variables with `a_i ≤ max_v`.
pub fn odd_test_classes(k: usize, max_v: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    let total = (2 * (max_v as usize + 1)).pow(k as u32);
    for mut code in 0..total {
        let mut e = Vec::new();
        let mut a = Vec::new();
        for _ in 0..k {
            e.push((code % 2) as u8);
            code /= 2;
            a.push((code % (max_v as usize + 1)) as u32);
            code /= max_v as usize + 1;
        }
        out.push(Poly::from([((e, a), 1)]));
    }
    out
}
