//! Exhaustive sweeps behind the acceptance criteria. Each returns the
//! number of exact comparisons made, or the first mismatch.

use std::collections::BTreeSet;

use motivic_steenrod::charclass::rost_number;
use motivic_steenrod::dual::{bmu_coaction, coaction_of_u, BmuElement};
use motivic_steenrod::modules::{
    act, total_p, total_sq, wu_oracle_sq_l, CellularModule, ProjClass, ProjSpaceRing, QuadricClass,
    QuadricRing,
};
use motivic_steenrod::qform::{hoffmann_chains, hoffmann_feasible_i1, inq_allowed_dims, WittChain};
use motivic_steenrod::{Error, Mode, OpMonomial, Prime, SteenrodElement};

use super::prime;

pub type Sweep = Result<usize, String>;

pub fn quadric_basis(n: u32) -> Vec<QuadricClass> {
    let ring = QuadricRing::new(n).unwrap();
    ring.basis()
        .into_iter()
        .map(|b| QuadricClass::basis(ring, b).unwrap())
        .collect()
}

pub fn proj_basis(n: u32, p: Prime) -> Vec<ProjClass> {
    let ring = ProjSpaceRing::new(n, p).unwrap();
    (0..=n).map(|i| ProjClass::h_pow(ring, i)).collect()
}

/// `P^{a_1} ⋯ P^{a_k}` left unreduced; `P^0` factors are dropped.
pub fn chow_word(p: Prime, powers: &[u32]) -> SteenrodElement {
    let powers: Vec<u32> = powers.iter().copied().filter(|&a| a > 0).collect();
    let m = OpMonomial::new(vec![0; powers.len() + 1], powers).unwrap();
    SteenrodElement::from_monomial(p, Mode::CharPChow, m)
}

fn compare<M: CellularModule + std::fmt::Debug>(
    what: impl Fn() -> String,
    lhs: &M,
    rhs: &M,
) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{}: {lhs:?} != {rhs:?}", what()))
    }
}

fn adem_faithful<M: CellularModule + std::fmt::Debug>(
    p: Prime,
    max_sum: u32,
    basis: &[M],
    checks: &mut usize,
) -> Result<(), String> {
    let q = p.get() as u32;
    for a in 1..max_sum {
        for b in 1..=max_sum - a {
            if a >= q * b {
                continue;
            }
            let word = chow_word(p, &[a, b]);
            let reduced = word.adem_reduce();
            for x in basis {
                let lhs = act(&word, x).map_err(|e| e.to_string())?;
                let rhs = act(&reduced, x).map_err(|e| e.to_string())?;
                compare(|| format!("p={p} P{a}P{b} on {x:?}"), &lhs, &rhs)?;
                *checks += 1;
            }
        }
    }
    Ok(())
}

/// Criterion 1: composed and reduced `Sq^{2a}Sq^{2b}` agree on quadrics.
pub fn adem_on_quadrics() -> Sweep {
    let mut checks = 0;
    for n in 1..=12 {
        adem_faithful(Prime::TWO, 12, &quadric_basis(n), &mut checks)?;
    }
    Ok(checks)
}

/// Criterion 2: the same at p = 3, 5 on `P^25`.
pub fn adem_on_projective_space() -> Sweep {
    let mut checks = 0;
    for p in [prime(3), prime(5)] {
        adem_faithful(p, 8, &proj_basis(25, p), &mut checks)?;
    }
    Ok(checks)
}

/// Criterion 3: total operations are ring homomorphisms.
pub fn cartan() -> Sweep {
    let mut checks = 0;
    for n in 1..=12 {
        let basis = quadric_basis(n);
        for x in &basis {
            for y in &basis {
                let lhs = total_sq(&x.mul(y));
                let rhs = total_sq(x).mul(&total_sq(y));
                compare(|| format!("dimX={n} Sq({x} * {y})"), &lhs, &rhs)?;
                checks += 1;
            }
        }
    }
    for p in [prime(2), prime(3), prime(5)] {
        for n in 1..=25 {
            let basis = proj_basis(n, p);
            for x in &basis {
                for y in &basis {
                    let lhs = total_p(&x.mul(y));
                    let rhs = total_p(x).mul(&total_p(y));
                    compare(|| format!("p={p} P^{n}: P({x} * {y})"), &lhs, &rhs)?;
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

fn power_and_instability<M: CellularModule + std::fmt::Debug>(
    x: &M,
    codim: u32,
    x_to_p: &M,
    max_n: u32,
    checks: &mut usize,
) -> Result<(), String> {
    let p = x.prime();
    for n in codim..=max_n {
        let got = act(&chow_word(p, &[n]), x).map_err(|e| e.to_string())?;
        let want = if n == codim {
            x_to_p.clone()
        } else {
            x.zero_like()
        };
        compare(
            || format!("p={p} P{n} on {x:?} (codim {codim})"),
            &got,
            &want,
        )?;
        *checks += 1;
    }
    Ok(())
}

/// Criterion 4: `P^n x = x^p` in codimension `n`, and `0` below.
pub fn pth_power_and_instability() -> Sweep {
    let mut checks = 0;
    for n in 1..=12 {
        let ring = QuadricRing::new(n).unwrap();
        for b in ring.basis() {
            let x = QuadricClass::basis(ring, b).unwrap();
            power_and_instability(&x, ring.codim(b), &x.mul(&x), n + 2, &mut checks)?;
        }
    }
    for p in [prime(2), prime(3), prime(5)] {
        for n in 1..=25 {
            for (i, x) in proj_basis(n, p).iter().enumerate() {
                let xp = x.pow(p.get() as u32);
                power_and_instability(x, i as u32, &xp, n + 2, &mut checks)?;
            }
        }
    }
    Ok(checks)
}

/// Criterion 5: the Wu-formula oracle matches the action formula.
pub fn wu_oracle() -> Sweep {
    let mut checks = 0;
    for n in 1..=12 {
        let ring = QuadricRing::new(n).unwrap();
        for i in 0..=ring.d() {
            let l = QuadricClass::l(ring, i).unwrap();
            let oracle = wu_oracle_sq_l(i, ring).map_err(|e| e.to_string())?;
            compare(|| format!("dimX={n} Sq(l_{i})"), &total_sq(&l), &oracle)?;
            checks += 1;
        }
    }
    Ok(checks)
}

/// Criterion 6: no `v^{2^{i+1}}` term survives in the image of `u²`.
pub fn tau_squared_vanishes() -> Sweep {
    let two = Prime::TWO;
    let trunc = 64;
    let u = BmuElement::u(two, trunc);
    let via_ring = bmu_coaction(&u.mul(&u));
    let lu = coaction_of_u(two, trunc);
    let via_product = lu.mul(&lu).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for i in 0.. {
        let k = 1u32 << (i + 1);
        if k > trunc {
            break;
        }
        for (name, img) in [("λ(u²)", &via_ring), ("λ(u)λ(u)", &via_product)] {
            for e in 0..=1 {
                let slice = img.slice(e, k);
                if !slice.is_empty() {
                    return Err(format!("{name} has u^{e} v^{k} terms {slice:?}"));
                }
                checks += 1;
            }
        }
    }
    // The τ_i ⊗ v^{2^i} terms do appear in λ(u) itself.
    if lu.slice(0, 1).is_empty() {
        return Err("λ(u) lost its τ_0 term".into());
    }
    Ok(checks)
}

/// Criterion 7: Rost numbers are divisible by p; `rost(1, 2) = (−2, 1)`.
pub fn rost_divisibility() -> Sweep {
    let mut checks = 0;
    for p in [prime(2), prime(3), prime(5)] {
        for n in 1..=30 {
            match rost_number(n, p) {
                Ok(r) if r.deg % p.get() as i128 == 0 => checks += 1,
                Ok(r) => return Err(format!("n={n} p={p}: deg {} not divisible", r.deg)),
                Err(Error::NotDivisible(_, deg)) => {
                    return Err(format!("n={n} p={p}: deg {deg} not divisible"))
                }
                Err(e) => return Err(format!("n={n} p={p}: {e}")),
            }
        }
    }
    let r = rost_number(1, Prime::TWO).map_err(|e| e.to_string())?;
    if (r.deg, r.quotient.value()) != (-2, 1) {
        return Err(format!("rost(1, 2) = ({}, {})", r.deg, r.quotient));
    }
    Ok(checks + 1)
}

/// Criterion 8: pinned normal forms, each checked again through an action.
pub fn pinned_forms() -> Sweep {
    use motivic_steenrod::steenrod::parse_element;
    let mut checks = 0;
    let reduce = |src: &str, p: u64, mode: Mode| {
        parse_element(src, prime(p), mode)
            .map(|e| e.adem_reduce().to_string())
            .map_err(|e| e.to_string())
    };
    let expect = |got: String, want: &str, what: &str| {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got:?}, want {want:?}"))
        }
    };
    expect(reduce("Sq2.Sq2", 2, Mode::CharPChow)?, "0", "Sq2Sq2 charp")?;
    expect(
        reduce("Sq2.Sq2", 2, Mode::Char0Motivic)?,
        "t*Sq3.Sq1",
        "Sq2Sq2 char0",
    )?;
    checks += 2;
    for p in [3, 5, 7, 11, 13] {
        for mode in [Mode::CharPChow, Mode::Char0Motivic] {
            expect(
                reduce("P1.P1", p, mode)?,
                "2*P2",
                &format!("P1P1 p={p} {mode}"),
            )?;
            checks += 1;
        }
    }

    let sq2sq2 = chow_word(Prime::TWO, &[1, 1]);
    for n in 1..=12 {
        for x in quadric_basis(n) {
            let y = act(&sq2sq2, &x).map_err(|e| e.to_string())?;
            if !y.is_zero() {
                return Err(format!("Sq2Sq2 acts nontrivially on {x} (dimX={n})"));
            }
            checks += 1;
        }
    }
    for p in [3u64, 5, 7] {
        let p = prime(p);
        let two_p2 = chow_word(p, &[2]).scale(motivic_steenrod::FpScalar::new(2, p));
        for x in proj_basis(25, p) {
            let lhs = act(&chow_word(p, &[1, 1]), &x).map_err(|e| e.to_string())?;
            let rhs = act(&two_p2, &x).map_err(|e| e.to_string())?;
            compare(|| format!("P1P1 vs 2P2 on {x} p={p}"), &lhs, &rhs)?;
            checks += 1;
        }
    }
    Ok(checks)
}

// i ≤ 2^{v₂(m)} exactly when the next power of two at or above i divides m.
fn hoffmann_oracle(dim: u64) -> Vec<u64> {
    (1..=dim / 2)
        .filter(|&i| (dim - i).is_multiple_of(i.next_power_of_two()))
        .collect()
}

fn v2_chain_oracle(indices: &[u64]) -> bool {
    let v = |n: u64| n.trailing_zeros() as i64;
    let min_rest = indices[1..].iter().map(|&i| v(i)).min().unwrap();
    v(indices[0]) + 1 >= min_rest
}

fn chains_oracle(dim: u64) -> BTreeSet<Vec<u64>> {
    let mut done = BTreeSet::new();
    let mut frontier = vec![(dim, Vec::new())];
    while let Some((left, chain)) = frontier.pop() {
        if left < 2 {
            done.insert(chain);
            continue;
        }
        for i in hoffmann_oracle(left) {
            let mut next = chain.clone();
            next.push(i);
            frontier.push((left - 2 * i, next));
        }
    }
    done
}

/// Criterion 9: quadratic-form combinatorics against independent oracles.
/// Also returns the chains that violate the 2-adic bound.
pub fn qform() -> Result<(usize, Vec<WittChain>), String> {
    let mut checks = 0;
    for dim in 2..=64 {
        let got = hoffmann_feasible_i1(dim).map_err(|e| e.to_string())?;
        if got != hoffmann_oracle(dim) {
            return Err(format!("hoffmann({dim}) = {got:?}"));
        }
        checks += 1;
    }
    for n in 1..=10u32 {
        let got: BTreeSet<u64> = inq_allowed_dims(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let top = 1u64 << (n + 1);
        let want: BTreeSet<u64> = (0..top)
            .filter(|m| m % 2 == 0 && (top - m).is_power_of_two() && top - m >= 2)
            .collect();
        if got != want {
            return Err(format!("inq({n}) = {got:?}, want {want:?}"));
        }
        checks += 1;
    }
    let mut violations = Vec::new();
    for dim in 2..=32 {
        let chains = hoffmann_chains(dim);
        let got: BTreeSet<Vec<u64>> = chains.iter().map(|c| c.indices().to_vec()).collect();
        if got != chains_oracle(dim) {
            return Err(format!("chain enumeration differs at dim {dim}"));
        }
        for c in chains.into_iter().filter(|c| c.height() > 1) {
            let ok = c.v2_chain_ok().map_err(|e| e.to_string())?;
            if ok != v2_chain_oracle(c.indices()) {
                return Err(format!("v2_chain_ok disagrees on {c}"));
            }
            if !ok {
                violations.push(c);
            }
            checks += 1;
        }
    }
    Ok((checks, violations))
}
