//! Arithmetic in the prime field F_p together with the two integer helpers
//! every other module leans on: binomial coefficients reduced mod p and
//! p-adic valuations.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::PrimInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime number, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub const TWO: Prime = Prime(2);

    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p. The value is always reduced into `[0, p)`.
///
/// Mixing scalars over different primes is a logic error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    prime: Prime,
}

impl FpScalar {
    pub fn new(value: u64, prime: Prime) -> Self {
        FpScalar {
            value: value % prime.0,
            prime,
        }
    }

    /// Reduces a signed integer into F_p.
    pub fn from_i128(value: i128, prime: Prime) -> Self {
        let p = prime.0 as i128;
        FpScalar {
            value: value.rem_euclid(p) as u64,
            prime,
        }
    }

    pub fn zero(prime: Prime) -> Self {
        FpScalar { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        FpScalar::new(1, prime)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let p = self.prime.0 as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FpScalar {
            value: acc as u64,
            prime: self.prime,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.prime.0 - 2))
        }
    }

    fn check(self, other: Self) {
        assert_eq!(self.prime, other.prime, "mixed primes in F_p arithmetic");
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        let p = self.prime.0 as u128;
        FpScalar {
            value: ((self.value as u128 + rhs.value as u128) % p) as u64,
            prime: self.prime,
        }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FpScalar {
            value: (self.prime.0 - self.value) % self.prime.0,
            prime: self.prime,
        }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        let p = self.prime.0 as u128;
        FpScalar {
            value: ((self.value as u128 * rhs.value as u128) % p) as u64,
            prime: self.prime,
        }
    }
}

impl AddAssign for FpScalar {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FpScalar {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FpScalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// `C(n, k) mod p` by Lucas' theorem. Out-of-range `k` (negative or larger
/// than `n`) gives zero.
pub fn binom_mod_p(n: u64, k: i64, p: Prime) -> FpScalar {
    if k < 0 || k as u64 > n {
        return FpScalar::zero(p);
    }
    let pp = p.0;
    let (mut n, mut k) = (n, k as u64);
    let mut acc = FpScalar::one(p);
    while k > 0 || n > 0 {
        let (nd, kd) = (n % pp, k % pp);
        if kd > nd {
            return FpScalar::zero(p);
        }
        acc *= small_binom(nd, kd, p);
        n /= pp;
        k /= pp;
    }
    acc
}

// C(n, k) mod p for 0 <= k <= n < p; no factor of p appears.
fn small_binom(n: u64, k: u64, p: Prime) -> FpScalar {
    let k = k.min(n - k);
    let mut num = FpScalar::one(p);
    let mut den = FpScalar::one(p);
    for i in 0..k {
        num *= FpScalar::new(n - i, p);
        den *= FpScalar::new(i + 1, p);
    }
    num * den.inv().expect("denominator is a unit below p")
}

/// Signed convenience wrapper: `C(n, k)` is zero when `n < 0`.
///
/// Adem sums only ever ask for non-negative tops, so a negative top is
/// treated as an empty coefficient rather than the extended binomial.
pub(crate) fn binom_signed(n: i64, k: i64, p: Prime) -> FpScalar {
    if n < 0 {
        FpScalar::zero(p)
    } else {
        binom_mod_p(n as u64, k, p)
    }
}

/// The p-adic valuation of a positive integer.
pub fn vp<T: PrimInt>(n: T, p: Prime) -> Result<u32> {
    if n <= T::zero() {
        return Err(Error::ZeroValuation);
    }
    let base = T::from(p.0).ok_or_else(|| {
        Error::InvalidArgument(format!("prime {} does not fit the integer type", p.0))
    })?;
    let mut n = n;
    let mut e = 0;
    while n % base == T::zero() {
        n = n / base;
        e += 1;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn rejects_composites() {
        for n in [0, 1, 4, 6, 9, 15, 91] {
            assert_eq!(Prime::new(n), Err(Error::NotPrime(n)));
        }
        for n in [2, 3, 5, 7, 97] {
            assert!(Prime::new(n).is_ok());
        }
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod_p(6, 3, p(2)).value(), 0);
        assert_eq!(binom_mod_p(5, 0, p(3)).value(), 1);
        assert_eq!(binom_mod_p(1, 2, p(2)).value(), 0);
        assert_eq!(binom_mod_p(4, -1, p(5)).value(), 0);
    }

    #[test]
    fn lucas_matches_pascal() {
        for &q in &[2u64, 3, 5, 7] {
            let prime = p(q);
            let mut row = vec![1u64];
            for n in 0..=64u64 {
                for k in 0..=n {
                    assert_eq!(
                        binom_mod_p(n, k as i64, prime).value(),
                        row[k as usize],
                        "C({n},{k}) mod {q}"
                    );
                }
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = (row[k - 1] + row[k]) % q;
                }
                row = next;
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(6u32, p(2)), Ok(1));
        assert_eq!(vp(8u64, p(2)), Ok(3));
        assert_eq!(vp(9i64, p(3)), Ok(2));
        assert_eq!(vp(0u32, p(2)), Err(Error::ZeroValuation));
    }

    #[test]
    fn inverse_and_negation() {
        let q = p(7);
        for v in 1..7 {
            let x = FpScalar::new(v, q);
            assert_eq!(x * x.inv().unwrap(), FpScalar::one(q));
            assert!((x + -x).is_zero());
        }
        assert_eq!(FpScalar::from_i128(-1, q).value(), 6);
    }

    proptest! {
        #[test]
        fn binom_symmetry(n in 0u64..200, k in 0u64..200, idx in 0usize..3) {
            let prime = p([2, 3, 5][idx]);
            prop_assume!(k <= n);
            prop_assert_eq!(
                binom_mod_p(n, k as i64, prime),
                binom_mod_p(n, (n - k) as i64, prime)
            );
        }
    }
}
