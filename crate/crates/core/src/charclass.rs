//! Truncated power series in the hyperplane class `h` and the total
//! characteristic class `w` attached to `f(x) = 1 + x^{p−1}`.
//!
//! Coefficients stay in ℤ (any signed integer scalar) until a caller asks
//! for a residue; Rost numbers need `deg / p` before reducing mod p.

use std::fmt;
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::parse::Cursor;

/// Exact signed integer scalar usable as a series coefficient.
pub trait SeriesScalar: Clone + Signed + FromPrimitive + ToPrimitive {}

impl<T: Clone + Signed + FromPrimitive + ToPrimitive> SeriesScalar for T {}

/// `Σ_{i ≤ n} c_i h^i` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T> TruncSeries<T>
where
    T: SeriesScalar,
{
    /// Builds a series truncated at `h^trunc`; missing coefficients are 0.
    pub fn new(mut coeffs: Vec<T>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, T::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Self::new(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Self::new(vec![T::one()], trunc)
    }

    /// `1 + a·h^k`.
    pub fn one_plus(a: T, k: usize, trunc: usize) -> Self {
        let mut s = Self::one(trunc);
        if k <= trunc {
            s.coeffs[k] = s.coeffs[k].clone() + a;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `h^i`, zero beyond the truncation.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    fn common_trunc(&self, other: &Self) -> usize {
        self.trunc().min(other.trunc())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_trunc(other);
        let coeffs = (0..=n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(coeffs, n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_trunc(other);
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, n)
    }

    /// Inverse; the constant term must be `±1`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if !c0.abs().is_one() {
            return Err(Error::NonUnitConstant(
                c0.to_i128().map_or_else(|| "?".into(), |v| v.to_string()),
            ));
        }
        let n = self.trunc();
        let mut out: Vec<T> = vec![T::zero(); n + 1];
        // c0 = ±1 is its own inverse
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for i in 1..=k {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out[k] = -(acc * c0.clone());
        }
        Ok(Self::new(out, n))
    }

    /// `self^e`; negative exponents go through [`TruncSeries::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.trunc());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Coefficients reduced into F_p.
    pub fn reduce_mod(&self, p: Prime) -> Vec<FpScalar> {
        let modulus = T::from_u64(p.get()).expect("prime fits the scalar type");
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.clone() % modulus.clone();
                let r = if r.is_negative() {
                    r + modulus.clone()
                } else {
                    r
                };
                FpScalar::new(r.to_u64().expect("residue below p"), p)
            })
            .collect()
    }
}

impl<T> fmt::Display for TruncSeries<T>
where
    T: SeriesScalar + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "h")?,
                (1, false) => write!(f, "{mag}h")?,
                (_, true) => write!(f, "h^{i}")?,
                (_, false) => write!(f, "{mag}h^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A virtual bundle whose total Chern class is `Π (1 + a·h)^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualBundleSpec {
    pub factors: Vec<(i64, i64)>,
}

impl VirtualBundleSpec {
    pub fn new(factors: Vec<(i64, i64)>) -> Self {
        VirtualBundleSpec { factors }
    }

    /// `−T_X` for the split quadric of dimension `n` in `P^{n+1}`:
    /// `c(T_X) = (1+h)^{n+2} / (1+2h)`.
    pub fn quadric_neg_tangent(n: u32) -> Self {
        Self::new(vec![(2, 1), (1, -(n as i64 + 2))])
    }

    /// `−T` for `P^n`: `c(T) = (1+h)^{n+1}`.
    pub fn projective_neg_tangent(n: u32) -> Self {
        Self::new(vec![(1, -(n as i64 + 1))])
    }

    /// Direct sum (product of total classes).
    pub fn union(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self::new(factors)
    }

    pub fn chern_series<T>(&self, trunc: usize) -> TruncSeries<T>
    where
        T: SeriesScalar,
    {
        self.product(trunc, 1)
    }

    // Π (1 + a^k h^k)^e
    fn product<T>(&self, trunc: usize, k: u32) -> TruncSeries<T>
    where
        T: SeriesScalar,
    {
        let mut acc = TruncSeries::one(trunc);
        for &(a, e) in &self.factors {
            let a = T::from_i64(a).expect("factor fits the scalar type");
            let ak = num_traits::pow(a, k as usize);
            let factor = TruncSeries::one_plus(ak, k as usize, trunc);
            acc = acc.mul(&factor.pow(e).expect("constant term is 1"));
        }
        acc
    }
}

impl fmt::Display for VirtualBundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(a, e)| {
                let lin = match a {
                    1 => "1+h".to_string(),
                    -1 => "1-h".to_string(),
                    a if a < 0 => format!("1-{}h", -a),
                    a => format!("1+{a}h"),
                };
                format!("({lin})^{e}")
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for VirtualBundleSpec {
    type Err = Error;

    /// Parses `(1+2h)^1 (1+h)^-4`; a missing exponent means 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut factors = Vec::new();
        cur.skip_ws();
        if cur.eat_str("1") && {
            cur.skip_ws();
            cur.at_end()
        } {
            return Ok(Self::new(factors));
        }
        let mut cur = Cursor::new(s);
        loop {
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            if !cur.eat('(') {
                return Err(cur.error("expected '('"));
            }
            cur.skip_ws();
            if !cur.eat('1') {
                return Err(cur.error("expected '1'"));
            }
            cur.skip_ws();
            let sign = if cur.eat('+') {
                1
            } else if cur.eat('-') {
                -1
            } else {
                return Err(cur.error("expected '+' or '-'"));
            };
            cur.skip_ws();
            let a = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.number()? as i64
            } else {
                1
            };
            if !cur.eat('h') {
                return Err(cur.error("expected 'h'"));
            }
            cur.skip_ws();
            if !cur.eat(')') {
                return Err(cur.error("expected ')'"));
            }
            let e = if cur.eat('^') {
                let neg = cur.eat('-');
                let n = cur.number()? as i64;
                if neg {
                    -n
                } else {
                    n
                }
            } else {
                1
            };
            factors.push((sign * a, e));
        }
        Ok(Self::new(factors))
    }
}

/// Total class `w` of the virtual bundle, truncated at `h^trunc`:
/// `Π (1 + a^{p−1} h^{p−1})^e`.
pub fn w_class<T>(spec: &VirtualBundleSpec, p: Prime, trunc: usize) -> TruncSeries<T>
where
    T: SeriesScalar,
{
    spec.product(trunc, (p.get() - 1) as u32)
}

/// `deg(w_n(−T_X))` and `(deg / p) mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RostNumber {
    pub deg: i128,
    pub quotient: FpScalar,
}

/// Rost number of a variety of dimension `dim` with `−T` given by `spec`
/// and `deg(h^dim) = top_degree`.
pub fn rost_number_for(
    spec: &VirtualBundleSpec,
    dim: u32,
    top_degree: i128,
    p: Prime,
) -> Result<RostNumber> {
    let w: TruncSeries<i128> = w_class(spec, p, dim as usize);
    let deg = w.coeff(dim as usize) * top_degree;
    let q = p.get() as i128;
    if deg % q != 0 {
        return Err(Error::NotDivisible(q, deg));
    }
    Ok(RostNumber {
        deg,
        quotient: FpScalar::from_i128(deg / q, p),
    })
}

/// Rost number of the split quadric of dimension `n` (`deg h^n = 2`).
pub fn rost_number(n: u32, p: Prime) -> Result<RostNumber> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "quadric dimension must be positive".into(),
        ));
    }
    rost_number_for(&VirtualBundleSpec::quadric_neg_tangent(n), n, 2, p)
}

/// Degree-formula congruence `deg_x/p ≡ deg_f · deg_y/p (mod n_y)`.
pub fn degree_formula_check(
    deg_wx: i128,
    deg_wy: i128,
    deg_f: i128,
    n_y: u64,
    p: Prime,
) -> Result<bool> {
    let q = p.get() as i128;
    for d in [deg_wx, deg_wy] {
        if d % q != 0 {
            return Err(Error::NotDivisible(q, d));
        }
    }
    if n_y == 0 {
        return Err(Error::InvalidArgument("n_Y must be positive".into()));
    }
    let n = n_y as i128;
    Ok((deg_wx / q - deg_f * (deg_wy / q)).rem_euclid(n) == 0)
}
