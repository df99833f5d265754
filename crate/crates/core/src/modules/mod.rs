//! Cellular modules the operations act on.

mod projspace;
mod quadric;

pub use projspace::{p_on_projspace, total_p, ProjClass, ProjClassRecord, ProjSpaceRing};
pub use quadric::{
    sq_on_quadric, total_sq, wu_oracle_sq_l, QuadricBasis, QuadricClass, QuadricClassRecord,
    QuadricRing, QuadricTermRecord,
};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::steenrod::{Mode, SteenrodElement};

/// A mod-p Chow ring with an explicit action of the reduced powers.
pub trait CellularModule: Clone + PartialEq {
    fn prime(&self) -> Prime;
    fn zero_like(&self) -> Self;
    /// `P^j(self)`.
    fn apply_power(&self, j: u32) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scale(&self, c: FpScalar) -> Self;
}

/// Applies `e` to `x`, letters right to left.
pub fn act<M: CellularModule>(e: &SteenrodElement, x: &M) -> Result<M> {
    if e.mode() != Mode::CharPChow {
        return Err(Error::WrongMode {
            expected: Mode::CharPChow,
            got: e.mode(),
        });
    }
    if e.prime() != x.prime() {
        return Err(Error::PrimeMismatch(e.prime().get(), x.prime().get()));
    }
    let mut out = x.zero_like();
    for (m, c) in e.terms() {
        if m.has_beta() {
            continue;
        }
        let c = c
            .as_constant()
            .ok_or_else(|| Error::InvalidArgument(format!("non-scalar coefficient {c}")))?;
        let y = m
            .powers()
            .iter()
            .rev()
            .fold(x.clone(), |acc, &j| acc.apply_power(j));
        out = out.plus(&y.scale(c));
    }
    Ok(out)
}
