//! Mod-p reduced power operations on Chow rings.
//!
//! * [`fp`]: the prime field, Lucas binomials, p-adic valuations.
//! * [`steenrod`]: operation monomials and Adem normal forms.
//! * [`dual`]: dual-algebra monomials and the coaction on `H^{*,*}(Bμ_p)`.
//! * [`modules`]: the action on mod-2 Chow rings of split quadrics and on
//!   mod-p Chow rings of projective spaces.
//! * [`charclass`]: truncated series in the hyperplane class, the total
//!   class `w` and Rost degree-formula numbers.
//! * [`qform`]: Witt-index bound checkers for quadratic forms.

pub mod charclass;
pub mod dual;
pub mod error;
pub mod fp;
pub mod modules;
mod parse;
pub mod qform;
pub mod steenrod;

use num_bigint::BigInt;

pub use charclass::{SeriesScalar, TruncSeries, VirtualBundleSpec};
pub use error::{Error, Result};
pub use fp::{binom_mod_p, vp, FpScalar, Prime};
pub use steenrod::{Mode, OpMonomial, SteenrodElement};

/// Truncated integer series with machine-width coefficients.
pub type Series = TruncSeries<i128>;
/// Truncated integer series with arbitrary-precision coefficients.
pub type BigSeries = TruncSeries<BigInt>;

/// Default `v`-truncation for `Bμ_p` computations.
pub const DEFAULT_TRUNCATION: u32 = 64;
