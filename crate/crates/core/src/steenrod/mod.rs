//! The algebra of operations: admissible monomials, Adem normalisation and
//! composition.

mod adem;
mod coeff;
mod element;
mod monomial;
mod text;

pub use adem::{adem_step, adem_step_at, Reduction, Strategy};
pub use coeff::{tau_rho_bidegree, MotivicCoeff};
pub use element::{Mode, SteenrodElement};
pub use monomial::{Letter, OpMonomial};
pub use text::{parse_element, render_monomial, ElementRecord, TermRecord};

/// Index set `(j, n − j)` of the Cartan sum `P^n(xy) = Σ P^j(x) P^{n−j}(y)`.
pub fn cartan_expand(n: u32) -> Vec<(u32, u32)> {
    (0..=n).map(|j| (j, n - j)).collect()
}
