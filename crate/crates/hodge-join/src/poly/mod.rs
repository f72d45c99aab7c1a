//! Homogeneous multivariate polynomials over cyclotomic fields.

mod monomial;
mod polynomial;

pub use monomial::{count_monomials, monomial_basis, Monomial, MonomialOrder};
pub use polynomial::Polynomial;
