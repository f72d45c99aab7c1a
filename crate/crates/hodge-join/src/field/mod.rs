//! Exact arithmetic over Q and cyclotomic fields Q(ζ_m).

mod cyclo;
mod rational;

pub use cyclo::{cyclotomic_polynomial, is_rational, zeta_pow, CycloNumber};
pub use rational::Rational;
