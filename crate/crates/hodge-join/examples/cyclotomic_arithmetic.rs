//! Exact arithmetic in cyclotomic fields, mixing conductors.

use hodge_join::field::{cyclotomic_polynomial, zeta_pow, CycloNumber, Rational};
use hodge_join::text::parse_number;

fn main() -> hodge_join::Result<()> {
    println!("Phi_12 coefficients: {:?}", cyclotomic_polynomial(12));

    let z6 = zeta_pow(6, 1);
    let z4 = zeta_pow(4, 1);
    // ζ6 lives in Q(ζ12) together with i = ζ4
    let s = &z6 + &z4;
    println!("z(6) + z(4) = {s}  (conductor {})", s.conductor());

    let inv = s.inverse()?;
    println!("1 / (z(6) + z(4)) = {inv}");
    assert!((&s * &inv).is_one());

    // ζ6 is a root of x^2 - x + 1
    let check = &(&(&z6 * &z6) - &z6) + &CycloNumber::one();
    assert!(check.is_zero());

    let half = CycloNumber::from_rational(Rational::new(1, 2));
    let parsed = parse_number("1/2*z(8)^3 - 2")?;
    println!("parsed: {parsed}, times 1/2: {}", &parsed * &half);
    println!("z(8)^4 = {}", zeta_pow(8, 4));
    Ok(())
}
