//! Combinations of two linear cycles: listed generators, Hilbert function and the determinant witness.

use hodge_join::cycles::cycle_hilbert;
use hodge_join::field::{CycloNumber, Rational};
use hodge_join::fixtures::{two_block_cubic_generators, two_cycle};
use hodge_join::jacobian::colon_contains;
use hodge_join::qform::theorem4_witness;

fn main() -> hodge_join::Result<()> {
    let (r, rc) = (Rational::from_integer(1), Rational::from_integer(2));
    let (f, z) = two_cycle(3, &[3, 5], &r, &rc)?;
    println!("P = {}", z.poly);
    println!("HF = {}", cycle_hilbert(&f, &z.poly)?);
    let gens = two_block_cubic_generators(&[3, 5], &CycloNumber::from_integer(1), &CycloNumber::from_integer(2));
    for g in &gens {
        println!("  {g}: member = {}", colon_contains(&f, &z.poly, g)?);
    }

    for (r, rc) in [(1, 2), (2, 2)] {
        let w = theorem4_witness(5, 3, &Rational::from_integer(r), &Rational::from_integer(rc))?;
        println!("d = 5, alpha0 = 3, r = {r}, rc = {rc}: det = {:?}", w.det);
        println!("  printed formula sign {:?}, exponent-5 formula sign {:?}", w.printed_sign, w.corrected_sign);
    }
    Ok(())
}
