//! Fake point cycles on a binary form with rational roots, and their classification.

use hodge_join::cycles::{
    binary_form_from_roots, cycle_hilbert, express_in_point_basis, fake_point_parameters, fake_point_poly,
    is_fake_linear,
};
use hodge_join::field::Rational;
use hodge_join::jacobian::HypersurfaceSpec;

fn main() -> hodge_join::Result<()> {
    let roots: Vec<Rational> = ["0", "1", "1/2", "1/4", "1/3", "2/5"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let f = HypersurfaceSpec::new(binary_form_from_roots(&roots))?;
    println!("F = {}", f.f());

    for c in ["-1", "2", "3/2"] {
        let c: Rational = c.parse().unwrap();
        let (a, b) = fake_point_parameters(&f, &c)?;
        let p = fake_point_poly(&f, &c)?;
        let coeffs = express_in_point_basis(&p.poly, &roots)?;
        let hf = cycle_hilbert(&f, &p.poly)?;
        let verdict = is_fake_linear(&f, &p.poly)?;
        println!("c = {c}: a = {a}, b = {b}");
        println!("  P = {}", p.poly);
        println!("  point-basis coefficients {coeffs:?}");
        println!("  HF {hf}, {:?}", verdict.verdict);
    }

    match fake_point_poly(&f, &"1/2".parse().unwrap()) {
        Err(e) => println!("c = 1/2: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
