//! The quadratic fundamental form q(G, H) and the fake point constant.

use hodge_join::cycles::{binary_form_from_roots, fake_point_poly, point_poly};
use hodge_join::field::{zeta_pow, CycloNumber, Rational};
use hodge_join::jacobian::HypersurfaceSpec;
use hodge_join::qform::{koszul_decompose, qff_pair, qff_vanishes_on_degree, QffContext};
use hodge_join::text::parse_polynomial;

fn main() -> hodge_join::Result<()> {
    // honest point: q vanishes on the colon ideal
    let f = HypersurfaceSpec::fermat(4, 2);
    let p = point_poly(&f, &zeta_pow(8, 1))?.poly;
    for e in 1..=3 {
        let v = qff_vanishes_on_degree(&f, &p, e)?;
        println!("fermat quartic point, degree {e}: {} pairs, vanishes = {}", v.pairs_checked, v.vanishes);
    }

    // Koszul decomposition G P = Σ Q_i ∂F/∂x_i
    let g = parse_polynomial("x0 - z(8)*x1", Some(2))?;
    let gp = g.checked_mul(&p)?;
    let dec = koszul_decompose(&f, &gp)?;
    println!("G P = Σ Q_i F_i with Q = {:?}", dec.components);

    // fake point: q(x - c y, x - c y) is the nonzero constant -d F(c, 1)
    let roots: Vec<Rational> = ["0", "1", "1/2", "1/4", "1/3", "2/5"].iter().map(|s| s.parse().unwrap()).collect();
    let fb = HypersurfaceSpec::new(binary_form_from_roots(&roots))?;
    let c: Rational = "-1".parse().unwrap();
    let fake = fake_point_poly(&fb, &c)?.poly;
    let ell = parse_polynomial("x0 + x1", Some(2))?;
    let q = qff_pair(&fb, &fake, &ell, &ell)?;
    let value = fb.f().evaluate(&[CycloNumber::from_rational(c), CycloNumber::one()])?;
    println!("q(l, l) = {:?}, F(c, 1) = {value}", q.class_coords);

    let ctx = QffContext::new(&fb, &fake)?;
    let sym = ctx.evaluate(&ell, &ell)?;
    println!("degree {} class zero: {}", sym.degree, sym.is_zero);
    Ok(())
}
