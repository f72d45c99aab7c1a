//! The tensor decomposition of a join and the join identity for q.

use hodge_join::cycles::{
    binary_form_from_roots, cycle_hilbert, fake_point_poly, join_hypersurface, join_poly, point_poly,
    verify_tensor_decomposition,
};
use hodge_join::field::{zeta_pow, Rational};
use hodge_join::jacobian::HypersurfaceSpec;
use hodge_join::qform::{qff_join_check, JoinQffInput};
use hodge_join::text::parse_polynomial;

fn main() -> hodge_join::Result<()> {
    let f = HypersurfaceSpec::fermat(3, 2);
    let roots: Vec<Rational> = ["0", "1", "-1"].iter().map(|s| s.parse().unwrap()).collect();
    let g = HypersurfaceSpec::new(binary_form_from_roots(&roots))?;
    let z1 = point_poly(&f, &zeta_pow(6, 1))?;
    let z2 = fake_point_poly(&g, &Rational::from_integer(2))?;

    let joined = join_hypersurface(&f, &g)?;
    let z = join_poly(&z1, &z2)?;
    println!("F = {}", joined.f());
    println!("delta = {}", z.poly);
    println!("HF = {}", cycle_hilbert(&joined, &z.poly)?);
    println!("tensor decomposition: {}", verify_tensor_decomposition(&f, &g, &z1.poly, &z2.poly, None)?);

    let p = |s: &str, n| parse_polynomial(s, Some(n)).unwrap();
    let input = JoinQffInput {
        g1: p("x0 - z(6)*x1", 2),
        h1: p("x0 - z(6)*x1", 2),
        g2: p("x0 - 2*x1", 2),
        h2: p("x0 - 2*x1", 2),
        a1: p("x3", 4),
        a2: p("x1 + x2", 4),
        b1: p("x0", 4),
        b2: p("x3 - x0", 4),
    };
    let check = qff_join_check(&f, &g, &z1.poly, &z2.poly, &input)?;
    println!("join identity holds: {}, lhs class {:?}", check.holds, check.lhs.class_coords);
    Ok(())
}
