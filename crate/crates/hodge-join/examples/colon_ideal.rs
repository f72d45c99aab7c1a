//! The colon ideal (J^F : P) of a point on the Fermat binary form.

use hodge_join::cycles::point_poly;
use hodge_join::field::zeta_pow;
use hodge_join::jacobian::{colon_contains, colon_piece, membership, HypersurfaceSpec};
use hodge_join::text::parse_polynomial;

fn main() -> hodge_join::Result<()> {
    let d = 4;
    let f = HypersurfaceSpec::fermat(d, 2);
    let p = point_poly(&f, &zeta_pow(2 * d, 1))?;
    println!("F = {}", f.f());
    println!("P = {}", p.poly);

    for e in 0..=f.cycle_degree() + 1 {
        let piece = colon_piece(&f, &p.poly, e)?;
        println!("degree {e}: dim (J:P)_e = {}, basis {:?}", piece.rank(), piece.basis_polynomials());
    }

    let line = parse_polynomial("x0 - z(8)*x1", Some(2))?;
    println!("x0 - z(8) x1 in (J:P): {}", colon_contains(&f, &p.poly, &line)?);
    let cube = parse_polynomial("x1^3", Some(2))?;
    println!("x1^3 in J + <x0 - z(8) x1>: {}", membership(&f, &[line], &cube)?);
    Ok(())
}
