//! Hilbert functions of R^{F,P}, Gorenstein certificates and the join convolution.

use hodge_join::cycles::{cycle_hilbert, hf_convolution, join_hypersurface, join_poly, point_poly, HilbertFn};
use hodge_join::field::zeta_pow;
use hodge_join::jacobian::{is_artinian_gorenstein, HypersurfaceSpec};

fn main() -> hodge_join::Result<()> {
    let f = HypersurfaceSpec::fermat(3, 2);
    let g = HypersurfaceSpec::fermat(3, 4);
    let z1 = point_poly(&f, &zeta_pow(6, 1))?;
    let z2 = join_poly(&point_poly(&f, &zeta_pow(6, 3))?, &point_poly(&f, &zeta_pow(6, 5))?)?;

    let h1 = cycle_hilbert(&f, &z1.poly)?;
    let h2 = cycle_hilbert(&g, &z2.poly)?;
    println!("HF point = {h1}, HF line = {h2}");

    let joined = join_hypersurface(&f, &g)?;
    let z = join_poly(&z1, &z2)?;
    let h = cycle_hilbert(&joined, &z.poly)?;
    println!("HF join = {h}, convolution = {}", hf_convolution(&h1, &h2));
    assert_eq!(h, hf_convolution(&h1, &h2));
    assert_eq!(h, HilbertFn::linear(3, 4));

    let cert = is_artinian_gorenstein(&joined, &z.poly)?;
    println!("gorenstein: passed={} socle={} hilbert={:?}", cert.passed, cert.socle_degree, cert.hilbert);
    Ok(())
}
