use super::*;
use crate::cycles::{binary_form_from_roots, join_poly, linear_cycle_poly};
use crate::text::parse_polynomial;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn poly(s: &str, nvars: usize) -> Polynomial {
    parse_polynomial(s, Some(nvars)).unwrap()
}

fn worked_example() -> HypersurfaceSpec {
    let roots = [q(0, 1), q(1, 1), q(1, 2), q(1, 4), q(1, 3), q(2, 5)];
    HypersurfaceSpec::new(binary_form_from_roots(&roots)).unwrap()
}

fn point_line(d: u32, k: i64) -> Polynomial {
    &Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale(&zeta_pow(2 * d, k))
}

#[test]
fn koszul_fermat_monomial() {
    for d in 3..=5 {
        let spec = HypersurfaceSpec::fermat(d, 4);
        let mut e = vec![0u16; 4];
        e[0] = d as u16 - 1;
        e[1] = 1;
        let a = Polynomial::term(Monomial::new(e), CycloNumber::one());
        let k = koszul_decompose(&spec, &a).unwrap();
        let expected = Polynomial::var(4, 1).scale_rational(&q(1, d as i64));
        assert_eq!(k.components[0], expected);
        assert!(k.components[1..].iter().all(Polynomial::is_zero));
        assert_eq!(k.expand(&spec), a);
    }
}

#[test]
fn koszul_zero_and_non_member() {
    let spec = HypersurfaceSpec::fermat(3, 2);
    let k = koszul_decompose(&spec, &Polynomial::zero(2)).unwrap();
    assert!(k.components.iter().all(Polynomial::is_zero));
    assert_eq!(koszul_decompose(&spec, &poly("x0*x1", 2)), Err(Error::NotInIdeal));
}

#[test]
fn koszul_of_colon_product() {
    let spec = HypersurfaceSpec::fermat(3, 4);
    let z = zeta_pow(6, 1);
    let p = linear_cycle_poly(3, 2, &[z.clone(), z.clone()]).unwrap().poly;
    let g = &poly("x0^2", 4) - &poly("x0*x1", 4).scale(&z);
    let gp = &g * &p;
    let k = koszul_decompose(&spec, &gp).unwrap();
    assert_eq!(k.expand(&spec), gp);
}

#[test]
fn point_cycle_form_vanishes() {
    for d in 3..=6 {
        let spec = HypersurfaceSpec::fermat(d, 2);
        let p = point_poly(&spec, &zeta_pow(2 * d, 1)).unwrap().poly;
        let g = point_line(d, 1);
        let v = qff_pair(&spec, &p, &g, &g).unwrap();
        assert!(v.is_zero);
        assert_eq!(v.degree, 0);
    }
}

#[test]
fn jacobian_annihilates() {
    let spec = HypersurfaceSpec::fermat(3, 4);
    let z = zeta_pow(6, 1);
    let p = linear_cycle_poly(3, 2, &[z.clone(), z.pow(3).unwrap()]).unwrap().poly;
    let colon = Colon::new(&spec, &p).unwrap();
    let g = colon.piece(2).basis_polynomials().pop().unwrap();
    let h = spec.partials()[2].mul_monomial(&Monomial::var(4, 1), &CycloNumber::one());
    assert!(qff_pair(&spec, &p, &g, &h).unwrap().is_zero);
}

#[test]
fn not_in_colon() {
    let spec = HypersurfaceSpec::fermat(3, 2);
    let p = point_poly(&spec, &zeta_pow(6, 1)).unwrap().poly;
    let g = Polynomial::var(2, 0);
    assert_eq!(qff_pair(&spec, &p, &g, &g), Err(Error::NotInColonIdeal));
}

#[test]
fn fake_point_constant_is_minus_d_f() {
    // G·P = a F0 − b F1 gives Q = (a, −b) and q = −(a + b c) = −d F(c, 1) by Euler
    let spec = worked_example();
    let p = fake_point_poly(&spec, &q(-1, 1)).unwrap().poly;
    let g = poly("x0 + x1", 2);
    let v = qff_pair(&spec, &p, &g, &g).unwrap();
    assert_eq!(v.class_coords.len(), 1);
    assert_eq!(v.class_coords[0].1, CycloNumber::from_integer(-42));
    assert_eq!(v.representative, Polynomial::constant(2, CycloNumber::from_integer(-42)));
}

#[test]
fn symmetry_and_bilinearity() {
    let spec = worked_example();
    let p = fake_point_poly(&spec, &q(3, 1)).unwrap().poly;
    let colon = Colon::new(&spec, &p).unwrap();
    let basis = colon.piece(2).basis_polynomials();
    let ctx = QffContext::new(&spec, &p).unwrap();
    let c = CycloNumber::from_rational(q(-5, 7));
    for g in &basis {
        for h in &basis {
            let gh = ctx.evaluate(g, h).unwrap();
            let hg = ctx.evaluate(h, g).unwrap();
            assert_eq!(gh.class_coords, hg.class_coords);
            let scaled = ctx.evaluate(&g.scale(&c), h).unwrap();
            let expected: Vec<_> = gh.class_coords.iter().map(|(m, v)| (m.clone(), v * &c)).collect();
            assert_eq!(scaled.class_coords, expected);
        }
    }
}

#[test]
fn decomposition_independence() {
    let spec = HypersurfaceSpec::fermat(3, 4);
    let z = zeta_pow(6, 1);
    let p = linear_cycle_poly(3, 2, &[z.clone(), z.pow(3).unwrap()]).unwrap().poly;
    let ctx = QffContext::new(&spec, &p).unwrap();
    let basis: Vec<Polynomial> = Colon::new(&spec, &p).unwrap().piece(3).basis_polynomials()
        .into_iter()
        .step_by(5)
        .collect();
    let t = poly("3*x1 - x3", 4);
    for g in &basis {
        let base = ctx.decompose(g).unwrap();
        // add the Koszul syzygy t·(F2 e0 − F0 e2)
        let mut alt = base.clone();
        alt.components[0] = alt.components[0].checked_add(&(&spec.partials()[2] * &t)).unwrap();
        alt.components[2] = alt.components[2].checked_sub(&(&spec.partials()[0] * &t)).unwrap();
        assert_ne!(alt, base);
        assert_eq!(alt.expand(&spec), base.expand(&spec));
        for h in &basis {
            let rh = ctx.decompose(h).unwrap();
            let a = ctx.evaluate_with(g, h, &base, &rh).unwrap();
            let b = ctx.evaluate_with(g, h, &alt, &rh).unwrap();
            assert_eq!(a.class_coords, b.class_coords);
        }
    }
}

#[test]
fn vanishing_on_linear_cycle() {
    let spec = HypersurfaceSpec::fermat(3, 4);
    let z = zeta_pow(6, 1);
    let p = linear_cycle_poly(3, 2, &[z.clone(), z]).unwrap().poly;
    for e in 1..=3 {
        let v = qff_vanishes_on_degree(&spec, &p, e).unwrap();
        assert!(v.vanishes, "degree {e}");
        assert_eq!(v.pairs_checked, v.basis_size * (v.basis_size + 1) / 2);
    }
}

#[test]
fn nonvanishing_two_point_combination() {
    let r = theorem4_witness(4, 3, &q(1, 1), &q(2, 1)).unwrap();
    let spec = HypersurfaceSpec::fermat(4, 2);
    let v = qff_vanishes_on_degree(&spec, r.cycle.as_ref().unwrap(), 2).unwrap();
    assert!(!v.vanishes);
    assert!(v.witness.is_some());
}

#[test]
fn theorem4_determinant() {
    let r = theorem4_witness(4, 3, &q(1, 1), &q(2, 1)).unwrap();
    assert_eq!(r.status, WitnessStatus::Computed);
    assert_eq!(r.corrected_sign, Some(1));
    assert_eq!(r.printed_sign, None);
    assert_eq!(r.printed_g_in_colon, Some(false));
    assert!(r.nonzero && r.verdict_consistent);
    let same = theorem4_witness(5, 7, &q(3, 1), &q(3, 1)).unwrap();
    assert!(!same.nonzero && same.verdict_consistent);
    assert_eq!(same.det, Some(CycloNumber::zero()));
}

#[test]
fn theorem4_degenerate_and_domain() {
    let r = theorem4_witness(3, 3, &q(1, 1), &q(2, 1)).unwrap();
    assert_eq!(r.status, WitnessStatus::Degenerate);
    assert!(theorem4_witness(4, 4, &q(1, 1), &q(2, 1)).is_err());
    assert!(theorem4_witness(4, 3, &q(0, 1), &q(2, 1)).is_err());
}

#[test]
fn join_identity_with_vanishing_factors() {
    let f = HypersurfaceSpec::fermat(3, 2);
    let p1 = point_poly(&f, &zeta_pow(6, 1)).unwrap().poly;
    let p2 = point_poly(&f, &zeta_pow(6, 3)).unwrap().poly;
    let input = JoinQffInput {
        g1: point_line(3, 1),
        h1: point_line(3, 1),
        g2: point_line(3, 3),
        h2: point_line(3, 3),
        a1: poly("x2 + x0", 4),
        a2: poly("2*x1", 4),
        b1: poly("x3", 4),
        b2: poly("x0 - x2", 4),
    };
    let check = qff_join_check(&f, &f, &p1, &p2, &input).unwrap();
    assert!(check.holds);
    assert!(check.lhs.is_zero);
}

#[test]
fn join_identity_with_fake_factor() {
    let f = HypersurfaceSpec::fermat(3, 2);
    let roots = [q(0, 1), q(1, 1), q(-1, 1)];
    let g = HypersurfaceSpec::new(binary_form_from_roots(&roots)).unwrap();
    let p1 = point_poly(&f, &zeta_pow(6, 1)).unwrap().poly;
    let p2 = fake_point_poly(&g, &q(2, 1)).unwrap().poly;
    let ell = poly("x0 - 2*x1", 2);
    let input = JoinQffInput {
        g1: point_line(3, 1),
        h1: point_line(3, 1),
        g2: ell.clone(),
        h2: ell,
        a1: poly("x3", 4),
        a2: poly("x2 + x1", 4),
        b1: poly("x0", 4),
        b2: poly("x3 - x0", 4),
    };
    let check = qff_join_check(&f, &g, &p1, &p2, &input).unwrap();
    assert!(check.holds);
    assert!(!check.rhs_class.is_empty());
    assert_eq!(check.lhs.class_coords, check.rhs_class);
}

#[test]
fn restriction_obligations_detect_nonvanishing() {
    let r = theorem4_witness(4, 3, &q(1, 1), &q(2, 1)).unwrap();
    let f = HypersurfaceSpec::fermat(4, 2);
    let obligations = join_restriction_obligations(&f, r.cycle.as_ref().unwrap(), 4, 4).unwrap();
    let o = obligations.iter().find(|o| o.l == 2 && o.j == 0).unwrap();
    assert!(!o.holds);
    assert!(obligations.iter().filter(|o| o.l <= 1).all(|o| o.holds));
}

#[test]
fn theorem6_fake_factor() {
    let fermat = HypersurfaceSpec::fermat(6, 2);
    let report = theorem6_check(
        &[worked_example(), fermat.clone()],
        &[CycloNumber::from_integer(-1), zeta_pow(12, 1)],
    )
    .unwrap();
    assert_eq!(report.verdict, Theorem6Verdict::NotSmoothCertified);
    let cert = &report.factors[0];
    assert!(cert.fake);
    assert_eq!(cert.stated_constant, CycloNumber::from_integer(42));
    assert_eq!(cert.computed_constant, Some(CycloNumber::from_integer(-42)));
    assert_eq!(cert.matches_stated, Some(false));
    assert!(cert.quotient_dim.unwrap() > 0);
    assert_eq!(report.join_type, Some(LinearType::FakeLinear));

    let honest = theorem6_check(&[worked_example(), fermat], &[CycloNumber::zero(), zeta_pow(12, 1)]).unwrap();
    assert_eq!(honest.verdict, Theorem6Verdict::SmoothExpected);
    assert_eq!(honest.join_type, Some(LinearType::Linear));
}

#[test]
fn theorem6_degenerate_and_outside() {
    let f2 = HypersurfaceSpec::new(poly("x0^2 - x1^2", 2)).unwrap();
    let r = theorem6_check(&[f2.clone(), f2], &[CycloNumber::from_integer(2), CycloNumber::one()]).unwrap();
    assert_eq!(r.verdict, Theorem6Verdict::Degenerate);
    let roots = [q(0, 1), q(1, 1), q(-1, 1)];
    let g = HypersurfaceSpec::new(binary_form_from_roots(&roots)).unwrap();
    let r = theorem6_check(&[g.clone(), g], &[CycloNumber::from_integer(2), CycloNumber::one()]).unwrap();
    assert_eq!(r.verdict, Theorem6Verdict::OutsideHypothesis);
}

#[test]
fn join_of_points_qff_vanishes_in_degree_d() {
    let f = HypersurfaceSpec::fermat(3, 2);
    let p = point_poly(&f, &zeta_pow(6, 1)).unwrap();
    let joined = join_poly(&p, &p).unwrap();
    let spec = join_hypersurface(&f, &f).unwrap();
    let v = qff_vanishes_on_degree(&spec, &joined.poly, 3).unwrap();
    assert!(v.vanishes);
}
