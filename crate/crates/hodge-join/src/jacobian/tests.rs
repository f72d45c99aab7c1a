use super::*;
use crate::field::zeta_pow;
use crate::text::parse_polynomial;

fn p(s: &str, n: usize) -> Polynomial {
    parse_polynomial(s, Some(n)).unwrap()
}

/// Coefficient of t^e in ((1 − t^{d−1})/(1 − t))^n.
fn fermat_hf_oracle(d: u32, n: usize, e: u32) -> usize {
    let mut poly = vec![1usize];
    for _ in 0..n {
        let mut next = vec![0usize; poly.len() + d as usize - 2];
        for (i, a) in poly.iter().enumerate() {
            for j in 0..(d as usize - 1) {
                next[i + j] += a;
            }
        }
        poly = next;
    }
    poly.get(e as usize).copied().unwrap_or(0)
}

#[test]
fn ideal_piece_examples() {
    let spec = HypersurfaceSpec::fermat(3, 2);
    let j = ideal_piece(spec.partials(), &spec, 2);
    assert_eq!((j.rank(), j.ambient_dim()), (2, 3));
    assert_eq!(j.basis_polynomials(), vec![p("x0^2", 2), p("x1^2", 2)]);
    assert_eq!(ideal_piece(&[Polynomial::one(2)], &spec, 3).rank(), 4);
    assert_eq!(ideal_piece(&[], &spec, 3).rank(), 0);
}

#[test]
fn smoothness() {
    assert!(smoothness_check(&HypersurfaceSpec::fermat(3, 4)));
    let cusp = HypersurfaceSpec::uncertified(p("x0^3", 2), MonomialOrder::Grevlex).unwrap();
    assert!(!smoothness_check(&cusp));
    assert!(matches!(HypersurfaceSpec::new(p("x0^3", 2)), Err(Error::NotSmooth(_))));
    let binary = p(
        "x0*(x0 - x1)*(x0 - 1/2*x1)*(x0 - 1/4*x1)*(x0 - 1/3*x1)*(x0 - 2/5*x1)",
        2,
    );
    assert!(HypersurfaceSpec::new(binary).unwrap().is_smooth());
    let double = p("(x0 - x1)^2*x0", 2);
    assert!(!HypersurfaceSpec::uncertified(double, MonomialOrder::Grevlex).unwrap().is_smooth());
}

#[test]
fn fermat_quotient_dims_match_closed_form() {
    for (d, n) in [(3u32, 4usize), (4, 2), (4, 4), (5, 2)] {
        let spec = HypersurfaceSpec::fermat(d, n);
        for e in 0..=spec.jacobian_socle_degree() + 1 {
            assert_eq!(spec.jacobian_quotient_dim(e), fermat_hf_oracle(d, n, e));
        }
    }
}

#[test]
fn general_quotient_dims_match_monomial_path() {
    // same Jacobian ring dimensions as Fermat: a linear change of variables
    let f = p("(x0 + x1)^3 + (x0 - x1)^3 + x2^3 + x3^3", 4);
    let spec = HypersurfaceSpec::new(f).unwrap();
    for e in 0..=5 {
        assert_eq!(spec.jacobian_quotient_dim(e), fermat_hf_oracle(3, 4, e));
    }
}

#[test]
fn point_colon_ideal() {
    for d in 3..=6u32 {
        let spec = HypersurfaceSpec::fermat(d, 2);
        let z = zeta_pow(2 * d, 1);
        // d ζ (x0^{d-1} - (ζ x1)^{d-1})/(x0 - ζ x1)
        let terms = (0..d - 1).map(|k| {
            (
                Monomial::new(vec![(d - 2 - k) as u16, k as u16]),
                &z.pow(k as i64).unwrap() * &z,
            )
        });
        let pz = Polynomial::from_terms(2, terms).unwrap();
        let line = colon_piece(&spec, &pz, 1).unwrap();
        let expect = GradedSubspace::span(
            2,
            1,
            MonomialOrder::Grevlex,
            &[&Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale(&z)],
        );
        assert_eq!(line, expect);
        assert_eq!(hilbert_function(&spec, &pz).unwrap(), vec![1; d as usize - 1].into_iter().chain([0]).collect::<Vec<_>>());
    }
}

#[test]
fn unit_cycle_is_jacobian() {
    let spec = HypersurfaceSpec::fermat(3, 4);
    let one = Polynomial::one(4);
    for e in 0..4 {
        assert_eq!(
            colon_piece(&spec, &one, e).unwrap(),
            ideal_piece(spec.partials(), &spec, e)
        );
    }
    let cert = is_artinian_gorenstein(&spec, &one).unwrap();
    assert!(cert.passed);
    assert_eq!(cert.socle_degree, 4);
}

#[test]
fn hessian_examples() {
    let spec = HypersurfaceSpec::fermat(4, 2);
    assert_eq!(hessian_det(&spec), p("144*x0^2*x1^2", 2));
    let quad = HypersurfaceSpec::new(p("x0^2 + x0*x1 + x1^2", 2)).unwrap();
    assert_eq!(hessian_det(&quad), p("3", 2));
    let f = p("x0^3 - x0*x1^2 + 2*x1^3", 2);
    let g = p("x0^3 + x1^3", 2);
    let joined = &f.rename_variables(0, 4).unwrap() + &g.rename_variables(2, 4).unwrap();
    let hf = hessian_det(&HypersurfaceSpec::new(f).unwrap());
    let hg = hessian_det(&HypersurfaceSpec::new(g).unwrap());
    let hj = hessian_det(&HypersurfaceSpec::new(joined.clone()).unwrap());
    assert_eq!(hj, &hf.rename_variables(0, 4).unwrap() * &hg.rename_variables(2, 4).unwrap());
    let spec = HypersurfaceSpec::new(joined).unwrap();
    let cert = is_artinian_gorenstein(&spec, &hj).unwrap();
    assert!(cert.passed);
    assert_eq!(cert.hilbert, vec![1, 0]);
}

#[test]
fn zero_class_rejected() {
    let spec = HypersurfaceSpec::fermat(3, 2);
    assert_eq!(colon_piece(&spec, &p("x0^2", 2), 1).err(), Some(Error::ZeroClass));
}

#[test]
fn membership_examples() {
    let spec = HypersurfaceSpec::fermat(4, 2);
    let gens = [p("x0^3", 2)];
    assert!(!membership(&spec, &gens, &p("x0^2", 2)).unwrap());
    assert!(membership(&spec, &gens, &Polynomial::zero(2)).unwrap());
    assert!(membership(&spec, &gens, &p("x0^3*x1 + x1^4", 2)).unwrap());
}

#[test]
fn equality_of_point_classes() {
    let f = p("x0*(x0 - x1)*(x0 - 1/2*x1)", 2);
    let spec = HypersurfaceSpec::new(f.clone()).unwrap();
    let f0 = f.partial_derivative(0);
    let f1 = f.partial_derivative(1);
    let point = |r: i64, s: i64| {
        let r = CycloNumber::from_rational(Rational::new(r, s));
        let num = &f0.scale(&r) + &f1;
        let den = &Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale(&r);
        num.divide_exact(&den, MonomialOrder::Grevlex).unwrap()
    };
    let p0 = point(0, 1);
    let p1 = point(1, 1);
    assert!(ideal_equal(&spec, &p0, &p0.scale_rational(&Rational::new(-3, 7))).unwrap());
    assert!(!ideal_equal(&spec, &p0, &p1).unwrap());
}
