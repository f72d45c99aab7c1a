use hodge_join::cycles::{cycle_hilbert, hf_convolution, linear_cycle_poly, HilbertFn};
use hodge_join::field::{zeta_pow, CycloNumber, Rational};
use hodge_join::fixtures::{random_factor, random_join, random_join_qff_case};
use hodge_join::jacobian::{colon_piece, is_artinian_gorenstein, HypersurfaceSpec};
use hodge_join::poly::{monomial_basis, Polynomial};
use hodge_join::qform::{qff_join_check, QffContext};
use hodge_join::text::{parse_number, parse_polynomial};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_form(rng: &mut StdRng, spec: &HypersurfaceSpec, degree: u32) -> Polynomial {
    let basis = monomial_basis(spec.nvars(), degree, spec.order());
    let mut p = Polynomial::zero(spec.nvars());
    for _ in 0..3 {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p = &p + &Polynomial::term(m, CycloNumber::from_integer(rng.gen_range(-3..=3i64)));
    }
    p
}

fn random_colon_element(rng: &mut StdRng, spec: &HypersurfaceSpec, p: &Polynomial, e: u32) -> Polynomial {
    let mut out = Polynomial::zero(spec.nvars());
    for b in colon_piece(spec, p, e).unwrap().basis_polynomials() {
        out = &out + &b.scale(&CycloNumber::from_integer(rng.gen_range(-2..=2i64)));
    }
    out
}

/// A small cycle with d ∈ {3, 4} on two or four variables.
fn qff_setting(seed: u64) -> (StdRng, HypersurfaceSpec, Polynomial) {
    let mut rng = StdRng::seed_from_u64(seed);
    let d = if rng.gen_bool(0.5) { 3 } else { 4 };
    if rng.gen_bool(0.5) {
        let f = random_factor(&mut rng, d, 1).unwrap();
        (rng, f.spec, f.cycle.poly)
    } else {
        let join = random_join(&mut rng, &[d], 2).unwrap();
        let (spec, cycle) = join.assemble().unwrap();
        (rng, spec, cycle.poly)
    }
}

fn qff_degree(rng: &mut StdRng, spec: &HypersurfaceSpec) -> u32 {
    let sigma = spec.cycle_degree();
    rng.gen_range(1..=sigma + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn join_hilbert_is_convolution(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let join = random_join(&mut rng, &[3, 4, 6], 6).unwrap();
        let (spec, cycle) = join.assemble().unwrap();
        let mut expected = HilbertFn::new(vec![1]);
        for f in &join.factors {
            expected = hf_convolution(&expected, &cycle_hilbert(&f.spec, &f.cycle.poly).unwrap());
        }
        let got = cycle_hilbert(&spec, &cycle.poly).unwrap();
        prop_assert_eq!(&got, &expected, "{}", join.describe());
        prop_assert!(got.is_symmetric());
        prop_assert_eq!(got.socle_degree() as u32, spec.cycle_degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn qff_symmetric(seed in any::<u64>()) {
        let (mut rng, spec, p) = qff_setting(seed);
        let e = qff_degree(&mut rng, &spec);
        let g = random_colon_element(&mut rng, &spec, &p, e);
        let h = random_colon_element(&mut rng, &spec, &p, e);
        let ctx = QffContext::new(&spec, &p).unwrap();
        prop_assert_eq!(ctx.evaluate(&g, &h).unwrap().class_coords, ctx.evaluate(&h, &g).unwrap().class_coords);
    }

    #[test]
    fn qff_bilinear(seed in any::<u64>(), num in -9i64..9, den in 1i64..9) {
        let (mut rng, spec, p) = qff_setting(seed);
        let e = qff_degree(&mut rng, &spec);
        let g = random_colon_element(&mut rng, &spec, &p, e);
        let k = random_colon_element(&mut rng, &spec, &p, e);
        let h = random_colon_element(&mut rng, &spec, &p, e);
        let lambda = CycloNumber::from_rational(Rational::new(num, den));
        let ctx = QffContext::new(&spec, &p).unwrap();
        let combo = &g + &k.scale(&lambda);
        let lhs = ctx.evaluate(&combo, &h).unwrap().representative;
        let rhs = &ctx.evaluate(&g, &h).unwrap().representative
            + &ctx.evaluate(&k, &h).unwrap().representative.scale(&lambda);
        prop_assert!(ctx.class_of(&(&lhs - &rhs)).is_empty());
    }

    #[test]
    fn qff_decomposition_independent(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let (mut rng, spec, p) = qff_setting(seed);
        let n = spec.nvars();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let d = spec.d();
        let sigma = spec.cycle_degree();
        let low = (2 * (d - 1)).saturating_sub(sigma).max(1);
        let e = rng.gen_range(low..=low.max(sigma + 1));
        let g = random_colon_element(&mut rng, &spec, &p, e);
        let h = random_colon_element(&mut rng, &spec, &p, e);
        let ctx = QffContext::new(&spec, &p).unwrap();
        let base = ctx.decompose(&g).unwrap();
        let t = random_form(&mut rng, &spec, e + sigma - 2 * (d - 1));
        let mut alt = base.clone();
        alt.components[i] = &alt.components[i] + &(&spec.partials()[j] * &t);
        alt.components[j] = &alt.components[j] - &(&spec.partials()[i] * &t);
        prop_assert_eq!(alt.expand(&spec), base.expand(&spec));
        let rh = ctx.decompose(&h).unwrap();
        let a = ctx.evaluate_with(&g, &h, &base, &rh).unwrap();
        let b = ctx.evaluate_with(&g, &h, &alt, &rh).unwrap();
        prop_assert_eq!(a.class_coords, b.class_coords);
    }

    #[test]
    fn qff_jacobian_annihilates(seed in any::<u64>(), i in 0usize..4) {
        let (mut rng, spec, p) = qff_setting(seed);
        let i = i % spec.nvars();
        let d = spec.d();
        let sigma = spec.cycle_degree();
        let extra = rng.gen_range(0..=1u32);
        let a = random_form(&mut rng, &spec, extra);
        let jac = &spec.partials()[i] * &a;
        let e = d - 1 + extra;
        let h = random_colon_element(&mut rng, &spec, &p, e.min(sigma + 1).max(1));
        let ctx = QffContext::new(&spec, &p).unwrap();
        prop_assert!(ctx.evaluate(&jac, &h).unwrap().is_zero);
    }

    #[test]
    fn qff_join_identity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = if rng.gen_bool(0.5) { 3 } else { 4 };
        let case = random_join_qff_case(&mut rng, d).unwrap();
        let check = qff_join_check(&case.f, &case.g, &case.p1, &case.p2, &case.input).unwrap();
        prop_assert!(check.holds, "{:?}", case.kinds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in prop::collection::vec(-5i64..5, 4), b in prop::collection::vec(-5i64..5, 4), m in prop::sample::select(vec![3u32, 4, 5, 6, 8, 12])) {
        let build = |c: &[i64]| c.iter().enumerate().fold(CycloNumber::zero(), |acc, (k, &v)| {
            &acc + &(&zeta_pow(m, k as i64) * &CycloNumber::from_integer(v))
        });
        let (x, y) = (build(&a), build(&b));
        let z6 = zeta_pow(6, 1);
        prop_assert_eq!(&(&x + &y) * &z6, &(&x * &z6) + &(&y * &z6));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
        prop_assert_eq!(parse_number(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn polynomial_text_round_trip(terms in prop::collection::vec((0u16..4, 0u16..4, -7i64..7, 1i64..5, 0i64..6), 1..6)) {
        let mut p = Polynomial::zero(3);
        for (a, b, num, den, k) in terms {
            let e = hodge_join::poly::Monomial::new(vec![a, b, 6 - a - b]);
            let c = &CycloNumber::from_rational(Rational::new(num, den)) * &zeta_pow(12, k);
            p = &p + &Polynomial::term(e, c);
        }
        prop_assert_eq!(parse_polynomial(&p.to_string(), Some(3)).unwrap(), p);
    }
}

#[test]
fn linear_cycles_have_linear_hilbert_function() {
    for d in 3..=5u32 {
        for n in [2usize, 4] {
            if d == 5 && n == 4 {
                continue;
            }
            let c: Vec<CycloNumber> = (0..n / 2 + 1).map(|k| zeta_pow(2 * d, 2 * k as i64 + 1)).collect();
            let spec = HypersurfaceSpec::fermat(d, n + 2);
            let p = linear_cycle_poly(d, n, &c).unwrap().poly;
            assert_eq!(cycle_hilbert(&spec, &p).unwrap(), HilbertFn::linear(d, n));
            assert!(is_artinian_gorenstein(&spec, &p).unwrap().passed);
        }
    }
}
