use std::process::ExitCode;
use std::time::{Duration, Instant};

use hodge_join::field::{CycloNumber, Rational};
use hodge_join::fixtures::{fixture_cycles, random_factor, random_join, verify_fixture, FixtureReport};
use hodge_join::jacobian::{colon_piece, is_artinian_gorenstein, HypersurfaceSpec};
use hodge_join::poly::{monomial_basis, Polynomial};
use hodge_join::qform::QffContext;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn fixtures(ids: &[&str]) -> Outcome {
    let mut notes = Vec::new();
    for id in ids {
        let report: FixtureReport = verify_fixture(id).map_err(|e| format!("{id}: {e}"))?;
        if !report.passed {
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            return Err(format!("{id}: failed {}", failed.join("; ")));
        }
        notes.push(format!("{id} {} checks", report.checks.len()));
    }
    Ok(notes.join(", "))
}

fn random_form(rng: &mut StdRng, spec: &HypersurfaceSpec, degree: u32) -> Polynomial {
    let basis = monomial_basis(spec.nvars(), degree, spec.order());
    let mut p = Polynomial::zero(spec.nvars());
    for _ in 0..3 {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p = &p + &Polynomial::term(m, CycloNumber::from_integer(rng.gen_range(-3..=3i64)));
    }
    p
}

fn colon_element(rng: &mut StdRng, spec: &HypersurfaceSpec, p: &Polynomial, e: u32) -> Polynomial {
    let mut out = Polynomial::zero(spec.nvars());
    for b in colon_piece(spec, p, e).unwrap().basis_polynomials() {
        out = &out + &b.scale(&CycloNumber::from_integer(rng.gen_range(-2..=2i64)));
    }
    out
}

fn qff_setting(seed: u64) -> (StdRng, HypersurfaceSpec, Polynomial) {
    let mut rng = StdRng::seed_from_u64(seed);
    let d = if seed % 2 == 0 { 3 } else { 4 };
    if seed % 4 < 2 {
        let f = random_factor(&mut rng, d, 1).unwrap();
        (rng, f.spec, f.cycle.poly)
    } else {
        let join = random_join(&mut rng, &[d], 2).unwrap();
        let (spec, cycle) = join.assemble().unwrap();
        (rng, spec, cycle.poly)
    }
}

fn qff_checks(seed: u64) -> hodge_join::Result<[bool; 4]> {
    let (mut rng, spec, p) = qff_setting(seed);
    let ctx = QffContext::new(&spec, &p)?;
    let (d, sigma, n) = (spec.d(), spec.cycle_degree(), spec.nvars());

    let e = rng.gen_range(1..=sigma + 1);
    let g = colon_element(&mut rng, &spec, &p, e);
    let k = colon_element(&mut rng, &spec, &p, e);
    let h = colon_element(&mut rng, &spec, &p, e);
    let symmetric = ctx.evaluate(&g, &h)?.class_coords == ctx.evaluate(&h, &g)?.class_coords;

    let lambda = CycloNumber::from_rational(Rational::new(rng.gen_range(-9..9i64), rng.gen_range(1..9i64)));
    let lhs = ctx.evaluate(&(&g + &k.scale(&lambda)), &h)?.representative;
    let rhs = &ctx.evaluate(&g, &h)?.representative + &ctx.evaluate(&k, &h)?.representative.scale(&lambda);
    let bilinear = ctx.class_of(&(&lhs - &rhs)).is_empty();

    let low = (2 * (d - 1)).saturating_sub(sigma).max(1);
    let e = rng.gen_range(low..=low.max(sigma + 1));
    let g = colon_element(&mut rng, &spec, &p, e);
    let h = colon_element(&mut rng, &spec, &p, e);
    let base = ctx.decompose(&g)?;
    let t = random_form(&mut rng, &spec, e + sigma - 2 * (d - 1));
    let (i, j) = (seed as usize % n, (seed as usize + 1) % n);
    let mut alt = base.clone();
    alt.components[i] = &alt.components[i] + &(&spec.partials()[j] * &t);
    alt.components[j] = &alt.components[j] - &(&spec.partials()[i] * &t);
    let rh = ctx.decompose(&h)?;
    let independent = alt.expand(&spec) == base.expand(&spec)
        && ctx.evaluate_with(&g, &h, &base, &rh)?.class_coords == ctx.evaluate_with(&g, &h, &alt, &rh)?.class_coords;

    let extra = rng.gen_range(0..=1u32);
    let jac = &spec.partials()[seed as usize % n] * &random_form(&mut rng, &spec, extra);
    let h = colon_element(&mut rng, &spec, &p, (d - 1 + extra).min(sigma + 1));
    let annihilated = ctx.evaluate(&jac, &h)?.is_zero;

    Ok([symmetric, bilinear, independent, annihilated])
}

fn qff_suite() -> Outcome {
    let join = fixtures(&["eq-6"])?;
    let names = ["symmetry", "bilinearity", "decomposition independence", "jacobian annihilation"];
    let mut total = 12;
    for seed in 0..10u64 {
        let results = qff_checks(seed).map_err(|e| format!("seed {seed}: {e}"))?;
        for (ok, name) in results.iter().zip(names) {
            if !ok {
                return Err(format!("{name} fails at seed {seed}"));
            }
        }
        total += results.len();
    }
    Ok(format!("{total} checks ({join})"))
}

fn gorenstein_suite() -> Outcome {
    let cycles = fixture_cycles().map_err(|e| e.to_string())?;
    for (label, spec, p) in &cycles {
        let cert = is_artinian_gorenstein(spec, p).map_err(|e| format!("{label}: {e}"))?;
        if !cert.passed {
            return Err(format!("{label}: {}", cert.reason.unwrap_or_default()));
        }
        if cert.socle_degree != spec.cycle_degree() {
            return Err(format!("{label}: socle {} != {}", cert.socle_degree, spec.cycle_degree()));
        }
    }
    Ok(format!("{} cycles", cycles.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "worked example point-basis coefficients", 1, Box::new(|| fixtures(&["sec7-example"]))),
        (2, "Fermat point and join colon ideals", 5, Box::new(|| fixtures(&["ex-5.1"]))),
        (3, "two-cycle generators, Hilbert functions, QFF vanishing", 30, Box::new(|| fixtures(&["prop-5.3", "prop-5.4", "prop-5.5"]))),
        (4, "two-cycle determinant formula", 20, Box::new(|| fixtures(&["thm-1.4"]))),
        (5, "join Hilbert function is the convolution", 30, Box::new(|| fixtures(&["cor-6.2"]))),
        (6, "tensor decomposition on fixture joins", 30, Box::new(|| fixtures(&["eq-4"]))),
        (7, "quadratic fundamental form properties", 30, Box::new(qff_suite)),
        (8, "non-smoothness certificate constant", 5, Box::new(|| fixtures(&["thm-7.6"]))),
        (9, "Gorenstein certification of fixture cycles", 30, Box::new(gorenstein_suite)),
    ];
    let mut failures = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(note) if elapsed > Duration::from_secs(budget) => Err(format!("{note}; over the {budget} s budget")),
            other => other,
        };
        let (tag, note) = match &outcome {
            Ok(note) => ("PASS", note),
            Err(note) => ("FAIL", note),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("{tag} criterion {n}: {name} [{:.2} s] {note}", elapsed.as_secs_f64());
    }
    println!("{} of 9 criteria pass", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
