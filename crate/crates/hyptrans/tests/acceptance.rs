//! Acceptance run: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use hyptrans::catalog::{build_catalog, find, sample_params, Family, IdentitySpec};
use hyptrans::diffop::{l_of_jet, transmutation_cases, w_jet};
use hyptrans::expr::Var;
use hyptrans::quadrature::{integrate_finite, Node, SingularIntegrand};
use hyptrans::special::integer_distance;
use hyptrans::verify::{
    euler_pairs, integer_order_check, karp_sitnik_reductions, verify_all, verify_spec, verify_transmutation,
    CompareMode, TransmuteOptions, VerificationReport, VerifyOptions,
};
use hyptrans::{hyp2f1, in_domain, HypParams, Scaled, SolutionKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn summary(reports: &[VerificationReport]) -> (usize, usize, usize, f64) {
    let ok = reports.iter().filter(|r| r.passed()).count();
    let pts: usize = reports.iter().map(|r| r.pass_count).sum();
    let total: usize = reports.iter().map(|r| r.n_points).sum();
    let worst = reports.iter().map(|r| r.worst_rel_err).fold(0.0, f64::max);
    (ok, pts, total, worst)
}

fn full_catalog(cat: &[IdentitySpec]) -> Outcome {
    let opts = VerifyOptions::new(42, 5, 1e-6);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let t = Instant::now();
    let reports = pool.install(|| verify_all(cat, None, &opts));
    let secs = t.elapsed().as_secs_f64();
    let (ok, pts, total, worst) = summary(&reports);
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.identity_id.as_str()).collect();
    outcome(
        ok == 59 && pts == 295 && secs < 300.0,
        format!(
            "{ok}/{} identities, {pts}/{total} points, worst rel {worst:.1e}, {secs:.1} s on one thread {failed:?}",
            reports.len()
        ),
    )
}

fn integer_order(cat: &[IdentitySpec]) -> Outcome {
    let pts = sample_params(find(cat, "F-I-CP").unwrap(), 42, 5).unwrap();
    let mut worst = 0.0f64;
    let mut errors = 0;
    for n in [1, 2] {
        for p in &pts {
            match integer_order_check(cat, p, n) {
                Ok(c) => worst = worst.max(c.rel_err),
                Err(_) => errors += 1,
            }
        }
    }
    outcome(errors == 0 && worst <= 1e-9, format!("mu in {{1, 2}} x 5 points, worst rel {worst:.1e}, {errors} errors"))
}

fn ode_residuals() -> Outcome {
    let kinds =
        [SolutionKind::W1, SolutionKind::W2, SolutionKind::W3, SolutionKind::W4, SolutionKind::W5, SolutionKind::W6];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst, mut count) = (0.0f64, 0);
    for k in kinds {
        let mut done = 0;
        while done < 100 {
            let (a, b, c) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let x: f64 = rng.random_range(-10.0..10.0);
            let far = |v: f64| integer_distance(v) > 0.05;
            if !(far(c) && far(a - b) && far(c - a - b)) || !in_domain(k, x) || x.abs() < 0.02 || (1.0 - x).abs() < 0.02
            {
                continue;
            }
            let p = HypParams::raw(a, b, c);
            let j = w_jet(k, x, &p).unwrap();
            worst = worst.max(l_of_jet(&p, j, x).abs() / (1.0 + j.d2.abs()));
            done += 1;
            count += 1;
        }
    }
    outcome(worst <= 1e-7, format!("{count} evaluations, worst normalized residual {worst:.1e}"))
}

fn transmutation() -> Outcome {
    let opts = TransmuteOptions { n_points: 20, ..Default::default() };
    let (mut kw, mut iw, mut ok) = (0.0f64, 0.0f64, 0);
    let cases = transmutation_cases();
    for case in &cases {
        let r = verify_transmutation(case.name, &opts).unwrap();
        kw = kw.max(r.worst_kernel_residual);
        iw = iw.max(r.worst_integral_rel_err);
        ok += r.pass as usize;
    }
    outcome(
        ok == cases.len() && kw <= 1e-8 && iw <= 1e-6,
        format!("{ok}/{} rows, worst kernel residual {kw:.1e}, worst integral rel {iw:.1e} at mu = 2.5", cases.len()),
    )
}

fn pfaff_euler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let f = |a: f64, b: f64, c: f64, z: f64| hyp2f1(&HypParams::raw(a, b, c), z).unwrap();
    let (mut wp, mut we, mut n) = (0.0f64, 0.0f64, 0);
    while n < 500 {
        let (a, b, c) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let z: f64 = rng.random_range(-20.0..0.9);
        let far = |v: f64| integer_distance(v) > 1e-3;
        if !(far(c) && far(a - b) && far(c - a - b) && far(c - a) && far(c - b)) {
            continue;
        }
        let v = f(a, b, c, z);
        wp = wp.max(((1.0 - z).powf(-a) * f(a, c - b, c, z / (z - 1.0)) - v).abs() / v.abs());
        we = we.max(((1.0 - z).powf(c - a - b) * f(c - a, c - b, c, z) - v).abs() / v.abs());
        n += 1;
    }
    outcome(wp <= 1e-10 && we <= 1e-10, format!("500 points each, worst Pfaff {wp:.1e}, worst Euler {we:.1e}"))
}

fn integer_mu(cat: &[IdentitySpec]) -> Outcome {
    let opts = VerifyOptions { fixed: vec![(Var::Mu, 1.0)], ..VerifyOptions::new(42, 5, 1e-6) };
    let run = |fam: &dyn Fn(Family) -> bool| -> Vec<VerificationReport> {
        cat.iter()
            .filter(|s| fam(s.family))
            .map(|s| verify_spec(s, &opts))
            .filter(|r| r.points.iter().all(|p| p.error.as_deref() != Some("SamplerExhaustedError")))
            .collect()
    };
    let st = run(&|f| f == Family::Stieltjes);
    let st_ok = st.iter().filter(|r| {
        r.passed() && r.points.iter().all(|p| p.mode == CompareMode::Absolute && p.lhs.is_some_and(|l| l.abs() <= 1e-8))
    });
    let worst_lhs = st.iter().flat_map(|r| &r.points).filter_map(|p| p.lhs).map(f64::abs).fold(0.0, f64::max);
    let st_ok = st_ok.count();
    let fr = run(&|f| matches!(f, Family::FracI | Family::FracII | Family::FracIII));
    let fr_ok = fr
        .iter()
        .filter(|r| {
            r.passed() && r.points.iter().all(|p| p.mode == CompareMode::Relative && p.rhs.is_some_and(|v| v != 0.0))
        })
        .count();
    outcome(
        st_ok >= 6 && st_ok == st.len() && fr_ok == fr.len() && fr_ok > 0,
        format!(
            "{st_ok}/{} Stieltjes entries vanish (max |lhs| {worst_lhs:.1e}), {fr_ok}/{} fractional entries nonzero and pass",
            st.len(),
            fr.len()
        ),
    )
}

fn pairing(cat: &[IdentitySpec]) -> Outcome {
    match euler_pairs(cat, 42, 10) {
        Ok(checks) => {
            let worst = checks.iter().map(|c| c.rel_err).fold(0.0, f64::max);
            outcome(worst <= 1e-8 && checks.len() == 60, format!("6 pairs x 10 points, worst rel {worst:.1e}"))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn karp_sitnik(cat: &[IdentitySpec]) -> Outcome {
    let r = verify_spec(find(cat, "KS-3F2").unwrap(), &VerifyOptions::new(42, 5, 1e-7));
    let xs_ok = r.points.iter().all(|p| p.params.is_some_and(|q| q.x.abs() <= 0.8));
    match karp_sitnik_reductions(cat, 42, 5) {
        Ok(red) => {
            let worst = red.iter().map(|c| c.lhs_rel_err.max(c.rhs_rel_err)).fold(0.0, f64::max);
            outcome(
                r.passed() && xs_ok && worst <= 1e-9,
                format!(
                    "3F2 form {}/5 at rtol 1e-7 (worst {:.1e}), d = a reduction worst {worst:.1e}",
                    r.pass_count, r.worst_rel_err
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn compositions(cat: &[IdentitySpec]) -> Outcome {
    let reports = verify_all(cat, Some("composition"), &VerifyOptions::new(42, 3, 1e-5));
    let (ok, pts, total, worst) = summary(&reports);
    outcome(ok == 4 && reports.len() == 4, format!("{ok}/4 identities, {pts}/{total} points, worst rel {worst:.1e}"))
}

fn beta_suite() -> Outcome {
    let table: Vec<(f64, f64, f64)> = include_str!("data/beta_pairs.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect();
    let (mut worst, mut honest) = (0.0f64, 0);
    for &(al, be, want) in &table {
        let f = SingularIntegrand::new(move |n: Node| Ok(Scaled::from_f64(n.dl.powf(al) * n.dr.powf(be))))
            .exponents(al, be);
        let r = integrate_finite(&f, 0.0, 1.0, 1e-11).unwrap();
        let err = (r.value - want).abs();
        worst = worst.max(err / want);
        honest += (r.err_est >= err) as usize;
    }
    let n = table.len();
    outcome(
        n == 200 && worst <= 1e-10 && honest * 100 >= 99 * n,
        format!("{n} pairs, worst rel {worst:.1e}, honest error estimates {honest}/{n}"),
    )
}

fn main() -> ExitCode {
    let cat = build_catalog();
    let criteria: [(&str, &dyn Fn() -> Outcome); 10] = [
        ("full catalog at seed 42", &|| full_catalog(&cat)),
        ("fractional family at integer mu", &|| integer_order(&cat)),
        ("ODE residuals of the six solutions", &ode_residuals),
        ("transmutation kernels and integral form", &transmutation),
        ("Pfaff and Euler invariance", &pfaff_euler),
        ("vanishing at mu = 1", &|| integer_mu(&cat)),
        ("Euler representation pairing", &|| pairing(&cat)),
        ("Karp-Sitnik formulas", &|| karp_sitnik(&cat)),
        ("composition identities", &|| compositions(&cat)),
        ("beta-integral suite", &beta_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += !o.pass as usize;
        println!("criterion {:>2} {} {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
