//! Verification runner: sample, integrate, compare, report.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    find, realize_lhs, realize_rhs, sample_params_with, Family, IdentitySpec, ParamPoint, RealizeOptions,
};
use crate::diffop::{kernel_sides, l_of_jet, transmutation_case, SecondWeight, SmoothFn, TransmutationCase};
use crate::error::{Error, Result};
use crate::expr::Var;
use crate::quadrature::{integrate, Node, QuadOptions};
use crate::scaled::Scaled;
use crate::special::HypParams;

pub const REPORT_VERSION: u32 = 1;
/// Below this |rhs| the comparison switches to an absolute test.
pub const ZERO_RHS: f64 = 1e-10;
/// Absolute bound on |lhs| when the right side is zero.
pub const ZERO_LHS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub n_points: usize,
    pub rel_tol: f64,
    /// Relative tolerance of the outer quadrature; derived from `rel_tol`
    /// when absent.
    pub quad_tol: Option<f64>,
    /// Variables held fixed while sampling, e.g. `mu = 1`.
    pub fixed: Vec<(Var, f64)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, n_points: 5, rel_tol: 1e-6, quad_tol: None, fixed: Vec::new() }
    }
}

impl VerifyOptions {
    pub fn new(seed: u64, n_points: usize, rel_tol: f64) -> Self {
        VerifyOptions { seed, n_points, rel_tol, ..Default::default() }
    }

    /// Quadrature tolerance used for an identity. Nested integrals get a
    /// looser outer tolerance; their inner integrals run at 1e-12.
    pub fn quad_tol_for(&self, family: Family) -> f64 {
        if let Some(t) = self.quad_tol {
            return t;
        }
        let cap: f64 = if family == Family::Composition { 1e-8 } else { 1e-10 };
        cap.min(0.05 * self.rel_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub params: Option<ParamPoint>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub rel_err: Option<f64>,
    pub err_est: Option<f64>,
    pub mode: CompareMode,
    pub pass: bool,
    /// Error class when the point could not be evaluated.
    pub error: Option<String>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub family: Family,
    pub points: Vec<PointReport>,
    pub pass_count: usize,
    pub n_points: usize,
    pub worst_rel_err: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.pass_count == self.n_points
    }
}

/// Pass rule for one comparison.
pub fn judge(lhs: f64, rhs: f64, err_est: f64, rel_tol: f64) -> (CompareMode, f64, bool) {
    if rhs.abs() < ZERO_RHS {
        let pass = lhs.abs() <= ZERO_LHS_TOL && err_est <= 0.1 * ZERO_LHS_TOL;
        return (CompareMode::Absolute, (lhs - rhs).abs(), pass);
    }
    let rel = (lhs - rhs).abs() / rhs.abs();
    let pass = rel <= rel_tol && err_est <= 0.1 * rel_tol * rhs.abs();
    (CompareMode::Relative, rel, pass)
}

fn failed_point(params: Option<ParamPoint>, e: &Error) -> PointReport {
    PointReport {
        params,
        lhs: None,
        rhs: None,
        rel_err: None,
        err_est: None,
        mode: CompareMode::Relative,
        pass: false,
        error: Some(e.class().to_string()),
        message: Some(e.to_string()),
    }
}

/// Compare both sides of `spec` at one point.
pub fn check_point(spec: &IdentitySpec, pt: &ParamPoint, rel_tol: f64, quad_tol: f64) -> PointReport {
    let rhs = match realize_rhs(spec, pt) {
        Ok(v) => v,
        Err(e) => return failed_point(Some(*pt), &e),
    };
    let mut quad = QuadOptions::with_rel_tol(quad_tol);
    if rhs.abs() < ZERO_RHS {
        // a vanishing integral can only converge in absolute terms
        quad.abs_tol = 0.01 * ZERO_LHS_TOL;
    }
    let opts = RealizeOptions { quad, ..Default::default() };
    let lhs = realize_lhs(spec, pt, opts).and_then(|r| r.integrate());
    let (value, err_est, err) = match lhs {
        Ok(v) => (v.value, v.err_est, None),
        Err(e @ Error::NoConvergence { value, err_est }) => (value, err_est, Some(e)),
        Err(e) => {
            let mut r = failed_point(Some(*pt), &e);
            r.rhs = Some(rhs);
            return r;
        }
    };
    let (mode, rel, pass) = judge(value, rhs, err_est, rel_tol);
    PointReport {
        params: Some(*pt),
        lhs: Some(value),
        rhs: Some(rhs),
        rel_err: Some(rel),
        err_est: Some(err_est),
        mode,
        pass: pass && err.is_none(),
        error: err.as_ref().map(|e| e.class().to_string()),
        message: err.map(|e| e.to_string()),
    }
}

pub fn verify_spec(spec: &IdentitySpec, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let quad_tol = opts.quad_tol_for(spec.family);
    let points: Vec<PointReport> = match sample_params_with(spec, opts.seed, opts.n_points, &opts.fixed) {
        Ok(pts) => pts.iter().map(|p| check_point(spec, p, opts.rel_tol, quad_tol)).collect(),
        Err(e) => (0..opts.n_points).map(|_| failed_point(None, &e)).collect(),
    };
    let pass_count = points.iter().filter(|p| p.pass).count();
    let worst_rel_err = points.iter().map(|p| p.rel_err.unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    VerificationReport {
        identity_id: spec.id.clone(),
        family: spec.family,
        points,
        pass_count,
        n_points: opts.n_points,
        worst_rel_err,
        elapsed: start.elapsed(),
    }
}

pub fn verify_identity(catalog: &[IdentitySpec], id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    Ok(verify_spec(find(catalog, id)?, opts))
}

/// Verify every selected identity in parallel; reports come back in catalog
/// order.
pub fn verify_all(catalog: &[IdentitySpec], family: Option<&str>, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let selected: Vec<&IdentitySpec> =
        catalog.iter().filter(|s| family.map_or(true, |f| s.family.matches(f))).collect();
    selected.par_iter().map(|s| verify_spec(s, opts)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub quad_tol: Option<f64>,
    pub zero_rhs: f64,
    pub zero_lhs_tol: f64,
}

/// Top-level JSON document of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunDocument {
    pub version: u32,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub reports: Vec<VerificationReport>,
}

impl RunDocument {
    pub fn new(opts: &VerifyOptions, reports: Vec<VerificationReport>) -> Self {
        RunDocument {
            version: REPORT_VERSION,
            seed: opts.seed,
            tolerances: Tolerances {
                rel_tol: opts.rel_tol,
                quad_tol: opts.quad_tol,
                zero_rhs: ZERO_RHS,
                zero_lhs_tol: ZERO_LHS_TOL,
            },
            reports,
        }
    }
}

// ---------------------------------------------------------------------------
// transmutation

#[derive(Debug, Clone, PartialEq)]
pub struct TransmuteOptions {
    pub seed: u64,
    pub n_points: usize,
    /// Bound on the normalized kernel residual.
    pub kernel_tol: f64,
    /// Bound on the relative difference of the two integral forms.
    pub integral_tol: f64,
    /// mu used by the integral form; must exceed 2.
    pub integral_mu: f64,
    /// Fixed mu for the kernel check; sampled from (0.05, 2.5) when absent.
    pub kernel_mu: Option<f64>,
}

impl Default for TransmuteOptions {
    fn default() -> Self {
        TransmuteOptions {
            seed: 42,
            n_points: 20,
            kernel_tol: 1e-8,
            integral_tol: 1e-6,
            integral_mu: 2.5,
            kernel_mu: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: f64,
    pub x: f64,
    pub y: f64,
    pub lhs: Option<f64>,
    pub residual: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: f64,
    pub x: f64,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub rel_err: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransmutationReport {
    pub case: String,
    pub kernel: Vec<KernelPoint>,
    pub integral: Vec<IntegralPoint>,
    pub worst_kernel_residual: f64,
    pub worst_integral_rel_err: f64,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn case_rng(seed: u64, name: &str, salt: u64) -> ChaCha8Rng {
    let mut h = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in name.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Draw x in one of the case's intervals J (clipped to [-10, 10]).
fn draw_x(case: &TransmutationCase, rng: &mut ChaCha8Rng, k: usize) -> f64 {
    let j = case.j[k % case.j.len()];
    let lo = j.lo.max(-10.0) + 0.02;
    let hi = j.hi.min(10.0) - 0.02;
    rng.random_range(lo..hi)
}

/// Kernel identity at random points with y strictly inside I.
pub fn kernel_points(case: &TransmutationCase, opts: &TransmuteOptions) -> Vec<KernelPoint> {
    let mut rng = case_rng(opts.seed, case.name, 1);
    (0..opts.n_points)
        .map(|k| {
            let p =
                HypParams::raw(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let mu = opts.kernel_mu.unwrap_or_else(|| rng.random_range(0.05..2.5));
            let x = draw_x(case, &mut rng, k);
            let iv = case.interval(x);
            let (lo, hi) = (iv.lo.max(x - 10.0), iv.hi.min(x + 10.0));
            let len = hi - lo;
            let y = lo + len * rng.random_range(0.05..0.95);
            let mut out =
                KernelPoint { a: p.a, b: p.b, c: p.c, mu, x, y, lhs: None, residual: None, pass: false, error: None };
            match kernel_sides(case, &p, mu, x, y) {
                Ok((l, r)) => {
                    let res = (l - r).abs() / (1.0 + l.abs());
                    out.lhs = Some(l);
                    out.residual = Some(res);
                    out.pass = res <= opts.kernel_tol;
                }
                Err(e) => out.error = Some(e.class().to_string()),
            }
            out
        })
        .collect()
}

/// Exponent of w at the finite end x0 of I (0 when I is unbounded).
fn w_exponent_at_x0(case: &TransmutationCase, p: &HypParams, mu: f64) -> f64 {
    let env = [p.a, p.b, p.c, mu, 0.0, 0.0, 0.0];
    if case.x0 == 0.0 {
        case.w_abs.eval(&env)
    } else if case.x0 == 1.0 {
        case.w_one.eval(&env)
    } else {
        0.0
    }
}

struct IntegralSetup {
    p: HypParams,
    mu: f64,
    f: SmoothFn,
    /// Integration range for y at a given x.
    lo_hi: Box<dyn Fn(f64) -> (f64, f64)>,
    sigma: f64,
}

fn setup_integral(case: &TransmutationCase, p: HypParams, mu: f64, x: f64) -> IntegralSetup {
    let (len, far) = if case.x0.is_finite() { ((x - case.x0).abs(), case.x0) } else { (2.0, x - 2.0) };
    let y0 = 0.5 * (x + far);
    let sigma = len / 12.0;
    let x0 = case.x0;
    let lo_hi: Box<dyn Fn(f64) -> (f64, f64)> = if x0.is_finite() {
        Box::new(move |xx: f64| if x0 < xx { (x0, xx) } else { (xx, x0) })
    } else {
        // the test function is below 1e-300 beyond this
        let cut = y0 - 40.0 * sigma;
        Box::new(move |xx: f64| (cut, xx))
    };
    IntegralSetup { p, mu, f: SmoothFn::gaussian(y0, sigma), lo_hi, sigma }
}

/// `(|y|, |1-y|, |x-y|)` using the exact endpoint distances of the node.
fn distances(n: Node, lo: f64, hi: f64, x: f64) -> (f64, f64, f64) {
    let near = |p: f64, fallback: f64| {
        if lo == p {
            n.dl
        } else if hi == p {
            n.dr
        } else {
            fallback
        }
    };
    (near(0.0, n.y.abs()), near(1.0, (1.0 - n.y).abs()), near(x, (x - n.y).abs()))
}

/// `∫_I f(y) w(y) |x-y|^{mu-1} dy / v(x)` with f fixed.
fn transformed(case: &TransmutationCase, s: &IntegralSetup, x: f64) -> Result<f64> {
    let env = [s.p.a, s.p.b, s.p.c, s.mu, 0.0, 0.0, 0.0];
    let (wa, wo) = (case.w_abs.eval(&env), case.w_one.eval(&env));
    let (va, vo) = (case.v_abs.eval(&env), case.v_one.eval(&env));
    let (lo, hi) = (s.lo_hi)(x);
    let opts = QuadOptions { rel_tol: 1e-14, abs_tol: 1e-300, min_level: 4, max_level: 12 };
    let g = |n: Node| -> Result<Scaled> {
        let fy = s.f.value_at(n.y)?;
        if fy == 0.0 {
            return Ok(Scaled::ZERO);
        }
        let (d0, d1, dx) = distances(n, lo, hi, x);
        let ln = wa * d0.ln() + wo * d1.ln() + (s.mu - 1.0) * dx.ln();
        Ok(Scaled::from_f64(fy).shift(ln))
    };
    let r = match integrate(g, lo, hi, &opts) {
        Ok(r) => r.value,
        Err(Error::NoConvergence { value, err_est }) if err_est <= 1e-11 * value.abs() => value,
        Err(e) => return Err(e),
    };
    Ok(r * (-(va * x.abs().ln() + vo * (1.0 - x).abs().ln())).exp())
}

/// Both sides of the integral form of the transmutation identity. The left
/// side applies `L_{a',b',c'}` to the transformed test function using
/// Richardson-extrapolated five-point differences.
pub fn integral_sides(case: &TransmutationCase, p: HypParams, mu: f64, x: f64) -> Result<(f64, f64)> {
    let s = setup_integral(case, p, mu, x);
    let g = |t: f64| transformed(case, &s, t);
    let stencil = |h: f64| -> Result<(f64, f64, f64)> {
        let (m2, m1, z, p1, p2) = (g(x - 2.0 * h)?, g(x - h)?, g(x)?, g(x + h)?, g(x + 2.0 * h)?);
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
        Ok((z, d1, d2))
    };
    // keep the stencil well clear of the singular points 0 and 1
    let h = s.sigma.min(0.25 * x.abs().min((1.0 - x).abs())) / 16.0;
    let (g0, d1a, d2a) = stencil(h)?;
    let (_, d1b, d2b) = stencil(h / 2.0)?;
    let d1 = d1b + (d1b - d1a) / 15.0;
    let d2 = d2b + (d2b - d2a) / 15.0;
    let lhs = l_of_jet(&case.primed(&p, mu), crate::diffop::Jet::new(g0, d1, d2), x);

    let env = [p.a, p.b, p.c, mu, 0.0, 0.0, 0.0];
    let (e0, e1) = case.weight_exponents(&p, mu);
    let (s0, s1) = match case.second {
        SecondWeight::One => (0.0, 0.0),
        SecondWeight::Abs => (1.0, 0.0),
        SecondWeight::OneMinus => (0.0, 1.0),
    };
    let (va, vo) = (case.v_abs.eval(&env) + s0, case.v_one.eval(&env) + s1);
    let (lo, hi) = (s.lo_hi)(x);
    let opts = QuadOptions { rel_tol: 1e-12, abs_tol: 1e-300, min_level: 4, max_level: 12 };
    let f = &s.f;
    let integrand = |n: Node| -> Result<Scaled> {
        let lf = l_of_jet(&p, f.jet_at(n.y)?, n.y);
        if lf == 0.0 {
            return Ok(Scaled::ZERO);
        }
        let (d0, d1, dx) = distances(n, lo, hi, x);
        let ln = e0 * d0.ln() + e1 * d1.ln() + (mu - 1.0) * dx.ln();
        Ok(Scaled::from_f64(lf).shift(ln))
    };
    let r = match integrate(integrand, lo, hi, &opts) {
        Ok(r) => r.value,
        // L f cancels heavily, which caps the attainable accuracy
        Err(Error::NoConvergence { value, err_est }) if err_est <= 1e-9 * value.abs() => value,
        Err(e) => return Err(e),
    };
    let rhs = r * (-(va * x.abs().ln() + vo * (1.0 - x).abs().ln())).exp();
    Ok((lhs, rhs))
}

/// Integral-form check at sampled points; parameters keep the weight
/// exponent at the finite end of I above -0.75.
pub fn integral_points(case: &TransmutationCase, opts: &TransmuteOptions) -> Vec<IntegralPoint> {
    let mut rng = case_rng(opts.seed, case.name, 2);
    let mu = opts.integral_mu;
    (0..opts.n_points)
        .map(|k| {
            let (p, x) = loop {
                let p = HypParams::raw(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                );
                let x = draw_x(case, &mut rng, k);
                let len = if case.x0.is_finite() { (x - case.x0).abs() } else { 2.0 };
                if w_exponent_at_x0(case, &p, mu) > -0.75 && len > 0.1 {
                    break (p, x);
                }
            };
            let mut out = IntegralPoint {
                a: p.a,
                b: p.b,
                c: p.c,
                mu,
                x,
                lhs: None,
                rhs: None,
                rel_err: None,
                pass: false,
                error: None,
            };
            match integral_sides(case, p, mu, x) {
                Ok((l, r)) => {
                    let scale = l.abs().max(r.abs());
                    let rel = if scale == 0.0 { 0.0 } else { (l - r).abs() / scale };
                    out.lhs = Some(l);
                    out.rhs = Some(r);
                    out.rel_err = Some(rel);
                    out.pass = rel <= opts.integral_tol;
                }
                Err(e) => out.error = Some(e.class().to_string()),
            }
            out
        })
        .collect()
}

pub fn verify_transmutation(case: &str, opts: &TransmuteOptions) -> Result<TransmutationReport> {
    let start = Instant::now();
    let case = transmutation_case(case)?;
    let kernel = kernel_points(&case, opts);
    let integral = integral_points(&case, opts);
    let worst_kernel_residual = kernel.iter().map(|k| k.residual.unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    let worst_integral_rel_err = integral.iter().map(|k| k.rel_err.unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    let pass = kernel.iter().all(|k| k.pass) && integral.iter().all(|k| k.pass);
    Ok(TransmutationReport {
        case: case.name.to_string(),
        kernel,
        integral,
        worst_kernel_residual,
        worst_integral_rel_err,
        pass,
        elapsed: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------
// cross-checks between identities

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `∫` over the segment between 0 and `x` of `f(y, |y|)`.
fn segment_integral(f: impl Fn(f64, f64) -> Result<f64>, x: f64, rel_tol: f64) -> Result<f64> {
    let opts = QuadOptions { rel_tol, abs_tol: 1e-300, min_level: 4, max_level: 12 };
    let lo = x.min(0.0);
    let g = |n: Node| {
        let abs_y = if x > 0.0 { n.dl } else { n.dr };
        if abs_y == 0.0 {
            return Ok(Scaled::ZERO);
        }
        f(n.y, abs_y).map(Scaled::from_f64)
    };
    Ok(crate::quadrature::integrate_span(g, lo, x.abs(), &opts)?.value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegerOrderCheck {
    pub point: ParamPoint,
    /// Left side of the fractional identity at `mu = n`.
    pub fractional: f64,
    /// The n-fold iterated integral of `|y|^{c-1} F(a,b;c;y)`.
    pub iterated: f64,
    /// `Γ(c)/Γ(c+n) |x|^{c+n-1} F(a,b;c+n;x)`, the n-th derivative formula
    /// read backwards.
    pub closed: f64,
    pub rel_err: f64,
}

/// Fractional integral of `y^{c-1} F(a,b;c;y)` at integer order n (1 or 2)
/// against repeated integration and the n-th derivative formula.
pub fn integer_order_check(catalog: &[IdentitySpec], pt: &ParamPoint, n: u32) -> Result<IntegerOrderCheck> {
    if !(1..=2).contains(&n) {
        return Err(Error::Constraint(format!("integer order {n} not in 1..=2")));
    }
    let spec = find(catalog, "F-I-CP")?;
    let pt = ParamPoint { mu: n as f64, ..*pt };
    let opts = RealizeOptions { quad: QuadOptions::with_rel_tol(1e-12), ..Default::default() };
    let fractional = realize_lhs(spec, &pt, opts)?.integrate()?.value;
    let p = pt.hyp();
    let base = |y: f64, abs_y: f64| -> Result<f64> { Ok(abs_y.powf(p.c - 1.0) * crate::special::hyp2f1(&p, y)?) };
    let once = |t: f64, _: f64| segment_integral(base, t, 1e-13);
    let iterated = if n == 1 { once(pt.x, pt.x.abs())? } else { segment_integral(once, pt.x, 1e-12)? };
    let shifted = HypParams::raw(p.a, p.b, p.c + n as f64);
    let closed = crate::special::gamma(p.c)? / crate::special::gamma(p.c + n as f64)?
        * pt.x.abs().powf(p.c + n as f64 - 1.0)
        * crate::special::hyp2f1(&shifted, pt.x)?;
    let rel_err = rel_diff(fractional, iterated).max(rel_diff(fractional, closed));
    Ok(IntegerOrderCheck { point: pt, fractional, iterated, closed, rel_err })
}

/// Euler representations paired by the substitution `y -> x y`: the first
/// integral at `(x; a, b, c)` equals `|x|^{c-1-a}` times the second at
/// `(1/x; a, a-c+1, a-b+1)`.
pub const EULER_PAIRS: [(&str, &str); 6] =
    [("E-W1", "E2-W3"), ("E-W2", "E2-W4"), ("E-W3", "E2-W1"), ("E-W4", "E2-W2"), ("E-W5", "E2-W5"), ("E-W6", "E2-W6")];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCheck {
    pub first_id: String,
    pub second_id: String,
    pub point: ParamPoint,
    pub first: f64,
    /// The second integral with the change-of-variable factor applied.
    pub second: f64,
    pub rel_err: f64,
}

pub fn euler_pair_check(catalog: &[IdentitySpec], first: &str, second: &str, pt: &ParamPoint) -> Result<PairCheck> {
    let (s1, s2) = (find(catalog, first)?, find(catalog, second)?);
    let opts = RealizeOptions { quad: QuadOptions::with_rel_tol(1e-11), ..Default::default() };
    let v1 = realize_lhs(s1, pt, opts)?.integrate()?.value;
    let pt2 = ParamPoint::new(pt.a, pt.a - pt.c + 1.0, pt.a - pt.b + 1.0, 0.0, 1.0 / pt.x);
    let v2 = realize_lhs(s2, &pt2, opts)?.integrate()?.value * pt.x.abs().powf(pt.c - 1.0 - pt.a);
    Ok(PairCheck {
        first_id: first.to_string(),
        second_id: second.to_string(),
        point: *pt,
        first: v1,
        second: v2,
        rel_err: rel_diff(v1, v2),
    })
}

/// `n` pair checks per pair at points sampled for the first member.
pub fn euler_pairs(catalog: &[IdentitySpec], seed: u64, n: usize) -> Result<Vec<PairCheck>> {
    let mut out = Vec::new();
    for (first, second) in EULER_PAIRS {
        let pts = sample_params_with(find(catalog, first)?, seed, 4 * n, &[])?;
        let checks: Vec<PairCheck> =
            pts.iter().filter_map(|p| euler_pair_check(catalog, first, second, p).ok()).take(n).collect();
        if checks.len() < n {
            return Err(Error::SamplerExhausted(format!("{first}/{second}")));
        }
        out.extend(checks);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionCheck {
    pub point: ParamPoint,
    pub lhs_rel_err: f64,
    pub rhs_rel_err: f64,
}

/// The 2F1 Karp-Sitnik identity at x against the 3F2 one at `d = a` and
/// argument `1/x`; both sides of the former are `|x|^{-a}` times those of
/// the latter.
pub fn karp_sitnik_reduction(catalog: &[IdentitySpec], pt: &ParamPoint) -> Result<ReductionCheck> {
    let (s2, s3) = (find(catalog, "KS-2F1")?, find(catalog, "KS-3F2")?);
    let opts = RealizeOptions { quad: QuadOptions::with_rel_tol(1e-12), ..Default::default() };
    let pt3 = ParamPoint { d: pt.a, x: 1.0 / pt.x, ..*pt };
    let k = pt.x.abs().powf(-pt.a);
    let l2 = realize_lhs(s2, pt, opts)?.integrate()?.value;
    let l3 = realize_lhs(s3, &pt3, opts)?.integrate()?.value * k;
    let r2 = realize_rhs(s2, pt)?;
    let r3 = realize_rhs(s3, &pt3)? * k;
    Ok(ReductionCheck { point: *pt, lhs_rel_err: rel_diff(l2, l3), rhs_rel_err: rel_diff(r2, r3) })
}

/// Reduction checks at `n` points with `x >= 1.25`, so that `1/x` stays in
/// the 3F2 sampling range.
pub fn karp_sitnik_reductions(catalog: &[IdentitySpec], seed: u64, n: usize) -> Result<Vec<ReductionCheck>> {
    let pts = sample_params_with(find(catalog, "KS-2F1")?, seed, 20 * n, &[])?;
    let out: Vec<ReductionCheck> =
        pts.iter().filter(|p| p.x >= 1.25).take(n).map(|p| karp_sitnik_reduction(catalog, p)).collect::<Result<_>>()?;
    if out.len() < n {
        return Err(Error::SamplerExhausted("KS-2F1 with x >= 1.25".into()));
    }
    Ok(out)
}
