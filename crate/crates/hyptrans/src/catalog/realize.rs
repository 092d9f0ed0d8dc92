//! Turning catalog specs into numbers at a parameter point.

use std::cell::Cell;

use super::*;
use crate::expr::Env;
use crate::quadrature::{
    integrate, integrate_scaled, integrate_span, integrate_span_scaled, Node, QuadOptions, QuadResult,
    SingularIntegrand,
};
use crate::scaled::Scaled;
use crate::solutions::{eval_w_split, SingularPoint};
use crate::special::{gamma_ratio_scaled, hyp3f2};

use super::sample::ParamPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizeOptions {
    /// Options for the outermost integral.
    pub quad: QuadOptions,
    /// Relative tolerance of inner integrals of composition identities.
    pub inner_rel_tol: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { quad: QuadOptions::default(), inner_rel_tol: 1e-12 }
    }
}

/// A point together with accurately known `|x|` and `1 - x`, so that bounds
/// at 0 and 1 stay exact when x is itself a quadrature node.
#[derive(Debug, Clone, Copy)]
struct At {
    x: f64,
    abs_x: f64,
    one_minus_x: f64,
}

impl At {
    fn plain(x: f64) -> Self {
        At { x, abs_x: x.abs(), one_minus_x: 1.0 - x }
    }
}

fn bound_value(b: Bound, at: At) -> f64 {
    match b {
        Bound::NegInf => f64::NEG_INFINITY,
        Bound::Zero => 0.0,
        Bound::One => 1.0,
        Bound::PosInf => f64::INFINITY,
        Bound::X => at.x,
    }
}

fn gamma_factor(g: &GammaExprs, env: &Env) -> Result<Scaled> {
    let num: Vec<f64> = g.numerator.iter().map(|e| e.eval(env)).collect();
    let den: Vec<f64> = g.denominator.iter().map(|e| e.eval(env)).collect();
    gamma_ratio_scaled(&num, &den)
}

/// Endpoint of the integration region with the local power exponents the
/// integrand can show there (growth exponents for an infinite end).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Endpoint {
    pub bound: Bound,
    pub exponents: Vec<f64>,
}

impl Endpoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self.bound, Bound::NegInf | Bound::PosInf)
    }

    /// Distance from non-integrability: `min(e) + 1` at a finite end,
    /// `-(max(e) + 1)` at an infinite end. Positive means integrable.
    pub fn margin(&self) -> f64 {
        if self.is_infinite() {
            -(self.exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0)
        } else {
            self.exponents.iter().cloned().fold(f64::INFINITY, f64::min) + 1.0
        }
    }
}

fn fn_exponents(kind: FnKind, map: &ParamMap, env: &Env, point: SingularPoint) -> Vec<f64> {
    kind.solution().local_exponents(point, &map.eval(env))
}

fn closed_exponents(cf: &ClosedFormSpec, env: &Env, point: SingularPoint) -> Vec<f64> {
    let xe = cf.x_exponent.eval(env);
    let oxe = cf.one_minus_x_exponent.eval(env);
    let shift = match point {
        SingularPoint::Zero => xe,
        SingularPoint::One => oxe,
        SingularPoint::Infinity => xe + oxe,
    };
    let base = match &cf.outer {
        Outer::Fn(k, m) => fn_exponents(*k, m, env, point),
        // only used on (-1, 1); no singular behaviour there
        Outer::F32(_) => vec![0.0],
    };
    base.into_iter().map(|e| e + shift).collect()
}

fn inner_exponents(inner: &Inner, env: &Env, point: SingularPoint) -> Vec<f64> {
    match inner {
        Inner::None => vec![0.0],
        Inner::Fn(k, m) => fn_exponents(*k, m, env, point),
        Inner::Nested(_, cf) => closed_exponents(cf, env, point),
    }
}

fn integral_endpoints(spec: &IntegralSpec, env: &Env, x: f64, out: &mut Vec<Endpoint>) {
    let (lo, hi) = spec.region.bounds(x);
    let ye = spec.y_exponent.eval(env);
    let oe = spec.one_minus_y_exponent.eval(env);
    let ke = spec.kernel_exponent.eval(env);
    for b in [lo, hi] {
        let exponents = match b {
            Bound::X => vec![ke],
            Bound::Zero => inner_exponents(&spec.inner, env, SingularPoint::Zero).into_iter().map(|e| e + ye).collect(),
            Bound::One => inner_exponents(&spec.inner, env, SingularPoint::One).into_iter().map(|e| e + oe).collect(),
            Bound::NegInf | Bound::PosInf => {
                let k = if spec.kernel == Kernel::Difference { ke } else { 0.0 };
                inner_exponents(&spec.inner, env, SingularPoint::Infinity)
                    .into_iter()
                    .map(|e| e + ye + oe + k)
                    .collect()
            }
        };
        out.push(Endpoint { bound: b, exponents });
    }
    if let Inner::Nested(inner, _) = &spec.inner {
        // x of the inner integral is a point of the outer region; the inner
        // regions in the catalog do not depend on which one
        integral_endpoints(inner, env, x, out);
    }
}

/// Endpoint exponents of the left side, including those of nested inner
/// integrals.
pub fn lhs_endpoint_exponents(spec: &IdentitySpec, pt: &ParamPoint) -> Vec<Endpoint> {
    let mut out = Vec::new();
    integral_endpoints(&spec.lhs, &pt.env(), pt.x, &mut out);
    out
}

/// Value of the integrand of `spec` at a quadrature node.
fn integrand_at(
    spec: &IntegralSpec,
    env: &Env,
    at: At,
    (lo, hi): (Bound, Bound),
    n: Node,
    inner_opts: &QuadOptions,
    slack: Option<&Cell<f64>>,
) -> Result<Scaled> {
    // a node whose distance to a finite end underflows carries no weight
    if n.dl == 0.0 || n.dr == 0.0 {
        return Ok(Scaled::ZERO);
    }
    let abs_y = if lo == Bound::Zero {
        n.dl
    } else if hi == Bound::Zero {
        n.dr
    } else {
        n.y.abs()
    };
    let one_minus_y = if lo == Bound::One {
        -n.dl
    } else if hi == Bound::One {
        n.dr
    } else {
        1.0 - n.y
    };
    let ye = spec.y_exponent.eval(env);
    let oe = spec.one_minus_y_exponent.eval(env);
    let ke = spec.kernel_exponent.eval(env);
    let mut ln_w = 0.0;
    if ye != 0.0 {
        ln_w += ye * abs_y.ln();
    }
    if oe != 0.0 {
        ln_w += oe * one_minus_y.abs().ln();
    }
    if ke != 0.0 {
        let k = match spec.kernel {
            Kernel::Difference => {
                if lo == Bound::X {
                    n.dl
                } else if hi == Bound::X {
                    n.dr
                } else {
                    (at.x - n.y).abs()
                }
            }
            Kernel::OneMinusProduct => 1.0 - at.x * n.y,
        };
        ln_w += ke * k.ln();
    }
    let inner = match &spec.inner {
        Inner::None => Scaled::ONE,
        Inner::Fn(kind, map) => eval_w_split(kind.solution(), n.y, one_minus_y, &map.eval(env))?,
        Inner::Nested(inner_spec, _) => {
            let inner_at = At { x: n.y, abs_x: abs_y, one_minus_x: one_minus_y };
            let (value, ln_err, converged) = inner_value(inner_spec, env, inner_at, inner_opts)?;
            // inner integrals that stall just short of their target are still
            // far more accurate than the outer tolerance; far out in the outer
            // region they may stall badly, and their error is charged to the
            // outer estimate
            if !converged && slack.is_none() && ln_err > (1e-9f64).ln() + value.ln_abs() {
                return Err(Error::NoConvergence { value: value.value(), err_est: ln_err.exp() });
            }
            if let Some(s) = slack {
                // double-exponential weights are about d (2 + |ln d|) with d
                // the distance to the nearest end
                let d = n.dl.min(n.dr);
                let ln_bound = ln_err + ln_w + d.ln() + (2.0 + d.ln().abs()).ln();
                s.set(s.get() + ln_bound.exp());
            }
            value
        }
    };
    Ok(inner.shift(ln_w))
}

/// Integral of `spec` without its gamma factor, relative to `exp(ln_scale)`.
struct Raw {
    r: QuadResult,
    ln_scale: f64,
    converged: bool,
}

fn integral_raw(
    spec: &IntegralSpec,
    env: &Env,
    at: At,
    opts: &QuadOptions,
    inner_opts: &QuadOptions,
    is_inner: bool,
) -> Result<Raw> {
    let bounds = spec.region.bounds(at.x);
    let (lo, hi) = (bound_value(bounds.0, at), bound_value(bounds.1, at));
    // bound on the integrand error contributed by inner integrals, before
    // multiplying by the step
    let slack = Cell::new(0.0);
    let track = matches!(spec.inner, Inner::Nested(..)) && !is_inner;
    let f = |n: Node| integrand_at(spec, env, at, bounds, n, inner_opts, track.then_some(&slack));
    let span = match bounds {
        (Bound::Zero, Bound::X) | (Bound::X, Bound::Zero) => Some(at.abs_x),
        (Bound::X, Bound::One) | (Bound::One, Bound::X) => Some(at.one_minus_x.abs()),
        _ if lo.is_finite() && hi.is_finite() => Some(hi - lo),
        _ => None,
    };
    let charge = |level: u32, err: f64| err + 0.5f64.powi(level as i32) * slack.get();
    // inner integrals at far outer nodes can leave the f64 range
    if is_inner {
        let r = match span {
            Some(len) => integrate_span_scaled(f, lo, len, opts)?,
            None => integrate_scaled(f, lo, hi, opts)?,
        };
        return Ok(Raw { r: r.result, ln_scale: r.ln_scale, converged: r.converged });
    }
    let r = match span {
        Some(len) => integrate_span(f, lo, len, opts),
        None => integrate(f, lo, hi, opts),
    };
    match r {
        Ok(r) => Ok(Raw { r: QuadResult { err_est: charge(r.level, r.err_est), ..r }, ln_scale: 0.0, converged: true }),
        Err(Error::NoConvergence { value, err_est }) => Ok(Raw {
            r: QuadResult { value, err_est: charge(opts.max_level, err_est), level: opts.max_level, evaluations: 0 },
            ln_scale: 0.0,
            converged: false,
        }),
        Err(e) => Err(e),
    }
}

/// The integral of `spec` (including its gamma factor) at the point `at`.
fn integral_value(
    spec: &IntegralSpec,
    env: &Env,
    at: At,
    opts: &QuadOptions,
    inner_opts: &QuadOptions,
) -> Result<QuadResult> {
    let raw = integral_raw(spec, env, at, opts, inner_opts, false)?;
    let g = gamma_factor(&spec.gammas, env)?;
    let r = raw.r;
    if !raw.converged {
        let gv = g.value();
        return Err(Error::NoConvergence { value: r.value * gv, err_est: r.err_est * gv.abs() });
    }
    let gv = g.try_value()?;
    Ok(QuadResult { value: r.value * gv, err_est: r.err_est * gv.abs(), ..r })
}

/// Inner integral of a composition at an outer node, as a scaled value, the
/// log of its error estimate, and whether it converged.
fn inner_value(spec: &IntegralSpec, env: &Env, at: At, opts: &QuadOptions) -> Result<(Scaled, f64, bool)> {
    let raw = integral_raw(spec, env, at, opts, opts, true)?;
    let g = gamma_factor(&spec.gammas, env)?;
    let value = Scaled::new(raw.r.value, raw.ln_scale) * g;
    let ln_err = raw.r.err_est.ln() + raw.ln_scale + g.ln_abs();
    Ok((value, ln_err, raw.converged))
}

/// Left side realized at a parameter point: the integrand with its endpoint
/// exponents, and the interval.
pub struct RealizedLhs<'s> {
    pub integrand: SingularIntegrand<'s>,
    pub lo: f64,
    pub hi: f64,
    /// Gamma-ratio constant multiplying the integral.
    pub factor: f64,
    spec: &'s IntegralSpec,
    env: Env,
    x: f64,
    opts: RealizeOptions,
}

impl RealizedLhs<'_> {
    /// Integrate with the configured tolerances.
    pub fn integrate(&self) -> Result<LhsValue> {
        let inner = QuadOptions { rel_tol: self.opts.inner_rel_tol, abs_tol: 1e-300, ..self.opts.quad };
        let r = integral_value(self.spec, &self.env, At::plain(self.x), &self.opts.quad, &inner)?;
        Ok(LhsValue { value: r.value, err_est: r.err_est, level: r.level, evaluations: r.evaluations })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhsValue {
    pub value: f64,
    pub err_est: f64,
    pub level: u32,
    pub evaluations: usize,
}

/// Build the left-side integrand. Fails with `NonIntegrable` if an endpoint
/// exponent at this point violates integrability.
pub fn realize_lhs<'s>(spec: &'s IdentitySpec, pt: &ParamPoint, opts: RealizeOptions) -> Result<RealizedLhs<'s>> {
    let env = pt.env();
    let x = pt.x;
    if !spec.x_domain.iter().any(|i| i.contains(x)) {
        return Err(Error::domain(format!("x-domain of {}", spec.id), x));
    }
    let ends = lhs_endpoint_exponents(spec, pt);
    for e in &ends {
        if !(e.margin() > 0.0) {
            return Err(Error::NonIntegrable(format!("{}: exponents {:?} at {:?}", spec.id, e.exponents, e.bound)));
        }
    }
    let lhs = &spec.lhs;
    let bounds = lhs.region.bounds(x);
    let at = At::plain(x);
    let (lo, hi) = (bound_value(bounds.0, at), bound_value(bounds.1, at));
    let pick = |e: &Endpoint| -> f64 {
        if e.is_infinite() {
            e.exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        } else {
            e.exponents.iter().cloned().fold(f64::INFINITY, f64::min)
        }
    };
    let inner_opts = QuadOptions { rel_tol: opts.inner_rel_tol, abs_tol: 1e-300, ..opts.quad };
    let core = move |n: Node| integrand_at(lhs, &env, at, bounds, n, &inner_opts, None);
    let mut integrand = SingularIntegrand::new(core).exponents(
        if ends[0].is_infinite() { 0.0 } else { pick(&ends[0]) },
        if ends[1].is_infinite() { 0.0 } else { pick(&ends[1]) },
    );
    if let Some(inf) = ends[..2].iter().find(|e| e.is_infinite()) {
        integrand = integrand.decay(pick(inf));
    }
    let factor = gamma_factor(&lhs.gammas, &env)?.try_value()?;
    Ok(RealizedLhs { integrand, lo, hi, factor, spec: lhs, env, x, opts })
}

/// Evaluate a closed form at `x` given an accurate `1 - x`.
fn closed_value(cf: &ClosedFormSpec, env: &Env, x: f64, one_minus_x: f64) -> Result<Scaled> {
    let g = gamma_factor(&cf.gammas, env)?;
    if g.is_zero() {
        return Ok(Scaled::ZERO);
    }
    let xe = cf.x_exponent.eval(env);
    let oxe = cf.one_minus_x_exponent.eval(env);
    let mut ln_p = 0.0;
    if xe != 0.0 {
        ln_p += xe * x.abs().ln();
    }
    if oxe != 0.0 {
        ln_p += oxe * one_minus_x.abs().ln();
    }
    let outer = match &cf.outer {
        Outer::Fn(kind, map) => eval_w_split(kind.solution(), x, one_minus_x, &map.eval(env))?,
        Outer::F32(p) => {
            let v: Vec<f64> = p.iter().map(|e| e.eval(env)).collect();
            Scaled::from_f64(hyp3f2(v[0], v[1], v[2], v[3], v[4], x)?)
        }
    };
    Ok((g * outer).shift(ln_p))
}

/// Closed-form right side; exactly zero when a denominator gamma argument is
/// a non-positive integer.
pub fn realize_rhs(spec: &IdentitySpec, pt: &ParamPoint) -> Result<f64> {
    closed_value(&spec.rhs, &pt.env(), pt.x, 1.0 - pt.x)?.try_value()
}

/// For a composition identity: the inner integral evaluated directly at `y`
/// and its closed form, as `(integral, closed form)`.
pub fn nested_inner_check(spec: &IdentitySpec, pt: &ParamPoint, y: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let Inner::Nested(inner, cf) = &spec.lhs.inner else {
        return Err(Error::Constraint(format!("{} has no nested integral", spec.id)));
    };
    let env = pt.env();
    let opts = QuadOptions::with_rel_tol(rel_tol);
    let direct = integral_value(inner, &env, At::plain(y), &opts, &opts)?.value;
    Ok((direct, closed_value(cf, &env, y, 1.0 - y)?.try_value()?))
}
