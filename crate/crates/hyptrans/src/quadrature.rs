//! Double-exponential quadrature for integrands with algebraic endpoint
//! singularities.
//!
//! Finite intervals use tanh-sinh, `y = m + (M-m)/(1 + exp(-2s))` with
//! `s = (pi/2) sinh t`, and semi-infinite ones use exp-sinh, `y = m + exp(s)`.
//! The integrand receives the distances to both endpoints computed directly
//! from `s`, so factors like `(y - m)^{-0.9}` keep full relative accuracy at
//! nodes 1e-270 away from `m`. Weights are carried as logarithms and the
//! integrand returns a [`Scaled`], so neither overflows at |y| ~ 1e290.
//!
//! Level k uses step `2^-k` in t and reuses every node of level k-1. The error
//! estimate is the larger of the last level difference, a rounding floor and
//! the size of the outermost terms.

use crate::error::{Error, Result};
use crate::scaled::Scaled;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_HALF_PI: f64 = 0.451_582_705_289_454_9;
const FINITE_T_MAX: f64 = 6.0;
const SEMI_T_MAX: f64 = 6.7;

/// Quadrature node: abscissa plus distances to the lower and upper endpoint
/// (infinite for an infinite endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub y: f64,
    pub dl: f64,
    pub dr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    /// Convergence is also accepted once the error estimate is below this.
    pub abs_tol: f64,
    pub min_level: u32,
    pub max_level: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-10, abs_tol: 1e-300, min_level: 3, max_level: 12 }
    }
}

impl QuadOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadOptions { rel_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub level: u32,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PosInf,
    NegInf,
}

/// Integrand with declared endpoint behaviour: `~ (y-m)^left_exponent` at the
/// lower end, `~ (M-y)^right_exponent` at the upper end and `~ |y|^decay_exponent`
/// at an infinite end.
pub struct SingularIntegrand<'a> {
    pub core: Box<dyn Fn(Node) -> Result<Scaled> + Send + Sync + 'a>,
    pub left_exponent: f64,
    pub right_exponent: f64,
    pub decay_exponent: Option<f64>,
}

impl<'a> SingularIntegrand<'a> {
    pub fn new(core: impl Fn(Node) -> Result<Scaled> + Send + Sync + 'a) -> Self {
        SingularIntegrand { core: Box::new(core), left_exponent: 0.0, right_exponent: 0.0, decay_exponent: None }
    }

    /// Plain f64 integrand of the abscissa only.
    pub fn plain(f: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        Self::new(move |n: Node| Ok(Scaled::from_f64(f(n.y))))
    }

    pub fn exponents(mut self, left: f64, right: f64) -> Self {
        self.left_exponent = left;
        self.right_exponent = right;
        self
    }

    pub fn decay(mut self, d: f64) -> Self {
        self.decay_exponent = Some(d);
        self
    }

    fn check_finite_ends(&self) -> Result<()> {
        if !(self.left_exponent > -1.0) {
            return Err(Error::NonIntegrable(format!("left exponent {}", self.left_exponent)));
        }
        if !(self.right_exponent > -1.0) {
            return Err(Error::NonIntegrable(format!("right exponent {}", self.right_exponent)));
        }
        Ok(())
    }

    fn check_decay(&self) -> Result<()> {
        match self.decay_exponent {
            Some(d) if d < -1.0 => Ok(()),
            Some(d) => Err(Error::NonIntegrable(format!("decay exponent {d}"))),
            None => Err(Error::NonIntegrable("missing decay exponent for an infinite end".into())),
        }
    }
}

pub fn integrate_finite(f: &SingularIntegrand<'_>, m: f64, big_m: f64, rel_tol: f64) -> Result<QuadResult> {
    integrate_finite_with(f, m, big_m, &QuadOptions::with_rel_tol(rel_tol))
}

pub fn integrate_finite_with(f: &SingularIntegrand<'_>, m: f64, big_m: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if !(m.is_finite() && big_m.is_finite() && m < big_m) {
        return Err(Error::domain("finite interval", m));
    }
    f.check_finite_ends()?;
    de_sum(|n| (f.core)(n), Rule::TanhSinh { m, big_m, len: big_m - m }, opts)
}

pub fn integrate_semi_infinite(
    f: &SingularIntegrand<'_>,
    finite_end: f64,
    direction: Direction,
    rel_tol: f64,
) -> Result<QuadResult> {
    integrate_semi_infinite_with(f, finite_end, direction, &QuadOptions::with_rel_tol(rel_tol))
}

pub fn integrate_semi_infinite_with(
    f: &SingularIntegrand<'_>,
    finite_end: f64,
    direction: Direction,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !finite_end.is_finite() {
        return Err(Error::domain("semi-infinite interval end", finite_end));
    }
    let end_exp = match direction {
        Direction::PosInf => f.left_exponent,
        Direction::NegInf => f.right_exponent,
    };
    if !(end_exp > -1.0) {
        return Err(Error::NonIntegrable(format!("finite-end exponent {end_exp}")));
    }
    f.check_decay()?;
    de_sum(|n| (f.core)(n), Rule::ExpSinh { end: finite_end, direction }, opts)
}

/// Integrate over `(lo, hi)` with either end possibly infinite. No exponent
/// checks; used for realized catalog integrands whose integrability follows
/// from the identity constraints.
pub fn integrate(f: impl FnMut(Node) -> Result<Scaled>, lo: f64, hi: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if !(lo < hi) {
        return Err(Error::domain("integration interval", lo));
    }
    let rule = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => Rule::TanhSinh { m: lo, big_m: hi, len: hi - lo },
        (true, false) => Rule::ExpSinh { end: lo, direction: Direction::PosInf },
        (false, true) => Rule::ExpSinh { end: hi, direction: Direction::NegInf },
        (false, false) => return Err(Error::domain("doubly infinite interval", lo)),
    };
    de_sum(f, rule, opts)
}

/// Integrate over a finite interval `(lo, lo + len)` whose length is known
/// more accurately than `hi - lo` would give, e.g. `(1, y)` with `y - 1`
/// below the resolution of `y`.
pub fn integrate_span(
    f: impl FnMut(Node) -> Result<Scaled>,
    lo: f64,
    len: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !(lo.is_finite() && len > 0.0 && len.is_finite()) {
        return Err(Error::domain("integration span", len));
    }
    de_sum(f, Rule::TanhSinh { m: lo, big_m: lo + len, len }, opts)
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    TanhSinh { m: f64, big_m: f64, len: f64 },
    ExpSinh { end: f64, direction: Direction },
}

impl Rule {
    fn t_max(&self) -> f64 {
        match self {
            Rule::TanhSinh { .. } => FINITE_T_MAX,
            Rule::ExpSinh { .. } => SEMI_T_MAX,
        }
    }

    /// Node and log-weight at parameter t.
    fn node(&self, t: f64) -> (Node, f64) {
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let ln_cosh_t = t.abs() + (-2.0 * t.abs()).exp().ln_1p() - std::f64::consts::LN_2;
        match *self {
            Rule::TanhSinh { m, big_m, len } => {
                let e = (-2.0 * s.abs()).exp();
                // distance to the near end is len*e/(1+e), to the far end len/(1+e)
                let near = len * e / (1.0 + e);
                let far = len / (1.0 + e);
                let (dl, dr) = if s >= 0.0 { (far, near) } else { (near, far) };
                let y = if dl <= dr { m + dl } else { big_m - dr };
                let ln_w = len.ln() + LN_PI + ln_cosh_t - 2.0 * s.abs() - 2.0 * e.ln_1p();
                (Node { y, dl, dr }, ln_w)
            }
            Rule::ExpSinh { end, direction } => {
                let d = s.exp();
                let ln_w = LN_HALF_PI + ln_cosh_t + s;
                let node = match direction {
                    Direction::PosInf => Node { y: end + d, dl: d, dr: f64::INFINITY },
                    Direction::NegInf => Node { y: end - d, dl: f64::INFINITY, dr: d },
                };
                (node, ln_w)
            }
        }
    }
}

fn de_sum(f: impl FnMut(Node) -> Result<Scaled>, rule: Rule, opts: &QuadOptions) -> Result<QuadResult> {
    let out = de_core(f, rule, opts, false)?;
    if out.converged {
        Ok(out.result)
    } else {
        Err(Error::NoConvergence { value: out.result.value, err_est: out.result.err_est })
    }
}

/// Result of a rescaled integration: the integral is
/// `result.value * exp(ln_scale)`, and likewise for the error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledQuadResult {
    pub result: QuadResult,
    pub ln_scale: f64,
    pub converged: bool,
}

impl ScaledQuadResult {
    pub fn value(&self) -> Scaled {
        Scaled::new(self.result.value, self.ln_scale)
    }
}

/// As [`integrate`], for integrals whose magnitude may lie outside the f64
/// range. Non-convergence is reported in the result rather than as an error.
pub fn integrate_scaled(
    f: impl FnMut(Node) -> Result<Scaled>,
    lo: f64,
    hi: f64,
    opts: &QuadOptions,
) -> Result<ScaledQuadResult> {
    if !(lo < hi) {
        return Err(Error::domain("integration interval", lo));
    }
    let rule = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => Rule::TanhSinh { m: lo, big_m: hi, len: hi - lo },
        (true, false) => Rule::ExpSinh { end: lo, direction: Direction::PosInf },
        (false, true) => Rule::ExpSinh { end: hi, direction: Direction::NegInf },
        (false, false) => return Err(Error::domain("doubly infinite interval", lo)),
    };
    de_core(f, rule, opts, true)
}

/// As [`integrate_span`], rescaled like [`integrate_scaled`].
pub fn integrate_span_scaled(
    f: impl FnMut(Node) -> Result<Scaled>,
    lo: f64,
    len: f64,
    opts: &QuadOptions,
) -> Result<ScaledQuadResult> {
    if !(lo.is_finite() && len > 0.0 && len.is_finite()) {
        return Err(Error::domain("integration span", len));
    }
    de_core(f, Rule::TanhSinh { m: lo, big_m: lo + len, len }, opts, true)
}

/// Terms more than this far above the running scale trigger a rescale.
const RESCALE_LN: f64 = 300.0;

fn de_core(
    mut f: impl FnMut(Node) -> Result<Scaled>,
    rule: Rule,
    opts: &QuadOptions,
    rescale: bool,
) -> Result<ScaledQuadResult> {
    let t_max = rule.t_max();
    let mut ln_scale: Option<f64> = if rescale { None } else { Some(0.0) };
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut edge = 0.0f64;
    let mut evaluations = 0;
    let mut prev: Option<f64> = None;
    let mut best = QuadResult { value: 0.0, err_est: f64::INFINITY, level: 0, evaluations: 0 };

    for level in 0..=opts.max_level {
        let h = (0.5f64).powi(level as i32);
        let n = (t_max / h).floor() as i64;
        let step = if level == 0 { 1 } else { 2 };
        let first = if level == 0 {
            -n
        } else if (-n) % 2 == 0 {
            -n + 1
        } else {
            -n
        };
        let mut j = first;
        while j <= n {
            let t = j as f64 * h;
            let (node, ln_w) = rule.node(t);
            let v = f(node)?;
            evaluations += 1;
            if !v.is_zero() {
                let ln_term = v.ln_abs() + ln_w;
                let scale = match ln_scale {
                    Some(old) if rescale && ln_term > old + RESCALE_LN => {
                        let k = (old - ln_term).exp();
                        sum *= k;
                        abs_sum *= k;
                        edge *= k;
                        prev = prev.map(|p| p * k);
                        ln_scale = Some(ln_term);
                        ln_term
                    }
                    Some(old) => old,
                    None => {
                        ln_scale = Some(ln_term);
                        ln_term
                    }
                };
                let term = v.signum() * (ln_term - scale).exp();
                if !term.is_finite() {
                    return Err(Error::Overflow(ln_term));
                }
                sum += term;
                abs_sum += term.abs();
                if j.abs() == n {
                    edge = edge.max(term.abs());
                }
            }
            j += step;
        }
        let value = h * sum;
        let floor = 8.0 * f64::EPSILON * h * abs_sum + edge;
        let err_est = match prev {
            Some(p) => (value - p).abs().max(floor),
            None => f64::INFINITY,
        };
        best = QuadResult { value, err_est, level, evaluations };
        if level >= opts.min_level && (err_est <= opts.rel_tol * value.abs() || err_est <= opts.abs_tol) {
            return Ok(ScaledQuadResult { result: best, ln_scale: ln_scale.unwrap_or(0.0), converged: true });
        }
        prev = Some(value);
    }
    Ok(ScaledQuadResult { result: best, ln_scale: ln_scale.unwrap_or(0.0), converged: false })
}
