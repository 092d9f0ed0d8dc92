//! The hypergeometric operator
//! `L_{a,b,c} f = x(1-x) f'' + (c - (a+b+1) x) f' - ab f`,
//! the first-order factor `D_alpha f = x f' + alpha f`, and residual checks for
//! the adjoint lemma and the transmutation kernels.
//!
//! Functions carry exact first and second derivatives when they are built
//! from power products and 2F1 (product rule plus dF/dz = (ab/c) F(a+1,b+1;c+1;z)).
//! Anything else falls back to five-point central differences.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Affine, Env};
use crate::solutions::{in_domain, Interval, SolutionKind};
use crate::special::{hyp2f1, HypParams};

/// Value with first and second derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    /// The identity function at x.
    pub const fn var(x: f64) -> Self {
        Jet { v: x, d1: 1.0, d2: 0.0 }
    }

    pub fn scale(self, k: f64) -> Self {
        Jet { v: k * self.v, d1: k * self.d1, d2: k * self.d2 }
    }

    /// `g(u(x))` given `(g, g', g'')` at `u(x)`.
    pub fn compose(outer: Jet, inner: Jet) -> Jet {
        Jet { v: outer.v, d1: outer.d1 * inner.d1, d2: outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2 }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

type ValueFn = dyn Fn(f64) -> Result<f64> + Send + Sync;
type JetFn = dyn Fn(f64) -> Result<Jet> + Send + Sync;

/// A real function of one variable, optionally with exact derivatives.
#[derive(Clone)]
pub struct SmoothFn {
    value: Arc<ValueFn>,
    jet: Option<Arc<JetFn>>,
    /// 2 when exact first and second derivatives are available, 0 otherwise.
    pub derivative_order: u8,
    /// Open interval on which the function is defined; finite differences
    /// must not leave it.
    pub domain: Interval,
}

impl std::fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFn")
            .field("derivative_order", &self.derivative_order)
            .field("domain", &self.domain)
            .finish()
    }
}

const WHOLE_LINE: Interval = Interval::new(f64::NEG_INFINITY, f64::INFINITY);

impl SmoothFn {
    /// Function known only through its values.
    pub fn from_fn(domain: Interval, f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        SmoothFn { value: Arc::new(f), jet: None, derivative_order: 0, domain }
    }

    /// Function with exact derivatives.
    pub fn from_jet(domain: Interval, j: impl Fn(f64) -> Result<Jet> + Send + Sync + 'static) -> Self {
        let j: Arc<JetFn> = Arc::new(j);
        let jv = j.clone();
        SmoothFn { value: Arc::new(move |x| jv(x).map(|t| t.v)), jet: Some(j), derivative_order: 2, domain }
    }

    pub fn constant(v: f64) -> Self {
        Self::from_jet(WHOLE_LINE, move |_| Ok(Jet::constant(v)))
    }

    /// `sum_k coeffs[k] x^k`.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::from_jet(WHOLE_LINE, move |x| {
            let mut acc = Jet::constant(0.0);
            for c in coeffs.iter().rev() {
                acc = acc * Jet::var(x) + Jet::constant(*c);
            }
            Ok(acc)
        })
    }

    /// `scale * prod_i |x - root_i|^{exp_i}` on the interval between roots
    /// containing `domain`.
    pub fn power_product(scale: f64, factors: Vec<(f64, f64)>, domain: Interval) -> Self {
        Self::from_jet(domain, move |x| Ok(power_product_jet(scale, &factors, x)))
    }

    /// `exp(-(x - center)^2 / sigma^2)`.
    pub fn gaussian(center: f64, sigma: f64) -> Self {
        Self::from_jet(WHOLE_LINE, move |x| {
            let u = (x - center) / sigma;
            let g = (-u * u).exp();
            let d1 = -2.0 * u / sigma * g;
            let d2 = (4.0 * u * u - 2.0) / (sigma * sigma) * g;
            Ok(Jet::new(g, d1, d2))
        })
    }

    /// The solution `w_kind(.; p)` on the domain component containing `near`.
    pub fn solution(kind: SolutionKind, p: HypParams, near: f64) -> Result<Self> {
        let domain = crate::solutions::domain_of(kind)
            .into_iter()
            .find(|i| i.contains(near))
            .ok_or_else(|| Error::domain(format!("{kind}"), near))?;
        Ok(Self::from_jet(domain, move |x| w_jet(kind, x, &p)))
    }

    pub fn value_at(&self, x: f64) -> Result<f64> {
        (self.value)(x)
    }

    /// Value and derivatives, exact when available.
    pub fn jet_at(&self, x: f64) -> Result<Jet> {
        match &self.jet {
            Some(j) => j(x),
            None => self.fd_jet(x),
        }
    }

    /// Five-point central differences.
    pub fn fd_jet(&self, x: f64) -> Result<Jet> {
        self.fd_jet_step(x, fd_step(x))
    }

    pub fn fd_jet_step(&self, x: f64, h: f64) -> Result<Jet> {
        if !(self.domain.contains(x - 2.0 * h) && self.domain.contains(x + 2.0 * h)) {
            return Err(Error::domain("finite-difference stencil", x));
        }
        let f = |t: f64| (self.value)(t);
        let (fm2, fm1, f0, fp1, fp2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        Ok(Jet::new(f0, d1, d2))
    }

    /// Product of two functions; exact when both factors are.
    pub fn times(&self, o: &SmoothFn) -> SmoothFn {
        let domain = intersect(self.domain, o.domain);
        match (&self.jet, &o.jet) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                SmoothFn::from_jet(domain, move |x| Ok(a(x)? * b(x)?))
            }
            _ => {
                let (a, b) = (self.value.clone(), o.value.clone());
                SmoothFn::from_fn(domain, move |x| Ok(a(x)? * b(x)?))
            }
        }
    }
}

fn intersect(a: Interval, b: Interval) -> Interval {
    Interval::new(a.lo.max(b.lo), a.hi.min(b.hi))
}

/// Step for the five-point stencils. Balances truncation (h^4) against
/// rounding (eps/h^2) for the second derivative.
pub fn fd_step(x: f64) -> f64 {
    1e-3 * x.abs().max(1.0)
}

pub fn power_product_jet(scale: f64, factors: &[(f64, f64)], x: f64) -> Jet {
    let mut ln = 0.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    let mut sign = scale.signum();
    for &(root, e) in factors {
        if e == 0.0 {
            continue;
        }
        let d = x - root;
        ln += e * d.abs().ln();
        s1 += e / d;
        s2 += e / (d * d);
    }
    if scale == 0.0 {
        sign = 0.0;
    }
    let v = sign * (ln + scale.abs().ln()).exp();
    Jet::new(v, v * s1, v * (s1 * s1 - s2))
}

/// (F, dF/dz, d2F/dz2) of 2F1 at z.
pub fn f21_jet(p: &HypParams, z: f64) -> Result<Jet> {
    let HypParams { a, b, c } = *p;
    let f0 = hyp2f1(p, z)?;
    let f1 = d2f1(p, z)?;
    let k2 = a * b * (a + 1.0) * (b + 1.0) / (c * (c + 1.0));
    let f2 = if k2 == 0.0 { 0.0 } else { k2 * hyp2f1(&HypParams::raw(a + 2.0, b + 2.0, c + 2.0), z)? };
    Ok(Jet::new(f0, f1, f2))
}

/// dF/dz = (ab/c) F(a+1, b+1; c+1; z).
pub fn d2f1(p: &HypParams, z: f64) -> Result<f64> {
    if p.c == 0.0 {
        return Err(Error::Pole(0.0));
    }
    let k = p.a * p.b / p.c;
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok(k * hyp2f1(&HypParams::raw(p.a + 1.0, p.b + 1.0, p.c + 1.0), z)?)
}

/// Exact jet of `w_kind(x; p)`.
pub fn w_jet(kind: SolutionKind, x: f64, p: &HypParams) -> Result<Jet> {
    if !in_domain(kind, x) {
        return Err(Error::domain(format!("{kind}"), x));
    }
    let HypParams { a, b, c } = *p;
    let (inner, arg, pre): (HypParams, Jet, Vec<(f64, f64)>) = match kind {
        SolutionKind::W1 => (*p, Jet::var(x), vec![]),
        SolutionKind::W2 => (HypParams::raw(a - c + 1.0, b - c + 1.0, 2.0 - c), Jet::var(x), vec![(0.0, 1.0 - c)]),
        SolutionKind::W3 | SolutionKind::W4 => {
            let (s, t) = if kind == SolutionKind::W3 { (a, b) } else { (b, a) };
            let u = Jet::new(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
            (HypParams::raw(s, s - c + 1.0, s - t + 1.0), u, vec![(0.0, -s)])
        }
        SolutionKind::W5 => (HypParams::raw(a, b, a + b - c + 1.0), Jet::new(1.0 - x, -1.0, 0.0), vec![]),
        SolutionKind::W6 => {
            (HypParams::raw(c - a, c - b, c - a - b + 1.0), Jet::new(1.0 - x, -1.0, 0.0), vec![(1.0, c - a - b)])
        }
    };
    let f = Jet::compose(f21_jet(&inner, arg.v)?, arg);
    Ok(power_product_jet(1.0, &pre, x) * f)
}

/// `L_{a,b,c}` applied to a jet at x.
pub fn l_of_jet(p: &HypParams, j: Jet, x: f64) -> f64 {
    x * (1.0 - x) * j.d2 + (p.c - (p.a + p.b + 1.0) * x) * j.d1 - p.a * p.b * j.v
}

pub fn apply_l(p: &HypParams, f: &SmoothFn, x: f64) -> Result<f64> {
    Ok(l_of_jet(p, f.jet_at(x)?, x))
}

pub fn apply_d(alpha: f64, f: &SmoothFn, x: f64) -> Result<f64> {
    let j = f.jet_at(x)?;
    Ok(x * j.d1 + alpha * j.v)
}

/// `(L_p f) g - f (L_{1-a,1-b,2-c} g) - d/dx[concomitant]`; the outer
/// derivative is a five-point central difference.
pub fn adjoint_residual(p: &HypParams, f: &SmoothFn, g: &SmoothFn, x: f64) -> Result<f64> {
    let adj = HypParams::raw(1.0 - p.a, 1.0 - p.b, 2.0 - p.c);
    let fj = f.jet_at(x)?;
    let gj = g.jet_at(x)?;
    let lhs = l_of_jet(p, fj, x) * gj.v - fj.v * l_of_jet(&adj, gj, x);
    let conc = |t: f64| -> Result<f64> {
        let fj = f.jet_at(t)?;
        let gj = g.jet_at(t)?;
        Ok(t * (1.0 - t) * (fj.d1 * gj.v - fj.v * gj.d1) + (p.c - 1.0 + (1.0 - p.a - p.b) * t) * fj.v * gj.v)
    };
    let h = fd_step(x);
    let dom = intersect(f.domain, g.domain);
    if !(dom.contains(x - 2.0 * h) && dom.contains(x + 2.0 * h)) {
        return Err(Error::domain("concomitant stencil", x));
    }
    let d = (conc(x - 2.0 * h)? - 8.0 * conc(x - h)? + 8.0 * conc(x + h)? - conc(x + 2.0 * h)?) / (12.0 * h);
    Ok(lhs - d)
}

/// Second factor of a transmutation row: w2(y)/v2(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SecondWeight {
    One,
    /// |y| / |x|
    Abs,
    /// (1 - y) / (1 - x)
    OneMinus,
}

/// One row of the transmutation table:
/// `L_{a',b',c';x}(w(y)/v(x) |x-y|^{mu-1}) = L_{1-a,1-b,2-c;y}(w(y)w2(y)/(v(x)v2(x)) |x-y|^{mu-1})`
/// with `w(y) = |y|^{w_abs} (1-y)^{w_one}` and `v(x) = |x|^{v_abs} (1-x)^{v_one}`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TransmutationCase {
    pub name: &'static str,
    /// a' = a + shift[0] mu, b' = b + shift[1] mu, c' = c + shift[2] mu
    pub shift: [i32; 3],
    pub x0: f64,
    pub w_abs: Affine,
    pub w_one: Affine,
    pub v_abs: Affine,
    pub v_one: Affine,
    pub second: SecondWeight,
    pub j: Vec<Interval>,
}

impl TransmutationCase {
    pub fn primed(&self, p: &HypParams, mu: f64) -> HypParams {
        HypParams::raw(
            p.a + self.shift[0] as f64 * mu,
            p.b + self.shift[1] as f64 * mu,
            p.c + self.shift[2] as f64 * mu,
        )
    }

    /// The integration interval I with endpoints x and x0.
    pub fn interval(&self, x: f64) -> Interval {
        if self.x0 < x {
            Interval::new(self.x0, x)
        } else {
            Interval::new(x, self.x0)
        }
    }

    fn env(p: &HypParams, mu: f64) -> Env {
        [p.a, p.b, p.c, mu, 0.0, 0.0, 0.0]
    }

    /// Exponents of |y| and (1-y) in w(y)w2(y).
    pub fn weight_exponents(&self, p: &HypParams, mu: f64) -> (f64, f64) {
        let env = Self::env(p, mu);
        let (mut e0, mut e1) = (self.w_abs.eval(&env), self.w_one.eval(&env));
        match self.second {
            SecondWeight::One => {}
            SecondWeight::Abs => e0 += 1.0,
            SecondWeight::OneMinus => e1 += 1.0,
        }
        (e0, e1)
    }
}

const NEG_INF: f64 = f64::NEG_INFINITY;

/// The eight rows, one per fractional-integral family.
pub fn transmutation_cases() -> Vec<TransmutationCase> {
    let fam0 = vec![Interval::new(NEG_INF, 0.0), Interval::new(0.0, 1.0)];
    let fam1 = vec![Interval::new(NEG_INF, 1.0)];
    let row = |name, shift, x0, w: [&str; 2], v: [&str; 2], second, j: &Vec<Interval>| TransmutationCase {
        name,
        shift,
        x0,
        w_abs: Affine::p(w[0]),
        w_one: Affine::p(w[1]),
        v_abs: Affine::p(v[0]),
        v_one: Affine::p(v[1]),
        second,
        j: j.clone(),
    };
    vec![
        row("c+", [0, 0, 1], 0.0, ["c-1", "0"], ["c+mu-1", "0"], SecondWeight::One, &fam0),
        row("a+,c+", [1, 0, 1], 0.0, ["c-1", "b-c-mu"], ["c+mu-1", "b-c"], SecondWeight::OneMinus, &fam0),
        row("a+,b+,c+", [1, 1, 1], 0.0, ["c-1", "a+b-c"], ["c+mu-1", "a+b-c+mu"], SecondWeight::One, &fam0),
        row("a-", [-1, 0, 0], 0.0, ["a-mu-1", "0"], ["a-1", "0"], SecondWeight::Abs, &fam0),
        row("a+", [1, 0, 0], 0.0, ["c-a-mu-1", "a+b-c"], ["c-a-1", "a+b-c+mu"], SecondWeight::Abs, &fam0),
        row("a-,b-,c-", [-1, -1, -1], NEG_INF, ["0", "0"], ["0", "0"], SecondWeight::One, &fam1),
        row("a-,c-", [-1, 0, -1], 1.0, ["0", "a-mu-1"], ["0", "a-1"], SecondWeight::OneMinus, &fam1),
        row("c-", [0, 0, -1], NEG_INF, ["0", "a+b-c"], ["0", "a+b-c+mu"], SecondWeight::One, &fam1),
    ]
}

pub fn transmutation_case(name: &str) -> Result<TransmutationCase> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    transmutation_cases().into_iter().find(|c| c.name == key).ok_or_else(|| Error::UnknownCase(name.to_string()))
}

/// Both sides of the kernel identity at (x, y).
pub fn kernel_sides(case: &TransmutationCase, p: &HypParams, mu: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    if !case.j.iter().any(|i| i.contains(x)) || !case.interval(x).contains(y) {
        return Err(Error::domain(format!("kernel region of case {}", case.name), y));
    }
    let env = TransmutationCase::env(p, mu);
    let (wa, wo) = (case.w_abs.eval(&env), case.w_one.eval(&env));
    let (va, vo) = (case.v_abs.eval(&env), case.v_one.eval(&env));
    let w_y = power_product_jet(1.0, &[(0.0, wa), (1.0, wo)], y).v;

    // As a function of x: w(y) |x|^{-va} |1-x|^{-vo} |x-y|^{mu-1}
    let kx = power_product_jet(w_y, &[(0.0, -va), (1.0, -vo), (y, mu - 1.0)], x);
    let lhs = l_of_jet(&case.primed(p, mu), kx, x);

    let (e0, e1) = case.weight_exponents(p, mu);
    let (s0, s1) = match case.second {
        SecondWeight::One => (0.0, 0.0),
        SecondWeight::Abs => (1.0, 0.0),
        SecondWeight::OneMinus => (0.0, 1.0),
    };
    let inv_v = power_product_jet(1.0, &[(0.0, -(va + s0)), (1.0, -(vo + s1))], x).v;
    let ky = power_product_jet(inv_v, &[(0.0, e0), (1.0, e1), (x, mu - 1.0)], y);
    let rhs = l_of_jet(&HypParams::raw(1.0 - p.a, 1.0 - p.b, 2.0 - p.c), ky, y);
    Ok((lhs, rhs))
}

pub fn kernel_residual(case: &TransmutationCase, p: &HypParams, mu: f64, x: f64, y: f64) -> Result<f64> {
    let (l, r) = kernel_sides(case, p, mu, x, y)?;
    Ok(l - r)
}

/// `|lhs - rhs| / (1 + |lhs|)`.
pub fn normalized_kernel_residual(case: &TransmutationCase, p: &HypParams, mu: f64, x: f64, y: f64) -> Result<f64> {
    let (l, r) = kernel_sides(case, p, mu, x, y)?;
    Ok((l - r).abs() / (1.0 + l.abs()))
}
