//! Scalar special functions on the real line: log-gamma with sign, gamma
//! ratios, Pochhammer symbols, the Gauss function 2F1 for real z < 1 and a
//! plain 3F2 series.
//!
//! 2F1 dispatch (a and b are put in canonical order first, so the result is
//! bit-for-bit symmetric in a and b):
//!
//! | z                | method                                                     |
//! |------------------|------------------------------------------------------------|
//! | [-0.5, 0.6]      | power series                                               |
//! | (0.6, 1)         | connection formula in 1 - z                                |
//! | [-1.5, -0.5)     | Pfaff map z/(z-1), then power series                       |
//! | (-inf, -1.5)     | connection formula in 1/(1 - z)                            |
//!
//! The connection formulas divide by a gamma function that blows up when
//! c-a-b (resp. b-a) is an integer. Within [`DEGENERATE_GAP`] of an integer the
//! series in the mapped variable is used if its argument is at most 0.9,
//! otherwise the value is interpolated from six evaluations at shifted
//! parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaled::{Scaled, LN_MAX};

pub const MAX_TERMS: usize = 20_000;
const SERIES_TOL: f64 = 0.5 * f64::EPSILON;
const POLE_TOL: f64 = 1e-14;
/// Series in the mapped variable is preferred over perturbation up to this argument.
const DEGENERATE_SERIES_MAX: f64 = 0.9;
pub const DEGENERATE_GAP: f64 = 1e-3;
const PERTURB_STEP: f64 = 4e-3;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Parameters (a, b, c) of the hypergeometric equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    /// Validated constructor: finite entries and c off the non-positive integers.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Constraint(format!("non-finite parameters ({a}, {b}, {c})")));
        }
        if is_nonpositive_integer(c) {
            return Err(Error::Pole(c));
        }
        Ok(HypParams { a, b, c })
    }

    /// Unchecked constructor for internally mapped parameters.
    pub const fn raw(a: f64, b: f64, c: f64) -> Self {
        HypParams { a, b, c }
    }

    pub fn swapped(self) -> Self {
        HypParams { a: self.b, b: self.a, c: self.c }
    }
}

/// Products of gamma functions over products of gamma functions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GammaRatioSpec {
    pub numerator_args: Vec<f64>,
    pub denominator_args: Vec<f64>,
}

impl GammaRatioSpec {
    pub fn new(numerator_args: Vec<f64>, denominator_args: Vec<f64>) -> Self {
        GammaRatioSpec { numerator_args, denominator_args }
    }
}

pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() <= POLE_TOL * x.abs().max(1.0)
}

/// Distance from `x` to the nearest integer.
pub fn integer_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// sin(pi x) with exact zeros at the integers.
pub fn sinpi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let s = r.abs();
    let v = if s <= 0.25 {
        (std::f64::consts::PI * s).sin()
    } else if s <= 0.75 {
        (std::f64::consts::PI * (s - 0.5)).cos()
    } else {
        (std::f64::consts::PI * (1.0 - s)).sin()
    };
    if r < 0.0 {
        -v
    } else {
        v
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma on [1, 2).
fn gamma_1_2(x: f64) -> f64 {
    let z = x - 1.0;
    let mut s = LANCZOS[0];
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        s += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * s
}

/// Gamma for 0.5 <= x <= 171, by upward recurrence from [1, 2).
fn gamma_moderate(x: f64) -> f64 {
    if x < 1.0 {
        return gamma_1_2(x + 1.0) / x;
    }
    let mut r = x;
    let mut prod = 1.0;
    while r >= 2.0 {
        r -= 1.0;
        prod *= r;
    }
    if r == 1.0 {
        return prod;
    }
    prod * gamma_1_2(r)
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let x2 = 1.0 / (x * x);
    let series =
        (1.0 / 12.0 + x2 * (-1.0 / 360.0 + x2 * (1.0 / 1260.0 + x2 * (-1.0 / 1680.0 + x2 * (1.0 / 1188.0))))) / x;
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series
}

/// `(ln|Γ(x)|, sign Γ(x))`.
pub fn ln_abs_gamma(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::domain("ln_abs_gamma", x));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let s = sinpi(x);
        let (lg, _) = ln_abs_gamma(1.0 - x)?;
        return Ok((LN_PI - s.abs().ln() - lg, s.signum()));
    }
    if x <= 171.0 {
        Ok((gamma_moderate(x).ln(), 1.0))
    } else {
        Ok((ln_gamma_stirling(x), 1.0))
    }
}

pub fn gamma(x: f64) -> Result<f64> {
    if (0.5..=171.0).contains(&x) {
        return Ok(gamma_moderate(x));
    }
    let (l, s) = ln_abs_gamma(x)?;
    Scaled::from_log(s, l).try_value()
}

/// 1/Γ(x), zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    match ln_abs_gamma(x) {
        Ok((l, s)) => s * (-l).exp(),
        Err(_) => 0.0,
    }
}

/// Gamma ratio as a [`Scaled`] number; exactly zero when a denominator
/// argument sits on a pole.
pub fn gamma_ratio_scaled(num: &[f64], den: &[f64]) -> Result<Scaled> {
    let mut l = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (lg, s) = ln_abs_gamma(x)?;
        l += lg;
        sign *= s;
    }
    for &x in den {
        if is_nonpositive_integer(x) {
            return Ok(Scaled::ZERO);
        }
        let (lg, s) = ln_abs_gamma(x)?;
        l -= lg;
        sign *= s;
    }
    Ok(Scaled::from_log(sign, l))
}

pub fn gamma_ratio(spec: &GammaRatioSpec) -> Result<f64> {
    let s = gamma_ratio_scaled(&spec.numerator_args, &spec.denominator_args)?;
    if s.is_zero() {
        return Ok(0.0);
    }
    if s.log_scale > LN_MAX {
        return Err(Error::Overflow(s.log_scale));
    }
    Ok(s.value())
}

/// Rising factorial (a)_k.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..k {
        p *= a + i as f64;
    }
    p
}

/// Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)), the value of 2F1 at z = 1.
pub fn gauss_sum(p: &HypParams) -> Result<f64> {
    let s = p.c - p.a - p.b;
    if s <= 0.0 {
        return Err(Error::Constraint(format!("Gauss sum needs c-a-b > 0, got {s}")));
    }
    gamma_ratio(&GammaRatioSpec::new(vec![p.c, s], vec![p.c - p.a, p.c - p.b]))
}

/// Power series sum_k (a)_k (b)_k / ((c)_k k!) z^k.
pub fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= SERIES_TOL * sum.abs() && ratio.abs() < 1.0 {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence { what: "2F1 series", terms: MAX_TERMS })
}

/// Terminating sum when a is a non-positive integer; valid for every z.
fn polynomial_2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let n = (-a.round()) as usize;
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    sum
}

pub fn hyp2f1(p: &HypParams, z: f64) -> Result<f64> {
    hyp2f1_split(p, z, 1.0 - z)?.try_value()
}

/// 2F1 at `z` given an accurately computed `one_minus_z`, as a scaled number.
pub fn hyp2f1_split(p: &HypParams, z: f64, one_minus_z: f64) -> Result<Scaled> {
    let (a, b, c) = if p.a <= p.b { (p.a, p.b, p.c) } else { (p.b, p.a, p.c) };
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("hyp2f1", z));
    }
    if !(z <= 1.0) || !(one_minus_z > 0.0) {
        return Err(Error::domain("hyp2f1 (requires z < 1)", z));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(Scaled::ONE);
    }
    for t in [a, b] {
        if is_nonpositive_integer(t) && !is_nonpositive_integer(c) {
            let other = if t == a { b } else { a };
            return Ok(Scaled::from_f64(polynomial_2f1(t.round(), other, c, z)));
        }
    }
    if (-0.5..=0.6).contains(&z) {
        return series_2f1(a, b, c, z).map(Scaled::from_f64);
    }
    if z > 0.6 {
        return near_one(a, b, c, z, one_minus_z);
    }
    if z >= -1.5 {
        // Pfaff: (1-z)^{-a} F(a, c-b; c; z/(z-1))
        let w = z / (z - 1.0);
        let s = series_2f1(a, c - b, c, w)?;
        return Ok(Scaled::from_f64(s).shift(-a * one_minus_z.ln()));
    }
    large_negative(a, b, c, one_minus_z)
}

/// z in (0.6, 1): connection formula in 1 - z.
fn near_one(a: f64, b: f64, c: f64, z: f64, omz: f64) -> Result<Scaled> {
    let s = c - a - b;
    if integer_distance(s) < DEGENERATE_GAP {
        if z <= DEGENERATE_SERIES_MAX {
            return series_2f1(a, b, c, z).map(Scaled::from_f64);
        }
        return perturbed(c, |cc| connection_near_one(a, b, cc, omz));
    }
    connection_near_one(a, b, c, omz)
}

fn connection_near_one(a: f64, b: f64, c: f64, omz: f64) -> Result<Scaled> {
    let s = c - a - b;
    let g1 = gamma_ratio_scaled(&[c, s], &[c - a, c - b])?;
    let g2 = gamma_ratio_scaled(&[c, -s], &[a, b])?;
    let t1 = if g1.is_zero() { Scaled::ZERO } else { g1.mul_f64(series_2f1(a, b, 1.0 - s, omz)?) };
    let t2 = if g2.is_zero() {
        Scaled::ZERO
    } else {
        g2.mul_f64(series_2f1(c - a, c - b, 1.0 + s, omz)?).shift(s * omz.ln())
    };
    Ok(t1 + t2)
}

/// z < -1.5: connection formula in u = 1/(1 - z).
fn large_negative(a: f64, b: f64, c: f64, omz: f64) -> Result<Scaled> {
    let u = 1.0 / omz;
    if integer_distance(b - a) < DEGENERATE_GAP {
        if 1.0 - u <= DEGENERATE_SERIES_MAX {
            let w = 1.0 - u;
            let s = series_2f1(a, c - b, c, w)?;
            return Ok(Scaled::from_f64(s).shift(-a * omz.ln()));
        }
        return perturbed(b, |bb| connection_large_negative(a, bb, c, omz));
    }
    connection_large_negative(a, b, c, omz)
}

fn connection_large_negative(a: f64, b: f64, c: f64, omz: f64) -> Result<Scaled> {
    let u = 1.0 / omz;
    let lu = -omz.ln();
    let g1 = gamma_ratio_scaled(&[c, b - a], &[b, c - a])?;
    let g2 = gamma_ratio_scaled(&[c, a - b], &[a, c - b])?;
    let t1 = if g1.is_zero() { Scaled::ZERO } else { g1.mul_f64(series_2f1(a, c - b, a - b + 1.0, u)?).shift(a * lu) };
    let t2 = if g2.is_zero() { Scaled::ZERO } else { g2.mul_f64(series_2f1(b, c - a, b - a + 1.0, u)?).shift(b * lu) };
    Ok(t1 + t2)
}

/// Six-point Lagrange interpolation to offset 0 from offsets ±h, ±2h, ±3h
/// of one parameter.
fn perturbed(x0: f64, f: impl Fn(f64) -> Result<Scaled>) -> Result<Scaled> {
    const NODES: [(f64, f64); 6] = [(1.0, 0.75), (-1.0, 0.75), (2.0, -0.3), (-2.0, -0.3), (3.0, 0.05), (-3.0, 0.05)];
    let mut terms = [(0.0, Scaled::ZERO); 6];
    for (slot, (k, w)) in terms.iter_mut().zip(NODES) {
        *slot = (w, f(x0 + k * PERTURB_STEP)?);
    }
    Ok(Scaled::linear_combination(&terms))
}

/// Generalized series 3F2(a, b, c; d, e; z) for |z| < 1.
pub fn hyp3f2(a: f64, b: f64, c: f64, d: f64, e: f64, z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::Convergence { what: "3F2 series requires |z| < 1", terms: 0 });
    }
    for lower in [d, e] {
        if is_nonpositive_integer(lower) {
            return Err(Error::Pole(lower));
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) * (c + kf) / ((d + kf) * (e + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= SERIES_TOL * sum.abs() && ratio.abs() < 1.0 {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence { what: "3F2 series", terms: MAX_TERMS })
}
