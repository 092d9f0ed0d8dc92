//! The six explicit solutions w1..w6 of the hypergeometric equation on real
//! intervals, with absolute values inside every power:
//!
//! ```text
//! w1(x) = F(a, b; c; x)                                  x in (-inf, 1)
//! w2(x) = |x|^(1-c) F(a-c+1, b-c+1; 2-c; x)              x in (-inf, 0) u (0, 1)
//! w3(x) = |x|^(-a) F(a, a-c+1; a-b+1; 1/x)               x in (-inf, 0) u (1, inf)
//! w4(x) = |x|^(-b) F(b, b-c+1; b-a+1; 1/x)               x in (-inf, 0) u (1, inf)
//! w5(x) = F(a, b; a+b-c+1; 1-x)                          x in (0, inf)
//! w6(x) = |1-x|^(c-a-b) F(c-a, c-b; c-a-b+1; 1-x)        x in (0, 1) u (1, inf)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaled::Scaled;
use crate::special::{hyp2f1_split, HypParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SolutionKind {
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
}

impl SolutionKind {
    pub const ALL: [SolutionKind; 6] =
        [SolutionKind::W1, SolutionKind::W2, SolutionKind::W3, SolutionKind::W4, SolutionKind::W5, SolutionKind::W6];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// Lower parameter of the 2F1 inside this solution.
    pub fn inner_lower_param(self, p: &HypParams) -> f64 {
        match self {
            SolutionKind::W1 => p.c,
            SolutionKind::W2 => 2.0 - p.c,
            SolutionKind::W3 => p.a - p.b + 1.0,
            SolutionKind::W4 => p.b - p.a + 1.0,
            SolutionKind::W5 => p.a + p.b - p.c + 1.0,
            SolutionKind::W6 => p.c - p.a - p.b + 1.0,
        }
    }

    /// Local exponents at a singular point (0, 1 or infinity). At infinity the
    /// exponent e means growth like |x|^e. A solution has a single exponent at
    /// the point it is built around.
    pub fn local_exponents(self, point: SingularPoint, p: &HypParams) -> Vec<f64> {
        use SingularPoint::*;
        match (self, point) {
            (SolutionKind::W1, Zero) => vec![0.0],
            (SolutionKind::W2, Zero) => vec![1.0 - p.c],
            (SolutionKind::W3, Infinity) => vec![-p.a],
            (SolutionKind::W4, Infinity) => vec![-p.b],
            (SolutionKind::W5, One) => vec![0.0],
            (SolutionKind::W6, One) => vec![p.c - p.a - p.b],
            (_, Zero) => vec![0.0, 1.0 - p.c],
            (_, One) => vec![0.0, p.c - p.a - p.b],
            (_, Infinity) => vec![-p.a, -p.b],
        }
    }
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.index())
    }
}

impl FromStr for SolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "w1" => Ok(SolutionKind::W1),
            "w2" => Ok(SolutionKind::W2),
            "w3" => Ok(SolutionKind::W3),
            "w4" => Ok(SolutionKind::W4),
            "w5" => Ok(SolutionKind::W5),
            "w6" => Ok(SolutionKind::W6),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

/// An open interval; bounds may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_bound(self.lo), fmt_bound(self.hi))
    }
}

fn fmt_bound(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        for v in [self.lo, self.hi] {
            if v.is_finite() {
                t.serialize_element(&v)?;
            } else {
                t.serialize_element(&fmt_bound(v))?;
            }
        }
        t.end()
    }
}

const NEG_INF: f64 = f64::NEG_INFINITY;
const POS_INF: f64 = f64::INFINITY;

pub fn domain_of(kind: SolutionKind) -> Vec<Interval> {
    match kind {
        SolutionKind::W1 => vec![Interval::new(NEG_INF, 1.0)],
        SolutionKind::W2 => vec![Interval::new(NEG_INF, 0.0), Interval::new(0.0, 1.0)],
        SolutionKind::W3 | SolutionKind::W4 => {
            vec![Interval::new(NEG_INF, 0.0), Interval::new(1.0, POS_INF)]
        }
        SolutionKind::W5 => vec![Interval::new(0.0, POS_INF)],
        SolutionKind::W6 => vec![Interval::new(0.0, 1.0), Interval::new(1.0, POS_INF)],
    }
}

pub fn in_domain(kind: SolutionKind, x: f64) -> bool {
    domain_of(kind).iter().any(|i| i.contains(x))
}

/// Domain test for a point given together with an accurate `1 - x`: when x
/// rounds to 1 the sign of `one_minus_x` decides the side.
fn in_domain_split(kind: SolutionKind, x: f64, one_minus_x: f64) -> bool {
    if x != 1.0 || one_minus_x == 0.0 {
        return in_domain(kind, x);
    }
    let below = one_minus_x > 0.0;
    domain_of(kind).iter().any(|i| if below { i.lo < 1.0 && i.hi >= 1.0 } else { i.lo <= 1.0 && i.hi > 1.0 })
}

/// The pieces of `w_kind(x)`: prefactor base and exponent, and the inner 2F1
/// with its argument and complement.
struct Parts {
    inner: HypParams,
    z: f64,
    one_minus_z: f64,
    base: f64,
    exponent: f64,
}

fn parts(kind: SolutionKind, x: f64, one_minus_x: f64, p: &HypParams) -> Result<Parts> {
    if !in_domain_split(kind, x, one_minus_x) {
        return Err(Error::domain(format!("{kind}"), x));
    }
    let HypParams { a, b, c } = *p;
    let parts = match kind {
        SolutionKind::W1 => Parts { inner: *p, z: x, one_minus_z: one_minus_x, base: 1.0, exponent: 0.0 },
        SolutionKind::W2 => Parts {
            inner: HypParams::raw(a - c + 1.0, b - c + 1.0, 2.0 - c),
            z: x,
            one_minus_z: one_minus_x,
            base: x.abs(),
            exponent: 1.0 - c,
        },
        SolutionKind::W3 | SolutionKind::W4 => {
            let (s, t) = if kind == SolutionKind::W3 { (a, b) } else { (b, a) };
            // 1 - 1/x = -(1 - x)/x
            Parts {
                inner: HypParams::raw(s, s - c + 1.0, s - t + 1.0),
                z: 1.0 / x,
                one_minus_z: -one_minus_x / x,
                base: x.abs(),
                exponent: -s,
            }
        }
        SolutionKind::W5 => Parts {
            inner: HypParams::raw(a, b, a + b - c + 1.0),
            z: one_minus_x,
            one_minus_z: x,
            base: 1.0,
            exponent: 0.0,
        },
        SolutionKind::W6 => Parts {
            inner: HypParams::raw(c - a, c - b, c - a - b + 1.0),
            z: one_minus_x,
            one_minus_z: x,
            base: one_minus_x.abs(),
            exponent: c - a - b,
        },
    };
    Ok(parts)
}

/// `w_kind(x)` as an f64: the power prefactor times the inner 2F1.
pub fn eval_w(kind: SolutionKind, x: f64, p: &HypParams) -> Result<f64> {
    let pt = parts(kind, x, 1.0 - x, p)?;
    let f = hyp2f1_split(&pt.inner, pt.z, pt.one_minus_z)?.try_value()?;
    let v = if pt.exponent == 0.0 { f } else { pt.base.powf(pt.exponent) * f };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(f64::INFINITY))
    }
}

/// Evaluate `w_kind(x)` given an accurately computed `one_minus_x`, as a scaled
/// number. Points arbitrarily close to 0 or 1 are accepted.
pub fn eval_w_split(kind: SolutionKind, x: f64, one_minus_x: f64, p: &HypParams) -> Result<Scaled> {
    let pt = parts(kind, x, one_minus_x, p)?;
    let f = hyp2f1_split(&pt.inner, pt.z, pt.one_minus_z)?;
    if pt.exponent == 0.0 {
        Ok(f)
    } else {
        Ok(f.shift(pt.exponent * pt.base.ln()))
    }
}
