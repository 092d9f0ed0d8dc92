//! Declarative catalog of integral identities.
//!
//! Every identity has the shape
//!
//! ```text
//! G_l * ∫_region |y|^ye |1-y|^oe K(x,y)^ke  inner(y) dy
//!     = G_r * |x|^xe |1-x|^oxe  outer(x)
//! ```
//!
//! with `G_l`, `G_r` gamma ratios and every exponent and gamma argument an
//! integer-coefficient affine expression in `a, b, c, mu, nu, d, e`. The inner
//! factor is a solution `w_k`, a plain 2F1, nothing, or (for compositions)
//! another integral of the same shape.

mod entries;
mod realize;
mod sample;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Affine, Env};
use crate::solutions::{Interval, SolutionKind};
use crate::special::HypParams;

pub use entries::build_catalog;
pub use realize::{
    lhs_endpoint_exponents, nested_inner_check, realize_lhs, realize_rhs, Endpoint, LhsValue, RealizeOptions,
    RealizedLhs,
};
pub use sample::{sample_params, sample_params_with, ParamPoint, DERIVED_MARGIN, EXPLICIT_MARGIN, POLE_GUARD};

pub const CATALOG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    FracI,
    FracII,
    FracIII,
    WTransform,
    Stieltjes,
    Euler,
    Composition,
    KarpSitnik,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::FracI,
        Family::FracII,
        Family::FracIII,
        Family::WTransform,
        Family::Stieltjes,
        Family::Euler,
        Family::Composition,
        Family::KarpSitnik,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::FracI => "frac-i",
            Family::FracII => "frac-ii",
            Family::FracIII => "frac-iii",
            Family::WTransform => "w-transform",
            Family::Stieltjes => "stieltjes",
            Family::Euler => "euler",
            Family::Composition => "composition",
            Family::KarpSitnik => "karp-sitnik",
        }
    }

    /// Does a `--family` filter value select this family? `fractional`
    /// selects the three fractional families together.
    pub fn matches(self, filter: &str) -> bool {
        let f = filter.trim().to_ascii_lowercase().replace('_', "-");
        if f == "fractional" {
            return matches!(self, Family::FracI | Family::FracII | Family::FracIII);
        }
        let compact = |s: &str| s.replace('-', "");
        compact(&f) == compact(self.name())
    }

    pub fn is_known_filter(filter: &str) -> bool {
        Family::ALL.iter().any(|f| f.matches(filter))
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Endpoint of an integration region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    NegInf,
    Zero,
    One,
    PosInf,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Between two fixed bounds (either may be `X`).
    Fixed(Bound, Bound),
    /// `0 < y/x < 1`: from 0 to x.
    ZeroToX,
    /// `y/x > 1`: from x away from 0 to infinity.
    BeyondX,
    /// `0 < (1-y)/(1-x) < 1`: from x to 1.
    XToOne,
}

impl Region {
    /// Resolve to ordered bounds for a given sign of x and of 1 - x.
    pub fn bounds(self, x: f64) -> (Bound, Bound) {
        match self {
            Region::Fixed(lo, hi) => (lo, hi),
            Region::ZeroToX => {
                if x > 0.0 {
                    (Bound::Zero, Bound::X)
                } else {
                    (Bound::X, Bound::Zero)
                }
            }
            Region::BeyondX => {
                if x > 0.0 {
                    (Bound::X, Bound::PosInf)
                } else {
                    (Bound::NegInf, Bound::X)
                }
            }
            Region::XToOne => {
                if x < 1.0 {
                    (Bound::X, Bound::One)
                } else {
                    (Bound::One, Bound::X)
                }
            }
        }
    }

    pub fn involves_x(self) -> bool {
        match self {
            Region::Fixed(lo, hi) => lo == Bound::X || hi == Bound::X,
            _ => true,
        }
    }
}

/// Parameter map `(a, b, c) -> (a', b', c')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamMap(pub [Affine; 3]);

impl ParamMap {
    pub fn new(a: &str, b: &str, c: &str) -> Self {
        ParamMap([Affine::p(a), Affine::p(b), Affine::p(c)])
    }

    pub fn identity() -> Self {
        Self::new("a", "b", "c")
    }

    pub fn eval(&self, env: &Env) -> HypParams {
        HypParams::raw(self.0[0].eval(env), self.0[1].eval(env), self.0[2].eval(env))
    }
}

/// Either a solution `w_k` or the plain 2F1 (same as `w1`, kept separate to
/// mirror how the fractional families are stated).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FnKind {
    Pure2F1,
    W(SolutionKind),
}

impl FnKind {
    pub fn solution(self) -> SolutionKind {
        match self {
            FnKind::Pure2F1 => SolutionKind::W1,
            FnKind::W(k) => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `|x - y|^ke`
    Difference,
    /// `(1 - x y)^ke`
    OneMinusProduct,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaExprs {
    pub numerator: Vec<Affine>,
    pub denominator: Vec<Affine>,
}

impl GammaExprs {
    pub fn new(num: &[&str], den: &[&str]) -> Self {
        GammaExprs {
            numerator: num.iter().map(|s| Affine::p(s)).collect(),
            denominator: den.iter().map(|s| Affine::p(s)).collect(),
        }
    }

    pub fn none() -> Self {
        Self::new(&[], &[])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inner {
    None,
    Fn(FnKind, ParamMap),
    /// Another integral with its variable x bound to the outer y. The closed
    /// form is the known value of that integral and supplies the local
    /// exponents of the inner factor.
    Nested(Box<IntegralSpec>, Box<ClosedFormSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralSpec {
    pub region: Region,
    pub y_exponent: Affine,
    pub one_minus_y_exponent: Affine,
    pub kernel: Kernel,
    pub kernel_exponent: Affine,
    pub inner: Inner,
    /// Constant gamma ratio multiplying the integral, e.g. `1/Γ(mu)`.
    pub gammas: GammaExprs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outer {
    Fn(FnKind, ParamMap),
    /// `3F2(p0, p1, p2; p3, p4; x)`
    F32([Affine; 5]),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormSpec {
    pub gammas: GammaExprs,
    pub x_exponent: Affine,
    pub one_minus_x_exponent: Affine,
    pub outer: Outer,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySpec {
    pub id: String,
    /// Short description of the identity.
    pub label: String,
    pub family: Family,
    pub lhs: IntegralSpec,
    pub rhs: ClosedFormSpec,
    /// Each expression must be strictly positive.
    pub constraints: Vec<Affine>,
    pub x_domain: Vec<Interval>,
}

impl IdentitySpec {
    /// Solutions whose logarithmic cases the sampler must avoid, with their
    /// parameter maps.
    pub fn solution_maps(&self) -> Vec<(SolutionKind, ParamMap)> {
        let mut out = Vec::new();
        collect_integral_maps(&self.lhs, &mut out);
        collect_closed_maps(&self.rhs, &mut out);
        out
    }

    /// Variables that actually appear anywhere in the identity.
    pub fn uses(&self, v: crate::expr::Var) -> bool {
        let mut all = Vec::new();
        collect_integral_exprs(&self.lhs, &mut all);
        collect_closed_exprs(&self.rhs, &mut all);
        all.extend(self.constraints.iter().copied());
        all.iter().any(|e| e.uses(v))
    }
}

fn collect_integral_maps(s: &IntegralSpec, out: &mut Vec<(SolutionKind, ParamMap)>) {
    match &s.inner {
        Inner::None => {}
        Inner::Fn(k, m) => out.push((k.solution(), *m)),
        Inner::Nested(i, c) => {
            collect_integral_maps(i, out);
            collect_closed_maps(c, out);
        }
    }
}

fn collect_closed_maps(c: &ClosedFormSpec, out: &mut Vec<(SolutionKind, ParamMap)>) {
    if let Outer::Fn(k, m) = &c.outer {
        out.push((k.solution(), *m));
    }
}

fn collect_integral_exprs(s: &IntegralSpec, out: &mut Vec<Affine>) {
    out.extend([s.y_exponent, s.one_minus_y_exponent, s.kernel_exponent]);
    out.extend(s.gammas.numerator.iter().chain(&s.gammas.denominator).copied());
    match &s.inner {
        Inner::None => {}
        Inner::Fn(_, m) => out.extend(m.0),
        Inner::Nested(i, c) => {
            collect_integral_exprs(i, out);
            collect_closed_exprs(c, out);
        }
    }
}

fn collect_closed_exprs(c: &ClosedFormSpec, out: &mut Vec<Affine>) {
    out.extend([c.x_exponent, c.one_minus_x_exponent]);
    out.extend(c.gammas.numerator.iter().chain(&c.gammas.denominator).copied());
    match &c.outer {
        Outer::Fn(_, m) => out.extend(m.0),
        Outer::F32(p) => out.extend(p),
    }
}

pub fn find<'a>(catalog: &'a [IdentitySpec], id: &str) -> Result<&'a IdentitySpec> {
    catalog.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[derive(Serialize)]
struct ExportDoc<'a> {
    version: u32,
    count: usize,
    variables: [&'static str; 7],
    identities: &'a [IdentitySpec],
}

/// Versioned JSON document describing the catalog. Affine expressions are
/// written as integer tuples `[a, b, c, mu, nu, d, e, constant]`.
pub fn export_json(catalog: &[IdentitySpec]) -> String {
    let doc = ExportDoc {
        version: CATALOG_VERSION,
        count: catalog.len(),
        variables: crate::expr::VAR_NAMES,
        identities: catalog,
    };
    serde_json::to_string_pretty(&doc).expect("catalog serializes")
}
