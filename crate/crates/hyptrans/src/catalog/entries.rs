use super::*;
use crate::expr::Affine;
use crate::solutions::SolutionKind::{self, *};

const NEG_INF: f64 = f64::NEG_INFINITY;
const POS_INF: f64 = f64::INFINITY;
const I_NEG: Interval = Interval::new(NEG_INF, 0.0);
const J_UNIT: Interval = Interval::new(0.0, 1.0);
const K_BEYOND: Interval = Interval::new(1.0, POS_INF);

fn e(s: &str) -> Affine {
    Affine::p(s)
}

fn map(m: [&str; 3]) -> ParamMap {
    ParamMap::new(m[0], m[1], m[2])
}

fn w(kind: SolutionKind, m: [&str; 3]) -> FnKind2 {
    (FnKind::W(kind), map(m))
}

fn f21(m: [&str; 3]) -> FnKind2 {
    (FnKind::Pure2F1, map(m))
}

type FnKind2 = (FnKind, ParamMap);

fn fixed(lo: Bound, hi: Bound) -> Region {
    Region::Fixed(lo, hi)
}

/// Integral with a `|x-y|^ke` kernel and a single inner function.
fn integral(region: Region, ye: &str, oe: &str, ke: &str, inner: Option<FnKind2>, gammas: GammaExprs) -> IntegralSpec {
    IntegralSpec {
        region,
        y_exponent: e(ye),
        one_minus_y_exponent: e(oe),
        kernel: Kernel::Difference,
        kernel_exponent: e(ke),
        inner: match inner {
            Some((k, m)) => Inner::Fn(k, m),
            None => Inner::None,
        },
        gammas,
    }
}

fn closed(num: &[&str], den: &[&str], xe: &str, oxe: &str, outer: FnKind2) -> ClosedFormSpec {
    ClosedFormSpec {
        gammas: GammaExprs::new(num, den),
        x_exponent: e(xe),
        one_minus_x_exponent: e(oxe),
        outer: Outer::Fn(outer.0, outer.1),
    }
}

fn frac() -> GammaExprs {
    GammaExprs::new(&[], &["mu"])
}

fn identity(
    id: &str,
    label: &str,
    family: Family,
    lhs: IntegralSpec,
    rhs: ClosedFormSpec,
    constraints: &[&str],
    x_domain: &[Interval],
) -> IdentitySpec {
    IdentitySpec {
        id: id.to_string(),
        label: label.to_string(),
        family,
        lhs,
        rhs,
        constraints: constraints.iter().map(|s| e(s)).collect(),
        x_domain: x_domain.to_vec(),
    }
}

/// All 59 identities, in a fixed order.
pub fn build_catalog() -> Vec<IdentitySpec> {
    let mut out = Vec::with_capacity(59);
    fractional(&mut out);
    w_transforms(&mut out);
    stieltjes(&mut out);
    euler(&mut out);
    karp_sitnik(&mut out);
    compositions(&mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn frac_entry(
    out: &mut Vec<IdentitySpec>,
    id: &str,
    label: &str,
    family: Family,
    region: Region,
    (ye, oe): (&str, &str),
    inner: FnKind2,
    (num, den): (&[&str], &[&str]),
    (xe, oxe): (&str, &str),
    outer: FnKind2,
    x_domain: &[Interval],
    constraints: &[&str],
) {
    out.push(identity(
        id,
        label,
        family,
        integral(region, ye, oe, "mu-1", Some(inner), frac()),
        closed(num, den, xe, oxe, outer),
        constraints,
        x_domain,
    ));
}

fn fractional(out: &mut Vec<IdentitySpec>) {
    use Family::*;
    let id = ["a", "b", "c"];
    let zx = Region::ZeroToX;
    let to_x = fixed(Bound::NegInf, Bound::X);
    let below_one = [Interval::new(NEG_INF, 1.0)];
    frac_entry(
        out,
        "F-I-CP",
        "left fractional integral from 0 raising c",
        FracI,
        zx,
        ("c-1", "0"),
        f21(id),
        (&["c"], &["c+mu"]),
        ("c+mu-1", "0"),
        f21(["a", "b", "c+mu"]),
        &[I_NEG, J_UNIT],
        &["c", "mu"],
    );
    frac_entry(
        out,
        "F-I-APCP",
        "fractional integral from 0 raising a and c",
        FracI,
        zx,
        ("c-1", "b-c-mu"),
        f21(id),
        (&["c"], &["c+mu"]),
        ("c+mu-1", "b-c"),
        f21(["a+mu", "b", "c+mu"]),
        &[I_NEG, J_UNIT],
        &["c", "mu"],
    );
    frac_entry(
        out,
        "F-I-APBPCP",
        "fractional integral from 0 raising a, b and c",
        FracI,
        zx,
        ("c-1", "a+b-c"),
        f21(id),
        (&["c"], &["c+mu"]),
        ("c+mu-1", "a+b-c+mu"),
        f21(["a+mu", "b+mu", "c+mu"]),
        &[I_NEG, J_UNIT],
        &["c", "mu"],
    );
    frac_entry(
        out,
        "F-II-AM",
        "fractional integral from 0 lowering a",
        FracII,
        zx,
        ("a-mu-1", "0"),
        f21(id),
        (&["a-mu"], &["a"]),
        ("a-1", "0"),
        f21(["a-mu", "b", "c"]),
        &[I_NEG, J_UNIT],
        &["a-mu", "mu"],
    );
    frac_entry(
        out,
        "F-II-AP",
        "fractional integral from 0 raising a",
        FracII,
        zx,
        ("c-a-mu-1", "a+b-c"),
        f21(id),
        (&["c-a-mu"], &["c-a"]),
        ("c-a-1", "a+b-c+mu"),
        f21(["a+mu", "b", "c"]),
        &[I_NEG, J_UNIT],
        &["c-a-mu", "mu"],
    );
    frac_entry(
        out,
        "F-III-AMBMCM",
        "Weyl-type integral from -inf lowering a, b and c",
        FracIII,
        to_x,
        ("0", "0"),
        f21(id),
        (&["a-mu", "b-mu", "c"], &["a", "b", "c-mu"]),
        ("0", "0"),
        f21(["a-mu", "b-mu", "c-mu"]),
        &below_one,
        &["a-mu", "b-mu", "mu"],
    );
    frac_entry(
        out,
        "F-III-AMCM",
        "fractional integral up to 1 lowering a and c",
        FracIII,
        fixed(Bound::X, Bound::One),
        ("0", "a-mu-1"),
        f21(id),
        (&["a-mu", "c-b-mu", "c"], &["a", "c-b", "c-mu"]),
        ("0", "a-1"),
        f21(["a-mu", "b", "c-mu"]),
        &below_one,
        &["a-mu", "c-b-mu", "mu"],
    );
    frac_entry(
        out,
        "F-III-CM",
        "Weyl-type integral from -inf lowering c",
        FracIII,
        to_x,
        ("0", "a+b-c"),
        f21(id),
        (&["c-a-mu", "c-b-mu", "c"], &["c-a", "c-b", "c-mu"]),
        ("0", "a+b-c+mu"),
        f21(["a", "b", "c-mu"]),
        &below_one,
        &["c-a-mu", "c-b-mu", "mu"],
    );
}

fn w_transforms(out: &mut Vec<IdentitySpec>) {
    use Family::WTransform;
    let id = ["a", "b", "c"];
    let cp = ["a", "b", "c+mu"];
    frac_entry(
        out,
        "W-W1-CP",
        "w1 under the fractional integral from 0 raising c",
        WTransform,
        Region::ZeroToX,
        ("c-1", "0"),
        w(W1, id),
        (&["c"], &["c+mu"]),
        ("c+mu-1", "0"),
        w(W1, cp),
        &[I_NEG, J_UNIT],
        &["c", "mu"],
    );
    frac_entry(
        out,
        "W-W2-CP",
        "w2 under the Weyl-type integral from -inf raising c",
        WTransform,
        fixed(Bound::NegInf, Bound::X),
        ("c-1", "0"),
        w(W2, id),
        (&["a-c-mu+1", "b-c-mu+1", "2-c"], &["a-c+1", "b-c+1", "2-c-mu"]),
        ("c+mu-1", "0"),
        w(W2, cp),
        &[I_NEG, J_UNIT],
        &["a-c-mu+1", "b-c-mu+1", "mu"],
    );
    frac_entry(
        out,
        "W-W3-CP",
        "w3 under the integral from x outward raising c",
        WTransform,
        Region::BeyondX,
        ("c-1", "0"),
        w(W3, id),
        (&["a-c-mu+1"], &["a-c+1"]),
        ("c+mu-1", "0"),
        w(W3, cp),
        &[I_NEG, K_BEYOND],
        &["a-c-mu+1", "mu"],
    );
    frac_entry(
        out,
        "W-W4-CP",
        "w4 under the integral from x outward raising c",
        WTransform,
        Region::BeyondX,
        ("c-1", "0"),
        w(W4, id),
        (&["b-c-mu+1"], &["b-c+1"]),
        ("c+mu-1", "0"),
        w(W4, cp),
        &[I_NEG, K_BEYOND],
        &["b-c-mu+1", "mu"],
    );
    frac_entry(
        out,
        "W-W5-CP",
        "w5 under the integral from x to +inf raising c",
        WTransform,
        fixed(Bound::X, Bound::PosInf),
        ("c-1", "0"),
        w(W5, id),
        (&["b-c-mu+1", "a-c-mu+1", "a+b-c+1"], &["b-c+1", "a-c+1", "a+b-c-mu+1"]),
        ("c+mu-1", "0"),
        w(W5, cp),
        &[Interval::new(0.0, POS_INF)],
        &["b-c-mu+1", "a-c-mu+1", "mu"],
    );
    frac_entry(
        out,
        "W-W6-CP",
        "w6 under the integral between 1 and x raising c",
        WTransform,
        Region::XToOne,
        ("c-1", "0"),
        w(W6, id),
        (&["c-a-b+1"], &["c-a-b+mu+1"]),
        ("c+mu-1", "0"),
        w(W6, cp),
        &[J_UNIT, K_BEYOND],
        &["c-a-b+1", "mu"],
    );
    frac_entry(
        out,
        "W-W2-AM",
        "w2 under the fractional integral from 0 lowering a",
        WTransform,
        Region::ZeroToX,
        ("a-mu-1", "0"),
        w(W2, id),
        (&["a-c-mu+1"], &["a-c+1"]),
        ("a-1", "0"),
        w(W2, ["a-mu", "b", "c"]),
        &[I_NEG, J_UNIT],
        &["a-c-mu+1", "mu"],
    );
    frac_entry(
        out,
        "W-W4-AMBMCM",
        "w4 under the integral from x outward lowering a, b and c",
        WTransform,
        Region::BeyondX,
        ("0", "0"),
        w(W4, id),
        (&["b-mu"], &["b"]),
        ("0", "0"),
        w(W4, ["a-mu", "b-mu", "c-mu"]),
        &[I_NEG, K_BEYOND],
        &["b-mu", "mu"],
    );
    frac_entry(
        out,
        "W-W6-AMBMCM",
        "w6 under the integral between 1 and x lowering a, b and c",
        WTransform,
        Region::XToOne,
        ("0", "0"),
        w(W6, id),
        (&["c-a-b+1"], &["c-a-b+mu+1"]),
        ("0", "0"),
        w(W6, ["a-mu", "b-mu", "c-mu"]),
        &[J_UNIT, K_BEYOND],
        &["c-a-b+1", "mu"],
    );
}

/// Generalized Stieltjes transform over one of the three intervals; x ranges
/// over the other two. The right side always carries `1/Γ(1-mu)`.
#[allow(clippy::too_many_arguments)]
fn st(
    out: &mut Vec<IdentitySpec>,
    id: &str,
    label: &str,
    iv: Interval,
    (ye, oe): (&str, &str),
    inner: FnKind2,
    num: &[&str],
    den: &str,
    (xe, oxe): (&str, &str),
    outer: FnKind2,
) {
    let bound = |v: f64| {
        if v == NEG_INF {
            Bound::NegInf
        } else if v == 0.0 {
            Bound::Zero
        } else if v == 1.0 {
            Bound::One
        } else {
            Bound::PosInf
        }
    };
    let x_domain: Vec<Interval> = [I_NEG, J_UNIT, K_BEYOND].into_iter().filter(|i| *i != iv).collect();
    let mut constraints = num.to_vec();
    constraints.push("mu");
    out.push(identity(
        id,
        label,
        Family::Stieltjes,
        integral(fixed(bound(iv.lo), bound(iv.hi)), ye, oe, "mu-1", Some(inner), GammaExprs::none()),
        closed(num, &[den, "1-mu"], xe, oxe, outer),
        &constraints,
        &x_domain,
    ));
}

fn stieltjes(out: &mut Vec<IdentitySpec>) {
    let id = ["a", "b", "c"];
    let (i, j, k) = (I_NEG, J_UNIT, K_BEYOND);
    st(
        out,
        "S-CP-W1toW5",
        "Stieltjes transform of w1 over (-inf,0), c raised",
        i,
        ("c-1", "0"),
        w(W1, id),
        &["a-c-mu+1", "b-c-mu+1", "c"],
        "a+b-c-mu+1",
        ("c+mu-1", "0"),
        w(W5, ["a", "b", "c+mu"]),
    );
    st(
        out,
        "S-CP-W6toW2",
        "Stieltjes transform of w6 over (1,inf), c raised",
        k,
        ("c-1", "0"),
        w(W6, id),
        &["a-c-mu+1", "b-c-mu+1", "c-a-b+1"],
        "2-c-mu",
        ("c+mu-1", "0"),
        w(W2, ["a", "b", "c+mu"]),
    );
    st(
        out,
        "S-APCP-W1toW4",
        "Stieltjes transform of w1 over (0,1), a and c raised",
        j,
        ("c-1", "b-c-mu"),
        w(W1, id),
        &["1-a-mu", "b-c-mu+1", "c"],
        "b-a-mu+1",
        ("c+mu-1", "b-c"),
        w(W4, ["a+mu", "b", "c+mu"]),
    );
    st(
        out,
        "S-APCP-W3toW2",
        "Stieltjes transform of w3 over (1,inf), a and c raised",
        k,
        ("c-1", "b-c-mu"),
        w(W3, id),
        &["1-a-mu", "b-c-mu+1", "a-b+1"],
        "2-c-mu",
        ("c+mu-1", "b-c"),
        w(W2, ["a+mu", "b", "c+mu"]),
    );
    st(
        out,
        "S-BPCP-W1toW3",
        "Stieltjes transform of w1 over (0,1), b and c raised",
        j,
        ("c-1", "a-c-mu"),
        w(W1, id),
        &["1-b-mu", "a-c-mu+1", "c"],
        "a-b-mu+1",
        ("c+mu-1", "a-c"),
        w(W3, ["a", "b+mu", "c+mu"]),
    );
    st(
        out,
        "S-BPCP-W4toW2",
        "Stieltjes transform of w4 over (1,inf), b and c raised",
        k,
        ("c-1", "a-c-mu"),
        w(W4, id),
        &["1-b-mu", "a-c-mu+1", "b-a+1"],
        "2-c-mu",
        ("c+mu-1", "a-c"),
        w(W2, ["a", "b+mu", "c+mu"]),
    );
    st(
        out,
        "S-APBPCP-W1toW6",
        "Stieltjes transform of w1 over (-inf,0), a, b and c raised",
        i,
        ("c-1", "a+b-c"),
        w(W1, id),
        &["1-a-mu", "1-b-mu", "c"],
        "c-a-b-mu+1",
        ("c+mu-1", "a+b-c+mu"),
        w(W6, ["a+mu", "b+mu", "c+mu"]),
    );
    st(
        out,
        "S-APBPCP-W5toW2",
        "Stieltjes transform of w5 over (1,inf), a, b and c raised",
        k,
        ("c-1", "a+b-c"),
        w(W5, id),
        &["1-a-mu", "1-b-mu", "a+b-c+1"],
        "2-c-mu",
        ("c+mu-1", "a+b-c+mu"),
        w(W2, ["a+mu", "b+mu", "c+mu"]),
    );
    st(
        out,
        "S-AM-W4toW5",
        "Stieltjes transform of w4 over (-inf,0), a lowered",
        i,
        ("a-mu-1", "0"),
        w(W4, id),
        &["a-mu", "a-c-mu+1", "b-a+1"],
        "a+b-c-mu+1",
        ("a-1", "0"),
        w(W5, ["a-mu", "b", "c"]),
    );
    st(
        out,
        "S-AM-W6toW3",
        "Stieltjes transform of w6 over (0,1), a lowered",
        j,
        ("a-mu-1", "0"),
        w(W6, id),
        &["a-c-mu+1", "a-mu", "c-a-b+1"],
        "a-b-mu+1",
        ("a-1", "0"),
        w(W3, ["a-mu", "b", "c"]),
    );
    st(
        out,
        "S-BM-W3toW5",
        "Stieltjes transform of w3 over (-inf,0), b lowered",
        i,
        ("b-mu-1", "0"),
        w(W3, id),
        &["b-mu", "b-c-mu+1", "a-b+1"],
        "a+b-c-mu+1",
        ("b-1", "0"),
        w(W5, ["a", "b-mu", "c"]),
    );
    st(
        out,
        "S-BM-W6toW4",
        "Stieltjes transform of w6 over (0,1), b lowered",
        j,
        ("b-mu-1", "0"),
        w(W6, id),
        &["b-c-mu+1", "b-mu", "c-a-b+1"],
        "b-a-mu+1",
        ("b-1", "0"),
        w(W4, ["a", "b-mu", "c"]),
    );
    st(
        out,
        "S-AP-W3toW6",
        "Stieltjes transform of w3 over (-inf,0), a raised",
        i,
        ("c-a-mu-1", "a+b-c"),
        w(W3, id),
        &["1-a-mu", "c-a-mu", "a-b+1"],
        "c-a-b-mu+1",
        ("c-a-1", "a+b-c+mu"),
        w(W6, ["a+mu", "b", "c"]),
    );
    st(
        out,
        "S-AP-W5toW4",
        "Stieltjes transform of w5 over (0,1), a raised",
        j,
        ("c-a-mu-1", "a+b-c"),
        w(W5, id),
        &["1-a-mu", "c-a-mu", "a+b-c+1"],
        "b-a-mu+1",
        ("c-a-1", "a+b-c+mu"),
        w(W4, ["a+mu", "b", "c"]),
    );
    st(
        out,
        "S-BP-W4toW6",
        "Stieltjes transform of w4 over (-inf,0), b raised",
        i,
        ("c-b-mu-1", "a+b-c"),
        w(W4, id),
        &["1-b-mu", "c-b-mu", "b-a+1"],
        "c-a-b-mu+1",
        ("c-b-1", "a+b-c+mu"),
        w(W6, ["a", "b+mu", "c"]),
    );
    st(
        out,
        "S-BP-W5toW3",
        "Stieltjes transform of w5 over (0,1), b raised",
        j,
        ("c-b-mu-1", "a+b-c"),
        w(W5, id),
        &["1-b-mu", "c-b-mu", "a+b-c+1"],
        "a-b-mu+1",
        ("c-b-1", "a+b-c+mu"),
        w(W3, ["a", "b+mu", "c"]),
    );
    st(
        out,
        "S-AMBMCM-W2toW5",
        "Stieltjes transform of w2 over (-inf,0), a, b and c lowered",
        i,
        ("0", "0"),
        w(W2, id),
        &["a-mu", "b-mu", "2-c"],
        "a+b-c-mu+1",
        ("0", "0"),
        w(W5, ["a-mu", "b-mu", "c-mu"]),
    );
    st(
        out,
        "S-AMBMCM-W6toW1",
        "Stieltjes transform of w6 over (1,inf), a, b and c lowered",
        k,
        ("0", "0"),
        w(W6, id),
        &["a-mu", "b-mu", "c-a-b+1"],
        "c-mu",
        ("0", "0"),
        w(W1, ["a-mu", "b-mu", "c-mu"]),
    );
    st(
        out,
        "S-AMCM-W2toW3",
        "Stieltjes transform of w2 over (0,1), a and c lowered",
        j,
        ("0", "a-mu-1"),
        w(W2, id),
        &["c-b-mu", "a-mu", "2-c"],
        "a-b-mu+1",
        ("0", "a-1"),
        w(W3, ["a-mu", "b", "c-mu"]),
    );
    st(
        out,
        "S-AMCM-W4toW1",
        "Stieltjes transform of w4 over (1,inf), a and c lowered",
        k,
        ("0", "a-mu-1"),
        w(W4, id),
        &["c-b-mu", "a-mu", "b-a+1"],
        "c-mu",
        ("0", "a-1"),
        w(W1, ["a-mu", "b", "c-mu"]),
    );
    st(
        out,
        "S-BMCM-W2toW4",
        "Stieltjes transform of w2 over (0,1), b and c lowered",
        j,
        ("0", "b-mu-1"),
        w(W2, id),
        &["c-a-mu", "b-mu", "2-c"],
        "b-a-mu+1",
        ("0", "b-1"),
        w(W4, ["a", "b-mu", "c-mu"]),
    );
    st(
        out,
        "S-BMCM-W3toW1",
        "Stieltjes transform of w3 over (1,inf), b and c lowered",
        k,
        ("0", "b-mu-1"),
        w(W3, id),
        &["c-a-mu", "b-mu", "a-b+1"],
        "c-mu",
        ("0", "b-1"),
        w(W1, ["a", "b-mu", "c-mu"]),
    );
    st(
        out,
        "S-CM-W2toW6",
        "Stieltjes transform of w2 over (-inf,0), c lowered",
        i,
        ("0", "a+b-c"),
        w(W2, id),
        &["c-a-mu", "c-b-mu", "2-c"],
        "c-a-b-mu+1",
        ("0", "a+b-c+mu"),
        w(W6, ["a", "b", "c-mu"]),
    );
    st(
        out,
        "S-CM-W5toW1",
        "Stieltjes transform of w5 over (1,inf), c lowered",
        k,
        ("0", "a+b-c"),
        w(W5, id),
        &["c-a-mu", "c-b-mu", "a+b-c+1"],
        "c-mu",
        ("0", "a+b-c+mu"),
        w(W1, ["a", "b", "c-mu"]),
    );
}

fn euler(out: &mut Vec<IdentitySpec>) {
    // (ye, oe, ke) of the two integrand shapes
    let t1 = ("b-1", "-a", "c-b-1");
    let t2 = ("a-c", "c-b-1", "-a");
    let id = ["a", "b", "c"];
    let zx = Region::ZeroToX;
    let bx = Region::BeyondX;
    let ox = Region::XToOne;
    let one_inf = fixed(Bound::One, Bound::PosInf);
    let zero_one = fixed(Bound::Zero, Bound::One);
    let neg_zero = fixed(Bound::NegInf, Bound::Zero);
    let pos = Interval::new(0.0, POS_INF);
    #[allow(clippy::type_complexity)]
    let rows: [(
        &str,
        &str,
        Region,
        (&str, &str, &str),
        [&str; 2],
        &str,
        &str,
        SolutionKind,
        Vec<Interval>,
        [&str; 2],
    ); 12] = [
        (
            "E-W1",
            "Euler integral over (0,x) giving w1",
            zx,
            t1,
            ["b", "c-b"],
            "c",
            "c-1",
            W1,
            vec![I_NEG, J_UNIT],
            ["c-b", "b"],
        ),
        (
            "E-W2",
            "Euler integral over (1,inf) giving w2",
            one_inf,
            t1,
            ["a-c+1", "1-a"],
            "2-c",
            "c-1",
            W2,
            vec![I_NEG, J_UNIT],
            ["a-c+1", "1-a"],
        ),
        (
            "E-W3",
            "Euler integral from x outward giving w3",
            bx,
            t1,
            ["a-c+1", "c-b"],
            "a-b+1",
            "c-1",
            W3,
            vec![I_NEG, K_BEYOND],
            ["a-c+1", "c-b"],
        ),
        (
            "E-W4",
            "Euler integral over (0,1) giving w4",
            zero_one,
            t1,
            ["b", "1-a"],
            "b-a+1",
            "c-1",
            W4,
            vec![I_NEG, K_BEYOND],
            ["b", "1-a"],
        ),
        (
            "E-W5",
            "Euler integral over (-inf,0) giving w5",
            neg_zero,
            t1,
            ["a-c+1", "b"],
            "a+b-c+1",
            "c-1",
            W5,
            vec![pos],
            ["b", "a-c+1"],
        ),
        (
            "E-W6",
            "Euler integral between x and 1 giving w6",
            ox,
            t1,
            ["1-a", "c-b"],
            "c-a-b+1",
            "c-1",
            W6,
            vec![J_UNIT, K_BEYOND],
            ["c-b", "1-a"],
        ),
        (
            "E2-W1",
            "Euler integral over (1,inf) giving w1",
            one_inf,
            t2,
            ["b", "c-b"],
            "c",
            "0",
            W1,
            vec![Interval::new(NEG_INF, 1.0)],
            ["c-b", "b"],
        ),
        (
            "E2-W2",
            "Euler integral over (0,x) giving w2",
            zx,
            t2,
            ["a-c+1", "1-a"],
            "2-c",
            "0",
            W2,
            vec![I_NEG, J_UNIT],
            ["1-a", "a-c+1"],
        ),
        (
            "E2-W3",
            "Euler integral over (0,1) giving w3",
            zero_one,
            t2,
            ["a-c+1", "c-b"],
            "a-b+1",
            "0",
            W3,
            vec![I_NEG, K_BEYOND],
            ["a-c+1", "c-b"],
        ),
        (
            "E2-W4",
            "Euler integral from x outward giving w4",
            bx,
            t2,
            ["b", "1-a"],
            "b-a+1",
            "0",
            W4,
            vec![I_NEG, K_BEYOND],
            ["1-a", "b"],
        ),
        (
            "E2-W5",
            "Euler integral over (-inf,0) giving w5",
            neg_zero,
            t2,
            ["a-c+1", "b"],
            "a+b-c+1",
            "0",
            W5,
            vec![pos],
            ["b", "a-c+1"],
        ),
        (
            "E2-W6",
            "Euler integral between x and 1 giving w6",
            ox,
            t2,
            ["1-a", "c-b"],
            "c-a-b+1",
            "0",
            W6,
            vec![J_UNIT, K_BEYOND],
            ["c-b", "1-a"],
        ),
    ];
    for (id_s, label, region, (ye, oe, ke), num, den, xe, kind, dom, cons) in rows {
        out.push(identity(
            id_s,
            label,
            Family::Euler,
            integral(region, ye, oe, ke, None, GammaExprs::none()),
            closed(&num, &[den], xe, "0", w(kind, id)),
            &cons,
            &dom,
        ));
    }
}

fn karp_sitnik(out: &mut Vec<IdentitySpec>) {
    out.push(IdentitySpec {
        id: "KS-3F2".into(),
        label: "3F2 as an integral of w5 against (1-xy)^-a".into(),
        family: Family::KarpSitnik,
        lhs: IntegralSpec {
            region: fixed(Bound::Zero, Bound::One),
            y_exponent: e("b-1"),
            one_minus_y_exponent: e("d+e-b-c-1"),
            kernel: Kernel::OneMinusProduct,
            kernel_exponent: e("-a"),
            inner: Inner::Fn(FnKind::W(W5), map(["d-c", "e-c", "b-c+1"])),
            gammas: GammaExprs::none(),
        },
        rhs: ClosedFormSpec {
            gammas: GammaExprs::new(&["b", "c", "d+e-b-c"], &["d", "e"]),
            x_exponent: e("0"),
            one_minus_x_exponent: e("0"),
            outer: Outer::F32([e("a"), e("b"), e("c"), e("d"), e("e")]),
        },
        constraints: ["b", "c", "d+e-b-c"].iter().map(|s| e(s)).collect(),
        x_domain: vec![Interval::new(-0.8, 0.8)],
    });
    out.push(identity(
        "KS-2F1",
        "the d = a case: integral against |x-y|^-a giving w3",
        Family::KarpSitnik,
        integral(
            fixed(Bound::Zero, Bound::One),
            "b-1",
            "a+e-b-c-1",
            "-a",
            Some(w(W5, ["a-c", "e-c", "b-c+1"])),
            GammaExprs::none(),
        ),
        closed(&["b", "c", "a+e-b-c"], &["a", "e"], "b-a", "0", w(W3, ["b", "b-e+1", "b-c+1"])),
        &["b", "c", "a+e-b-c"],
        &[K_BEYOND],
    ));
}

fn nested(
    outer_region: Region,
    outer_ke: &str,
    outer_gammas: GammaExprs,
    inner: IntegralSpec,
    inner_cf: ClosedFormSpec,
) -> IntegralSpec {
    IntegralSpec {
        region: outer_region,
        y_exponent: e("0"),
        one_minus_y_exponent: e("0"),
        kernel: Kernel::Difference,
        kernel_exponent: e(outer_ke),
        inner: Inner::Nested(Box::new(inner), Box::new(inner_cf)),
        gammas: outer_gammas,
    }
}

fn compositions(out: &mut Vec<IdentitySpec>) {
    let id = ["a", "b", "c"];
    let stieltjes_g = || GammaExprs::new(&["1-nu"], &[]);
    let rhs_w2 = || {
        closed(
            &["a-c-mu-nu+1", "b-c-mu-nu+1", "c-a-b+1"],
            &["2-c-mu-nu"],
            "c+mu+nu-1",
            "0",
            w(W2, ["a", "b", "c+mu+nu"]),
        )
    };
    let rhs_w5 = || {
        closed(&["a-c-mu-nu+1", "b-c-mu-nu+1", "c"], &["a+b-c-mu-nu+1"], "c+mu+nu-1", "0", w(W5, ["a", "b", "c+mu+nu"]))
    };
    let cons_w2 = ["mu", "1-nu-mu", "a-c-mu-nu+1", "b-c-mu-nu+1", "c-a-b+1"];
    let cons_w5 = ["mu", "1-nu-mu", "c", "a-c-mu-nu+1", "b-c-mu-nu+1"];

    out.push(identity(
        "C-94",
        "Weyl-type integral of the Stieltjes transform of w6 over (1,inf)",
        Family::Composition,
        nested(
            fixed(Bound::NegInf, Bound::X),
            "mu-1",
            frac(),
            integral(fixed(Bound::One, Bound::PosInf), "c-1", "0", "nu-1", Some(w(W6, id)), stieltjes_g()),
            closed(&["a-c-nu+1", "b-c-nu+1", "c-a-b+1"], &["2-c-nu"], "c+nu-1", "0", w(W2, ["a", "b", "c+nu"])),
        ),
        rhs_w2(),
        &cons_w2,
        &[I_NEG, J_UNIT],
    ));
    out.push(identity(
        "C-95",
        "integral to +inf of the Stieltjes transform of w1 over (-inf,0)",
        Family::Composition,
        nested(
            fixed(Bound::X, Bound::PosInf),
            "mu-1",
            frac(),
            integral(fixed(Bound::NegInf, Bound::Zero), "c-1", "0", "nu-1", Some(w(W1, id)), stieltjes_g()),
            closed(&["a-c-nu+1", "b-c-nu+1", "c"], &["a+b-c-nu+1"], "c+nu-1", "0", w(W5, ["a", "b", "c+nu"])),
        ),
        rhs_w5(),
        &cons_w5,
        &[Interval::new(0.0, POS_INF)],
    ));
    out.push(identity(
        "C-96",
        "Stieltjes transform over (1,inf) of the fractional integral of w6 from 1",
        Family::Composition,
        nested(
            fixed(Bound::One, Bound::PosInf),
            "nu-1",
            stieltjes_g(),
            integral(fixed(Bound::One, Bound::X), "c-1", "0", "mu-1", Some(w(W6, id)), frac()),
            closed(&["c-a-b+1"], &["c-a-b+mu+1"], "c+mu-1", "0", w(W6, ["a", "b", "c+mu"])),
        ),
        rhs_w2(),
        &cons_w2,
        &[I_NEG, J_UNIT],
    ));
    out.push(identity(
        "C-97",
        "Stieltjes transform over (-inf,0) of the fractional integral of w1 from 0",
        Family::Composition,
        nested(
            fixed(Bound::NegInf, Bound::Zero),
            "nu-1",
            stieltjes_g(),
            integral(fixed(Bound::X, Bound::Zero), "c-1", "0", "mu-1", Some(w(W1, id)), frac()),
            closed(&["c"], &["c+mu"], "c+mu-1", "0", w(W1, ["a", "b", "c+mu"])),
        ),
        rhs_w5(),
        &cons_w5,
        &[Interval::new(0.0, POS_INF)],
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let cat = build_catalog();
        assert_eq!(cat.len(), 59);
        let count = |f: Family| cat.iter().filter(|s| s.family == f).count();
        assert_eq!(count(Family::FracI) + count(Family::FracII) + count(Family::FracIII), 8);
        assert_eq!(count(Family::WTransform), 9);
        assert_eq!(count(Family::Stieltjes), 24);
        assert_eq!(count(Family::Euler), 12);
        assert_eq!(count(Family::Composition), 4);
        assert_eq!(count(Family::KarpSitnik), 2);
        let mut ids: Vec<_> = cat.iter().map(|s| s.id.clone()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 59);
    }

    #[test]
    fn stieltjes_domains_avoid_integration_interval() {
        for s in build_catalog().iter().filter(|s| s.family == Family::Stieltjes) {
            assert_eq!(s.x_domain.len(), 2);
            assert!(!s.lhs.region.involves_x());
            assert!(s.rhs.gammas.denominator.contains(&e("1-mu")));
        }
    }

    #[test]
    fn frac_i_cp_shape() {
        let cat = build_catalog();
        let s = find(&cat, "F-I-CP").unwrap();
        assert_eq!(s.lhs.y_exponent, e("c-1"));
        assert_eq!(s.lhs.one_minus_y_exponent, e("0"));
        assert_eq!(s.lhs.kernel_exponent, e("mu-1"));
        assert_eq!(s.rhs.x_exponent, e("c+mu-1"));
        assert_eq!(s.rhs.outer, Outer::Fn(FnKind::Pure2F1, ParamMap::new("a", "b", "c+mu")));
    }
}
