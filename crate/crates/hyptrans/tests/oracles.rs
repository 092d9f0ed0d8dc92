//! Reference values computed once at 50 significant digits with mpmath and
//! frozen here.

#![allow(clippy::excessive_precision)]

use hyptrans::catalog::{build_catalog, find, realize_lhs, realize_rhs, ParamPoint, RealizeOptions};
use hyptrans::diffop::d2f1;
use hyptrans::quadrature::{
    integrate_finite, integrate_semi_infinite, Direction, Node, QuadOptions, SingularIntegrand,
};
use hyptrans::special::{gauss_sum, ln_abs_gamma, pochhammer, series_2f1};
use hyptrans::{eval_w, gamma, hyp2f1, hyp3f2, HypParams, Scaled, SolutionKind};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[track_caller]
fn close(got: f64, want: f64, tol: f64) {
    assert!(rel(got, want) <= tol, "got {got:e}, want {want:e}, rel {:e}", rel(got, want));
}

fn f(a: f64, b: f64, c: f64, z: f64) -> f64 {
    hyp2f1(&HypParams::new(a, b, c).unwrap(), z).unwrap()
}

#[test]
fn gamma_values() {
    close(gamma(-0.5).unwrap(), -3.544907701811032054596, 1e-14);
    close(gamma(0.1).unwrap(), 9.513507698668731836292, 1e-14);
    close(gamma(-2.5).unwrap(), -0.9453087204829418812257, 1e-13);
    close(gamma(-3.7).unwrap(), 0.2516439959024226435101, 1e-13);
    close(ln_abs_gamma(5.0).unwrap().0, 24f64.ln(), 1e-14);
    close(ln_abs_gamma(150.3).unwrap().0, 601.5119608335363226426, 1e-14);
    assert_eq!(ln_abs_gamma(-2.5).unwrap().1, -1.0);
}

#[test]
fn gamma_poles() {
    assert!(gamma(0.0).is_err());
    assert!(gamma(-3.0).is_err());
}

#[test]
fn pochhammer_values() {
    close(pochhammer(0.5, 5), 29.53125, 1e-15);
    close(pochhammer(-2.5, 4), -0.9375, 1e-15);
    assert_eq!(pochhammer(-2.0, 3), 0.0);
    assert_eq!(pochhammer(1.7, 0), 1.0);
}

#[test]
fn hyp2f1_values() {
    let cases = [
        (0.3, 0.7, 1.1, -2.5, 0.7715962337136050358496, 1e-13),
        (0.3, 0.7, 1.1, 0.95, 1.577397004036994257998, 1e-12),
        (1.5, 0.5, 2.3, -0.8, 0.8169941377558302351177, 1e-13),
        (0.2, 0.9, 1.4, 0.999, 1.532859970407983266164, 1e-12),
        (2.2, -1.3, 0.7, -10.0, 82.18313903799449105632, 1e-12),
        (0.5, 0.5, 1.0, 0.9, 1.641264414342370799801, 1e-11),
        (0.5, 1.5, 1.3, -7.0, 0.3192744807560018540193, 1e-11),
        (1.2, 0.7, 2.9, -300.0, 0.05354213937418229116153, 1e-12),
        (-0.8, 2.4, -1.6, 0.45, 0.3219693644364175163572, 1e-13),
        (0.3, 0.6, 1.4, 0.5, 1.084509777244429217864, 1e-14),
    ];
    for (a, b, c, z, want, tol) in cases {
        close(f(a, b, c, z), want, tol);
        close(f(b, a, c, z), want, tol);
    }
}

#[test]
fn hyp2f1_trivial() {
    assert_eq!(f(0.3, 0.7, 1.1, 0.0), 1.0);
    assert_eq!(f(0.0, 0.7, 1.1, 0.6), 1.0);
    close(f(-2.0, 1.0, 1.0, 0.5), 0.25, 1e-15);
}

#[test]
fn hyp3f2_values() {
    close(hyp3f2(1.0, 1.0, 1.0, 2.0, 2.0, 0.5).unwrap(), 1.164481052930025011805, 1e-13);
    close(hyp3f2(0.3, 0.6, 1.2, 1.7, 2.1, -0.8).unwrap(), 0.9596370148934587931731, 1e-13);
}

#[test]
fn gauss_summation() {
    let p = HypParams::new(0.3, 0.4, 1.5).unwrap();
    close(gauss_sum(&p).unwrap(), 1.181191851094815769369, 1e-14);
    close(gauss_sum(&HypParams::new(0.0, 0.4, 1.5).unwrap()).unwrap(), 1.0, 1e-15);
    let g15 = gamma(1.5).unwrap();
    close(gauss_sum(&HypParams::new(0.5, 0.5, 2.0).unwrap()).unwrap(), 1.0 / (g15 * g15), 1e-14);
    assert!(gauss_sum(&HypParams::new(0.8, 0.9, 1.5).unwrap()).is_err());
    let v = gauss_sum(&HypParams::new(0.3, 0.6, 1.4).unwrap()).unwrap();
    close(v, 1.419869252418520780751, 1e-14);
    close(series_2f1(0.3, 0.6, 1.4, 0.999).unwrap(), 1.398041806847232436723, 1e-12);
}

#[test]
fn solution_values() {
    let p = HypParams::new(0.4, 0.7, 1.3).unwrap();
    let cases = [
        (SolutionKind::W1, -1.5, 0.8077378993289828011298),
        (SolutionKind::W2, 0.3, 1.463780110539403207353),
        (SolutionKind::W3, -2.0, 0.7399775018910024471944),
        (SolutionKind::W4, 3.5, 0.4463437226650667029232),
        (SolutionKind::W5, 2.5, 0.7227024346703780302131),
        (SolutionKind::W6, 0.6, 1.04354009535233727465),
    ];
    for (k, x, want) in cases {
        close(eval_w(k, x, &p).unwrap(), want, 1e-12);
    }
    let q = HypParams::new(0.4, 0.2, 1.1).unwrap();
    close(eval_w(SolutionKind::W3, 3.0, &q).unwrap(), 0.6695708452331482968393, 1e-13);
    assert_eq!(eval_w(SolutionKind::W1, 0.0, &p).unwrap(), 1.0);
}

#[test]
fn solution_domains() {
    let p = HypParams::new(0.4, 0.7, 1.3).unwrap();
    assert!(eval_w(SolutionKind::W1, 1.5, &p).is_err());
    assert!(eval_w(SolutionKind::W3, 0.5, &p).is_err());
    assert!(eval_w(SolutionKind::W5, -0.5, &p).is_err());
    assert!(eval_w(SolutionKind::W6, -0.5, &p).is_err());
}

#[test]
fn derivative_value() {
    let p = HypParams::new(0.5, 0.5, 1.5).unwrap();
    close(d2f1(&p, 0.25).unwrap(), 0.2150059743653075657282, 1e-13);
}

#[test]
fn quadrature_finite_examples() {
    let g05 = gamma(0.5).unwrap();
    let f = SingularIntegrand::new(move |n: Node| Ok(Scaled::from_f64(n.dl.powf(-0.5) * n.dr.powf(-0.5) / g05)))
        .exponents(-0.5, -0.5);
    close(integrate_finite(&f, 0.0, 1.0, 1e-11).unwrap().value, std::f64::consts::PI.sqrt(), 1e-11);
    let one = SingularIntegrand::plain(|_| 1.0);
    close(integrate_finite(&one, 0.0, 1.0, 1e-11).unwrap().value, 1.0, 1e-14);
    let b =
        SingularIntegrand::new(|n: Node| Ok(Scaled::from_f64(n.dl.powf(-0.7) * n.dr.powf(-0.4)))).exponents(-0.7, -0.4);
    close(integrate_finite(&b, 0.0, 1.0, 1e-11).unwrap().value, 4.168914178907889663659, 1e-11);
}

#[test]
fn quadrature_semi_infinite_examples() {
    let f = SingularIntegrand::plain(|y: f64| y.powi(-3)).decay(-3.0);
    close(integrate_semi_infinite(&f, 1.0, Direction::PosInf, 1e-11).unwrap().value, 0.5, 1e-12);
    let g = SingularIntegrand::new(|n: Node| Ok(Scaled::from_f64(n.dl.sqrt() * (1.0 + n.y).powi(-3))))
        .exponents(0.5, 0.0)
        .decay(-2.5);
    close(
        integrate_semi_infinite(&g, 0.0, Direction::PosInf, 1e-11).unwrap().value,
        std::f64::consts::FRAC_PI_8,
        1e-11,
    );
    let (a, b, c, x) = (1.4, 0.6, 1.1, 0.5);
    let h = SingularIntegrand::new(move |n: Node| {
        Ok(Scaled::from_f64(n.dr.powf(b - 1.0) * (1.0 - n.y).powf(-a) * (x - n.y).powf(c - b - 1.0)))
    })
    .exponents(0.0, b - 1.0)
    .decay(c - a - 2.0);
    let r = integrate_semi_infinite(&h, 0.0, Direction::NegInf, 1e-11).unwrap();
    close(r.value, 1.73925995745179610757, 1e-11);
}

#[test]
fn quadrature_rejects_non_integrable() {
    let f = SingularIntegrand::plain(|y: f64| 1.0 / y).exponents(-1.0, 0.0);
    assert!(integrate_finite(&f, 0.0, 1.0, 1e-10).is_err());
    let g = SingularIntegrand::plain(|y: f64| 1.0 / y).decay(-1.0);
    assert!(integrate_semi_infinite(&g, 1.0, Direction::PosInf, 1e-10).is_err());
}

#[test]
fn catalog_fractional_point() {
    let cat = build_catalog();
    let s = find(&cat, "F-I-CP").unwrap();
    let pt = ParamPoint::new(0.5, 0.5, 1.2, 0.7, 0.6);
    let opts = RealizeOptions { quad: QuadOptions::with_rel_tol(1e-12), ..Default::default() };
    let lhs = realize_lhs(s, &pt, opts).unwrap().integrate().unwrap();
    close(lhs.value, 0.6673750728236134464302, 1e-11);
    close(realize_rhs(s, &pt).unwrap(), 0.6673750728236134464302, 1e-13);
}

#[test]
fn catalog_euler_point() {
    let cat = build_catalog();
    let pt = ParamPoint::new(1.4, 0.6, 1.1, 0.0, 0.5);
    close(realize_rhs(find(&cat, "E-W5").unwrap(), &pt).unwrap(), 1.73925995745179610757, 1e-12);
    let e1 = find(&cat, "E-W1").unwrap();
    let pt = ParamPoint::new(0.3, 0.6, 1.4, 0.0, 0.5);
    let lhs = realize_lhs(e1, &pt, RealizeOptions::default()).unwrap().integrate().unwrap().value;
    close(lhs, realize_rhs(e1, &pt).unwrap(), 1e-9);
}
