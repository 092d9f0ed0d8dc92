use hyptrans::catalog::{
    build_catalog, export_json, find, realize_lhs, realize_rhs, sample_params, sample_params_with, Family, FnKind,
    IdentitySpec, Inner, Outer, ParamPoint, RealizeOptions,
};
use hyptrans::diffop::{kernel_residual, normalized_kernel_residual, transmutation_case, transmutation_cases};
use hyptrans::expr::Var;
use hyptrans::verify::{kernel_points, TransmuteOptions};
use hyptrans::{domain_of, Error, HypParams, SolutionKind};
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;

fn catalog() -> &'static [IdentitySpec] {
    static CAT: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    CAT.get_or_init(build_catalog)
}

#[test]
fn completeness() {
    let cat = catalog();
    assert_eq!(cat.len(), 59);
    let ids: HashSet<&str> = cat.iter().map(|s| s.id.as_str()).collect();
    assert_eq!(ids.len(), 59);
    let count = |f: Family| cat.iter().filter(|s| s.family == f).count();
    assert_eq!(count(Family::FracI) + count(Family::FracII) + count(Family::FracIII), 8);
    assert_eq!(count(Family::WTransform), 9);
    assert_eq!(count(Family::Stieltjes), 24);
    assert_eq!(count(Family::Euler), 12);
    assert_eq!(count(Family::KarpSitnik), 2);
    assert_eq!(count(Family::Composition), 4);
}

#[test]
fn family_filters() {
    let n = |f: &str| Family::ALL.iter().filter(|fam| fam.matches(f)).count();
    assert_eq!(n("fractional"), 3);
    assert_eq!(n("stieltjes"), 1);
    assert_eq!(n("Karp_Sitnik"), 1);
    assert!(!Family::is_known_filter("gauss"));
}

#[test]
fn export_document() {
    let doc: serde_json::Value = serde_json::from_str(&export_json(catalog())).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["count"], 59);
    let ids = doc["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 59);
    assert_eq!(ids[0]["id"], "F-I-CP");
    assert_eq!(ids[0]["family"], "frac-i");
    assert!(ids.iter().any(|s| s["family"] == "frac-ii"));
    assert!(ids[0]["constraints"].is_array() && ids[0]["x_domain"].is_array());
}

#[test]
fn constraint_soundness() {
    let mut checked = 0;
    for spec in catalog() {
        for pt in sample_params(spec, 5, 17).unwrap() {
            match realize_lhs(spec, &pt, RealizeOptions::default()) {
                Err(Error::NonIntegrable(m)) => panic!("{} at {pt:?}: {m}", spec.id),
                Err(e) => panic!("{} at {pt:?}: {e}", spec.id),
                Ok(_) => {}
            }
            match realize_rhs(spec, &pt) {
                Err(Error::Pole(v)) => panic!("{} at {pt:?}: pole {v}", spec.id),
                _ => checked += 1,
            }
        }
    }
    assert!(checked >= 1000);
}

#[test]
fn stieltjes_vanishes_continuously_at_integer_mu() {
    let spec = find(catalog(), "S-CP-W1toW5").unwrap();
    let pt = sample_params_with(spec, 3, 1, &[(Var::Mu, 1.0)]).unwrap()[0];
    assert_eq!(realize_rhs(spec, &pt).unwrap(), 0.0);
    let near = realize_rhs(spec, &ParamPoint { mu: 1.0 - 1e-6, ..pt }).unwrap();
    let away = realize_rhs(spec, &ParamPoint { mu: 0.9, ..pt }).unwrap();
    assert!(near.abs() <= 1e-4 * away.abs(), "{near} vs {away}");
    assert!(near != 0.0);
}

#[test]
fn fractional_nonzero_at_integer_mu() {
    let spec = find(catalog(), "F-I-CP").unwrap();
    for pt in sample_params_with(spec, 3, 5, &[(Var::Mu, 1.0)]).unwrap() {
        assert!(realize_rhs(spec, &pt).unwrap().abs() > 1e-6);
    }
}

/// A fractional family applied to another solution: the left side over
/// `|x|^{..} w_k(x; shifted)` must not depend on x.
fn table_cell(id: &str, kind: SolutionKind, seed: u64) -> usize {
    let base = find(catalog(), id).unwrap();
    let mut spec = base.clone();
    if let Inner::Fn(_, m) = spec.lhs.inner {
        spec.lhs.inner = Inner::Fn(FnKind::W(kind), m);
    }
    if let Outer::Fn(_, m) = spec.rhs.outer {
        spec.rhs.outer = Outer::Fn(FnKind::W(kind), m);
    }
    spec.x_domain = domain_of(kind);
    let iv = spec.x_domain[0];
    let (lo, hi) = (iv.lo.max(-6.0), iv.hi.min(6.0));
    let mut used = 0;
    for p in sample_params(base, seed, 8).unwrap() {
        let ratios: Result<Vec<f64>, Error> = [0.2, 0.5, 0.8]
            .iter()
            .map(|t| {
                let pt = ParamPoint { x: lo + t * (hi - lo), ..p };
                Ok(realize_lhs(&spec, &pt, RealizeOptions::default())?.integrate()?.value / realize_rhs(&spec, &pt)?)
            })
            .collect();
        let ratios = match ratios {
            // the sampled constraints are those of w1; skip points outside the cell's
            Err(Error::NonIntegrable(_)) => continue,
            r => r.unwrap(),
        };
        for r in &ratios[1..] {
            assert!((r - ratios[0]).abs() <= 1e-8 * ratios[0].abs(), "{id} on {kind}: {ratios:?}");
        }
        used += 1;
    }
    used
}

#[test]
fn table_spot_checks() {
    assert!(table_cell("F-II-AM", SolutionKind::W3, 11) >= 3);
    assert!(table_cell("F-II-AP", SolutionKind::W6, 11) >= 3);
    assert!(table_cell("F-III-CM", SolutionKind::W4, 11) >= 3);
}

#[test]
fn kernel_examples() {
    let p = HypParams::raw(0.4, 0.6, 1.2);
    let c_plus = transmutation_case("c+").unwrap();
    assert!(kernel_residual(&c_plus, &p, 2.5, 0.7, 0.3).unwrap().abs() <= 1e-9);
    for case in transmutation_cases() {
        let x = if case.x0 == 0.0 { 0.7 } else { -0.8 };
        let y = if case.x0 == 0.0 {
            0.3
        } else if case.x0 == 1.0 {
            0.1
        } else {
            -2.0
        };
        let r = normalized_kernel_residual(&case, &p, 1.0, x, y).unwrap();
        assert!(r <= 1e-9, "{}: {r:e}", case.name);
    }
    let dn = transmutation_case("a-,b-,c-").unwrap();
    assert!(normalized_kernel_residual(&dn, &HypParams::raw(1.3, 0.2, -0.4), 1.5, 0.4, -1.1).unwrap() <= 1e-9);
    assert!(kernel_residual(&c_plus, &p, 2.5, 0.3, 0.3).is_err());
}

#[test]
fn unknown_case() {
    assert!(matches!(transmutation_case("d+"), Err(Error::UnknownCase(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampler_deterministic(seed in 0u64..1000, idx in 0usize..59) {
        let spec = &catalog()[idx];
        prop_assert_eq!(sample_params(spec, seed, 3).unwrap(), sample_params(spec, seed, 3).unwrap());
    }

    #[test]
    fn kernel_rows_vanish(seed in 0u64..10_000, row in 0usize..8) {
        let case = &transmutation_cases()[row];
        let opts = TransmuteOptions { seed, n_points: 20, ..Default::default() };
        for k in kernel_points(case, &opts) {
            prop_assert!(k.error.is_none(), "{:?}", k.error);
            prop_assert!(k.residual.unwrap() <= 1e-8, "{} at {:?}", case.name, k);
        }
    }
}
