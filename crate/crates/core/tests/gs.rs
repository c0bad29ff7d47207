mod common;

use common::mutation;
use common::pattern;
use opalg_core::catalog;
use opalg_core::gs::{check_gs, Bounds, CheckOptions, GsReport, Verdict};
use opalg_core::oracle::{ideal_membership_oracle, OracleBounds};
use opalg_core::opi::OpiPattern;
use opalg_core::pattern::Params;
use opalg_core::poly::rat;
use opalg_core::OrderKind;

// Products are needed as arguments before anything overlaps.
const SMALL: Bounds = Bounds {
    max_z_degree: 2,
    max_l_degree: 1,
    max_depth: 1,
    pool: 3,
};

fn check(pats: &[OpiPattern], order: OrderKind, bounds: &Bounds, params: &Params, options: CheckOptions) -> GsReport {
    check_gs(pats, order, bounds, params, options).unwrap()
}

#[test]
fn multiplicity_one_list_is_clean_under_dt_at_small_bounds() {
    for e in catalog::multiplicity_one() {
        let r = check(&[e.pattern.clone()], OrderKind::Dt, &SMALL, &Params::defaults(), CheckOptions::default());
        assert!(r.verdict.passed(), "{}: {}", e.id(), r.verdict.name());
        assert!(r.complete);
        assert!(r.n_including > 0);
    }
}

#[test]
fn larger_bounds_see_at_least_as_much() {
    let pat = [pattern("differential")];
    let wider = Bounds {
        max_l_degree: 2,
        ..SMALL
    };
    let a = check(&pat, OrderKind::Dt, &SMALL, &Params::defaults(), CheckOptions::default());
    let b = check(&pat, OrderKind::Dt, &wider, &Params::defaults(), CheckOptions::default());
    assert!(a.n_instances < b.n_instances);
    assert!(a.n_intersection <= b.n_intersection);
    assert!(a.n_including <= b.n_including);
    assert!(b.verdict.passed());
}

/// Compositions the checker calls trivial are ideal members by brute force.
#[test]
fn trivial_records_are_ideal_members() {
    let pat = pattern("left-linear");
    let opts = CheckOptions {
        emit_records: true,
        ..CheckOptions::default()
    };
    let r = check(std::slice::from_ref(&pat), OrderKind::Dt, &SMALL, &Params::defaults(), opts);
    let mut checked = 0;
    for rec in r.records.iter().filter(|r| r.trivial == Some(true)).step_by(7).take(60) {
        let m = ideal_membership_oracle(&rec.composition, std::slice::from_ref(&pat), &Params::defaults(), &OracleBounds::default()).unwrap();
        assert!(m.is_in_ideal(), "composition {} not found", rec.composition);
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} records");
}

#[test]
fn flipped_differential_is_caught() {
    let d = pattern("differential");
    for i in 1..d.body.len() {
        let m = mutation::flip(&d, i);
        let opts = CheckOptions {
            fail_fast: true,
            ..CheckOptions::default()
        };
        let r = check(&[m], OrderKind::Dt, &SMALL, &Params::defaults(), opts);
        assert!(matches!(r.verdict, Verdict::CounterexampleFound(_)), "term {i}: {}", r.verdict.name());
    }
}

#[test]
fn reports_are_deterministic() {
    let pat = [pattern("right-linear")];
    let a = check(&pat, OrderKind::Dt, &SMALL, &Params::defaults(), CheckOptions::default());
    let b = check(&pat, OrderKind::Dt, &SMALL, &Params::defaults(), CheckOptions::default());
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}

/// The verdict for identity B does not depend on which nonzero d is used.
#[test]
fn identity_b_is_generic_in_d() {
    let pat = [pattern("new-identity-B-right")];
    let verdicts: Vec<_> = [rat(1, 1), rat(-2, 1), rat(3, 5)]
        .into_iter()
        .map(|d| {
            let params = Params::defaults().with("d", d);
            check(&pat, OrderKind::Dt, &SMALL, &params, CheckOptions::default()).verdict.name()
        })
        .collect();
    assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{verdicts:?}");
}

#[test]
fn every_catalog_identity_with_several_terms_has_mutants() {
    let all = catalog::catalog();
    let ms = mutation::mutants(&all);
    let multi = all.iter().filter(|e| !e.pattern.is_monomial()).count();
    assert!(ms.len() >= 2 * multi);
    for m in &ms {
        assert_ne!(m.pattern.body, pattern(&m.entry).body, "{} term {}", m.entry, m.term);
    }
}
