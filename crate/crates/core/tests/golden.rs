mod common;

use common::golden::{Context, GoldenCase, CASES};
use common::{pattern, word, xyz};
use opalg_core::gs::{self, CompositionRecord};
use opalg_core::pattern::Params;
use opalg_core::rewrite::Reducer;
use opalg_core::{OrderKind, StarWord};

fn case(name: &str) -> &'static GoldenCase {
    CASES.iter().find(|c| c.name == name).expect("golden case")
}

/// Runs a case under every order it is claimed for and every context p.
fn check(name: &str) {
    let c = case(name);
    let mut failures = Vec::new();
    for &o in c.orders {
        for &p in c.contexts() {
            if let Err(e) = c.run(o, p) {
                failures.push(format!("{o}, p = {p:?}: {e}"));
            }
        }
    }
    assert!(failures.is_empty(), "{name}:\n  {}", failures.join("\n  "));
}

#[test]
fn l2_differential_case_1() {
    check("l2-differential case 1");
}

#[test]
fn l2_differential_case_2() {
    check("l2-differential case 2");
}

#[test]
fn l2_left_linear_case_3() {
    check("l2-left-linear case 3");
}

#[test]
fn l2_left_linear_case_4() {
    check("l2-left-linear case 4");
}

#[test]
fn identity_a_right_case_1() {
    check("new-identity-A-right case 1");
}

#[test]
fn identity_a_right_case_2() {
    check("new-identity-A-right case 2");
}

#[test]
fn identity_b_right_case_1() {
    check("new-identity-B-right case 1");
}

#[test]
fn identity_b_right_case_2() {
    check("new-identity-B-right case 2");
}

#[test]
fn identity_c_case_1() {
    check("new-identity-C case 1");
}

#[test]
fn identity_c_case_2() {
    check("new-identity-C case 2");
}

#[test]
fn p1_case_1() {
    check("P1 case 1");
}

#[test]
fn p1_case_2() {
    check("P1 case 2");
}

#[test]
fn p1_case_3_passes_through_l3() {
    check("P1 case 3");
}

// The same chains under dt, where every designated lead here is the true one,
// following the split each display uses.
#[test]
fn displayed_chains_reduce_to_zero_under_dt() {
    let mut failures = Vec::new();
    for c in CASES {
        for &p in c.contexts() {
            if let Err(e) = c.run_with(OrderKind::Dt, p, c.displayed) {
                failures.push(format!("{}, p = {p:?}: {e}", c.name));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn p1_case_3_trace_under_dt() {
    let run = case("P1 case 3").run(OrderKind::Dt, Context::Hole).unwrap();
    // -L²(L(x)y)z + L(L²(x)yz): the inner L(L(x)y), then both copies of L³(x)yz.
    assert_eq!(run.trace.steps.len(), 3);
    let mut a = xyz();
    assert!(run.trace.mentions(&word(&mut a, "L(L^2(x)*y)*z")));
    assert!(run.trace.result().is_zero());
}

/// Two splits of the same lead L²(xyz) give a root composition whose normal
/// form is a nonzero sum of irreducible words, for A, B and C but not for
/// the linear L² identities.
#[test]
fn split_ambiguity_separates_the_l2_identities() {
    let mut a = xyz();
    let (x, yz) = (word(&mut a, "x"), word(&mut a, "y*z"));
    let (xy, z) = (word(&mut a, "x*y"), word(&mut a, "z"));
    let mut verdicts = Vec::new();
    for id in ["l2-differential", "l2-left-linear", "l2-right-linear", "new-identity-A-right", "new-identity-B-right", "new-identity-C"] {
        let pat = pattern(id);
        let params = Params::defaults();
        let f = gs::instantiate(&pat, &[x.clone(), yz.clone()], OrderKind::Dt, &params).unwrap().unwrap();
        let g = gs::instantiate(&pat, &[xy.clone(), z.clone()], OrderKind::Dt, &params).unwrap().unwrap();
        assert_eq!(f.lead, g.lead);
        let rec = CompositionRecord::including(&f, &g, &StarWord::hole()).unwrap();
        let r = Reducer::new(&[pat], OrderKind::Dt, &params).unwrap();
        let nf = r.reduce_instance(&rec.composition).unwrap().result().clone();
        assert!(nf.monomials().all(|m| r.is_irreducible(m)));
        verdicts.push((id, nf.is_zero()));
    }
    assert_eq!(
        verdicts,
        [
            ("l2-differential", true),
            ("l2-left-linear", true),
            ("l2-right-linear", true),
            ("new-identity-A-right", false),
            ("new-identity-B-right", false),
            ("new-identity-C", false),
        ]
    );
}
