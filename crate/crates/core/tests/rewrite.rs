mod common;

use std::cmp::Ordering;

use common::random::{self, Shape};
use common::{pattern, poly, xyz};
use opalg_core::pattern::Params;
use opalg_core::rewrite::{Outcome, Reducer, RewriteError};
use opalg_core::term::Strategy as Split;
use opalg_core::OrderKind;
use proptest::prelude::*;

const INPUTS: Shape = Shape::new(3, 5, 4, 3);

/// Identities whose composition check comes back clean under dt.
const CLEAN_DT: &[&str] = &["mono-Lxy", "right-linear", "left-linear", "differential", "mono-Lx-y", "mono-x-Ly"];

fn reducer(id: &str, order: OrderKind) -> Reducer {
    Reducer::new(&[pattern(id)], order, &Params::defaults()).unwrap()
}

fn ids() -> impl Strategy<Value = &'static str> {
    prop::sample::select(CLEAN_DT.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn instance_mode_terminates_with_irreducible_result(id in ids(), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let p = random::poly(&mut r, INPUTS, 3);
        let red = reducer(id, OrderKind::Dt);
        let t = red.reduce_instance(&p).unwrap();
        prop_assert!(matches!(t.outcome, Outcome::NormalForm(_)));
        prop_assert!(t.result().monomials().all(|m| red.is_irreducible(m)));
    }

    #[test]
    fn every_step_replaces_a_word_by_smaller_ones(id in ids(), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let p = random::poly(&mut r, INPUTS, 2);
        let o = OrderKind::Dt;
        let t = reducer(id, o).reduce_instance(&p).unwrap();
        for s in &t.steps {
            prop_assert_eq!(s.context.substitute(&s.rule.lhs), s.monomial.clone());
            for m in s.rule.rhs.in_context(&s.context).monomials() {
                prop_assert_eq!(o.compare(m, &s.monomial), Ordering::Less);
            }
        }
    }

    // Different redex choices land on the same normal form.
    #[test]
    fn strategies_agree(id in ids(), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let p = random::poly(&mut r, INPUTS, 2);
        let a = reducer(id, OrderKind::Dt).with_strategy(Split::LeftmostInnermost).reduce_instance(&p).unwrap();
        let b = reducer(id, OrderKind::Dt).with_strategy(Split::RightmostOutermost).reduce_instance(&p).unwrap();
        prop_assert_eq!(a.result(), b.result());
    }

    #[test]
    fn normal_form_matches_traced_reduction(id in ids(), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let p = random::poly(&mut r, INPUTS, 2);
        let red = reducer(id, OrderKind::Dt);
        let mut cache = opalg_core::rewrite::NfCache::new(1 << 12);
        prop_assert_eq!(red.normal_form(&p, &mut cache).unwrap(), red.reduce_instance(&p).unwrap().result().clone());
    }
}

#[test]
fn differential_expands_a_bracketed_product() {
    let mut a = xyz();
    let t = reducer("differential", OrderKind::Dt).reduce_instance(&poly(&mut a, "L(x*y*z)")).unwrap();
    assert_eq!(t.result(), &poly(&mut a, "L(x)*y*z + x*L(y)*z + x*y*L(z)"));
}

#[test]
fn pattern_mode_respects_the_budget() {
    let mut a = xyz();
    let red = reducer("new-identity-C", OrderKind::Dt);
    let t = red.rewrite_pattern_mode(&poly(&mut a, "L^2(x*y)"), 2).unwrap();
    assert!(t.steps.len() <= 2);
}

#[test]
fn unstable_lead_is_reported() {
    let mut a = xyz();
    // The instance at (x, L(y)) leads with L²(x)L(y), not its designated shape.
    let err = reducer("new-identity-C", OrderKind::O)
        .reduce_instance(&poly(&mut a, "L^2(x)*L(y)"))
        .unwrap_err();
    assert!(matches!(err, RewriteError::Stability(_)), "{err}");
}
