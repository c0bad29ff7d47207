mod common;

use common::random::{self, Shape};
use common::xyz;
use opalg_core::dsl;
use opalg_core::term::find_subword_contexts;
use opalg_core::Alphabet;
use proptest::prelude::*;

const DEEP: Shape = Shape::new(3, 6, 5, 4);
const CTX: Shape = Shape::new(3, 3, 2, 2);

fn cfg() -> ProptestConfig {
    ProptestConfig {
        cases: 2_000,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn decomposition_reassembles(seed in any::<u64>()) {
        let u = random::word(&mut random::rng(seed), DEEP);
        prop_assert_eq!(u.l_block_decompose().reassemble().unwrap(), u);
    }

    #[test]
    fn contexts_are_found_again(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let u = random::word(&mut r, CTX);
        let q = random::context(&mut r, CTX);
        let w = q.substitute(&u);
        prop_assert!(find_subword_contexts(&w, &u).contains(&q), "q = {:?}, u = {}", q, u);
    }

    #[test]
    fn substitution_is_injective(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let q = random::context(&mut r, CTX);
        let u = random::word(&mut r, CTX);
        let v = random::word(&mut r, CTX);
        prop_assert_eq!(q.substitute(&u) == q.substitute(&v), u == v);
    }

    #[test]
    fn measures_add_up(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let u = random::word(&mut r, DEEP);
        let v = random::word(&mut r, DEEP);
        let uv = u.concat(&v);
        prop_assert_eq!(uv.breadth(), u.breadth() + v.breadth());
        prop_assert_eq!(uv.z_degree(), u.z_degree() + v.z_degree());
        prop_assert_eq!(uv.l_degree(), u.l_degree() + v.l_degree());
        prop_assert_eq!(u.bracket().l_degree(), u.l_degree() + 1);
        prop_assert_eq!(u.bracket().depth(), u.depth() + 1);
        prop_assert_eq!(u.bracket().breadth(), 1);
    }

    #[test]
    fn words_render_and_parse_back(seed in any::<u64>()) {
        let u = random::word(&mut random::rng(seed), DEEP);
        let mut a = xyz();
        let s = u.render(&a);
        prop_assert_eq!(dsl::parse_word(&s, &mut a, false).unwrap(), u);
    }

    #[test]
    fn polys_render_and_parse_back(seed in any::<u64>()) {
        let p = random::poly(&mut random::rng(seed), CTX, 5);
        let mut a = xyz();
        let s = p.render(&a, None);
        prop_assert_eq!(dsl::parse_poly(&s, &mut a, false).unwrap(), p);
    }

    #[test]
    fn contexts_render_and_parse_back(seed in any::<u64>()) {
        let q = random::context(&mut random::rng(seed), CTX);
        let mut a = xyz();
        let s = q.render(&a);
        prop_assert_eq!(dsl::parse_star_word(&s, &mut a, false).unwrap(), q);
    }
}

#[test]
fn undeclared_generator_is_located() {
    let mut a = xyz();
    let err = dsl::parse_poly("L(x*w) + y", &mut a, false).unwrap_err();
    let d = &err.0[0];
    assert_eq!((d.line, d.column, d.length), (1, 5, 1));
}

#[test]
fn unbalanced_bracket_is_reported() {
    let mut a = Alphabet::standard(3);
    assert!(dsl::parse_word("L(x0*x1", &mut a, false).is_err());
}
