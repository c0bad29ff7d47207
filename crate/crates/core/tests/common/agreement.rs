//! Reduction to zero against brute-force membership on random inputs.

use opalg_core::opi::OpiPattern;
use opalg_core::oracle::{ideal_membership_oracle, OracleBounds};
use opalg_core::pattern::Params;
use opalg_core::rewrite::Reducer;
use opalg_core::{OrderKind, Poly};
use rand::Rng;

use super::pattern;
use super::random::{self, Shape};

/// Pairings that check clean at the default bounds.
pub const PAIRINGS: &[(&str, OrderKind)] = &[
    ("differential", OrderKind::Dt),
    ("left-linear", OrderKind::Dt),
    ("right-linear", OrderKind::Dt),
    ("mono-Lxy", OrderKind::Dt),
    ("mono-Lx-y", OrderKind::Dt),
    ("P5", OrderKind::O),
];

const ARGS: Shape = Shape::new(3, 2, 1, 1);
const CONTEXTS: Shape = Shape::new(3, 1, 1, 1);
const NOISE: Shape = Shape::new(3, 3, 2, 2);

pub struct Sample {
    pub pairing: (&'static str, OrderKind),
    pub poly: Poly,
    pub reduces_to_zero: bool,
    pub in_ideal: bool,
}

impl Sample {
    pub fn agrees(&self) -> bool {
        self.reduces_to_zero == self.in_ideal
    }
}

/// A random element of the ideal, a random polynomial, or their sum.
fn candidate(r: &mut impl Rng, pat: &OpiPattern, params: &Params) -> Poly {
    let mut p = Poly::zero();
    let kind = r.gen_range(0..3);
    if kind != 1 {
        for _ in 0..r.gen_range(1..=2) {
            let args: Vec<_> = (0..pat.arity()).map(|_| random::word(r, ARGS)).collect();
            let q = random::context(r, CONTEXTS);
            let inst = pat.evaluate(&args, params).unwrap().in_context(&q);
            p.add_scaled(&inst, &random::coeff(r));
        }
    }
    if kind != 0 || p.is_zero() {
        p = &p + &random::poly(r, NOISE, 2);
    }
    p
}

/// `n` samples cycling through [`PAIRINGS`].
pub fn run(seed: u64, n: usize) -> Vec<Sample> {
    let mut r = random::rng(seed);
    let params = Params::defaults();
    let bounds = OracleBounds::default();
    (0..n)
        .map(|i| {
            let (id, order) = PAIRINGS[i % PAIRINGS.len()];
            let pat = pattern(id);
            let poly = candidate(&mut r, &pat, &params);
            let reducer = Reducer::new(std::slice::from_ref(&pat), order, &params).unwrap();
            let reduces_to_zero = reducer.reduce_instance(&poly).unwrap().result().is_zero();
            let in_ideal = ideal_membership_oracle(&poly, &[pat], &params, &bounds)
                .unwrap()
                .is_in_ideal();
            Sample {
                pairing: (id, order),
                poly,
                reduces_to_zero,
                in_ideal,
            }
        })
        .collect()
}
