//! Shared fixtures for the integration tests and the acceptance harness.
#![allow(dead_code)]

pub mod golden;
pub mod random;

use opalg_core::catalog;
use opalg_core::dsl;
use opalg_core::opi::OpiPattern;
use opalg_core::{Alphabet, Poly, StarWord, Word};

/// `x`, `y`, `z` in that rank order.
pub fn xyz() -> Alphabet {
    Alphabet::from_names(["x", "y", "z"]).unwrap()
}

pub fn word(a: &mut Alphabet, s: &str) -> Word {
    dsl::parse_word(s, a, false).unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

pub fn poly(a: &mut Alphabet, s: &str) -> Poly {
    dsl::parse_poly(s, a, false).unwrap_or_else(|e| panic!("bad poly {s:?}: {e}"))
}

pub fn star(a: &mut Alphabet, s: &str) -> StarWord {
    dsl::parse_star_word(s, a, false).unwrap_or_else(|e| panic!("bad context {s:?}: {e}"))
}

pub fn pattern(id: &str) -> OpiPattern {
    catalog::lookup(id).unwrap_or_else(|| panic!("no catalog entry {id}")).pattern
}

pub mod agreement;
pub mod mutation;
