//! Free operated algebras over a generator set.
//!
//! Bracketed words and one-hole contexts ([`term`]), the monomial orders `dt`,
//! `o` and `qc` ([`order`]), exact polynomials ([`poly`]), identity patterns
//! ([`pattern`], [`opi`], [`catalog`]), reduction ([`rewrite`]), bounded
//! composition checks ([`gs`]), a brute-force ideal membership test
//! ([`oracle`]) and the text front end ([`dsl`]).

pub mod catalog;
pub mod dsl;
pub mod gs;
pub mod opi;
pub mod oracle;
pub mod order;
pub mod pattern;
pub mod poly;
pub mod rewrite;
pub mod term;

pub use order::OrderKind;
pub use poly::{Poly, Rational};
pub use term::{Alphabet, Generator, StarWord, Word};
