//! The base deg-lex order on bracket-free words and the three recursive
//! monomial orders on bracketed words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::term::{Prime, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("deg-lex is only defined on bracket-free words, got `{0}`")]
    Bracketed(Word),
    #[error("unknown order `{0}` (expected dt, o or qc)")]
    Unknown(String),
    #[error("leading monomial of an empty set")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    DegLexBase,
    Dt,
    O,
    Qc,
}

impl OrderKind {
    /// The three orders on bracketed words.
    pub const MONOMIAL: [OrderKind; 3] = [OrderKind::Dt, OrderKind::O, OrderKind::Qc];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::DegLexBase => "deglex",
            OrderKind::Dt => "dt",
            OrderKind::O => "o",
            OrderKind::Qc => "qc",
        }
    }

    pub fn is_monomial_order(self) -> bool {
        self != OrderKind::DegLexBase
    }

    /// Compares two words.
    ///
    /// # Panics
    /// For `DegLexBase` on bracketed words; use [`OrderKind::try_compare`] there.
    pub fn compare(self, u: &Word, v: &Word) -> Ordering {
        match self {
            OrderKind::DegLexBase => compare_deg_lex(u, v).expect("deg-lex on bracketed word"),
            OrderKind::Dt => compare_dt(u, v),
            OrderKind::O => compare_o(u, v),
            OrderKind::Qc => compare_qc(u, v),
        }
    }

    pub fn try_compare(self, u: &Word, v: &Word) -> Result<Ordering, OrderError> {
        match self {
            OrderKind::DegLexBase => compare_deg_lex(u, v),
            _ => Ok(self.compare(u, v)),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dt" => Ok(OrderKind::Dt),
            "o" => Ok(OrderKind::O),
            "qc" => Ok(OrderKind::Qc),
            "deglex" | "deg-lex" => Ok(OrderKind::DegLexBase),
            _ => Err(OrderError::Unknown(s.to_string())),
        }
    }
}

/// Deg-lex on generator-only prime runs; the empty run is the minimum.
fn deglex_run(a: &[Prime], b: &[Prime]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn compare_deg_lex(u: &Word, v: &Word) -> Result<Ordering, OrderError> {
    for w in [u, v] {
        if !w.is_bracket_free() {
            return Err(OrderError::Bracketed(w.clone()));
        }
    }
    Ok(deglex_run(u.primes(), v.primes()))
}

/// Lexicographic comparison of prime sequences where a generator is below
/// every bracket and two brackets compare their arguments with `inner`.
fn primes_lex(a: &[Prime], b: &[Prime], inner: fn(&Word, &Word) -> Ordering) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        let c = match (p, q) {
            (Prime::Gen(x), Prime::Gen(y)) => x.cmp(y),
            (Prime::Gen(_), Prime::Bracket(_)) => Ordering::Less,
            (Prime::Bracket(_), Prime::Gen(_)) => Ordering::Greater,
            (Prime::Bracket(x), Prime::Bracket(y)) => inner(x, y),
        };
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

pub fn compare_dt(u: &Word, v: &Word) -> Ordering {
    if let (Some(a), Some(b)) = (u.single_bracket(), v.single_bracket()) {
        return compare_dt(a, b);
    }
    // The bracket-free base case is the same tuple comparison.
    u.z_degree()
        .cmp(&v.z_degree())
        .then_with(|| primes_lex(u.primes(), v.primes(), compare_dt))
}

pub fn compare_qc(u: &Word, v: &Word) -> Ordering {
    if u.depth() + v.depth() == 0 {
        return deglex_run(u.primes(), v.primes());
    }
    if let (Some(a), Some(b)) = (u.single_bracket(), v.single_bracket()) {
        return compare_qc(a, b);
    }
    u.z_degree()
        .cmp(&v.z_degree())
        .then_with(|| u.breadth().cmp(&v.breadth()))
        .then_with(|| primes_lex(u.primes(), v.primes(), compare_qc))
}

/// Splits a word into its outer generator runs and bracket arguments.
fn blocks(w: &Word) -> (Vec<&[Prime]>, Vec<&Word>) {
    let ps = w.primes();
    let mut outer = Vec::with_capacity(4);
    let mut args = Vec::with_capacity(3);
    let mut start = 0;
    for (i, p) in ps.iter().enumerate() {
        if let Prime::Bracket(a) = p {
            outer.push(&ps[start..i]);
            args.push(a);
            start = i + 1;
        }
    }
    outer.push(&ps[start..]);
    (outer, args)
}

pub fn compare_o(u: &Word, v: &Word) -> Ordering {
    if u.depth() + v.depth() == 0 {
        return deglex_run(u.primes(), v.primes());
    }
    let c = u
        .l_degree()
        .cmp(&v.l_degree())
        .then_with(|| u.l_breadth().cmp(&v.l_breadth()));
    if c != Ordering::Equal {
        return c;
    }
    let (uo, ua) = blocks(u);
    let (vo, va) = blocks(v);
    assert_eq!(ua.len(), va.len(), "equal L-breadth gives equal block counts");
    for (a, b) in ua.iter().zip(&va) {
        let c = compare_o(a, b);
        if c != Ordering::Equal {
            return c;
        }
    }
    for (a, b) in uo.iter().zip(&vo) {
        let c = deglex_run(a, b);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// The maximum of a nonempty set of words.
pub fn leading_among<'a, I>(order: OrderKind, monomials: I) -> Result<&'a Word, OrderError>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut best: Option<&Word> = None;
    for m in monomials {
        best = match best {
            Some(b) if order.try_compare(b, m)? != Ordering::Less => Some(b),
            _ => Some(m),
        };
    }
    best.ok_or(OrderError::Empty)
}
