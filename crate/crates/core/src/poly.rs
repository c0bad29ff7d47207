//! Operated polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::hash_map::{DefaultHasher, Entry};
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::order::OrderKind;
use crate::term::{Alphabet, StarWord, Word};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Product that skips the gcd when a factor is one or both are integers.
pub(crate) fn mul_rat(a: &Rational, b: &Rational) -> Rational {
    if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Words already carry a mixed structural hash, so the map just uses it.
#[derive(Default)]
pub(crate) struct WordHasher(u64);

impl Hasher for WordHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(*b);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 ^= n;
    }
}

/// A hash map keyed by words.
pub(crate) type WordMap<V> = HashMap<Word, V, BuildHasherDefault<WordHasher>>;
type TermMap = WordMap<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no leading monomial")]
    Zero,
}

/// A finite combination of words with nonzero rational coefficients.
///
/// Terms live in a hash map; anything user-visible sorts them first.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: TermMap,
}

impl Hash for Poly {
    // Order-independent, since map iteration order is not canonical.
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut acc = 0u64;
        for (w, c) in &self.terms {
            let mut h = DefaultHasher::new();
            w.hash(&mut h);
            c.hash(&mut h);
            acc = acc.wrapping_add(h.finish());
        }
        state.write_usize(self.terms.len());
        state.write_u64(acc);
    }
}

/// Leading monomial and its coefficient under some order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingData {
    pub monomial: Word,
    pub coefficient: Rational,
}

impl LeadingData {
    pub fn is_monic(&self) -> bool {
        self.coefficient.is_one()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains_key(w)
    }

    /// Adds `c·w` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (w, d) in &other.terms {
                self.add_term(w.clone(), d.clone());
            }
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), mul_rat(d, c));
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), mul_rat(d, c))).collect(),
        }
    }

    pub fn apply_l(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.bracket(), c.clone()))
                .collect(),
        }
    }

    /// `q|_p`, extended linearly.
    pub fn in_context(&self, q: &StarWord) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(q.substitute(w), c.clone());
        }
        out
    }

    pub fn mul_word_right(&self, u: &Word) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.concat(u), c.clone());
        }
        out
    }

    pub fn mul_word_left(&self, u: &Word) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(u.concat(w), c.clone());
        }
        out
    }

    /// The order-maximal term, if any.
    pub fn max_term(&self, order: OrderKind) -> Option<(&Word, &Rational)> {
        let mut it = self.terms.iter();
        let mut best = it.next()?;
        for t in it {
            if order.compare(t.0, best.0) == Ordering::Greater {
                best = t;
            }
        }
        Some(best)
    }

    pub fn leading(&self, order: OrderKind) -> Result<LeadingData, PolyError> {
        let (w, c) = self.max_term(order).ok_or(PolyError::Zero)?;
        Ok(LeadingData {
            monomial: w.clone(),
            coefficient: c.clone(),
        })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, order: OrderKind) -> Result<Poly, PolyError> {
        let lc = self.leading(order)?.coefficient;
        Ok(self.scale(&lc.recip()))
    }

    /// Terms sorted descending by `order`, or by structure when `None`.
    pub fn sorted_terms(&self, order: Option<OrderKind>) -> Vec<(&Word, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        match order {
            Some(o) => ts.sort_by(|a, b| o.compare(b.0, a.0)),
            None => ts.sort_by(|a, b| a.0.cmp(b.0)),
        }
        ts
    }

    pub fn render(&self, alphabet: &Alphabet, order: Option<OrderKind>) -> String {
        let items: Vec<(String, Rational)> = self
            .sorted_terms(order)
            .into_iter()
            .map(|(w, c)| (w.render(alphabet), c.clone()))
            .collect();
        render_sum(&items)
    }
}

/// Renders `Σ c·m` with the conventions `-m`, `c*m` and `0` for the empty sum.
pub(crate) fn render_sum(items: &[(String, Rational)]) -> String {
    if items.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (m, c)) in items.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&a.to_string());
            s.push('*');
        }
        s.push_str(m);
    }
    s
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<_> = self
            .sorted_terms(None)
            .into_iter()
            .map(|(w, c)| (w.to_string(), c.clone()))
            .collect();
        f.write_str(&render_sum(&items))
    }
}

impl From<Word> for Poly {
    fn from(w: Word) -> Self {
        Poly::monomial(w)
    }
}

impl FromIterator<(Word, Rational)> for Poly {
    fn from_iter<T: IntoIterator<Item = (Word, Rational)>>(iter: T) -> Self {
        let mut p = Poly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.concat(b), mul_rat(c, d));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Generator;

    fn g(i: u32) -> Word {
        Word::gen(Generator(i))
    }
    fn p(w: Word) -> Poly {
        Poly::monomial(w)
    }

    #[test]
    fn linear_ops() {
        let a = p(g(0).bracket());
        assert!((&a + &(-&a)).is_zero());
        assert!(a.scale(&int(0)).is_zero());
        assert_eq!((&a + &a).coeff(&g(0).bracket()), int(2));
    }

    #[test]
    fn products() {
        let sum = &p(g(0)) + &p(g(1));
        let prod = &sum * &p(g(2));
        assert_eq!(prod, &p(g(0).concat(&g(2))) + &p(g(1).concat(&g(2))));
        let zero = &p(g(0)) - &p(g(0));
        assert!((&zero * &sum).is_zero());
    }

    #[test]
    fn apply_l_is_linear() {
        let q = &p(g(0)) + &p(g(1)).scale(&int(2));
        let lq = q.apply_l();
        assert_eq!(lq.coeff(&g(1).bracket()), int(2));
        assert!(Poly::zero().apply_l().is_zero());
        assert_eq!(p(g(0).bracket()).apply_l(), p(g(0).bracket_n(2)));
    }

    #[test]
    fn rendering() {
        let alpha = Alphabet::standard(3);
        let lxly = g(0).bracket().concat(&g(1).bracket());
        assert_eq!(Poly::term(lxly, int(2)).render(&alpha, None), "2*L(x)*L(y)");
        let l2xy = g(0).concat(&g(1)).bracket_n(2);
        assert_eq!(Poly::term(l2xy, rat(-1, 2)).render(&alpha, None), "-1/2*L^2(x*y)");
        assert_eq!(Poly::zero().render(&alpha, None), "0");
    }

    #[test]
    fn zero_has_no_lead() {
        assert_eq!(Poly::zero().leading(OrderKind::O), Err(PolyError::Zero));
    }
}
