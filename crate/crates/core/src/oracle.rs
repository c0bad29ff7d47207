//! Brute-force ideal membership, independent of any order or reduction.
//!
//! Candidates `q|_{φ(u)}` are found by matching every body term of every
//! pattern (not just leads) at every site of every monomial reached so far,
//! closing over the new monomials they introduce. Membership is then exact
//! linear algebra over the rationals.

use std::collections::{BTreeMap, HashSet};

use num::{One, Zero};

use crate::opi::OpiPattern;
use crate::pattern::{Params, PatternError};
use crate::poly::{Poly, Rational};
use crate::term::{find_site, StarWord, Strategy, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    /// Monomials with a larger L-degree are not expanded further.
    pub max_l_degree: u32,
    /// Hard cap on distinct candidates.
    pub max_candidates: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self {
            max_l_degree: 4,
            max_candidates: 20_000,
        }
    }
}

/// One summand `c · q|_{φ(args)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessTerm {
    pub coeff: Rational,
    pub context: StarWord,
    pub pattern: String,
    pub args: Vec<Word>,
    /// The placed instance `q|_{φ(args)}`.
    pub placed: Poly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub terms: Vec<WitnessTerm>,
}

impl Witness {
    pub fn sum(&self) -> Poly {
        let mut out = Poly::zero();
        for t in &self.terms {
            out.add_scaled(&t.placed, &t.coeff);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    InIdeal(Witness),
    Unknown,
}

impl Membership {
    pub fn is_in_ideal(&self) -> bool {
        matches!(self, Membership::InIdeal(_))
    }
}

struct Candidate {
    context: StarWord,
    pattern: usize,
    args: Vec<Word>,
    placed: Poly,
}

/// Row of the echelon basis: a reduced vector and the candidate combination
/// that produces it. The pivot is the structurally largest word.
struct Row {
    vec: Poly,
    combo: BTreeMap<usize, Rational>,
}

fn max_word(p: &Poly) -> Option<Word> {
    p.monomials().max().cloned()
}

#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Word, Row>,
}

impl Echelon {
    /// Reduces `v` (with its combination) as far as the pivots allow; returns
    /// the residue, whose largest word is not a pivot unless it is zero.
    fn reduce(&self, mut v: Poly, mut combo: BTreeMap<usize, Rational>) -> (Poly, BTreeMap<usize, Rational>) {
        while let Some(w) = max_word(&v) {
            let Some(row) = self.rows.get(&w) else { break };
            let c = -v.coeff(&w);
            v.add_scaled(&row.vec, &c);
            for (i, d) in &row.combo {
                let e = combo.entry(*i).or_insert_with(Rational::zero);
                *e += d * &c;
            }
            combo.retain(|_, d| !d.is_zero());
        }
        (v, combo)
    }

    fn insert(&mut self, v: Poly, combo: BTreeMap<usize, Rational>) {
        let (v, combo) = self.reduce(v, combo);
        let Some(w) = max_word(&v) else { return };
        let inv = v.coeff(&w).recip();
        let combo = combo.into_iter().map(|(i, d)| (i, d * &inv)).collect();
        self.rows.insert(w, Row { vec: v.scale(&inv), combo });
    }
}

/// Decides whether `p` is a combination of placed instances reachable within
/// `bounds`. `InIdeal` always carries a verified witness; `Unknown` means no
/// combination was found, not that none exists.
pub fn ideal_membership_oracle(
    p: &Poly,
    patterns: &[OpiPattern],
    params: &Params,
    bounds: &OracleBounds,
) -> Result<Membership, PatternError> {
    if p.is_zero() {
        return Ok(Membership::InIdeal(Witness { terms: Vec::new() }));
    }
    let mut rules = Vec::new();
    for (pi, pat) in patterns.iter().enumerate() {
        pat.check_params(params)?;
        for (t, c) in pat.body.terms() {
            if !c.eval(params)?.is_zero() {
                rules.push((pi, t.clone()));
            }
        }
    }

    let mut cands: Vec<Candidate> = Vec::new();
    let mut seen_cands: HashSet<Poly> = HashSet::new();
    let mut seen_words: HashSet<Word> = p.monomials().cloned().collect();
    let mut queue: Vec<Word> = {
        let mut v: Vec<Word> = p.monomials().cloned().collect();
        v.sort();
        v
    };
    let mut next = 0;
    'close: while next < queue.len() {
        let m = queue[next].clone();
        next += 1;
        let mut found = Vec::new();
        find_site::<()>(&m, Strategy::LeftmostOutermost, &mut |site| {
            for (pi, t) in &rules {
                let pat = &patterns[*pi];
                for b in t.match_run(site.run(), pat.arity(), true) {
                    if b.iter().any(|x| x.is_none()) {
                        continue;
                    }
                    let args: Vec<Word> = b.iter().map(|x| Word::from_primes(x.unwrap().to_vec())).collect();
                    found.push((site.context(), *pi, args));
                }
            }
            None
        });
        for (context, pi, args) in found {
            let inst = patterns[pi].evaluate(&args, params)?;
            let placed = inst.in_context(&context);
            if placed.is_zero() || !seen_cands.insert(placed.clone()) {
                continue;
            }
            for w in placed.monomials() {
                if w.l_degree() <= bounds.max_l_degree && seen_words.insert(w.clone()) {
                    queue.push(w.clone());
                }
            }
            cands.push(Candidate {
                context,
                pattern: pi,
                args,
                placed,
            });
            if cands.len() >= bounds.max_candidates {
                break 'close;
            }
        }
    }

    let mut ech = Echelon::default();
    for (i, c) in cands.iter().enumerate() {
        ech.insert(c.placed.clone(), BTreeMap::from([(i, Rational::one())]));
    }
    let (residue, combo) = ech.reduce(p.clone(), BTreeMap::new());
    if !residue.is_zero() {
        return Ok(Membership::Unknown);
    }
    // p - Σ combo = 0, so p = Σ (-combo).
    let terms: Vec<WitnessTerm> = combo
        .into_iter()
        .map(|(i, d)| {
            let c = &cands[i];
            WitnessTerm {
                coeff: -d,
                context: c.context.clone(),
                pattern: patterns[c.pattern].id.clone(),
                args: c.args.clone(),
                placed: c.placed.clone(),
            }
        })
        .collect();
    let w = Witness { terms };
    assert_eq!(&w.sum(), p, "oracle witness does not reproduce its input");
    Ok(Membership::InIdeal(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::int;
    use crate::term::Generator;

    fn g(i: u32) -> Word {
        Word::gen(Generator(i))
    }

    fn pat(id: &str) -> OpiPattern {
        catalog::lookup(id).unwrap().pattern.clone()
    }

    #[test]
    fn generator_is_member() {
        let d = pat("differential");
        let s = d.evaluate(&[g(0), g(1)], &Params::defaults()).unwrap();
        let m = ideal_membership_oracle(&s, &[d], &Params::defaults(), &OracleBounds::default()).unwrap();
        let Membership::InIdeal(w) = m else { panic!("expected membership") };
        assert_eq!(w.len(), 1);
        assert!(w.terms[0].context.is_hole());
    }

    #[test]
    fn lone_monomial_is_unknown() {
        let d = pat("differential");
        let p = Poly::monomial(g(0).concat(&g(1)).bracket());
        let m = ideal_membership_oracle(&p, &[d], &Params::defaults(), &OracleBounds::default()).unwrap();
        assert_eq!(m, Membership::Unknown);
    }

    #[test]
    fn combination_in_context_is_found() {
        let d = pat("differential");
        let ps = Params::defaults();
        let a = d.evaluate(&[g(0).concat(&g(1)), g(2)], &ps).unwrap();
        let b = d.evaluate(&[g(0), g(1)], &ps).unwrap().mul_word_right(&g(2).bracket());
        let p = &a.scale(&int(3)) - &b;
        let m = ideal_membership_oracle(&p, &[d], &ps, &OracleBounds::default()).unwrap();
        assert!(m.is_in_ideal());
    }
}
