//! Formal polynomials in pattern variables `x1..xk` whose coefficients are
//! polynomials in named parameters, plus matching of pattern words against
//! concrete prime runs.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Poly, Rational};
use crate::term::{default_name, Alphabet, Generator, Prime, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("pattern `{id}` takes {expected} arguments, got {got}")]
    Arity {
        id: String,
        expected: usize,
        got: usize,
    },
    #[error("parameter `{name}` must be nonzero for `{id}`")]
    ZeroParameter { id: String, name: String },
}

/// Parameter values. Missing names are unbound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, Rational>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    /// `lambda = 0`, `b = 1`, `d = 1`.
    pub fn defaults() -> Self {
        let mut p = Self::new();
        p.set("lambda", Rational::zero());
        p.set("b", Rational::one());
        p.set("d", Rational::one());
        p
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.0.insert(canonical_param(name).to_string(), value);
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(canonical_param(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }
}

/// `λ` is accepted as a spelling of `lambda`.
pub fn canonical_param(name: &str) -> &str {
    if name == "λ" {
        "lambda"
    } else {
        name
    }
}

/// A commutative polynomial in parameters: sorted (name, exponent) lists to
/// rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff(BTreeMap<Vec<(String, u32)>, Rational>);

impl Coeff {
    pub fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        Coeff(m)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn param(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(vec![(canonical_param(name).to_string(), 1)], Rational::one());
        Coeff(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.0.keys().flat_map(|m| m.iter().map(|(n, _)| n.as_str()))
    }

    fn add_mono(&mut self, m: Vec<(String, u32)>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_mono(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Coeff {
        Coeff(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out = Coeff::default();
        for (a, c) in &self.0 {
            for (b, d) in &other.0 {
                let mut exps: BTreeMap<String, u32> = BTreeMap::new();
                for (n, e) in a.iter().chain(b) {
                    *exps.entry(n.clone()).or_default() += e;
                }
                out.add_mono(exps.into_iter().collect(), c * d);
            }
        }
        out
    }

    pub fn eval(&self, params: &Params) -> Result<Rational, PatternError> {
        let mut total = Rational::zero();
        for (m, c) in &self.0 {
            let mut t = c.clone();
            for (n, e) in m {
                let v = params
                    .get(n)
                    .ok_or_else(|| PatternError::UnboundParameter(n.clone()))?;
                for _ in 0..*e {
                    t *= v;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Monomials with parameters first, the constant last.
    fn render_order(&self) -> Vec<(&Vec<(String, u32)>, &Rational)> {
        let mut v: Vec<_> = self.0.iter().filter(|(m, _)| !m.is_empty()).collect();
        v.extend(self.0.iter().filter(|(m, _)| m.is_empty()));
        v
    }

    fn is_negative(&self) -> bool {
        self.render_order().first().is_some_and(|(_, c)| c.is_negative())
    }

    /// `None` when the absolute value is one.
    fn render_abs(&self) -> Option<String> {
        let c = if self.is_negative() { self.neg() } else { self.clone() };
        let mono = |m: &Vec<(String, u32)>, k: &Rational, with_one: bool| {
            let mut parts = Vec::new();
            if !k.is_one() || (m.is_empty() && with_one) {
                parts.push(k.to_string());
            }
            parts.extend(m.iter().map(|(n, e)| render_power(n, *e)));
            parts.join("*")
        };
        let terms = c.render_order();
        if terms.len() == 1 {
            let (m, k) = terms[0];
            return if m.is_empty() && k.is_one() {
                None
            } else {
                Some(mono(m, k, true))
            };
        }
        let mut s = String::from("(");
        for (i, (m, k)) in terms.iter().enumerate() {
            match (i, k.is_negative()) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&mono(m, &k.abs(), true));
        }
        s.push(')');
        Some(s)
    }
}

fn render_power(n: &str, e: u32) -> String {
    (0..e).map(|_| n.to_string()).collect::<Vec<_>>().join("*")
}

/// A prime of a pattern word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatPrime {
    Var(usize),
    Gen(Generator),
    Bracket(PatWord),
}

/// A nonempty product of pattern primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatWord {
    primes: Vec<PatPrime>,
}

/// For each pattern variable, the prime run it is bound to.
pub type Bindings<'a> = Vec<Option<&'a [Prime]>>;

impl PatWord {
    /// Caller guarantees nonemptiness.
    pub fn new(primes: Vec<PatPrime>) -> Self {
        assert!(!primes.is_empty(), "pattern words are nonempty");
        PatWord { primes }
    }

    pub fn var(i: usize) -> Self {
        PatWord::new(vec![PatPrime::Var(i)])
    }

    pub fn primes(&self) -> &[PatPrime] {
        &self.primes
    }

    pub fn bracket(&self) -> PatWord {
        PatWord::new(vec![PatPrime::Bracket(self.clone())])
    }

    pub fn concat(&self, other: &PatWord) -> PatWord {
        let mut primes = self.primes.clone();
        primes.extend_from_slice(&other.primes);
        PatWord { primes }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.primes
            .iter()
            .filter_map(|p| match p {
                PatPrime::Var(i) => Some(*i),
                PatPrime::Bracket(w) => w.max_var(),
                PatPrime::Gen(_) => None,
            })
            .max()
    }

    /// The distinct variables mentioned.
    pub fn vars(&self) -> std::collections::BTreeSet<usize> {
        let mut out = std::collections::BTreeSet::new();
        for p in &self.primes {
            match p {
                PatPrime::Var(i) => {
                    out.insert(*i);
                }
                PatPrime::Bracket(w) => out.extend(w.vars()),
                PatPrime::Gen(_) => {}
            }
        }
        out
    }

    pub fn instantiate(&self, args: &[Word]) -> Word {
        Word::from_primes(self.instantiate_primes(args))
    }

    fn instantiate_primes(&self, args: &[Word]) -> Vec<Prime> {
        let mut out = Vec::with_capacity(self.primes.len() + 2);
        for p in &self.primes {
            match p {
                PatPrime::Var(i) => out.extend_from_slice(args[*i].primes()),
                PatPrime::Gen(g) => out.push(Prime::Gen(*g)),
                PatPrime::Bracket(w) => {
                    out.push(Prime::Bracket(Word::from_primes(w.instantiate_primes(args))))
                }
            }
        }
        out
    }

    /// All variable bindings under which this pattern equals `target` exactly.
    /// Ordered by the length of the earliest-bound variable, shortest first
    /// unless `shortest_first` is false.
    pub fn match_run<'t>(
        &self,
        target: &'t [Prime],
        arity: usize,
        shortest_first: bool,
    ) -> Vec<Bindings<'t>> {
        match_seq(&self.primes, target, vec![None; arity], shortest_first)
    }

    /// A concrete word when the pattern has no variables.
    pub fn to_word(&self) -> Option<Word> {
        if self.max_var().is_some() {
            return None;
        }
        Some(self.instantiate(&[]))
    }

    pub fn render(&self, vars: &[String], alphabet: &Alphabet) -> String {
        let mut s = String::new();
        render_pat(&self.primes, &|i| vars[i].clone(), &|g| alphabet.name(g), &mut s);
        s
    }
}

impl fmt::Display for PatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_pat(&self.primes, &|i| format!("x{}", i + 1), &default_name, &mut s);
        f.write_str(&s)
    }
}

fn render_pat(
    primes: &[PatPrime],
    var: &dyn Fn(usize) -> String,
    gen: &dyn Fn(Generator) -> String,
    out: &mut String,
) {
    for (i, p) in primes.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        match p {
            PatPrime::Var(v) => out.push_str(&var(*v)),
            PatPrime::Gen(g) => out.push_str(&gen(*g)),
            PatPrime::Bracket(w) => {
                let mut k = 1;
                let mut inner = w;
                while let [PatPrime::Bracket(next)] = inner.primes.as_slice() {
                    k += 1;
                    inner = next;
                }
                if k == 1 {
                    out.push_str("L(");
                } else {
                    out.push_str(&format!("L^{k}("));
                }
                render_pat(&inner.primes, var, gen, out);
                out.push(')');
            }
        }
    }
}

fn match_seq<'t>(
    pat: &[PatPrime],
    tgt: &'t [Prime],
    binds: Bindings<'t>,
    shortest_first: bool,
) -> Vec<Bindings<'t>> {
    let Some((first, rest)) = pat.split_first() else {
        return if tgt.is_empty() { vec![binds] } else { Vec::new() };
    };
    // Every remaining pattern prime consumes at least one target prime.
    if tgt.len() < pat.len() {
        return Vec::new();
    }
    match first {
        PatPrime::Gen(g) => match &tgt[0] {
            Prime::Gen(h) if h == g => match_seq(rest, &tgt[1..], binds, shortest_first),
            _ => Vec::new(),
        },
        PatPrime::Bracket(inner) => match &tgt[0] {
            Prime::Bracket(w) => {
                let mut out = Vec::new();
                for b in match_seq(&inner.primes, w.primes(), binds, shortest_first) {
                    out.extend(match_seq(rest, &tgt[1..], b, shortest_first));
                }
                out
            }
            Prime::Gen(_) => Vec::new(),
        },
        PatPrime::Var(i) => {
            if let Some(bound) = binds[*i] {
                if tgt.len() >= bound.len() && &tgt[..bound.len()] == bound {
                    return match_seq(rest, &tgt[bound.len()..], binds, shortest_first);
                }
                return Vec::new();
            }
            let max = tgt.len() - rest.len();
            let lens: Box<dyn Iterator<Item = usize>> = if shortest_first {
                Box::new(1..=max)
            } else {
                Box::new((1..=max).rev())
            };
            let mut out = Vec::new();
            for len in lens {
                let mut b = binds.clone();
                b[*i] = Some(&tgt[..len]);
                out.extend(match_seq(rest, &tgt[len..], b, shortest_first));
            }
            out
        }
    }
}

/// A formal polynomial: pattern words to nonzero parameter coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PatPoly {
    terms: BTreeMap<PatWord, Coeff>,
}

impl PatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: PatWord) -> Self {
        let mut p = Self::zero();
        p.add_term(w, Coeff::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PatWord, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &PatWord) -> Option<&Coeff> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: PatWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &PatPoly) -> PatPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> PatPoly {
        let mut out = PatPoly::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &PatPoly) -> PatPoly {
        let mut out = PatPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.concat(b), c.mul(d));
            }
        }
        out
    }

    pub fn apply_l(&self) -> PatPoly {
        PatPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.bracket(), c.clone()))
                .collect(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(PatWord::max_var).max()
    }

    pub fn params(&self) -> Vec<String> {
        let mut ps: Vec<String> = self
            .terms
            .values()
            .flat_map(|c| c.params().map(str::to_string))
            .collect();
        ps.sort();
        ps.dedup();
        ps
    }

    /// Substitutes words for the variables and values for the parameters.
    pub fn evaluate(&self, args: &[Word], params: &Params) -> Result<Poly, PatternError> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.instantiate(args), c.eval(params)?);
        }
        Ok(out)
    }

    /// A concrete polynomial when there are no variables and no parameters.
    pub fn to_poly(&self) -> Option<Poly> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.to_word()?, c.as_constant()?);
        }
        Some(out)
    }

    pub fn render(&self, vars: &[String], alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if let Some(a) = c.render_abs() {
                s.push_str(&a);
                s.push('*');
            }
            s.push_str(&w.render(vars, alphabet));
        }
        s
    }
}

impl From<&Poly> for PatPoly {
    fn from(p: &Poly) -> Self {
        fn conv(w: &Word) -> PatWord {
            PatWord::new(
                w.primes()
                    .iter()
                    .map(|p| match p {
                        Prime::Gen(g) => PatPrime::Gen(*g),
                        Prime::Bracket(inner) => PatPrime::Bracket(conv(inner)),
                    })
                    .collect(),
            )
        }
        let mut out = PatPoly::zero();
        for (w, c) in p.terms() {
            out.add_term(conv(w), Coeff::constant(c.clone()));
        }
        out
    }
}
