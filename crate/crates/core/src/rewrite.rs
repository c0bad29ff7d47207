//! Reduction of operated polynomials by OPI instances.
//!
//! Instance mode checks, at every step, that the matched occurrence really is
//! the leading monomial of the instance used, so each step replaces a monomial
//! by strictly smaller ones. Pattern mode skips that check and runs on a step
//! budget; it reproduces rewriting that never terminates.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num::{One, Zero};
use thiserror::Error;

use crate::opi::OpiPattern;
use crate::order::OrderKind;
use crate::pattern::{Params, PatWord, PatternError};
use crate::poly::{mul_rat, LeadingData, Poly, PolyError, Rational, WordMap};
use crate::term::{find_site, Frame, Prime, StarWord, Strategy, Word};

/// Default step budget for pattern mode.
pub const DEFAULT_BUDGET: usize = 64;
/// Hard cap on instance-mode steps; only reachable when the order is not well-founded.
pub const INSTANCE_STEP_LIMIT: usize = 1_000_000;
const NF_DEPTH_LIMIT: usize = 500;

/// The designated shape matched somewhere, but the instance's true leading
/// monomial is a different word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityViolation {
    pub pattern: String,
    pub args: Vec<Word>,
    pub order: OrderKind,
    pub instance: Poly,
    pub expected: Word,
    /// `None` when the instance is the zero polynomial.
    pub actual: Option<Word>,
}

impl std::fmt::Display for StabilityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "instance {}({}) under {} has leading monomial {} but the designated shape gives {}",
            self.pattern,
            args.join(", "),
            self.order,
            self.actual
                .as_ref()
                .map_or_else(|| "none (zero instance)".to_string(), |w| w.to_string()),
            self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("stability violation: {0}")]
    Stability(Box<StabilityViolation>),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("order `{0}` cannot drive reduction; use dt, o or qc")]
    UnsupportedOrder(OrderKind),
    #[error("pattern `{0}` has no usable leading term under this order")]
    NoLead(String),
    #[error("designated lead of `{0}` does not mention every variable")]
    LeadMissesVariable(String),
    #[error("reduction exceeded {0} steps")]
    StepLimit(usize),
}

/// Where a rule came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOrigin {
    pub pattern: String,
    pub args: Vec<Word>,
    pub params: Vec<(String, Rational)>,
}

/// `lhs -> rhs` with every monomial of `rhs` below `lhs` (in instance mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Poly,
    pub origin: Option<RuleOrigin>,
}

/// Normalizes `p` to monic and splits it as `lead -> lead - p`.
pub fn orient(p: &Poly, order: OrderKind) -> Result<RewriteRule, PolyError> {
    let monic = p.monic(order)?;
    let LeadingData { monomial, .. } = monic.leading(order)?;
    let rhs = &Poly::monomial(monomial.clone()) - &monic;
    Ok(RewriteRule {
        lhs: monomial,
        rhs,
        origin: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Instance,
    Pattern,
}

/// One rewrite: `coefficient * monomial` replaced using `context|instance`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub monomial: Word,
    pub coefficient: Rational,
    pub context: StarWord,
    pub rule: RewriteRule,
    pub after: Poly,
    pub after_hash: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    NormalForm(Poly),
    BudgetExhausted(Poly),
}

impl Outcome {
    pub fn poly(&self) -> &Poly {
        match self {
            Outcome::NormalForm(p) | Outcome::BudgetExhausted(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Poly,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl ReductionTrace {
    pub fn result(&self) -> &Poly {
        self.outcome.poly()
    }

    /// Every monomial present at some point of the reduction.
    pub fn mentions(&self, w: &Word) -> bool {
        self.input.contains(w) || self.steps.iter().any(|s| s.after.contains(w))
    }
}

fn poly_hash(p: &Poly) -> u64 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    h.finish()
}

/// A pattern with its parameters evaluated and its lead shape fixed.
#[derive(Debug, Clone)]
struct BoundRule {
    id: String,
    arity: usize,
    terms: Vec<(PatWord, Rational)>,
    lead: PatWord,
}

impl BoundRule {
    fn instantiate(&self, args: &[Word]) -> Poly {
        self.terms
            .iter()
            .map(|(w, c)| (w.instantiate(args), c.clone()))
            .collect()
    }
}

/// A matched occurrence: `context|lhs` is the monomial, `instance` the OPI
/// instance whose term `lhs` carries `lhs_coeff`.
#[derive(Debug, Clone)]
pub struct Redex {
    pub context: StarWord,
    pub rule: usize,
    pub args: Vec<Word>,
    pub instance: Poly,
    pub lhs: Word,
    pub lhs_coeff: Rational,
}

/// Memo of monomial normal forms for one reducer.
#[derive(Debug, Default)]
pub struct NfCache {
    map: WordMap<Poly>,
    cap: usize,
}

impl NfCache {
    pub fn new(cap: usize) -> Self {
        NfCache {
            map: WordMap::default(),
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn insert(&mut self, w: Word, p: Poly) {
        if self.map.len() >= self.cap {
            self.map.clear();
        }
        self.map.insert(w, p);
    }
}

/// Reduction by a fixed set of patterns under one order.
#[derive(Debug, Clone)]
pub struct Reducer {
    rules: Vec<BoundRule>,
    order: OrderKind,
    params: Params,
    strategy: Strategy,
}

impl Reducer {
    pub fn new(patterns: &[OpiPattern], order: OrderKind, params: &Params) -> Result<Self, RewriteError> {
        if !order.is_monomial_order() {
            return Err(RewriteError::UnsupportedOrder(order));
        }
        let mut rules = Vec::with_capacity(patterns.len());
        for p in patterns {
            p.check_params(params)?;
            let lead = p
                .designated_lead(order, params)?
                .ok_or_else(|| RewriteError::NoLead(p.id.clone()))?;
            if lead.vars().len() != p.arity() {
                return Err(RewriteError::LeadMissesVariable(p.id.clone()));
            }
            let mut terms = Vec::new();
            for (w, c) in p.body.terms() {
                let v = c.eval(params)?;
                if !v.is_zero() {
                    terms.push((w.clone(), v));
                }
            }
            if !terms.iter().any(|(w, _)| *w == lead) {
                return Err(RewriteError::NoLead(p.id.clone()));
            }
            rules.push(BoundRule {
                id: p.id.clone(),
                arity: p.arity(),
                terms,
                lead,
            });
        }
        Ok(Reducer {
            rules,
            order,
            params: params.clone(),
            strategy: Strategy::default(),
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn order(&self) -> OrderKind {
        self.order
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn pattern_ids(&self) -> impl Iterator<Item = &str> {
        self.rules.iter().map(|r| r.id.as_str())
    }

    /// The instance of rule `rule` at `args`.
    pub fn instance(&self, rule: usize, args: &[Word]) -> Poly {
        self.rules[rule].instantiate(args)
    }

    fn violation(&self, rule: usize, args: Vec<Word>, instance: Poly, expected: Word) -> RewriteError {
        let actual = instance.max_term(self.order).map(|(w, _)| w.clone());
        RewriteError::Stability(Box::new(StabilityViolation {
            pattern: self.rules[rule].id.clone(),
            args,
            order: self.order,
            instance,
            expected,
            actual,
        }))
    }

    /// Tries every rule at one run; `context` builds the run's context on demand.
    fn redex_at(
        &self,
        run: &[Prime],
        context: &dyn Fn() -> StarWord,
        mode: Mode,
    ) -> Option<Result<Redex, RewriteError>> {
        let shortest = self.strategy.shortest_split_first();
        for (ri, rule) in self.rules.iter().enumerate() {
            for b in rule.lead.match_run(run, rule.arity, shortest) {
                let args: Vec<Word> = b
                    .iter()
                    .map(|s| Word::from_slice(s.expect("lead binds every variable")))
                    .collect();
                let instance = rule.instantiate(&args);
                let lhs = Word::from_slice(run);
                let lhs_coeff = instance.coeff(&lhs);
                match mode {
                    Mode::Pattern if lhs_coeff.is_zero() => continue,
                    Mode::Instance => {
                        let stable = instance
                            .max_term(self.order)
                            .is_some_and(|(w, _)| *w == lhs);
                        if !stable {
                            return Some(Err(self.violation(ri, args, instance, lhs)));
                        }
                    }
                    Mode::Pattern => {}
                }
                return Some(Ok(Redex {
                    context: context(),
                    rule: ri,
                    args,
                    instance,
                    lhs,
                    lhs_coeff,
                }));
            }
        }
        None
    }

    /// The first redex of `m` in strategy order.
    pub fn find_redex(&self, m: &Word, mode: Mode) -> Result<Option<Redex>, RewriteError> {
        find_site(m, self.strategy, &mut |site| self.redex_at(site.run(), &|| site.context(), mode)).transpose()
    }

    /// The first redex whose run sits at the top level of `m`, leftmost and shortest first.
    fn find_top_redex(&self, m: &Word) -> Result<Option<Redex>, RewriteError> {
        let ps = m.primes();
        for start in 0..ps.len() {
            for end in start + 1..=ps.len() {
                let ctx = || {
                    StarWord::from_frames(vec![Frame {
                        left: ps[..start].to_vec(),
                        right: ps[end..].to_vec(),
                    }])
                };
                if let Some(r) = self.redex_at(&ps[start..end], &ctx, Mode::Instance) {
                    return r.map(Some);
                }
            }
        }
        Ok(None)
    }

    fn origin(&self, rx: &Redex) -> RuleOrigin {
        let rule = &self.rules[rx.rule];
        let params = self
            .params
            .iter()
            .map(|(n, v)| (n.clone(), v.clone()))
            .collect();
        RuleOrigin {
            pattern: rule.id.clone(),
            args: rx.args.clone(),
            params,
        }
    }

    fn rule_of(&self, rx: &Redex) -> RewriteRule {
        let monic = rx.instance.scale(&rx.lhs_coeff.recip());
        let rhs = &Poly::monomial(rx.lhs.clone()) - &monic;
        RewriteRule {
            lhs: rx.lhs.clone(),
            rhs,
            origin: Some(self.origin(rx)),
        }
    }

    /// The largest reducible monomial of `p` with its redex.
    fn next_redex(&self, p: &Poly, mode: Mode) -> Result<Option<(Word, Redex)>, RewriteError> {
        for (w, _) in p.sorted_terms(Some(self.order)) {
            if let Some(rx) = self.find_redex(w, mode)? {
                return Ok(Some((w.clone(), rx)));
            }
        }
        Ok(None)
    }

    fn run(&self, p: &Poly, mode: Mode, budget: usize) -> Result<ReductionTrace, RewriteError> {
        let mut cur = p.clone();
        let mut steps = Vec::new();
        loop {
            let Some((m, rx)) = self.next_redex(&cur, mode)? else {
                return Ok(ReductionTrace {
                    input: p.clone(),
                    steps,
                    outcome: Outcome::NormalForm(cur),
                });
            };
            if steps.len() >= budget {
                return match mode {
                    Mode::Pattern => Ok(ReductionTrace {
                        input: p.clone(),
                        steps,
                        outcome: Outcome::BudgetExhausted(cur),
                    }),
                    Mode::Instance => Err(RewriteError::StepLimit(budget)),
                };
            }
            let c = cur.coeff(&m);
            let placed = rx.instance.in_context(&rx.context);
            cur.add_scaled(&placed, &(-(&c / &rx.lhs_coeff)));
            debug_assert!(!cur.contains(&m) || mode == Mode::Pattern);
            let after_hash = poly_hash(&cur);
            steps.push(TraceStep {
                monomial: m,
                coefficient: c,
                context: rx.context.clone(),
                rule: self.rule_of(&rx),
                after: cur.clone(),
                after_hash,
            });
        }
    }

    /// Reduces to normal form, asserting leading-monomial stability at every step.
    pub fn reduce_instance(&self, p: &Poly) -> Result<ReductionTrace, RewriteError> {
        self.run(p, Mode::Instance, INSTANCE_STEP_LIMIT)
    }

    /// Naive schema rewriting with no stability assertion, at most `budget` steps.
    pub fn rewrite_pattern_mode(&self, p: &Poly, budget: usize) -> Result<ReductionTrace, RewriteError> {
        self.run(p, Mode::Pattern, budget.max(1))
    }

    /// An instance-mode normal form, memoized per monomial.
    ///
    /// Works inside out: bracket arguments are normalized first, then only
    /// top-level runs are rewritten. Every step is a stability-checked
    /// instance step, so a zero result proves the input lies in the ideal
    /// generated below its leading monomial. For a Groebner-Shirshov set the
    /// result equals that of [`Reducer::reduce_instance`].
    pub fn normal_form(&self, p: &Poly, cache: &mut NfCache) -> Result<Poly, RewriteError> {
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            let nf = self.nf_monomial(w, cache, 0)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    fn nf_monomial(&self, m: &Word, cache: &mut NfCache, depth: usize) -> Result<Poly, RewriteError> {
        if let Some(p) = cache.map.get(m) {
            return Ok(p.clone());
        }
        if depth > NF_DEPTH_LIMIT {
            return Err(RewriteError::StepLimit(NF_DEPTH_LIMIT));
        }
        // Expand the product of the primes with normalized bracket arguments.
        let mut expanded: Vec<(Vec<Prime>, Rational)> = vec![(Vec::new(), Rational::one())];
        let mut changed = false;
        for p in m.primes() {
            match p {
                Prime::Gen(_) => expanded.iter_mut().for_each(|(ps, _)| ps.push(p.clone())),
                Prime::Bracket(u) => {
                    let nu = self.nf_monomial(u, cache, depth + 1)?;
                    if nu.len() != 1 || !nu.contains(u) || !nu.coeff(u).is_one() {
                        changed = true;
                    }
                    let mut next = Vec::with_capacity(expanded.len() * nu.len());
                    for (ps, c) in &expanded {
                        for (v, d) in nu.terms() {
                            let mut ps = ps.clone();
                            ps.push(Prime::Bracket(v.clone()));
                            next.push((ps, mul_rat(c, d)));
                        }
                    }
                    expanded = next;
                }
            }
        }
        let nf = if changed {
            let mut out = Poly::zero();
            for (ps, c) in expanded {
                let sub = self.nf_monomial(&Word::from_primes(ps), cache, depth + 1)?;
                out.add_scaled(&sub, &c);
            }
            out
        } else {
            match self.find_top_redex(m)? {
                None => Poly::monomial(m.clone()),
                Some(rx) => {
                    let mut out = Poly::zero();
                    let scale = -rx.lhs_coeff.recip();
                    for (t, c) in rx.instance.terms() {
                        if *t == rx.lhs {
                            continue;
                        }
                        let placed = rx.context.substitute(t);
                        let sub = self.nf_monomial(&placed, cache, depth + 1)?;
                        out.add_scaled(&sub, &mul_rat(c, &scale));
                    }
                    out
                }
            }
        };
        cache.insert(m.clone(), nf.clone());
        Ok(nf)
    }

    /// Whether `m` has no redex (stability is not checked).
    pub fn is_irreducible(&self, m: &Word) -> bool {
        matches!(self.find_redex(m, Mode::Pattern), Ok(None))
    }
}
