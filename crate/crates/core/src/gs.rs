//! Bounded composition checks for sets of identities.
//!
//! Every pattern is instantiated at all argument tuples drawn from a finite
//! slice of words. Intersection and including compositions among those
//! instances are formed and reduced; the set passes within the bounds when
//! every composition reduces to zero.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::opi::OpiPattern;
use crate::order::OrderKind;
use crate::pattern::{Params, PatternError};
use crate::poly::{Poly, Rational};
use crate::rewrite::{NfCache, ReductionTrace, Reducer, RewriteError, StabilityViolation};
use crate::term::{enumerate_words, find_site, Alphabet, Generator, StarWord, Strategy, Word};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

const NF_CACHE_CAP: usize = 300_000;

/// Limits on the argument words used to instantiate patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_z_degree: u32,
    pub max_l_degree: u32,
    pub max_depth: u32,
    pub pool: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_z_degree: 2,
            max_l_degree: 2,
            max_depth: 2,
            pool: 3,
        }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<(), GsError> {
        if self.max_z_degree == 0 || self.max_l_degree == 0 || self.max_depth == 0 {
            return Err(GsError::Bounds("degree and depth bounds must be positive".into()));
        }
        if self.pool < 3 {
            return Err(GsError::Bounds("the generator pool needs at least 3 generators".into()));
        }
        Ok(())
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.pool as u32).map(Generator).collect()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::standard(self.pool)
    }

    /// The argument words, in canonical order.
    pub fn argument_words(&self) -> Vec<Word> {
        enumerate_words(&self.generators(), self.max_z_degree, self.max_l_degree, self.max_depth)
    }
}

#[derive(Debug, Error)]
pub enum GsError {
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// A monic instance of one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub pattern: String,
    pub args: Vec<Word>,
    pub poly: Poly,
    pub lead: Word,
}

impl Instance {
    fn label(&self, a: &Alphabet) -> String {
        let args: Vec<String> = self.args.iter().map(|w| w.render(a)).collect();
        format!("{}({})", self.pattern, args.join(", "))
    }
}

/// Instantiates `pattern` at `args`, checking that the designated lead is the
/// true leading monomial. Returns `Ok(None)` for a zero instance.
pub fn instantiate(
    pattern: &OpiPattern,
    args: &[Word],
    order: OrderKind,
    params: &Params,
) -> Result<Option<Instance>, GsError> {
    let poly = pattern.evaluate(args, params)?;
    if poly.is_zero() {
        return Ok(None);
    }
    let shape = pattern
        .designated_lead(order, params)?
        .ok_or_else(|| RewriteError::NoLead(pattern.id.clone()))?;
    let expected = shape.instantiate(args);
    let actual = poly.max_term(order).map(|(w, _)| w.clone());
    if actual.as_ref() != Some(&expected) {
        return Err(GsError::Rewrite(RewriteError::Stability(Box::new(StabilityViolation {
            pattern: pattern.id.clone(),
            args: args.to_vec(),
            order,
            instance: poly,
            expected,
            actual,
        }))));
    }
    let poly = poly.monic(order).expect("nonzero");
    Ok(Some(Instance {
        pattern: pattern.id.clone(),
        args: args.to_vec(),
        poly,
        lead: expected,
    }))
}

fn tuples(words: &[Word], arity: usize) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                words.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// All instances within `bounds`, deduplicated by monic polynomial.
///
/// Each pattern is first checked at fresh generators, then at every argument tuple.
pub fn instantiate_all(
    patterns: &[OpiPattern],
    order: OrderKind,
    bounds: &Bounds,
    params: &Params,
) -> Result<Vec<Instance>, GsError> {
    bounds.validate()?;
    let words = bounds.argument_words();
    let mut seen: HashSet<Poly> = HashSet::new();
    let mut out = Vec::new();
    for p in patterns {
        p.check_params(params)?;
        instantiate(p, &p.fresh_args(), order, params)?;
        for args in tuples(&words, p.arity()) {
            if let Some(inst) = instantiate(p, &args, order, params)? {
                if seen.insert(inst.poly.clone()) {
                    out.push(inst);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositionKind {
    Intersection,
    Including,
}

impl CompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            CompositionKind::Intersection => "intersection",
            CompositionKind::Including => "including",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    /// `w = lead(f) u = v lead(g)`.
    Overlap { u: Word, v: Word },
    /// `w = lead(f) = q|lead(g)`.
    Context(StarWord),
}

/// Pattern id and arguments of an instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceRef {
    pub pattern: String,
    pub args: Vec<Word>,
}

impl From<&Instance> for InstanceRef {
    fn from(i: &Instance) -> Self {
        InstanceRef {
            pattern: i.pattern.clone(),
            args: i.args.clone(),
        }
    }
}

impl InstanceRef {
    fn render(&self, a: &Alphabet) -> String {
        let args: Vec<String> = self.args.iter().map(|w| w.render(a)).collect();
        format!("{}({})", self.pattern, args.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionRecord {
    pub kind: CompositionKind,
    pub f: InstanceRef,
    pub g: InstanceRef,
    pub w: Word,
    pub witness: Witness,
    pub composition: Poly,
    pub trace: Option<ReductionTrace>,
    /// `None` until checked.
    pub trivial: Option<bool>,
    /// The normal form, once checked.
    pub normal_form: Option<Poly>,
}

impl CompositionRecord {
    /// The intersection composition with `k` overlapping primes, if the
    /// suffix of `lead(f)` matches the prefix of `lead(g)`.
    pub fn intersection(f: &Instance, g: &Instance, k: usize) -> Option<Self> {
        let (fp, gp) = (f.lead.primes(), g.lead.primes());
        if k == 0 || k >= fp.len() || k >= gp.len() || fp[fp.len() - k..] != gp[..k] {
            return None;
        }
        let u = Word::new(gp[k..].to_vec()).ok()?;
        let v = Word::new(fp[..fp.len() - k].to_vec()).ok()?;
        let w = f.lead.concat(&u);
        debug_assert_eq!(w, v.concat(&g.lead));
        let composition = &f.poly.mul_word_right(&u) - &g.poly.mul_word_left(&v);
        Some(CompositionRecord {
            kind: CompositionKind::Intersection,
            f: f.into(),
            g: g.into(),
            w,
            witness: Witness::Overlap { u, v },
            composition,
            trace: None,
            trivial: None,
            normal_form: None,
        })
    }

    /// The including composition `f - q|g`, if `q|lead(g) = lead(f)` and the
    /// inclusion is proper.
    pub fn including(f: &Instance, g: &Instance, q: &StarWord) -> Option<Self> {
        if q.substitute(&g.lead) != f.lead || (q.is_hole() && f == g) {
            return None;
        }
        let composition = &f.poly - &g.poly.in_context(q);
        Some(CompositionRecord {
            kind: CompositionKind::Including,
            f: f.into(),
            g: g.into(),
            w: f.lead.clone(),
            witness: Witness::Context(q.clone()),
            composition,
            trace: None,
            trivial: None,
            normal_form: None,
        })
    }

    fn sort_key(&self) -> (CompositionKind, &Word, &InstanceRef, &InstanceRef, &Witness) {
        (self.kind, &self.w, &self.f, &self.g, &self.witness)
    }

    pub fn to_json(&self, a: &Alphabet, order: OrderKind) -> Value {
        let witness = match &self.witness {
            Witness::Overlap { u, v } => json!({ "u": u.render(a), "v": v.render(a) }),
            Witness::Context(q) => json!({ "q": q.render(a) }),
        };
        let mut obj = json!({
            "kind": self.kind.name(),
            "f": self.f.render(a),
            "g": self.g.render(a),
            "w": self.w.render(a),
            "witness": witness,
            "composition": self.composition.render(a, Some(order)),
            "trivial": self.trivial,
        });
        if let Some(nf) = &self.normal_form {
            obj["normal_form"] = json!(nf.render(a, Some(order)));
        }
        if let Some(t) = &self.trace {
            obj["trace"] = trace_json(t, a, order);
        }
        obj
    }
}

/// JSON steps of a reduction trace.
pub fn trace_json(t: &ReductionTrace, a: &Alphabet, order: OrderKind) -> Value {
    let mut before = t.input.clone();
    let steps: Vec<Value> = t
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let origin = s.rule.origin.as_ref().map(|o| {
                let args: Vec<String> = o.args.iter().map(|w| w.render(a)).collect();
                format!("{}({})", o.pattern, args.join(", "))
            });
            let v = json!({
                "step": i + 1,
                "monomial": s.monomial.render(a),
                "context": s.context.render(a),
                "rule_origin": origin,
                "before": before.render(a, Some(order)),
                "after": s.after.render(a, Some(order)),
            });
            before = s.after.clone();
            v
        })
        .collect();
    Value::Array(steps)
}

/// Visits every composition among `instances` in canonical order until `visit` breaks.
///
/// Including compositions with `q = ⋆` between two different instances with
/// the same lead are visited once, for the earlier instance as `f`.
pub fn for_each_composition(
    instances: &[Instance],
    visit: &mut dyn FnMut(CompositionRecord) -> ControlFlow<()>,
) {
    let mut by_lead: HashMap<&Word, Vec<usize>> = HashMap::new();
    let mut by_prefix: HashMap<Word, Vec<usize>> = HashMap::new();
    for (i, inst) in instances.iter().enumerate() {
        by_lead.entry(&inst.lead).or_default().push(i);
        let ps = inst.lead.primes();
        for k in 1..ps.len() {
            by_prefix
                .entry(Word::new(ps[..k].to_vec()).expect("nonempty"))
                .or_default()
                .push(i);
        }
    }
    for (fi, f) in instances.iter().enumerate() {
        let ps = f.lead.primes();
        for k in 1..ps.len() {
            let suffix = Word::new(ps[ps.len() - k..].to_vec()).expect("nonempty");
            for &gi in by_prefix.get(&suffix).into_iter().flatten() {
                if let Some(rec) = CompositionRecord::intersection(f, &instances[gi], k) {
                    if visit(rec).is_break() {
                        return;
                    }
                }
            }
        }
        let stop = find_site(&f.lead, Strategy::LeftmostOutermost, &mut |site| {
            let run = Word::new(site.run().to_vec()).expect("nonempty");
            let gs = by_lead.get(&run)?;
            let root = site.is_root();
            let q = site.context();
            for &gi in gs {
                if root && gi <= fi {
                    continue;
                }
                if let Some(rec) = CompositionRecord::including(f, &instances[gi], &q) {
                    if visit(rec).is_break() {
                        return Some(());
                    }
                }
            }
            None
        });
        if stop.is_some() {
            return;
        }
    }
}

/// Every composition among the instances of `patterns` within `bounds`, sorted canonically.
pub fn enumerate_compositions(
    patterns: &[OpiPattern],
    order: OrderKind,
    bounds: &Bounds,
    params: &Params,
) -> Result<Vec<CompositionRecord>, GsError> {
    let instances = instantiate_all(patterns, order, bounds, params)?;
    let mut out = Vec::new();
    for_each_composition(&instances, &mut |r| {
        out.push(r);
        ControlFlow::Continue(())
    });
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// Reduces the composition in instance mode and records the trace and verdict.
pub fn check_triviality(mut rec: CompositionRecord, reducer: &Reducer) -> Result<CompositionRecord, RewriteError> {
    let trace = reducer.reduce_instance(&rec.composition)?;
    let nf = trace.result().clone();
    rec.trivial = Some(nf.is_zero());
    rec.normal_form = Some(nf);
    rec.trace = Some(trace);
    Ok(rec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Keep every record, each with its reduction trace.
    pub emit_records: bool,
    /// Stop at the first nontrivial composition.
    pub fail_fast: bool,
    /// Give up, leaving the report incomplete, once this instant passes.
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    AllTrivialWithinBounds,
    CounterexampleFound(Box<CompositionRecord>),
    StabilityViolation(Box<StabilityViolation>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::AllTrivialWithinBounds => "AllTrivialWithinBounds",
            Verdict::CounterexampleFound(_) => "CounterexampleFound",
            Verdict::StabilityViolation(_) => "StabilityViolation",
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::AllTrivialWithinBounds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsReport {
    pub patterns: Vec<String>,
    pub order: OrderKind,
    pub params: Vec<(String, Rational)>,
    pub bounds: Bounds,
    pub n_instances: usize,
    pub n_intersection: usize,
    pub n_including: usize,
    pub n_trivial: usize,
    pub n_nontrivial: usize,
    /// False when the run stopped early.
    pub complete: bool,
    /// True when the deadline cut the run short.
    pub timed_out: bool,
    pub verdict: Verdict,
    pub records: Vec<CompositionRecord>,
}

impl GsReport {
    pub fn to_json(&self) -> Value {
        let a = self.bounds.alphabet();
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(n, v)| (n.clone(), json!(v.to_string())))
            .collect();
        let verdict = match &self.verdict {
            Verdict::AllTrivialWithinBounds => json!({ "kind": self.verdict.name() }),
            Verdict::CounterexampleFound(r) => json!({
                "kind": self.verdict.name(),
                "record": r.to_json(&a, self.order),
            }),
            Verdict::StabilityViolation(v) => json!({
                "kind": self.verdict.name(),
                "pattern": v.pattern,
                "args": v.args.iter().map(|w| w.render(&a)).collect::<Vec<_>>(),
                "expected_lead": v.expected.render(&a),
                "actual_lead": v.actual.as_ref().map(|w| w.render(&a)),
                "instance": v.instance.render(&a, Some(self.order)),
            }),
        };
        let mut obj = json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "pairing": {
                "opis": self.patterns,
                "order": self.order.name(),
                "params": params,
            },
            "bounds": {
                "max_z_degree": self.bounds.max_z_degree,
                "max_l_degree": self.bounds.max_l_degree,
                "max_depth": self.bounds.max_depth,
                "pool": self.bounds.pool,
            },
            "n_instances": self.n_instances,
            "n_intersection": self.n_intersection,
            "n_including": self.n_including,
            "n_trivial": self.n_trivial,
            "n_nontrivial": self.n_nontrivial,
            "complete": self.complete,
            "timed_out": self.timed_out,
            "verdict": verdict,
        });
        if !self.records.is_empty() {
            obj["records"] = Value::Array(self.records.iter().map(|r| r.to_json(&a, self.order)).collect());
        }
        obj
    }
}

impl fmt::Display for GsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.bounds.alphabet();
        let b = &self.bounds;
        writeln!(f, "pairing: {} under {}", self.patterns.join(", "), self.order)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(n, v)| format!("{n}={v}")).collect();
            writeln!(f, "params: {}", ps.join(", "))?;
        }
        writeln!(
            f,
            "bounds: z_degree <= {}, l_degree <= {}, depth <= {}, pool {}",
            b.max_z_degree, b.max_l_degree, b.max_depth, b.pool
        )?;
        writeln!(
            f,
            "instances: {}  intersection: {}  including: {}  trivial: {}  nontrivial: {}{}",
            self.n_instances,
            self.n_intersection,
            self.n_including,
            self.n_trivial,
            self.n_nontrivial,
            match (self.complete, self.timed_out) {
                (true, _) => "",
                (false, true) => "  (deadline reached)",
                (false, false) => "  (stopped early)",
            }
        )?;
        write!(f, "verdict: {}", self.verdict.name())?;
        match &self.verdict {
            Verdict::AllTrivialWithinBounds => {}
            Verdict::CounterexampleFound(r) => {
                write!(
                    f,
                    "\n  {} composition of {} and {} at w = {}\n  composition: {}",
                    r.kind.name(),
                    r.f.render(&a),
                    r.g.render(&a),
                    r.w.render(&a),
                    r.composition.render(&a, Some(self.order))
                )?;
                if let Some(nf) = &r.normal_form {
                    write!(f, "\n  normal form: {}", nf.render(&a, Some(self.order)))?;
                }
            }
            Verdict::StabilityViolation(v) => {
                let args: Vec<String> = v.args.iter().map(|w| w.render(&a)).collect();
                write!(
                    f,
                    "\n  {}({}): designated lead {} but actual lead {}",
                    v.pattern,
                    args.join(", "),
                    v.expected.render(&a),
                    v.actual.as_ref().map_or("none".into(), |w| w.render(&a))
                )?;
            }
        }
        Ok(())
    }
}

/// Instantiates, enumerates and reduces every composition within `bounds`.
pub fn check_gs(
    patterns: &[OpiPattern],
    order: OrderKind,
    bounds: &Bounds,
    params: &Params,
    options: CheckOptions,
) -> Result<GsReport, GsError> {
    let used: Vec<(String, Rational)> = {
        let mut names: Vec<String> = patterns.iter().flat_map(|p| p.params()).collect();
        names.sort();
        names.dedup();
        names
            .into_iter()
            .filter_map(|n| params.get(&n).map(|v| (n, v.clone())))
            .collect()
    };
    let mut report = GsReport {
        patterns: patterns.iter().map(|p| p.id.clone()).collect(),
        order,
        params: used,
        bounds: *bounds,
        n_instances: 0,
        n_intersection: 0,
        n_including: 0,
        n_trivial: 0,
        n_nontrivial: 0,
        complete: false,
        timed_out: false,
        verdict: Verdict::AllTrivialWithinBounds,
        records: Vec::new(),
    };
    let reducer = Reducer::new(patterns, order, params)?;
    let instances = match instantiate_all(patterns, order, bounds, params) {
        Ok(i) => i,
        Err(GsError::Rewrite(RewriteError::Stability(v))) => {
            report.verdict = Verdict::StabilityViolation(v);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.n_instances = instances.len();
    let mut cache = NfCache::new(NF_CACHE_CAP);
    let mut first_bad: Option<CompositionRecord> = None;
    let mut failure: Option<GsError> = None;
    let stop = |e: RewriteError, verdict: &mut Verdict, failure: &mut Option<GsError>| {
        match e {
            RewriteError::Stability(v) => *verdict = Verdict::StabilityViolation(v),
            e => *failure = Some(e.into()),
        }
        ControlFlow::Break(())
    };
    let mut stopped = false;
    let mut seen = 0usize;
    for_each_composition(&instances, &mut |mut rec| {
        seen += 1;
        if let Some(d) = options.deadline {
            if seen % 256 == 0 && Instant::now() > d {
                report.timed_out = true;
                stopped = true;
                return ControlFlow::Break(());
            }
        }
        match rec.kind {
            CompositionKind::Intersection => report.n_intersection += 1,
            CompositionKind::Including => report.n_including += 1,
        }
        let mut nf = match reducer.normal_form(&rec.composition, &mut cache) {
            Ok(nf) => nf,
            Err(e) => return stop(e, &mut report.verdict, &mut failure),
        };
        // A zero from the memoized pass is a valid reduction; anything else is
        // settled by the traced default-strategy reduction.
        if options.emit_records || !nf.is_zero() {
            match reducer.reduce_instance(&rec.composition) {
                Ok(t) => {
                    nf = t.result().clone();
                    rec.trace = Some(t);
                }
                Err(e) => return stop(e, &mut report.verdict, &mut failure),
            }
        }
        let trivial = nf.is_zero();
        if trivial {
            report.n_trivial += 1;
        } else {
            report.n_nontrivial += 1;
        }
        rec.trivial = Some(trivial);
        rec.normal_form = Some(nf);
        if !trivial && first_bad.is_none() {
            first_bad = Some(rec.clone());
        }
        if options.emit_records {
            report.records.push(rec);
        }
        if !trivial && options.fail_fast {
            stopped = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    report.complete = !stopped && !matches!(report.verdict, Verdict::StabilityViolation(_));
    report.records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    if !matches!(report.verdict, Verdict::StabilityViolation(_)) {
        if let Some(bad) = first_bad {
            report.verdict = Verdict::CounterexampleFound(Box::new(bad));
        }
    }
    Ok(report)
}

/// Human label of an instance, for diagnostics.
pub fn instance_label(i: &Instance, a: &Alphabet) -> String {
    i.label(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn small() -> Bounds {
        Bounds {
            max_z_degree: 1,
            max_l_degree: 1,
            max_depth: 1,
            pool: 3,
        }
    }

    fn two() -> Bounds {
        Bounds {
            max_z_degree: 2,
            ..small()
        }
    }

    #[test]
    fn qc_moves_the_lead_of_the_l2_differential_identity() {
        let p = lookup("l2-differential").unwrap().pattern;
        let r = check_gs(&[p], OrderKind::Qc, &small(), &Params::defaults(), CheckOptions::default()).unwrap();
        let Verdict::StabilityViolation(v) = r.verdict else {
            panic!("expected a stability violation")
        };
        assert_eq!(v.actual.unwrap().breadth(), 2);
    }

    #[test]
    fn default_bounds_give_99_argument_words() {
        assert_eq!(Bounds::default().argument_words().len(), 99);
    }

    #[test]
    fn breadth_one_leads_have_no_intersections() {
        let p = lookup("differential").unwrap().pattern;
        let recs = enumerate_compositions(&[p], OrderKind::Dt, &two(), &Params::defaults()).unwrap();
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r.kind == CompositionKind::Including));
    }

    #[test]
    fn p5_triple_overlap() {
        let p = lookup("P5").unwrap().pattern;
        let recs = enumerate_compositions(&[p], OrderKind::O, &small(), &Params::defaults()).unwrap();
        let a = small().alphabet();
        let hit = recs
            .iter()
            .find(|r| r.kind == CompositionKind::Intersection && r.w.render(&a) == "L(x)*L(y)*L(z)")
            .expect("overlap at L(x)L(y)L(z)");
        assert!(hit.composition.is_zero());
    }

    #[test]
    fn differential_passes_under_dt() {
        let p = lookup("differential").unwrap().pattern;
        let r = check_gs(&[p], OrderKind::Dt, &two(), &Params::defaults(), CheckOptions::default()).unwrap();
        assert!(r.verdict.passed(), "{r}");
        assert!(r.n_including > 0);
    }

    #[test]
    fn identity_c_is_unstable_under_o() {
        let p = lookup("new-identity-C").unwrap().pattern;
        let r = check_gs(&[p], OrderKind::O, &small(), &Params::defaults(), CheckOptions::default()).unwrap();
        assert_eq!(r.verdict.name(), "StabilityViolation");
    }
}
