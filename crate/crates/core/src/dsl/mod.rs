//! Text front end: words, polynomials and identity definitions.
//!
//! Products need an explicit `*`, `L^k(u)` abbreviates `k` nested brackets and
//! coefficients are written as `p/q`.

mod diagnostics;
mod lexer;
mod parser;

use std::collections::BTreeSet;

pub use diagnostics::{Diagnostic, Diagnostics, Severity, Span};
pub use parser::EMPTY_BRACKET;
use parser::{Expr, Parser, Stmt};

use crate::catalog;
use crate::opi::OpiPattern;
use crate::order::OrderKind;
use crate::pattern::{canonical_param, Coeff, Params, PatPoly, PatPrime, PatWord};
use crate::poly::Poly;
use crate::term::{Alphabet, Prime, StarPrime, StarWord, Word};

/// Built-in parameter names, always available in identity bodies.
pub const DEFAULT_PARAMS: [&str; 3] = ["lambda", "b", "d"];

/// How names in an expression are resolved.
pub struct Scope<'a> {
    pub vars: &'a [String],
    pub params: &'a BTreeSet<String>,
    pub alphabet: &'a mut Alphabet,
    /// Declare unknown names as new generators instead of failing.
    pub auto_declare: bool,
}

enum Value {
    Scalar(Coeff),
    Poly(PatPoly),
}

struct Lowerer<'a, 'b> {
    src: &'a str,
    scope: Scope<'b>,
}

impl Lowerer<'_, '_> {
    fn err(&self, span: Span, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(self.src, span, msg)
    }

    fn name(&mut self, name: &str, span: Span) -> Result<Value, Diagnostic> {
        if let Some(i) = self.scope.vars.iter().position(|v| v == name) {
            return Ok(Value::Poly(PatPoly::monomial(PatWord::var(i))));
        }
        if let Some(g) = self.scope.alphabet.lookup(name) {
            return Ok(Value::Poly(PatPoly::monomial(PatWord::new(vec![PatPrime::Gen(g)]))));
        }
        if self.scope.params.contains(canonical_param(name)) {
            return Ok(Value::Scalar(Coeff::param(name)));
        }
        if self.scope.auto_declare {
            let g = self
                .scope
                .alphabet
                .declare(name)
                .map_err(|e| self.err(span, e.to_string()))?;
            return Ok(Value::Poly(PatPoly::monomial(PatWord::new(vec![PatPrime::Gen(g)]))));
        }
        Err(self
            .err(span, format!("undeclared name `{name}`"))
            .with_note("declare generators with `gens`, or use a variable from the identity head"))
    }

    fn lower(&mut self, e: &Expr) -> Result<Value, Diagnostic> {
        match e {
            Expr::Num(r, _) => Ok(Value::Scalar(Coeff::constant(r.clone()))),
            Expr::Name(n, sp) => self.name(n, *sp),
            Expr::Hole(sp) => Err(self.err(*sp, "a hole is only allowed in a context")),
            Expr::L { power, arg, span } => match self.lower(arg)? {
                Value::Scalar(_) => Err(self
                    .err(*span, "L applied to a scalar")
                    .with_note("there is no unit word, so scalars cannot be bracketed")),
                Value::Poly(p) => {
                    let mut p = p;
                    for _ in 0..*power {
                        p = p.apply_l();
                    }
                    Ok(Value::Poly(p))
                }
            },
            Expr::Product(fs, _) => {
                let mut acc = Value::Scalar(Coeff::one());
                for f in fs {
                    let v = self.lower(f)?;
                    acc = match (acc, v) {
                        (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a.mul(&b)),
                        (Value::Scalar(a), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(a)) => {
                            Value::Poly(p.scale(&a))
                        }
                        (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.mul(&q)),
                    };
                }
                Ok(acc)
            }
            Expr::Sum(ts, _) => {
                let mut acc: Option<Value> = None;
                for (neg, t) in ts {
                    let mut v = self.lower(t)?;
                    if *neg {
                        v = match v {
                            Value::Scalar(c) => Value::Scalar(c.neg()),
                            Value::Poly(p) => Value::Poly(p.scale(&Coeff::one().neg())),
                        };
                    }
                    acc = Some(match (acc, v) {
                        (None, v) => v,
                        (Some(Value::Scalar(a)), Value::Scalar(b)) => Value::Scalar(a.add(&b)),
                        (Some(Value::Poly(p)), Value::Poly(q)) => Value::Poly(p.add(&q)),
                        _ => {
                            return Err(self
                                .err(t.span(), "cannot add a scalar to a polynomial")
                                .with_note("the non-unitary setting has no constant terms"))
                        }
                    });
                }
                Ok(acc.expect("sums are nonempty"))
            }
        }
    }

    /// Lowers to a polynomial; a zero scalar is the zero polynomial.
    fn lower_poly(&mut self, e: &Expr) -> Result<PatPoly, Diagnostic> {
        match self.lower(e)? {
            Value::Poly(p) => Ok(p),
            Value::Scalar(c) if c.is_zero() => Ok(PatPoly::zero()),
            Value::Scalar(_) => Err(self
                .err(e.span(), "a nonzero scalar is not an operated polynomial")
                .with_note("the non-unitary setting has no constant terms")),
        }
    }

    fn star_primes(&mut self, e: &Expr) -> Result<Vec<StarPrime>, Diagnostic> {
        match e {
            Expr::Hole(_) => Ok(vec![StarPrime::Hole]),
            Expr::Name(n, sp) => match self.name(n, *sp)? {
                Value::Poly(p) => {
                    let (w, _) = p.terms().next().expect("monomial");
                    match w.primes() {
                        [PatPrime::Gen(g)] => Ok(vec![StarPrime::Gen(*g)]),
                        _ => Err(self.err(*sp, format!("`{n}` is not a generator"))),
                    }
                }
                Value::Scalar(_) => Err(self.err(*sp, format!("`{n}` is a parameter, not a generator"))),
            },
            Expr::L { power, arg, .. } => {
                let mut inner = self.star_primes(arg)?;
                for _ in 0..*power {
                    inner = vec![StarPrime::Bracket(inner)];
                }
                Ok(inner)
            }
            Expr::Product(fs, _) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(self.star_primes(f)?);
                }
                Ok(out)
            }
            Expr::Num(_, sp) => Err(self.err(*sp, "expected a word, found a coefficient")),
            Expr::Sum(_, sp) => Err(self.err(*sp, "expected a word, found a sum")),
        }
    }
}

fn plain_primes(ps: &[StarPrime]) -> Option<Vec<Prime>> {
    ps.iter()
        .map(|p| match p {
            StarPrime::Gen(g) => Some(Prime::Gen(*g)),
            StarPrime::Bracket(inner) => Some(Prime::Bracket(Word::new(plain_primes(inner)?).ok()?)),
            StarPrime::Hole => None,
        })
        .collect()
}

fn expr_of(src: &str) -> Result<Expr, Diagnostics> {
    Parser::new(src)?.expression_only()
}

fn no_params() -> BTreeSet<String> {
    BTreeSet::new()
}

/// Parses a concrete polynomial.
pub fn parse_poly(src: &str, alphabet: &mut Alphabet, auto_declare: bool) -> Result<Poly, Diagnostics> {
    let e = expr_of(src)?;
    let params = no_params();
    let mut l = Lowerer {
        src,
        scope: Scope {
            vars: &[],
            params: &params,
            alphabet,
            auto_declare,
        },
    };
    let p = l.lower_poly(&e).map_err(Diagnostics::single)?;
    Ok(p.to_poly().expect("no variables or parameters in scope"))
}

/// Parses a single bracketed word.
pub fn parse_word(src: &str, alphabet: &mut Alphabet, auto_declare: bool) -> Result<Word, Diagnostics> {
    let e = expr_of(src)?;
    let params = no_params();
    let mut l = Lowerer {
        src,
        scope: Scope {
            vars: &[],
            params: &params,
            alphabet,
            auto_declare,
        },
    };
    let ps = l.star_primes(&e).map_err(Diagnostics::single)?;
    plain_primes(&ps)
        .and_then(|ps| Word::new(ps).ok())
        .ok_or_else(|| Diagnostics::single(Diagnostic::error(src, e.span(), "a hole is only allowed in a context")))
}

/// Parses a context with exactly one hole, written `⋆` or `_`.
pub fn parse_star_word(src: &str, alphabet: &mut Alphabet, auto_declare: bool) -> Result<StarWord, Diagnostics> {
    let e = expr_of(src)?;
    let params = no_params();
    let mut l = Lowerer {
        src,
        scope: Scope {
            vars: &[],
            params: &params,
            alphabet,
            auto_declare,
        },
    };
    let ps = l.star_primes(&e).map_err(Diagnostics::single)?;
    StarWord::from_tree(&ps).map_err(|err| Diagnostics::single(Diagnostic::error(src, e.span(), err.to_string())))
}

/// Parses an identity body in the variables `vars`.
pub fn parse_pattern(
    src: &str,
    vars: &[String],
    params: &BTreeSet<String>,
    alphabet: &mut Alphabet,
) -> Result<PatPoly, Diagnostics> {
    let e = expr_of(src)?;
    let mut l = Lowerer {
        src,
        scope: Scope {
            vars,
            params,
            alphabet,
            auto_declare: false,
        },
    };
    l.lower_poly(&e).map_err(Diagnostics::single)
}

pub fn default_param_names() -> BTreeSet<String> {
    DEFAULT_PARAMS.iter().map(|s| s.to_string()).collect()
}

/// A parsed source file.
#[derive(Debug, Clone, Default)]
pub struct SourceSpec {
    pub alphabet: Alphabet,
    pub order: Option<OrderKind>,
    /// Values bound by `params` statements only.
    pub params: Params,
    /// User definitions followed by referenced catalog entries, in source order.
    pub opis: Vec<OpiPattern>,
    pub polys: Vec<Poly>,
}

impl SourceSpec {
    /// Bound parameters over the defaults.
    pub fn effective_params(&self) -> Params {
        let mut p = Params::defaults();
        for (n, v) in self.params.iter() {
            p.set(n, v.clone());
        }
        p
    }
}

/// Parses a source file of statements.
pub fn parse(src: &str) -> Result<SourceSpec, Diagnostics> {
    let stmts = Parser::new(src)?.statements()?;
    let mut parsed = SourceSpec::default();
    let mut diags = Vec::new();
    let mut param_names = default_param_names();
    let mut names_seen: Vec<String> = Vec::new();
    for s in &stmts {
        if let Stmt::Params(bs) = s {
            for (n, _, _) in bs {
                param_names.insert(canonical_param(n).to_string());
            }
        }
    }
    for s in stmts {
        match s {
            Stmt::Gens(names) => {
                for (n, sp) in names {
                    if param_names.contains(canonical_param(&n)) && parsed.params.get(&n).is_some() {
                        diags.push(Diagnostic::error(src, sp, format!("`{n}` is already a parameter")));
                        continue;
                    }
                    if let Err(e) = parsed.alphabet.declare(&n) {
                        diags.push(Diagnostic::error(src, sp, e.to_string()));
                    }
                }
            }
            Stmt::Order(o, sp) => match o.parse::<OrderKind>() {
                Ok(k) if k.is_monomial_order() => {
                    if parsed.order.is_some() {
                        diags.push(Diagnostic::error(src, sp, "duplicate order declaration"));
                    }
                    parsed.order = Some(k);
                }
                _ => diags.push(
                    Diagnostic::error(src, sp, format!("unknown order `{o}`")).with_note("expected dt, o or qc"),
                ),
            },
            Stmt::Params(bs) => {
                for (n, v, sp) in bs {
                    if parsed.params.get(&n).is_some() {
                        diags.push(Diagnostic::error(src, sp, format!("duplicate parameter `{n}`")));
                    }
                    parsed.params.set(&n, v);
                }
            }
            Stmt::Opi {
                name,
                name_span,
                vars,
                body,
            } => {
                if names_seen.contains(&name) {
                    diags.push(Diagnostic::error(src, name_span, format!("duplicate identity `{name}`")));
                    continue;
                }
                let mut var_names: Vec<String> = Vec::new();
                let mut ok = true;
                for (v, sp) in &vars {
                    if var_names.contains(v) {
                        diags.push(Diagnostic::error(src, *sp, format!("duplicate variable `{v}`")));
                        ok = false;
                    } else if v == "L" {
                        diags.push(Diagnostic::error(src, *sp, "`L` is reserved"));
                        ok = false;
                    }
                    var_names.push(v.clone());
                }
                if !ok {
                    continue;
                }
                let mut l = Lowerer {
                    src,
                    scope: Scope {
                        vars: &var_names,
                        params: &param_names,
                        alphabet: &mut parsed.alphabet,
                        auto_declare: false,
                    },
                };
                match l.lower_poly(&body) {
                    Ok(p) if p.is_zero() => {
                        diags.push(Diagnostic::error(src, body.span(), "identity body is zero"));
                    }
                    Ok(p) => {
                        names_seen.push(name.clone());
                        parsed.opis.push(OpiPattern::new(name, var_names, p));
                    }
                    Err(d) => diags.push(d),
                }
            }
            Stmt::Use(name, sp) => match catalog::lookup(&name) {
                Some(entry) => {
                    if names_seen.contains(&entry.pattern.id) {
                        diags.push(Diagnostic::error(src, sp, format!("duplicate identity `{name}`")));
                    } else {
                        names_seen.push(entry.pattern.id.clone());
                        parsed.opis.push(entry.pattern);
                    }
                }
                None => diags.push(
                    Diagnostic::error(src, sp, format!("no catalog identity named `{name}`"))
                        .with_note("run `opalg catalog` for the list"),
                ),
            },
            Stmt::Poly(e) => {
                let params = no_params();
                let mut l = Lowerer {
                    src,
                    scope: Scope {
                        vars: &[],
                        params: &params,
                        alphabet: &mut parsed.alphabet,
                        auto_declare: false,
                    },
                };
                match l.lower_poly(&e) {
                    Ok(p) => parsed.polys.push(p.to_poly().expect("concrete")),
                    Err(d) => diags.push(d),
                }
            }
        }
    }
    if diags.is_empty() {
        Ok(parsed)
    } else {
        Err(Diagnostics(diags))
    }
}
