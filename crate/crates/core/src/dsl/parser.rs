//! Recursive-descent parser producing an expression tree with spans.

use num::Zero;

use super::diagnostics::{Diagnostic, Diagnostics, Span};
use super::lexer::{lex, Tok, Token};
use crate::poly::Rational;

pub const EMPTY_BRACKET: &str = "empty bracket argument: unit not available in the non-unitary setting";

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Signed summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>, Span),
    Product(Vec<Expr>, Span),
    Num(Rational, Span),
    Name(String, Span),
    L { power: u32, arg: Box<Expr>, span: Span },
    Hole(Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Sum(_, s) | Expr::Product(_, s) | Expr::Num(_, s) | Expr::Name(_, s) | Expr::Hole(s) => *s,
            Expr::L { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Gens(Vec<(String, Span)>),
    Order(String, Span),
    Params(Vec<(String, Rational, Span)>),
    Opi {
        name: String,
        name_span: Span,
        vars: Vec<(String, Span)>,
        body: Expr,
    },
    Use(String, Span),
    Poly(Expr),
}

pub struct Parser<'s> {
    src: &'s str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'s> Parser<'s> {
    pub fn new(src: &'s str) -> Result<Self, Diagnostics> {
        let toks = lex(src).map_err(Diagnostics::single)?;
        Ok(Parser { src, toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, span: Span, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(self.src, span, msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> PResult<Token> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            Err(self.err(
                self.span(),
                format!("expected {what}, found {}", self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let t = self.bump();
                Ok((s, t.span))
            }
            other => Err(self.err(self.span(), format!("expected {what}, found {}", other.describe()))),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    /// A whole input consisting of one expression.
    pub fn expression_only(mut self) -> Result<Expr, Diagnostics> {
        let e = self.poly().map_err(Diagnostics::single)?;
        if !self.at_eof() {
            return Err(Diagnostics::single(self.trailing()));
        }
        Ok(e)
    }

    fn trailing(&self) -> Diagnostic {
        if starts_factor(self.peek()) {
            self.err(self.span(), "missing `*` between factors")
                .with_note("products are written with an explicit `*`, e.g. `x*y`")
        } else {
            self.err(
                self.span(),
                format!("unexpected {} after expression", self.peek().describe()),
            )
        }
    }

    /// A whole source file; collects one diagnostic per failing statement.
    pub fn statements(mut self) -> Result<Vec<Stmt>, Diagnostics> {
        let mut out = Vec::new();
        let mut diags = Vec::new();
        while !self.at_eof() {
            match self.statement() {
                Ok(s) => out.push(s),
                Err(d) => {
                    diags.push(d);
                    // Resynchronize after the next `;`.
                    while !matches!(self.peek(), Tok::Semi | Tok::Eof) {
                        self.bump();
                    }
                    if *self.peek() == Tok::Semi {
                        self.bump();
                    }
                }
            }
        }
        if diags.is_empty() {
            Ok(out)
        } else {
            Err(Diagnostics(diags))
        }
    }

    fn end_statement(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Semi {
            self.bump();
            Ok(())
        } else if starts_factor(self.peek()) {
            Err(self.trailing())
        } else {
            Err(self.err(self.span(), format!("expected `;`, found {}", self.peek().describe())))
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let (kw, kw_span) = self.ident("a statement keyword")?;
        let stmt = match kw.as_str() {
            "gens" => {
                let mut names = vec![self.ident("a generator name")?];
                loop {
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    }
                    match self.peek() {
                        Tok::Ident(_) => names.push(self.ident("a generator name")?),
                        _ => break,
                    }
                }
                Stmt::Gens(names)
            }
            "order" => {
                let (o, sp) = self.ident("an order name")?;
                Stmt::Order(o, sp)
            }
            "params" => {
                let mut binds = Vec::new();
                loop {
                    let (n, sp) = self.ident("a parameter name")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let v = self.signed_rational()?;
                    binds.push((n, v, sp));
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Stmt::Params(binds)
            }
            "opi" => {
                let (name, name_span) = self.ident("an identity name")?;
                self.expect(Tok::LParen, "`(`")?;
                let mut vars = vec![self.ident("a variable name")?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    vars.push(self.ident("a variable name")?);
                }
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::Eq, "`=`")?;
                let body = self.poly()?;
                Stmt::Opi {
                    name,
                    name_span,
                    vars,
                    body,
                }
            }
            "use" => match self.peek().clone() {
                Tok::Str(s) | Tok::Ident(s) => {
                    let t = self.bump();
                    Stmt::Use(s, t.span)
                }
                other => {
                    return Err(self.err(
                        self.span(),
                        format!("expected a catalog name, found {}", other.describe()),
                    ))
                }
            },
            "poly" => Stmt::Poly(self.poly()?),
            _ => {
                return Err(self
                    .err(kw_span, format!("unknown statement `{kw}`"))
                    .with_note("statements are gens, order, params, opi, use and poly"))
            }
        };
        self.end_statement()?;
        Ok(stmt)
    }

    fn signed_rational(&mut self) -> PResult<Rational> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (r, _) = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    fn rational(&mut self) -> PResult<(Rational, Span)> {
        let t = self.bump();
        let Tok::Int(n) = t.tok else {
            return Err(self.err(t.span, format!("expected a number, found {}", t.tok.describe())));
        };
        if *self.peek() == Tok::Slash {
            self.bump();
            let d = self.bump();
            let Tok::Int(m) = d.tok else {
                return Err(self.err(d.span, "expected a denominator"));
            };
            if m.is_zero() {
                return Err(self.err(d.span, "zero denominator"));
            }
            return Ok((Rational::new(n, m), t.span.to(d.span)));
        }
        Ok((Rational::from_integer(n), t.span))
    }

    pub fn poly(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            terms.push((neg, t));
            match self.peek() {
                Tok::Plus => neg = false,
                Tok::Minus => neg = true,
                _ => break,
            }
            self.bump();
        }
        let end = terms.last().map(|(_, e)| e.span()).unwrap_or(start);
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms, start.to(end)))
    }

    fn term(&mut self) -> PResult<Expr> {
        let first = self.factor()?;
        let mut factors = vec![first];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        let span = factors[0].span().to(factors.last().unwrap().span());
        Ok(Expr::Product(factors, span))
    }

    fn factor(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(_) => {
                let (r, sp) = self.rational()?;
                Ok(Expr::Num(r, sp))
            }
            Tok::Hole => {
                let t = self.bump();
                Ok(Expr::Hole(t.span))
            }
            Tok::LParen => {
                let open = self.bump();
                if *self.peek() == Tok::RParen {
                    return Err(self.err(open.span.to(self.span()), "empty parentheses"));
                }
                let inner = self.poly()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(match inner {
                    Expr::Sum(ts, _) => Expr::Sum(ts, open.span.to(close.span)),
                    other => other,
                })
            }
            Tok::Ident(name) if name == "L" && matches!(self.peek_at(1), Tok::LParen | Tok::Caret) => {
                let l = self.bump();
                let mut power = 1u32;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let t = self.bump();
                    let Tok::Int(k) = t.tok else {
                        return Err(self.err(t.span, "expected an exponent after `L^`"));
                    };
                    power = u32::try_from(k)
                        .ok()
                        .filter(|&k| k >= 1 && k <= 64)
                        .ok_or_else(|| self.err(t.span, "exponent of `L^` must be between 1 and 64"))?;
                }
                let open = self.expect(Tok::LParen, "`(`")?;
                if *self.peek() == Tok::RParen {
                    let close = self.bump();
                    return Err(self.err(open.span.to(close.span), EMPTY_BRACKET));
                }
                let arg = self.poly()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::L {
                    power,
                    arg: Box::new(arg),
                    span: l.span.to(close.span),
                })
            }
            Tok::Ident(name) if name == "L" => {
                let t = self.bump();
                Err(self.err(t.span, "`L` must be applied to an argument, as in `L(x)`"))
            }
            Tok::Ident(name) => {
                let t = self.bump();
                Ok(Expr::Name(name, t.span))
            }
            other => Err(self.err(self.span(), format!("expected a term, found {}", other.describe()))),
        }
    }
}

fn starts_factor(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::Hole)
}
