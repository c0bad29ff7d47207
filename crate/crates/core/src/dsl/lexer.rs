use num::BigInt;

use super::diagnostics::{Diagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Hole,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Hole => "hole".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c == '#' {
            // Line comment.
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            '⋆' => Some(Tok::Hole),
            _ => None,
        };
        if let Some(tok) = single {
            it.next();
            out.push(Token {
                tok,
                span: Span::new(i, c.len_utf8()),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            let n: BigInt = src[i..end].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                span: Span::new(i, end - i),
            });
            continue;
        }
        if c == '"' {
            it.next();
            let mut end = None;
            for (j, d) in it.by_ref() {
                if d == '"' {
                    end = Some(j);
                    break;
                }
            }
            let Some(end) = end else {
                return Err(Diagnostic::error(src, Span::new(i, src.len() - i), "unterminated string"));
            };
            out.push(Token {
                tok: Tok::Str(src[i + 1..end].to_string()),
                span: Span::new(i, end + 1 - i),
            });
            continue;
        }
        if c == '_' || c.is_alphabetic() || c == 'λ' {
            let mut end = i + c.len_utf8();
            it.next();
            while let Some(&(j, d)) = it.peek() {
                if !is_ident_continue(d) {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let text = &src[i..end];
            let tok = if text == "_" {
                Tok::Hole
            } else {
                Tok::Ident(text.to_string())
            };
            out.push(Token {
                tok,
                span: Span::new(i, end - i),
            });
            continue;
        }
        return Err(Diagnostic::error(
            src,
            Span::new(i, c.len_utf8()),
            format!("unexpected character `{c}`"),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), 0),
    });
    Ok(out)
}
