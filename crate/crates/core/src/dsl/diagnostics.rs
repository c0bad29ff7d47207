use std::fmt;

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

impl Span {
    pub fn new(start: usize, len: usize) -> Self {
        Span { start, len }
    }

    pub fn to(self, other: Span) -> Span {
        let end = (other.start + other.len).max(self.start + self.len);
        Span::new(self.start, end - self.start)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A located message. Line and column are 1-based; column and length count chars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub length: usize,
    pub message: String,
    pub note: Option<String>,
}

impl Diagnostic {
    pub fn error(src: &str, span: Span, message: impl Into<String>) -> Self {
        let start = span.start.min(src.len());
        let end = (span.start + span.len).min(src.len());
        let before = &src[..start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = src[line_start..start].chars().count() + 1;
        let length = src[start..end].chars().count().max(1);
        Diagnostic {
            severity: Severity::Error,
            line,
            column,
            length,
            message: message.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Message plus the offending source line with a caret underline.
    pub fn render(&self, src: &str) -> String {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let text = src.lines().nth(self.line - 1).unwrap_or("");
        let mut s = format!(
            "{kind}: {}\n --> {}:{}\n  | {text}\n  | {}{}",
            self.message,
            self.line,
            self.column,
            " ".repeat(self.column - 1),
            "^".repeat(self.length)
        );
        if let Some(n) = &self.note {
            s.push_str(&format!("\n  = note: {n}"));
        }
        s
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// One or more diagnostics from a failed parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn single(d: Diagnostic) -> Self {
        Diagnostics(vec![d])
    }

    pub fn render(&self, src: &str) -> String {
        self.0
            .iter()
            .map(|d| d.render(src))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn first_message(&self) -> &str {
        self.0.first().map_or("", |d| d.message.as_str())
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for Diagnostics {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let src = "gens x;\npoly x + ;";
        let d = Diagnostic::error(src, Span::new(17, 1), "expected a term");
        assert_eq!((d.line, d.column), (2, 10));
        assert!(d.render(src).contains("         ^"));
    }
}
