//! Plain-text graph files.
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines; u = v is a loop; edge id = line order)
//! ```
//! Signed graphs add a third token `+` or `-` to every edge line.

use std::fmt::Write as _;

use thiserror::Error;

use super::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

/// Cursor over the meaningful lines of a text file: comments and blank
/// lines are skipped, line numbers are 1-based.
pub struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate().peekable(), last: 0 }
    }

    fn skip_noise(&mut self) {
        while let Some((_, l)) = self.inner.peek() {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    /// Next meaningful line, tokenized.
    pub fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        self.skip_noise();
        let (i, l) = self.inner.next()?;
        self.last = i + 1;
        Some((i + 1, l.split_whitespace().collect()))
    }

    /// Peek at the first token of the next meaningful line.
    pub fn peek_keyword(&mut self) -> Option<&'a str> {
        self.skip_noise();
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    /// Line number of the most recently consumed line.
    pub fn line(&self) -> usize {
        self.last
    }

    pub fn expect_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let after = self.last;
        self.next_tokens()
            .ok_or_else(|| ParseError::new(after + 1, format!("unexpected end of input, expected {what}")))
    }
}

pub(crate) fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found {tok:?}")))
}

/// Parse the `n m` header and `m` edge lines. Each edge line must have two
/// vertex tokens and `extra` further tokens, which are returned verbatim
/// with their line numbers.
pub(crate) fn parse_edges<'a>(
    lines: &mut Lines<'a>,
    extra: usize,
) -> Result<(Multigraph, Vec<(usize, Vec<&'a str>)>), ParseError> {
    let (line, head) = lines.expect_tokens("header \"n m\"")?;
    if head.len() != 2 {
        return Err(ParseError::new(line, "header must be \"n m\""));
    }
    let n = parse_usize(head[0], line, "vertex count")?;
    let m = parse_usize(head[1], line, "edge count")?;
    let mut g = Multigraph::new(n);
    let mut rest = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.expect_tokens("edge line")?;
        if toks.len() != 2 + extra {
            return Err(ParseError::new(line, format!("edge line needs {} tokens", 2 + extra)));
        }
        let u = parse_usize(toks[0], line, "vertex")?;
        let v = parse_usize(toks[1], line, "vertex")?;
        if u >= n || v >= n {
            return Err(ParseError::new(line, format!("vertex out of range (n = {n})")));
        }
        g.add_edge(u, v);
        rest.push((line, toks[2..].to_vec()));
    }
    Ok((g, rest))
}

pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut lines = Lines::new(text);
    let (g, _) = parse_edges(&mut lines, 0)?;
    if let Some((line, _)) = lines.next_tokens() {
        return Err(ParseError::new(line, "trailing content after edge list"));
    }
    Ok(g)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let g = parse_graph("# triangle\n3 3\n0 1\n1 2\n# inline comment line\n2 0\n").unwrap();
        assert_eq!(g, Multigraph::cycle(3));
    }

    #[test]
    fn loops_and_round_trip() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_name_lines() {
        let e = parse_graph("2 1\n0 5\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph("2 2\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_graph("x 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_graph("2 1\n0 1\n1 1\n").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
