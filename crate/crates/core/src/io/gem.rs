//! The gem format:
//!
//! ```text
//! gem <colors> <n>
//! 0: a-b a-b ...
//! 1: ...
//! ```
//!
//! One line per color with exactly `n/2` pairs. `#` starts a comment.
//! Output lists pairs with the smaller vertex first, sorted by it.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::ColoredGraph;

/// A parse or validation failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Content lines with comments stripped: (1-based line number, text, column
/// offset of each token).
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = body
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - raw.as_ptr() as usize + 1, t))
            .collect();
        (!tokens.is_empty()).then_some((k + 1, tokens))
    })
}

pub(crate) fn parse_num(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_gem(text: &str) -> Result<ColoredGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    if header[0].1 != "gem" || header.len() != 3 {
        return Err(ParseError::new(hl, header[0].0, "expected header `gem <colors> <n>`"));
    }
    let colors = parse_num(hl, header[1], "color count")?;
    let n = parse_num(hl, header[2], "vertex count")?;
    if colors < 2 {
        return Err(ParseError::new(hl, header[1].0, "need at least two colors"));
    }
    if n == 0 || n % 2 == 1 {
        return Err(ParseError::new(hl, header[2].0, "vertex count must be positive and even"));
    }
    let mut matchings: Vec<Option<Vec<usize>>> = vec![None; colors];
    let mut last_line = hl;
    for (ln, tokens) in lines {
        last_line = ln;
        let (col, head) = tokens[0];
        let c = head
            .strip_suffix(':')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| ParseError::new(ln, col, format!("expected `<color>:`, found `{head}`")))?;
        if c >= colors {
            return Err(ParseError::new(ln, col, format!("color {c} out of range 0..{colors}")));
        }
        if matchings[c].is_some() {
            return Err(ParseError::new(ln, col, format!("color {c} given twice")));
        }
        let pairs = &tokens[1..];
        if pairs.len() != n / 2 {
            return Err(ParseError::new(
                ln,
                col,
                format!("color {c}: expected {} pairs, found {}", n / 2, pairs.len()),
            ));
        }
        let mut m = vec![usize::MAX; n];
        for &(pc, pair) in pairs {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| ParseError::new(ln, pc, format!("expected `a-b`, found `{pair}`")))?;
            let a = parse_num(ln, (pc, a), "vertex")?;
            let b = parse_num(ln, (pc, b), "vertex")?;
            if a >= n || b >= n {
                return Err(ParseError::new(ln, pc, format!("vertex out of range 0..{n}")));
            }
            if a == b {
                return Err(ParseError::new(ln, pc, format!("loop at vertex {a}")));
            }
            if m[a] != usize::MAX || m[b] != usize::MAX {
                return Err(ParseError::new(ln, pc, format!("color {c} meets a vertex twice")));
            }
            m[a] = b;
            m[b] = a;
        }
        matchings[c] = Some(m);
    }
    let matchings: Vec<Vec<usize>> = matchings
        .into_iter()
        .enumerate()
        .map(|(c, m)| m.ok_or_else(|| ParseError::new(last_line, 1, format!("color {c} missing"))))
        .collect::<Result<_, _>>()?;
    ColoredGraph::new(colors - 1, matchings).map_err(|e| ParseError::new(last_line, 1, e.to_string()))
}

pub fn write_gem(g: &ColoredGraph) -> String {
    let mut out = format!("gem {} {}\n", g.num_colors(), g.order());
    for c in 0..g.num_colors() {
        write!(out, "{c}:").unwrap();
        for (v, &w) in g.matching(c).iter().enumerate() {
            if v < w {
                write!(out, " {v}-{w}").unwrap();
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn dipole_text() {
        assert_eq!(
            write_gem(&ColoredGraph::dipole(4)),
            "gem 5 2\n0: 0-1\n1: 0-1\n2: 0-1\n3: 0-1\n4: 0-1\n"
        );
    }

    #[test]
    fn round_trip() {
        for g in [catalog::cp2(), catalog::s2xs2().unwrap(), ColoredGraph::dipole(3)] {
            let text = write_gem(&g);
            assert_eq!(parse_gem(&text).unwrap(), g);
        }
    }

    #[test]
    fn normalizes_unsorted_input_and_comments() {
        let text = "# dipole\ngem 3 2 # header\n2: 1-0\n0: 0-1\n\n1: 1-0\n";
        let g = parse_gem(text).unwrap();
        assert_eq!(write_gem(&g), "gem 3 2\n0: 0-1\n1: 0-1\n2: 0-1\n");
    }

    #[test]
    fn pair_count_error_names_color_line() {
        let e = parse_gem("gem 3 4\n0: 0-1 2-3\n1: 0-2\n2: 0-3 1-2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("color 1"), "{e}");
    }

    #[test]
    fn reports_columns() {
        let e = parse_gem("gem 2 2\n0: 0-1\n1: 0-x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 4));
        let e = parse_gem("gem 2 2\n0: 0-0\n1: 0-1\n").unwrap_err();
        assert!(e.message.contains("loop"));
        let e = parse_gem("graph 2 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_gem("gem 2 2\n0: 0-1\n").unwrap_err();
        assert!(e.message.contains("color 1 missing"));
    }
}
