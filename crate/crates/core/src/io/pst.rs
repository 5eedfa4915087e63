//! The pst format for facet gluings:
//!
//! ```text
//! pst <dim> <facets>
//! f':p f':p ...      # one line per facet, one entry per face
//! ```
//!
//! Entry `i` of facet `f` reads `f':p`, where `p` lists the images of corners
//! `0..=dim` as digits; face `i` of `f` meets face `p(i)` of `f'`. An unglued
//! face is written `-`.

use std::fmt::Write as _;

use super::gem::{content_lines, parse_num, ParseError};
use crate::complex::{CellComplex, Gluing, Perm, MAX_DIM};

pub fn parse_pst(text: &str) -> Result<CellComplex, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    if header[0].1 != "pst" || header.len() != 3 {
        return Err(ParseError::new(hl, header[0].0, "expected header `pst <dim> <facets>`"));
    }
    let dim = parse_num(hl, header[1], "dimension")?;
    let nf = parse_num(hl, header[2], "facet count")?;
    if dim == 0 || dim > MAX_DIM {
        return Err(ParseError::new(hl, header[1].0, format!("dimension must be in 1..={MAX_DIM}")));
    }
    let mut facets = Vec::with_capacity(nf);
    let mut facet_lines = Vec::with_capacity(nf);
    for (ln, tokens) in lines {
        if facets.len() == nf {
            return Err(ParseError::new(ln, tokens[0].0, format!("more than {nf} facet lines")));
        }
        if tokens.len() != dim + 1 {
            return Err(ParseError::new(
                ln,
                tokens[0].0,
                format!("facet {}: expected {} entries, found {}", facets.len(), dim + 1, tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(dim + 1);
        for (i, &(col, tok)) in tokens.iter().enumerate() {
            if tok == "-" {
                row.push(None);
                continue;
            }
            let (target, digits) = tok
                .split_once(':')
                .ok_or_else(|| ParseError::new(ln, col, format!("expected `facet:perm`, found `{tok}`")))?;
            let target = parse_num(ln, (col, target), "facet index")?;
            if target >= nf {
                return Err(ParseError::new(ln, col, format!("facet {target} out of range 0..{nf}")));
            }
            let images: Option<Vec<usize>> = digits.chars().map(|ch| ch.to_digit(10).map(|d| d as usize)).collect();
            let perm = images
                .filter(|im| im.len() == dim + 1)
                .and_then(|im| Perm::from_slice(&im))
                .ok_or_else(|| ParseError::new(ln, col, format!("`{digits}` is not a permutation of 0..={dim}")))?;
            row.push(Some(Gluing {
                facet: target,
                face: perm.apply(i),
                perm,
            }));
        }
        facets.push(row);
        facet_lines.push(ln);
    }
    if facets.len() != nf {
        return Err(ParseError::new(hl, 1, format!("expected {nf} facet lines, found {}", facets.len())));
    }
    CellComplex::new(dim, facets).map_err(|e| {
        let line = match &e {
            crate::complex::ComplexError::NotInvolutive { facet, .. }
            | crate::complex::ComplexError::SelfGluing { facet, .. }
            | crate::complex::ComplexError::FaceMismatch { facet, .. } => facet_lines[*facet],
            _ => hl,
        };
        ParseError::new(line, 1, e.to_string())
    })
}

pub fn write_pst(c: &CellComplex) -> String {
    let d = c.dim();
    let mut out = format!("pst {} {}\n", d, c.num_facets());
    for f in 0..c.num_facets() {
        for i in 0..=d {
            if i > 0 {
                out.push(' ');
            }
            match c.gluing(f, i) {
                Some(g) => write!(out, "{}:{}", g.facet, g.perm.to_digits(d)).unwrap(),
                None => out.push('-'),
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
    use crate::graph::ColoredGraph;

    #[test]
    fn round_trips() {
        for c in [
            CellComplex::realize(&ColoredGraph::dipole(4)),
            CellComplex::realize(&catalog::cp2()),
            CellComplex::boundary_simplex(4),
        ] {
            let text = write_pst(&c);
            let back = parse_pst(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(write_pst(&back), text);
        }
    }

    #[test]
    fn dipole_text() {
        let c = CellComplex::realize(&ColoredGraph::dipole(2));
        assert_eq!(write_pst(&c), "pst 2 2\n1:012 1:012 1:012\n0:012 0:012 0:012\n");
    }

    #[test]
    fn rejects_non_involutive() {
        let e = parse_pst("pst 1 2\n1:01 -\n- -\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("partner"), "{e}");
    }

    #[test]
    fn rejects_bad_permutation() {
        let e = parse_pst("pst 1 2\n1:00 -\n- -\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_pst("pst 1 2\n1:01 -\n").unwrap_err();
        assert!(e.message.contains("facet lines"));
    }

    #[test]
    fn open_faces_allowed() {
        let c = parse_pst("pst 1 2\n1:01 -\n0:01 -\n").unwrap();
        assert!(!c.is_closed());
        assert_eq!(write_pst(&c), "pst 1 2\n1:01 -\n0:01 -\n");
    }
}
