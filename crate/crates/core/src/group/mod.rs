//! Finite group presentations: the crystallization presentation of π₁,
//! Tietze simplification and abelianization.

mod snf;
mod tietze;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::graph::{ColorSet, ColoredGraph};

pub use snf::{mat_mul, smith_form, SmithForm};
pub use tietze::{tietze_simplify, TietzeStatus, DEFAULT_BUDGET};

/// A letter is a nonzero generator index in `1..=s`; its sign is the exponent.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("the two colors must differ")]
    SameColor,
    #[error("color {0} out of range")]
    ColorOutOfRange(usize),
    #[error("relator {relator} uses generator {letter} outside 1..={max}")]
    LetterOutOfRange { relator: usize, letter: i32, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    num_generators: usize,
    relators: Vec<Word>,
}

/// Cancels adjacent inverse letters.
pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse letters at the two ends.
pub fn cyclic_reduce(word: &[i32]) -> Word {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn invert(word: &[i32]) -> Word {
    word.iter().rev().map(|&x| -x).collect()
}

impl GroupPresentation {
    /// Validates letter ranges and stores every relator freely reduced.
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (k, r) in relators.iter().enumerate() {
            if let Some(&x) = r.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > num_generators) {
                return Err(GroupError::LetterOutOfRange {
                    relator: k,
                    letter: x,
                    max: num_generators,
                });
            }
        }
        Ok(GroupPresentation {
            num_generators,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    pub fn trivial() -> Self {
        GroupPresentation {
            num_generators: 0,
            relators: Vec::new(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// True when there are no generators left.
    pub fn is_trivial(&self) -> bool {
        self.num_generators == 0
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.num_generators];
                for &x in r {
                    row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for g in 1..=self.num_generators {
            if g > 1 {
                write!(f, ",")?;
            }
            write!(f, "x{g}")?;
        }
        write!(f, " | ")?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if r.is_empty() {
                write!(f, "1")?;
            }
            // runs of one letter print as powers
            let mut i = 0;
            let mut first = true;
            while i < r.len() {
                let g = r[i];
                let mut j = i;
                while j < r.len() && r[j] == g {
                    j += 1;
                }
                let e = (j - i) as i64 * g.signum() as i64;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{}", g.abs())?;
                } else {
                    write!(f, "x{}^{}", g.abs(), e)?;
                }
                i = j;
            }
        }
        write!(f, ">")
    }
}

/// Builds the presentation of π₁ of the complex of `g` from the
/// bicolored cycles on colors `i`, `j` and the residue on the other colors.
pub fn gagliardi_presentation(g: &ColoredGraph, i: usize, j: usize) -> Result<GroupPresentation, GroupError> {
    if i == j {
        return Err(GroupError::SameColor);
    }
    for c in [i, j] {
        if c > g.dim() {
            return Err(GroupError::ColorOutOfRange(c));
        }
    }
    let rest = g.all_colors().without(i).without(j);
    let (comp, ncomp) = g.residue_labels(rest);
    let s = ncomp.saturating_sub(1);
    let cycles = g.residue(ColorSet::EMPTY.with(i).with(j));
    let mut relators = Vec::with_capacity(cycles.len().saturating_sub(1));
    for cycle in cycles.iter().take(cycles.len().saturating_sub(1)) {
        let v1 = cycle[0];
        let mut word = Vec::with_capacity(cycle.len());
        let mut v = v1;
        let mut sign = 1;
        let mut color = i;
        loop {
            v = g.neighbor(v, color);
            let k = comp[v];
            if k < s {
                word.push(sign * (k as i32 + 1));
            }
            sign = -sign;
            color = if color == i { j } else { i };
            if v == v1 {
                break;
            }
        }
        relators.push(free_reduce(&word));
    }
    Ok(GroupPresentation {
        num_generators: s,
        relators,
    })
}

/// Free rank and torsion coefficients of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelianize(p: &GroupPresentation) -> Abelianization {
    let factors = snf::invariant_factors(&p.exponent_matrix(), p.num_generators);
    Abelianization {
        free_rank: p.num_generators - factors.len(),
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pres(s: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(s, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn abelianization_shapes() {
        assert_eq!(abelianize(&pres(1, &[&[1, 1]])).torsion_u64(), vec![2]);
        assert_eq!(abelianize(&pres(1, &[&[1, 1]])).free_rank, 0);
        assert_eq!(abelianize(&pres(1, &[])).free_rank, 1);
        assert!(abelianize(&GroupPresentation::trivial()).is_trivial());
        let ab = abelianize(&pres(2, &[&[1, 2, -1, -2]]));
        assert_eq!(ab.free_rank, 2);
        assert_eq!(ab.to_string(), "Z^2");
        let ab = abelianize(&pres(2, &[&[1, 1, 2, 2], &[2, 2, 2, 2, 2, 2]]));
        assert_eq!(ab.torsion_u64(), vec![2, 6]);
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(GroupPresentation::new(1, vec![vec![2]]).is_err());
        assert!(GroupPresentation::new(1, vec![vec![0]]).is_err());
    }

    #[test]
    fn stored_freely_reduced() {
        let p = pres(2, &[&[1, 2, -2, 1]]);
        assert_eq!(p.relators(), &[vec![1, 1]]);
    }

    #[test]
    fn display_format() {
        let p = pres(2, &[&[1, -2, 1], &[2, 2, 2]]);
        assert_eq!(p.to_string(), "<x1,x2 | x1 x2^-1 x1, x2^3>");
        assert_eq!(GroupPresentation::trivial().to_string(), "< | >");
    }

    #[test]
    fn dipole_presentation_is_trivial() {
        let g = ColoredGraph::dipole(4);
        let p = gagliardi_presentation(&g, 0, 1).unwrap();
        assert_eq!(p.num_generators(), 0);
        assert!(p.relators().is_empty());
        assert_eq!(gagliardi_presentation(&g, 2, 2), Err(GroupError::SameColor));
    }

    #[test]
    fn cp2_residue_presentation_collapses() {
        let r = catalog::cp2().restrict(&[0, 1, 2, 3]).unwrap();
        let p = gagliardi_presentation(&r, 0, 1).unwrap();
        let (q, status) = tietze_simplify(&p, 10_000);
        assert_eq!(status, TietzeStatus::Reduced);
        assert!(q.is_trivial());
        assert!(abelianize(&p).is_trivial());
    }

    #[test]
    fn case_iii_graph_has_infinite_cyclic_homology() {
        let g = catalog::fixtures::case_iii();
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let ab = abelianize(&gagliardi_presentation(&g, i, j).unwrap());
            assert_eq!(ab.free_rank, 1, "pair {i}{j}");
            assert!(ab.torsion.is_empty());
        }
    }

    #[test]
    fn abelianization_independent_of_color_pair() {
        for g in [catalog::cp2(), catalog::s2xs2().unwrap()] {
            for i in 0..5 {
                for j in i + 1..5 {
                    assert!(abelianize(&gagliardi_presentation(&g, i, j).unwrap()).is_trivial());
                }
            }
        }
        let g = catalog::fixtures::fig3b_residue();
        let first = abelianize(&gagliardi_presentation(&g, 0, 1).unwrap());
        assert_eq!(first.torsion_u64(), vec![2]);
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(abelianize(&gagliardi_presentation(&g, i, j).unwrap()), first);
            }
        }
    }
}
