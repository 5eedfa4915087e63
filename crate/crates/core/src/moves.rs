//! Bistellar moves and edge contraction on closed complexes.
//!
//! A bistellar `i`-move at a `(d-i)`-face δ replaces the `i+1` facets of
//! δ ⋆ ∂γ by the `d-i+1` facets of ∂δ ⋆ γ. The star is found by labeling
//! corners abstractly: δ gets labels `0..=d-i`, γ gets `d-i+1..=d+1`, and
//! each star facet misses exactly one γ label.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{CellComplex, Gluing, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Bistellar move replacing `i+1` facets.
    Bistellar(usize),
    EdgeContraction,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Bistellar(i) => write!(f, "b{i}"),
            MoveKind::EdgeContraction => write!(f, "ec"),
        }
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ec" {
            return Ok(MoveKind::EdgeContraction);
        }
        s.strip_prefix('b')
            .and_then(|i| i.parse().ok())
            .map(MoveKind::Bistellar)
            .ok_or_else(|| format!("unknown move kind `{s}`"))
    }
}

/// A move at the face spanned by the corners `mask` of `facet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub facet: usize,
    pub mask: u32,
}

impl Move {
    /// Site as `facet:corners`, e.g. `17:024`.
    pub fn site(&self) -> String {
        let corners: String = (0..32)
            .filter(|&k| self.mask & (1 << k) != 0)
            .map(|k| char::from_digit(k, 10).unwrap_or('?'))
            .collect();
        format!("{}:{}", self.facet, corners)
    }

    pub fn parse_site(s: &str) -> Option<(usize, u32)> {
        let (f, corners) = s.split_once(':')?;
        let facet = f.parse().ok()?;
        let mut mask = 0;
        for ch in corners.chars() {
            mask |= 1 << ch.to_digit(10)?;
        }
        Some((facet, mask))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.site())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

fn illegal<T>(reason: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::IllegalMove(reason.into()))
}

pub fn apply(c: &CellComplex, m: &Move) -> Result<CellComplex, MoveError> {
    let d = c.dim();
    if m.facet >= c.num_facets() {
        return illegal(format!("facet {} out of range", m.facet));
    }
    if m.mask == 0 || m.mask >> (d + 1) != 0 {
        return illegal("corner mask outside the facet");
    }
    match m.kind {
        MoveKind::Bistellar(i) => bistellar(c, i, m.facet, m.mask),
        MoveKind::EdgeContraction => contract_edge(c, m.facet, m.mask),
    }
}

impl CellComplex {
    pub fn apply_move(&self, m: &Move) -> Result<CellComplex, MoveError> {
        apply(self, m)
    }
}

const NONE: u8 = u8::MAX;

#[derive(Clone)]
struct StarFacet {
    facet: usize,
    /// label of each corner
    label: [u8; 8],
    /// corner carrying each label, `NONE` for the missing one
    corner: [u8; 9],
    missing: u8,
}

impl StarFacet {
    fn new(facet: usize, label: [u8; 8], d: usize) -> Self {
        let mut corner = [NONE; 9];
        for k in 0..=d {
            corner[label[k] as usize] = k as u8;
        }
        let missing = (0..=d + 1).find(|&l| corner[l] == NONE).unwrap() as u8;
        StarFacet { facet, label, corner, missing }
    }
}

fn bistellar(c: &CellComplex, i: usize, f0: usize, delta: u32) -> Result<CellComplex, MoveError> {
    let d = c.dim();
    if i > d {
        return illegal(format!("no {i}-move in dimension {d}"));
    }
    if delta.count_ones() as usize != d + 1 - i {
        return illegal(format!("a {i}-move needs a face with {} corners", d + 1 - i));
    }
    let dl = (d - i) as u8; // largest δ label
    let mut label = [0u8; 8];
    let (mut next_d, mut next_g) = (0u8, dl + 1);
    for k in 0..=d {
        if delta & (1 << k) != 0 {
            label[k] = next_d;
            next_d += 1;
        } else {
            label[k] = next_g;
            next_g += 1;
        }
    }
    let mut star = vec![StarFacet::new(f0, label, d)];
    let mut by_missing = [usize::MAX; 9];
    by_missing[star[0].missing as usize] = 0;
    let mut head = 0;
    while head < star.len() {
        let sf = star[head].clone();
        head += 1;
        for x in 0..=d {
            if sf.label[x] <= dl {
                continue;
            }
            let Some(g) = c.gluing(sf.facet, x) else {
                return illegal("star meets an unglued face");
            };
            let mut lab = [0u8; 8];
            for y in 0..=d {
                lab[g.perm.apply(y)] = if y == x { sf.missing } else { sf.label[y] };
            }
            let miss = sf.label[x] as usize;
            match by_missing[miss] {
                usize::MAX => {
                    if star.iter().any(|s| s.facet == g.facet) {
                        return illegal("star of the face repeats a facet");
                    }
                    by_missing[miss] = star.len();
                    star.push(StarFacet::new(g.facet, lab, d));
                }
                k => {
                    if star[k].facet != g.facet || star[k].label[..=d] != lab[..=d] {
                        return illegal("star of the face is not the boundary of a simplex");
                    }
                }
            }
        }
    }
    debug_assert_eq!(star.len(), i + 1);

    let nf = c.num_facets();
    let mut star_of = vec![usize::MAX; nf];
    for (k, s) in star.iter().enumerate() {
        star_of[s.facet] = k;
    }
    let mut new_index = vec![usize::MAX; nf];
    let mut kept = 0;
    for f in 0..nf {
        if star_of[f] == usize::MAX {
            new_index[f] = kept;
            kept += 1;
        }
    }
    let base = kept;
    let new_count = d - i + 1;
    // position of label l among the labels of new facet a
    let local = |a: usize, l: usize| if l > a { l - 1 } else { l };
    // where corner z of old facet g lands, entering through face j
    let enter = |g: usize, j: usize, z: usize| -> (usize, usize) {
        match star_of[g] {
            usize::MAX => (new_index[g], z),
            k => {
                let s = &star[k];
                let b = s.label[j] as usize;
                let mut l = s.label[z] as usize;
                if l == b {
                    l = s.missing as usize;
                }
                (base + b, local(b, l))
            }
        }
    };
    let mut table: Vec<Option<Gluing>> = vec![None; (base + new_count) * (d + 1)];
    for h in 0..nf {
        if star_of[h] != usize::MAX {
            continue;
        }
        for k in 0..=d {
            table[new_index[h] * (d + 1) + k] = c.gluing(h, k).map(|g| {
                let (facet, face) = enter(g.facet, g.face, g.face);
                let images: Vec<usize> = (0..=d).map(|y| enter(g.facet, g.face, g.perm.apply(y)).1).collect();
                Gluing { facet, face, perm: Perm::from_slice(&images).unwrap() }
            });
        }
    }
    for a in 0..new_count {
        let labels: Vec<usize> = (0..=d + 1).filter(|&l| l != a).collect();
        for (pos, &opp) in labels.iter().enumerate() {
            let slot = (base + a) * (d + 1) + pos;
            if opp <= d - i {
                // internal face shared with new facet `opp`
                let images: Vec<usize> = labels.iter().map(|&l| local(opp, if l == opp { a } else { l })).collect();
                table[slot] = Some(Gluing {
                    facet: base + opp,
                    face: local(opp, a),
                    perm: Perm::from_slice(&images).unwrap(),
                });
            } else {
                let s = &star[by_missing[opp]];
                let src = |l: usize| s.corner[if l == opp { a } else { l }] as usize;
                let g = c.gluing(s.facet, src(opp)).expect("star faces are glued");
                let (facet, face) = enter(g.facet, g.face, g.face);
                let images: Vec<usize> = labels.iter().map(|&l| enter(g.facet, g.face, g.perm.apply(src(l))).1).collect();
                table[slot] = Some(Gluing { facet, face, perm: Perm::from_slice(&images).unwrap() });
            }
        }
    }
    let out = CellComplex::new(d, table.chunks(d + 1).map(<[_]>::to_vec).collect())
        .map_err(|e| MoveError::IllegalMove(format!("result is not a gluing: {e}")))?;
    if !out.is_cell_complex() {
        return illegal("move would identify faces of one facet");
    }
    Ok(out)
}

fn contract_edge(c: &CellComplex, f0: usize, mask: u32) -> Result<CellComplex, MoveError> {
    let d = c.dim();
    if mask.count_ones() != 2 {
        return illegal("an edge has two corners");
    }
    let faces = c.face_classes();
    let edge = faces.face(f0, mask);
    let nf = c.num_facets();
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; nf];
    for (f, e) in ends.iter_mut().enumerate() {
        for a in 0..=d {
            for b in a + 1..=d {
                if faces.face(f, (1 << a) | (1 << b)) == edge {
                    if e.is_some() {
                        return illegal("edge occurs twice in one facet");
                    }
                    *e = Some((a, b));
                }
            }
        }
    }
    let mut new_index = vec![usize::MAX; nf];
    let mut kept = 0;
    for f in 0..nf {
        if ends[f].is_none() {
            new_index[f] = kept;
            kept += 1;
        }
    }
    if kept == 0 {
        return illegal("contraction removes every facet");
    }
    let mut table: Vec<Option<Gluing>> = vec![None; kept * (d + 1)];
    for h in 0..nf {
        if ends[h].is_some() {
            continue;
        }
        for k in 0..=d {
            let Some(g) = c.gluing(h, k) else { continue };
            let (mut s, mut j, mut pi) = (g.facet, g.face, g.perm);
            let mut steps = 0;
            while let Some((cu, cv)) = ends[s] {
                if j != cu && j != cv {
                    return illegal("facet outside the star meets a face containing the edge");
                }
                let t = Perm::transposition(cu, cv);
                let Some(next) = c.gluing(s, t.apply(j)) else {
                    return illegal("star meets an unglued face");
                };
                pi = next.perm.compose(&t).compose(&pi);
                s = next.facet;
                j = next.face;
                steps += 1;
                if steps > nf * (d + 1) {
                    return illegal("collapse chain closes up inside the star");
                }
            }
            if (s, j) == (h, k) {
                return illegal("contraction glues a face to itself");
            }
            table[new_index[h] * (d + 1) + k] = Some(Gluing { facet: new_index[s], face: j, perm: pi });
        }
    }
    let out = CellComplex::new(d, table.chunks(d + 1).map(<[_]>::to_vec).collect())
        .map_err(|e| MoveError::IllegalMove(format!("result is not a gluing: {e}")))?;
    let new_faces = out.face_classes();
    if new_faces.self_identification(out.num_facets()).is_some() {
        return illegal("contraction identifies vertices of a facet");
    }
    if new_faces.count(0) + 1 != faces.count(0) {
        return illegal("contraction must merge exactly two vertices");
    }
    if new_faces.f_vector().euler() != faces.f_vector().euler() {
        return illegal("contraction changes the Euler characteristic");
    }
    if d >= 3 && !links_look_like_spheres(&out, &new_faces) {
        return illegal("a vertex link is no longer a sphere");
    }
    Ok(out)
}

/// Cheap necessary condition: each vertex link is connected and each of its
/// own vertex links is a connected 2-dimensional complex with χ = 2 (checked
/// in dimension 4; in dimension 3 the links themselves are checked).
fn links_look_like_spheres(c: &CellComplex, faces: &crate::complex::FaceClasses) -> bool {
    (0..faces.count(0)).all(|v| {
        let l = c.vertex_link_with(faces, v);
        if !l.is_connected() {
            return false;
        }
        if l.dim() == 2 {
            return l.euler_characteristic() == 2;
        }
        let lf = l.face_classes();
        if lf.self_identification(l.num_facets()).is_some() {
            return false;
        }
        if l.dim() == 3 {
            (0..lf.count(0)).all(|w| {
                let ll = l.vertex_link_with(&lf, w);
                ll.is_connected() && ll.euler_characteristic() == 2
            })
        } else {
            true
        }
    })
}

/// Every legal move, one per face class (represented by its first
/// occurrence in facet order) and kind.
pub fn available_moves(c: &CellComplex) -> Vec<Move> {
    let d = c.dim();
    let faces = c.face_classes();
    let mut out = Vec::new();
    let kinds: Vec<MoveKind> = (0..=d).map(MoveKind::Bistellar).chain([MoveKind::EdgeContraction]).collect();
    for kind in kinds {
        let corners = match kind {
            MoveKind::Bistellar(i) => d + 1 - i,
            MoveKind::EdgeContraction => 2,
        };
        let mut seen = vec![false; faces.count(corners - 1)];
        for f in 0..c.num_facets() {
            for mask in 1u32..(1 << (d + 1)) {
                if mask.count_ones() as usize != corners {
                    continue;
                }
                let class = faces.face(f, mask);
                if std::mem::replace(&mut seen[class], true) {
                    continue;
                }
                let m = Move { kind, facet: f, mask };
                if apply(c, &m).is_ok() {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::ColoredGraph;
    use crate::group::abelianize;

    fn dipole() -> CellComplex {
        CellComplex::realize(&ColoredGraph::dipole(4))
    }

    fn count(moves: &[Move], kind: MoveKind) -> usize {
        moves.iter().filter(|m| m.kind == kind).count()
    }

    #[test]
    fn zero_move_and_inverse() {
        let c = dipole();
        let up = apply(&c, &Move { kind: MoveKind::Bistellar(0), facet: 0, mask: 0b11111 }).unwrap();
        assert_eq!(up.num_facets(), 6);
        assert_eq!(up.f_vector().0, vec![6, 15, 20, 15, 6]);
        assert_eq!(up.euler_characteristic(), 2);
        assert!(up.is_isomorphic(&CellComplex::boundary_simplex(4)));
        // every vertex of the boundary of the 5-simplex lies in exactly five facets
        let moves = available_moves(&up);
        assert_eq!(count(&moves, MoveKind::Bistellar(4)), 6);
        for m in moves.iter().filter(|m| m.kind == MoveKind::Bistellar(4)) {
            assert!(apply(&up, m).unwrap().is_isomorphic(&c));
        }
    }

    #[test]
    fn dipole_moves() {
        let moves = available_moves(&dipole());
        assert_eq!(count(&moves, MoveKind::Bistellar(0)), 2);
        assert_eq!(count(&moves, MoveKind::Bistellar(3)), 0);
        assert_eq!(count(&moves, MoveKind::Bistellar(4)), 0);
        assert_eq!(count(&moves, MoveKind::EdgeContraction), 0);
        let e = apply(&dipole(), &Move { kind: MoveKind::EdgeContraction, facet: 0, mask: 0b11 });
        assert!(matches!(e, Err(MoveError::IllegalMove(_))));
    }

    #[test]
    fn cp2_is_an_isolated_minimum() {
        let moves = available_moves(&CellComplex::realize(&catalog::cp2()));
        assert_eq!(count(&moves, MoveKind::Bistellar(3)), 0);
        assert_eq!(count(&moves, MoveKind::Bistellar(4)), 0);
        assert_eq!(count(&moves, MoveKind::EdgeContraction), 0);
        assert!(count(&moves, MoveKind::Bistellar(0)) > 0);
    }

    #[test]
    fn f_vector_deltas_and_inverses() {
        let start = CellComplex::realize(&catalog::cp2());
        let base = start.f_vector().0;
        let up = apply(&start, &Move { kind: MoveKind::Bistellar(0), facet: 3, mask: 0b11111 }).unwrap();
        let delta: Vec<i64> = up.f_vector().0.iter().zip(&base).map(|(a, b)| *a as i64 - *b as i64).collect();
        assert_eq!(delta, vec![1, 5, 10, 10, 4]);
        let mut checked = [false; 5];
        for m in available_moves(&up) {
            let MoveKind::Bistellar(i) = m.kind else { continue };
            let next = apply(&up, &m).unwrap();
            assert_eq!(next.euler_characteristic(), 3);
            assert_eq!(next.num_facets() as i64 - up.num_facets() as i64, [4, 2, 0, -2, -4][i]);
            assert!(next.is_orientable());
            assert_eq!(abelianize(&next.pi1()), abelianize(&up.pi1()));
            assert!(next.validate().is_pseudotriangulation());
            checked[i] = true;
        }
        assert!(checked[0] && checked[1] && checked[2] && checked[4]);
    }

    #[test]
    fn two_move_is_self_inverse() {
        let c = CellComplex::realize(&catalog::cp2());
        let c = apply(&c, &Move { kind: MoveKind::Bistellar(0), facet: 0, mask: 0b11111 }).unwrap();
        let two = available_moves(&c).into_iter().find(|m| m.kind == MoveKind::Bistellar(2)).unwrap();
        let once = apply(&c, &two).unwrap();
        let back = available_moves(&once)
            .into_iter()
            .filter(|m| m.kind == MoveKind::Bistellar(2))
            .map(|m| apply(&once, &m).unwrap())
            .find(|x| x.is_isomorphic(&c));
        assert!(back.is_some());
    }

    #[test]
    fn boundary_simplex_reduces_by_contraction_or_four_move() {
        let c = CellComplex::boundary_simplex(4);
        let moves = available_moves(&c);
        assert_eq!(count(&moves, MoveKind::Bistellar(4)), 6);
        assert_eq!(count(&moves, MoveKind::EdgeContraction), 15);
        let ec = moves.iter().find(|m| m.kind == MoveKind::EdgeContraction).unwrap();
        let out = apply(&c, ec).unwrap();
        assert!(out.is_isomorphic(&dipole()));
    }

    #[test]
    fn site_round_trip() {
        let m = Move { kind: MoveKind::Bistellar(2), facet: 17, mask: 0b10101 };
        assert_eq!(m.to_string(), "b2 17:024");
        assert_eq!(Move::parse_site("17:024"), Some((17, 0b10101)));
        assert_eq!("ec".parse::<MoveKind>(), Ok(MoveKind::EdgeContraction));
        assert_eq!("b3".parse::<MoveKind>(), Ok(MoveKind::Bistellar(3)));
    }
}
