//! Simplicial cell complexes stored as facet gluings.
//!
//! Facet `f` has local corners `0..=dim`; face `i` is the face opposite corner
//! `i`. A gluing of face `i` of `f` to face `i'` of `f'` carries a permutation
//! `p` of the corners with `p(i) = i'`: corner `x` of `f` is identified with
//! corner `p(x)` of `f'`.

mod faces;
mod iso;
mod link;
mod pi1;
mod subdivide;

use std::fmt;

use thiserror::Error;

use crate::graph::{ColoredGraph, GraphError};

pub use faces::{FaceClasses, FVector, Tier, ValidationError, ValidationReport};
pub use link::sphere_certificate;
pub use pi1::pi1_complex;

/// Largest supported dimension.
pub const MAX_DIM: usize = 7;

/// A permutation of `0..=dim`, padded with fixed points up to `MAX_DIM`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm([u8; MAX_DIM + 1]);

impl Perm {
    pub fn identity() -> Self {
        Perm(std::array::from_fn(|k| k as u8))
    }

    /// Returns `None` unless `images` is a permutation of `0..images.len()`.
    pub fn from_slice(images: &[usize]) -> Option<Self> {
        if images.len() > MAX_DIM + 1 {
            return None;
        }
        let mut seen = [false; MAX_DIM + 1];
        let mut p = Perm::identity();
        for (k, &x) in images.iter().enumerate() {
            if x >= images.len() || seen[x] {
                return None;
            }
            seen[x] = true;
            p.0[k] = x as u8;
        }
        Some(p)
    }

    /// Swaps `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut p = Perm::identity();
        p.0.swap(a, b);
        p
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut q = Perm::identity();
        for (k, &x) in self.0.iter().enumerate() {
            q.0[x as usize] = k as u8;
        }
        q
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(std::array::from_fn(|k| self.0[other.0[k] as usize]))
    }

    pub fn images(&self, dim: usize) -> &[u8] {
        &self.0[..=dim]
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm::identity()
    }

    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> i32 {
        let mut seen = [false; MAX_DIM + 1];
        let mut s = 1;
        for start in 0..=MAX_DIM {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Image of a corner bitmask.
    pub fn map_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            out |= 1 << self.0[k];
            m &= m - 1;
        }
        out
    }

    /// Digit-string form used by the text format.
    pub fn to_digits(&self, dim: usize) -> String {
        self.0[..=dim].iter().map(|&d| char::from(b'0' + d)).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..=MAX_DIM).rev().find(|&k| self.0[k] as usize != k).unwrap_or(0);
        write!(f, "[{}]", self.to_digits(last))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub facet: usize,
    pub face: usize,
    pub perm: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    BadDimension(usize),
    #[error("facet {facet} has {found} face entries, expected {expected}")]
    WrongArity { facet: usize, expected: usize, found: usize },
    #[error("facet {facet} face {face}: target facet {target} out of range")]
    TargetOutOfRange { facet: usize, face: usize, target: usize },
    #[error("facet {facet} face {face}: correspondence is not a permutation of 0..={dim}")]
    BadPermutation { facet: usize, face: usize, dim: usize },
    #[error("facet {facet} face {face}: correspondence sends {face} to {image}, expected {target_face}")]
    FaceMismatch { facet: usize, face: usize, image: usize, target_face: usize },
    #[error("facet {facet} face {face} is glued to itself")]
    SelfGluing { facet: usize, face: usize },
    #[error("facet {facet} face {face}: gluing is not matched by its partner")]
    NotInvolutive { facet: usize, face: usize },
    #[error("complex is not contracted: {0}")]
    NotContracted(String),
    #[error("complex has no facets")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CellComplex {
    dim: usize,
    gluings: Vec<Option<Gluing>>,
}

impl CellComplex {
    /// Validates shape, permutations and involutivity of the gluing table.
    pub fn new(dim: usize, facets: Vec<Vec<Option<Gluing>>>) -> Result<Self, ComplexError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(ComplexError::BadDimension(dim));
        }
        let nf = facets.len();
        let mut gluings = Vec::with_capacity(nf * (dim + 1));
        for (f, row) in facets.into_iter().enumerate() {
            if row.len() != dim + 1 {
                return Err(ComplexError::WrongArity {
                    facet: f,
                    expected: dim + 1,
                    found: row.len(),
                });
            }
            gluings.extend(row);
        }
        let c = CellComplex { dim, gluings };
        c.check_table()?;
        Ok(c)
    }

    /// Builds from a flat table without validation. Callers guarantee the
    /// table satisfies the constructor's checks.
    pub(crate) fn from_table(dim: usize, gluings: Vec<Option<Gluing>>) -> Self {
        let c = CellComplex { dim, gluings };
        debug_assert_eq!(c.check_table(), Ok(()));
        c
    }

    fn check_table(&self) -> Result<(), ComplexError> {
        let d = self.dim;
        let nf = self.num_facets();
        for f in 0..nf {
            for i in 0..=d {
                let Some(g) = self.gluing(f, i) else { continue };
                if g.facet >= nf || g.face > d {
                    return Err(ComplexError::TargetOutOfRange { facet: f, face: i, target: g.facet });
                }
                if (d + 1..=MAX_DIM).any(|k| g.perm.apply(k) != k) || Perm::from_slice(&g.perm.images(d).iter().map(|&x| x as usize).collect::<Vec<_>>()).is_none() {
                    return Err(ComplexError::BadPermutation { facet: f, face: i, dim: d });
                }
                if g.perm.apply(i) != g.face {
                    return Err(ComplexError::FaceMismatch {
                        facet: f,
                        face: i,
                        image: g.perm.apply(i),
                        target_face: g.face,
                    });
                }
                if g.facet == f && g.face == i {
                    return Err(ComplexError::SelfGluing { facet: f, face: i });
                }
                let back = self.gluing(g.facet, g.face);
                if back != Some(&Gluing { facet: f, face: i, perm: g.perm.inverse() }) {
                    return Err(ComplexError::NotInvolutive { facet: f, face: i });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.gluings.len() / (self.dim + 1)
    }

    #[inline]
    pub fn gluing(&self, facet: usize, face: usize) -> Option<&Gluing> {
        self.gluings[facet * (self.dim + 1) + face].as_ref()
    }

    pub(crate) fn table(&self) -> &[Option<Gluing>] {
        &self.gluings
    }

    /// Every face slot is glued.
    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(Option::is_some)
    }

    /// The dual graph is connected.
    pub fn is_connected(&self) -> bool {
        let nf = self.num_facets();
        if nf == 0 {
            return true;
        }
        let mut seen = vec![false; nf];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(f) = stack.pop() {
            for i in 0..=self.dim {
                if let Some(g) = self.gluing(f, i) {
                    if !seen[g.facet] {
                        seen[g.facet] = true;
                        count += 1;
                        stack.push(g.facet);
                    }
                }
            }
        }
        count == nf
    }

    /// One facet per graph vertex; a color-`i` edge glues the two faces
    /// opposite corner `i` with the identity correspondence.
    pub fn realize(g: &ColoredGraph) -> CellComplex {
        let d = g.dim();
        let mut gluings = Vec::with_capacity(g.order() * (d + 1));
        for v in 0..g.order() {
            for i in 0..=d {
                gluings.push(Some(Gluing {
                    facet: g.neighbor(v, i),
                    face: i,
                    perm: Perm::identity(),
                }));
            }
        }
        CellComplex::from_table(d, gluings)
    }

    /// The boundary of the `(dim+1)`-simplex: facet `j` omits global vertex `j`.
    pub fn boundary_simplex(dim: usize) -> CellComplex {
        assert!((1..=MAX_DIM).contains(&dim));
        let verts = |j: usize| -> Vec<usize> { (0..=dim + 1).filter(|&v| v != j).collect() };
        let mut gluings = Vec::with_capacity((dim + 2) * (dim + 1));
        for j in 0..=dim + 1 {
            let vj = verts(j);
            for (i, &target) in vj.iter().enumerate() {
                let vt = verts(target);
                let images: Vec<usize> = vj
                    .iter()
                    .map(|&x| if x == target { j } else { x })
                    .map(|x| vt.iter().position(|&y| y == x).unwrap())
                    .collect();
                let perm = Perm::from_slice(&images).unwrap();
                gluings.push(Some(Gluing {
                    facet: target,
                    face: perm.apply(i),
                    perm,
                }));
            }
        }
        CellComplex::from_table(dim, gluings)
    }

    /// Recovers the colored graph of a contracted complex: graph vertices are
    /// facets and a gluing is colored by the global vertex opposite the glued
    /// face, numbered by the local order of facet 0.
    pub fn dual_graph_coloring(&self) -> Result<ColoredGraph, ComplexError> {
        let d = self.dim;
        let nf = self.num_facets();
        if nf == 0 {
            return Err(ComplexError::Empty);
        }
        if !self.is_closed() {
            return Err(ComplexError::NotContracted("complex has unglued faces".into()));
        }
        let faces = self.face_classes();
        let f0 = faces.count(0);
        if f0 != d + 1 {
            return Err(ComplexError::NotContracted(format!("{f0} vertices, expected {}", d + 1)));
        }
        let mut color_of_class = vec![usize::MAX; f0];
        for k in 0..=d {
            color_of_class[faces.vertex(0, k)] = k;
        }
        let mut matchings = vec![vec![0; nf]; d + 1];
        for f in 0..nf {
            let mut used = 0u32;
            for i in 0..=d {
                let c = color_of_class[faces.vertex(f, i)];
                if used & (1 << c) != 0 {
                    return Err(ComplexError::NotContracted(format!("facet {f} repeats a vertex")));
                }
                used |= 1 << c;
                let g = self.gluing(f, i).unwrap();
                if color_of_class[faces.vertex(g.facet, g.face)] != c {
                    return Err(ComplexError::NotContracted(format!("facet {f} face {i}: inconsistent labels")));
                }
                matchings[c][f] = g.facet;
            }
        }
        Ok(ColoredGraph::new(d, matchings)?)
    }

    /// Consistent orientation of all facets, if one exists.
    pub fn is_orientable(&self) -> bool {
        let nf = self.num_facets();
        let mut sign = vec![0i32; nf];
        for root in 0..nf {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = 1;
            let mut stack = vec![root];
            while let Some(f) = stack.pop() {
                for i in 0..=self.dim {
                    let Some(g) = self.gluing(f, i) else { continue };
                    let want = -sign[f] * g.perm.sign();
                    if sign[g.facet] == 0 {
                        sign[g.facet] = want;
                        stack.push(g.facet);
                    } else if sign[g.facet] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler()
    }

    pub fn f_vector(&self) -> FVector {
        self.face_classes().f_vector()
    }
}

/// Free-function form of [`CellComplex::realize`].
pub fn realize(g: &ColoredGraph) -> CellComplex {
    CellComplex::realize(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn perm_basics() {
        let p = Perm::from_slice(&[2, 0, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Perm::identity());
        assert_eq!(p.sign(), 1);
        assert_eq!(Perm::transposition(0, 3).sign(), -1);
        assert_eq!(p.map_mask(0b011), 0b101);
        assert_eq!(p.to_digits(2), "201");
        assert!(Perm::from_slice(&[0, 0]).is_none());
        assert!(Perm::from_slice(&[0, 2]).is_none());
    }

    #[test]
    fn realize_dipole() {
        let c = CellComplex::realize(&ColoredGraph::dipole(4));
        assert_eq!(c.num_facets(), 2);
        assert!(c.is_closed());
        assert_eq!(c.f_vector().0, vec![5, 10, 10, 5, 2]);
        assert!(c.is_orientable());
    }

    #[test]
    fn boundary_simplex_counts() {
        let c = CellComplex::boundary_simplex(4);
        assert_eq!(c.num_facets(), 6);
        assert_eq!(c.f_vector().0, vec![6, 15, 20, 15, 6]);
        assert_eq!(c.euler_characteristic(), 2);
        assert!(c.is_orientable());
        assert!(matches!(c.dual_graph_coloring(), Err(ComplexError::NotContracted(_))));
        let t = CellComplex::boundary_simplex(2);
        assert_eq!(t.f_vector().0, vec![4, 6, 4]);
    }

    #[test]
    fn dual_round_trip() {
        for g in [ColoredGraph::dipole(4), catalog::cp2(), catalog::s2xs2().unwrap()] {
            let back = CellComplex::realize(&g).dual_graph_coloring().unwrap();
            assert!(back.is_isomorphic(&g).unwrap());
        }
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let id = Perm::identity();
        let glue = |facet, face, perm| Some(Gluing { facet, face, perm });
        // face 0 of facet 0 to face 0 of facet 1 but the partner points elsewhere
        let bad = vec![
            vec![glue(1, 0, id), None],
            vec![glue(0, 1, Perm::transposition(0, 1)), None],
        ];
        assert!(matches!(CellComplex::new(1, bad), Err(ComplexError::NotInvolutive { .. })));
        let mismatch = vec![vec![glue(1, 1, id), None], vec![None, glue(0, 0, id)]];
        assert!(matches!(CellComplex::new(1, mismatch), Err(ComplexError::FaceMismatch { .. })));
        let selfglue = vec![vec![glue(0, 0, id), None]];
        assert!(matches!(CellComplex::new(1, selfglue), Err(ComplexError::SelfGluing { .. })));
        let arity = vec![vec![None]];
        assert!(matches!(CellComplex::new(1, arity), Err(ComplexError::WrongArity { .. })));
        let out = vec![vec![glue(5, 0, id), None]];
        assert!(matches!(CellComplex::new(1, out), Err(ComplexError::TargetOutOfRange { .. })));
    }

    #[test]
    fn orientability_follows_bipartiteness() {
        let g = catalog::cp2();
        assert!(CellComplex::realize(&g).is_orientable());
        // a 2-colored odd cycle pattern is impossible, so use a non-bipartite 3-colored graph
        let m0 = vec![1, 0, 3, 2];
        let m1 = vec![2, 3, 0, 1];
        let m2 = vec![3, 2, 1, 0];
        let k4 = ColoredGraph::new(2, vec![m0, m1, m2]).unwrap();
        assert!(k4.is_bipartite().is_none());
        assert!(!CellComplex::realize(&k4).is_orientable());
    }
}
