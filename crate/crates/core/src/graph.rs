//! Regular properly edge-colored multigraphs.
//!
//! A `(d+1)`-colored graph is stored as one fixed-point-free involution per
//! color: `matchings[c][v]` is the unique color-`c` neighbour of `v`. Parallel
//! edges are the same vertex pair appearing in several matchings.

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("expected {expected} color classes, found {found}")]
    ColorCountMismatch { expected: usize, found: usize },
    #[error("color {color} has {found} entries, expected {expected}")]
    LengthMismatch { color: usize, expected: usize, found: usize },
    #[error("vertex count {0} is not a positive even number")]
    BadOrder(usize),
    #[error("color {color} maps vertex {vertex} out of range")]
    OutOfRange { vertex: usize, color: usize },
    #[error("loop at vertex {vertex} in color {color}")]
    LoopEdge { vertex: usize, color: usize },
    #[error("color {color} is not an involution at vertex {vertex}")]
    NotInvolution { vertex: usize, color: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("color set contains colors outside 0..={0}")]
    ColorOutOfRange(usize),
}

/// A subset of the colors `0..=d`, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All colors `0..=dim`.
    pub fn full(dim: usize) -> Self {
        ColorSet((1u32 << (dim + 1)) - 1)
    }

    pub fn contains(self, c: usize) -> bool {
        c < 32 && self.0 & (1 << c) != 0
    }

    pub fn with(self, c: usize) -> Self {
        ColorSet(self.0 | (1 << c))
    }

    pub fn without(self, c: usize) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, dim: usize) -> Self {
        ColorSet(!self.0 & ColorSet::full(dim).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&c| self.0 & (1 << c) != 0)
    }

    /// All subsets of `0..=dim` with exactly `k` colors, in increasing bit order.
    pub fn subsets_of_size(dim: usize, k: usize) -> Vec<ColorSet> {
        (0..=dim)
            .combinations(k)
            .map(|cs| cs.into_iter().collect())
            .sorted()
            .collect()
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.iter() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Complete isomorphism invariant under vertex relabeling and color permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredGraph {
    dim: usize,
    matchings: Vec<Vec<usize>>,
}

impl ColoredGraph {
    /// Builds a `(dim+1)`-colored graph from one neighbour table per color.
    pub fn new(dim: usize, matchings: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if dim == 0 {
            return Err(GraphError::BadDimension);
        }
        if matchings.len() != dim + 1 {
            return Err(GraphError::ColorCountMismatch {
                expected: dim + 1,
                found: matchings.len(),
            });
        }
        let n = matchings[0].len();
        if n == 0 || n % 2 == 1 {
            return Err(GraphError::BadOrder(n));
        }
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != n {
                return Err(GraphError::LengthMismatch {
                    color: c,
                    expected: n,
                    found: m.len(),
                });
            }
            for (v, &w) in m.iter().enumerate() {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: v, color: c });
                }
                if w == v {
                    return Err(GraphError::LoopEdge { vertex: v, color: c });
                }
                if m[w] != v {
                    return Err(GraphError::NotInvolution { vertex: v, color: c });
                }
            }
        }
        Ok(ColoredGraph { dim, matchings })
    }

    /// Builds a graph from explicit edge lists, one list of vertex pairs per color.
    pub fn from_pairs(dim: usize, n: usize, pairs: &[Vec<(usize, usize)>]) -> Result<Self, GraphError> {
        let mut matchings = Vec::with_capacity(pairs.len());
        for (c, list) in pairs.iter().enumerate() {
            let mut m = vec![usize::MAX; n];
            for &(a, b) in list {
                if a >= n || b >= n {
                    return Err(GraphError::OutOfRange { vertex: a.min(b), color: c });
                }
                if m[a] != usize::MAX || m[b] != usize::MAX {
                    return Err(GraphError::NotInvolution { vertex: if m[a] != usize::MAX { a } else { b }, color: c });
                }
                m[a] = b;
                m[b] = a;
            }
            if let Some(v) = m.iter().position(|&w| w == usize::MAX) {
                return Err(GraphError::NotInvolution { vertex: v, color: c });
            }
            matchings.push(m);
        }
        ColoredGraph::new(dim, matchings)
    }

    /// The standard two-vertex graph with every color joining the two vertices.
    pub fn dipole(dim: usize) -> Self {
        ColoredGraph {
            dim,
            matchings: vec![vec![1, 0]; dim + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_colors(&self) -> usize {
        self.dim + 1
    }

    pub fn order(&self) -> usize {
        self.matchings[0].len()
    }

    pub fn all_colors(&self) -> ColorSet {
        ColorSet::full(self.dim)
    }

    #[inline]
    pub fn neighbor(&self, v: usize, color: usize) -> usize {
        self.matchings[color][v]
    }

    pub fn matching(&self, color: usize) -> &[usize] {
        &self.matchings[color]
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.matchings
    }

    /// Edges as `(u, v, color)` with `u < v`, grouped by color.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.matchings.iter().enumerate().flat_map(|(c, m)| {
            m.iter()
                .enumerate()
                .filter(|&(u, &v)| u < v)
                .map(move |(u, &v)| (u, v, c))
        })
    }

    fn check_colors(&self, set: ColorSet) {
        debug_assert!(
            set.bits() & !self.all_colors().bits() == 0,
            "color set {set:?} outside 0..={}",
            self.dim
        );
    }

    fn residue_uf(&self, set: ColorSet) -> UnionFind {
        self.check_colors(set);
        let mut uf = UnionFind::new(self.order());
        for c in set.iter().filter(|&c| c <= self.dim) {
            for (v, &w) in self.matchings[c].iter().enumerate() {
                if v < w {
                    uf.union(v, w);
                }
            }
        }
        uf
    }

    /// Connected components of the residue keeping only colors in `set`.
    /// Each component is sorted; components are ordered by their least vertex.
    pub fn residue(&self, set: ColorSet) -> Vec<Vec<usize>> {
        let (ids, count) = self.residue_uf(set).classes();
        let mut comps = vec![Vec::new(); count];
        for (v, &id) in ids.iter().enumerate() {
            comps[id].push(v);
        }
        comps
    }

    /// Component id of every vertex in the residue on `set`, plus the count.
    pub fn residue_labels(&self, set: ColorSet) -> (Vec<usize>, usize) {
        self.residue_uf(set).classes()
    }

    /// Number of components of the residue on `set`.
    pub fn g_count(&self, set: ColorSet) -> usize {
        self.residue_uf(set).classes().1
    }

    pub fn is_connected(&self) -> bool {
        self.g_count(self.all_colors()) == 1
    }

    /// Every residue obtained by deleting one color is connected.
    pub fn is_contracted(&self) -> bool {
        self.is_connected()
            && (0..=self.dim).all(|c| self.g_count(self.all_colors().without(c)) == 1)
    }

    /// Two-coloring of the vertices, if one exists. The class containing
    /// vertex 0 comes first.
    pub fn is_bipartite(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for root in 0..n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for m in &self.matchings {
                    let w = m[v];
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| side[v] == 0);
        Some((a, b))
    }

    /// Number of colors joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.matchings.iter().filter(|m| m[u] == v).count()
    }

    /// Vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredGraph {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let matchings = self
            .matchings
            .iter()
            .map(|m| {
                let mut out = vec![0; n];
                for v in 0..n {
                    out[perm[v]] = perm[m[v]];
                }
                out
            })
            .collect();
        ColoredGraph { dim: self.dim, matchings }
    }

    /// New color `c` is old color `sigma[c]`.
    pub fn recolor(&self, sigma: &[usize]) -> ColoredGraph {
        assert_eq!(sigma.len(), self.num_colors());
        ColoredGraph {
            dim: self.dim,
            matchings: sigma.iter().map(|&c| self.matchings[c].clone()).collect(),
        }
    }

    /// The colored graph on the same vertices keeping `colors`, renumbered
    /// `0..colors.len()` in the given order.
    pub fn restrict(&self, colors: &[usize]) -> Result<ColoredGraph, GraphError> {
        if colors.len() < 2 {
            return Err(GraphError::BadDimension);
        }
        if let Some(&c) = colors.iter().find(|&&c| c > self.dim) {
            return Err(GraphError::ColorOutOfRange(c));
        }
        Ok(ColoredGraph {
            dim: colors.len() - 1,
            matchings: colors.iter().map(|&c| self.matchings[c].clone()).collect(),
        })
    }

    /// The residue on `set` as a graph of its own (colors renumbered in increasing order).
    pub fn residue_graph(&self, set: ColorSet) -> Result<ColoredGraph, GraphError> {
        self.restrict(&set.iter().collect::<Vec<_>>())
    }

    /// BFS-trace minimum over every start vertex and every color order.
    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.order();
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::with_capacity(n * self.num_colors() + 2);
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        for perm in (0..=self.dim).permutations(self.num_colors()) {
            for start in 0..n {
                if self.trace(start, &perm, best.as_deref(), &mut buf, &mut label, &mut order) {
                    best = Some(buf.clone());
                }
            }
        }
        Ok(CanonicalCode(best.expect("graph has vertices")))
    }

    /// Writes the trace for one (start, color order) into `buf`. Returns true
    /// when it is strictly smaller than `best`; stops early once it is larger.
    fn trace(
        &self,
        start: usize,
        perm: &[usize],
        best: Option<&[u32]>,
        buf: &mut Vec<u32>,
        label: &mut [u32],
        order: &mut Vec<usize>,
    ) -> bool {
        buf.clear();
        label.fill(u32::MAX);
        order.clear();
        let mut smaller = best.is_none();
        let mut emit = |x: u32, buf: &mut Vec<u32>| -> bool {
            let k = buf.len();
            buf.push(x);
            if !smaller {
                let b = best.unwrap()[k];
                if x > b {
                    return false;
                }
                if x < b {
                    smaller = true;
                }
            }
            true
        };
        if !emit(self.dim as u32, buf) || !emit(self.order() as u32, buf) {
            return false;
        }
        label[start] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in perm {
                let w = self.matchings[c][v];
                if label[w] == u32::MAX {
                    label[w] = order.len() as u32;
                    order.push(w);
                }
                if !emit(label[w], buf) {
                    return false;
                }
            }
        }
        smaller
    }

    pub fn is_isomorphic(&self, other: &ColoredGraph) -> Result<bool, GraphError> {
        if self.dim != other.dim || self.order() != other.order() {
            // still require connectivity, matching the code-based contract
            self.canonical_code()?;
            other.canonical_code()?;
            return Ok(false);
        }
        Ok(self.canonical_code()? == other.canonical_code()?)
    }
}

pub fn are_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> Result<bool, GraphError> {
    g.is_isomorphic(h)
}
