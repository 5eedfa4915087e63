//! Connected sums of colored graphs.

use thiserror::Error;

use crate::catalog::{self, CatalogError};
use crate::graph::{ColoredGraph, GraphError};

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("dimensions differ: {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("not a permutation of the colors: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("cannot sum a graph with itself at one vertex")]
    SelfSum,
    #[error("empty connected-sum specification")]
    EmptySpec,
    #[error("summand `{0}` is not bipartite")]
    NotBipartite(String),
    #[error("cannot parse summand `{0}`")]
    BadSummand(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Removes `v1` from `g1` and `v2` from `g2` and joins the loose ends: the
/// color-`sigma[j]` neighbour of `v1` meets the color-`j` neighbour of `v2`
/// with a color-`j` edge. Vertices of `g1` come first (in order, skipping
/// `v1`), then those of `g2`. Color `j` of the `g1` part is its old color
/// `sigma[j]`.
pub fn connected_sum(
    g1: &ColoredGraph,
    v1: usize,
    g2: &ColoredGraph,
    v2: usize,
    sigma: &[usize],
) -> Result<ColoredGraph, SurgeryError> {
    if g1.dim() != g2.dim() {
        return Err(SurgeryError::DimensionMismatch(g1.dim(), g2.dim()));
    }
    for (v, g) in [(v1, g1), (v2, g2)] {
        if v >= g.order() {
            return Err(SurgeryError::VertexOutOfRange { vertex: v, order: g.order() });
        }
    }
    if std::ptr::eq(g1, g2) && v1 == v2 {
        return Err(SurgeryError::SelfSum);
    }
    let colors = g1.num_colors();
    let mut seen = vec![false; colors];
    if sigma.len() != colors || !sigma.iter().all(|&c| c < colors && !std::mem::replace(&mut seen[c], true)) {
        return Err(SurgeryError::BadPermutation(sigma.to_vec()));
    }
    let (n1, n2) = (g1.order(), g2.order());
    let map1 = |v: usize| if v < v1 { v } else { v - 1 };
    let map2 = |v: usize| n1 - 1 + if v < v2 { v } else { v - 1 };
    let matchings = (0..colors)
        .map(|j| {
            let mut m = vec![0; n1 + n2 - 2];
            let end1 = g1.neighbor(v1, sigma[j]);
            let end2 = g2.neighbor(v2, j);
            for x in (0..n1).filter(|&x| x != v1) {
                let y = g1.neighbor(x, sigma[j]);
                m[map1(x)] = if y == v1 { map2(end2) } else { map1(y) };
            }
            for x in (0..n2).filter(|&x| x != v2) {
                let y = g2.neighbor(x, j);
                m[map2(x)] = if y == v2 { map1(end1) } else { map2(y) };
            }
            m
        })
        .collect();
    Ok(ColoredGraph::new(g1.dim(), matchings)?)
}

/// One entry of an iterated connected sum.
#[derive(Clone, Debug)]
pub struct Summand {
    pub name: String,
    pub graph: ColoredGraph,
    pub reversed: bool,
    pub count: usize,
}

/// Left fold of connected sums that keeps the result bipartite and respects
/// orientations. The positive class of a summand is the class of vertex 0,
/// or its complement when reversed. Each step removes the least vertex of
/// the running positive class and the least vertex of the new summand's
/// negative class.
pub fn iterated_sum(spec: &[Summand]) -> Result<ColoredGraph, SurgeryError> {
    let mut acc: Option<(ColoredGraph, Vec<bool>)> = None;
    let identity: Vec<usize> = spec.first().map(|s| (0..s.graph.num_colors()).collect()).unwrap_or_default();
    for s in spec {
        let (white, _) = s
            .graph
            .is_bipartite()
            .ok_or_else(|| SurgeryError::NotBipartite(s.name.clone()))?;
        let mut positive = vec![s.reversed; s.graph.order()];
        for &w in &white {
            positive[w] = !s.reversed;
        }
        for _ in 0..s.count {
            acc = Some(match acc.take() {
                None => (s.graph.clone(), positive.clone()),
                Some((g, pos)) => {
                    let v1 = pos.iter().position(|&p| p).expect("positive class nonempty");
                    let v2 = positive.iter().position(|&p| !p).expect("negative class nonempty");
                    let sum = connected_sum(&g, v1, &s.graph, v2, &identity)?;
                    let mut next: Vec<bool> = pos.iter().enumerate().filter(|&(v, _)| v != v1).map(|(_, &p)| p).collect();
                    next.extend(positive.iter().enumerate().filter(|&(v, _)| v != v2).map(|(_, &p)| p));
                    (sum, next)
                }
            });
        }
    }
    acc.map(|(g, _)| g).ok_or(SurgeryError::EmptySpec)
}

/// Parses `3*cp2 + 20*cp2bar`: summands separated by `+`, each an optional
/// `count*` and a name; a `bar` suffix reverses orientation.
pub fn parse_sum_spec(text: &str) -> Result<Vec<(String, bool, usize)>, SurgeryError> {
    let mut out = Vec::new();
    for part in text.split('+') {
        let part = part.trim();
        if part.is_empty() {
            if text.trim().is_empty() {
                return Err(SurgeryError::EmptySpec);
            }
            return Err(SurgeryError::BadSummand(part.to_string()));
        }
        let (count, name) = match part.split_once('*') {
            Some((c, n)) => (
                c.trim().parse::<usize>().map_err(|_| SurgeryError::BadSummand(part.to_string()))?,
                n.trim(),
            ),
            None => (1, part),
        };
        let (base, reversed) = match name.strip_suffix("bar") {
            Some(b) => (b, true),
            None => (name, false),
        };
        if base.is_empty() || !base.chars().all(|ch| ch.is_ascii_alphanumeric()) {
            return Err(SurgeryError::BadSummand(part.to_string()));
        }
        out.push((base.to_string(), reversed, count));
    }
    Ok(out)
}

/// Parses a specification and folds it, resolving names through `resolve`.
pub fn iterated_sum_spec(
    text: &str,
    resolve: impl Fn(&str) -> Result<ColoredGraph, CatalogError>,
) -> Result<ColoredGraph, SurgeryError> {
    let parts = parse_sum_spec(text)?;
    let mut spec = Vec::with_capacity(parts.len());
    for (name, reversed, count) in parts {
        spec.push(Summand {
            graph: resolve(&name)?,
            name,
            reversed,
            count,
        });
    }
    iterated_sum(&spec)
}

/// Resolver for the built-in catalog without external data.
pub fn builtin(name: &str) -> Result<ColoredGraph, CatalogError> {
    catalog::catalog(name, None)
}
