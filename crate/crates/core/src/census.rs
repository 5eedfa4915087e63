//! Exhaustive enumeration of small crystallizations up to isomorphism.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{CanonicalCode, ColorSet, ColoredGraph};
use crate::invariants::{check_4manifold_crystallization, crystallization_arithmetic, SphereCertificate};

/// Default vertex bound for the 4-colored census.
pub const LIMIT_3: usize = 12;
/// Default vertex bound for the simple 5-colored census.
pub const LIMIT_SIMPLE_4: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{n} vertices exceeds the limit of {limit}; raise the limit explicitly")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex count {0} is odd")]
    NOdd(usize),
}

fn guard(n: usize, limit: usize) -> Result<(), CensusError> {
    if n % 2 == 1 {
        return Err(CensusError::NOdd(n));
    }
    if n > limit {
        return Err(CensusError::TooLarge { n, limit });
    }
    Ok(())
}

/// Integer partitions of `k` into nonincreasing parts.
fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=k.min(max)).rev() {
            cur.push(p);
            rec(k - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// All perfect matchings of `0..n` as involution arrays.
fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = m.iter().position(|&x| x == usize::MAX) else {
            out.push(m.clone());
            return;
        };
        for b in a + 1..m.len() {
            if m[b] == usize::MAX {
                m[a] = b;
                m[b] = a;
                rec(m, out);
                m[a] = usize::MAX;
                m[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

fn dedup(graphs: impl IntoIterator<Item = ColoredGraph>) -> Vec<ColoredGraph> {
    let mut by_code: BTreeMap<CanonicalCode, ColoredGraph> = BTreeMap::new();
    for g in graphs {
        let code = g.canonical_code().expect("census graphs are connected");
        by_code.entry(code).or_insert(g);
    }
    by_code.into_values().collect()
}

/// Isomorphism classes of connected contracted 4-colored graphs on `n`
/// vertices satisfying the 3-manifold arithmetic, for `n <= 12`.
pub fn census_3manifold(n: usize) -> Result<Vec<ColoredGraph>, CensusError> {
    census_3manifold_with_limit(n, LIMIT_3)
}

/// Color 0 joins `2k` and `2k+1`. Color 1 is fixed to one representative per
/// cycle type of the {0,1}-residue; colors 2 and 3 run over all perfect
/// matchings.
pub fn census_3manifold_with_limit(n: usize, limit: usize) -> Result<Vec<ColoredGraph>, CensusError> {
    guard(n, limit)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let c0: Vec<usize> = (0..n).map(|v| v ^ 1).collect();
    let c1s: Vec<Vec<usize>> = partitions(n / 2)
        .into_iter()
        .map(|parts| {
            let mut m = vec![0; n];
            let mut start = 0;
            for k in parts {
                // pairs start..start+k form one cycle
                for i in 0..k {
                    let a = 2 * (start + i) + 1;
                    let b = if i + 1 == k { 2 * start } else { a + 1 };
                    m[a] = b;
                    m[b] = a;
                }
                start += k;
            }
            m
        })
        .collect();
    let all = perfect_matchings(n);
    let found: Vec<ColoredGraph> = c1s
        .iter()
        .cartesian_product(&all)
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(c1, c2)| {
            let partial = ColoredGraph::new(2, vec![c0.clone(), c1.clone(), c2.clone()]).expect("matchings");
            let ok = partial.is_connected();
            let c0 = &c0;
            all.iter().filter_map(move |c3| {
                if !ok {
                    return None;
                }
                let g = ColoredGraph::new(3, vec![c0.clone(), c1.clone(), c2.clone(), c3.clone()]).ok()?;
                (g.is_contracted() && crystallization_arithmetic(&g)).then_some(g)
            })
        })
        .collect();
    Ok(dedup(found))
}

/// Result of the simple census. Graphs whose residue certificates are
/// neither refuted nor confirmed are kept apart.
#[derive(Clone, Debug, Default)]
pub struct SimpleCensus {
    pub classes: Vec<ColoredGraph>,
    pub undecided: Vec<ColoredGraph>,
}

pub fn census_simple_4(n: usize) -> Result<SimpleCensus, CensusError> {
    census_simple_4_with_limit(n, LIMIT_SIMPLE_4)
}

fn cycle_count(p: &[usize], q: &[usize]) -> usize {
    // cycles of q^-1 p on white vertices
    let k = p.len();
    let mut inv_q = vec![0; k];
    for (w, &b) in q.iter().enumerate() {
        inv_q[b] = w;
    }
    let mut seen = vec![false; k];
    let mut cycles = 0;
    for s in 0..k {
        if !seen[s] {
            cycles += 1;
            let mut w = s;
            while !seen[w] {
                seen[w] = true;
                w = inv_q[p[w]];
            }
        }
    }
    cycles
}

/// Bipartite graphs with white vertices `0..k` and black `k..2k`: color `c`
/// joins `w` to `k + perm_c[w]`, with color 0 the identity and color 1 one
/// representative per cycle type with `m = (n+4)/6` cycles. Colors 2 to 4
/// are all permutations with `m` cycles against every earlier color. The
/// survivors must have connected 3-color residues, no triple edges (beyond
/// the dipole) and sphere residues.
pub fn census_simple_4_with_limit(n: usize, limit: usize) -> Result<SimpleCensus, CensusError> {
    guard(n, limit)?;
    if n == 0 || (n + 4) % 6 != 0 {
        return Ok(SimpleCensus::default());
    }
    let k = n / 2;
    let m = (n + 4) / 6;
    let id: Vec<usize> = (0..k).collect();
    let c1s: Vec<Vec<usize>> = partitions(k)
        .into_iter()
        .filter(|parts| parts.len() == m)
        .map(|parts| {
            let mut p = vec![0; k];
            let mut start = 0;
            for len in parts {
                for i in 0..len {
                    p[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            p
        })
        .collect();
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let to_graph = |ps: &[&Vec<usize>]| {
        let matchings = ps
            .iter()
            .map(|p| {
                let mut mt = vec![0; n];
                for (w, &b) in p.iter().enumerate() {
                    mt[w] = k + b;
                    mt[k + b] = w;
                }
                mt
            })
            .collect();
        ColoredGraph::new(ps.len() - 1, matchings).expect("bijections give matchings")
    };
    let compatible = |chosen: &[&Vec<usize>], p: &Vec<usize>| chosen.iter().all(|q| cycle_count(p, q) == m);
    let candidates: Vec<ColoredGraph> = c1s
        .par_iter()
        .flat_map_iter(|c1| {
            let mut out = Vec::new();
            let base = [&id, c1];
            for p2 in perms.iter().filter(|p| compatible(&base, p)) {
                let with2 = [&id, c1, p2];
                for p3 in perms.iter().filter(|p| compatible(&with2, p)) {
                    let with3 = [&id, c1, p2, p3];
                    for p4 in perms.iter().filter(|p| compatible(&with3, p)) {
                        let g = to_graph(&[&id, c1, p2, p3, p4]);
                        if admissible(&g) {
                            out.push(g);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut census = SimpleCensus::default();
    for g in dedup(candidates) {
        match check_4manifold_crystallization(&g).map(|c| c.weakest()) {
            Ok(SphereCertificate::Sphere) => census.classes.push(g),
            Ok(SphereCertificate::Unknown) => census.undecided.push(g),
            _ => {}
        }
    }
    Ok(census)
}

fn admissible(g: &ColoredGraph) -> bool {
    let n = g.order();
    if n > 2 && (0..n).any(|v| (0..n).any(|w| g.multiplicity(v, w) >= 3)) {
        return false;
    }
    ColorSet::subsets_of_size(4, 3).into_iter().all(|s| g.g_count(s) == 1)
}
