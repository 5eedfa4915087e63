//! Isomorphism signatures of connected complexes.

use itertools::Itertools;

use super::{CellComplex, Perm};

const UNGLUED: u32 = u32::MAX;

impl CellComplex {
    /// Lexicographically least BFS trace over every start facet and every
    /// ordering of its corners. Equal signatures mean isomorphic complexes.
    /// Returns `None` for disconnected complexes.
    pub fn iso_signature(&self) -> Option<Vec<u32>> {
        if !self.is_connected() {
            return None;
        }
        let d = self.dim();
        let starts: Vec<Perm> = (0..=d)
            .permutations(d + 1)
            .map(|p| Perm::from_slice(&p).unwrap())
            .collect();
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::new();
        for f in 0..self.num_facets() {
            for sigma in &starts {
                if self.trace(f, *sigma, best.as_deref(), &mut buf) {
                    best = Some(buf.clone());
                }
            }
        }
        best
    }

    pub fn is_isomorphic(&self, other: &CellComplex) -> bool {
        self.dim() == other.dim()
            && self.num_facets() == other.num_facets()
            && self.iso_signature().is_some()
            && self.iso_signature() == other.iso_signature()
    }

    /// `tau[f]` sends original corners of `f` to canonical ones.
    fn trace(&self, start: usize, sigma: Perm, best: Option<&[u32]>, buf: &mut Vec<u32>) -> bool {
        let d = self.dim();
        let nf = self.num_facets();
        buf.clear();
        let mut label = vec![u32::MAX; nf];
        let mut tau = vec![Perm::identity(); nf];
        let mut order = Vec::with_capacity(nf);
        let mut smaller = best.is_none();
        let mut push = |x: u32, buf: &mut Vec<u32>| -> bool {
            let k = buf.len();
            buf.push(x);
            if !smaller {
                let b = best.unwrap()[k];
                if x > b {
                    return false;
                }
                smaller = x < b;
            }
            true
        };
        if !push(d as u32, buf) || !push(nf as u32, buf) {
            return false;
        }
        label[start] = 0;
        tau[start] = sigma;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let f = order[head];
            head += 1;
            let inv = tau[f].inverse();
            for a in 0..=d {
                let i = inv.apply(a);
                let Some(g) = self.gluing(f, i) else {
                    if !push(UNGLUED, buf) {
                        return false;
                    }
                    continue;
                };
                if label[g.facet] == u32::MAX {
                    label[g.facet] = order.len() as u32;
                    tau[g.facet] = tau[f].compose(&g.perm.inverse());
                    order.push(g.facet);
                }
                // corner correspondence in canonical labels
                let rel = tau[g.facet].compose(&g.perm).compose(&inv);
                let mut code = 0u32;
                for k in 0..=d {
                    code = code * (d as u32 + 1) + rel.apply(k) as u32;
                }
                if !push(label[g.facet], buf) || !push(code, buf) {
                    return false;
                }
            }
        }
        smaller
    }

    /// Renumbers facets: facet `f` becomes `perm[f]`.
    pub fn relabel_facets(&self, perm: &[usize]) -> CellComplex {
        let d = self.dim();
        let mut table = vec![None; self.table().len()];
        for f in 0..self.num_facets() {
            for i in 0..=d {
                table[perm[f] * (d + 1) + i] = self.gluing(f, i).map(|g| super::Gluing {
                    facet: perm[g.facet],
                    ..*g
                });
            }
        }
        CellComplex::from_table(d, table)
    }
}
