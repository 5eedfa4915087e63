use std::collections::HashMap;

use itertools::Itertools;

use super::{CellComplex, Gluing, Perm};

impl CellComplex {
    /// Barycentric subdivision. Facet `(f, π)` has vertex `k` at the
    /// barycenter of the face of `f` spanned by corners `π(0), …, π(k)`.
    pub fn barycentric_subdivision(&self) -> CellComplex {
        let d = self.dim();
        let flags: Vec<Perm> = (0..=d)
            .permutations(d + 1)
            .map(|p| Perm::from_slice(&p).unwrap())
            .collect();
        let rank: HashMap<Perm, usize> = flags.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let per = flags.len();
        let mut gluings = Vec::with_capacity(self.num_facets() * per * (d + 1));
        for f in 0..self.num_facets() {
            for pi in &flags {
                for k in 0..d {
                    let swapped = pi.compose(&Perm::transposition(k, k + 1));
                    gluings.push(Some(Gluing {
                        facet: f * per + rank[&swapped],
                        face: k,
                        perm: Perm::identity(),
                    }));
                }
                gluings.push(self.gluing(f, pi.apply(d)).map(|g| Gluing {
                    facet: g.facet * per + rank[&g.perm.compose(pi)],
                    face: d,
                    perm: Perm::identity(),
                }));
            }
        }
        CellComplex::from_table(d, gluings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::ColoredGraph;

    #[test]
    fn subdivision_sizes_and_euler() {
        let c = CellComplex::realize(&ColoredGraph::dipole(4));
        let s = c.barycentric_subdivision();
        assert_eq!(s.num_facets(), 240);
        assert_eq!(s.euler_characteristic(), c.euler_characteristic());
        let cp2 = CellComplex::realize(&catalog::cp2()).barycentric_subdivision();
        assert_eq!(cp2.num_facets(), 960);
        assert_eq!(cp2.euler_characteristic(), 3);
        assert!(cp2.is_orientable());
    }

    #[test]
    fn subdivision_is_simplicial() {
        let s = CellComplex::realize(&ColoredGraph::dipole(3)).barycentric_subdivision();
        let faces = s.face_classes();
        assert!(faces.self_identification(s.num_facets()).is_none());
        let mut vertex_sets: Vec<Vec<usize>> = (0..s.num_facets())
            .map(|f| (0..=3).map(|k| faces.vertex(f, k)).sorted().collect())
            .collect();
        vertex_sets.sort();
        vertex_sets.dedup();
        assert_eq!(vertex_sets.len(), s.num_facets());
        assert_eq!(s.euler_characteristic(), 0);
    }
}
