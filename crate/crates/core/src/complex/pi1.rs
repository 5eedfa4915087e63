//! Fundamental group of a complex from a spanning tree of its dual graph.

use super::CellComplex;
use crate::group::GroupPresentation;

impl CellComplex {
    /// Generators are the glued face pairs outside a BFS spanning tree of the
    /// dual graph; each codimension-2 face contributes the word read while
    /// walking once around it.
    pub fn pi1(&self) -> GroupPresentation {
        let d = self.dim();
        let nf = self.num_facets();
        if nf == 0 {
            return GroupPresentation::trivial();
        }
        let slots = nf * (d + 1);
        // letter for crossing out of (f, i); 0 for tree edges
        let mut letter = vec![0i32; slots];
        let mut tree = vec![false; slots];
        let mut seen = vec![false; nf];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for i in 0..=d {
                if let Some(g) = self.gluing(f, i) {
                    if !seen[g.facet] {
                        seen[g.facet] = true;
                        tree[f * (d + 1) + i] = true;
                        tree[g.facet * (d + 1) + g.face] = true;
                        queue.push_back(g.facet);
                    }
                }
            }
        }
        let mut gens = 0i32;
        for f in 0..nf {
            for i in 0..=d {
                let s = f * (d + 1) + i;
                let Some(g) = self.gluing(f, i) else { continue };
                let t = g.facet * (d + 1) + g.face;
                if tree[s] || s > t {
                    continue;
                }
                gens += 1;
                letter[s] = gens;
                letter[t] = -gens;
            }
        }
        let mut relators = Vec::new();
        if d >= 2 {
            let faces = self.face_classes();
            let mut done = vec![false; faces.count(d - 2)];
            let full = (1u32 << (d + 1)) - 1;
            for f in 0..nf {
                for e in 0..=d {
                    for o in e + 1..=d {
                        let mask = full & !(1 << e) & !(1 << o);
                        let class = faces.face(f, mask);
                        if done[class] {
                            continue;
                        }
                        done[class] = true;
                        if let Some(word) = self.walk_ridge(f, e, o, &letter) {
                            relators.push(word);
                        }
                    }
                }
            }
        }
        GroupPresentation::new(gens as usize, relators).expect("letters in range")
    }

    /// Walks around the codimension-2 face of `f` missing corners `e`, `o`,
    /// leaving through face `e` first. `None` when the walk hits an unglued face.
    fn walk_ridge(&self, f: usize, e: usize, o: usize, letter: &[i32]) -> Option<Vec<i32>> {
        let d = self.dim();
        let (mut g, mut exit, mut other) = (f, e, o);
        let mut word = Vec::new();
        let limit = self.num_facets() * (d + 1) * (d + 1) + 1;
        for _ in 0..limit {
            let gl = self.gluing(g, exit)?;
            let x = letter[g * (d + 1) + exit];
            if x != 0 {
                word.push(x);
            }
            let next_exit = gl.perm.apply(other);
            other = gl.face;
            exit = next_exit;
            g = gl.facet;
            if (g, exit, other) == (f, e, o) {
                return Some(word);
            }
        }
        unreachable!("walk around a codimension-2 face does not close");
    }
}

/// Free-function form of [`CellComplex::pi1`].
pub fn pi1_complex(c: &CellComplex) -> GroupPresentation {
    c.pi1()
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::complex::CellComplex;
    use crate::graph::ColoredGraph;
    use crate::group::{abelianize, gagliardi_presentation, tietze_simplify, DEFAULT_BUDGET};

    #[test]
    fn dipole_and_cp2_are_simply_connected() {
        for g in [ColoredGraph::dipole(4), catalog::cp2()] {
            let p = CellComplex::realize(&g).pi1();
            assert!(tietze_simplify(&p, DEFAULT_BUDGET).0.is_trivial());
        }
    }

    #[test]
    fn agrees_with_graph_presentation() {
        let fixtures = [
            catalog::fixtures::case_iii(),
            catalog::fixtures::fig3b_residue(),
            catalog::fixtures::g2(),
            catalog::fixtures::fig3a(),
        ];
        for g in fixtures {
            let from_complex = abelianize(&CellComplex::realize(&g).pi1());
            let from_graph = abelianize(&gagliardi_presentation(&g, 0, 1).unwrap());
            assert_eq!(from_complex, from_graph);
        }
    }

    #[test]
    fn boundary_simplex_is_simply_connected() {
        let p = CellComplex::boundary_simplex(3).pi1();
        assert!(tietze_simplify(&p, DEFAULT_BUDGET).0.is_trivial());
    }
}
