//! Vertex links and the sphere certificate for small dimensions.

use super::{CellComplex, FaceClasses, Gluing, Perm};
use crate::group::{abelianize, tietze_simplify, DEFAULT_BUDGET};
use crate::invariants::SphereCertificate;

impl CellComplex {
    /// Link of global vertex `v` (an id from [`CellComplex::face_classes`]).
    pub fn vertex_link(&self, v: usize) -> CellComplex {
        self.vertex_link_with(&self.face_classes(), v)
    }

    /// One link facet per corner of class `v`; link corners are the other
    /// corners of the facet in increasing order.
    pub fn vertex_link_with(&self, faces: &FaceClasses, v: usize) -> CellComplex {
        let d = self.dim();
        assert!(d >= 2, "links of 1-dimensional complexes are not complexes");
        let nf = self.num_facets();
        let mut index = vec![usize::MAX; nf * (d + 1)];
        let mut corners = Vec::new();
        for f in 0..nf {
            for j in 0..=d {
                if faces.vertex(f, j) == v {
                    index[f * (d + 1) + j] = corners.len();
                    corners.push((f, j));
                }
            }
        }
        // local index of corner c in facet f once corner j is removed
        let local = |c: usize, j: usize| if c < j { c } else { c - 1 };
        let mut gluings = Vec::with_capacity(corners.len() * d);
        for &(f, j) in &corners {
            for k in 0..d {
                let c = if k < j { k } else { k + 1 };
                let entry = self.gluing(f, c).map(|g| {
                    let jj = g.perm.apply(j);
                    let images: Vec<usize> = (0..d)
                        .map(|a| {
                            let x = if a < j { a } else { a + 1 };
                            local(g.perm.apply(x), jj)
                        })
                        .collect();
                    Gluing {
                        facet: index[g.facet * (d + 1) + jj],
                        face: local(g.face, jj),
                        perm: Perm::from_slice(&images).expect("gluing restricts to a bijection"),
                    }
                });
                gluings.push(entry);
            }
        }
        CellComplex::from_table(d - 1, gluings)
    }
}

/// Certifies that a complex is a sphere of its dimension.
///
/// Dimensions 1 and 2 are decided exactly. In dimension 3 every vertex link
/// must be a 2-sphere and the fundamental group must simplify to the trivial
/// group. Higher dimensions can only be refuted, never certified.
pub fn sphere_certificate(c: &CellComplex) -> SphereCertificate {
    if c.num_facets() == 0 || !c.is_closed() || !c.is_connected() {
        return SphereCertificate::NotManifold;
    }
    let faces = c.face_classes();
    if faces.self_identification(c.num_facets()).is_some() {
        return SphereCertificate::NotManifold;
    }
    let d = c.dim();
    if d == 1 {
        return SphereCertificate::Sphere;
    }
    for v in 0..faces.count(0) {
        match sphere_certificate(&c.vertex_link_with(&faces, v)) {
            SphereCertificate::NotManifold | SphereCertificate::NotSphere(_) => {
                return SphereCertificate::NotManifold
            }
            SphereCertificate::Sphere | SphereCertificate::Unknown => {}
        }
    }
    let p = c.pi1();
    let ab = abelianize(&p);
    if !ab.is_trivial() {
        return SphereCertificate::NotSphere(ab);
    }
    match d {
        2 if faces.f_vector().euler() == 2 => SphereCertificate::Sphere,
        // a closed surface with trivial first homology is the sphere
        2 => SphereCertificate::NotManifold,
        3 => {
            if tietze_simplify(&p, DEFAULT_BUDGET).0.is_trivial() {
                SphereCertificate::Sphere
            } else {
                SphereCertificate::Unknown
            }
        }
        _ => SphereCertificate::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{ColorSet, ColoredGraph};

    #[test]
    fn dipole_links_are_two_facet_spheres() {
        let c = CellComplex::realize(&ColoredGraph::dipole(4));
        for v in 0..5 {
            let l = c.vertex_link(v);
            assert_eq!(l.dim(), 3);
            assert_eq!(l.num_facets(), 2);
            assert_eq!(sphere_certificate(&l), SphereCertificate::Sphere);
        }
    }

    #[test]
    fn cp2_links_are_residue_complexes() {
        let g = catalog::cp2();
        let c = CellComplex::realize(&g);
        let faces = c.face_classes();
        for v in 0..5 {
            let l = c.vertex_link_with(&faces, v);
            assert_eq!(l.num_facets(), 8);
            // the corner carrying vertex v has one color; its link is the residue without it
            let color = (0..5).find(|&k| faces.vertex(0, k) == v).unwrap();
            let residue = g.residue_graph(ColorSet::full(4).without(color)).unwrap();
            let expect = CellComplex::realize(&residue);
            assert_eq!(l.f_vector(), expect.f_vector());
            assert!(l.dual_graph_coloring().unwrap().is_isomorphic(&residue).unwrap());
            assert_eq!(sphere_certificate(&l), SphereCertificate::Sphere);
        }
    }

    #[test]
    fn boundary_simplices_are_spheres() {
        for d in 1..=3 {
            assert_eq!(sphere_certificate(&CellComplex::boundary_simplex(d)), SphereCertificate::Sphere);
        }
        assert_eq!(sphere_certificate(&CellComplex::boundary_simplex(4)), SphereCertificate::Unknown);
    }

    #[test]
    fn torus_and_projective_plane_are_refuted() {
        // 2-colored... a 3-colored graph whose complex is RP^2
        let k4 = ColoredGraph::new(2, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
        let cert = sphere_certificate(&CellComplex::realize(&k4));
        assert!(matches!(cert, SphereCertificate::NotSphere(ref ab) if ab.torsion_u64() == vec![2]), "{cert:?}");
        let case_iii = catalog::fixtures::case_iii();
        let cert = sphere_certificate(&CellComplex::realize(&case_iii));
        assert!(matches!(cert, SphereCertificate::NotSphere(ref ab) if ab.free_rank == 1), "{cert:?}");
    }
}
