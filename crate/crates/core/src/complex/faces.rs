//! Global face classes, f-vectors and the three validity tiers.

use std::fmt;

use thiserror::Error;

use super::CellComplex;
use crate::invariants::SphereCertificate;
use crate::unionfind::UnionFind;

/// Face counts `f_0..f_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Identification classes of every corner subset of every facet.
#[derive(Clone, Debug)]
pub struct FaceClasses {
    dim: usize,
    masks: usize,
    ids: Vec<usize>,
    counts: Vec<usize>,
}

impl FaceClasses {
    pub(crate) fn compute(c: &CellComplex) -> Self {
        let d = c.dim();
        let masks = 1usize << (d + 1);
        let nf = c.num_facets();
        let mut uf = UnionFind::new(nf * masks);
        for f in 0..nf {
            for i in 0..=d {
                let Some(g) = c.gluing(f, i) else { continue };
                if (g.facet, g.face) < (f, i) {
                    continue;
                }
                for m in 1..masks as u32 {
                    if m & (1 << i) == 0 {
                        uf.union(f * masks + m as usize, g.facet * masks + g.perm.map_mask(m) as usize);
                    }
                }
            }
        }
        let mut root_id = vec![usize::MAX; nf * masks];
        let mut ids = vec![usize::MAX; nf * masks];
        let mut counts = vec![0; d + 1];
        for f in 0..nf {
            for m in 1..masks {
                let k = m.count_ones() as usize - 1;
                let r = uf.find(f * masks + m);
                if root_id[r] == usize::MAX {
                    root_id[r] = counts[k];
                    counts[k] += 1;
                }
                ids[f * masks + m] = root_id[r];
            }
        }
        FaceClasses { dim: d, masks, ids, counts }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of global `k`-faces.
    pub fn count(&self, k: usize) -> usize {
        self.counts[k]
    }

    /// Class id (among faces of the same dimension) of the corner set `mask` of `facet`.
    #[inline]
    pub fn face(&self, facet: usize, mask: u32) -> usize {
        self.ids[facet * self.masks + mask as usize]
    }

    /// Global vertex id of a corner.
    #[inline]
    pub fn vertex(&self, facet: usize, corner: usize) -> usize {
        self.face(facet, 1 << corner)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.counts.clone())
    }

    /// First pair of distinct corner sets of one facet that are identified.
    pub fn self_identification(&self, nf: usize) -> Option<(usize, u32, u32)> {
        let mut seen: Vec<(usize, usize, u32)> = Vec::with_capacity(self.masks);
        for f in 0..nf {
            seen.clear();
            for m in 1..self.masks as u32 {
                seen.push((m.count_ones() as usize, self.face(f, m), m));
            }
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                    return Some((f, w[0].2, w[1].2));
                }
            }
        }
        None
    }
}

impl CellComplex {
    pub fn face_classes(&self) -> FaceClasses {
        FaceClasses::compute(self)
    }

    /// Every facet has pairwise distinct global faces.
    pub fn is_cell_complex(&self) -> bool {
        self.face_classes().self_identification(self.num_facets()).is_none()
    }

    pub fn validate(&self) -> ValidationReport {
        let faces = self.face_classes();
        if let Some((facet, a, b)) = faces.self_identification(self.num_facets()) {
            return ValidationReport::failed(None, ValidationError::FaceIdentified { facet, mask_a: a, mask_b: b });
        }
        for f in 0..self.num_facets() {
            for i in 0..=self.dim() {
                if self.gluing(f, i).is_none() {
                    return ValidationReport::failed(
                        Some(Tier::CellComplex),
                        ValidationError::Unglued { facet: f, face: i },
                    );
                }
            }
        }
        if self.dim() < 2 {
            let cert = super::link::sphere_certificate(self);
            return ValidationReport {
                passed: Some(Tier::Pseudotriangulation),
                failure: None,
                links: vec![cert],
            };
        }
        let mut links = Vec::with_capacity(faces.count(0));
        for v in 0..faces.count(0) {
            let cert = super::link::sphere_certificate(&self.vertex_link_with(&faces, v));
            let bad = matches!(cert, SphereCertificate::NotSphere(_) | SphereCertificate::NotManifold);
            links.push(cert.clone());
            if bad {
                return ValidationReport {
                    passed: Some(Tier::WeakPseudomanifold),
                    failure: Some(ValidationError::BadLink { vertex: v, certificate: cert }),
                    links,
                };
            }
        }
        ValidationReport {
            passed: Some(Tier::Pseudotriangulation),
            failure: None,
            links,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    /// Facets carry pairwise distinct global faces.
    CellComplex,
    /// Additionally every face slot is glued.
    WeakPseudomanifold,
    /// Additionally every vertex link passed the sphere certificate.
    Pseudotriangulation,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("facet {facet}: corner sets {mask_a:#b} and {mask_b:#b} are identified")]
    FaceIdentified { facet: usize, mask_a: u32, mask_b: u32 },
    #[error("facet {facet} face {face} is unglued")]
    Unglued { facet: usize, face: usize },
    #[error("link of vertex {vertex} is not a sphere: {certificate:?}")]
    BadLink { vertex: usize, certificate: SphereCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Highest tier fully passed.
    pub passed: Option<Tier>,
    pub failure: Option<ValidationError>,
    /// Certificates of the vertex links examined, by vertex id.
    pub links: Vec<SphereCertificate>,
}

impl ValidationReport {
    fn failed(passed: Option<Tier>, e: ValidationError) -> Self {
        ValidationReport {
            passed,
            failure: Some(e),
            links: Vec::new(),
        }
    }

    pub fn is_pseudotriangulation(&self) -> bool {
        self.passed == Some(Tier::Pseudotriangulation)
    }

    /// Weakest link certificate, `Sphere` when no link was examined.
    pub fn certificate(&self) -> SphereCertificate {
        SphereCertificate::weakest(self.links.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::{Gluing, Perm};
    use crate::graph::{ColorSet, ColoredGraph};

    #[test]
    fn realized_faces_match_residue_counts() {
        for g in [ColoredGraph::dipole(4), catalog::cp2(), catalog::s2xs2().unwrap()] {
            let fv = CellComplex::realize(&g).f_vector();
            // a (d-k)-face class is a component of a k-color residue
            for k in 1..=4 {
                let total: usize = ColorSet::subsets_of_size(4, k).into_iter().map(|s| g.g_count(s)).sum();
                assert_eq!(fv.0[4 - k], total, "k={k}");
            }
            assert_eq!(fv.0[4], g.order());
        }
    }

    #[test]
    fn s2xs2_f_vector() {
        let c = CellComplex::realize(&catalog::s2xs2().unwrap());
        assert_eq!(c.f_vector().0, vec![5, 10, 30, 35, 14]);
        assert_eq!(c.euler_characteristic(), 4);
    }

    #[test]
    fn cp2_is_pseudotriangulation() {
        let r = CellComplex::realize(&catalog::cp2()).validate();
        assert!(r.is_pseudotriangulation(), "{r:?}");
        assert_eq!(r.links.len(), 5);
        assert!(r.links.iter().all(|c| *c == SphereCertificate::Sphere));
    }

    #[test]
    fn unglued_face_fails_tier_two() {
        let c = CellComplex::realize(&ColoredGraph::dipole(2));
        let mut t = c.table().to_vec();
        t[0] = None;
        t[3] = None;
        let open = CellComplex::new(2, t.chunks(3).map(<[_]>::to_vec).collect()).unwrap();
        let r = open.validate();
        assert_eq!(r.passed, Some(Tier::CellComplex));
        assert_eq!(r.failure, Some(ValidationError::Unglued { facet: 0, face: 0 }));
    }

    #[test]
    fn identified_vertices_fail_tier_one() {
        // one triangle with edge 0 glued onto edge 1 folds two corners together
        let p = Perm::from_slice(&[1, 0, 2]).unwrap();
        let c = CellComplex::new(
            2,
            vec![vec![Some(Gluing { facet: 0, face: 1, perm: p }), Some(Gluing { facet: 0, face: 0, perm: p }), None]],
        )
        .unwrap();
        let r = c.validate();
        assert_eq!(r.passed, None);
        assert!(matches!(r.failure, Some(ValidationError::FaceIdentified { facet: 0, .. })));
    }
}
