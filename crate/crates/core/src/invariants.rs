//! Crystallization criteria, simplicity, the f-vector arithmetic of simple
//! crystallizations and intersection-form profiles of hypersurfaces.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{CellComplex, FVector};
use crate::graph::{ColorSet, ColoredGraph};
use crate::group::{abelianize, gagliardi_presentation, tietze_simplify, Abelianization, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("graph is not contracted")]
    NotContracted,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("simplicity degree {k} outside 1..={max}")]
    OutOfRange { k: usize, max: usize },
    #[error("not a crystallization of a 4-manifold: residue without color {color} is {certificate:?}")]
    NotCrystallization { color: usize, certificate: SphereCertificate },
    #[error("simple graph with m={m} has {n} vertices, expected 6m-4")]
    VertexCountMismatch { m: usize, n: usize },
}

/// Outcome of a sphere recognition attempt.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SphereCertificate {
    /// Manifold criteria hold and π₁ simplified to the trivial group.
    Sphere,
    /// A manifold with nontrivial first homology.
    NotSphere(Abelianization),
    /// The complex is not a closed manifold of the expected dimension.
    NotManifold,
    /// Homology is trivial but the presentation did not collapse within budget.
    Unknown,
}

impl SphereCertificate {
    fn strength(&self) -> u8 {
        match self {
            SphereCertificate::NotManifold => 0,
            SphereCertificate::NotSphere(_) => 1,
            SphereCertificate::Unknown => 2,
            SphereCertificate::Sphere => 3,
        }
    }

    /// The weakest certificate of a collection (`Sphere` when empty).
    pub fn weakest(certs: impl IntoIterator<Item = SphereCertificate>) -> SphereCertificate {
        certs
            .into_iter()
            .min_by_key(SphereCertificate::strength)
            .unwrap_or(SphereCertificate::Sphere)
    }

    pub fn is_sphere(&self) -> bool {
        *self == SphereCertificate::Sphere
    }

    /// Sphere or Unknown: nothing refutes the sphere.
    pub fn is_plausible(&self) -> bool {
        self.strength() >= 2
    }
}

impl fmt::Display for SphereCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereCertificate::Sphere => write!(f, "sphere"),
            SphereCertificate::NotSphere(ab) => write!(f, "not a sphere (H1 = {ab})"),
            SphereCertificate::NotManifold => write!(f, "not a manifold"),
            SphereCertificate::Unknown => write!(f, "unknown"),
        }
    }
}

fn require_dim(g: &ColoredGraph, d: usize) -> Result<(), InvariantsError> {
    if g.dim() != d {
        return Err(InvariantsError::WrongDimension { expected: d, found: g.dim() });
    }
    if !g.is_connected() {
        return Err(InvariantsError::Disconnected);
    }
    Ok(())
}

/// The two arithmetic conditions for a contracted 4-colored graph to
/// represent a closed 3-manifold: complementary pairs have equal `g`, and
/// `g_01 + g_02 + g_03 = 2 + n/2`. Contractedness is not checked.
pub fn crystallization_arithmetic(g: &ColoredGraph) -> bool {
    let pair = |a: usize, b: usize| g.g_count(ColorSet::from_iter([a, b]));
    g.dim() == 3
        && pair(0, 1) == pair(2, 3)
        && pair(0, 2) == pair(1, 3)
        && pair(0, 3) == pair(1, 2)
        && pair(0, 1) + pair(0, 2) + pair(0, 3) == 2 + g.order() / 2
}

pub fn check_3manifold_crystallization(g: &ColoredGraph) -> Result<bool, InvariantsError> {
    require_dim(g, 3)?;
    if !g.is_contracted() {
        return Err(InvariantsError::NotContracted);
    }
    Ok(crystallization_arithmetic(g))
}

/// Sphere certificate for a contracted 4-colored graph: every color pair's
/// presentation is tried until one abelianizes nontrivially or collapses.
pub fn check_sphere3(g: &ColoredGraph) -> Result<SphereCertificate, InvariantsError> {
    if !check_3manifold_crystallization(g)? {
        return Ok(SphereCertificate::NotManifold);
    }
    Ok(certify_pi1(g))
}

fn certify_pi1(g: &ColoredGraph) -> SphereCertificate {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let presentations: Vec<_> = pairs
        .iter()
        .map(|&(i, j)| gagliardi_presentation(g, i, j).expect("distinct colors"))
        .collect();
    let ab = abelianize(&presentations[0]);
    if !ab.is_trivial() {
        return SphereCertificate::NotSphere(ab);
    }
    for p in &presentations {
        if tietze_simplify(p, DEFAULT_BUDGET).0.is_trivial() {
            return SphereCertificate::Sphere;
        }
    }
    if tietze_simplify(&CellComplex::realize(g).pi1(), DEFAULT_BUDGET).0.is_trivial() {
        SphereCertificate::Sphere
    } else {
        SphereCertificate::Unknown
    }
}

/// Sphere certificate for a connected 4-colored graph that need not be
/// contracted: each 3-color residue component must be a 2-sphere, then π₁ of
/// the realized complex decides.
pub fn residue_sphere_status(g: &ColoredGraph) -> SphereCertificate {
    assert_eq!(g.dim(), 3);
    if g.is_contracted() {
        if !crystallization_arithmetic(g) {
            return SphereCertificate::NotManifold;
        }
        return certify_pi1(g);
    }
    for c in 0..=3 {
        let set = ColorSet::full(3).without(c);
        let (labels, count) = g.residue_labels(set);
        let mut vertices = vec![0i64; count];
        for &l in &labels {
            vertices[l] += 1;
        }
        let mut cycles = vec![0i64; count];
        let others: Vec<usize> = set.iter().collect();
        for a in 0..3 {
            for b in a + 1..3 {
                for comp in g.residue(ColorSet::from_iter([others[a], others[b]])) {
                    cycles[labels[comp[0]]] += 1;
                }
            }
        }
        // a 3-colored component with p vertices has Euler characteristic cycles - p/2
        if (0..count).any(|k| cycles[k] - vertices[k] / 2 != 2) {
            return SphereCertificate::NotManifold;
        }
    }
    let p = CellComplex::realize(g).pi1();
    let ab = abelianize(&p);
    if !ab.is_trivial() {
        SphereCertificate::NotSphere(ab)
    } else if tietze_simplify(&p, DEFAULT_BUDGET).0.is_trivial() {
        SphereCertificate::Sphere
    } else {
        SphereCertificate::Unknown
    }
}

/// Status of the residue obtained by deleting one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueStatus {
    pub missing_color: usize,
    pub contracted: bool,
    pub certificate: SphereCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystallizationCertificate {
    pub residues: Vec<ResidueStatus>,
}

impl CrystallizationCertificate {
    pub fn weakest(&self) -> SphereCertificate {
        SphereCertificate::weakest(self.residues.iter().map(|r| r.certificate.clone()))
    }

    pub fn all_sphere(&self) -> bool {
        self.residues.iter().all(|r| r.certificate.is_sphere())
    }
}

/// Checks every 4-color residue of a contracted 5-colored graph.
pub fn check_4manifold_crystallization(g: &ColoredGraph) -> Result<CrystallizationCertificate, InvariantsError> {
    require_dim(g, 4)?;
    if !g.is_contracted() {
        return Err(InvariantsError::NotContracted);
    }
    let residues = (0..=4)
        .map(|c| {
            let r = g.residue_graph(ColorSet::full(4).without(c)).expect("four colors");
            ResidueStatus {
                missing_color: c,
                contracted: r.is_contracted(),
                certificate: residue_sphere_status(&r),
            }
        })
        .collect();
    Ok(CrystallizationCertificate { residues })
}

/// `k`-simplicity: every residue on `dim - k` colors is connected.
pub fn simplicity(g: &ColoredGraph, k: usize) -> Result<bool, InvariantsError> {
    let d = g.dim();
    if k == 0 || k + 1 > d {
        return Err(InvariantsError::OutOfRange { k, max: d.saturating_sub(1) });
    }
    Ok(ColorSet::subsets_of_size(d, d - k).into_iter().all(|s| g.g_count(s) == 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    pub n: usize,
    /// Residue component counts for all 2- and 3-color sets and every
    /// one-color complement.
    pub g: BTreeMap<ColorSet, usize>,
    pub bipartite: bool,
    pub contracted: bool,
    /// Entry `k - 1` records `k`-simplicity for `1 <= k <= dim - 1`.
    pub simple_degrees: Vec<bool>,
    pub m: Option<usize>,
    pub beta2: Option<usize>,
    pub euler: Option<i64>,
    pub f_vector: Option<FVector>,
}

impl InvariantReport {
    pub fn is_simple(&self) -> bool {
        self.simple_degrees.first().copied().unwrap_or(false)
    }
}

/// Graph-level invariants without any manifold checks.
pub fn report(g: &ColoredGraph) -> InvariantReport {
    let d = g.dim();
    let mut counts = BTreeMap::new();
    let mut sets: Vec<ColorSet> = Vec::new();
    for k in [2, 3] {
        if k <= d + 1 {
            sets.extend(ColorSet::subsets_of_size(d, k));
        }
    }
    sets.extend((0..=d).map(|c| g.all_colors().without(c)));
    for s in sets {
        counts.entry(s).or_insert_with(|| g.g_count(s));
    }
    let pairs: Vec<usize> = ColorSet::subsets_of_size(d, 2).into_iter().map(|s| counts[&s]).collect();
    let m = (pairs.windows(2).all(|w| w[0] == w[1])).then(|| pairs[0]);
    InvariantReport {
        dim: d,
        n: g.order(),
        g: counts,
        bipartite: g.is_bipartite().is_some(),
        contracted: g.is_contracted(),
        simple_degrees: (1..d).map(|k| simplicity(g, k).unwrap()).collect(),
        m,
        beta2: None,
        euler: None,
        f_vector: None,
    }
}

/// Full report for a crystallization of a 4-manifold. For simple graphs the
/// second Betti number, Euler characteristic and f-vector follow from `n`
/// and `m` alone.
pub fn simple_report(g: &ColoredGraph) -> Result<InvariantReport, InvariantsError> {
    let cert = check_4manifold_crystallization(g)?;
    if let Some(bad) = cert.residues.iter().find(|r| !r.certificate.is_plausible()) {
        return Err(InvariantsError::NotCrystallization {
            color: bad.missing_color,
            certificate: bad.certificate.clone(),
        });
    }
    let mut r = report(g);
    if r.is_simple() {
        let m = r.m.expect("simple crystallizations have constant g_ij");
        let n = r.n;
        if n + 4 != 6 * m {
            return Err(InvariantsError::VertexCountMismatch { m, n });
        }
        let beta2 = m - 1;
        r.beta2 = Some(beta2);
        r.euler = Some(2 + beta2 as i64);
        r.f_vector = Some(simple_f_vector(n, beta2));
    }
    Ok(r)
}

/// f-vector of a simple contracted pseudotriangulation with `n` facets of a
/// simply connected 4-manifold with second Betti number `beta2`.
pub fn simple_f_vector(n: usize, beta2: usize) -> FVector {
    let (n, b) = (n as i64, beta2 as i64);
    let chi = 2 + b;
    let f0 = 5;
    let f4 = n;
    let f3 = 5 * n / 2;
    let f1 = (n + 18 - 6 * b) / 2;
    let f2 = chi - f0 + f1 + f3 - f4;
    FVector([f0, f1, f2, f3, f4].iter().map(|&x| x as usize).collect())
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim={}", self.dim)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "bipartite: {}", self.bipartite)?;
        writeln!(f, "contracted: {}", self.contracted)?;
        writeln!(f, "simple: {}", self.is_simple())?;
        for (k, s) in self.simple_degrees.iter().enumerate() {
            writeln!(f, "{}-simple: {s}", k + 1)?;
        }
        if let Some(m) = self.m {
            writeln!(f, "m={m}")?;
        }
        if let Some(b) = self.beta2 {
            writeln!(f, "β₂={b}")?;
        }
        if let Some(chi) = self.euler {
            writeln!(f, "χ={chi}")?;
        }
        if let Some(fv) = &self.f_vector {
            writeln!(f, "f={fv}")?;
        }
        for (s, c) in &self.g {
            writeln!(f, "g_{s}={c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Diagonal or even summand decomposition of an intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormProfile {
    pub parity: Parity,
    pub plus_one: u64,
    pub minus_one: u64,
    pub minus_e8: u64,
    pub hyperbolic: u64,
    pub rank: u64,
    pub signature: i64,
}

impl fmt::Display for FormProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Odd => write!(f, "{}[+1] + {}[-1]", self.plus_one, self.minus_one)?,
            Parity::Even => write!(f, "{}(-E8) + {}H", self.minus_e8, self.hyperbolic)?,
        }
        write!(f, " (rank {}, signature {})", self.rank, self.signature)
    }
}

/// Intersection form of a smooth degree-`deg` hypersurface in CP³.
pub fn hypersurface_profile(deg: u64) -> FormProfile {
    assert!(deg >= 1, "degree must be positive");
    let d = deg as i128;
    let exact = |num: i128, den: i128| -> u64 {
        debug_assert_eq!(num % den, 0);
        (num / den) as u64
    };
    let cubic = d * d * d - 6 * d * d + 11 * d - 3;
    if deg % 2 == 1 {
        let plus_one = exact(cubic, 3);
        let minus_one = exact((d - 1) * (2 * d * d - 4 * d + 3), 3);
        FormProfile {
            parity: Parity::Odd,
            plus_one,
            minus_one,
            minus_e8: 0,
            hyperbolic: 0,
            rank: plus_one + minus_one,
            signature: plus_one as i64 - minus_one as i64,
        }
    } else {
        let minus_e8 = exact(d * (d * d - 4), 24);
        let hyperbolic = exact(cubic, 3);
        FormProfile {
            parity: Parity::Even,
            plus_one: 0,
            minus_one: 0,
            minus_e8,
            hyperbolic,
            rank: 8 * minus_e8 + 2 * hyperbolic,
            signature: -8 * minus_e8 as i64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, fixtures};

    #[test]
    fn prop_arithmetic_on_fixtures() {
        let cp2 = catalog::cp2();
        let r = cp2.restrict(&[0, 1, 2, 3]).unwrap();
        assert_eq!(check_3manifold_crystallization(&r), Ok(true));
        assert_eq!(check_3manifold_crystallization(&fixtures::g2()), Ok(true));
        assert_eq!(check_3manifold_crystallization(&fixtures::case_iii()), Ok(true));
        assert_eq!(
            check_3manifold_crystallization(&cp2),
            Err(InvariantsError::WrongDimension { expected: 3, found: 4 })
        );
    }

    #[test]
    fn sphere_certificates() {
        assert_eq!(check_sphere3(&fixtures::g2()), Ok(SphereCertificate::Sphere));
        match check_sphere3(&fixtures::case_iii()).unwrap() {
            SphereCertificate::NotSphere(ab) => assert_eq!((ab.free_rank, ab.torsion.len()), (1, 0)),
            other => panic!("{other:?}"),
        }
        match check_sphere3(&fixtures::fig3b_residue()).unwrap() {
            SphereCertificate::NotSphere(ab) => assert_eq!(ab.torsion_u64(), vec![2]),
            other => panic!("{other:?}"),
        }
        assert_eq!(check_sphere3(&ColoredGraph::dipole(3)), Ok(SphereCertificate::Sphere));
    }

    #[test]
    fn four_manifold_certificates() {
        let c = check_4manifold_crystallization(&catalog::cp2()).unwrap();
        assert!(c.all_sphere());
        assert!(check_4manifold_crystallization(&ColoredGraph::dipole(4)).unwrap().all_sphere());
        let bad = check_4manifold_crystallization(&fixtures::case_iii_completed()).unwrap();
        assert!(matches!(bad.residues[4].certificate, SphereCertificate::NotSphere(_)));
        assert!(matches!(bad.weakest(), SphereCertificate::NotSphere(_) | SphereCertificate::NotManifold));
    }

    #[test]
    fn simplicity_degrees() {
        let cp2 = catalog::cp2();
        assert_eq!(simplicity(&cp2, 1), Ok(true));
        assert_eq!(simplicity(&cp2, 3), Ok(false));
        assert_eq!(simplicity(&ColoredGraph::dipole(4), 3), Ok(true));
        assert!(simplicity(&cp2, 4).is_err());
        assert!(simplicity(&cp2, 0).is_err());
    }

    #[test]
    fn simple_reports() {
        let r = simple_report(&catalog::cp2()).unwrap();
        assert_eq!((r.m, r.n, r.beta2, r.euler), (Some(2), 8, Some(1), Some(3)));
        assert_eq!(r.f_vector.as_ref().unwrap().0, vec![5, 10, 20, 20, 8]);
        let text = r.to_string();
        for line in ["m=2", "β₂=1", "f=(5,10,20,20,8)", "simple: true"] {
            assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
        }
        let s4 = simple_report(&ColoredGraph::dipole(4)).unwrap();
        assert_eq!(s4.f_vector.unwrap().0, vec![5, 10, 10, 5, 2]);
        assert_eq!(simple_f_vector(134, 22).0, vec![5, 10, 230, 335, 134]);
        assert_eq!(simple_f_vector(14, 2).0, vec![5, 10, 30, 35, 14]);
    }

    #[test]
    fn derived_f_vectors_satisfy_dehn_sommerville() {
        for m in 1..40usize {
            let n = 6 * m - 4;
            let f: Vec<i64> = simple_f_vector(n, m - 1).0.iter().map(|&x| x as i64).collect();
            assert_eq!(f[0] - f[1] + f[2] - f[3] + f[4], 2 + (m as i64 - 1));
            assert_eq!(2 * f[1] - 3 * f[2] + 4 * f[3] - 5 * f[4], 0);
            assert_eq!(2 * f[3] - 5 * f[4], 0);
            assert_eq!(f[1], 10);
        }
    }

    #[test]
    fn hypersurface_forms() {
        let p = hypersurface_profile(4);
        assert_eq!((p.parity, p.minus_e8, p.hyperbolic, p.rank, p.signature), (Parity::Even, 2, 3, 22, -16));
        let p = hypersurface_profile(1);
        assert_eq!((p.parity, p.plus_one, p.minus_one), (Parity::Odd, 1, 0));
        let p = hypersurface_profile(2);
        assert_eq!((p.parity, p.minus_e8, p.hyperbolic), (Parity::Even, 0, 1));
        let p = hypersurface_profile(3);
        assert_eq!((p.plus_one, p.minus_one, p.rank), (1, 6, 7));
        assert_eq!(hypersurface_profile(5).rank, 53);
    }

    #[test]
    fn hypersurface_rank_and_signature_match_adjunction_values() {
        // b2 = d^3 - 4d^2 + 6d - 2 and signature = -d(d^2 - 4)/3
        let mut last = 0;
        for d in 1..=20i64 {
            let p = hypersurface_profile(d as u64);
            assert_eq!(p.rank as i64, d * d * d - 4 * d * d + 6 * d - 2);
            assert_eq!(p.signature, -d * (d * d - 4) / 3);
            if d >= 2 {
                assert!(p.rank > last);
            }
            last = p.rank;
        }
    }
}
