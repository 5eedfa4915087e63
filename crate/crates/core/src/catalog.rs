//! Built-in crystallizations and the validators guarding them.

use std::path::Path;

use thiserror::Error;

use crate::graph::{ColorSet, ColoredGraph, GraphError};
use crate::invariants::{check_4manifold_crystallization, simple_report, InvariantsError};
use crate::io::gem::{parse_gem, ParseError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}` (known: s4, cp2, s2xs2, k3)")]
    UnknownName(String),
    #[error("catalog entry `{0}` needs an external data file")]
    MissingData(&'static str),
    #[error("catalog entry `{name}` failed validation: {reason}")]
    ValidationFailed { name: &'static str, reason: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("reading data file: {0}")]
    Io(#[from] std::io::Error),
}

/// Expected invariants of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub manifold: &'static str,
    pub n: usize,
    pub m: usize,
    pub beta2: usize,
    pub orientable: bool,
    pub simple: bool,
    pub external_data: bool,
    pub note: &'static str,
}

pub const ENTRIES: [CatalogEntry; 4] = [
    CatalogEntry {
        name: "s4",
        manifold: "S^4",
        n: 2,
        m: 1,
        beta2: 0,
        orientable: true,
        simple: true,
        external_data: false,
        note: "two vertices joined by all five colors",
    },
    CatalogEntry {
        name: "cp2",
        manifold: "CP^2",
        n: 8,
        m: 2,
        beta2: 1,
        orientable: true,
        simple: true,
        external_data: false,
        note: "the unique simple crystallization on eight vertices; checked against the census",
    },
    CatalogEntry {
        name: "s2xs2",
        manifold: "S^2 x S^2",
        n: 14,
        m: 3,
        beta2: 2,
        orientable: true,
        simple: true,
        external_data: false,
        note: "transcribed figure data, accepted only after validation",
    },
    CatalogEntry {
        name: "k3",
        manifold: "K3",
        n: 134,
        m: 23,
        beta2: 22,
        orientable: true,
        simple: true,
        external_data: true,
        note: "colors 0 and 1 are built in; colors 2 to 4 come from a data file",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn pairs_graph(dim: usize, n: usize, pairs: &[&[(usize, usize)]]) -> ColoredGraph {
    let lists: Vec<Vec<(usize, usize)>> = pairs.iter().map(|p| p.to_vec()).collect();
    ColoredGraph::from_pairs(dim, n, &lists).expect("built-in data is a valid graph")
}

pub fn s4() -> ColoredGraph {
    ColoredGraph::dipole(4)
}

pub fn cp2() -> ColoredGraph {
    pairs_graph(
        4,
        8,
        &[
            &[(0, 1), (2, 3), (4, 5), (6, 7)],
            &[(0, 1), (3, 4), (5, 6), (2, 7)],
            &[(0, 4), (1, 3), (2, 5), (6, 7)],
            &[(0, 2), (1, 7), (4, 5), (3, 6)],
            &[(0, 4), (1, 7), (2, 3), (5, 6)],
        ],
    )
}

fn s2xs2_raw() -> ColoredGraph {
    pairs_graph(
        4,
        14,
        &[
            &[(0, 1), (2, 6), (3, 8), (4, 7), (9, 11), (5, 10), (12, 13)],
            &[(3, 9), (1, 5), (4, 7), (6, 10), (0, 2), (11, 13), (8, 12)],
            &[(4, 8), (3, 9), (5, 11), (6, 10), (2, 7), (0, 1), (12, 13)],
            &[(0, 3), (1, 5), (2, 6), (7, 12), (4, 8), (10, 13), (9, 11)],
            &[(3, 8), (2, 7), (5, 11), (10, 13), (0, 4), (1, 6), (9, 12)],
        ],
    )
}

/// The 14-vertex entry, returned only if it passes its expected invariants.
pub fn s2xs2() -> Result<ColoredGraph, CatalogError> {
    let g = s2xs2_raw();
    check_entry(entry("s2xs2").unwrap(), &g)?;
    Ok(g)
}

/// Color-1 cycles of the K3 entry; color 0 pairs `2i` with `2i+1`. A cycle
/// `C(a, b, c, d, ...)` has color-1 edges `b-c`, `d-e`, ..., and the last
/// entry back to `a`.
///
/// The published list has three misprints, corrected here: `7` in the second
/// 4-cycle reads `70`; the 4-cycle through `48,49` uses `104,105` (the list
/// repeats `108,109` and omits `104,105`); the first 10-cycle drops a
/// repeated closing pair.
pub const K3_COLOR1_CYCLES: [&[usize]; 23] = [
    &[6, 7],
    &[88, 89],
    &[92, 93],
    &[118, 119],
    &[120, 121],
    &[12, 13, 26, 27],
    &[18, 19, 70, 71],
    &[48, 49, 104, 105],
    &[58, 59, 82, 83],
    &[66, 67, 102, 103],
    &[72, 73, 74, 75],
    &[108, 109, 114, 115],
    &[0, 1, 20, 21, 14, 15],
    &[2, 3, 32, 33, 8, 9],
    &[10, 11, 84, 85, 80, 81],
    &[38, 39, 76, 77, 40, 41],
    &[54, 55, 56, 57, 130, 131],
    &[68, 69, 86, 87, 90, 91],
    &[62, 63, 112, 113, 124, 125, 64, 65],
    &[16, 17, 50, 51, 60, 61, 22, 23, 96, 97],
    &[34, 35, 42, 43, 132, 133, 128, 129, 78, 79],
    &[4, 5, 52, 53, 106, 107, 94, 95, 36, 37, 126, 127, 44, 45, 46, 47],
    &[24, 25, 98, 99, 28, 29, 110, 111, 30, 31, 122, 123, 100, 101, 116, 117],
];

/// Vertices whose color-1 partners depend on the misprint resolution.
const K3_AMBIGUOUS: [usize; 4] = [104, 105, 108, 109];

pub const K3_ORDER: usize = 134;

/// Component-size profile of the {0,1} residue: (cycle length, copies).
pub const K3_PROFILE_01: [(usize, usize); 6] = [(2, 5), (4, 7), (6, 6), (8, 1), (10, 2), (16, 2)];

/// The two built-in colors of the K3 entry as a 2-colored graph.
pub fn k3_colors01() -> ColoredGraph {
    let color0: Vec<usize> = (0..K3_ORDER).map(|v| v ^ 1).collect();
    let mut color1 = vec![usize::MAX; K3_ORDER];
    for cycle in K3_COLOR1_CYCLES {
        let l = cycle.len();
        for k in (1..l).step_by(2) {
            let (a, b) = (cycle[k], cycle[(k + 1) % l]);
            color1[a] = b;
            color1[b] = a;
        }
    }
    ColoredGraph::new(1, vec![color0, color1]).expect("cycle list is a perfect matching")
}

/// Sorted multiset of component sizes of a residue, as (size, copies).
pub fn cycle_profile(g: &ColoredGraph, set: ColorSet) -> Vec<(usize, usize)> {
    let mut sizes: Vec<usize> = g.residue(set).iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for s in sizes {
        match out.last_mut() {
            Some((len, count)) if *len == s => *count += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Parses and validates a full K3 graph in the gem text format.
pub fn k3_from_str(text: &str) -> Result<ColoredGraph, CatalogError> {
    let g = parse_gem(text)?;
    validate_k3(&g)?;
    Ok(g)
}

pub fn k3_from_file(path: &Path) -> Result<ColoredGraph, CatalogError> {
    k3_from_str(&std::fs::read_to_string(path)?)
}

fn fail(name: &'static str, reason: impl Into<String>) -> CatalogError {
    CatalogError::ValidationFailed { name, reason: reason.into() }
}

/// Checks a candidate K3 graph against everything published about it.
pub fn validate_k3(g: &ColoredGraph) -> Result<(), CatalogError> {
    let name = "k3";
    if g.dim() != 4 || g.order() != K3_ORDER {
        return Err(fail(name, format!("expected 5 colors on {K3_ORDER} vertices")));
    }
    if (0..K3_ORDER).any(|v| g.neighbor(v, 0) != v ^ 1) {
        return Err(fail(name, "color 0 must pair 2i with 2i+1"));
    }
    if cycle_profile(g, ColorSet::from_iter([0, 1])) != K3_PROFILE_01 {
        return Err(fail(name, "the {0,1} residue does not have the published cycle profile"));
    }
    let reference = k3_colors01();
    if let Some(v) = (0..K3_ORDER)
        .filter(|v| !K3_AMBIGUOUS.contains(v))
        .find(|&v| g.neighbor(v, 1) != reference.neighbor(v, 1))
    {
        return Err(fail(name, format!("color-1 edge at vertex {v} differs from the published cycles")));
    }
    check_entry(entry(name).unwrap(), g)
}

/// Runs the full report and compares against the entry's record.
pub fn check_entry(e: &'static CatalogEntry, g: &ColoredGraph) -> Result<(), CatalogError> {
    let r = simple_report(g).map_err(|err| fail(e.name, err.to_string()))?;
    let cert = check_4manifold_crystallization(g).map_err(|err: InvariantsError| fail(e.name, err.to_string()))?;
    if !cert.all_sphere() {
        return Err(fail(e.name, format!("residue certificate {}", cert.weakest())));
    }
    let got = (r.n, r.m, r.beta2, r.bipartite, r.is_simple());
    let want = (e.n, Some(e.m), Some(e.beta2), e.orientable, e.simple);
    if got != want {
        return Err(fail(e.name, format!("invariants {got:?}, expected {want:?}")));
    }
    Ok(())
}

/// Looks up an entry by name. `k3` requires its data file contents.
pub fn catalog(name: &str, data: Option<&str>) -> Result<ColoredGraph, CatalogError> {
    match name {
        "s4" => Ok(s4()),
        "cp2" => Ok(cp2()),
        "s2xs2" => s2xs2(),
        "k3" => match data {
            Some(text) => k3_from_str(text),
            None => Err(CatalogError::MissingData("k3")),
        },
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Eight-vertex graphs from the uniqueness argument for CP², 0-based
/// (`v1` is vertex 0). Colors 0 and 1 agree with the CP² entry.
pub mod fixtures {
    use super::*;

    const C0: [(usize, usize); 4] = [(0, 1), (2, 3), (4, 5), (6, 7)];
    const C1: [(usize, usize); 4] = [(0, 1), (3, 4), (5, 6), (2, 7)];
    /// Color 2 of the first case of the argument.
    const C2: [(usize, usize); 4] = [(0, 4), (1, 3), (2, 5), (6, 7)];

    fn with_color3(c3: [(usize, usize); 4]) -> ColoredGraph {
        pairs_graph(3, 8, &[&C0, &C1, &C2, &c3])
    }

    pub fn g1() -> ColoredGraph {
        with_color3([(0, 2), (1, 3), (5, 6), (4, 7)])
    }

    pub fn g2() -> ColoredGraph {
        with_color3([(0, 2), (1, 7), (4, 5), (3, 6)])
    }

    pub fn g3() -> ColoredGraph {
        with_color3([(0, 4), (1, 7), (2, 3), (5, 6)])
    }

    /// Meets the arithmetic criteria but has infinite cyclic π₁.
    pub fn case_iii() -> ColoredGraph {
        with_color3([(0, 6), (1, 7), (3, 4), (2, 5)])
    }

    /// Two 4-cycles in every pair of colors; π₁ of order two.
    pub fn fig3a() -> ColoredGraph {
        pairs_graph(
            3,
            8,
            &[
                &[(0, 1), (2, 3), (4, 5), (6, 7)],
                &[(1, 2), (3, 0), (5, 6), (7, 4)],
                &[(0, 4), (1, 5), (2, 6), (3, 7)],
                &[(0, 6), (1, 7), (2, 4), (3, 5)],
            ],
        )
    }

    /// `g2` completed by the color-4 edges that do not give CP².
    pub fn fig3b() -> ColoredGraph {
        pairs_graph(
            4,
            8,
            &[&C0, &C1, &C2, &[(0, 2), (1, 7), (4, 5), (3, 6)], &[(0, 6), (1, 5), (4, 7), (2, 3)]],
        )
    }

    /// The residue of [`fig3b`] without color 0; π₁ of order two.
    pub fn fig3b_residue() -> ColoredGraph {
        fig3b().restrict(&[1, 2, 3, 4]).unwrap()
    }

    /// [`case_iii`] completed by the first bipartite color-4 matching (in
    /// lexicographic order) that makes the 5-colored graph contracted.
    pub fn case_iii_completed() -> ColoredGraph {
        let base = case_iii();
        let (white, black) = base.is_bipartite().expect("bipartite");
        let mut matchings = base.matchings().to_vec();
        for perm in itertools::Itertools::permutations(0..black.len(), black.len()) {
            let mut m4 = vec![0; 8];
            for (k, &w) in white.iter().enumerate() {
                m4[w] = black[perm[k]];
                m4[black[perm[k]]] = w;
            }
            matchings.push(m4);
            let g = ColoredGraph::new(4, matchings.clone()).unwrap();
            if g.is_contracted() {
                return g;
            }
            matchings.pop();
        }
        unreachable!("some completion is contracted")
    }
}
