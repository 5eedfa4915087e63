use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crystallize::anneal::{simplify, AnnealConfig, Target};
use crystallize::catalog;
use crystallize::census;
use crystallize::complex::CellComplex;
use crystallize::graph::ColoredGraph;
use crystallize::group::{abelianize, gagliardi_presentation, tietze_simplify, DEFAULT_BUDGET};
use crystallize::invariants::{self, SphereCertificate};
use crystallize::io::{export_dot, parse_gem, parse_pst, write_gem, write_pst};
use crystallize::surgery;

#[derive(Parser)]
#[command(name = "crystallize", version, about = "Crystallizations of PL manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a gem file as a crystallization or a pst file as a pseudotriangulation.
    Validate { file: PathBuf },
    /// Print invariants of a gem or pst file.
    Report { file: PathBuf },
    /// Presentation of the fundamental group.
    Pi1 {
        file: PathBuf,
        /// Two colors `i,j` for the graph presentation.
        #[arg(long, default_value = "0,1")]
        drop: String,
    },
    /// Connected sum of two graphs.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        v1: usize,
        /// Defaults to the least vertex of the second graph's class opposite vertex 0.
        #[arg(long)]
        v2: Option<usize>,
        /// Color permutation as digits, e.g. 01234.
        #[arg(long)]
        perm: Option<String>,
        /// Take the default `v2` from the class of vertex 0 instead.
        #[arg(long)]
        reverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Oriented iterated sum such as `3*cp2 + 20*cp2bar`.
    IteratedSum {
        spec: String,
        /// Data file for the k3 entry.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the complex of a gem file.
    Realize {
        gem: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual colored graph of a contracted complex.
    Dualize {
        pst: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized simplification by bistellar moves and edge contractions.
    Simplify {
        pst: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Comma-separated weights for 0..d-moves and edge contraction.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 200)]
        patience: usize,
        /// Stop at this many facets instead of a simple contracted complex.
        #[arg(long)]
        facets: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Enumerate crystallizations on a given number of vertices.
    Census {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        vertices: usize,
        /// Simple crystallizations only (required in dimension 4).
        #[arg(long)]
        simple: bool,
        /// Raise the default vertex bound.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a built-in crystallization.
    Catalog {
        name: String,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// DOT rendering of a gem file.
    ExportDot {
        gem: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

type CliResult = Result<(), Failure>;

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Input {
    Graph(ColoredGraph),
    Complex(CellComplex),
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let first = text.split_whitespace().next().unwrap_or("");
    let located = |e: crystallize::io::ParseError| Failure::Invalid(format!("{}: {e}", path.display()));
    match first {
        "pst" => parse_pst(&text).map(Input::Complex).map_err(located),
        _ => parse_gem(&text).map(Input::Graph).map_err(located),
    }
}

fn load_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    match load(path)? {
        Input::Graph(g) => Ok(g),
        Input::Complex(_) => Err(Failure::Usage(format!("{}: expected a gem file", path.display()))),
    }
}

fn load_complex(path: &Path) -> Result<CellComplex, Failure> {
    match load(path)? {
        Input::Complex(c) => Ok(c),
        Input::Graph(_) => Err(Failure::Usage(format!("{}: expected a pst file", path.display()))),
    }
}

fn validate(file: &Path) -> CliResult {
    match load(file)? {
        Input::Graph(g) => {
            let cert = match g.dim() {
                3 => invariants::check_sphere3(&g).map(|c| vec![c]).map_err(invalid)?,
                4 => invariants::check_4manifold_crystallization(&g)
                    .map_err(invalid)?
                    .residues
                    .into_iter()
                    .map(|r| r.certificate)
                    .collect(),
                d => {
                    if !g.is_contracted() {
                        return Err(Failure::Invalid("graph is not contracted".into()));
                    }
                    println!("contracted {}-colored graph; no manifold test in dimension {d}", d + 1);
                    return Ok(());
                }
            };
            for (c, cert) in cert.iter().enumerate() {
                println!("residue {c}: {cert}");
            }
            let weakest = SphereCertificate::weakest(cert);
            if weakest.is_plausible() {
                println!("crystallization: ok");
                Ok(())
            } else {
                Err(Failure::Invalid(format!("not a crystallization: {weakest}")))
            }
        }
        Input::Complex(c) => {
            let report = c.validate();
            match report.passed {
                Some(tier) => println!("passed: {tier:?}"),
                None => println!("passed: none"),
            }
            if report.is_pseudotriangulation() {
                println!("links: {}", report.certificate());
                Ok(())
            } else {
                let why = report.failure.map(|f| format!("{f:?}")).unwrap_or_default();
                Err(Failure::Invalid(format!("not a pseudotriangulation: {why}")))
            }
        }
    }
}

fn report(file: &Path) -> CliResult {
    match load(file)? {
        Input::Graph(g) => {
            let r = if g.dim() == 4 && g.is_contracted() {
                invariants::simple_report(&g).unwrap_or_else(|_| invariants::report(&g))
            } else {
                invariants::report(&g)
            };
            print!("{r}");
        }
        Input::Complex(c) => {
            println!("dim={}", c.dim());
            println!("facets={}", c.num_facets());
            println!("closed: {}", c.is_closed());
            println!("orientable: {}", c.is_orientable());
            println!("f={}", c.f_vector());
            println!("χ={}", c.euler_characteristic());
        }
    }
    Ok(())
}

fn pi1(file: &Path, drop: &str) -> CliResult {
    let p = match load(file)? {
        Input::Graph(g) => {
            let colors: Vec<usize> = drop
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("--drop expects `i,j`, got `{drop}`")))?;
            let [i, j] = colors[..] else {
                return Err(Failure::Usage(format!("--drop expects two colors, got `{drop}`")));
            };
            gagliardi_presentation(&g, i, j).map_err(|e| Failure::Usage(e.to_string()))?
        }
        Input::Complex(c) => {
            if !c.is_connected() {
                return Err(Failure::Invalid("complex is disconnected".into()));
            }
            c.pi1()
        }
    };
    let (simplified, status) = tietze_simplify(&p, DEFAULT_BUDGET);
    println!("presentation: {p}");
    println!("simplified: {simplified} ({status:?})");
    println!("H1: {}", abelianize(&p));
    Ok(())
}

fn parse_perm(text: &str) -> Result<Vec<usize>, Failure> {
    text.chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::Usage(format!("--perm expects digits, got `{text}`")))
}

#[allow(clippy::too_many_arguments)]
fn sum(a: &Path, b: &Path, v1: usize, v2: Option<usize>, perm: Option<&str>, reverse: bool, out: Option<&Path>) -> CliResult {
    let g1 = load_graph(a)?;
    let g2 = load_graph(b)?;
    let sigma = match perm {
        Some(p) => parse_perm(p)?,
        None => (0..g1.num_colors()).collect(),
    };
    let v2 = match v2 {
        Some(v) => v,
        None => {
            let (white, black) = g2
                .is_bipartite()
                .ok_or_else(|| Failure::Usage("second graph is not bipartite; pass --v2".into()))?;
            let class = if reverse { &white[1..] } else { &black[..] };
            *class.first().ok_or_else(|| Failure::Usage("no vertex available for --v2".into()))?
        }
    };
    let g = surgery::connected_sum(&g1, v1, &g2, v2, &sigma).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(out, &write_gem(&g))
}

fn iterated_sum(spec: &str, data: Option<&Path>, out: Option<&Path>) -> CliResult {
    let data = data.map(read).transpose()?;
    let g = surgery::iterated_sum_spec(spec, |name| catalog::catalog(name, data.as_deref())).map_err(invalid)?;
    emit(out, &write_gem(&g))
}

fn parse_weights(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--weights expects numbers, got `{text}`")))
}

fn census_cmd(dim: usize, vertices: usize, simple: bool, limit: Option<usize>, out: Option<&Path>) -> CliResult {
    let usage = |e: census::CensusError| Failure::Usage(e.to_string());
    let (classes, undecided) = match (dim, simple) {
        (3, _) => (
            census::census_3manifold_with_limit(vertices, limit.unwrap_or(census::LIMIT_3)).map_err(usage)?,
            Vec::new(),
        ),
        (4, true) => {
            let c = census::census_simple_4_with_limit(vertices, limit.unwrap_or(census::LIMIT_SIMPLE_4)).map_err(usage)?;
            (c.classes, c.undecided)
        }
        (4, false) => return Err(Failure::Usage("the 4-dimensional census needs --simple".into())),
        _ => return Err(Failure::Usage("--dim must be 3 or 4".into())),
    };
    let mut table = String::from("class vertices bipartite certificate\n");
    let mut files = Vec::new();
    for (k, g) in classes.iter().chain(&undecided).enumerate() {
        let cert = if dim == 3 {
            invariants::check_sphere3(g).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string())
        } else if k < classes.len() {
            "sphere residues".to_string()
        } else {
            "undecided".to_string()
        };
        table.push_str(&format!("{k} {} {} {cert}\n", g.order(), g.is_bipartite().is_some()));
        files.push((format!("class-{k:03}.gem"), write_gem(g)));
    }
    table.push_str(&format!("total {}\n", classes.len() + undecided.len()));
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(invalid)?;
        for (name, text) in &files {
            fs::write(dir.join(name), text).map_err(invalid)?;
        }
        fs::write(dir.join("summary.txt"), &table).map_err(invalid)?;
    }
    print!("{table}");
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Report { file } => report(&file),
        Command::Pi1 { file, drop } => pi1(&file, &drop),
        Command::Sum { a, b, v1, v2, perm, reverse, output } => {
            sum(&a, &b, v1, v2, perm.as_deref(), reverse, output.as_deref())
        }
        Command::IteratedSum { spec, data, output } => iterated_sum(&spec, data.as_deref(), output.as_deref()),
        Command::Realize { gem, output } => emit(output.as_deref(), &write_pst(&CellComplex::realize(&load_graph(&gem)?))),
        Command::Dualize { pst, output } => {
            let g = load_complex(&pst)?.dual_graph_coloring().map_err(invalid)?;
            emit(output.as_deref(), &write_gem(&g))
        }
        Command::Simplify { pst, seed, max_steps, weights, patience, facets, output, log } => {
            let c = load_complex(&pst)?;
            let mut cfg = AnnealConfig { seed, max_steps, plateau_patience: patience, ..Default::default() };
            if let Some(w) = weights {
                cfg.weights = parse_weights(&w)?;
            }
            if let Some(k) = facets {
                cfg.target = Target::FacetCount(k);
            }
            let (out, moves, outcome) = simplify(&c, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
            eprintln!("{outcome:?} after {} moves: {} facets, f={}", moves.len(), out.num_facets(), out.f_vector());
            if let Some(p) = log {
                fs::write(&p, moves.to_text()).map_err(invalid)?;
            }
            emit(output.as_deref(), &write_pst(&out))
        }
        Command::Census { dim, vertices, simple, limit, output } => census_cmd(dim, vertices, simple, limit, output.as_deref()),
        Command::Catalog { name, data, output } => {
            let data = data.as_deref().map(read).transpose()?;
            let g = catalog::catalog(&name, data.as_deref()).map_err(|e| match e {
                catalog::CatalogError::UnknownName(_) | catalog::CatalogError::MissingData(_) => Failure::Usage(e.to_string()),
                other => invalid(other),
            })?;
            emit(output.as_deref(), &write_gem(&g))
        }
        Command::ExportDot { gem, output } => emit(output.as_deref(), &export_dot(&load_graph(&gem)?)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
