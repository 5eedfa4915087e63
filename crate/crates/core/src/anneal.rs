//! Randomized simplification by bistellar moves and edge contractions.
//!
//! Each step first draws among the classes that lower the facet count
//! (i-moves with `2i > d` and edge contractions), by weight and without
//! replacement, and applies the first legal site found. Only when none of
//! them applies is a class drawn the same way from the remaining moves.
//! After `plateau_patience` steps without a facet-count improvement a burst
//! of 5 to 15 random 2-moves is applied.
//!
//! The random source is ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`],
//! which gives the same stream on every platform. Each log line records the
//! generator's word position after the step.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{CellComplex, FVector};
use crate::moves::{apply, Move, MoveKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `d+1` vertices and every pair of them joined by one edge.
    SimpleContracted,
    FacetCount(usize),
}

impl Target {
    pub fn reached(&self, c: &CellComplex) -> bool {
        match *self {
            Target::FacetCount(k) => c.num_facets() == k,
            Target::SimpleContracted => {
                let f = c.f_vector().0;
                let v = c.dim() + 1;
                f[0] == v && f.get(1).is_none_or(|&e| e == v * (v - 1) / 2)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealConfig {
    pub seed: u64,
    pub max_steps: usize,
    /// Weights of 0-, 1-, ..., d-moves followed by edge contraction.
    pub weights: Vec<f64>,
    pub plateau_patience: usize,
    pub target: Target,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            seed: 0,
            max_steps: 10_000,
            weights: vec![1.0, 2.0, 6.0, 10.0, 10.0, 10.0],
            plateau_patience: 200,
            target: Target::SimpleContracted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    TargetReached,
    StepsExhausted,
}

#[derive(Debug, Error, PartialEq)]
pub enum AnnealError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("move log line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("replay diverged at step {step}: {message}")]
    Replay { step: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub step: usize,
    pub mv: Move,
    /// f-vector after the move.
    pub f_vector: FVector,
    pub rng_word_pos: u128,
}

/// Applied moves in order, one text line each:
/// `step kind facet:corners (f0,...,fd) word-position`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveLog {
    pub entries: Vec<LogEntry>,
}

impl MoveLog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<MoveLog, AnnealError> {
        let mut entries = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| AnnealError::Parse { line: k + 1, message: message.to_string() };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [step, kind, site, fv, pos] = tokens[..] else {
                return Err(err("expected `step kind site f-vector word-position`"));
            };
            let kind: MoveKind = kind.parse().map_err(|e: String| err(&e))?;
            let (facet, mask) = Move::parse_site(site).ok_or_else(|| err("bad site"))?;
            let f_vector = fv
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<usize>>>())
                .ok_or_else(|| err("bad f-vector"))?;
            entries.push(LogEntry {
                step: step.parse().map_err(|_| err("bad step"))?,
                mv: Move { kind, facet, mask },
                f_vector: FVector(f_vector),
                rng_word_pos: pos.parse().map_err(|_| err("bad word position"))?,
            });
        }
        Ok(MoveLog { entries })
    }

    /// Applies the logged moves to `start`, checking each recorded f-vector.
    pub fn replay(&self, start: &CellComplex) -> Result<CellComplex, AnnealError> {
        let mut c = start.clone();
        for e in &self.entries {
            c = apply(&c, &e.mv).map_err(|err| AnnealError::Replay { step: e.step, message: err.to_string() })?;
            let f = c.f_vector();
            if f != e.f_vector {
                return Err(AnnealError::Replay {
                    step: e.step,
                    message: format!("f-vector {f}, logged {}", e.f_vector),
                });
            }
        }
        Ok(c)
    }
}

impl fmt::Display for MoveLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {} {} {}", e.step, e.mv, e.f_vector, e.rng_word_pos)?;
        }
        Ok(())
    }
}

fn check_config(c: &CellComplex, cfg: &AnnealConfig) -> Result<(), AnnealError> {
    let classes = c.dim() + 2;
    if cfg.weights.len() != classes {
        return Err(AnnealError::InvalidConfig(format!(
            "expected {classes} weights for dimension {}, got {}",
            c.dim(),
            cfg.weights.len()
        )));
    }
    if cfg.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(AnnealError::InvalidConfig("weights must be finite and non-negative".into()));
    }
    if cfg.weights.iter().all(|&w| w == 0.0) {
        return Err(AnnealError::InvalidConfig("all weights are zero".into()));
    }
    if !c.is_closed() || !c.is_connected() {
        return Err(AnnealError::InvalidConfig("complex must be closed and connected".into()));
    }
    Ok(())
}

/// First occurrence of every face class with `corners` corners, shuffled.
fn sites(c: &CellComplex, corners: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, u32)> {
    let d = c.dim();
    let mut out = Vec::new();
    if corners == d + 1 {
        out = (0..c.num_facets()).map(|f| (f, (1u32 << (d + 1)) - 1)).collect();
    } else {
        let faces = c.face_classes();
        let mut seen = vec![false; faces.count(corners - 1)];
        for f in 0..c.num_facets() {
            for mask in 1u32..(1 << (d + 1)) {
                if mask.count_ones() as usize == corners && !std::mem::replace(&mut seen[faces.face(f, mask)], true) {
                    out.push((f, mask));
                }
            }
        }
    }
    out.shuffle(rng);
    out
}

fn try_class(c: &CellComplex, kind: MoveKind, rng: &mut ChaCha8Rng) -> Option<(Move, CellComplex)> {
    let corners = match kind {
        MoveKind::Bistellar(i) => c.dim() + 1 - i,
        MoveKind::EdgeContraction => 2,
    };
    sites(c, corners, rng).into_iter().find_map(|(facet, mask)| {
        let m = Move { kind, facet, mask };
        apply(c, &m).ok().map(|next| (m, next))
    })
}

/// Draws classes by weight without replacement until one has a legal site.
fn draw_from(
    c: &CellComplex,
    kinds: &[MoveKind],
    weights: &[f64],
    allowed: impl Fn(MoveKind) -> bool,
    rng: &mut ChaCha8Rng,
) -> Option<(Move, CellComplex)> {
    let mut w: Vec<f64> = kinds.iter().zip(weights).map(|(&k, &w)| if allowed(k) { w } else { 0.0 }).collect();
    while let Ok(dist) = WeightedIndex::new(&w) {
        let k = dist.sample(rng);
        if let Some(found) = try_class(c, kinds[k], rng) {
            return Some(found);
        }
        w[k] = 0.0;
    }
    None
}

/// Moves that lower the facet count: i-moves with `2i > d` and contractions.
fn reduces(kind: MoveKind, d: usize) -> bool {
    match kind {
        MoveKind::Bistellar(i) => 2 * i > d,
        MoveKind::EdgeContraction => true,
    }
}

pub fn simplify(c: &CellComplex, cfg: &AnnealConfig) -> Result<(CellComplex, MoveLog, Outcome), AnnealError> {
    simplify_until(c, cfg, &AtomicBool::new(false))
}

fn simplify_until(
    c: &CellComplex,
    cfg: &AnnealConfig,
    cancel: &AtomicBool,
) -> Result<(CellComplex, MoveLog, Outcome), AnnealError> {
    check_config(c, cfg)?;
    let d = c.dim();
    let kinds: Vec<MoveKind> = (0..=d).map(MoveKind::Bistellar).chain([MoveKind::EdgeContraction]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = c.clone();
    let mut log = MoveLog::default();
    let mut best = cur.num_facets();
    let mut stale = 0;
    let mut step = 0;
    let mut record = |step: usize, m: Move, next: &CellComplex, rng: &ChaCha8Rng| {
        log.entries.push(LogEntry {
            step,
            mv: m,
            f_vector: next.f_vector(),
            rng_word_pos: rng.get_word_pos(),
        });
    };
    while step < cfg.max_steps && !cancel.load(Ordering::Relaxed) {
        if cfg.target.reached(&cur) {
            return Ok((cur, log, Outcome::TargetReached));
        }
        let found = draw_from(&cur, &kinds, &cfg.weights, |k| reduces(k, d), &mut rng)
            .or_else(|| draw_from(&cur, &kinds, &cfg.weights, |k| !reduces(k, d), &mut rng));
        if let Some((m, next)) = found {
            record(step, m, &next, &rng);
            cur = next;
        }
        step += 1;
        if cur.num_facets() < best {
            best = cur.num_facets();
            stale = 0;
        } else {
            stale += 1;
        }
        if cfg.plateau_patience > 0 && stale >= cfg.plateau_patience && d >= 2 {
            let burst = rng.gen_range(5..=15);
            for _ in 0..burst {
                if let Some((m, next)) = try_class(&cur, MoveKind::Bistellar(2), &mut rng) {
                    record(step, m, &next, &rng);
                    cur = next;
                }
            }
            best = cur.num_facets();
            stale = 0;
        }
    }
    let outcome = if step > 0 && cfg.target.reached(&cur) {
        Outcome::TargetReached
    } else {
        Outcome::StepsExhausted
    };
    Ok((cur, log, outcome))
}

/// Runs one chain per seed in parallel; the first chain to reach the target
/// stops the others. Returns the winning seed with its result, or the
/// result of the first seed if none reaches the target.
pub fn simplify_race(
    c: &CellComplex,
    cfg: &AnnealConfig,
    seeds: &[u64],
) -> Result<(u64, CellComplex, MoveLog, Outcome), AnnealError> {
    check_config(c, cfg)?;
    let cancel = AtomicBool::new(false);
    let results: Vec<_> = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = AnnealConfig { seed, ..cfg.clone() };
            let r = simplify_until(c, &cfg, &cancel);
            if matches!(r, Ok((_, _, Outcome::TargetReached))) {
                cancel.store(true, Ordering::Relaxed);
            }
            r.map(|(c, log, o)| (seed, c, log, o))
        })
        .collect::<Result<_, _>>()?;
    let winner = results.iter().position(|r| r.3 == Outcome::TargetReached).unwrap_or(0);
    results
        .into_iter()
        .nth(winner)
        .ok_or_else(|| AnnealError::InvalidConfig("no seeds".into()))
}
