//! Tietze transformations.

use super::{cyclic_reduce, free_reduce, invert, GroupPresentation, Word};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TietzeStatus {
    /// No rule applies any more.
    Reduced,
    BudgetExhausted,
}

/// Simplifies `p` with at most `budget` generator eliminations and relator
/// substitutions. The rules are tried in a fixed order, so the result is
/// deterministic.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> (GroupPresentation, TietzeStatus) {
    let mut s = State {
        gens: p.num_generators,
        rels: p.relators.clone(),
    };
    let mut steps = 0;
    loop {
        s.normalize();
        if steps >= budget {
            let mut probe = s.clone();
            let status = if probe.eliminate_once() || probe.shorten_once() {
                TietzeStatus::BudgetExhausted
            } else {
                TietzeStatus::Reduced
            };
            return (s.finish(), status);
        }
        if s.eliminate_once() || s.shorten_once() {
            steps += 1;
            continue;
        }
        return (s.finish(), TietzeStatus::Reduced);
    }
}

#[derive(Clone)]
struct State {
    gens: usize,
    rels: Vec<Word>,
}

/// Least rotation of the word or of its inverse; equal keys mean the two
/// relators define the same normal closure.
fn cyclic_key(w: &[i32]) -> Word {
    let inv = invert(w);
    let mut best: Option<Word> = None;
    for base in [w, &inv[..]] {
        for k in 0..base.len().max(1) {
            let rot: Word = base[k..].iter().chain(&base[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn rotations(w: &[i32]) -> impl Iterator<Item = Word> + '_ {
    (0..w.len()).map(move |k| w[k..].iter().chain(&w[..k]).copied().collect())
}

impl State {
    fn normalize(&mut self) {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(self.rels.len());
        for r in self.rels.drain(..) {
            let r = cyclic_reduce(&r);
            if r.is_empty() {
                continue;
            }
            if seen.insert(cyclic_key(&r)) {
                out.push(r);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.rels = out;
    }

    /// Removes one generator occurring exactly once in some relator, using
    /// the shortest such relator.
    fn eliminate_once(&mut self) -> bool {
        // relators are sorted by length, so the first hit is a shortest one
        let mut choice: Option<(usize, i32)> = None;
        for (k, r) in self.rels.iter().enumerate() {
            let mut count = vec![0u32; self.gens + 1];
            for &x in r {
                count[x.unsigned_abs() as usize] += 1;
            }
            if let Some(g) = (1..=self.gens).find(|&g| count[g] == 1) {
                choice = Some((k, g as i32));
                break;
            }
        }
        let Some((k, g)) = choice else { return false };
        let r = self.rels.remove(k);
        let pos = r.iter().position(|&x| x.abs() == g).unwrap();
        let e = r[pos].signum();
        // r rotated is g^e W, so g = W^-1 when e = 1 and g = W when e = -1
        let w: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let image = if e == 1 { invert(&w) } else { w };
        let image_inv = invert(&image);
        for rel in &mut self.rels {
            if rel.iter().any(|x| x.abs() == g) {
                let mut out = Vec::with_capacity(rel.len() + image.len());
                for &x in rel.iter() {
                    if x == g {
                        out.extend_from_slice(&image);
                    } else if x == -g {
                        out.extend_from_slice(&image_inv);
                    } else {
                        out.push(x);
                    }
                }
                *rel = free_reduce(&out);
            }
        }
        for rel in &mut self.rels {
            for x in rel.iter_mut() {
                if x.abs() > g {
                    *x -= x.signum();
                }
            }
        }
        self.gens -= 1;
        true
    }

    /// Replaces a relator `s = u w` by `v^-1 w` when some relator `r`
    /// (cyclically, or its inverse) equals `u v` with `u` longer than half of `r`.
    fn shorten_once(&mut self) -> bool {
        for a in 0..self.rels.len() {
            let r = self.rels[a].clone();
            let half = r.len() / 2;
            let inv = invert(&r);
            let r_rots: Vec<Word> = rotations(&r).chain(rotations(&inv)).collect();
            for b in 0..self.rels.len() {
                if a == b || self.rels[b].len() < r.len() {
                    continue;
                }
                let s = self.rels[b].clone();
                for srot in rotations(&s) {
                    for rrot in &r_rots {
                        let l = srot.iter().zip(rrot).take_while(|(x, y)| x == y).count();
                        if l > half {
                            let mut new = invert(&rrot[l..]);
                            new.extend_from_slice(&srot[l..]);
                            self.rels[b] = cyclic_reduce(&new);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn finish(mut self) -> GroupPresentation {
        self.normalize();
        GroupPresentation {
            num_generators: self.gens,
            relators: self.rels,
        }
    }
}
