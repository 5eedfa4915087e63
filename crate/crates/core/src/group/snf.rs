//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal(&self.d)
    }
}

fn diagonal(d: &[Vec<BigInt>]) -> Vec<BigInt> {
    let cols = d.first().map_or(0, Vec::len);
    (0..d.len().min(cols)).map(|k| d[k][k].clone()).filter(|x| !x.is_zero()).collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let sub = |m: &mut Vec<Vec<BigInt>>| {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        };
        sub(&mut self.a);
        if let Some(u) = &mut self.u {
            sub(u);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let sub = |m: &mut Vec<Vec<BigInt>>| {
            for row in m {
                if !row[src].is_zero() {
                    let t = q * &row[src];
                    row[dst] -= t;
                }
            }
        };
        sub(&mut self.a);
        if let Some(v) = &mut self.v {
            sub(v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a smaller remainder appeared in the pivot row or column
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // enforce divisibility of the remaining block by the pivot
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_axpy(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Full Smith decomposition with transforms.
pub fn smith_form(a: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut r = Reducer {
        a: a.to_vec(),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
        rows,
        cols,
    };
    r.run();
    SmithForm {
        u: r.u.unwrap(),
        d: r.a,
        v: r.v.unwrap(),
    }
}

/// Nonzero invariant factors of an integer matrix with `cols` columns.
///
/// Unit entries are eliminated first in machine integers; the remaining
/// block is reduced with arbitrary precision.
pub fn invariant_factors(a: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let (rest, units) = eliminate_units(a, cols);
    let rows = rest.len();
    let rcols = rest.first().map_or(0, Vec::len);
    let big: Vec<Vec<BigInt>> = rest.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut r = Reducer {
        a: big,
        u: None,
        v: None,
        rows,
        cols: rcols,
    };
    r.run();
    let mut out = vec![BigInt::one(); units];
    out.extend(diagonal(&r.a));
    out
}

/// Repeatedly clears the row and column of a ±1 entry. Returns the leftover
/// matrix and how many unit pivots were removed. Falls back to returning the
/// current matrix unchanged once any update would overflow.
fn eliminate_units(a: &[Vec<i64>], cols: usize) -> (Vec<Vec<i64>>, usize) {
    let mut m: Vec<Vec<i64>> = a.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut units = 0;
    'outer: loop {
        let mut pivot = None;
        'find: for (i, row) in m.iter().enumerate() {
            for &j in &live_cols {
                if row[j].abs() == 1 {
                    pivot = Some((i, j));
                    break 'find;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let prow = m[pi].clone();
        let s = prow[pj];
        let mut next = Vec::with_capacity(m.len() - 1);
        for (i, row) in m.iter().enumerate() {
            if i == pi {
                continue;
            }
            let f = row[pj] * s;
            if f == 0 {
                next.push(row.clone());
                continue;
            }
            let mut new = row.clone();
            for &j in &live_cols {
                match prow[j].checked_mul(f).and_then(|x| new[j].checked_sub(x)) {
                    Some(x) => new[j] = x,
                    None => break 'outer,
                }
            }
            if new.iter().any(|&x| x != 0) {
                next.push(new);
            }
        }
        m = next;
        live_cols.retain(|&j| j != pj);
        units += 1;
    }
    let out = m
        .into_iter()
        .map(|row| live_cols.iter().map(|&j| row[j]).collect())
        .collect();
    (out, units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(a: &[Vec<i64>], cols: usize) -> SmithForm {
        let s = smith_form(&big(a), cols);
        let prod = mat_mul(&mat_mul(&s.u, &big(a)), &s.v);
        assert_eq!(prod, s.d);
        for i in 0..s.d.len() {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{f:?}");
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    fn small(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn textbook_examples() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(check(&a, 3).invariant_factors(), small(&[2, 6, 12]));
        let b = vec![vec![4, 6]];
        assert_eq!(check(&b, 2).invariant_factors(), small(&[2]));
        let c = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(check(&c, 2).invariant_factors(), small(&[1, 6]));
    }

    #[test]
    fn empty_matrices() {
        assert!(invariant_factors(&[], 3).is_empty());
        let s = smith_form(&[], 2);
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn unit_elimination_agrees_with_full_reduction() {
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        assert_eq!(invariant_factors(&a, 3), check(&a, 3).invariant_factors());
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 0usize..6, cols in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let s = check(&a, cols);
            prop_assert_eq!(invariant_factors(&a, cols), s.invariant_factors());
        }
    }
}
