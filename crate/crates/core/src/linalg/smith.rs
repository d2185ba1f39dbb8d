use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::{BaseRing, RingElem};
use crate::error::{Error, Result};

/// Smith normal form `u * a * v = diag(invariants, 0, ...)` over Z.
///
/// `invariants` are the nonzero diagonal entries, positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let s = m[src].clone();
            for (x, y) in m[dst].iter_mut().zip(s) {
                *x -= q * y;
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let y = row[src].clone();
                row[dst] -= q * y;
            }
        }
    }
}

fn to_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).as_bigint().unwrap().clone()).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn from_rows(rows: Vec<Vec<BigInt>>, n: usize) -> Matrix {
    let flat: Vec<BigInt> = rows.into_iter().flatten().collect();
    Matrix::from_bigint(BaseRing::Integers, n, n, &flat)
}

pub fn smith_form(m: &Matrix) -> Result<SmithForm> {
    if m.ring() != BaseRing::Integers {
        return Err(Error::NotIntegers(m.ring().to_string()));
    }
    let (rows, cols) = m.shape();
    let mut w = Work { a: to_rows(m), u: identity(rows), v: identity(cols) };
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    w.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            for m in [&mut w.a, &mut w.u] {
                for x in m[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        invariants.push(w.a[t][t].clone());
    }
    Ok(SmithForm { invariants, u: from_rows(w.u, rows), v: from_rows(w.v, cols) })
}

/// Invariant factors of an integer matrix, without transforms.
pub fn invariant_factors(m: &Matrix) -> Result<Vec<BigInt>> {
    Ok(smith_form(m)?.invariants)
}

pub fn diagonal(ring: BaseRing, rows: usize, cols: usize, d: &[BigInt]) -> Matrix {
    let mut out = Matrix::zeros(ring, rows, cols);
    for (i, x) in d.iter().enumerate() {
        out.set(i, i, RingElem::Int(x.clone()));
    }
    out
}
