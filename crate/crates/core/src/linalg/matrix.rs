use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::ring::{BaseRing, RingElem};
use super::smith::smith_form;
use crate::error::{Error, Result};

/// Dense row-major matrix over one of the supported base rings.
///
/// Matrices act on column vectors: a map `k^n -> k^m` is an `m x n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Matrix {
    pub fn zeros(ring: BaseRing, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: BaseRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_entries(ring: BaseRing, rows: usize, cols: usize, data: Vec<RingElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.ring() != ring) {
            return Err(Error::RingMismatch(format!("entry {bad} is not in {ring}")));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_i64(ring: BaseRing, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        let data = rows.iter().flatten().map(|&x| ring.from_i64(x)).collect();
        Matrix { ring, rows: r, cols: c, data }
    }

    pub fn from_bigint(ring: BaseRing, rows: usize, cols: usize, data: &[BigInt]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { ring, rows, cols, data: data.iter().map(|x| ring.from_bigint(x)).collect() }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        debug_assert_eq!(v.ring(), self.ring);
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElem::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} over {} by {}x{} over {}",
                self.rows, self.cols, self.ring, other.rows, other.cols, other.ring
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> Matrix {
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Kronecker product; the index of `a (x) b` basis pairs is `ia * dim(b) + ib`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(ring: BaseRing, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(ring: BaseRing, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(ring: BaseRing, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn paste(&mut self, row: usize, col: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &[j])
    }

    pub fn columns(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn change_ring(&self, target: BaseRing) -> Result<Matrix> {
        let data = self.data.iter().map(|x| self.ring.map_into(x, target)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: target, rows: self.rows, cols: self.cols, data })
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring.to_string()))
        }
    }

    /// Reduced row echelon form and pivot columns. Fields only.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.require_field()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero field element");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the fraction field of the base ring.
    pub fn rank(&self) -> usize {
        match self.ring {
            BaseRing::Integers => self.change_ring(BaseRing::Rationals).expect("Z embeds in Q").rank(),
            _ => self.rref().expect("field").1.len(),
        }
    }

    /// Columns form a basis of the kernel (an integral basis of the saturated kernel over Z).
    pub fn nullspace(&self) -> Matrix {
        if self.ring == BaseRing::Integers {
            let s = smith_form(self).expect("integer matrix");
            let r = s.invariants.len();
            let cols: Vec<usize> = (r..self.cols).collect();
            return s.v.columns(&cols);
        }
        let (m, pivots) = self.rref().expect("field");
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.ring, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.ring.one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, -m.get(row, f));
            }
        }
        out
    }

    /// Canonical basis (columns) of the column space. Fields only.
    pub fn column_basis(&self) -> Result<Matrix> {
        let (m, pivots) = self.transpose().rref()?;
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols).collect();
        Ok(m.select(&rows, &cols).transpose())
    }

    /// Solve `self * x = b`; integral solutions over Z. `None` when no solution exists.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows || b.ring != self.ring {
            return Err(Error::Shape(format!("solve: {}x{} system with {}x{} right-hand side", self.rows, self.cols, b.rows, b.cols)));
        }
        if self.ring == BaseRing::Integers {
            return Ok(solve_integral(self, b));
        }
        let aug = Matrix::hstack(self.ring, self.rows, &[self, b]);
        let (m, pivots) = aug.rref()?;
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.ring, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, m.get(row, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.ring, self.rows)).ok()??;
        // over Z a one-sided integral solution of a square system is two-sided
        Some(x)
    }

    pub fn determinant(&self) -> Result<RingElem> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        if self.ring == BaseRing::Integers {
            let d = self.change_ring(BaseRing::Rationals)?.determinant()?;
            let RingElem::Rat(q) = d else { unreachable!() };
            debug_assert!(q.denom().is_one());
            return Ok(RingElem::Int(q.to_integer()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.ring.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(self.ring.zero()) };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("field");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

fn solve_integral(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ring = BaseRing::Integers;
    let s = smith_form(a).expect("integer matrix");
    let c = &s.u * b;
    let r = s.invariants.len();
    let mut y = Matrix::zeros(ring, a.cols, b.cols);
    for j in 0..b.cols {
        for i in 0..a.rows {
            let ci = c.get(i, j);
            if i < r {
                let q = ci.div_exact(&RingElem::Int(s.invariants[i].clone()))?;
                y.set(i, j, q);
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(&s.v * &y)
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.try_mul(rhs).unwrap()
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix add shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sub shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
