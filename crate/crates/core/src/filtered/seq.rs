use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{BaseRing, Matrix};

/// A presheaf on Z over a field: `a_n` for `n` in `[lo, hi]`, `a_n = a_lo` below, `0` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqObject {
    ring: BaseRing,
    lo: i64,
    dims: Vec<usize>,
    /// `trans[i] : a_{lo+i+1} → a_{lo+i}`
    trans: Vec<Matrix>,
}

impl SeqObject {
    pub fn new(ring: BaseRing, lo: i64, dims: Vec<usize>, trans: Vec<Matrix>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        if dims.is_empty() {
            return Err(Error::Shape("a window needs at least one level".into()));
        }
        if trans.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} levels need {} transitions, got {}", dims.len(), dims.len() - 1, trans.len())));
        }
        for (i, t) in trans.iter().enumerate() {
            if t.ring() != ring {
                return Err(Error::RingMismatch(format!("{ring} vs {}", t.ring())));
            }
            if t.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::Shape(format!(
                    "transition {}←{} should be {}x{}, got {}x{}",
                    lo + i as i64,
                    lo + i as i64 + 1,
                    dims[i],
                    dims[i + 1],
                    t.rows(),
                    t.cols()
                )));
            }
        }
        Ok(SeqObject { ring, lo, dims, trans })
    }

    pub fn zero(ring: BaseRing) -> Self {
        SeqObject { ring, lo: 0, dims: vec![0], trans: vec![] }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn transitions(&self) -> &[Matrix] {
        &self.trans
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo {
            self.dims[0]
        } else if n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `t_n : a_{n+1} → a_n` for any `n`.
    pub fn transition(&self, n: i64) -> Matrix {
        if n < self.lo {
            Matrix::identity(self.ring, self.dims[0])
        } else if n >= self.hi() {
            Matrix::zeros(self.ring, self.dim(n), 0)
        } else {
            self.trans[(n - self.lo) as usize].clone()
        }
    }

    /// `a_m → a_n` for `m ≥ n`.
    pub fn composite(&self, n: i64, m: i64) -> Matrix {
        assert!(m >= n, "composite goes downward");
        let mut out = Matrix::identity(self.ring, self.dim(m));
        for k in (n..m).rev() {
            out = &self.transition(k) * &out;
        }
        out
    }

    /// `a_n → a_lo = π(a)`; the identity below the window.
    pub fn to_pi(&self, n: i64) -> Matrix {
        if n <= self.lo {
            Matrix::identity(self.ring, self.dims[0])
        } else {
            self.composite(self.lo, n)
        }
    }

    pub fn pi_dim(&self) -> usize {
        self.dims[0]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn is_filtered(&self) -> bool {
        self.trans.iter().all(|t| t.rank() == t.cols())
    }

    /// Same presheaf on the window `[lo, hi]`, which must contain the current one.
    pub fn extend(&self, lo: i64, hi: i64) -> SeqObject {
        assert!(lo <= self.lo && hi >= self.hi(), "extend must enlarge the window");
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n)).collect();
        let trans: Vec<Matrix> = (lo..hi).map(|n| self.transition(n)).collect();
        SeqObject { ring: self.ring, lo, dims, trans }
    }

    /// `a(n)_m = a_{m-n}`.
    pub fn twist(&self, n: i64) -> SeqObject {
        SeqObject { lo: self.lo + n, ..self.clone() }
    }

    /// `n ↦ dim coker(t_n)`, zero entries omitted.
    pub fn gr_dims(&self) -> GradedDims {
        let mut out = BTreeMap::new();
        for n in self.lo..=self.hi() {
            let d = self.dim(n) - self.transition(n).rank();
            if d > 0 {
                out.insert(n, d);
            }
        }
        GradedDims(out)
    }
}

impl fmt::Display for SeqObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seq[{}..{}] dims {:?}", self.lo, self.hi(), self.dims)
    }
}

/// Finitely supported `n ↦ dim gr_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(pub BTreeMap<i64, usize>);

impl GradedDims {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn get(&self, n: i64) -> usize {
        self.0.get(&n).copied().unwrap_or(0)
    }

    /// `(a * b)_n = Σ_{p+q=n} a_p b_q`.
    pub fn convolve(&self, other: &GradedDims) -> GradedDims {
        let mut out = BTreeMap::new();
        for (&p, &x) in &self.0 {
            for (&q, &y) in &other.0 {
                *out.entry(p + q).or_insert(0) += x * y;
            }
        }
        GradedDims(out)
    }

    /// Sorted twists with multiplicity.
    pub fn twists(&self) -> Vec<i64> {
        self.0.iter().flat_map(|(&n, &m)| std::iter::repeat_n(n, m)).collect()
    }
}

/// A levelwise map of presheaves, on the union of the two windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqMorphism {
    source: SeqObject,
    target: SeqObject,
    lo: i64,
    comps: Vec<Matrix>,
}

impl SeqMorphism {
    /// `comps[i] = f_{lo+i}` for `lo = min(lo_a, lo_b)` up to `max(hi_a, hi_b)`.
    pub fn new(source: &SeqObject, target: &SeqObject, comps: Vec<Matrix>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring, target.ring)));
        }
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        if comps.len() as i64 != hi - lo + 1 {
            return Err(Error::Shape(format!("expected {} components, got {}", hi - lo + 1, comps.len())));
        }
        for (i, c) in comps.iter().enumerate() {
            let n = lo + i as i64;
            if c.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::Shape(format!("component {n} has the wrong shape")));
            }
        }
        let f = SeqMorphism { source: source.clone(), target: target.clone(), lo, comps };
        for n in lo..hi {
            if &f.at(n) * &source.transition(n) != &target.transition(n) * &f.at(n + 1) {
                return Err(Error::NotAMorphism(format!("square at level {n} does not commute")));
            }
        }
        Ok(f)
    }

    /// From a rule producing each component.
    pub fn from_fn(source: &SeqObject, target: &SeqObject, f: impl Fn(i64) -> Matrix) -> Result<Self> {
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        SeqMorphism::new(source, target, (lo..=hi).map(f).collect())
    }

    pub fn zero(source: &SeqObject, target: &SeqObject) -> Self {
        let ring = source.ring;
        SeqMorphism::from_fn(source, target, |n| Matrix::zeros(ring, target.dim(n), source.dim(n))).expect("zero map")
    }

    pub fn identity(a: &SeqObject) -> Self {
        SeqMorphism::from_fn(a, a, |n| Matrix::identity(a.ring, a.dim(n))).expect("identity")
    }

    pub fn source(&self) -> &SeqObject {
        &self.source
    }

    pub fn target(&self) -> &SeqObject {
        &self.target
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn at(&self, n: i64) -> Matrix {
        if n < self.lo {
            self.comps[0].clone()
        } else if n > self.hi() {
            Matrix::zeros(self.source.ring, 0, 0)
        } else {
            self.comps[(n - self.lo) as usize].clone()
        }
    }

    /// The map on `π = a_{-∞}`.
    pub fn pi(&self) -> Matrix {
        self.comps[0].clone()
    }

    pub fn compose(&self, first: &SeqMorphism) -> Result<SeqMorphism> {
        if first.target != self.source {
            return Err(Error::NotAMorphism("composition of non-composable maps".into()));
        }
        SeqMorphism::from_fn(&first.source, &self.target, |n| &self.at(n) * &first.at(n))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Levelwise bijective.
    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_square() && c.rank() == c.rows())
    }
}

/// Basis of the column span, possibly with zero columns.
pub(crate) fn span(m: &Matrix) -> Matrix {
    m.column_basis().expect("field")
}

pub(crate) fn intersect(u: &Matrix, v: &Matrix) -> Matrix {
    let ring = u.ring();
    if u.cols() == 0 || v.cols() == 0 {
        return Matrix::zeros(ring, u.rows(), 0);
    }
    let n = Matrix::hstack(ring, u.rows(), &[u, &-v]).nullspace();
    let top: Vec<usize> = (0..u.cols()).collect();
    let all: Vec<usize> = (0..n.cols()).collect();
    span(&(u * &n.select(&top, &all)))
}

/// Rows cutting out the span of `u` inside its ambient space.
pub(crate) fn annihilator(u: &Matrix) -> Matrix {
    u.transpose().nullspace().transpose()
}

/// Whether `span(u) ⊆ span(v)`.
pub(crate) fn contained(u: &Matrix, v: &Matrix) -> bool {
    u.cols() == 0 || v.solve(u).expect("shapes").is_some()
}

pub(crate) fn same_span(u: &Matrix, v: &Matrix) -> bool {
    contained(u, v) && contained(v, u)
}

/// Coordinates of the columns of `vecs` in the independent columns of `basis`.
pub(crate) fn coords(basis: &Matrix, vecs: &Matrix) -> Matrix {
    basis.solve(vecs).expect("shapes").expect("vectors lie in the span")
}

/// A right inverse of a full-row-rank matrix.
pub(crate) fn section(q: &Matrix) -> Matrix {
    q.solve(&Matrix::identity(q.ring(), q.rows())).expect("shapes").expect("full row rank")
}

#[cfg(test)]
mod tests {
    use super::*;

    const F3: BaseRing = BaseRing::PrimeField(3);

    fn zero_map_seq() -> SeqObject {
        SeqObject::new(F3, 0, vec![1, 1], vec![Matrix::zeros(F3, 1, 1)]).unwrap()
    }

    #[test]
    fn stable_extension() {
        let a = zero_map_seq();
        assert_eq!(a.dim(-5), 1);
        assert_eq!(a.dim(2), 0);
        assert_eq!(a.transition(-3), Matrix::identity(F3, 1));
        let e = a.extend(-2, 3);
        assert_eq!(e.dims(), &[1, 1, 1, 1, 0, 0]);
        assert_eq!(e.gr_dims(), a.gr_dims());
    }

    #[test]
    fn graded_dims_of_zero_transition() {
        let g = zero_map_seq().gr_dims();
        assert_eq!(g.0, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(!zero_map_seq().is_filtered());
    }

    #[test]
    fn morphism_squares_are_checked() {
        let a = zero_map_seq();
        let id = SeqMorphism::identity(&a);
        assert!(id.is_iso());
        let bad = SeqObject::new(F3, 0, vec![1, 1], vec![Matrix::identity(F3, 1)]).unwrap();
        assert!(SeqMorphism::new(&bad, &a, vec![Matrix::identity(F3, 1), Matrix::identity(F3, 1)]).is_err());
    }

    #[test]
    fn subspace_helpers() {
        let u = Matrix::from_i64(F3, &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let v = Matrix::from_i64(F3, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let w = intersect(&u, &v);
        assert_eq!(w.cols(), 1);
        assert!(contained(&w, &u) && contained(&w, &v));
        assert_eq!(&annihilator(&u) * &u, Matrix::zeros(F3, 1, 2));
    }

    #[test]
    fn convolution() {
        let a = GradedDims(BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(a.convolve(&a).0, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }
}
