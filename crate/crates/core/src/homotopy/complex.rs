use std::collections::BTreeMap;
use std::fmt;

use super::split::{respects_twists, GradedMatrix, SplitObject};
use crate::error::{Error, Result};
use crate::linalg::{BaseRing, FreeComplex, Matrix};

/// A bounded complex of split finite projectives over `R`, i.e. an object of `K^b(fmd(R))`.
///
/// Each degree holds a list of basis twists (any order); `diffs[i]` maps degree `lo + i`
/// to `lo + i + 1` and must respect the twists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiltComplex {
    ring: BaseRing,
    lo: i64,
    objects: Vec<Vec<i64>>,
    diffs: Vec<Matrix>,
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl FiltComplex {
    pub fn new(ring: BaseRing, lo: i64, objects: Vec<Vec<i64>>, diffs: Vec<Matrix>) -> Result<Self> {
        let n = objects.len();
        if diffs.len() != n.saturating_sub(1) {
            return Err(Error::Shape(format!("{n} degrees need {} differentials, got {}", n.saturating_sub(1), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("differential over {} in a complex over {ring}", d.ring())));
            }
            let k = lo + i as i64;
            if d.shape() != (objects[i + 1].len(), objects[i].len()) {
                return Err(Error::Shape(format!("differential in degree {k} has shape {:?}", d.shape())));
            }
            if !respects_twists(&objects[i], &objects[i + 1], d) {
                return Err(Error::TwistConstraint(format!("differential in degree {k} has a negative β-exponent")));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(Error::NotAComplex(lo + i as i64));
            }
        }
        let mut c = FiltComplex { ring, lo, objects, diffs };
        c.trim();
        Ok(c)
    }

    /// Build from a map `degree -> basis twists` and `degree -> differential`.
    pub fn from_parts(ring: BaseRing, objects: &BTreeMap<i64, Vec<i64>>, diffs: &BTreeMap<i64, Matrix>) -> Result<Self> {
        let nonzero: Vec<i64> = objects.iter().filter(|(_, o)| !o.is_empty()).map(|(&k, _)| k).collect();
        let (lo, hi) = match (nonzero.first(), nonzero.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, -1),
        };
        for (&k, d) in diffs {
            if (k < lo || k >= hi) && d.rows() * d.cols() > 0 {
                return Err(Error::Shape(format!("differential in degree {k} leaves the complex")));
            }
        }
        if hi < lo {
            return Ok(FiltComplex::zero(ring));
        }
        let objs: Vec<Vec<i64>> = (lo..=hi).map(|k| objects.get(&k).cloned().unwrap_or_default()).collect();
        let ds = (lo..hi)
            .map(|k| {
                let i = (k - lo) as usize;
                diffs.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(ring, objs[i + 1].len(), objs[i].len()))
            })
            .collect();
        FiltComplex::new(ring, lo, objs, ds)
    }

    pub fn zero(ring: BaseRing) -> Self {
        FiltComplex { ring, lo: 0, objects: vec![], diffs: vec![] }
    }

    /// `R(n)[k]`: the twisted unit placed in cohomological degree `-k`.
    pub fn twisted_unit(ring: BaseRing, n: i64, k: i64) -> Self {
        FiltComplex { ring, lo: -k, objects: vec![vec![n]], diffs: vec![] }
    }

    pub fn unit(ring: BaseRing) -> Self {
        Self::twisted_unit(ring, 0, 0)
    }

    /// A split object concentrated in one degree.
    pub fn concentrated(ring: BaseRing, object: &SplitObject, degree: i64) -> Self {
        let mut c = FiltComplex { ring, lo: degree, objects: vec![object.basis()], diffs: vec![] };
        c.trim();
        c
    }

    /// Two-term complex `source --m--> target` in degrees `degree, degree + 1`.
    pub fn two_term(ring: BaseRing, degree: i64, map: &GradedMatrix) -> Self {
        FiltComplex::new(ring, degree, vec![map.source().to_vec(), map.target().to_vec()], vec![map.coeffs().clone()]).unwrap()
    }

    /// `cone(c β^e : R(0) → R(e))` in degrees `-1, 0`, with the cone sign convention.
    pub fn cone_beta_power(ring: BaseRing, e: i64, c: i64) -> Self {
        let m = Matrix::from_i64(ring, &[vec![-c]]);
        FiltComplex::new(ring, -1, vec![vec![0], vec![e]], vec![m]).unwrap()
    }

    /// `cone(β)`, the complex `R(0) → R(1)`.
    pub fn cone_beta(ring: BaseRing) -> Self {
        Self::cone_beta_power(ring, 1, 1)
    }

    /// `σ_0(cone(c))`: the complex `R(0) --c--> R(0)` in degrees `-1, 0`.
    pub fn cone_scalar(ring: BaseRing, c: i64) -> Self {
        Self::cone_beta_power(ring, 0, c)
    }

    fn trim(&mut self) {
        while self.objects.last().is_some_and(Vec::is_empty) {
            self.objects.pop();
            self.diffs.pop();
        }
        while self.objects.first().is_some_and(Vec::is_empty) {
            self.objects.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.objects.is_empty() {
            self.lo = 0;
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the top nonzero degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.hi()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, k: i64) -> &[i64] {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.objects.len() {
            &self.objects[i as usize]
        } else {
            &[]
        }
    }

    pub fn split_object(&self, k: i64) -> SplitObject {
        SplitObject::from_twists(self.object(k)).0
    }

    pub fn rank_at(&self, k: i64) -> usize {
        self.object(k).len()
    }

    pub fn total_rank(&self) -> usize {
        self.objects.iter().map(Vec::len).sum()
    }

    /// Differential `A^k → A^{k+1}`; a zero matrix outside the stored range.
    pub fn diff(&self, k: i64) -> Matrix {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zeros(self.ring, self.rank_at(k + 1), self.rank_at(k))
        }
    }

    pub fn graded_diff(&self, k: i64) -> GradedMatrix {
        GradedMatrix::new(self.object(k).to_vec(), self.object(k + 1).to_vec(), self.diff(k)).expect("validated at construction")
    }

    pub fn twists(&self) -> impl Iterator<Item = i64> + '_ {
        self.objects.iter().flatten().copied()
    }

    pub fn twist_range(&self) -> Option<(i64, i64)> {
        let min = self.twists().min()?;
        Some((min, self.twists().max().unwrap()))
    }

    /// `A[k]`: degrees move down by `k`, differentials pick up `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let s = self.ring.from_i64(sign(k));
        FiltComplex { ring: self.ring, lo: self.lo - k, objects: self.objects.clone(), diffs: self.diffs.iter().map(|d| d.scale(&s)).collect() }
    }

    /// `A(n) = A ⊗ R(n)`.
    pub fn twist(&self, n: i64) -> Self {
        FiltComplex {
            ring: self.ring,
            lo: self.lo,
            objects: self.objects.iter().map(|o| o.iter().map(|t| t + n).collect()).collect(),
            diffs: self.diffs.clone(),
        }
    }

    /// Degreewise concatenation; `A` comes first in every degree.
    pub fn direct_sum(&self, other: &FiltComplex) -> Self {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let objects = (lo..hi).map(|k| [self.object(k), other.object(k)].concat()).collect();
        let diffs = (lo..hi - 1).map(|k| Matrix::block_diag(self.ring, &[&self.diff(k), &other.diff(k)])).collect();
        FiltComplex::new(self.ring, lo, objects, diffs).expect("sum of complexes")
    }

    pub fn direct_sum_all(ring: BaseRing, parts: &[FiltComplex]) -> Self {
        parts.iter().fold(FiltComplex::zero(ring), |acc, p| acc.direct_sum(p))
    }

    /// Tensor product; degree `n` is `⊕_{i+j=n} A^i ⊗ B^j` ordered by `i`, with Kronecker bases.
    pub fn tensor(&self, other: &FiltComplex) -> Self {
        let layout = TensorLayout::new(self, other);
        if layout.lo >= layout.hi {
            return FiltComplex::zero(self.ring);
        }
        let objects: Vec<Vec<i64>> = (layout.lo..layout.hi)
            .map(|n| {
                let mut basis = Vec::new();
                for (i, j, _) in layout.pieces(n) {
                    for &ta in self.object(i) {
                        for &tb in other.object(j) {
                            basis.push(ta + tb);
                        }
                    }
                }
                basis
            })
            .collect();
        let diffs = (layout.lo..layout.hi - 1)
            .map(|n| {
                let mut d = Matrix::zeros(self.ring, layout.rank(n + 1), layout.rank(n));
                for (i, j, col) in layout.pieces(n) {
                    let ia = Matrix::identity(self.ring, self.rank_at(i));
                    let ib = Matrix::identity(self.ring, other.rank_at(j));
                    if let Some(row) = layout.offset(n + 1, i + 1) {
                        d.paste(row, col, &self.diff(i).kron(&ib));
                    }
                    if let Some(row) = layout.offset(n + 1, i) {
                        d.paste(row, col, &ia.kron(&other.diff(j)).scale(&self.ring.from_i64(sign(i))));
                    }
                }
                d
            })
            .collect();
        FiltComplex::new(self.ring, layout.lo, objects, diffs).expect("tensor of complexes")
    }

    /// `A^∨`: degree `k` holds the negated twists of `A^{-k}`, differential `(-1)^k d^T`.
    pub fn dual(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let lo = 1 - self.hi();
        let hi = 1 - self.lo;
        let objects = (lo..hi).map(|k| self.object(-k).iter().map(|t| -t).collect()).collect();
        let diffs = (lo..hi - 1).map(|k| self.diff(-k - 1).transpose().scale(&self.ring.from_i64(sign(k)))).collect();
        FiltComplex::new(self.ring, lo, objects, diffs).expect("dual complex")
    }

    pub fn with_ring(&self, target: BaseRing) -> Result<Self> {
        let diffs = self.diffs.iter().map(|d| d.change_ring(target)).collect::<Result<Vec<_>>>()?;
        FiltComplex::new(target, self.lo, self.objects.clone(), diffs)
    }

    /// `π(A)`: the complex of underlying modules (`β ↦ 1`).
    pub fn pi_complex(&self) -> FreeComplex {
        FreeComplex::new(self.ring, self.lo, self.objects.iter().map(Vec::len).collect(), self.diffs.clone()).expect("underlying complex")
    }

    /// `gr(A)` as a family of complexes indexed by twist.
    pub fn gr_complex(&self) -> BTreeMap<i64, FreeComplex> {
        let mut twists: Vec<i64> = self.twists().collect();
        twists.sort();
        twists.dedup();
        twists
            .into_iter()
            .filter_map(|n| {
                let idx: Vec<Vec<usize>> = self.objects.iter().map(|o| (0..o.len()).filter(|&i| o[i] == n).collect()).collect();
                let diffs = (0..self.diffs.len()).map(|i| self.diffs[i].select(&idx[i + 1], &idx[i])).collect();
                let c = FreeComplex::new(self.ring, self.lo, idx.iter().map(Vec::len).collect(), diffs).expect("graded piece");
                (!c.is_empty()).then_some((n, c))
            })
            .collect()
    }

    /// `⊕_n gr_n(A)`: same ranks as `A`, keeping only exponent-zero entries.
    pub fn gr_total(&self) -> FreeComplex {
        let diffs = self.degrees().take(self.diffs.len()).map(|k| self.graded_diff(k).gr()).collect();
        FreeComplex::new(self.ring, self.lo, self.objects.iter().map(Vec::len).collect(), diffs).expect("associated graded")
    }

    /// `σ_0`: a complex of free modules placed in twist zero.
    pub fn embed_degree_zero(c: &FreeComplex) -> Self {
        let objects = c.ranks().iter().map(|&r| vec![0; r]).collect();
        let diffs = (c.lo()..c.hi() - 1).map(|k| c.diff(k)).collect();
        FiltComplex::new(c.ring(), c.lo(), objects, diffs).expect("free complex")
    }

    /// Permute the basis of every degree so twists ascend (stable).
    pub fn sorted(&self) -> (Self, Vec<Vec<usize>>) {
        let perms: Vec<Vec<usize>> = self.objects.iter().map(|o| SplitObject::from_twists(o).1).collect();
        let objects = self
            .objects
            .iter()
            .zip(&perms)
            .map(|(o, p)| {
                let mut v = vec![0; o.len()];
                for (i, &pi) in p.iter().enumerate() {
                    v[pi] = o[i];
                }
                v
            })
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut out = Matrix::zeros(self.ring, d.rows(), d.cols());
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        out.set(perms[i + 1][r], perms[i][c], d.get(r, c).clone());
                    }
                }
                out
            })
            .collect();
        (FiltComplex { ring: self.ring, lo: self.lo, objects, diffs }, perms)
    }
}

/// Index bookkeeping for tensor products.
pub(crate) struct TensorLayout {
    pub lo: i64,
    pub hi: i64,
    a: (i64, i64),
    b: (i64, i64),
    ranks_a: Vec<usize>,
    ranks_b: Vec<usize>,
}

impl TensorLayout {
    pub fn new(a: &FiltComplex, b: &FiltComplex) -> Self {
        let (lo, hi) = if a.is_empty() || b.is_empty() { (0, 0) } else { (a.lo + b.lo, a.hi() + b.hi() - 1) };
        TensorLayout {
            lo,
            hi,
            a: (a.lo, a.hi()),
            b: (b.lo, b.hi()),
            ranks_a: a.objects.iter().map(Vec::len).collect(),
            ranks_b: b.objects.iter().map(Vec::len).collect(),
        }
    }

    fn ra(&self, i: i64) -> usize {
        if i < self.a.0 || i >= self.a.1 {
            0
        } else {
            self.ranks_a[(i - self.a.0) as usize]
        }
    }

    fn rb(&self, j: i64) -> usize {
        if j < self.b.0 || j >= self.b.1 {
            0
        } else {
            self.ranks_b[(j - self.b.0) as usize]
        }
    }

    /// `(i, j, offset)` for each nonzero piece `A^i ⊗ B^j` of total degree `n`.
    pub fn pieces(&self, n: i64) -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for i in self.a.0..self.a.1 {
            let j = n - i;
            let size = self.ra(i) * self.rb(j);
            if size > 0 {
                out.push((i, j, off));
                off += size;
            }
        }
        out
    }

    pub fn offset(&self, n: i64, i: i64) -> Option<usize> {
        self.pieces(n).into_iter().find(|p| p.0 == i).map(|p| p.2)
    }

    pub fn rank(&self, n: i64) -> usize {
        (self.a.0..self.a.1).map(|i| self.ra(i) * self.rb(n - i)).sum()
    }
}

impl fmt::Display for FiltComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.degrees().map(|k| format!("[{}]@{k}", self.split_object(k))).collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: BaseRing = BaseRing::PrimeField(2);
    const Z: BaseRing = BaseRing::Integers;

    #[test]
    fn cone_beta_shape() {
        let c = FiltComplex::cone_beta(Z);
        assert_eq!((c.lo(), c.hi()), (-1, 1));
        assert_eq!(c.object(-1), &[0]);
        assert_eq!(c.object(0), &[1]);
        assert_eq!(c.graded_diff(-1).entry(0, 0), Some((Z.from_i64(-1), 1)));
    }

    #[test]
    fn twist_constraint_is_enforced() {
        let bad = FiltComplex::new(Z, 0, vec![vec![1], vec![0]], vec![Matrix::identity(Z, 1)]);
        assert!(matches!(bad, Err(Error::TwistConstraint(_))));
    }

    #[test]
    fn unit_tensor_is_identity() {
        let c = FiltComplex::cone_beta(Z).direct_sum(&FiltComplex::twisted_unit(Z, 2, -3));
        assert_eq!(c.tensor(&FiltComplex::unit(Z)), c);
        assert_eq!(FiltComplex::unit(Z).tensor(&c), c);
    }

    #[test]
    fn twisted_units_multiply() {
        for m in -3..=3 {
            for n in -3..=3 {
                let t = FiltComplex::twisted_unit(Z, m, 1).tensor(&FiltComplex::twisted_unit(Z, n, 2));
                assert_eq!(t, FiltComplex::twisted_unit(Z, m + n, 3));
            }
        }
    }

    #[test]
    fn cone_beta_squared_tensor() {
        let c = FiltComplex::cone_beta(F2);
        let t = c.tensor(&c);
        assert_eq!((t.lo(), t.rank_at(-2), t.rank_at(-1), t.rank_at(0)), (-2, 1, 2, 1));
        assert!(t.pi_complex().is_acyclic());
        assert_eq!(t.gr_total().homology().total_free_rank(), 4);
    }

    #[test]
    fn dual_of_twisted_unit() {
        assert_eq!(FiltComplex::twisted_unit(Z, 3, 2).dual(), FiltComplex::twisted_unit(Z, -3, -2));
    }

    #[test]
    fn dual_of_cone_beta() {
        // transposing the single entry: R(-1) -> R(0) in degrees 0, 1
        let d = FiltComplex::cone_beta(Z).dual();
        assert_eq!((d.lo(), d.object(0), d.object(1)), (0, &[-1][..], &[0][..]));
        let expected = FiltComplex::cone_beta(Z).twist(-1).shift(-1);
        assert_eq!(d.objects, expected.objects);
        assert_eq!(d.lo(), expected.lo());
        assert_eq!(d.diff(0), expected.diff(0).scale(&Z.from_i64(-1)));
    }

    #[test]
    fn pi_and_gr_of_cone_beta() {
        let c = FiltComplex::cone_beta(Z);
        assert!(c.pi_complex().is_acyclic());
        let gr = c.gr_total();
        assert!(gr.diff(-1).is_zero());
        assert_eq!(gr.homology().total_free_rank(), 2);
        assert_eq!(c.gr_complex().keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn sigma_zero_is_a_section() {
        let free = FreeComplex::new(Z, -1, vec![2, 1], vec![Matrix::from_i64(Z, &[vec![2, 3]])]).unwrap();
        let s = FiltComplex::embed_degree_zero(&free);
        assert_eq!(s.pi_complex(), free);
        assert_eq!(s.gr_total(), free);
        assert_eq!(FiltComplex::embed_degree_zero(&FreeComplex::concentrated(Z, -5, 1)), FiltComplex::twisted_unit(Z, 0, 5));
    }

    #[test]
    fn shift_signs() {
        let c = FiltComplex::cone_beta(Z);
        assert_eq!(c.shift(1).diff(-2), Matrix::from_i64(Z, &[vec![1]]));
        assert_eq!(c.shift(2), FiltComplex::new(Z, -3, vec![vec![0], vec![1]], vec![Matrix::from_i64(Z, &[vec![-1]])]).unwrap());
    }
}
