use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{BaseRing, Matrix, RingElem};

/// A split finite projective `⊕ R(n)^{r_n}`, stored as sorted `(twist, rank)` blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitObject {
    blocks: Vec<(i64, usize)>,
}

impl SplitObject {
    pub fn new(blocks: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut v: Vec<(i64, usize)> = blocks.into_iter().filter(|b| b.1 > 0).collect();
        v.sort_by_key(|b| b.0);
        let mut merged: Vec<(i64, usize)> = Vec::new();
        for (t, r) in v {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += r,
                _ => merged.push((t, r)),
            }
        }
        SplitObject { blocks: merged }
    }

    pub fn zero() -> Self {
        SplitObject::default()
    }

    pub fn twisted_unit(n: i64) -> Self {
        SplitObject { blocks: vec![(n, 1)] }
    }

    /// Collect a list of basis twists; `perm[i]` is the sorted position of basis element `i`.
    pub fn from_twists(twists: &[i64]) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..twists.len()).collect();
        order.sort_by_key(|&i| twists[i]);
        let mut perm = vec![0; twists.len()];
        for (pos, &i) in order.iter().enumerate() {
            perm[i] = pos;
        }
        (SplitObject::new(twists.iter().map(|&t| (t, 1))), perm)
    }

    pub fn blocks(&self) -> &[(i64, usize)] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Twist of every basis element, in block order.
    pub fn basis(&self) -> Vec<i64> {
        self.blocks.iter().flat_map(|&(t, r)| std::iter::repeat_n(t, r)).collect()
    }

    pub fn twist(&self, n: i64) -> Self {
        SplitObject { blocks: self.blocks.iter().map(|&(t, r)| (t + n, r)).collect() }
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.blocks.first().map(|b| b.0)
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.blocks.last().map(|b| b.0)
    }
}

impl fmt::Display for SplitObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|&(t, r)| if r == 1 { format!("R({t})") } else { format!("R({t})^{r}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether `m` is a valid morphism between split objects with the given basis twists:
/// entry `(i, j)` stands for `m[i][j] * β^(target[i] - source[j])`, which needs a nonnegative exponent.
pub fn respects_twists(source: &[i64], target: &[i64], m: &Matrix) -> bool {
    m.shape() == (target.len(), source.len()) && (0..target.len()).all(|i| (0..source.len()).all(|j| target[i] >= source[j] || m.get(i, j).is_zero()))
}

/// A morphism `⊕R(source_j) → ⊕R(target_i)` over `R[β]` with homogeneous entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: Vec<i64>,
    target: Vec<i64>,
    coeffs: Matrix,
}

impl GradedMatrix {
    pub fn new(source: Vec<i64>, target: Vec<i64>, coeffs: Matrix) -> Result<Self> {
        if coeffs.shape() != (target.len(), source.len()) {
            return Err(Error::Shape(format!(
                "{}x{} coefficients for a map of ranks {} -> {}",
                coeffs.rows(),
                coeffs.cols(),
                source.len(),
                target.len()
            )));
        }
        for i in 0..target.len() {
            for j in 0..source.len() {
                if target[i] < source[j] && !coeffs.get(i, j).is_zero() {
                    return Err(Error::TwistConstraint(format!("entry ({i},{j}) maps R({}) to R({})", source[j], target[i])));
                }
            }
        }
        Ok(GradedMatrix { source, target, coeffs })
    }

    pub fn zero(ring: BaseRing, source: Vec<i64>, target: Vec<i64>) -> Self {
        let coeffs = Matrix::zeros(ring, target.len(), source.len());
        GradedMatrix { source, target, coeffs }
    }

    pub fn identity(ring: BaseRing, basis: Vec<i64>) -> Self {
        let coeffs = Matrix::identity(ring, basis.len());
        GradedMatrix { source: basis.clone(), target: basis, coeffs }
    }

    /// `β^n` on a basis, as a map into the `n`-fold twist.
    pub fn beta_power(ring: BaseRing, basis: Vec<i64>, n: i64) -> Result<Self> {
        let target = basis.iter().map(|t| t + n).collect();
        GradedMatrix::new(basis.clone(), target, Matrix::identity(ring, basis.len()))
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Matrix {
        self.coeffs
    }

    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.target[i] - self.source[j]
    }

    /// Coefficient of `β^e` in entry `(i, j)`, or `None` when the entry is zero.
    pub fn entry(&self, i: usize, j: usize) -> Option<(RingElem, i64)> {
        let c = self.coeffs.get(i, j);
        (!c.is_zero()).then(|| (c.clone(), self.exponent(i, j)))
    }

    pub fn compose(&self, first: &GradedMatrix) -> Result<GradedMatrix> {
        if first.target != self.source {
            return Err(Error::Shape("composable maps must share the middle object".into()));
        }
        Ok(GradedMatrix { source: first.source.clone(), target: self.target.clone(), coeffs: self.coeffs.try_mul(&first.coeffs)? })
    }

    /// Image under `β ↦ 1`.
    pub fn pi(&self) -> Matrix {
        self.coeffs.clone()
    }

    /// Image under `β ↦ 0`: only exponent-zero entries survive.
    pub fn gr(&self) -> Matrix {
        let mut m = self.coeffs.clone();
        for i in 0..self.target.len() {
            for j in 0..self.source.len() {
                if self.exponent(i, j) != 0 {
                    m.set(i, j, m.ring().zero());
                }
            }
        }
        m
    }

    pub fn twist(&self, n: i64) -> GradedMatrix {
        GradedMatrix {
            source: self.source.iter().map(|t| t + n).collect(),
            target: self.target.iter().map(|t| t + n).collect(),
            coeffs: self.coeffs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_are_sorted_and_merged() {
        let s = SplitObject::new([(2, 1), (0, 1), (2, 3), (1, 0)]);
        assert_eq!(s.blocks(), &[(0, 1), (2, 4)]);
        assert_eq!(s.rank(), 5);
        assert_eq!(s.to_string(), "R(0) + R(2)^4");
    }

    #[test]
    fn from_twists_permutation() {
        let (s, perm) = SplitObject::from_twists(&[3, -1, 3, 0]);
        assert_eq!(s.basis(), vec![-1, 0, 3, 3]);
        assert_eq!(perm, vec![2, 0, 3, 1]);
    }

    #[test]
    fn beta_has_exponent_one() {
        let z = BaseRing::Integers;
        let b = GradedMatrix::beta_power(z, vec![0], 1).unwrap();
        assert_eq!(b.entry(0, 0), Some((z.one(), 1)));
        assert!(b.gr().is_zero());
        assert_eq!(b.pi(), Matrix::identity(z, 1));
    }

    #[test]
    fn negative_exponents_rejected() {
        let q = BaseRing::Rationals;
        let r = GradedMatrix::new(vec![1], vec![0], Matrix::identity(q, 1));
        assert!(matches!(r, Err(Error::TwistConstraint(_))));
        assert!(GradedMatrix::new(vec![1], vec![0], Matrix::zeros(q, 1, 1)).is_ok());
    }

    #[test]
    fn composition_adds_exponents() {
        let f2 = BaseRing::PrimeField(2);
        let a = GradedMatrix::beta_power(f2, vec![0], 2).unwrap();
        let b = GradedMatrix::beta_power(f2, vec![2], 3).unwrap();
        assert_eq!(b.compose(&a).unwrap().entry(0, 0), Some((f2.one(), 5)));
    }
}
