//! Presheaves on Z as graded modules over `R[β]` with `β` of degree `-1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::filtered::SeqObject;
use crate::linalg::{BaseRing, Matrix};

/// `M = ⊕ M_n` with `β_n : M_n → M_{n-1}`; below the window `M_n = M_lo` and `β` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBetaModule {
    pub ring: BaseRing,
    /// component ranks on the window
    pub components: BTreeMap<i64, usize>,
    /// `β_n` keyed by its source degree `n`
    pub beta: BTreeMap<i64, Matrix>,
}

impl GradedBetaModule {
    pub fn new(ring: BaseRing, components: BTreeMap<i64, usize>, beta: BTreeMap<i64, Matrix>) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (components.keys().next(), components.keys().next_back()) else {
            return Err(Error::Shape("empty window".into()));
        };
        if components.len() as i64 != hi - lo + 1 {
            return Err(Error::Shape("window has gaps".into()));
        }
        for n in lo + 1..=hi {
            let b = beta.get(&n).ok_or_else(|| Error::Shape(format!("missing β in degree {n}")))?;
            if b.shape() != (components[&(n - 1)], components[&n]) {
                return Err(Error::Shape(format!("β in degree {n} has the wrong shape")));
            }
        }
        if beta.len() as i64 != hi - lo {
            return Err(Error::Shape("β outside the window".into()));
        }
        Ok(GradedBetaModule { ring, components, beta })
    }

    /// Free on one generator in degree `d`.
    pub fn free(ring: BaseRing, d: i64) -> Self {
        GradedBetaModule { ring, components: [(d, 1)].into(), beta: BTreeMap::new() }
    }

    /// `R[β]/β^e` on a generator in degree `d`: components `d - e + 1 ..= d`.
    pub fn torsion(ring: BaseRing, d: i64, e: usize) -> Self {
        let lo = d - e as i64;
        let components: BTreeMap<i64, usize> = (lo..=d).map(|n| (n, usize::from(n > lo))).collect();
        let beta = (lo + 1..=d).map(|n| (n, Matrix::identity(ring, 1).select(&(0..components[&(n - 1)]).collect::<Vec<_>>(), &[0]))).collect();
        GradedBetaModule { ring, components, beta }
    }

    pub fn lo(&self) -> i64 {
        *self.components.keys().next().expect("nonempty")
    }

    pub fn hi(&self) -> i64 {
        *self.components.keys().next_back().expect("nonempty")
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo() {
            self.components[&self.lo()]
        } else {
            self.components.get(&n).copied().unwrap_or(0)
        }
    }

    /// `β_n : M_n → M_{n-1}` for any `n`.
    pub fn beta_at(&self, n: i64) -> Matrix {
        if n <= self.lo() {
            Matrix::identity(self.ring, self.rank(n))
        } else if n > self.hi() {
            Matrix::zeros(self.ring, self.rank(n - 1), 0)
        } else {
            self.beta[&n].clone()
        }
    }
}

pub fn seq_to_graded(a: &SeqObject) -> GradedBetaModule {
    let components = (a.lo()..=a.hi()).map(|n| (n, a.dim(n))).collect();
    let beta = (a.lo() + 1..=a.hi()).map(|n| (n, a.transition(n - 1))).collect();
    GradedBetaModule { ring: a.ring(), components, beta }
}

pub fn graded_to_seq(m: &GradedBetaModule) -> SeqObject {
    let dims = m.components.values().copied().collect();
    let trans = m.beta.values().cloned().collect();
    SeqObject::new(m.ring, m.lo(), dims, trans).expect("same data")
}

/// `dim (M ⊗_{R[β]} N)_n`: `⊕_{p+q=n} M_p ⊗ N_q` modulo `βx ⊗ y - x ⊗ βy`.
pub fn graded_tensor_dim(m: &GradedBetaModule, n_: &GradedBetaModule, n: i64) -> usize {
    let ring = m.ring;
    // p ranges where N_{n-p} can be nonzero and M_p can be nonzero
    let ps: Vec<i64> = (n - n_.hi()..=m.hi()).collect();
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for &p in &ps {
        offsets.insert(p, total);
        total += m.rank(p) * n_.rank(n - p);
    }
    let mut rels: Vec<Matrix> = Vec::new();
    // x ∈ M_{p+1}, y ∈ N_{n-p}: βx ⊗ y ∈ M_p ⊗ N_{n-p}, x ⊗ βy ∈ M_{p+1} ⊗ N_{n-p-1}
    for &p in &ps {
        let src = m.rank(p + 1) * n_.rank(n - p);
        if src == 0 {
            continue;
        }
        let mut r = Matrix::zeros(ring, total, src);
        let left = m.beta_at(p + 1).kron(&Matrix::identity(ring, n_.rank(n - p)));
        r.paste(offsets[&p], 0, &left);
        if let Some(&o) = offsets.get(&(p + 1)) {
            let right = Matrix::identity(ring, m.rank(p + 1)).kron(&n_.beta_at(n - p));
            r.paste(o, 0, &-&right);
        }
        rels.push(r);
    }
    let refs: Vec<&Matrix> = rels.iter().collect();
    total - Matrix::hstack(ring, total, &refs).rank()
}

/// `dim (a ⊠ b)_n = colim_{p+q ≥ n} a_p ⊗ b_q`, computed over the full finite diagram.
pub fn day_convolution_dim(a: &SeqObject, b: &SeqObject, n: i64) -> usize {
    let ring = a.ring();
    let mut nodes = BTreeMap::new();
    let mut total = 0;
    for p in n - b.hi()..=a.hi() {
        for q in n - p..=b.hi() {
            let d = a.dim(p) * b.dim(q);
            nodes.insert((p, q), total);
            total += d;
        }
    }
    let mut rels: Vec<Matrix> = Vec::new();
    for (&(p, q), &off) in &nodes {
        let d = a.dim(p) * b.dim(q);
        if d == 0 {
            continue;
        }
        // arrows (p,q) → (p-1,q) and (p,q) → (p,q-1)
        for (tgt, map) in [
            ((p - 1, q), a.transition(p - 1).kron(&Matrix::identity(ring, b.dim(q)))),
            ((p, q - 1), Matrix::identity(ring, a.dim(p)).kron(&b.transition(q - 1))),
        ] {
            let Some(&toff) = nodes.get(&tgt) else { continue };
            let mut r = Matrix::zeros(ring, total, d);
            r.paste(off, 0, &Matrix::identity(ring, d));
            r.paste(toff, 0, &-&map);
            rels.push(r);
        }
    }
    let refs: Vec<&Matrix> = rels.iter().collect();
    total - Matrix::hstack(ring, total, &refs).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered::FiltObject;

    const F5: BaseRing = BaseRing::PrimeField(5);

    #[test]
    fn unit_is_free_in_degree_zero() {
        let m = seq_to_graded(&FiltObject::twisted_unit(F5, 0));
        assert_eq!(m, GradedBetaModule::free(F5, 0));
        assert_eq!(graded_to_seq(&GradedBetaModule::free(F5, 3)), *FiltObject::twisted_unit(F5, 3).seq());
    }

    #[test]
    fn torsion_is_one_level() {
        let s = graded_to_seq(&GradedBetaModule::torsion(F5, 0, 1));
        assert_eq!((s.lo(), s.dims()), (-1, &[0, 1][..]));
        assert_eq!(s.gr_dims().0, [(0, 1)].into());
    }

    #[test]
    fn zero_transition_gives_square_zero_beta() {
        let a = SeqObject::new(F5, 0, vec![1, 1, 1], vec![Matrix::zeros(F5, 1, 1), Matrix::zeros(F5, 1, 1)]).unwrap();
        let m = seq_to_graded(&a);
        assert!((&m.beta_at(1) * &m.beta_at(2)).is_zero());
        assert_eq!(graded_to_seq(&m), a);
        assert_eq!(GradedBetaModule::new(F5, m.components.clone(), m.beta.clone()).unwrap(), m);
    }

    #[test]
    fn tensor_dims_agree_on_units() {
        let a = FiltObject::twisted_unit(F5, 1);
        let b = FiltObject::twisted_unit(F5, -2);
        let (ma, mb) = (seq_to_graded(&a), seq_to_graded(&b));
        for n in -4..=2 {
            let expected = usize::from(n <= -1);
            assert_eq!(day_convolution_dim(&a, &b, n), expected, "n = {n}");
            assert_eq!(graded_tensor_dim(&ma, &mb, n), expected, "n = {n}");
        }
    }
}
