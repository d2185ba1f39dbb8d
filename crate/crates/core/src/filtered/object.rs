use std::ops::Deref;

use super::seq::{annihilator, contained, coords, section, span, SeqMorphism, SeqObject};
use crate::error::{Error, Result};
use crate::linalg::{BaseRing, Matrix};

/// A finitely filtered separated module: a [`SeqObject`] with injective transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltObject(SeqObject);

impl Deref for FiltObject {
    type Target = SeqObject;

    fn deref(&self) -> &SeqObject {
        &self.0
    }
}

impl TryFrom<SeqObject> for FiltObject {
    type Error = Error;

    fn try_from(a: SeqObject) -> Result<Self> {
        if a.is_filtered() {
            Ok(FiltObject(a))
        } else {
            Err(Error::NotFiltered("a transition is not injective".into()))
        }
    }
}

impl FiltObject {
    pub fn new(ring: BaseRing, lo: i64, dims: Vec<usize>, trans: Vec<Matrix>) -> Result<Self> {
        SeqObject::new(ring, lo, dims, trans)?.try_into()
    }

    pub fn zero(ring: BaseRing) -> Self {
        FiltObject(SeqObject::zero(ring))
    }

    pub fn seq(&self) -> &SeqObject {
        &self.0
    }

    pub fn into_seq(self) -> SeqObject {
        self.0
    }

    /// The filtration `F_lo ⊇ … ⊇ F_hi` by column spans inside a common ambient space.
    ///
    /// `a_n` gets the independent columns of `chain[n - lo]`; the spans must decrease.
    pub fn from_subspace_chain(ring: BaseRing, lo: i64, chain: &[Matrix]) -> Result<Self> {
        if chain.is_empty() {
            return Ok(FiltObject::zero(ring));
        }
        let bases: Vec<Matrix> = chain.iter().map(span).collect();
        for w in bases.windows(2) {
            if !contained(&w[1], &w[0]) {
                return Err(Error::NotFiltered("subspace chain is not decreasing".into()));
            }
        }
        let dims = bases.iter().map(Matrix::cols).collect();
        let trans = bases.windows(2).map(|w| coords(&w[0], &w[1])).collect();
        FiltObject::new(ring, lo, dims, trans)
    }

    /// [`FiltObject::from_subspace_chain`] plus the ambient coordinates of the basis of `π`.
    pub fn from_chain_embedded(ring: BaseRing, lo: i64, chain: &[Matrix]) -> Result<(Self, Matrix)> {
        let a = FiltObject::from_subspace_chain(ring, lo, chain)?;
        let emb = match chain.first() {
            Some(c) => span(c),
            None => Matrix::zeros(ring, 0, 0),
        };
        Ok((a, emb))
    }

    /// `⊕ k(n_i)` with basis `e_i` in level `n` iff `n_i ≥ n`.
    pub fn split(ring: BaseRing, twists: &[i64]) -> Self {
        let (Some(&lo), Some(&hi)) = (twists.iter().min(), twists.iter().max()) else {
            return FiltObject::zero(ring);
        };
        let r = twists.len();
        let chain: Vec<Matrix> = (lo..=hi)
            .map(|n| {
                let keep: Vec<usize> = (0..r).filter(|&i| twists[i] >= n).collect();
                Matrix::identity(ring, r).columns(&keep)
            })
            .collect();
        FiltObject::from_subspace_chain(ring, lo, &chain).expect("split chain")
    }

    pub fn twisted_unit(ring: BaseRing, n: i64) -> Self {
        FiltObject::split(ring, &[n])
    }

    pub fn twist(&self, n: i64) -> Self {
        FiltObject(self.0.twist(n))
    }

    /// Image of level `n` inside `π(a)`.
    pub fn level(&self, n: i64) -> Matrix {
        self.to_pi(n)
    }

    /// The same filtration transported along an automorphism `g` of `π(a)`.
    pub fn transport(&self, g: &Matrix) -> Self {
        let chain: Vec<Matrix> = (self.lo()..=self.hi()).map(|n| g * &self.level(n)).collect();
        FiltObject::from_subspace_chain(self.ring(), self.lo(), &chain).expect("automorphism preserves chains")
    }

    /// Isomorphism test; over a field both sides split, so `gr_dims` decides.
    pub fn is_isomorphic(&self, other: &FiltObject) -> bool {
        self.gr_dims() == other.gr_dims()
    }

    /// `a ≅ ⊕ k(n)^{m_n}` with an explicit isomorphism from the split object.
    pub fn split_decompose(&self) -> (Vec<(i64, usize)>, FiltMorphism) {
        let ring = self.ring();
        let p = self.pi_dim();
        let mut chosen = Matrix::zeros(ring, p, 0);
        let mut twists = Vec::new();
        for n in (self.lo()..=self.hi()).rev() {
            let level = self.level(n);
            for j in 0..level.cols() {
                let cand = Matrix::hstack(ring, p, &[&chosen, &level.column(j)]);
                if cand.rank() > chosen.cols() {
                    chosen = cand;
                    twists.push(n);
                }
            }
        }
        let s = FiltObject::split(ring, &twists);
        let iso = FiltMorphism::from_pi(&s, self, &chosen).expect("adapted basis");
        let gd = s.gr_dims();
        (gd.0.into_iter().collect(), iso)
    }
}

/// A morphism of filtered objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltMorphism(SeqMorphism);

impl Deref for FiltMorphism {
    type Target = SeqMorphism;

    fn deref(&self) -> &SeqMorphism {
        &self.0
    }
}

impl FiltMorphism {
    pub fn new(source: &FiltObject, target: &FiltObject, comps: Vec<Matrix>) -> Result<Self> {
        Ok(FiltMorphism(SeqMorphism::new(source, target, comps)?))
    }

    pub fn from_seq(f: SeqMorphism) -> Result<Self> {
        if f.source().is_filtered() && f.target().is_filtered() {
            Ok(FiltMorphism(f))
        } else {
            Err(Error::NotFiltered("morphism between non-filtered objects".into()))
        }
    }

    /// The unique morphism with `π(f) = pi`, if `pi` respects the filtrations.
    pub fn from_pi(source: &FiltObject, target: &FiltObject, pi: &Matrix) -> Result<Self> {
        if pi.shape() != (target.pi_dim(), source.pi_dim()) {
            return Err(Error::Shape("π-matrix has the wrong shape".into()));
        }
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let mut comps = Vec::new();
        for n in lo..=hi {
            let img = pi * &source.level(n);
            match target.level(n).solve(&img)? {
                Some(c) => comps.push(c),
                None => return Err(Error::NotAMorphism(format!("level {n} is not mapped into level {n}"))),
            }
        }
        FiltMorphism::new(source, target, comps)
    }

    pub fn identity(a: &FiltObject) -> Self {
        FiltMorphism(SeqMorphism::identity(a))
    }

    pub fn zero(a: &FiltObject, b: &FiltObject) -> Self {
        FiltMorphism(SeqMorphism::zero(a, b))
    }

    pub fn seq(&self) -> &SeqMorphism {
        &self.0
    }

    pub fn source(&self) -> FiltObject {
        FiltObject(self.0.source().clone())
    }

    pub fn target(&self) -> FiltObject {
        FiltObject(self.0.target().clone())
    }

    pub fn compose(&self, first: &FiltMorphism) -> Result<FiltMorphism> {
        Ok(FiltMorphism(self.0.compose(&first.0)?))
    }

    pub fn add(&self, other: &FiltMorphism) -> Result<FiltMorphism> {
        FiltMorphism::from_pi(&self.source(), &self.target(), &(&self.pi() + &other.pi()))
    }

    /// Transport along automorphisms of `π(source)` and `π(target)`.
    pub fn transport(&self, gs: &Matrix, gt: &Matrix) -> Result<FiltMorphism> {
        let pi = &(gt * &self.pi()) * &gs.inverse().ok_or_else(|| Error::Shape("singular transport".into()))?;
        FiltMorphism::from_pi(&self.source().transport(gs), &self.target().transport(gt), &pi)
    }

    /// `gr_n(f) : a_n / a_{n+1} → b_n / b_{n+1}` in chosen quotient coordinates.
    pub fn gr(&self, n: i64) -> Matrix {
        let (a, b) = (self.0.source(), self.0.target());
        let qb = annihilator(&b.transition(n));
        let sa = section(&annihilator(&a.transition(n)));
        &(&qb * &self.at(n)) * &sa
    }
}

/// Basis of `Hom(a, b)`, as maps determined by their `π`-matrices.
pub fn hom_basis(a: &FiltObject, b: &FiltObject) -> Vec<FiltMorphism> {
    let ring = a.ring();
    let (pa, pb) = (a.pi_dim(), b.pi_dim());
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    // constraint rows: annihilator(b_n) · F · a_n = 0
    let mut blocks: Vec<Matrix> = Vec::new();
    for n in lo..=hi {
        let pbn = annihilator(&b.level(n));
        let an = a.level(n);
        if pbn.rows() == 0 || an.cols() == 0 {
            continue;
        }
        let mut block = Matrix::zeros(ring, pbn.rows() * an.cols(), pa * pb);
        for i in 0..pb {
            for j in 0..pa {
                // F = e_i e_j^T contributes pbn[:, i] · an[j, :]
                let contrib = &pbn.column(i) * &an.transpose().column(j).transpose();
                for r in 0..contrib.rows() {
                    for c in 0..contrib.cols() {
                        block.set(r * an.cols() + c, i * pa + j, contrib.get(r, c).clone());
                    }
                }
            }
        }
        blocks.push(block);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(ring, pa * pb, &refs);
    let null = system.nullspace();
    (0..null.cols())
        .map(|k| {
            let mut f = Matrix::zeros(ring, pb, pa);
            for i in 0..pb {
                for j in 0..pa {
                    f.set(i, j, null.get(i * pa + j, k).clone());
                }
            }
            FiltMorphism::from_pi(a, b, &f).expect("solution of the filtration constraints")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const F3: BaseRing = BaseRing::PrimeField(3);

    #[test]
    fn split_objects() {
        let a = FiltObject::split(F3, &[1, 0]);
        assert_eq!(a.dims(), &[2, 1]);
        assert_eq!(a.gr_dims().0, [(0, 1), (1, 1)].into());
        assert_eq!(FiltObject::split(F3, &[]), FiltObject::zero(F3));
        assert_eq!(FiltObject::twisted_unit(F3, 5).split_decompose().0, vec![(5, 1)]);
    }

    #[test]
    fn decomposition_is_an_iso() {
        let line = Matrix::from_i64(F3, &[vec![1], vec![1]]);
        let a = FiltObject::from_subspace_chain(F3, 0, &[Matrix::identity(F3, 2), line]).unwrap();
        let (mult, iso) = a.split_decompose();
        assert_eq!(mult, vec![(0, 1), (1, 1)]);
        assert!(iso.is_iso());
        assert_eq!(iso.target(), a);
    }

    #[test]
    fn beta_is_a_morphism_but_not_its_inverse() {
        let k0 = FiltObject::twisted_unit(F3, 0);
        let k1 = FiltObject::twisted_unit(F3, 1);
        let one = Matrix::identity(F3, 1);
        let beta = FiltMorphism::from_pi(&k0, &k1, &one).unwrap();
        assert!(!beta.is_iso());
        assert!(FiltMorphism::from_pi(&k1, &k0, &one).is_err());
    }

    #[test]
    fn hom_dimensions() {
        let k0 = FiltObject::twisted_unit(F3, 0);
        let k1 = FiltObject::twisted_unit(F3, 1);
        assert_eq!(hom_basis(&k0, &k1).len(), 1);
        assert_eq!(hom_basis(&k1, &k0).len(), 0);
        let a = FiltObject::split(F3, &[0, 1]);
        // End(k(0) ⊕ k(1)) is upper triangular: 3-dimensional
        assert_eq!(hom_basis(&a, &a).len(), 3);
    }

    #[test]
    fn transport_keeps_graded_dims() {
        let a = FiltObject::split(F3, &[0, 1, 1, 3]);
        let g = Matrix::from_i64(F3, &[vec![1, 1, 0, 0], vec![0, 1, 2, 0], vec![0, 0, 1, 1], vec![1, 0, 0, 1]]);
        assert!(g.inverse().is_some());
        assert_eq!(a.transport(&g).gr_dims(), a.gr_dims());
    }
}
