use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::complex::FiltComplex;
use super::split::respects_twists;
use crate::error::{Error, Result};
use crate::linalg::{smith_form, BaseRing, FreeComplex, Matrix, RingElem};

/// A degree-`k` element of the hom complex: maps `A^i → B^{i+k}` for every degree `i` of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub source: FiltComplex,
    pub target: FiltComplex,
    pub degree: i64,
    comps: Vec<Matrix>,
}

/// A degree-0 cycle of the hom complex.
pub type ChainMap = HomElement;

impl HomElement {
    pub fn new(source: &FiltComplex, target: &FiltComplex, degree: i64, comps: Vec<Matrix>) -> Result<Self> {
        if comps.len() != source.degrees().count() {
            return Err(Error::Shape(format!("expected {} components, got {}", source.degrees().count(), comps.len())));
        }
        for (i, m) in source.degrees().zip(&comps) {
            if m.ring() != source.ring() || !respects_twists(source.object(i), target.object(i + degree), m) {
                return Err(Error::NotAMorphism(format!("component in degree {i} is not a map of split objects")));
            }
        }
        Ok(HomElement { source: source.clone(), target: target.clone(), degree, comps })
    }

    /// A chain map; fails unless it commutes with the differentials.
    pub fn chain_map(source: &FiltComplex, target: &FiltComplex, comps: Vec<Matrix>) -> Result<ChainMap> {
        let f = HomElement::new(source, target, 0, comps)?;
        if !f.is_cycle() {
            return Err(Error::NotAChainMap("does not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub fn zero(source: &FiltComplex, target: &FiltComplex, degree: i64) -> Self {
        let comps = source.degrees().map(|i| Matrix::zeros(source.ring(), target.rank_at(i + degree), source.rank_at(i))).collect();
        HomElement { source: source.clone(), target: target.clone(), degree, comps }
    }

    pub fn identity(a: &FiltComplex) -> ChainMap {
        let comps = a.degrees().map(|i| Matrix::identity(a.ring(), a.rank_at(i))).collect();
        HomElement { source: a.clone(), target: a.clone(), degree: 0, comps }
    }

    pub fn ring(&self) -> BaseRing {
        self.source.ring()
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// Component `A^i → B^{i+degree}`.
    pub fn at(&self, i: i64) -> Matrix {
        let idx = i - self.source.lo();
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            Matrix::zeros(self.ring(), self.target.rank_at(i + self.degree), self.source.rank_at(i))
        }
    }

    /// `D(f) = d_B f - (-1)^k f d_A`.
    pub fn boundary(&self) -> HomElement {
        let k = self.degree;
        let s = self.ring().from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 });
        let comps = self
            .source
            .degrees()
            .map(|i| {
                let left = &self.target.diff(i + k) * &self.at(i);
                let right = &self.at(i + 1) * &self.source.diff(i);
                &left - &right.scale(&s)
            })
            .collect();
        HomElement { source: self.source.clone(), target: self.target.clone(), degree: k + 1, comps }
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn compose(&self, first: &HomElement) -> Result<HomElement> {
        if first.target != self.source {
            return Err(Error::Shape("composable maps must share the middle complex".into()));
        }
        let comps = first.source.degrees().map(|i| &self.at(i + first.degree) * &first.at(i)).collect();
        Ok(HomElement { source: first.source.clone(), target: self.target.clone(), degree: first.degree + self.degree, comps })
    }

    fn check_parallel(&self, other: &HomElement) {
        assert!(self.source == other.source && self.target == other.target && self.degree == other.degree, "maps are not parallel");
    }

    pub fn add(&self, other: &HomElement) -> HomElement {
        self.check_parallel(other);
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        HomElement { comps, ..self.clone() }
    }

    pub fn sub(&self, other: &HomElement) -> HomElement {
        self.check_parallel(other);
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        HomElement { comps, ..self.clone() }
    }

    pub fn scale(&self, c: &RingElem) -> HomElement {
        HomElement { comps: self.comps.iter().map(|m| m.scale(c)).collect(), ..self.clone() }
    }

    pub fn twist(&self, n: i64) -> HomElement {
        HomElement { source: self.source.twist(n), target: self.target.twist(n), degree: self.degree, comps: self.comps.clone() }
    }

    /// `f[k]` between shifted complexes, with the sign that keeps chain maps chain maps.
    pub fn shift(&self, k: i64) -> HomElement {
        HomElement { source: self.source.shift(k), target: self.target.shift(k), degree: self.degree, comps: self.comps.clone() }
    }

    pub fn with_ring(&self, ring: BaseRing) -> Result<HomElement> {
        let comps = self.comps.iter().map(|m| m.change_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ok(HomElement { source: self.source.with_ring(ring)?, target: self.target.with_ring(ring)?, degree: self.degree, comps })
    }

    /// Solve `self = D(h)`; for chain maps this is a nullhomotopy `f = d h + h d`.
    pub fn nullhomotopy(&self) -> Option<HomElement> {
        let hom = HomComplex::new(&self.source, &self.target);
        let d = hom.differential(self.degree - 1);
        let x = d.solve(&hom.to_vector(self)).expect("matching shapes")?;
        Some(hom.from_vector(self.degree - 1, &x, 0))
    }

    pub fn is_nullhomotopic(&self) -> bool {
        self.nullhomotopy().is_some()
    }

    pub fn is_homotopic_to(&self, other: &HomElement) -> bool {
        self.sub(other).is_nullhomotopic()
    }
}

/// Entry coordinates `(source degree, row, column)` of one hom degree.
type Coords = std::rc::Rc<Vec<(i64, usize, usize)>>;

/// The hom complex `Hom^k(A, B) = ⊕_i Hom(A^i, B^{i+k})` with coordinates on allowed entries.
pub struct HomComplex {
    a: FiltComplex,
    b: FiltComplex,
    cache: std::cell::RefCell<HashMap<i64, Coords>>,
}

impl HomComplex {
    pub fn new(a: &FiltComplex, b: &FiltComplex) -> Self {
        HomComplex { a: a.clone(), b: b.clone(), cache: Default::default() }
    }

    pub fn ring(&self) -> BaseRing {
        self.a.ring()
    }

    pub fn source(&self) -> &FiltComplex {
        &self.a
    }

    pub fn target(&self) -> &FiltComplex {
        &self.b
    }

    /// Coordinates `(i, row, col)` of `Hom^k`.
    pub fn coordinates(&self, k: i64) -> Coords {
        if let Some(v) = self.cache.borrow().get(&k) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in self.a.degrees() {
            let ta = self.a.object(i);
            let tb = self.b.object(i + k);
            for (r, &y) in tb.iter().enumerate() {
                for (c, &x) in ta.iter().enumerate() {
                    if y >= x {
                        out.push((i, r, c));
                    }
                }
            }
        }
        let v = std::rc::Rc::new(out);
        self.cache.borrow_mut().insert(k, v.clone());
        v
    }

    pub fn dim(&self, k: i64) -> usize {
        self.coordinates(k).len()
    }

    pub fn to_vector(&self, f: &HomElement) -> Matrix {
        let coords = self.coordinates(f.degree);
        let mut v = Matrix::zeros(self.ring(), coords.len(), 1);
        for (n, &(i, r, c)) in coords.iter().enumerate() {
            v.set(n, 0, f.at(i).get(r, c).clone());
        }
        v
    }

    /// Element of `Hom^k` from column `col` of a coordinate matrix.
    pub fn from_vector(&self, k: i64, v: &Matrix, col: usize) -> HomElement {
        let mut f = HomElement::zero(&self.a, &self.b, k);
        for (n, &(i, r, c)) in self.coordinates(k).iter().enumerate() {
            f.comps[(i - self.a.lo()) as usize].set(r, c, v.get(n, col).clone());
        }
        f
    }

    /// Matrix of `D: Hom^k → Hom^{k+1}`.
    pub fn differential(&self, k: i64) -> Matrix {
        let src = self.coordinates(k);
        let tgt = self.coordinates(k + 1);
        let index: HashMap<(i64, usize, usize), usize> = tgt.iter().enumerate().map(|(n, &x)| (x, n)).collect();
        let ring = self.ring();
        let s = ring.from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 });
        let mut out = Matrix::zeros(ring, tgt.len(), src.len());
        for (col, &(i, r, c)) in src.iter().enumerate() {
            // d_B ∘ e_{r,c} lands in degree i
            let db = self.b.diff(i + k);
            for r2 in 0..db.rows() {
                let x = db.get(r2, r);
                if !x.is_zero() {
                    let n = index[&(i, r2, c)];
                    let v = out.get(n, col) + x;
                    out.set(n, col, v);
                }
            }
            // -(-1)^k e_{r,c} ∘ d_A lands in degree i - 1
            let da = self.a.diff(i - 1);
            for c2 in 0..da.cols() {
                let x = da.get(c, c2);
                if !x.is_zero() {
                    let n = index[&(i - 1, r, c2)];
                    let v = out.get(n, col) - &(x * &s);
                    out.set(n, col, v);
                }
            }
        }
        out
    }

    pub fn degree_range(&self) -> std::ops::Range<i64> {
        if self.a.is_empty() || self.b.is_empty() {
            return 0..0;
        }
        (self.b.lo() - self.a.hi() + 1)..(self.b.hi() - self.a.lo())
    }

    pub fn as_free_complex(&self) -> FreeComplex {
        let range = self.degree_range();
        if range.is_empty() {
            return FreeComplex::zero(self.ring());
        }
        let ranks = range.clone().map(|k| self.dim(k)).collect();
        let diffs = range.clone().take(range.count() - 1).map(|k| self.differential(k)).collect();
        FreeComplex::new(self.ring(), self.degree_range().start, ranks, diffs).expect("hom complex squares to zero")
    }

    /// Basis of the chain maps `A → B` (degree-0 cycles), as coordinate columns.
    pub fn cycle_basis(&self) -> Matrix {
        self.differential(0).nullspace()
    }

    /// Representatives of generators of `H^0 = [A, B]`.
    pub fn h0_basis(&self) -> H0Basis {
        let z = self.cycle_basis();
        let bnd = self.differential(-1);
        let ring = self.ring();
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        if ring.is_field() {
            let mut span = bnd.clone();
            let mut rank = span.rank();
            for j in 0..z.cols() {
                let col = z.column(j);
                let next = Matrix::hstack(ring, span.rows(), &[&span, &col]);
                let r = next.rank();
                if r > rank {
                    free.push(self.from_vector(0, &col, 0));
                    span = next;
                    rank = r;
                }
            }
        } else {
            let x = z.solve(&bnd).expect("shapes").expect("boundaries are cycles");
            let s = smith_form(&x).expect("integers");
            let gens = &z * &s.u.inverse().expect("unimodular");
            for i in 0..gens.cols() {
                let g = self.from_vector(0, &gens, i);
                match s.invariants.get(i) {
                    None => free.push(g),
                    Some(d) if !d.is_one() => torsion.push((g, d.clone())),
                    Some(_) => {}
                }
            }
        }
        H0Basis { free, torsion }
    }
}

/// Generators of the homotopy classes of maps: free generators and torsion generators with their orders.
#[derive(Clone, Debug)]
pub struct H0Basis {
    pub free: Vec<ChainMap>,
    pub torsion: Vec<(ChainMap, BigInt)>,
}

impl H0Basis {
    pub fn all(&self) -> Vec<ChainMap> {
        self.free.iter().cloned().chain(self.torsion.iter().map(|t| t.0.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: BaseRing = BaseRing::Integers;
    const Q: BaseRing = BaseRing::Rationals;

    #[test]
    fn identity_of_contractible_cone_is_nullhomotopic() {
        let c = FiltComplex::cone_scalar(Z, -1);
        assert!(HomElement::identity(&c).is_nullhomotopic());
    }

    #[test]
    fn cone_beta_is_not_zero() {
        let c = FiltComplex::cone_beta(Z);
        assert!(!HomElement::identity(&c).is_nullhomotopic());
    }

    #[test]
    fn cone_two_depends_on_ring() {
        assert!(HomElement::identity(&FiltComplex::cone_scalar(Q, 2)).is_nullhomotopic());
        assert!(!HomElement::identity(&FiltComplex::cone_scalar(Z, 2)).is_nullhomotopic());
    }

    #[test]
    fn hom_complex_squares_to_zero() {
        let a = FiltComplex::cone_beta(Z).direct_sum(&FiltComplex::cone_scalar(Z, 3).twist(1));
        let b = a.tensor(&a);
        let h = HomComplex::new(&a, &b);
        let c = h.as_free_complex();
        assert!(!c.is_empty());
    }

    #[test]
    fn boundary_matches_differential_matrix() {
        let a = FiltComplex::cone_beta(Z).direct_sum(&FiltComplex::twisted_unit(Z, 0, 0));
        let h = HomComplex::new(&a, &a);
        for k in -2..=1 {
            let d = h.differential(k);
            for j in 0..h.dim(k) {
                let mut e = Matrix::zeros(Z, h.dim(k), 1);
                e.set(j, 0, Z.one());
                let f = h.from_vector(k, &e, 0);
                assert_eq!(h.to_vector(&f.boundary()), d.column(j));
            }
        }
    }

    #[test]
    fn torsion_classes_over_integers() {
        // [R(0), cone(2)(0)] = Z/2
        let h = HomComplex::new(&FiltComplex::unit(Z), &FiltComplex::cone_scalar(Z, 2));
        let b = h.h0_basis();
        assert!(b.free.is_empty());
        assert_eq!(b.torsion.len(), 1);
        assert_eq!(b.torsion[0].1, BigInt::from(2));
    }
}
