use super::complex::{FiltComplex, TensorLayout};
use super::maps::{ChainMap, HomElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `cone(f)^k = A^{k+1} ⊕ B^k` with differential `[[-d_A, 0], [-f, d_B]]`.
pub fn cone(f: &ChainMap) -> Result<FiltComplex> {
    if f.degree != 0 || !f.is_cycle() {
        return Err(Error::NotAChainMap("cone needs a degree-0 chain map".into()));
    }
    let (a, b) = (&f.source, &f.target);
    let ring = a.ring();
    if a.is_empty() {
        return Ok(b.clone());
    }
    let lo = if b.is_empty() { a.lo() - 1 } else { (a.lo() - 1).min(b.lo()) };
    let hi = if b.is_empty() { a.hi() - 1 } else { (a.hi() - 1).max(b.hi()) };
    let objects: Vec<Vec<i64>> = (lo..hi).map(|k| [a.object(k + 1), b.object(k)].concat()).collect();
    let minus = ring.from_i64(-1);
    let diffs = (lo..hi - 1)
        .map(|k| {
            let (ra1, ra2) = (a.rank_at(k + 1), a.rank_at(k + 2));
            let (rb0, rb1) = (b.rank_at(k), b.rank_at(k + 1));
            let mut d = Matrix::zeros(ring, ra2 + rb1, ra1 + rb0);
            d.paste(0, 0, &a.diff(k + 1).scale(&minus));
            d.paste(ra2, 0, &f.at(k + 1).scale(&minus));
            d.paste(ra2, ra1, &b.diff(k));
            d
        })
        .collect();
    FiltComplex::new(ring, lo, objects, diffs)
}

/// The canonical triangle `A → B → cone(f) → A[1]`: returns `(B → cone(f), cone(f) → A[1])`.
pub fn triangle_maps(f: &ChainMap) -> Result<(ChainMap, ChainMap)> {
    let c = cone(f)?;
    let (a, b) = (&f.source, &f.target);
    let ring = a.ring();
    let i_comps = b
        .degrees()
        .map(|k| {
            let mut m = Matrix::zeros(ring, c.rank_at(k), b.rank_at(k));
            m.paste(a.rank_at(k + 1), 0, &Matrix::identity(ring, b.rank_at(k)));
            m
        })
        .collect();
    let a1 = a.shift(1);
    let p_comps = c
        .degrees()
        .map(|k| {
            let mut m = Matrix::zeros(ring, a1.rank_at(k), c.rank_at(k));
            m.paste(0, 0, &Matrix::identity(ring, a.rank_at(k + 1)));
            m
        })
        .collect();
    Ok((HomElement::chain_map(b, &c, i_comps)?, HomElement::chain_map(&c, &a1, p_comps)?))
}

/// Injections and projections of `A ⊕ B`.
pub struct SumMaps {
    pub sum: FiltComplex,
    pub inj: (ChainMap, ChainMap),
    pub proj: (ChainMap, ChainMap),
}

pub fn direct_sum_maps(a: &FiltComplex, b: &FiltComplex) -> SumMaps {
    let sum = a.direct_sum(b);
    let ring = a.ring();
    let block = |k: i64, first: bool| {
        let (ra, rb) = (a.rank_at(k), b.rank_at(k));
        let mut m = Matrix::zeros(ring, ra + rb, if first { ra } else { rb });
        if first {
            m.paste(0, 0, &Matrix::identity(ring, ra));
        } else {
            m.paste(ra, 0, &Matrix::identity(ring, rb));
        }
        m
    };
    let ia = HomElement::new(a, &sum, 0, a.degrees().map(|k| block(k, true)).collect()).unwrap();
    let ib = HomElement::new(b, &sum, 0, b.degrees().map(|k| block(k, false)).collect()).unwrap();
    let pa = HomElement::new(&sum, a, 0, sum.degrees().map(|k| block(k, true).transpose()).collect()).unwrap();
    let pb = HomElement::new(&sum, b, 0, sum.degrees().map(|k| block(k, false).transpose()).collect()).unwrap();
    SumMaps { sum, inj: (ia, ib), proj: (pa, pb) }
}

/// `f ⊕ g : A ⊕ C → B ⊕ D`.
pub fn direct_sum_of_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let s = f.source.direct_sum(&g.source);
    let t = f.target.direct_sum(&g.target);
    let comps = s.degrees().map(|k| Matrix::block_diag(s.ring(), &[&f.at(k), &g.at(k)])).collect();
    HomElement::new(&s, &t, 0, comps).expect("sum of maps")
}

/// `β : A → A(1)`, the identity on every underlying basis.
pub fn beta_map(a: &FiltComplex) -> ChainMap {
    let target = a.twist(1);
    let comps = a.degrees().map(|k| Matrix::identity(a.ring(), a.rank_at(k))).collect();
    HomElement::chain_map(a, &target, comps).expect("β is natural")
}

/// `f ⊗ g : A ⊗ C → B ⊗ D` for chain maps.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let s = f.source.tensor(&g.source);
    let t = f.target.tensor(&g.target);
    let ls = TensorLayout::new(&f.source, &g.source);
    let lt = TensorLayout::new(&f.target, &g.target);
    let comps = s
        .degrees()
        .map(|n| {
            let mut m = Matrix::zeros(s.ring(), t.rank_at(n), s.rank_at(n));
            for (i, j, col) in ls.pieces(n) {
                if let Some(row) = lt.offset(n, i) {
                    m.paste(row, col, &f.at(i).kron(&g.at(j)));
                }
            }
            m
        })
        .collect();
    HomElement::new(&s, &t, 0, comps).expect("tensor of maps")
}

/// Symmetry `A ⊗ B → B ⊗ A`, `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
pub fn symmetry(a: &FiltComplex, b: &FiltComplex) -> ChainMap {
    let s = a.tensor(b);
    let t = b.tensor(a);
    let ls = TensorLayout::new(a, b);
    let lt = TensorLayout::new(b, a);
    let comps = s
        .degrees()
        .map(|n| {
            let mut m = Matrix::zeros(s.ring(), t.rank_at(n), s.rank_at(n));
            for (i, j, col) in ls.pieces(n) {
                let row = lt.offset(n, j).expect("matching piece");
                let sign = if (i * j).rem_euclid(2) == 0 { s.ring().one() } else { s.ring().from_i64(-1) };
                let (ra, rb) = (a.rank_at(i), b.rank_at(j));
                for x in 0..ra {
                    for y in 0..rb {
                        m.set(row + y * ra + x, col + x * rb + y, sign.clone());
                    }
                }
            }
            m
        })
        .collect();
    HomElement::chain_map(&s, &t, comps).expect("symmetry is a chain map")
}

/// Evaluation `A ⊗ A^∨ → R(0)` pairing each basis element with its dual.
pub fn evaluation(a: &FiltComplex) -> ChainMap {
    let d = a.dual();
    let s = a.tensor(&d);
    let unit = FiltComplex::unit(a.ring());
    let layout = TensorLayout::new(a, &d);
    let comps = s
        .degrees()
        .map(|n| {
            let mut m = Matrix::zeros(s.ring(), unit.rank_at(n), s.rank_at(n));
            if n == 0 {
                for (i, _, col) in layout.pieces(0) {
                    let r = a.rank_at(i);
                    for x in 0..r {
                        m.set(0, col + x * r + x, s.ring().one());
                    }
                }
            }
            m
        })
        .collect();
    HomElement::chain_map(&s, &unit, comps).expect("evaluation is a chain map")
}

/// The isomorphism `A → (A^∨)^∨`, multiplication by `(-1)^k` in degree `k`.
pub fn double_dual_iso(a: &FiltComplex) -> (ChainMap, ChainMap) {
    let dd = a.dual().dual();
    let comps: Vec<Matrix> =
        a.degrees().map(|k| Matrix::identity(a.ring(), a.rank_at(k)).scale(&a.ring().from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 }))).collect();
    let f = HomElement::chain_map(a, &dd, comps.clone()).expect("double dual");
    let g = HomElement::chain_map(&dd, a, comps).expect("double dual");
    (f, g)
}

/// Internal hom `A^∨ ⊗ B`.
pub fn internal_hom(a: &FiltComplex, b: &FiltComplex) -> FiltComplex {
    a.dual().tensor(b)
}
