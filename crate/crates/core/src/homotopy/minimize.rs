use std::collections::BTreeSet;

use serde::Serialize;

use super::complex::FiltComplex;
use super::maps::{ChainMap, HomElement};
use crate::error::{Error, Result};
use crate::linalg::{BaseRing, Matrix, RingElem};

/// A complex together with mutually inverse homotopy equivalences to the original.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub complex: FiltComplex,
    /// original → reduced
    pub forward: ChainMap,
    /// reduced → original
    pub backward: ChainMap,
}

struct Work {
    ring: BaseRing,
    lo: i64,
    objs: Vec<Vec<i64>>,
    diffs: Vec<Matrix>,
    f: Vec<Matrix>,
    g: Vec<Matrix>,
}

fn without(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&x| x != skip).collect()
}

impl Work {
    fn diff(&self, i: isize) -> Option<&Matrix> {
        (i >= 0).then(|| self.diffs.get(i as usize)).flatten()
    }

    fn find_pivot(&self) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for j in 0..d.cols() {
                for i in 0..d.rows() {
                    if self.objs[k + 1][i] == self.objs[k][j] && d.get(i, j).is_unit() {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    /// Cancel the unit entry `φ = d^k[i][j]` (Gaussian elimination on the complex).
    fn cancel(&mut self, k: usize, i: usize, j: usize) {
        let ring = self.ring;
        let d = self.diffs[k].clone();
        let (rows, cols) = d.shape();
        let phi_inv = d.get(i, j).inverse().expect("unit pivot");
        let rest_rows = without(rows, i);
        let rest_cols = without(cols, j);
        let gamma = d.select(&rest_rows, &[j]);
        let delta = d.select(&[i], &rest_cols);
        let eps = d.select(&rest_rows, &rest_cols);
        let gp = gamma.scale(&phi_inv);
        self.diffs[k] = &eps - &(&gp * &delta);
        if let Some(prev) = self.diff(k as isize - 1).cloned() {
            let all: Vec<usize> = (0..prev.cols()).collect();
            self.diffs[k - 1] = prev.select(&rest_cols, &all);
        }
        if let Some(next) = self.diffs.get(k + 1).cloned() {
            let all: Vec<usize> = (0..next.rows()).collect();
            self.diffs[k + 1] = next.select(&all, &rest_rows);
        }

        let all_cols: Vec<usize> = (0..cols).collect();
        let all_rows: Vec<usize> = (0..rows).collect();
        let fk = Matrix::identity(ring, cols).select(&rest_cols, &all_cols);
        let mut fk1 = Matrix::identity(ring, rows).select(&rest_rows, &all_rows);
        let neg_gp = -&gp;
        for r in 0..rest_rows.len() {
            fk1.set(r, i, neg_gp.get(r, 0).clone());
        }
        let mut gk = Matrix::identity(ring, cols).select(&all_cols, &rest_cols);
        let pd = delta.scale(&phi_inv);
        for c in 0..rest_cols.len() {
            gk.set(j, c, -pd.get(0, c));
        }
        let gk1 = Matrix::identity(ring, rows).select(&all_rows, &rest_rows);

        self.f[k] = &fk * &self.f[k];
        self.f[k + 1] = &fk1 * &self.f[k + 1];
        self.g[k] = &self.g[k] * &gk;
        self.g[k + 1] = &self.g[k + 1] * &gk1;
        self.objs[k].remove(j);
        self.objs[k + 1].remove(i);
    }
}

/// Cancel every unit entry between equal twists. Over a field the result has no
/// exponent-zero entries at all; over Z only `±1` entries are cancelled.
pub fn minimize(a: &FiltComplex) -> Reduction {
    let ring = a.ring();
    let degs: Vec<i64> = a.degrees().collect();
    let mut w = Work {
        ring,
        lo: a.lo(),
        objs: degs.iter().map(|&k| a.object(k).to_vec()).collect(),
        diffs: degs.iter().take(degs.len().saturating_sub(1)).map(|&k| a.diff(k)).collect(),
        f: degs.iter().map(|&k| Matrix::identity(ring, a.rank_at(k))).collect(),
        g: degs.iter().map(|&k| Matrix::identity(ring, a.rank_at(k))).collect(),
    };
    while let Some((k, i, j)) = w.find_pivot() {
        w.cancel(k, i, j);
    }
    let complex = FiltComplex::new(ring, w.lo, w.objs.clone(), w.diffs.clone()).expect("reduction preserves d∘d = 0");
    let forward = HomElement::new(a, &complex, 0, w.f.clone()).expect("forward map");
    let back: Vec<Matrix> = complex.degrees().map(|k| w.g[(k - w.lo) as usize].clone()).collect();
    let backward = HomElement::new(&complex, a, 0, back).expect("backward map");
    debug_assert!(forward.is_cycle() && backward.is_cycle());
    Reduction { complex, forward, backward }
}

pub fn is_minimal(a: &FiltComplex) -> bool {
    a.degrees().all(|k| {
        let d = a.graded_diff(k);
        (0..d.target().len()).all(|i| (0..d.source().len()).all(|j| d.exponent(i, j) != 0 || !d.coeffs().get(i, j).is_unit()))
    })
}

/// An indecomposable summand of a complex over `k[β]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Summand {
    /// `R(twist)` in one degree.
    Free { degree: i64, twist: i64 },
    /// `R(source) --β^e--> R(target)` in degrees `degree, degree + 1`, `e = target - source ≥ 1`.
    Cone { degree: i64, source: i64, target: i64 },
}

impl Summand {
    pub fn complex(&self, ring: BaseRing) -> FiltComplex {
        match *self {
            Summand::Free { degree, twist } => FiltComplex::twisted_unit(ring, twist, -degree),
            Summand::Cone { degree, source, target } => {
                FiltComplex::new(ring, degree, vec![vec![source], vec![target]], vec![Matrix::identity(ring, 1)]).unwrap()
            }
        }
    }

    pub fn exponent(&self) -> i64 {
        match *self {
            Summand::Free { .. } => 0,
            Summand::Cone { source, target, .. } => target - source,
        }
    }

    fn slots(&self) -> Vec<i64> {
        match *self {
            Summand::Free { degree, .. } => vec![degree],
            Summand::Cone { degree, .. } => vec![degree, degree + 1],
        }
    }

    pub fn shifted(&self, dk: i64, dt: i64) -> Summand {
        match *self {
            Summand::Free { degree, twist } => Summand::Free { degree: degree + dk, twist: twist + dt },
            Summand::Cone { degree, source, target } => Summand::Cone { degree: degree + dk, source: source + dt, target: target + dt },
        }
    }
}

/// Splitting of a complex over a field into indecomposables, with reassembly maps.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// sorted summands
    pub summands: Vec<Summand>,
    /// the direct sum of the summands in order
    pub sum: FiltComplex,
    pub to_sum: ChainMap,
    pub from_sum: ChainMap,
}

/// Decompose into shifted twisted units and cones of `β^e`, `e ≥ 1` (graded Smith form over `k[β]`).
pub fn decompose_field(a: &FiltComplex) -> Result<Decomposition> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let red = minimize(a);
    let m = &red.complex;
    let lo = m.lo();
    let n = m.degrees().count();
    let mut s: Vec<Matrix> = m.degrees().map(|k| Matrix::identity(ring, m.rank_at(k))).collect();
    let mut sinv = s.clone();
    let mut targets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    // (summand, position per slot degree)
    let mut found: Vec<(Summand, Vec<usize>)> = Vec::new();
    for idx in 0..n {
        let k = lo + idx as i64;
        let src = m.object(k);
        let tgt = m.object(k + 1);
        let mut nmat = &m.diff(k) * &s[idx];
        let free: Vec<usize> = (0..src.len()).filter(|j| !targets[idx].contains(j)).collect();
        debug_assert!(targets[idx].iter().all(|&j| (0..tgt.len()).all(|i| nmat.get(i, j).is_zero())));
        let mut used_rows = BTreeSet::new();
        let mut used_cols = BTreeSet::new();
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for &j in free.iter().filter(|j| !used_cols.contains(*j)) {
                for i in (0..tgt.len()).filter(|i| !used_rows.contains(i)) {
                    if !nmat.get(i, j).is_zero() {
                        let e = tgt[i] - src[j];
                        if best.is_none_or(|b| e < b.0) {
                            best = Some((e, i, j));
                        }
                    }
                }
            }
            let Some((_, i, j)) = best else { break };
            let piv_inv = nmat.get(i, j).inverse().expect("field");
            for i2 in 0..tgt.len() {
                if i2 == i || nmat.get(i2, j).is_zero() {
                    continue;
                }
                let c = nmat.get(i2, j) * &piv_inv;
                row_axpy(&mut nmat, i2, i, &c);
                if idx + 1 < n {
                    col_axpy(&mut s[idx + 1], i, i2, &-&c);
                    row_axpy(&mut sinv[idx + 1], i2, i, &c);
                }
            }
            for &j2 in &free {
                if j2 == j || nmat.get(i, j2).is_zero() {
                    continue;
                }
                let c = nmat.get(i, j2) * &piv_inv;
                col_axpy(&mut nmat, j2, j, &c);
                col_axpy(&mut s[idx], j2, j, &c);
                row_axpy(&mut sinv[idx], j, j2, &-&c);
            }
            let coef = nmat.get(i, j).clone();
            if idx + 1 < n {
                let ones = s[idx + 1].column(i).scale(&coef);
                for r in 0..ones.rows() {
                    s[idx + 1].set(r, i, ones.get(r, 0).clone());
                }
                let inv = coef.inverse().unwrap();
                for c2 in 0..sinv[idx + 1].cols() {
                    let v = sinv[idx + 1].get(i, c2) * &inv;
                    sinv[idx + 1].set(i, c2, v);
                }
                targets[idx + 1].insert(i);
            }
            used_rows.insert(i);
            used_cols.insert(j);
            found.push((Summand::Cone { degree: k, source: src[j], target: tgt[i] }, vec![j, i]));
        }
        for &j in free.iter().filter(|j| !used_cols.contains(*j)) {
            found.push((Summand::Free { degree: k, twist: src[j] }, vec![j]));
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let summands: Vec<Summand> = found.iter().map(|f| f.0.clone()).collect();
    let sum = FiltComplex::direct_sum_all(ring, &summands.iter().map(|x| x.complex(ring)).collect::<Vec<_>>());
    // permutation: position in sum^k of each new basis vector of m^k
    let mut perm: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut fill = vec![0usize; n];
    for (summand, pos) in &found {
        for (slot, &p) in summand.slots().iter().zip(pos) {
            let idx = (slot - lo) as usize;
            perm[idx].push((fill[idx], p));
            fill[idx] += 1;
        }
    }
    let to_comps: Vec<Matrix> = m
        .degrees()
        .map(|k| {
            let idx = (k - lo) as usize;
            let mut p = Matrix::zeros(ring, sum.rank_at(k), m.rank_at(k));
            for &(r, c) in &perm[idx] {
                p.set(r, c, ring.one());
            }
            &p * &sinv[idx]
        })
        .collect();
    let from_comps: Vec<Matrix> = sum
        .degrees()
        .map(|k| {
            let idx = (k - lo) as usize;
            let mut p = Matrix::zeros(ring, sum.rank_at(k), m.rank_at(k));
            for &(r, c) in &perm[idx] {
                p.set(r, c, ring.one());
            }
            &s[idx] * &p.transpose()
        })
        .collect();
    let to_m = HomElement::chain_map(m, &sum, to_comps).map_err(|_| Error::Witness("decomposition map is not a chain map".into()))?;
    let from_m = HomElement::chain_map(&sum, m, from_comps).map_err(|_| Error::Witness("decomposition map is not a chain map".into()))?;
    Ok(Decomposition { summands, sum, to_sum: to_m.compose(&red.forward)?, from_sum: red.backward.compose(&from_m)? })
}

/// row_dst -= c * row_src
fn row_axpy(m: &mut Matrix, dst: usize, src: usize, c: &RingElem) {
    for j in 0..m.cols() {
        let v = m.get(dst, j) - &(c * m.get(src, j));
        m.set(dst, j, v);
    }
}

/// col_dst -= c * col_src
fn col_axpy(m: &mut Matrix, dst: usize, src: usize, c: &RingElem) {
    for i in 0..m.rows() {
        let v = m.get(i, dst) - &(c * m.get(i, src));
        m.set(i, dst, v);
    }
}
