use super::object::{FiltMorphism, FiltObject};
use super::ops::{image, is_strict, kernel};
use super::seq::same_span;
use crate::error::{Error, Result};
use crate::homotopy::FiltComplex;
use crate::linalg::{BaseRing, Matrix};

/// A bounded cochain complex of filtered objects, `d^k : X^k → X^{k+1}`.
#[derive(Clone, Debug)]
pub struct FiltChainComplex {
    pub lo: i64,
    pub objects: Vec<FiltObject>,
    pub diffs: Vec<FiltMorphism>,
}

impl FiltChainComplex {
    pub fn new(lo: i64, objects: Vec<FiltObject>, diffs: Vec<FiltMorphism>) -> Result<Self> {
        if objects.len() != diffs.len() + 1 {
            return Err(Error::Shape("a complex with n objects needs n - 1 differentials".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != objects[k] || d.target() != objects[k + 1] {
                return Err(Error::Shape(format!("differential {k} has the wrong endpoints")));
            }
        }
        for (k, w) in diffs.windows(2).enumerate() {
            if !w[1].compose(&w[0])?.is_zero() {
                return Err(Error::NotAComplex(lo + k as i64));
            }
        }
        Ok(FiltChainComplex { lo, objects, diffs })
    }

    /// Realize a complex of split objects: `β^e` entries become their coefficients on `π`.
    pub fn from_split(c: &FiltComplex) -> Result<Self> {
        let ring = c.ring();
        if c.is_empty() {
            return FiltChainComplex::new(0, vec![FiltObject::zero(ring)], vec![]);
        }
        let objects: Vec<FiltObject> = c.degrees().map(|k| FiltObject::split(ring, c.object(k))).collect();
        let diffs = c
            .degrees()
            .take(objects.len() - 1)
            .enumerate()
            .map(|(i, k)| FiltMorphism::from_pi(&objects[i], &objects[i + 1], &c.diff(k)))
            .collect::<Result<Vec<_>>>()?;
        FiltChainComplex::new(c.lo(), objects, diffs)
    }

    pub fn ring(&self) -> BaseRing {
        self.objects[0].ring()
    }

    /// Transport each degree along an automorphism of its `π`.
    pub fn transport(&self, gs: &[Matrix]) -> Result<Self> {
        let objects: Vec<FiltObject> = self.objects.iter().zip(gs).map(|(x, g)| x.transport(g)).collect();
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| d.transport(&gs[k], &gs[k + 1])).collect::<Result<Vec<_>>>()?;
        FiltChainComplex::new(self.lo, objects, diffs)
    }

    fn window(&self) -> (i64, i64) {
        let lo = self.objects.iter().map(|x| x.lo()).min().unwrap_or(0);
        let hi = self.objects.iter().map(|x| x.hi()).max().unwrap_or(0);
        (lo, hi)
    }

    fn incoming(&self, k: usize) -> Option<&FiltMorphism> {
        k.checked_sub(1).map(|j| &self.diffs[j])
    }

    /// Every differential is strict and `img d^{k-1} = ker d^k` as subobjects.
    pub fn is_strictly_exact(&self) -> bool {
        if !self.diffs.iter().all(is_strict) {
            return false;
        }
        (0..self.objects.len()).all(|k| {
            let x = &self.objects[k];
            let (lo, hi) = (x.lo(), x.hi());
            let ker: Vec<Matrix> = match self.diffs.get(k) {
                Some(d) => {
                    let (kk, inc) = kernel(d);
                    (lo..=hi).map(|n| &inc.pi() * &kk.level(n)).collect()
                }
                None => (lo..=hi).map(|n| x.level(n)).collect(),
            };
            let img: Vec<Matrix> = match self.incoming(k) {
                Some(d) => {
                    let (ii, inc) = image(d);
                    (lo..=hi).map(|n| &inc.pi() * &ii.level(n)).collect()
                }
                None => (lo..=hi).map(|_| Matrix::zeros(x.ring(), x.pi_dim(), 0)).collect(),
            };
            ker.iter().zip(&img).all(|(a, b)| same_span(a, b))
        })
    }

    pub fn is_pi_exact(&self) -> bool {
        (0..self.objects.len()).all(|k| {
            let out = self.diffs.get(k).map_or(0, |d| d.pi().rank());
            let inc = self.incoming(k).map_or(0, |d| d.pi().rank());
            self.objects[k].pi_dim() == out + inc
        })
    }

    pub fn has_strict_differentials(&self) -> bool {
        self.diffs.iter().all(is_strict)
    }

    /// Every graded piece `gr_n(X)` is an exact complex.
    pub fn is_gr_exact(&self) -> bool {
        let (lo, hi) = self.window();
        (lo..=hi).all(|n| {
            (0..self.objects.len()).all(|k| {
                let g = self.objects[k].gr_dims().get(n);
                let out = self.diffs.get(k).map_or(0, |d| d.gr(n).rank());
                let inc = self.incoming(k).map_or(0, |d| d.gr(n).rank());
                g == out + inc
            })
        })
    }
}
