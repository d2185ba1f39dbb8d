use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::matrix::Matrix;
use super::ring::BaseRing;
use super::smith::invariant_factors;
use crate::error::{Error, Result};

/// Bounded cochain complex of finite free modules `R^{n_k}`.
///
/// `diffs[i]` is the differential from degree `lo + i` to `lo + i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: BaseRing,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl FreeComplex {
    pub fn new(ring: BaseRing, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::Shape(format!("{} modules need {} differentials, got {}", ranks.len(), ranks.len().saturating_sub(1), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("differential over {} in a complex over {ring}", d.ring())));
            }
            if d.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::Shape(format!("differential in degree {} has shape {:?}", lo + i as i64, d.shape())));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(Error::NotAComplex(lo + i as i64));
            }
        }
        let mut c = FreeComplex { ring, lo, ranks, diffs };
        c.trim();
        Ok(c)
    }

    pub fn zero(ring: BaseRing) -> Self {
        FreeComplex { ring, lo: 0, ranks: vec![], diffs: vec![] }
    }

    /// A single module in one degree.
    pub fn concentrated(ring: BaseRing, degree: i64, rank: usize) -> Self {
        FreeComplex::new(ring, degree, vec![rank], vec![]).unwrap()
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64
    }

    pub fn rank_at(&self, k: i64) -> usize {
        if k < self.lo || k >= self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    /// Differential `C^k -> C^{k+1}`, a zero matrix outside the stored range.
    pub fn diff(&self, k: i64) -> Matrix {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zeros(self.ring, self.rank_at(k + 1), self.rank_at(k))
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn change_ring(&self, target: BaseRing) -> Result<FreeComplex> {
        let diffs = self.diffs.iter().map(|d| d.change_ring(target)).collect::<Result<Vec<_>>>()?;
        FreeComplex::new(target, self.lo, self.ranks.clone(), diffs)
    }

    pub fn homology(&self) -> HomologySummary {
        let mut degrees = Vec::with_capacity(self.ranks.len());
        for k in self.lo..self.hi() {
            let out = self.diff(k);
            let inc = self.diff(k - 1);
            let free_rank = self.rank_at(k) - out.rank() - inc.rank();
            let torsion = if self.ring == BaseRing::Integers {
                invariant_factors(&inc).unwrap().into_iter().filter(|d| !d.is_one()).collect()
            } else {
                Vec::new()
            };
            degrees.push(DegreeHomology { free_rank, torsion });
        }
        HomologySummary::new(self.ring, self.lo, degrees)
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeHomology {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Degreewise homology: free rank plus torsion invariant factors (`> 1`, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub ring: BaseRing,
    pub lo: i64,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn new(ring: BaseRing, lo: i64, mut degrees: Vec<DegreeHomology>) -> Self {
        let mut lo = lo;
        while degrees.last().is_some_and(DegreeHomology::is_zero) {
            degrees.pop();
        }
        while degrees.first().is_some_and(DegreeHomology::is_zero) {
            degrees.remove(0);
            lo += 1;
        }
        if degrees.is_empty() {
            lo = 0;
        }
        HomologySummary { ring, lo, degrees }
    }

    pub fn at(&self, k: i64) -> DegreeHomology {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.degrees.len() {
            self.degrees[i as usize].clone()
        } else {
            DegreeHomology::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn total_free_rank(&self) -> usize {
        self.degrees.iter().map(|d| d.free_rank).sum()
    }

    pub fn has_free_part(&self) -> bool {
        self.total_free_rank() > 0
    }

    /// Primes dividing some torsion invariant factor.
    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        self.degrees.iter().flat_map(|d| d.torsion.iter()).flat_map(prime_factors).collect()
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = (0..self.degrees.len())
            .map(|i| {
                let d = &self.degrees[i];
                json!({
                    "degree": self.lo + i as i64,
                    "free_rank": d.free_rank,
                    "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "ring": self.ring.to_string(), "degrees": degrees })
    }
}

/// Distinct prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.to_u64().expect("prime factor fits in u64"));
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    if n.is_zero() {
        out.clear();
    }
    out
}
