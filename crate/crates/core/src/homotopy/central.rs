use num_bigint::BigInt;
use serde::Serialize;

use super::complex::FiltComplex;
use super::equivalence::homotopy_hom_rank;
use super::maps::{ChainMap, HomComplex};
use super::split::SplitObject;
use crate::linalg::BaseRing;

/// `Hom(R(0), R(n))` in the homotopy category.
#[derive(Clone, Debug)]
pub struct CentralRingSlice {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// a generator `β^n` when the slice is free of rank one
    pub generator: Option<ChainMap>,
}

pub fn central_slice(ring: BaseRing, n: i64) -> CentralRingSlice {
    let unit = FiltComplex::unit(ring);
    let h = homotopy_hom_rank(&unit, &unit, n);
    let basis = HomComplex::new(&unit, &unit.twist(n)).h0_basis();
    let generator = (basis.free.len() == 1).then(|| basis.free[0].clone());
    CentralRingSlice { degree: n, free_rank: h.free_rank, torsion: h.torsion, generator }
}

/// Slices `lo..=hi`; each is asserted to have rank at most one.
pub fn graded_central_ring(ring: BaseRing, lo: i64, hi: i64) -> Vec<CentralRingSlice> {
    (lo..=hi)
        .map(|n| {
            let s = central_slice(ring, n);
            assert!(s.free_rank <= 1 && s.torsion.is_empty(), "central ring slice {n} is not of rank ≤ 1");
            s
        })
        .collect()
}

/// `β^a · β^b = β^{a+b}` on generators: composing representatives gives the representative.
pub fn check_multiplication(ring: BaseRing, a: i64, b: i64) -> bool {
    let (sa, sb, sab) = (central_slice(ring, a), central_slice(ring, b), central_slice(ring, a + b));
    match (sa.generator, sb.generator, sab.generator) {
        (Some(x), Some(y), Some(z)) => y.twist(a).compose(&x).map(|p| p == z).unwrap_or(false),
        (Some(_), Some(_), None) => false,
        // a zero factor: the product is the zero map
        _ => true,
    }
}

/// Stabilization of `Hom(a(-n), b)` under `f ↦ f∘β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizedHom {
    /// first `n ≥ 0` at which the rank reaches its limit
    pub stabilization: i64,
    pub rank: usize,
    /// predicted bound `max(0, max twist of a - min twist of b)`
    pub bound: i64,
    /// ranks for `n = 0..=stabilization`
    pub ranks: Vec<usize>,
}

pub fn localized_hom(ring: BaseRing, a: &SplitObject, b: &SplitObject) -> LocalizedHom {
    let bound = match (a.max_twist(), b.min_twist()) {
        (Some(x), Some(y)) => (x - y).max(0),
        _ => 0,
    };
    let limit = a.rank() * b.rank();
    let ca = FiltComplex::concentrated(ring, a, 0);
    let cb = FiltComplex::concentrated(ring, b, 0);
    let mut ranks = Vec::new();
    let mut n = 0;
    loop {
        let h = homotopy_hom_rank(&ca.twist(-n), &cb, 0);
        ranks.push(h.free_rank);
        if h.free_rank == limit {
            break;
        }
        assert!(n <= bound, "localized hom failed to stabilize by the predicted bound");
        n += 1;
    }
    LocalizedHom { stabilization: n, rank: ranks[n as usize], bound, ranks }
}
