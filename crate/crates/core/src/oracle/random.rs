use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::filtered::{hom_basis, FiltChainComplex, FiltMorphism, FiltObject, SeqObject};
use crate::homotopy::{cone, FiltComplex, HomComplex, HomElement, SplitObject};
use crate::linalg::{BaseRing, Matrix, RingElem};

/// Size limits for [`random_complex`].
#[derive(Clone, Copy, Debug)]
pub struct RandomBounds {
    /// number of cones attached after the initial object
    pub max_steps: usize,
    /// rank of each attached split object
    pub max_piece_rank: usize,
    /// twists are drawn from `-max_twist..=max_twist`
    pub max_twist: i64,
    /// attached pieces sit in degrees `-max_degree..=max_degree`
    pub max_degree: i64,
    /// stop attaching once the total rank reaches this
    pub max_total_rank: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_steps: 3, max_piece_rank: 2, max_twist: 2, max_degree: 1, max_total_rank: 8 }
    }
}

pub fn random_scalar(ring: BaseRing, rng: &mut ChaCha8Rng) -> RingElem {
    match ring {
        BaseRing::PrimeField(p) => ring.from_i64(rng.gen_range(0..p as i64)),
        _ => ring.from_i64(rng.gen_range(-2..=2)),
    }
}

fn random_split(rng: &mut ChaCha8Rng, b: &RandomBounds) -> SplitObject {
    let r = rng.gen_range(1..=b.max_piece_rank.max(1));
    let tw: Vec<i64> = (0..r).map(|_| rng.gen_range(-b.max_twist..=b.max_twist)).collect();
    SplitObject::from_twists(&tw).0
}

/// A random combination of the `H^0` cycle basis of `Hom(a, b)`.
pub fn random_chain_map(a: &FiltComplex, b: &FiltComplex, rng: &mut ChaCha8Rng) -> HomElement {
    let hom = HomComplex::new(a, b);
    let z = hom.cycle_basis();
    let ring = a.ring();
    let mut f = HomElement::zero(a, b, 0);
    for c in 0..z.cols() {
        let s = random_scalar(ring, rng);
        if !s.is_zero() {
            f = f.add(&hom.from_vector(0, &z, c).scale(&s));
        }
    }
    f
}

/// Iterated cones of random cycles between the object so far and random split pieces.
pub fn random_complex(ring: BaseRing, seed: u64, bounds: &RandomBounds) -> FiltComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex_with(ring, &mut rng, bounds)
}

pub fn random_complex_with(ring: BaseRing, rng: &mut ChaCha8Rng, b: &RandomBounds) -> FiltComplex {
    let d0 = rng.gen_range(-b.max_degree..=b.max_degree);
    let mut c = FiltComplex::concentrated(ring, &random_split(rng, b), d0);
    let steps = rng.gen_range(0..=b.max_steps);
    for _ in 0..steps {
        if c.total_rank() >= b.max_total_rank {
            break;
        }
        let piece = random_split(rng, b);
        let j = rng.gen_range(-b.max_degree..=b.max_degree);
        let into = *[true, false].choose(rng).unwrap();
        c = if into {
            // piece lands in degree j after the cone
            let t = FiltComplex::concentrated(ring, &piece, j + 1);
            cone(&random_chain_map(&t, &c, rng)).expect("cycle")
        } else {
            // fibre of c → t, with t in degree j
            let t = FiltComplex::concentrated(ring, &piece, j);
            cone(&random_chain_map(&c, &t, rng)).expect("cycle").shift(-1)
        };
    }
    c
}

pub fn random_matrix(ring: BaseRing, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(ring, rng)).collect();
    Matrix::from_entries(ring, rows, cols, data).expect("shape")
}

/// A uniformly drawn invertible matrix (rejection sampling; fields only).
pub fn random_gl(ring: BaseRing, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A split object with random twists, transported along a random automorphism of `π`.
pub fn random_filt_object(ring: BaseRing, rng: &mut ChaCha8Rng, max_rank: usize, max_twist: i64) -> FiltObject {
    let r = rng.gen_range(0..=max_rank);
    let tw: Vec<i64> = (0..r).map(|_| rng.gen_range(-max_twist..=max_twist)).collect();
    FiltObject::split(ring, &tw).transport(&random_gl(ring, r, rng))
}

pub fn random_filt_morphism(a: &FiltObject, b: &FiltObject, rng: &mut ChaCha8Rng) -> FiltMorphism {
    let ring = a.ring();
    let mut f = FiltMorphism::zero(a, b);
    for g in hom_basis(a, b) {
        let c = random_scalar(ring, rng);
        if !c.is_zero() {
            let pi = &f.pi() + &g.pi().scale(&c);
            f = FiltMorphism::from_pi(a, b, &pi).expect("hom space is closed under sums");
        }
    }
    f
}

/// A presheaf with random, not necessarily injective, transitions.
pub fn random_seq_object(ring: BaseRing, rng: &mut ChaCha8Rng, max_dim: usize, max_width: usize) -> SeqObject {
    let lo = rng.gen_range(-2..=1);
    let width = rng.gen_range(1..=max_width.max(1));
    let dims: Vec<usize> = (0..width).map(|_| rng.gen_range(0..=max_dim)).collect();
    let trans = dims.windows(2).map(|w| random_matrix(ring, w[0], w[1], rng)).collect();
    SeqObject::new(ring, lo, dims, trans).expect("shapes")
}

/// A direct sum of shifted, twisted units and cones of `c β^e`, `0 ≤ e ≤ 2`.
pub fn random_elementary_complex(ring: BaseRing, rng: &mut ChaCha8Rng) -> FiltComplex {
    let pieces = rng.gen_range(1..=3);
    let mut c = FiltComplex::zero(ring);
    for _ in 0..pieces {
        let t = rng.gen_range(-2..=2);
        let s = rng.gen_range(-1..=1);
        let p = if rng.gen_bool(0.2) { FiltComplex::unit(ring) } else { FiltComplex::cone_beta_power(ring, rng.gen_range(0..=2), 1) };
        c = c.direct_sum(&p.twist(t).shift(s));
    }
    c
}

/// Half the time iterated cones as in [`random_complex_with`], otherwise a sum of elementary pieces,
/// so that acyclic and `π`-acyclic objects are well represented.
pub fn random_mixed_complex(ring: BaseRing, rng: &mut ChaCha8Rng, bounds: &RandomBounds) -> FiltComplex {
    if rng.gen_bool(0.5) {
        random_elementary_complex(ring, rng)
    } else {
        random_complex_with(ring, rng, bounds)
    }
}

/// A random complex of filtered objects: a split complex transported along random automorphisms.
pub fn random_filt_chain(ring: BaseRing, rng: &mut ChaCha8Rng) -> FiltChainComplex {
    let b = RandomBounds { max_steps: 2, max_piece_rank: 2, max_twist: 2, max_degree: 1, max_total_rank: 6 };
    let c = random_mixed_complex(ring, rng, &b);
    let x = FiltChainComplex::from_split(&c).expect("split complexes are complexes");
    let gs: Vec<Matrix> = x.objects.iter().map(|o| random_gl(ring, o.pi_dim(), rng)).collect();
    x.transport(&gs).expect("automorphisms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let b = RandomBounds::default();
        for ring in [BaseRing::Integers, BaseRing::PrimeField(3)] {
            assert_eq!(random_complex(ring, 7, &b), random_complex(ring, 7, &b));
        }
    }

    #[test]
    fn filtered_generators() {
        let ring = BaseRing::PrimeField(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_filt_object(ring, &mut rng, 3, 2);
            let b = random_filt_object(ring, &mut rng, 3, 2);
            let f = random_filt_morphism(&a, &b, &mut rng);
            assert_eq!(f.source(), a);
            let x = random_filt_chain(ring, &mut rng);
            assert!(!x.objects.is_empty());
            assert!(random_seq_object(ring, &mut rng, 2, 3).dims().len() <= 3);
        }
    }

    #[test]
    fn respects_bounds() {
        let b = RandomBounds::default();
        for seed in 0..20 {
            let c = random_complex(BaseRing::PrimeField(2), seed, &b);
            assert!(c.total_rank() <= b.max_total_rank + b.max_piece_rank);
            if let Some((lo, hi)) = c.twist_range() {
                assert!(lo >= -b.max_twist && hi <= b.max_twist);
            }
        }
    }
}
