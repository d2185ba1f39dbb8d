//! Inverting β: `Hom(a(-n), b)` stabilizes once `n` passes the twist spread.

use fper::homotopy::{localized_hom, SplitObject};
use fper::linalg::BaseRing;

fn main() {
    let a = SplitObject::from_twists(&[2, -1]).0;
    let b = SplitObject::from_twists(&[0, -3, 1]).0;
    for ring in [BaseRing::Integers, BaseRing::PrimeField(2)] {
        let h = localized_hom(ring, &a, &b);
        println!("{ring}: ranks {:?}, stable from n = {} (bound {}), limit {}", h.ranks, h.stabilization, h.bound, h.rank);
    }
}
