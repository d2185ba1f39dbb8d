//! Minimal models and the splitting of complexes over a field into indecomposables.

use fper::homotopy::{decompose_field, minimize};
use fper::linalg::BaseRing;
use fper::oracle::{random_complex, RandomBounds};

fn main() {
    let k = BaseRing::PrimeField(2);
    for seed in 0..4 {
        let a = random_complex(k, seed, &RandomBounds::default());
        let red = minimize(&a);
        let d = decompose_field(&a).unwrap();
        println!("{a}\n  minimal: {}\n  summands: {:?}", red.complex, d.summands);
    }
}
