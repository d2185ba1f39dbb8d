//! The graded ring `Hom(R(0), R(n))` and its multiplication, over each base ring.

use fper::homotopy::{check_multiplication, graded_central_ring};
use fper::linalg::BaseRing;

fn main() {
    for ring in [BaseRing::Integers, BaseRing::Rationals, BaseRing::PrimeField(2), BaseRing::PrimeField(7)] {
        let ranks: Vec<String> = graded_central_ring(ring, -3, 5).iter().map(|s| format!("{}:{}", s.degree, s.free_rank)).collect();
        println!("{ring:>5}  {}", ranks.join(" "));
        assert!(check_multiplication(ring, 2, 3));
    }
    println!("β^2 · β^3 = β^5 on representatives for every ring");
}
