//! Presheaves on Z as graded `R[β]`-modules; the Day tensor matches the graded tensor.

use fper::filtered::SeqObject;
use fper::graded::{day_convolution_dim, graded_tensor_dim, graded_to_seq, seq_to_graded, GradedBetaModule};
use fper::linalg::{BaseRing, Matrix};

fn main() {
    let k = BaseRing::PrimeField(5);
    let a = SeqObject::new(k, 0, vec![2, 1], vec![Matrix::from_i64(k, &[vec![1], vec![0]])]).unwrap();
    let m = seq_to_graded(&a);
    assert_eq!(graded_to_seq(&m), a);
    println!("components {:?}", m.components);

    let t = GradedBetaModule::torsion(k, 1, 2);
    let b = graded_to_seq(&t);
    for n in -2..=3 {
        println!("n = {n}: Day {} graded {}", day_convolution_dim(&a, &b, n), graded_tensor_dim(&m, &t, n));
    }
}
