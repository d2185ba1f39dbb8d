//! Over a field the spectrum has two points, and every object sits in one of three ideals.

use fper::homotopy::FiltComplex;
use fper::linalg::BaseRing;
use fper::spectrum::{emit_spectrum, ideal_signature, in_ideal};

fn main() {
    let k = BaseRing::PrimeField(2);
    print!("{}", emit_spectrum(k, 0));

    let objects = [
        ("0", FiltComplex::zero(k)),
        ("R(0)", FiltComplex::unit(k)),
        ("cone(β)", FiltComplex::cone_beta(k)),
        ("cone(β^3)(2)", FiltComplex::cone_beta_power(k, 3, 1).twist(2)),
        ("cone(1)", FiltComplex::cone_scalar(k, 1)),
    ];
    let cb = FiltComplex::cone_beta(k);
    for (name, a) in &objects {
        let sig = ideal_signature(std::slice::from_ref(a));
        println!("{name:>14}: signature ({:?}, {:?}), in ⟨cone β⟩: {}", sig.pi(), sig.gr(), in_ideal(a, std::slice::from_ref(&cb)));
    }
}
