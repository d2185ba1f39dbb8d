//! Supports over Z: torsion primes in each layer, with per-prime evidence.

use fper::homotopy::FiltComplex;
use fper::linalg::BaseRing;
use fper::spectrum::support_report;

fn main() {
    let z = BaseRing::Integers;
    let objects = [
        ("cone(6)", FiltComplex::cone_scalar(z, 6)),
        ("cone(2β)", FiltComplex::cone_beta_power(z, 1, 2)),
        ("cone(β)", FiltComplex::cone_beta(z)),
        ("cone(2) ⊗ cone(3)", FiltComplex::cone_scalar(z, 2).tensor(&FiltComplex::cone_scalar(z, 3))),
    ];
    for (name, a) in &objects {
        let report = support_report(a);
        println!("{name}: {}", report.to_json());
    }
}
