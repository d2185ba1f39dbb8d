//! Deciding membership in a thick tensor ideal, with a witness or a separating prime.

use fper::homotopy::FiltComplex;
use fper::linalg::BaseRing;
use fper::oracle::{closure_search, separate, witness_cone_beta_power, SearchBounds};
use fper::spectrum::in_ideal;

fn main() {
    let z = BaseRing::Integers;
    let cb = FiltComplex::cone_beta(z);
    let queries = [
        ("cone(β^2)", FiltComplex::cone_beta_power(z, 2, 1), vec![cb.clone()]),
        ("cone(2β)", FiltComplex::cone_beta_power(z, 1, 2), vec![cb.clone(), FiltComplex::cone_scalar(z, 2)]),
        ("cone(2β)", FiltComplex::cone_beta_power(z, 1, 2), vec![cb.clone()]),
        ("R(0)", FiltComplex::unit(z), vec![FiltComplex::cone_scalar(z, 3), cb]),
    ];
    for (name, a, gens) in &queries {
        if in_ideal(a, gens) {
            let w = closure_search(a, gens, &SearchBounds::default()).expect("witness within the default bounds");
            w.verify().expect("certified");
            println!("{name} ∈ ⟨{} gens⟩, witness with {} cone steps", gens.len(), w.cone_steps());
        } else {
            let p = separate(a, gens).expect("non-members are separated");
            println!("{name} ∉ ⟨{} gens⟩, separated by {p}", gens.len());
        }
    }
    let w = witness_cone_beta_power(z, 4).unwrap();
    w.verify().unwrap();
    println!("cone(β^4) built from cone(β) in {} cones", w.cone_steps());
}
