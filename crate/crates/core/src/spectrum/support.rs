use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::points::{pair_to_subset, BasePrime, HomPrime, HomSubset, Layer, ThomasonPair, ThomasonSubset};
use crate::error::{Error, Result};
use crate::homotopy::FiltComplex;
use crate::linalg::{BaseRing, FreeComplex};

/// `ξ(A)` for the layer's functor: `π(A)` or `gr(A) = ⊕_n gr_n(A)`.
pub fn realize(a: &FiltComplex, layer: Layer) -> FreeComplex {
    match layer {
        Layer::Pi => a.pi_complex(),
        Layer::Gr => a.gr_total(),
    }
}

/// `supp(ξ(A)) ⊆ Spec(R)`.
pub fn support(a: &FiltComplex, layer: Layer) -> ThomasonSubset {
    let h = realize(a, layer).homology();
    if h.is_zero() {
        ThomasonSubset::Empty
    } else if a.ring().is_field() || h.has_free_part() {
        ThomasonSubset::All
    } else {
        ThomasonSubset::finite(h.torsion_primes())
    }
}

/// `(supp_π(A), supp_gr(A))`; always a valid pair since `supp_π ⊆ supp_gr`.
pub fn support_pair(a: &FiltComplex) -> ThomasonPair {
    ThomasonPair::new(support(a, Layer::Pi), support(a, Layer::Gr)).expect("supp_π ⊆ supp_gr")
}

/// `spc(π)(supp_π A) ⊔ spc(gr)(supp_gr A)`.
pub fn support_total(a: &FiltComplex) -> HomSubset {
    pair_to_subset(&support_pair(a))
}

/// Signature of the tt-ideal generated by `gens`.
pub fn ideal_signature(gens: &[FiltComplex]) -> ThomasonPair {
    gens.iter().fold(ThomasonPair::zero(), |acc, g| acc.join(&support_pair(g)))
}

/// Membership in `⟨gens⟩`, decided by support containment in both layers.
pub fn in_ideal(a: &FiltComplex, gens: &[FiltComplex]) -> bool {
    support_pair(a).le(&ideal_signature(gens))
}

/// Whether `A` lies in the prime `P`: `ξ(A) ⊗ κ(𝔭)` is acyclic.
pub fn prime_test(a: &FiltComplex, p: &HomPrime) -> Result<bool> {
    let field = p.base.residue_field(a.ring())?;
    let c = realize(a, p.layer);
    let c = if field == c.ring() { c } else { c.change_ring(field)? };
    Ok(c.is_acyclic())
}

/// The primes relevant to `A`: generic points plus every torsion prime of `π(A)` or `gr(A)`.
pub fn candidate_points(a: &FiltComplex) -> BTreeSet<BasePrime> {
    let mut out: BTreeSet<BasePrime> = [BasePrime::Generic].into();
    if a.ring() == BaseRing::Integers {
        for layer in [Layer::Pi, Layer::Gr] {
            out.extend(realize(a, layer).homology().torsion_primes().into_iter().map(BasePrime::Closed));
        }
    }
    out
}

/// Per-point acyclicity evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub point: HomPrime,
    pub residue_field: BaseRing,
    pub total_rank: usize,
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub ring: BaseRing,
    pub supp_pi: ThomasonSubset,
    pub supp_gr: ThomasonSubset,
    pub evidence: Vec<Evidence>,
}

pub fn support_report(a: &FiltComplex) -> SupportReport {
    let mut evidence = Vec::new();
    for layer in [Layer::Pi, Layer::Gr] {
        for base in candidate_points(a) {
            let field = base.residue_field(a.ring()).expect("candidate point");
            let c = realize(a, layer);
            let c = if field == c.ring() { c } else { c.change_ring(field).expect("reduction") };
            evidence.push(Evidence { point: HomPrime::new(layer, base), residue_field: field, total_rank: c.homology().total_free_rank() });
        }
    }
    let pair = support_pair(a);
    SupportReport { ring: a.ring(), supp_pi: pair.pi().clone(), supp_gr: pair.gr().clone(), evidence }
}

impl SupportReport {
    pub fn to_json(&self) -> Value {
        let evidence: Vec<Value> = self
            .evidence
            .iter()
            .map(|e| {
                json!({
                    "prime": e.point.node_name(),
                    "residue_field": e.residue_field.to_string(),
                    "homology_rank": e.total_rank,
                    "acyclic": e.total_rank == 0,
                })
            })
            .collect();
        json!({
            "ring": self.ring.to_string(),
            "supp_pi": self.supp_pi.to_json(),
            "supp_gr": self.supp_gr.to_json(),
            "evidence": evidence,
        })
    }
}

/// Generators whose ideal has signature `pair`.
pub fn realize_pair(ring: BaseRing, pair: &ThomasonPair) -> Result<Vec<FiltComplex>> {
    let closed = |t: &ThomasonSubset| -> Result<BTreeSet<u64>> {
        match t {
            ThomasonSubset::Finite(s) if ring == BaseRing::Integers => Ok(s.clone()),
            ThomasonSubset::Finite(_) => Err(Error::Thomason(format!("closed points are not available over {ring}"))),
            _ => Ok(BTreeSet::new()),
        }
    };
    let cone_p = |p: u64| FiltComplex::cone_scalar(ring, p as i64);
    let cb = FiltComplex::cone_beta(ring);
    let mut gens = Vec::new();
    match (pair.pi(), pair.gr()) {
        (ThomasonSubset::All, _) => gens.push(FiltComplex::unit(ring)),
        (pi, ThomasonSubset::All) => {
            gens.push(cb);
            gens.extend(closed(pi)?.into_iter().map(cone_p));
        }
        (pi, gr) => {
            let pis = closed(pi)?;
            gens.extend(pis.iter().map(|&p| cone_p(p)));
            gens.extend(closed(gr)?.difference(&pis).map(|&p| cb.tensor(&cone_p(p))));
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: BaseRing = BaseRing::Integers;
    const Q: BaseRing = BaseRing::Rationals;

    fn fin(v: &[u64]) -> ThomasonSubset {
        ThomasonSubset::finite(v.iter().copied())
    }

    #[test]
    fn supports_of_basic_objects() {
        let cb = FiltComplex::cone_beta(Z);
        assert_eq!((support(&cb, Layer::Pi), support(&cb, Layer::Gr)), (ThomasonSubset::Empty, ThomasonSubset::All));
        let c2b = FiltComplex::cone_beta_power(Z, 1, 2);
        assert_eq!((support(&c2b, Layer::Pi), support(&c2b, Layer::Gr)), (fin(&[2]), ThomasonSubset::All));
        let zero = FiltComplex::zero(Z);
        assert_eq!(support_pair(&zero), ThomasonPair::zero());
    }

    #[test]
    fn sigma_zero_of_three() {
        let y = support_total(&FiltComplex::cone_scalar(Z, 3));
        assert!(y.contains(&HomPrime::new(Layer::Pi, BasePrime::Closed(3))));
        assert!(y.contains(&HomPrime::new(Layer::Gr, BasePrime::Closed(3))));
        assert!(!y.contains(&HomPrime::new(Layer::Gr, BasePrime::Closed(2))));
        assert!(!y.contains(&HomPrime::new(Layer::Pi, BasePrime::Generic)));
    }

    #[test]
    fn signatures() {
        assert_eq!(ideal_signature(&[FiltComplex::cone_beta(Q)]), ThomasonPair::new(ThomasonSubset::Empty, ThomasonSubset::All).unwrap());
        assert_eq!(ideal_signature(&[FiltComplex::unit(Q)]), ThomasonPair::new(ThomasonSubset::All, ThomasonSubset::All).unwrap());
        assert_eq!(ideal_signature(&[]), ThomasonPair::zero());
    }

    #[test]
    fn membership_examples() {
        let cb = FiltComplex::cone_beta(Q);
        let cb2 = FiltComplex::cone_beta_power(Q, 2, 1);
        assert!(in_ideal(&cb2, std::slice::from_ref(&cb)) && in_ideal(&cb, &[cb2]));
        assert!(!in_ideal(&FiltComplex::unit(Q), &[cb]));
        let gens = [FiltComplex::cone_beta(Z), FiltComplex::cone_scalar(Z, 2)];
        assert!(in_ideal(&FiltComplex::cone_beta_power(Z, 1, 2), &gens));
    }

    #[test]
    fn prime_tests() {
        let a = FiltComplex::cone_beta_power(Z, 1, 2);
        assert!(!prime_test(&a, &HomPrime::new(Layer::Gr, BasePrime::Closed(5))).unwrap());
        assert!(prime_test(&a, &HomPrime::new(Layer::Pi, BasePrime::Closed(3))).unwrap());
        assert!(!prime_test(&a, &HomPrime::new(Layer::Pi, BasePrime::Closed(2))).unwrap());
        assert!(prime_test(&FiltComplex::zero(Z), &HomPrime::new(Layer::Gr, BasePrime::Generic)).unwrap());
    }

    #[test]
    fn realized_pairs_have_their_signature() {
        let pairs = [
            ThomasonPair::new(fin(&[2]), fin(&[2, 3])).unwrap(),
            ThomasonPair::new(ThomasonSubset::Empty, fin(&[5])).unwrap(),
            ThomasonPair::new(fin(&[7]), ThomasonSubset::All).unwrap(),
            ThomasonPair::new(ThomasonSubset::All, ThomasonSubset::All).unwrap(),
            ThomasonPair::zero(),
        ];
        for p in pairs {
            assert_eq!(ideal_signature(&realize_pair(Z, &p).unwrap()), p);
        }
    }

    #[test]
    fn report_json_shape() {
        let r = support_report(&FiltComplex::cone_beta_power(Z, 1, 2)).to_json();
        assert_eq!(r["ring"], "Z");
        assert_eq!(r["supp_pi"], json!([2]));
        assert_eq!(r["supp_gr"], "All");
    }
}
