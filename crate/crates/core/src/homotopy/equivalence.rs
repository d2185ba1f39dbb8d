use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::FiltComplex;
use super::maps::{ChainMap, HomComplex, HomElement};
use super::minimize::{decompose_field, minimize};
use crate::linalg::{FreeComplex, HomologySummary, Matrix};

/// Whether `A ≃ 0`, i.e. `id_A` is nullhomotopic.
pub fn is_zero_object(a: &FiltComplex) -> bool {
    a.is_empty() || HomElement::identity(a).is_nullhomotopic()
}

/// Cheap necessary conditions: homology of `π` and of every graded piece.
pub fn invariants_agree(a: &FiltComplex, b: &FiltComplex) -> bool {
    fn gr(c: &FiltComplex) -> BTreeMap<i64, HomologySummary> {
        c.gr_complex().into_iter().map(|(n, x)| (n, x.homology())).filter(|(_, h)| !h.is_zero()).collect()
    }
    a.ring() == b.ring() && a.pi_complex().homology() == b.pi_complex().homology() && gr(a) == gr(b)
}

/// Search for homotopy inverse chain maps `u: A → B`, `v: B → A`.
///
/// Over a field this is decided exactly through the indecomposable decomposition. Over Z
/// candidate maps are drawn from `[A, B]` and a homotopy inverse is solved for.
pub fn are_homotopy_equivalent(a: &FiltComplex, b: &FiltComplex) -> Option<(ChainMap, ChainMap)> {
    if !invariants_agree(a, b) {
        return None;
    }
    let ring = a.ring();
    if ring.is_field() {
        let da = decompose_field(a).ok()?;
        let db = decompose_field(b).ok()?;
        if da.summands != db.summands {
            return None;
        }
        let u = db.from_sum.compose(&da.to_sum).ok()?;
        let v = da.from_sum.compose(&db.to_sum).ok()?;
        return Some((u, v));
    }
    let ra = minimize(a);
    let rb = minimize(b);
    let (ma, mb) = (&ra.complex, &rb.complex);
    let (u, v) = if ma == mb { (HomElement::identity(ma), HomElement::identity(ma)) } else { search_integral(ma, mb)? };
    let u = rb.backward.compose(&u.compose(&ra.forward).ok()?).ok()?;
    let v = ra.backward.compose(&v.compose(&rb.forward).ok()?).ok()?;
    Some((u, v))
}

fn search_integral(a: &FiltComplex, b: &FiltComplex) -> Option<(ChainMap, ChainMap)> {
    let ab = HomComplex::new(a, b);
    let gens = ab.h0_basis().all();
    if gens.is_empty() {
        return None;
    }
    let ba = HomComplex::new(b, a);
    let back = ba.cycle_basis();
    let aa = HomComplex::new(a, a);
    let d_aa = aa.differential(-1);
    let id_a = aa.to_vector(&HomElement::identity(a));
    let try_candidate = |u: &ChainMap| -> Option<(ChainMap, ChainMap)> {
        let ring = a.ring();
        let cols: Vec<Matrix> = (0..back.cols()).map(|l| aa.to_vector(&ba.from_vector(0, &back, l).compose(u).unwrap())).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let vu = Matrix::hstack(ring, id_a.rows(), &refs);
        let system = Matrix::hstack(ring, id_a.rows(), &[&vu, &d_aa.scale(&ring.from_i64(-1))]);
        let x = system.solve(&id_a).ok()??;
        let coeffs = x.select(&(0..back.cols()).collect::<Vec<_>>(), &[0]);
        let v = ba.from_vector(0, &(&back * &coeffs), 0);
        let uv = u.compose(&v).ok()?;
        uv.is_homotopic_to(&HomElement::identity(b)).then(|| (u.clone(), v))
    };
    let ring = a.ring();
    for g in &gens {
        for s in [1, -1] {
            if let Some(r) = try_candidate(&g.scale(&ring.from_i64(s))) {
                return Some(r);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let mut u = HomElement::zero(a, b, 0);
        for g in &gens {
            u = u.add(&g.scale(&ring.from_i64(rng.gen_range(-2..=2))));
        }
        if let Some(r) = try_candidate(&u) {
            return Some(r);
        }
    }
    None
}

/// Check `v∘u ≃ id_A` and `u∘v ≃ id_B`.
pub fn certify_equivalence(u: &ChainMap, v: &ChainMap) -> bool {
    let (Ok(vu), Ok(uv)) = (v.compose(u), u.compose(v)) else { return false };
    u.is_cycle() && v.is_cycle() && vu.is_homotopic_to(&HomElement::identity(&u.source)) && uv.is_homotopic_to(&HomElement::identity(&u.target))
}

/// `H^0` of `Hom(A, B(n))`: homotopy classes of maps `A → B(n)`.
pub fn homotopy_hom_rank(a: &FiltComplex, b: &FiltComplex, n: i64) -> crate::linalg::DegreeHomology {
    let hom = HomComplex::new(a, &b.twist(n));
    hom_complex_homology(&hom).at(0)
}

pub fn hom_complex_homology(hom: &HomComplex) -> HomologySummary {
    let range = hom.degree_range();
    if !range.contains(&0) {
        return FreeComplex::zero(hom.ring()).homology();
    }
    // only degrees -1, 0, 1 matter for H^0
    let ranks = vec![hom.dim(-1), hom.dim(0), hom.dim(1)];
    let c = FreeComplex::new(hom.ring(), -1, ranks, vec![hom.differential(-1), hom.differential(0)]).expect("hom complex");
    let h = c.homology();
    HomologySummary::new(hom.ring(), 0, vec![h.at(0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BaseRing;

    const Z: BaseRing = BaseRing::Integers;
    const F2: BaseRing = BaseRing::PrimeField(2);

    #[test]
    fn cone_two_over_fields_and_integers() {
        assert!(is_zero_object(&FiltComplex::cone_scalar(BaseRing::Rationals, 2)));
        assert!(!is_zero_object(&FiltComplex::cone_scalar(Z, 2)));
        assert!(!is_zero_object(&FiltComplex::cone_beta(Z)));
    }

    #[test]
    fn double_dual_equivalent_over_integers() {
        let a = FiltComplex::cone_beta(Z).direct_sum(&FiltComplex::cone_scalar(Z, 3).twist(2));
        let (u, v) = are_homotopy_equivalent(&a, &a.dual().dual()).unwrap();
        assert!(certify_equivalence(&u, &v));
    }

    #[test]
    fn dual_of_cone_beta() {
        let d = FiltComplex::cone_beta(Z).dual();
        let e = FiltComplex::cone_beta(Z).twist(-1).shift(-1);
        let (u, v) = are_homotopy_equivalent(&d, &e).unwrap();
        assert!(certify_equivalence(&u, &v));
    }

    #[test]
    fn inequivalent_objects() {
        assert!(are_homotopy_equivalent(&FiltComplex::cone_beta(F2), &FiltComplex::cone_beta_power(F2, 2, 1)).is_none());
        assert!(are_homotopy_equivalent(&FiltComplex::cone_scalar(Z, 2), &FiltComplex::cone_scalar(Z, 4)).is_none());
    }

    #[test]
    fn field_equivalence_is_certified() {
        let a = FiltComplex::cone_beta(F2).tensor(&FiltComplex::cone_beta(F2));
        let b = FiltComplex::cone_beta(F2).shift(1).direct_sum(&FiltComplex::cone_beta(F2).twist(1));
        let (u, v) = are_homotopy_equivalent(&a, &b).unwrap();
        assert!(certify_equivalence(&u, &v));
    }

    #[test]
    fn central_ring_slices() {
        let u = FiltComplex::unit(Z);
        for n in -3..=5 {
            let h = homotopy_hom_rank(&u, &u, n);
            assert_eq!(h.free_rank, usize::from(n >= 0));
            assert!(h.torsion.is_empty());
        }
    }
}
