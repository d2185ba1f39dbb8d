//! Acceptance suite: one line per criterion, exit status nonzero if any fails.
//!
//! Runs without the libtest harness so the report lines reach stdout under `cargo test`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fper::filtered::{day_tensor, swap_matrix, FiltMorphism, FiltObject};
use fper::graded::{day_convolution_dim, graded_tensor_dim, graded_to_seq, seq_to_graded};
use fper::homotopy::{
    certify_equivalence, check_multiplication, cone, decompose_field, homotopy_hom_rank, localized_hom, minimize, FiltComplex, HomElement,
    SplitObject,
};
use fper::linalg::{BaseRing, FreeComplex, HomologySummary, Matrix};
use fper::oracle::{
    closure_search, random_chain_map, random_complex, random_filt_chain, random_filt_object, random_mixed_complex, random_seq_object, separate,
    witness_cone_beta_power, RandomBounds, SearchBounds,
};
use fper::spectrum::{
    ideal_signature, in_ideal, pair_to_subset, realize_pair, subset_to_pair, support, support_total, BasePrime, HomSubset, Layer, LayerSet,
    ThomasonPair, ThomasonSubset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Z: BaseRing = BaseRing::Integers;
const Q: BaseRing = BaseRing::Rationals;
const F2: BaseRing = BaseRing::PrimeField(2);
const F3: BaseRing = BaseRing::PrimeField(3);
const F5: BaseRing = BaseRing::PrimeField(5);
const F7: BaseRing = BaseRing::PrimeField(7);

type Verdict = Result<String, String>;

/// name, check, time limit in seconds
type Criterion = (&'static str, fn() -> Verdict, u64);

fn fail(msg: impl Into<String>) -> Verdict {
    Err(msg.into())
}

fn criterion1() -> Verdict {
    for ring in [Q, F2, F7, Z] {
        for n in -3..=5 {
            let h = homotopy_hom_rank(&FiltComplex::unit(ring), &FiltComplex::unit(ring), n);
            let want = usize::from(n >= 0);
            if h.free_rank != want || !h.torsion.is_empty() {
                return fail(format!("{ring}, n = {n}: rank {} torsion {:?}", h.free_rank, h.torsion));
            }
        }
        for a in -3..=5 {
            for b in -3..=5 {
                if !check_multiplication(ring, a, b) {
                    return fail(format!("{ring}: β^{a}·β^{b} ≠ β^{}", a + b));
                }
            }
        }
    }
    Ok("4 rings, n in [-3, 5], 81 products per ring".into())
}

fn criterion2() -> Verdict {
    let (e, a) = (ThomasonSubset::Empty, ThomasonSubset::All);
    let mut sampled = 0;
    let mut witnesses = 0;
    let mut ea = 0;
    for ring in [F2, Q] {
        let cb = FiltComplex::cone_beta(ring);
        let allowed = [(e.clone(), e.clone()), (e.clone(), a.clone()), (a.clone(), a.clone())];
        for seed in 0..200 {
            let x = random_mixed_complex(ring, &mut ChaCha8Rng::seed_from_u64(seed), &RandomBounds::default());
            let sig = ideal_signature(std::slice::from_ref(&x));
            let key = (sig.pi().clone(), sig.gr().clone());
            if !allowed.contains(&key) {
                return fail(format!("{ring} seed {seed}: signature {key:?}"));
            }
            if key == allowed[1] {
                ea += 1;
                if !in_ideal(&x, std::slice::from_ref(&cb)) || !in_ideal(&cb, std::slice::from_ref(&x)) {
                    return fail(format!("{ring} seed {seed}: (Empty, All) object not equivalent to ⟨cone β⟩"));
                }
                if sampled < 10 {
                    sampled += 1;
                    if let Some(w) = closure_search(&x, std::slice::from_ref(&cb), &SearchBounds::default()) {
                        w.verify().map_err(|err| format!("{ring} seed {seed}: witness does not verify: {err}"))?;
                        witnesses += 1;
                    }
                }
            }
        }
    }
    if witnesses == 0 {
        return fail(format!("no witness among {sampled} sampled (Empty, All) objects"));
    }
    Ok(format!("400 complexes, {ea} of signature (Empty, All), {witnesses}/{sampled} witnessed"))
}

fn criterion3() -> Verdict {
    let mut acyclic = 0;
    for ring in [F3, Z] {
        let cb = FiltComplex::cone_beta(ring);
        for seed in 0..200 {
            let x = random_mixed_complex(ring, &mut ChaCha8Rng::seed_from_u64(seed), &RandomBounds::default());
            let p = x.pi_complex().is_acyclic();
            let s = support(&x, Layer::Pi).is_empty();
            let m = in_ideal(&x, std::slice::from_ref(&cb));
            if p != s || s != m {
                return fail(format!("{ring} seed {seed}: π-acyclic {p}, supp_π empty {s}, in ⟨cone β⟩ {m}"));
            }
            acyclic += usize::from(p);
        }
    }
    Ok(format!("400 complexes, {acyclic} in ker π"))
}

fn subsets_upto(primes: &[u64], k: usize) -> Vec<BTreeSet<u64>> {
    (0u32..1 << primes.len())
        .filter(|m| m.count_ones() as usize <= k)
        .map(|m| primes.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

fn criterion4() -> Verdict {
    let primes = [2, 3, 5, 7];
    let mut pairs = Vec::new();
    for gamma in subsets_upto(&primes, 3) {
        for pi in subsets_upto(&gamma.iter().copied().collect::<Vec<_>>(), 3) {
            pairs.push(ThomasonPair::new(ThomasonSubset::finite(pi), ThomasonSubset::finite(gamma.clone())).unwrap());
        }
    }
    // the layers that contain the generic point
    for pi in subsets_upto(&primes, 3) {
        pairs.push(ThomasonPair::new(ThomasonSubset::finite(pi), ThomasonSubset::All).unwrap());
    }
    pairs.push(ThomasonPair::new(ThomasonSubset::All, ThomasonSubset::All).unwrap());
    for p in &pairs {
        if subset_to_pair(&pair_to_subset(p)).as_ref() != Ok(p) {
            return fail(format!("round trip changes {p:?}"));
        }
        let gens = realize_pair(Z, p).map_err(|e| e.to_string())?;
        if ideal_signature(&gens) != *p {
            return fail(format!("generators realize {:?}, not {p:?}", ideal_signature(&gens)));
        }
    }
    // a layer with the generic point but not everything is not Thomason
    let bad = HomSubset { pi: LayerSet::Points([BasePrime::Generic].into()), gr: LayerSet::All };
    if subset_to_pair(&bad).is_ok() {
        return fail("accepted a non-Thomason subset");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut members = 0;
    for t in 0..500 {
        let p1 = &pairs[rng.gen_range(0..pairs.len())];
        let p2 = p1.join(&pairs[rng.gen_range(0..pairs.len())]);
        let x = random_mixed_complex(Z, &mut ChaCha8Rng::seed_from_u64(10_000 + t), &RandomBounds::default());
        let (g1, g2) = (realize_pair(Z, p1).unwrap(), realize_pair(Z, &p2).unwrap());
        let (m1, m2) = (in_ideal(&x, &g1), in_ideal(&x, &g2));
        if m1 && !m2 {
            return fail(format!("triple {t}: member of the smaller ideal {p1:?} only"));
        }
        if !g1.iter().all(|g| in_ideal(g, &g2)) {
            return fail(format!("triple {t}: ⟨{p1:?}⟩ ⊄ ⟨{p2:?}⟩"));
        }
        members += usize::from(m1);
    }
    Ok(format!("{} pairs round-trip, 500 triples monotone ({members} in the smaller ideal)", pairs.len()))
}

fn points(ps: &[u64]) -> LayerSet {
    LayerSet::Points(ps.iter().map(|&p| BasePrime::Closed(p)).collect())
}

fn criterion5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for ring in [Z, F3] {
        for seed in 0..100 {
            let bounds = RandomBounds { max_steps: 2, max_total_rank: 6, ..RandomBounds::default() };
            let a = random_complex(ring, seed, &bounds);
            let b = random_complex(ring, seed + 500, &bounds);
            let c = cone(&random_chain_map(&a, &b, &mut rng)).map_err(|e| e.to_string())?;
            let ab = a.tensor(&b);
            for layer in [Layer::Pi, Layer::Gr] {
                let (sa, sb) = (support(&a, layer), support(&b, layer));
                if layer == Layer::Pi && !sa.is_subset(&support(&a, Layer::Gr)) {
                    return fail(format!("{ring} seed {seed}: supp_π ⊄ supp_gr"));
                }
                if support(&ab, layer) != sa.intersection(&sb) {
                    return fail(format!("{ring} seed {seed}: tensor law fails in {}", layer.name()));
                }
                if !support(&c, layer).is_subset(&sa.union(&sb)) {
                    return fail(format!("{ring} seed {seed}: cone law fails in {}", layer.name()));
                }
            }
        }
    }
    let sigma =
        |ranks: Vec<usize>, m: Vec<Vec<i64>>| FiltComplex::embed_degree_zero(&FreeComplex::new(Z, 0, ranks, vec![Matrix::from_i64(Z, &m)]).unwrap());
    let cases = [
        ("cone(2)", sigma(vec![1, 1], vec![vec![2]]), vec![2]),
        ("cone(6)", sigma(vec![1, 1], vec![vec![6]]), vec![2, 3]),
        // determinant -2, Smith form (1, 2)
        ("Q-acyclic", sigma(vec![2, 2], vec![vec![1, 2], vec![3, 4]]), vec![2]),
    ];
    for (name, c, want) in cases {
        let got = support_total(&c);
        if got != (HomSubset { pi: points(&want), gr: points(&want) }) {
            return fail(format!("support of σ0({name}) is {got:?}"));
        }
    }
    Ok("200 random pairs over Z and F_3, 3 hand-derived supports".into())
}

fn criterion6() -> Verdict {
    let cb = |r| FiltComplex::cone_beta(r);
    let cs = |c| FiltComplex::cone_scalar(Z, c);
    let positive: Vec<(&str, FiltComplex, Vec<FiltComplex>)> = vec![
        ("cone(β²) / cone(β)", FiltComplex::cone_beta_power(Z, 2, 1), vec![cb(Z)]),
        ("cone(β)(1)[1] / cone(β)", cb(Z).twist(1).shift(1), vec![cb(Z)]),
        ("cone(β) ⊕ cone(β)(2) / cone(β)", cb(Z).direct_sum(&cb(Z).twist(2)), vec![cb(Z)]),
        ("cone(4) / cone(2)", cs(4), vec![cs(2)]),
        ("cone(2β) / cone(β), cone(2)", FiltComplex::cone_beta_power(Z, 1, 2), vec![cb(Z), cs(2)]),
        ("R(0) / R(3)[1]", FiltComplex::unit(Z), vec![FiltComplex::twisted_unit(Z, 3, 1)]),
        ("cone(β³) / cone(β) over F_2", FiltComplex::cone_beta_power(F2, 3, 1), vec![cb(F2)]),
        ("cone(β) / R(0) over Q", cb(Q), vec![FiltComplex::unit(Q)]),
        ("cone(2) ⊗ cone(β) / cone(2)", cs(2).tensor(&cb(Z)), vec![cs(2)]),
        ("cone(β²)(1) / cone(β) over Q", FiltComplex::cone_beta_power(Q, 2, 1).twist(1), vec![cb(Q)]),
    ];
    let negative: Vec<(&str, FiltComplex, Vec<FiltComplex>)> = vec![
        ("R(0) / cone(β)", FiltComplex::unit(Z), vec![cb(Z)]),
        ("cone(3) / cone(2)", cs(3), vec![cs(2)]),
        ("cone(β) / cone(2)", cb(Z), vec![cs(2)]),
        ("cone(2) / cone(β)", cs(2), vec![cb(Z)]),
        ("R(0) / cone(2), cone(3)", FiltComplex::unit(Z), vec![cs(2), cs(3)]),
        ("cone(6) / cone(2)", cs(6), vec![cs(2)]),
        ("R(0) / cone(β) over F_2", FiltComplex::unit(F2), vec![cb(F2)]),
        ("R(2)[1] / cone(β), cone(β)(1) over F_2", FiltComplex::twisted_unit(F2, 2, 1), vec![cb(F2), cb(F2).twist(1)]),
        ("cone(2β) / cone(β)", FiltComplex::cone_beta_power(Z, 1, 2), vec![cb(Z)]),
        ("cone(5) ⊕ cone(β) / cone(5)", cs(5).direct_sum(&cb(Z)), vec![cs(5)]),
    ];
    let bounds = SearchBounds::default();
    for (name, a, gens) in &positive {
        if !in_ideal(a, gens) {
            return fail(format!("{name}: decided non-member"));
        }
        if let Some(p) = separate(a, gens) {
            return fail(format!("{name}: {p} separates a member"));
        }
        let w = closure_search(a, gens, &bounds).ok_or_else(|| format!("{name}: no witness within bounds"))?;
        w.verify().map_err(|e| format!("{name}: witness does not verify: {e}"))?;
    }
    for (name, a, gens) in &negative {
        if in_ideal(a, gens) {
            return fail(format!("{name}: decided member"));
        }
        let p = separate(a, gens).ok_or_else(|| format!("{name}: no separating prime"))?;
        let sep_ok = !fper::spectrum::prime_test(a, &p).unwrap() && gens.iter().all(|g| fper::spectrum::prime_test(g, &p).unwrap());
        if !sep_ok {
            return fail(format!("{name}: {p} does not separate"));
        }
    }
    let mut random_members = 0;
    for seed in 0..10u64 {
        let ring = if seed % 2 == 0 { Z } else { F2 };
        let small = RandomBounds { max_steps: 2, max_total_rank: 5, ..RandomBounds::default() };
        let a = random_complex(ring, 600 + seed, &small);
        let g = random_mixed_complex(ring, &mut ChaCha8Rng::seed_from_u64(700 + seed), &small);
        let m = in_ideal(&a, std::slice::from_ref(&g));
        let sep = separate(&a, std::slice::from_ref(&g));
        let w = closure_search(&a, std::slice::from_ref(&g), &SearchBounds { depth: 2, ..bounds });
        if m == sep.is_some() || (!m && w.is_some()) {
            return fail(format!("random query {seed}: member {m}, separation {sep:?}, witness {}", w.is_some()));
        }
        if let Some(w) = w {
            w.verify().map_err(|e| format!("random query {seed}: {e}"))?;
        }
        random_members += usize::from(m);
    }
    for ring in [Z, F2, Q] {
        for n in 1..=4 {
            let w = witness_cone_beta_power(ring, n).map_err(|e| e.to_string())?;
            w.verify().map_err(|e| format!("cone(β^{n}) over {ring}: {e}"))?;
        }
    }
    Ok(format!("10 positive witnessed, 10 separated, 10 random ({random_members} members), cone(β^n) for n ≤ 4"))
}

fn criterion7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exact = 0;
    for i in 0..500 {
        let x = random_filt_chain(F3, &mut rng);
        let s = x.is_strictly_exact();
        let p = x.has_strict_differentials() && x.is_pi_exact();
        let g = x.is_gr_exact();
        if s != p || p != g {
            return fail(format!("complex {i}: strictly exact {s}, strict and π-exact {p}, gr-exact {g}"));
        }
        exact += usize::from(s);
    }
    Ok(format!("500 complexes over F_3, {exact} strictly exact"))
}

fn criterion8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let a = random_filt_object(F5, &mut rng, 2, 2);
        let b = random_filt_object(F5, &mut rng, 2, 2);
        let c = random_filt_object(F5, &mut rng, 2, 2);
        let (ab, ba) = (day_tensor(&a, &b), day_tensor(&b, &a));
        let swap = FiltMorphism::from_pi(&ab, &ba, &swap_matrix(F5, a.pi_dim(), b.pi_dim()));
        if !swap.is_ok_and(|s| s.is_iso()) {
            return fail(format!("triple {i}: the swap is not a filtered iso"));
        }
        let (l, r) = (day_tensor(&ab, &c), day_tensor(&a, &day_tensor(&b, &c)));
        let assoc = FiltMorphism::from_pi(&l, &r, &Matrix::identity(F5, l.pi_dim()));
        if !assoc.is_ok_and(|s| s.is_iso()) {
            return fail(format!("triple {i}: the associator is not a filtered iso"));
        }
        let unit = day_tensor(&a, &FiltObject::twisted_unit(F5, 0));
        if unit != a && !FiltMorphism::from_pi(&unit, &a, &Matrix::identity(F5, a.pi_dim())).is_ok_and(|s| s.is_iso()) {
            return fail(format!("triple {i}: unit law fails"));
        }
        if ab.gr_dims() != a.gr_dims().convolve(&b.gr_dims()) {
            return fail(format!("triple {i}: gr dims do not convolve"));
        }
    }
    for i in 0..100 {
        let a = random_seq_object(F5, &mut rng, 3, 4);
        let b = random_seq_object(F5, &mut rng, 2, 3);
        let m = seq_to_graded(&a);
        if graded_to_seq(&m) != a || seq_to_graded(&graded_to_seq(&m)) != m {
            return fail(format!("object {i}: graded round trip"));
        }
        let mb = seq_to_graded(&b);
        for n in a.lo() + b.lo() - 1..=a.hi() + b.hi() + 1 {
            if day_convolution_dim(&a, &b, n) != graded_tensor_dim(&m, &mb, n) {
                return fail(format!("object {i}: tensor dims differ in degree {n}"));
            }
        }
    }
    for m in -3..=3 {
        for n in -3..=3 {
            if day_tensor(&FiltObject::twisted_unit(F5, m), &FiltObject::twisted_unit(F5, n)) != FiltObject::twisted_unit(F5, m + n) {
                return fail(format!("R({m}) ⊗ R({n}) ≠ R({})", m + n));
            }
        }
    }
    Ok("100 triples over F_5, 100 graded round trips, 49 unit products".into())
}

fn criterion9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for ring in [Z, F2] {
        for i in 0..100 {
            let mut draw = || {
                let r = rng.gen_range(1..=3);
                SplitObject::from_twists(&(0..r).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()).0
            };
            let (a, b) = (draw(), draw());
            let h = catch_unwind(|| localized_hom(ring, &a, &b)).map_err(|_| format!("{ring} pair {i}: no stabilization by the bound"))?;
            if h.stabilization > h.bound || h.rank != a.rank() * b.rank() {
                return fail(format!("{ring} pair {i}: stabilized at {} (bound {}), rank {}", h.stabilization, h.bound, h.rank));
            }
        }
    }
    Ok("200 split pairs over Z and F_2".into())
}

/// Nonzero homology of each graded piece.
fn gr_homology(c: &FiltComplex) -> Vec<(i64, HomologySummary)> {
    c.gr_complex().into_iter().map(|(n, g)| (n, g.homology())).filter(|(_, h)| !h.is_zero()).collect()
}

fn criterion10() -> Verdict {
    let mut summands = 0;
    for seed in 0..100 {
        let a = random_complex(F2, 1000 + seed, &RandomBounds::default());
        let red = minimize(&a);
        if minimize(&red.complex).complex != red.complex {
            return fail(format!("seed {seed}: minimize is not idempotent"));
        }
        if gr_homology(&a) != gr_homology(&red.complex) {
            return fail(format!("seed {seed}: gr homology changed"));
        }
        if !certify_equivalence(&red.forward, &red.backward) {
            return fail(format!("seed {seed}: minimization maps are not inverse equivalences"));
        }
        let d = decompose_field(&a).map_err(|e| e.to_string())?;
        let parts: Vec<FiltComplex> = d.summands.iter().map(|s| s.complex(F2)).collect();
        if FiltComplex::direct_sum_all(F2, &parts) != d.sum || !certify_equivalence(&d.to_sum, &d.from_sum) {
            return fail(format!("seed {seed}: decomposition does not reassemble"));
        }
        if !d.to_sum.compose(&d.from_sum).is_ok_and(|e| e.is_homotopic_to(&HomElement::identity(&d.sum))) {
            return fail(format!("seed {seed}: reassembly is not homotopic to the identity"));
        }
        summands += d.summands.len();
    }
    Ok(format!("100 complexes over F_2, {summands} summands in total"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("graded central ring", criterion1, 120),
        ("field two-point spectrum", criterion2, 120),
        ("kernel of π is ⟨cone β⟩", criterion3, 120),
        ("classification round trip", criterion4, 120),
        ("support laws", criterion5, 120),
        ("oracle and decision agree", criterion6, 60),
        ("quasi-abelian layer", criterion7, 120),
        ("Day tensor and graded equivalence", criterion8, 120),
        ("localization stabilizes", criterion9, 120),
        ("minimization and decomposition", criterion10, 120),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(_) if took > Duration::from_secs(*limit) => Err(format!("took {took:.1?}, limit {limit} s")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("PASS {label} ({detail}; exact; {took:.1?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {label}: {msg} (exact; {took:.1?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
