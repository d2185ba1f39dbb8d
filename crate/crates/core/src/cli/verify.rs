//! Randomized self-checks behind `fper verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::format::{Item, ObjectFile};
use crate::filtered::{day_tensor, factorization, is_epi, is_mono, is_strict, kappa, swap_matrix, FiltMorphism, FiltObject};
use crate::graded::{day_convolution_dim, graded_tensor_dim, graded_to_seq, seq_to_graded};
use crate::homotopy::{cone, graded_central_ring, invariants_agree, minimize, triangle_maps, FiltComplex, HomElement};
use crate::linalg::BaseRing;
use crate::oracle::{
    random_chain_map, random_complex_with, random_filt_chain, random_filt_morphism, random_filt_object, random_seq_object, separate,
    witness_cone_beta_power, RandomBounds,
};
use crate::spectrum::{in_ideal, support, support_pair, Layer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Filtcat,
    Homotopy,
    Spectrum,
    Oracle,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "filtcat" => Ok(Suite::Filtcat),
            "homotopy" => Ok(Suite::Homotopy),
            "spectrum" => Ok(Suite::Spectrum),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite '{s}' (filtcat, homotopy, spectrum, oracle, all)")),
        }
    }
}

/// Outcome of one named check over its cases.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub suite: &'static str,
    pub name: String,
    pub cases: usize,
    /// failure message and serialized counterexample
    pub failure: Option<String>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}/{} ({} cases)", self.suite, self.name, self.cases),
            Some(msg) => write!(f, "FAIL {}/{}: {msg}", self.suite, self.name),
        }
    }
}

type Outcome = std::result::Result<(), String>;

struct Runner {
    seed: u64,
    cases: usize,
    reports: Vec<CheckReport>,
}

impl Runner {
    /// Cases run in parallel; the reported failure is the one with the smallest index.
    fn check(&mut self, suite: &'static str, name: impl Into<String>, case: impl Fn(&mut ChaCha8Rng) -> Outcome + Sync) {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(self.cases.max(1));
        let (seed, cases) = (self.seed, self.cases);
        let run_case = |i: usize| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            case(&mut rng).err().map(|msg| (i, msg))
        };
        let failure = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads).map(|t| s.spawn(move || (t..cases).step_by(threads).find_map(run_case))).collect();
            handles.into_iter().filter_map(|h| h.join().expect("verification worker panicked")).min_by_key(|(i, _)| *i)
        });
        let failure = failure.map(|(i, msg)| format!("case {i}: {msg}"));
        self.reports.push(CheckReport { suite, name: name.into(), cases, failure });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Serialize the offending objects as an object file.
fn dump(ring: BaseRing, items: Vec<(&str, Item)>) -> String {
    let mut f = ObjectFile::new(ring);
    for (n, i) in items {
        f.push(n, i);
    }
    format!("\n{}", f.to_text())
}

fn complex_dump(ring: BaseRing, cs: &[(&str, &FiltComplex)]) -> String {
    dump(ring, cs.iter().map(|(n, c)| (*n, Item::Complex((*c).clone()))).collect())
}

fn small_bounds() -> RandomBounds {
    RandomBounds { max_steps: 2, max_piece_rank: 2, max_twist: 2, max_degree: 1, max_total_rank: 6 }
}

pub fn run(suite: Suite, seed: u64, cases: usize) -> Vec<CheckReport> {
    let mut r = Runner { seed, cases, reports: vec![] };
    let all = suite == Suite::All;
    if all || suite == Suite::Filtcat {
        filtcat(&mut r);
    }
    if all || suite == Suite::Homotopy {
        homotopy(&mut r);
    }
    if all || suite == Suite::Spectrum {
        spectrum(&mut r);
    }
    if all || suite == Suite::Oracle {
        oracle(&mut r);
    }
    r.reports
}

fn filtcat(r: &mut Runner) {
    let f3 = BaseRing::PrimeField(3);
    let f5 = BaseRing::PrimeField(5);
    r.check("filtcat", "factorization", |rng| {
        let a = random_filt_object(f3, rng, 3, 2);
        let b = random_filt_object(f3, rng, 3, 2);
        let f = random_filt_morphism(&a, &b, rng);
        let fac = factorization(&f).map_err(|e| e.to_string())?;
        let back = fac.mono.compose(&fac.middle.compose(&fac.epi).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let ok = is_strict(&fac.epi) && is_strict(&fac.mono) && is_mono(&fac.middle) && is_epi(&fac.middle) && back.pi() == f.pi();
        ensure(ok, || format!("factorization fails{}", dump(f3, vec![("A", Item::Filt(a)), ("B", Item::Filt(b))])))
    });
    r.check("filtcat", "kappa-reflector", |rng| {
        let a = random_seq_object(f3, rng, 2, 3);
        let (k, eta) = kappa(&a);
        let (kk, eta2) = kappa(&k);
        let b = random_filt_object(f3, rng, 2, 2);
        let g = random_filt_morphism(&k, &b, rng);
        let f = g.seq().compose(&eta).map_err(|e| e.to_string())?;
        // η is the identity on π, so the factorization is forced to be π(f)
        let g2 = FiltMorphism::from_pi(&k, &b, &f.pi()).map_err(|e| e.to_string())?;
        let ok = kk.dims() == k.dims() && eta2.is_iso() && g2.seq().compose(&eta).map_err(|e| e.to_string())? == f;
        ensure(ok, || format!("reflector law fails{}", dump(f3, vec![("A", Item::Seq(a))])))
    });
    r.check("filtcat", "day-tensor", |rng| {
        let a = random_filt_object(f5, rng, 2, 2);
        let b = random_filt_object(f5, rng, 2, 2);
        let c = random_filt_object(f5, rng, 2, 1);
        let (ab, ba) = (day_tensor(&a, &b), day_tensor(&b, &a));
        let swap = FiltMorphism::from_pi(&ab, &ba, &swap_matrix(f5, a.pi_dim(), b.pi_dim()));
        let l = day_tensor(&ab, &c);
        let rr = day_tensor(&a, &day_tensor(&b, &c));
        let n = l.pi_dim();
        let assoc = FiltMorphism::from_pi(&l, &rr, &crate::linalg::Matrix::identity(f5, n));
        let unit = day_tensor(&a, &FiltObject::twisted_unit(f5, 0));
        let ok = swap.is_ok_and(|s| s.is_iso())
            && assoc.is_ok_and(|s| s.is_iso())
            && unit.gr_dims() == a.gr_dims()
            && ab.gr_dims() == a.gr_dims().convolve(&b.gr_dims());
        ensure(ok, || format!("tensor law fails{}", dump(f5, vec![("A", Item::Filt(a)), ("B", Item::Filt(b)), ("C", Item::Filt(c))])))
    });
    r.check("filtcat", "graded-equivalence", |rng| {
        let a = random_seq_object(f5, rng, 2, 3);
        let b = random_seq_object(f5, rng, 2, 3);
        let (ma, mb) = (seq_to_graded(&a), seq_to_graded(&b));
        let round = graded_to_seq(&ma) == a && seq_to_graded(&graded_to_seq(&ma)) == ma;
        let lo = a.lo() + b.lo() - 1;
        let hi = a.hi() + b.hi() + 1;
        let dims = (lo..=hi).all(|n| day_convolution_dim(&a, &b, n) == graded_tensor_dim(&ma, &mb, n));
        ensure(round && dims, || format!("graded equivalence fails{}", dump(f5, vec![("A", Item::Seq(a)), ("B", Item::Seq(b))])))
    });
    r.check("filtcat", "strict-exactness", |rng| {
        let x = random_filt_chain(f3, rng);
        let (s, p, g) = (x.is_strictly_exact(), x.has_strict_differentials() && x.is_pi_exact(), x.is_gr_exact());
        ensure(s == p && p == g, || {
            let items = x.objects.iter().enumerate().map(|(i, o)| (["X0", "X1", "X2", "X3", "X4", "X5"][i.min(5)], Item::Filt(o.clone()))).collect();
            format!("strictly exact {s}, strict and π-exact {p}, gr-exact {g}{}", dump(f3, items))
        })
    });
}

fn homotopy(r: &mut Runner) {
    for ring in [BaseRing::Integers, BaseRing::PrimeField(2)] {
        r.check("homotopy", format!("d-squared[{ring}]"), move |rng| {
            let a = random_complex_with(ring, rng, &small_bounds());
            let b = random_complex_with(ring, rng, &small_bounds());
            let f = random_chain_map(&a, &b, rng);
            let dumped = |e: crate::error::Error| format!("{e}{}", complex_dump(ring, &[("A", &a), ("B", &b)]));
            let c = cone(&f).map_err(dumped)?;
            // f∘d_A ≠ 0 for the identity, so a sign slip in the cone cannot cancel
            let ca = cone(&HomElement::identity(&a)).map_err(dumped)?;
            for x in [a.tensor(&b), a.dual(), c, ca] {
                for k in x.degrees() {
                    if !(&x.diff(k + 1) * &x.diff(k)).is_zero() {
                        return Err(format!("d∘d ≠ 0 in degree {k}{}", complex_dump(ring, &[("A", &a), ("B", &b)])));
                    }
                }
            }
            Ok(())
        });
        r.check("homotopy", format!("triangle[{ring}]"), move |rng| {
            let a = random_complex_with(ring, rng, &small_bounds());
            let b = random_complex_with(ring, rng, &small_bounds());
            let f = random_chain_map(&a, &b, rng);
            let (i, p) = triangle_maps(&f).map_err(|e| e.to_string())?;
            let if_ = i.compose(&f).map_err(|e| e.to_string())?;
            let pi = p.compose(&i).map_err(|e| e.to_string())?;
            ensure(if_.is_nullhomotopic() && pi.is_zero(), || {
                format!("triangle composites are not null{}", complex_dump(ring, &[("A", &a), ("B", &b)]))
            })
        });
        r.check("homotopy", format!("minimize[{ring}]"), move |rng| {
            let a = random_complex_with(ring, rng, &small_bounds());
            let red = minimize(&a);
            let back = red.backward.compose(&red.forward).map_err(|e| e.to_string())?;
            let fwd = red.forward.compose(&red.backward).map_err(|e| e.to_string())?;
            let ok = back.is_homotopic_to(&HomElement::identity(&a))
                && fwd.is_homotopic_to(&HomElement::identity(&red.complex))
                && invariants_agree(&a, &red.complex)
                && minimize(&red.complex).complex == red.complex;
            ensure(ok, || format!("minimization is not an equivalence{}", complex_dump(ring, &[("A", &a)])))
        });
    }
    r.check("homotopy", "central-ring", |rng| {
        let ring = [BaseRing::Integers, BaseRing::Rationals, BaseRing::PrimeField(2), BaseRing::PrimeField(7)][rng.gen_range(0..4)];
        let ranks: Vec<usize> = graded_central_ring(ring, -2, 3).iter().map(|s| s.free_rank).collect();
        ensure(ranks == [0, 0, 1, 1, 1, 1], || format!("central ring of {ring} has ranks {ranks:?}"))
    });
}

fn spectrum(r: &mut Runner) {
    let z = BaseRing::Integers;
    let cb = FiltComplex::cone_beta(z);
    r.check("spectrum", "layer-inclusion", |rng| {
        let a = random_complex_with(z, rng, &small_bounds());
        let p = support_pair(&a);
        ensure(p.pi().is_subset(p.gr()), || format!("supp_π ⊄ supp_gr{}", complex_dump(z, &[("A", &a)])))
    });
    r.check("spectrum", "tensor-and-cone", |rng| {
        let a = random_complex_with(z, rng, &small_bounds());
        let b = random_complex_with(z, rng, &small_bounds());
        let f = random_chain_map(&a, &b, rng);
        let c = cone(&f).map_err(|e| e.to_string())?;
        let ab = a.tensor(&b);
        for layer in [Layer::Pi, Layer::Gr] {
            let (sa, sb) = (support(&a, layer), support(&b, layer));
            if support(&ab, layer) != sa.intersection(&sb) || !support(&c, layer).is_subset(&sa.union(&sb)) {
                return Err(format!("support law fails in layer {}{}", layer.name(), complex_dump(z, &[("A", &a), ("B", &b)])));
            }
        }
        Ok(())
    });
    r.check("spectrum", "kernel-of-pi", |rng| {
        let a = random_complex_with(z, rng, &small_bounds());
        let x = a.pi_complex().is_acyclic();
        let y = support(&a, Layer::Pi).is_empty();
        let w = in_ideal(&a, std::slice::from_ref(&cb));
        ensure(x == y && y == w, || format!("π-acyclic {x}, empty supp_π {y}, in ⟨cone(β)⟩ {w}{}", complex_dump(z, &[("A", &a)])))
    });
}

fn oracle(r: &mut Runner) {
    for ring in [BaseRing::Integers, BaseRing::PrimeField(2)] {
        r.check("oracle", format!("decision-agreement[{ring}]"), move |rng| {
            let a = random_complex_with(ring, rng, &small_bounds());
            let g = random_complex_with(ring, rng, &small_bounds());
            let member = in_ideal(&a, std::slice::from_ref(&g));
            let sep = separate(&a, std::slice::from_ref(&g));
            ensure(member == sep.is_none(), || format!("in_ideal {member} but separate gave {sep:?}{}", complex_dump(ring, &[("A", &a), ("G", &g)])))
        });
    }
    r.check("oracle", "beta-power-witness", |rng| {
        let ring = [BaseRing::Integers, BaseRing::PrimeField(2), BaseRing::Rationals][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let w = witness_cone_beta_power(ring, n).map_err(|e| e.to_string())?;
        w.verify().map_err(|e| format!("witness for n = {n} over {ring}: {e}"))
    });
}
