use std::collections::HashSet;

use crate::homotopy::{decompose_field, minimize, FiltComplex, HomComplex, HomElement, Summand};
use crate::linalg::BaseRing;
use crate::spectrum::{candidate_points, in_ideal, prime_test, BasePrime, HomPrime, Layer};

use super::witness::{Step, TraceBuilder, Witness};

/// Limits for [`closure_search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchBounds {
    /// number of cone rounds
    pub depth: usize,
    /// distinct objects kept (up to shift and twist)
    pub max_objects: usize,
    pub max_total_rank: usize,
    /// twist offsets `-t..=t` tried for the target of each map
    pub twist_offsets: i64,
    /// shift offsets `-s..=s` tried for the target of each map
    pub shift_offsets: i64,
    /// maps per pair of objects, enumerated from `H^0`
    pub maps_per_pair: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { depth: 3, max_objects: 200, max_total_rank: 8, twist_offsets: 3, shift_offsets: 1, maps_per_pair: 16 }
    }
}

/// Canonical form up to shift and twist, with the offsets used to reach it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    summands: Vec<Summand>,
    fingerprint: String,
}

fn normal_form(a: &FiltComplex) -> Option<(Key, i64, i64)> {
    if a.ring().is_field() {
        let d = decompose_field(a).expect("field");
        if d.summands.is_empty() {
            return None;
        }
        let dk = -d.summands.iter().map(summand_degree).min().unwrap_or(0);
        let dt = -d.summands.iter().map(summand_twist).min().unwrap_or(0);
        let mut s: Vec<Summand> = d.summands.iter().map(|x| x.shifted(dk, dt)).collect();
        s.sort();
        Some((Key { summands: s, fingerprint: String::new() }, dk, dt))
    } else {
        let m = minimize(a).complex;
        if m.is_empty() {
            return None;
        }
        let dk = -m.lo();
        let dt = -m.twist_range().map(|r| r.0).unwrap_or(0);
        let n = m.shift(-dk).twist(dt).sorted().0;
        Some((Key { summands: vec![], fingerprint: unsigned_fingerprint(&n) }, dk, dt))
    }
}

/// Twists per degree and differential entries up to sign. Equal keys are only a hint over Z;
/// the final match is certified by an explicit equivalence.
fn unsigned_fingerprint(a: &FiltComplex) -> String {
    let mut out = String::new();
    for k in a.degrees() {
        out.push_str(&format!("{:?};", a.object(k)));
        for e in a.diff(k).entries() {
            let v = e.as_bigint().map(|b| b.magnitude().to_string()).unwrap_or_else(|| e.to_string());
            out.push_str(&v);
            out.push(',');
        }
        out.push('|');
    }
    out
}

fn summand_degree(s: &Summand) -> i64 {
    match *s {
        Summand::Free { degree, .. } | Summand::Cone { degree, .. } => degree,
    }
}

fn summand_twist(s: &Summand) -> i64 {
    match *s {
        Summand::Free { twist, .. } => twist,
        Summand::Cone { source, .. } => source,
    }
}

/// Up to `limit` maps `a → b` in `H^0`: zero, basis elements, then small combinations.
fn enumerate_maps(a: &FiltComplex, b: &FiltComplex, limit: usize) -> Vec<HomElement> {
    let basis = HomComplex::new(a, b).h0_basis().all();
    let ring = a.ring();
    let mut out = vec![HomElement::zero(a, b, 0)];
    let coeffs: Vec<i64> = match ring {
        BaseRing::PrimeField(p) => (1..p as i64).collect(),
        _ => vec![1, -1],
    };
    // mixed-radix counter over (0 | coeffs) per basis element
    let radix = coeffs.len() + 1;
    let mut counter = vec![0usize; basis.len()];
    while out.len() < limit {
        let mut i = 0;
        while i < counter.len() {
            counter[i] += 1;
            if counter[i] < radix {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if i == counter.len() {
            break;
        }
        let mut f = HomElement::zero(a, b, 0);
        for (g, &c) in basis.iter().zip(&counter) {
            if c > 0 {
                f = f.add(&g.scale(&ring.from_i64(coeffs[c - 1])));
            }
        }
        out.push(f);
    }
    out
}

/// Breadth-first search for `target` in the thick closure of `gens` under shifts, twists and cones.
///
/// Objects are deduplicated up to shift and twist. A found object is aligned with the target
/// and the result carries a certified equivalence.
pub fn closure_search(target: &FiltComplex, gens: &[FiltComplex], bounds: &SearchBounds) -> Option<Witness> {
    let mut tb = TraceBuilder::new(gens);
    let mut seen = HashSet::new();
    // (step index, dk, dt)
    let mut pool: Vec<(usize, i64, i64)> = Vec::new();
    let Some((tkey, tdk, tdt)) = normal_form(target) else {
        let g = tb.push(Step::Generator { index: 0 }).ok()?;
        let id = HomElement::identity(tb.object(g));
        let c = tb.push(Step::Cone { from: g, to: g, map: id.components().to_vec() }).ok()?;
        return tb.finish(c, target);
    };
    let found = |tb: &mut TraceBuilder, idx: usize, dk: i64, dt: i64| -> Option<Witness> {
        let t = tb.push(Step::Twist { of: idx, n: dt - tdt }).ok()?;
        let s = tb.push(Step::Shift { of: t, k: tdk - dk }).ok()?;
        tb.finish(s, target)
    };
    for i in 0..gens.len() {
        let idx = tb.push(Step::Generator { index: i }).ok()?;
        let Some((key, dk, dt)) = normal_form(tb.object(idx)) else { continue };
        if key == tkey {
            if let Some(w) = found(&mut tb, idx, dk, dt) {
                return Some(w);
            }
        }
        if seen.insert(key) {
            pool.push((idx, dk, dt));
        }
    }
    let mut frontier_start = 0;
    for _ in 0..bounds.depth {
        let frontier_end = pool.len();
        for x in 0..frontier_end {
            for y in 0..frontier_end {
                if x < frontier_start && y < frontier_start {
                    continue;
                }
                for t in -bounds.twist_offsets..=bounds.twist_offsets {
                    for s in -bounds.shift_offsets..=bounds.shift_offsets {
                        let (xi, ..) = pool[x];
                        let (yi, ..) = pool[y];
                        let (a, b) = (tb.object(xi).clone(), tb.object(yi).shift(s).twist(t));
                        if a.total_rank() + b.total_rank() > bounds.max_total_rank {
                            continue;
                        }
                        let maps = enumerate_maps(&a, &b, bounds.maps_per_pair);
                        let mut yt = None;
                        for f in maps {
                            let c = match crate::homotopy::cone(&f) {
                                Ok(c) => c,
                                Err(_) => continue,
                            };
                            let Some((key, dk, dt)) = normal_form(&c) else { continue };
                            let is_target = key == tkey;
                            if !is_target && (seen.contains(&key) || pool.len() >= bounds.max_objects) {
                                continue;
                            }
                            let shifted = match yt {
                                Some(i) => i,
                                None => {
                                    let ti = tb.push(Step::Twist { of: yi, n: t }).ok()?;
                                    let si = tb.push(Step::Shift { of: ti, k: s }).ok()?;
                                    yt = Some(si);
                                    si
                                }
                            };
                            let ci = tb.push(Step::Cone { from: xi, to: shifted, map: f.components().to_vec() }).ok()?;
                            if is_target {
                                if let Some(w) = found(&mut tb, ci, dk, dt) {
                                    return Some(w);
                                }
                            }
                            seen.insert(key);
                            pool.push((ci, dk, dt));
                        }
                    }
                }
            }
        }
        if pool.len() == frontier_end {
            break;
        }
        frontier_start = frontier_end;
    }
    None
}

/// A prime containing every generator but not `a`, when `a ∉ ⟨gens⟩`.
pub fn separate(a: &FiltComplex, gens: &[FiltComplex]) -> Option<HomPrime> {
    if in_ideal(a, gens) {
        return None;
    }
    let mut points: Vec<BasePrime> = candidate_points(a).into_iter().collect();
    points.sort();
    for layer in [Layer::Pi, Layer::Gr] {
        for base in &points {
            let p = HomPrime::new(layer, *base);
            if !prime_test(a, &p).ok()? && gens.iter().all(|g| prime_test(g, &p).unwrap_or(false)) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: BaseRing = BaseRing::PrimeField(2);

    #[test]
    fn finds_cone_beta_squared() {
        let target = FiltComplex::cone_beta_power(F2, 2, 1).twist(1);
        let w = closure_search(&target, &[FiltComplex::cone_beta(F2)], &SearchBounds::default()).expect("witness");
        w.verify().unwrap();
    }

    #[test]
    fn finds_sums() {
        let cb = FiltComplex::cone_beta(F2);
        let target = cb.direct_sum(&cb.shift(1).twist(2));
        let w = closure_search(&target, &[cb], &SearchBounds::default()).expect("witness");
        w.verify().unwrap();
    }

    #[test]
    fn unit_is_not_reached() {
        let b = SearchBounds { depth: 1, ..SearchBounds::default() };
        assert!(closure_search(&FiltComplex::unit(F2), &[FiltComplex::cone_beta(F2)], &b).is_none());
    }

    #[test]
    fn separating_primes() {
        let z = BaseRing::Integers;
        let p = separate(&FiltComplex::unit(z), &[FiltComplex::cone_beta(z)]).unwrap();
        assert_eq!(p, HomPrime::new(Layer::Pi, BasePrime::Generic));
        let p = separate(&FiltComplex::cone_scalar(z, 3), &[FiltComplex::cone_scalar(z, 2)]).unwrap();
        assert_eq!(p.base, BasePrime::Closed(3));
        assert!(separate(&FiltComplex::cone_beta(z), &[FiltComplex::unit(z)]).is_none());
    }
}
