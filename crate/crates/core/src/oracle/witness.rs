use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homotopy::{are_homotopy_equivalent, certify_equivalence, cone, ChainMap, FiltComplex, HomElement};
use crate::linalg::{BaseRing, Matrix};

/// One step of a build trace; indices refer to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Generator {
        index: usize,
    },
    Shift {
        of: usize,
        k: i64,
    },
    Twist {
        of: usize,
        n: i64,
    },
    /// cone of a chain map between two earlier objects, given by its components
    Cone {
        from: usize,
        to: usize,
        map: Vec<Matrix>,
    },
    /// a retract `object` of an earlier object: `retraction ∘ section ≃ id`
    SummandOf {
        of: usize,
        object: FiltComplex,
        section: Vec<Matrix>,
        retraction: Vec<Matrix>,
    },
}

impl Step {
    fn deps(&self) -> Vec<usize> {
        match self {
            Step::Generator { .. } => vec![],
            Step::Shift { of, .. } | Step::Twist { of, .. } | Step::SummandOf { of, .. } => vec![*of],
            Step::Cone { from, to, .. } => vec![*from, *to],
        }
    }

    fn reindex(&self, map: &BTreeMap<usize, usize>) -> Step {
        match self {
            Step::Generator { index } => Step::Generator { index: *index },
            Step::Shift { of, k } => Step::Shift { of: map[of], k: *k },
            Step::Twist { of, n } => Step::Twist { of: map[of], n: *n },
            Step::Cone { from, to, map: m } => Step::Cone { from: map[from], to: map[to], map: m.clone() },
            Step::SummandOf { of, object, section, retraction } => {
                Step::SummandOf { of: map[of], object: object.clone(), section: section.clone(), retraction: retraction.clone() }
            }
        }
    }
}

/// A certified construction of an object of `⟨generators⟩` equivalent to `target`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub ring: BaseRing,
    pub generators: Vec<FiltComplex>,
    pub target: FiltComplex,
    pub steps: Vec<Step>,
    /// built object → target
    pub to_target: Vec<Matrix>,
    /// target → built object
    pub from_target: Vec<Matrix>,
}

/// Incremental trace builder that keeps the object built at each step.
#[derive(Clone, Debug)]
pub struct TraceBuilder {
    pub generators: Vec<FiltComplex>,
    pub steps: Vec<Step>,
    pub objects: Vec<FiltComplex>,
}

impl TraceBuilder {
    pub fn new(generators: &[FiltComplex]) -> Self {
        TraceBuilder { generators: generators.to_vec(), steps: vec![], objects: vec![] }
    }

    pub fn push(&mut self, step: Step) -> Result<usize> {
        let obj = build_step(&self.generators, &self.objects, &step)?;
        self.steps.push(step);
        self.objects.push(obj);
        Ok(self.steps.len() - 1)
    }

    pub fn object(&self, i: usize) -> &FiltComplex {
        &self.objects[i]
    }

    /// Finish with the object of step `last`, certifying it against `target`.
    pub fn finish(&self, last: usize, target: &FiltComplex) -> Option<Witness> {
        let built = &self.objects[last];
        let (u, v) = are_homotopy_equivalent(built, target)?;
        let mut keep = vec![false; last + 1];
        keep[last] = true;
        for i in (0..=last).rev() {
            if keep[i] {
                for d in self.steps[i].deps() {
                    keep[d] = true;
                }
            }
        }
        let mut map = BTreeMap::new();
        let mut steps = Vec::new();
        for i in 0..=last {
            if keep[i] {
                map.insert(i, steps.len());
                steps.push(self.steps[i].reindex(&map));
            }
        }
        Some(Witness {
            ring: target.ring(),
            generators: self.generators.clone(),
            target: target.clone(),
            steps,
            to_target: u.components().to_vec(),
            from_target: v.components().to_vec(),
        })
    }
}

fn build_step(gens: &[FiltComplex], objects: &[FiltComplex], step: &Step) -> Result<FiltComplex> {
    let get = |i: usize| objects.get(i).ok_or_else(|| Error::Witness(format!("step refers to unknown step {i}")));
    match step {
        Step::Generator { index } => gens.get(*index).cloned().ok_or_else(|| Error::Witness(format!("no generator {index}"))),
        Step::Shift { of, k } => Ok(get(*of)?.shift(*k)),
        Step::Twist { of, n } => Ok(get(*of)?.twist(*n)),
        Step::Cone { from, to, map } => {
            let f = HomElement::chain_map(get(*from)?, get(*to)?, map.clone())?;
            cone(&f)
        }
        Step::SummandOf { of, object, section, retraction } => {
            let big = get(*of)?;
            let s = HomElement::chain_map(object, big, section.clone())?;
            let r = HomElement::chain_map(big, object, retraction.clone())?;
            if !r.compose(&s)?.is_homotopic_to(&HomElement::identity(object)) {
                return Err(Error::Witness("retraction ∘ section is not the identity".into()));
            }
            Ok(object.clone())
        }
    }
}

impl Witness {
    pub fn built(&self) -> Result<FiltComplex> {
        let mut objects = Vec::new();
        for s in &self.steps {
            objects.push(build_step(&self.generators, &objects, s)?);
        }
        objects.pop().ok_or_else(|| Error::Witness("empty trace".into()))
    }

    pub fn equivalence(&self) -> Result<(ChainMap, ChainMap)> {
        let built = self.built()?;
        let u = HomElement::chain_map(&built, &self.target, self.to_target.clone())?;
        let v = HomElement::chain_map(&self.target, &built, self.from_target.clone())?;
        Ok((u, v))
    }

    /// Replay every step and certify the final homotopy equivalence.
    pub fn verify(&self) -> Result<()> {
        let (u, v) = self.equivalence()?;
        if certify_equivalence(&u, &v) {
            Ok(())
        } else {
            Err(Error::Witness("final maps are not inverse homotopy equivalences".into()))
        }
    }

    pub fn cone_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Cone { .. })).count()
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Generator { index } => json!({ "op": "generator", "index": index }),
                Step::Shift { of, k } => json!({ "op": "shift", "of": of, "k": k }),
                Step::Twist { of, n } => json!({ "op": "twist", "of": of, "n": n }),
                Step::Cone { from, to, map } => json!({ "op": "cone", "from": from, "to": to, "map": matrices_json(map) }),
                Step::SummandOf { of, object, section, retraction } => json!({
                    "op": "summand_of",
                    "of": of,
                    "object": object.to_string(),
                    "section": matrices_json(section),
                    "retraction": matrices_json(retraction),
                }),
            })
            .collect();
        json!({
            "ring": self.ring.to_string(),
            "target": self.target.to_string(),
            "steps": steps,
            "to_target": matrices_json(&self.to_target),
            "from_target": matrices_json(&self.from_target),
        })
    }
}

pub fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(
        ms.iter()
            .map(|m| {
                Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| Value::String(m.get(i, j).to_string())).collect())).collect())
            })
            .collect(),
    )
}

/// Build `cone(β^n)` from `cone(β)` by `n - 1` cones along `β^n = β ∘ β^{n-1}`.
///
/// Step `m` cones `w: cone(β)(m-1)[-1] → cone(β^{m-1})`, `-1` on the shared `R(m-1)`,
/// whose cone reduces to `cone(β^m)`.
pub fn witness_cone_beta_power(ring: BaseRing, n: u32) -> Result<Witness> {
    if n == 0 {
        return Err(Error::Witness("n must be at least 1".into()));
    }
    let cb = FiltComplex::cone_beta(ring);
    let mut tb = TraceBuilder::new(std::slice::from_ref(&cb));
    let g = tb.push(Step::Generator { index: 0 })?;
    let mut cur = g;
    // equivalence cone(β^{m-1}) → built object
    let mut back = HomElement::identity(&cb);
    for m in 2..=n as i64 {
        let t = tb.push(Step::Twist { of: g, n: m - 1 })?;
        let s = tb.push(Step::Shift { of: t, k: -1 })?;
        let src = tb.object(s).clone();
        let prev = FiltComplex::cone_beta_power(ring, m - 1, 1);
        let w = HomElement::chain_map(&src, &prev, vec![Matrix::from_i64(ring, &[vec![-1]]), Matrix::zeros(ring, 0, 1)])?;
        let w = back.compose(&w)?;
        cur = tb.push(Step::Cone { from: s, to: cur, map: w.components().to_vec() })?;
        let target = FiltComplex::cone_beta_power(ring, m, 1);
        let (_, v) = are_homotopy_equivalent(tb.object(cur), &target).ok_or_else(|| Error::Witness(format!("cone step {m} failed")))?;
        back = v;
    }
    tb.finish(cur, &FiltComplex::cone_beta_power(ring, n as i64, 1)).ok_or_else(|| Error::Witness("final equivalence not found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_trace() {
        let w = witness_cone_beta_power(BaseRing::PrimeField(2), 1).unwrap();
        assert_eq!(w.steps.len(), 1);
        w.verify().unwrap();
    }

    #[test]
    fn beta_powers_certify() {
        for ring in [BaseRing::PrimeField(2), BaseRing::Integers, BaseRing::Rationals] {
            for n in 2..=3 {
                let w = witness_cone_beta_power(ring, n).unwrap();
                assert_eq!(w.cone_steps(), n as usize - 1);
                w.verify().unwrap();
            }
        }
    }

    #[test]
    fn tampered_witness_fails() {
        let mut w = witness_cone_beta_power(BaseRing::Integers, 2).unwrap();
        w.to_target = w.to_target.iter().map(|m| Matrix::zeros(m.ring(), m.rows(), m.cols())).collect();
        assert!(w.verify().is_err());
    }

    #[test]
    fn json_lists_steps() {
        let w = witness_cone_beta_power(BaseRing::PrimeField(2), 2).unwrap();
        let j = w.to_json();
        assert_eq!(j["steps"].as_array().unwrap().len(), 4);
        assert_eq!(j["steps"][3]["op"], "cone");
    }
}
