use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, BaseRing};

/// A point of `Spec(R)`: the generic point or a closed point `(p)` of `Spec(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasePrime {
    Generic,
    Closed(u64),
}

impl BasePrime {
    pub fn closed(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BasePrime::Closed(p))
        } else {
            Err(Error::Thomason(format!("{p} is not prime")))
        }
    }

    /// Residue field of the point inside `ring`.
    pub fn residue_field(self, ring: BaseRing) -> Result<BaseRing> {
        match (ring, self) {
            (BaseRing::Integers, BasePrime::Generic) => Ok(BaseRing::Rationals),
            (BaseRing::Integers, BasePrime::Closed(p)) => BaseRing::prime_field(p),
            (r, BasePrime::Generic) => Ok(r),
            (r, BasePrime::Closed(p)) => Err(Error::Thomason(format!("({p}) is not a point of Spec({r})"))),
        }
    }

    pub fn label(self) -> String {
        match self {
            BasePrime::Generic => "0".into(),
            BasePrime::Closed(p) => p.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    /// points `𝔭[β]` detected by `π`
    Pi,
    /// points `𝔭 + ⟨β⟩` detected by `gr`
    Gr,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Pi => "pi",
            Layer::Gr => "gr",
        }
    }
}

/// A homogeneous prime of `R[β]`, given by its layer and its base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPrime {
    pub layer: Layer,
    pub base: BasePrime,
}

impl HomPrime {
    pub fn new(layer: Layer, base: BasePrime) -> Self {
        HomPrime { layer, base }
    }

    /// Stable node name, e.g. `pi:0`, `gr:3`.
    pub fn node_name(&self) -> String {
        format!("{}:{}", self.layer.name(), self.base.label())
    }
}

impl fmt::Display for HomPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.node_name())
    }
}

/// A Thomason subset of `Spec(R)` for `R ∈ {Q, F_p, Z}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ThomasonSubset {
    Empty,
    All,
    /// nonempty finite set of closed points (integers only)
    Finite(BTreeSet<u64>),
}

impl ThomasonSubset {
    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Self {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if set.is_empty() {
            ThomasonSubset::Empty
        } else {
            ThomasonSubset::Finite(set)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ThomasonSubset::Empty)
    }

    pub fn contains_point(&self, p: BasePrime) -> bool {
        match (self, p) {
            (ThomasonSubset::All, _) => true,
            (ThomasonSubset::Finite(s), BasePrime::Closed(q)) => s.contains(&q),
            _ => false,
        }
    }

    pub fn is_subset(&self, other: &ThomasonSubset) -> bool {
        match (self, other) {
            (ThomasonSubset::Empty, _) | (_, ThomasonSubset::All) => true,
            (ThomasonSubset::Finite(a), ThomasonSubset::Finite(b)) => a.is_subset(b),
            _ => false,
        }
    }

    pub fn union(&self, other: &ThomasonSubset) -> ThomasonSubset {
        match (self, other) {
            (ThomasonSubset::All, _) | (_, ThomasonSubset::All) => ThomasonSubset::All,
            (ThomasonSubset::Empty, x) | (x, ThomasonSubset::Empty) => x.clone(),
            (ThomasonSubset::Finite(a), ThomasonSubset::Finite(b)) => ThomasonSubset::Finite(a.union(b).copied().collect()),
        }
    }

    pub fn intersection(&self, other: &ThomasonSubset) -> ThomasonSubset {
        match (self, other) {
            (ThomasonSubset::All, x) | (x, ThomasonSubset::All) => x.clone(),
            (ThomasonSubset::Empty, _) | (_, ThomasonSubset::Empty) => ThomasonSubset::Empty,
            (ThomasonSubset::Finite(a), ThomasonSubset::Finite(b)) => ThomasonSubset::finite(a.intersection(b).copied()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ThomasonSubset::Empty => json!("Empty"),
            ThomasonSubset::All => json!("All"),
            ThomasonSubset::Finite(s) => json!(s.iter().collect::<Vec<_>>()),
        }
    }
}

impl fmt::Display for ThomasonSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThomasonSubset::Empty => write!(f, "Empty"),
            ThomasonSubset::All => write!(f, "All"),
            ThomasonSubset::Finite(s) => {
                let v: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", v.join(","))
            }
        }
    }
}

/// A pair `Π ⊆ Γ` of Thomason subsets classifying a tt-ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThomasonPair {
    pi: ThomasonSubset,
    gr: ThomasonSubset,
}

impl ThomasonPair {
    pub fn new(pi: ThomasonSubset, gr: ThomasonSubset) -> Result<Self> {
        if !pi.is_subset(&gr) {
            return Err(Error::Thomason(format!("Π = {pi} is not contained in Γ = {gr}")));
        }
        Ok(ThomasonPair { pi, gr })
    }

    pub fn zero() -> Self {
        ThomasonPair { pi: ThomasonSubset::Empty, gr: ThomasonSubset::Empty }
    }

    pub fn pi(&self) -> &ThomasonSubset {
        &self.pi
    }

    pub fn gr(&self) -> &ThomasonSubset {
        &self.gr
    }

    pub fn le(&self, other: &ThomasonPair) -> bool {
        self.pi.is_subset(&other.pi) && self.gr.is_subset(&other.gr)
    }

    pub fn join(&self, other: &ThomasonPair) -> ThomasonPair {
        ThomasonPair { pi: self.pi.union(&other.pi), gr: self.gr.union(&other.gr) }
    }
}

impl fmt::Display for ThomasonPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pi, self.gr)
    }
}

/// One layer of a subset of the two-layer spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LayerSet {
    All,
    Points(BTreeSet<BasePrime>),
}

/// A subset of `Spec^h(R[β]) ≅ Spec(R) ⊔ Spec(R)`, layer by layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomSubset {
    pub pi: LayerSet,
    pub gr: LayerSet,
}

impl HomSubset {
    pub fn contains(&self, p: &HomPrime) -> bool {
        let layer = match p.layer {
            Layer::Pi => &self.pi,
            Layer::Gr => &self.gr,
        };
        match layer {
            LayerSet::All => true,
            LayerSet::Points(s) => s.contains(&p.base),
        }
    }
}

fn layer_of(t: &ThomasonSubset) -> LayerSet {
    match t {
        ThomasonSubset::All => LayerSet::All,
        ThomasonSubset::Empty => LayerSet::Points(BTreeSet::new()),
        ThomasonSubset::Finite(s) => LayerSet::Points(s.iter().map(|&p| BasePrime::Closed(p)).collect()),
    }
}

fn thomason_of(l: &LayerSet) -> Result<ThomasonSubset> {
    match l {
        LayerSet::All => Ok(ThomasonSubset::All),
        LayerSet::Points(s) => {
            let mut out = BTreeSet::new();
            for p in s {
                match p {
                    BasePrime::Generic => return Err(Error::Thomason("a layer containing the generic point must be everything".into())),
                    BasePrime::Closed(q) => {
                        BasePrime::closed(*q)?;
                        out.insert(*q);
                    }
                }
            }
            Ok(ThomasonSubset::finite(out))
        }
    }
}

/// `(Π, Γ) ↦ spc(π)(Π) ⊔ spc(gr)(Γ)`.
pub fn pair_to_subset(pair: &ThomasonPair) -> HomSubset {
    HomSubset { pi: layer_of(&pair.pi), gr: layer_of(&pair.gr) }
}

/// Inverse of [`pair_to_subset`]; rejects subsets that are not Thomason.
pub fn subset_to_pair(y: &HomSubset) -> Result<ThomasonPair> {
    ThomasonPair::new(thomason_of(&y.pi)?, thomason_of(&y.gr)?)
}

/// DOT diagram of `Spec^h(R[β])`, closed primes up to `bound` for `R = Z`.
pub fn emit_spectrum(ring: BaseRing, bound: u64) -> String {
    let bases: Vec<BasePrime> = match ring {
        BaseRing::Integers => std::iter::once(BasePrime::Generic).chain((2..=bound).filter(|&p| is_prime(p)).map(BasePrime::Closed)).collect(),
        _ => vec![BasePrime::Generic],
    };
    let mut out = String::from("digraph spectrum {\n");
    for layer in [Layer::Pi, Layer::Gr] {
        for &b in &bases {
            let p = HomPrime::new(layer, b);
            out.push_str(&format!("  \"{}\";\n", p.node_name()));
        }
    }
    for (from, to) in spectrum_edges(&bases) {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", from.node_name(), to.node_name()));
    }
    out.push_str("}\n");
    out
}

/// Specialization edges: across layers, from the generic point in each layer, and their composite.
pub fn spectrum_edges(bases: &[BasePrime]) -> Vec<(HomPrime, HomPrime)> {
    let mut edges = Vec::new();
    for &b in bases {
        edges.push((HomPrime::new(Layer::Pi, b), HomPrime::new(Layer::Gr, b)));
    }
    for &b in bases.iter().filter(|b| **b != BasePrime::Generic) {
        for layer in [Layer::Pi, Layer::Gr] {
            edges.push((HomPrime::new(layer, BasePrime::Generic), HomPrime::new(layer, b)));
        }
        edges.push((HomPrime::new(Layer::Pi, BasePrime::Generic), HomPrime::new(Layer::Gr, b)));
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[u64]) -> ThomasonSubset {
        ThomasonSubset::finite(v.iter().copied())
    }

    #[test]
    fn pair_round_trip() {
        let p = ThomasonPair::new(fin(&[2]), fin(&[2, 3])).unwrap();
        let y = pair_to_subset(&p);
        assert!(y.contains(&HomPrime::new(Layer::Pi, BasePrime::Closed(2))));
        assert!(!y.contains(&HomPrime::new(Layer::Pi, BasePrime::Closed(3))));
        assert!(y.contains(&HomPrime::new(Layer::Gr, BasePrime::Closed(3))));
        assert_eq!(subset_to_pair(&y).unwrap(), p);
        let q = ThomasonPair::new(ThomasonSubset::Empty, ThomasonSubset::All).unwrap();
        assert_eq!(subset_to_pair(&pair_to_subset(&q)).unwrap(), q);
    }

    #[test]
    fn containment_is_enforced() {
        assert!(ThomasonPair::new(fin(&[3]), fin(&[2])).is_err());
        assert!(ThomasonPair::new(ThomasonSubset::All, fin(&[2])).is_err());
        let bad = HomSubset { pi: LayerSet::Points([BasePrime::Generic].into()), gr: LayerSet::All };
        assert!(subset_to_pair(&bad).is_err());
    }

    #[test]
    fn field_diagram() {
        let dot = emit_spectrum(BaseRing::Rationals, 0);
        assert_eq!(dot.matches(";\n").count() - dot.matches("->").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("\"pi:0\" -> \"gr:0\""));
    }

    #[test]
    fn integer_diagram_nodes() {
        let dot = emit_spectrum(BaseRing::Integers, 5);
        let nodes = dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count();
        assert_eq!(nodes, 8);
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(fin(&[2]).union(&fin(&[3])), fin(&[2, 3]));
        assert_eq!(fin(&[2]).intersection(&fin(&[3])), ThomasonSubset::Empty);
        assert_eq!(ThomasonSubset::All.intersection(&fin(&[5])), fin(&[5]));
        assert!(fin(&[2]).is_subset(&ThomasonSubset::All));
        assert!(!ThomasonSubset::All.is_subset(&fin(&[2])));
    }
}
