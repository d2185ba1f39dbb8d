use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; residues then multiply inside a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// One of the three supported base rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Rationals,
    PrimeField(u64),
    Integers,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidRing(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(BaseRing::PrimeField(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    pub fn zero(self) -> RingElem {
        self.from_i64(0)
    }

    pub fn one(self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> RingElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> RingElem {
        match self {
            BaseRing::Integers => RingElem::Int(n.clone()),
            BaseRing::Rationals => RingElem::Rat(BigRational::from_integer(n.clone())),
            BaseRing::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                RingElem::Mod { value: r.to_u64().unwrap(), modulus: p }
            }
        }
    }

    /// Image of `x` under the canonical map from `self` into `target`.
    ///
    /// Supported maps: the identity, Z -> Q and Z -> F_p.
    pub fn map_into(self, x: &RingElem, target: BaseRing) -> Result<RingElem> {
        if self == target {
            return Ok(x.clone());
        }
        match (self, x) {
            (BaseRing::Integers, RingElem::Int(n)) => Ok(target.from_bigint(n)),
            _ => Err(Error::RingMismatch(format!("no canonical map {self} -> {target}"))),
        }
    }

    pub fn parse_elem(self, s: &str) -> Result<RingElem> {
        let s = s.trim();
        let bad = || Error::Parse { line: 0, message: format!("invalid coefficient '{s}' for ring {self}") };
        match self {
            BaseRing::Rationals => {
                if let Some((n, d)) = s.split_once('/') {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(RingElem::Rat(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(s).map_err(|_| bad())?;
                    Ok(self.from_bigint(&n))
                }
            }
            _ => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(BaseRing::Rationals),
            "Z" => Ok(BaseRing::Integers),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix('F'))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring '{other}'")))?;
                BaseRing::prime_field(p)
            }
        }
    }
}

/// An exact scalar. Values are kept canonical: reduced fractions, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl RingElem {
    pub fn ring(&self) -> BaseRing {
        match self {
            RingElem::Int(_) => BaseRing::Integers,
            RingElem::Rat(_) => BaseRing::Rationals,
            RingElem::Mod { modulus, .. } => BaseRing::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(n) => n.is_zero(),
            RingElem::Rat(q) => q.is_zero(),
            RingElem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(n) => n.is_one(),
            RingElem::Rat(q) => q.is_one(),
            RingElem::Mod { value, .. } => *value == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElem::Int(n) => n.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    pub fn inverse(&self) -> Option<RingElem> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            RingElem::Int(n) => RingElem::Int(n.clone()),
            RingElem::Rat(q) => RingElem::Rat(q.recip()),
            RingElem::Mod { value, modulus } => RingElem::Mod { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus },
        })
    }

    /// Exact quotient `self / other`, if it exists in the ring.
    pub fn div_exact(&self, other: &RingElem) -> Option<RingElem> {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(RingElem::Int(q))
            }
            _ => other.inverse().map(|inv| self * &inv),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            RingElem::Int(n) => Some(n),
            _ => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(n) => write!(f, "{n}"),
            RingElem::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            RingElem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt, $modop:expr) => {
        impl<'a> $trait<&'a RingElem> for &'a RingElem {
            type Output = RingElem;

            fn $method(self, rhs: &'a RingElem) -> RingElem {
                match (self, rhs) {
                    (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a $op b),
                    (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a $op b),
                    (RingElem::Mod { value: a, modulus: p }, RingElem::Mod { value: b, modulus: q }) if p == q => {
                        let f: fn(u64, u64, u64) -> u64 = $modop;
                        RingElem::Mod { value: f(*a, *b, *p), modulus: *p }
                    }
                    _ => panic!("ring mismatch: {:?} vs {:?}", self.ring(), rhs.ring()),
                }
            }
        }

        impl $trait<RingElem> for RingElem {
            type Output = RingElem;

            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +, |a, b, p| (a + b) % p);
binop!(Sub, sub, -, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, *, |a, b, p| a * b % p);

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Rat(a) => RingElem::Rat(-a),
            RingElem::Mod { value, modulus } => RingElem::Mod { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        -&self
    }
}
