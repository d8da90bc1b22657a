//! Exact coefficients: rationals, or residues modulo a prime.
//!
//! Scalars travel as strings: `"3/7"`, `"-2"`, `"1"` for rationals and
//! `"2 mod 5"` for an element of the prime field of order 5.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The coefficient field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Ratio::from_integer(n)),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Rational(Ratio<i64>),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => *r.numer() == 0,
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => *r.numer() == 1 && *r.denom() == 1,
            Scalar::Modular { value, .. } => *value == 1,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Field::Rationals.one()
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::InvalidScalar(format!("`{s}`: {why}"));
        let t = s.trim();
        if let Some((v, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| bad("modulus is not an integer"))?;
            if !is_prime(p) {
                return Err(bad("modulus must be prime"));
            }
            let v: i64 = v.trim().parse().map_err(|_| bad("residue is not an integer"))?;
            return Ok(Field::Prime(p).from_int(v));
        }
        let r: Ratio<i64> = t.parse().map_err(|_| bad("expected an integer or a fraction a/b"))?;
        Ok(Scalar::Rational(r))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
