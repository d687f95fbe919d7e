//! Canonical JSON for elements.
//!
//! ```text
//! {"size":2,"terms":[{"pairing":[1,0,3,2],"coeff":{"num":{"0":"1"},"den":{"0":"1"}}}]}
//! ```
//!
//! Polynomials are objects from exponent to decimal coefficient, exponents in
//! increasing numeric order. Terms follow the diagram order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{TLDiagram, TLElement};
use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Scalar};

pub(crate) struct PolyJson<'a>(pub &'a LaurentPoly);

impl Serialize for PolyJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.0.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (e, c) in terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

struct OwnedPoly(LaurentPoly);

impl<'de> Deserialize<'de> for OwnedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(OwnedPoly(LaurentPoly::from_terms(terms)))
    }
}

/// Serializable view of a scalar.
pub(crate) struct ScalarJson<'a>(pub &'a Scalar);

impl Serialize for ScalarJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("num", &PolyJson(self.0.numerator()))?;
        map.serialize_entry("den", &PolyJson(self.0.denominator()))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawScalar {
    num: OwnedPoly,
    den: OwnedPoly,
}

pub(crate) struct OwnedScalar(pub Scalar);

impl<'de> Deserialize<'de> for OwnedScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawScalar::deserialize(d)?;
        Scalar::from_parts(raw.num.0, raw.den.0)
            .map(OwnedScalar)
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    pairing: &'a [u8],
    coeff: ScalarJson<'a>,
}

#[derive(Serialize)]
struct ElementOut<'a> {
    size: usize,
    terms: Vec<TermOut<'a>>,
}

#[derive(Deserialize)]
struct TermIn {
    pairing: Vec<u8>,
    coeff: OwnedScalar,
}

#[derive(Deserialize)]
struct ElementIn {
    size: usize,
    terms: Vec<TermIn>,
}

impl Serialize for TLElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementOut {
            size: self.size(),
            terms: self
                .terms()
                .iter()
                .map(|(d, c)| TermOut {
                    pairing: d.pairing(),
                    coeff: ScalarJson(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TLElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementIn::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let diagram = TLDiagram::new(t.pairing).map_err(D::Error::custom)?;
            terms.push((diagram, t.coeff.0));
        }
        TLElement::from_terms(raw.size, terms).map_err(D::Error::custom)
    }
}

impl TLElement {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Serde(e.to_string()))
    }
}
