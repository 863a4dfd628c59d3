//! JSON file format for codes.
//!
//! Field elements are written as their discrete-log exponent or the string
//! `"zero"`. Because the field build is deterministic, the exponents are
//! stable given `p` and `m`; the defining polynomial is stored and checked
//! on load anyway.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::grs::{EvaluationSet, GrsCode, Recipe};

/// Exponent-or-"zero" wire form of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WireElement(pub FieldElement);

impl Serialize for WireElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.exponent() {
            Some(e) => s.serialize_u32(e),
            None => s.serialize_str("zero"),
        }
    }
}

impl<'de> Deserialize<'de> for WireElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = WireElement;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative exponent or \"zero\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<WireElement, E> {
                u32::try_from(v)
                    .ok()
                    .filter(|&e| e != u32::MAX)
                    .map(|e| WireElement(FieldElement::raw(e)))
                    .ok_or_else(|| E::custom("exponent out of range"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<WireElement, E> {
                if v == "zero" {
                    Ok(WireElement(FieldElement::ZERO))
                } else {
                    Err(E::custom(format!("unexpected string {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub defining_poly: Vec<u32>,
    pub points: Vec<WireElement>,
    pub infinity: bool,
    pub twist: Vec<WireElement>,
    pub k: usize,
    pub recipe: Recipe,
}

impl CodeFile {
    pub fn from_code(code: &GrsCode) -> CodeFile {
        let f = code.field();
        CodeFile {
            q: f.order(),
            p: f.characteristic(),
            m: f.degree(),
            defining_poly: f.defining_poly().to_vec(),
            points: code.evaluation().points().iter().map(|&x| WireElement(x)).collect(),
            infinity: code.is_extended(),
            twist: code.twist().iter().map(|&x| WireElement(x)).collect(),
            k: code.dimension(),
            recipe: code.recipe().clone(),
        }
    }

    /// Rebuilds the field and the code, re-validating every invariant.
    pub fn into_code(self) -> Result<GrsCode> {
        let field = FiniteField::new(self.p as u64, self.m)?;
        self.into_code_with(Arc::new(field))
    }

    pub fn into_code_with(self, field: Arc<FiniteField>) -> Result<GrsCode> {
        if field.order() != self.q || field.defining_poly() != self.defining_poly.as_slice() {
            return Err(Error::Serialization(format!(
                "file was written for GF({}) with polynomial {:?}; rebuilt field has {:?}",
                self.q,
                self.defining_poly,
                field.defining_poly()
            )));
        }
        let limit = field.order() - 1;
        let check = |w: &WireElement| match w.0.exponent() {
            Some(e) if e >= limit => Err(Error::Serialization(format!("exponent {e} >= q-1"))),
            _ => Ok(w.0),
        };
        let points = self.points.iter().map(check).collect::<Result<Vec<_>>>()?;
        let twist = self.twist.iter().map(check).collect::<Result<Vec<_>>>()?;
        let evaluation = EvaluationSet::new(&field, points, self.infinity)?;
        GrsCode::new(field, evaluation, twist, self.k, self.recipe)
    }
}

pub fn code_to_json(code: &GrsCode) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CodeFile::from_code(code))?)
}

pub fn code_from_json(text: &str) -> Result<GrsCode> {
    let file: CodeFile = serde_json::from_str(text)?;
    file.into_code()
}
