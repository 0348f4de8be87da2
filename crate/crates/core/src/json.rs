//! JSON encoding of elements and exact integers.
//!
//! Integers that fit in `i64` are written as numbers, larger ones as decimal
//! strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{IntMatrix, Perm, Poly};
use crate::crystal::{CrystalGroup, Element, PointElement, PointGroup};
use crate::error::{Error, Result};
use crate::families::{quotient, Family};

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::Json(format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Json(format!("'{s}' is not an integer"))),
        other => Err(Error::Json(format!("expected an integer, found {other}"))),
    }
}

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    int_value(x).serialize(s)
}

struct Ints<'a>(&'a [BigInt]);

impl Serialize for Ints<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&int_value(x))?;
        }
        seq.end()
    }
}

/// Nested row arrays.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.to_rows();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in &rows {
            seq.serialize_element(&Ints(r))?;
        }
        seq.end()
    }
}

/// Coefficients from the constant term up.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Ints(self.coeffs()).serialize(s)
    }
}

/// Wire form of an element: basis labels `"i,j"` with their coefficients and
/// the point part as one-indexed images, or as `±1` signs for sign tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub family: String,
    pub n: usize,
    pub vector: Map<String, Value>,
    pub perm: Vec<i64>,
}

impl ElementJson {
    pub fn from_element(group: &CrystalGroup, e: &Element) -> Self {
        let vector = group
            .labels()
            .iter()
            .zip(&e.v)
            .map(|(&(i, j), a)| (format!("{i},{j}"), int_value(a)))
            .collect();
        let perm = match &e.w {
            PointElement::Perm(p) => p.images().iter().map(|&x| x as i64).collect(),
            PointElement::Signs(s) => s.iter().map(|&b| if b { -1 } else { 1 }).collect(),
        };
        ElementJson {
            family: group.family().to_string(),
            n: group.n(),
            vector,
            perm,
        }
    }

    /// The group named by `family` and `n`, and the element in it.
    pub fn to_element(&self) -> Result<(CrystalGroup, Element)> {
        let family: Family = self.family.parse()?;
        let group = quotient(family, self.n).map_err(|e| Error::Json(e.to_string()))?;
        let mut v = vec![BigInt::zero(); group.rank()];
        for (key, value) in &self.vector {
            let (i, j) = parse_label(key)?;
            let k = group.index_of(i, j).ok_or_else(|| {
                Error::Json(format!(
                    "label '{key}' is not a basis vector of {}",
                    group.name()
                ))
            })?;
            v[k] = int_from_value(value)?;
        }
        if self.perm.len() != self.n {
            return Err(Error::Json(format!(
                "perm has {} entries, expected {}",
                self.perm.len(),
                self.n
            )));
        }
        let w = match group.point_group() {
            PointGroup::Symmetric(_) => {
                let images = self
                    .perm
                    .iter()
                    .map(|&x| usize::try_from(x).map_err(|_| Error::Json(format!("bad image {x}"))))
                    .collect::<Result<Vec<_>>>()?;
                PointElement::Perm(
                    Perm::from_images(images).map_err(|e| Error::Json(e.to_string()))?,
                )
            }
            PointGroup::SignTuples(_) => PointElement::Signs(
                self.perm
                    .iter()
                    .map(|&s| match s {
                        1 => Ok(false),
                        -1 => Ok(true),
                        x => Err(Error::Json(format!("sign entries are 1 or -1, found {x}"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok((group, Element::new(v, w)))
    }
}

fn parse_label(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Json(format!("label '{key}' is not of the form \"i,j\""));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn element_to_json(group: &CrystalGroup, e: &Element) -> Value {
    serde_json::to_value(ElementJson::from_element(group, e)).expect("plain data")
}

pub fn element_from_str(text: &str) -> Result<(CrystalGroup, Element)> {
    let parsed: ElementJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    parsed.to_element()
}
