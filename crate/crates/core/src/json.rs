//! JSON documents for polytopes and fans. Rationals are written as `"p/q"`
//! strings; fan rays are integer arrays.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::rational::format;
use crate::exactla::{QVector, Rational};
use crate::fan::Fan;
use crate::polytope::{hull, Polytope};

/// Serde adapter for `Option<Rational>`.
pub mod opt_q {
    use super::*;
    use serde::Deserializer;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "crate::exactla::rational::serde_q")] Rational);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub fn serialize_opt_rationals<S: Serializer>(
    v: &Option<Vec<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|xs| xs.iter().map(format).collect::<Vec<_>>())
        .serialize(s)
}

#[derive(Deserialize)]
struct PolytopeDoc {
    dim: usize,
    vertices: Vec<QVector>,
}

#[derive(Deserialize)]
struct ConeDoc {
    rays: Vec<QVector>,
}

#[derive(Deserialize)]
struct FanDoc {
    dim: usize,
    cones: Vec<ConeDoc>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Document {
    Polytope(Polytope),
    Fan(Fan),
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    if value.get("cones").is_some() {
        fan_from_value(value).map(Document::Fan)
    } else {
        polytope_from_value(value).map(Document::Polytope)
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    polytope_from_value(serde_json::from_str(text).map_err(parse_err)?)
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    fan_from_value(serde_json::from_str(text).map_err(parse_err)?)
}

fn polytope_from_value(value: Value) -> Result<Polytope> {
    let doc: PolytopeDoc = serde_json::from_value(value).map_err(parse_err)?;
    if let Some(v) = doc.vertices.iter().find(|v| v.len() != doc.dim) {
        return Err(Error::Dimension {
            expected: doc.dim,
            got: v.len(),
        });
    }
    hull(&doc.vertices)
}

fn fan_from_value(value: Value) -> Result<Fan> {
    let doc: FanDoc = serde_json::from_value(value).map_err(parse_err)?;
    let cones: Vec<Vec<QVector>> = doc.cones.into_iter().map(|c| c.rays).collect();
    Fan::new(doc.dim, &cones)
}

fn rational_array(v: &QVector) -> Value {
    Value::from(v.iter().map(format).collect::<Vec<_>>())
}

/// Integral entries as JSON numbers when they fit, strings otherwise.
fn integer_array(v: &QVector) -> Value {
    Value::from(
        v.iter()
            .map(|x| match x.is_integer().then(|| x.to_integer().to_i64()).flatten() {
                Some(i) => Value::from(i),
                None => Value::from(format(x)),
            })
            .collect::<Vec<_>>(),
    )
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(rational_array).collect::<Vec<_>>(),
        "facets": p.facets().iter().map(|f| json!({
            "normal": rational_array(&f.normal),
            "offset": format(&f.offset),
        })).collect::<Vec<_>>(),
        "faces": p.faces().iter().map(|f| json!({
            "id": f.id,
            "dim": f.dim,
            "vertex_ids": f.vertex_ids,
        })).collect::<Vec<_>>(),
        "incidence": p.lattice().incidence(),
    })
}

/// `faces_of` lists the cones having this cone as a proper face.
pub fn fan_to_json(fan: &Fan) -> Value {
    let cones: Vec<Value> = fan
        .cones()
        .iter()
        .map(|c| {
            let faces_of: Vec<usize> = fan
                .face_relation()
                .iter()
                .filter(|&&(t, _)| t == c.id)
                .map(|&(_, s)| s)
                .collect();
            let mut entry = json!({
                "id": c.id,
                "rays": c.rays().iter().map(integer_array).collect::<Vec<_>>(),
                "faces_of": faces_of,
            });
            if !c.lineality().is_empty() {
                entry["lineality"] = c.lineality().iter().map(integer_array).collect();
            }
            if let Some(src) = fan.source() {
                entry["face"] = Value::from(src[c.id]);
            }
            entry
        })
        .collect();
    json!({ "dim": fan.dim(), "cones": cones })
}
