use std::fmt;
use std::fs;

use toric_horo::corpus;
use toric_horo::exactla::rational::parse;
use toric_horo::exactla::{QVector, Rational};
use toric_horo::fan::{fan_from_polytope, Fan};
use toric_horo::json::{parse_document, Document};
use toric_horo::polytope::Polytope;

/// Problems with the input or the command line; mapped to exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<toric_horo::Error> for InputError {
    fn from(e: toric_horo::Error) -> Self {
        InputError(e.to_string())
    }
}

/// Loads `builtin:NAME` or a JSON file.
pub fn load(source: &str) -> Result<Document, InputError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        if let Some(p) = corpus::polytope(name) {
            return Ok(Document::Polytope(p));
        }
        if let Some(f) = corpus::fan(name) {
            return Ok(Document::Fan(f));
        }
        let known: Vec<&str> = corpus::POLYTOPE_NAMES.iter().chain(&corpus::FAN_NAMES).copied().collect();
        return Err(InputError(format!("unknown builtin {name:?}; known: {}", known.join(", "))));
    }
    let text = fs::read_to_string(source).map_err(|e| InputError(format!("{source}: {e}")))?;
    parse_document(&text).map_err(|e| InputError(format!("{source}: {e}")))
}

pub fn load_polytope(source: &str) -> Result<Polytope, InputError> {
    match load(source)? {
        Document::Polytope(p) => Ok(p),
        Document::Fan(_) => Err(InputError(format!("{source}: expected a polytope, found a fan"))),
    }
}

/// A fan, or the fan of a polytope.
pub fn load_fan(source: &str) -> Result<(Fan, Option<Polytope>), InputError> {
    match load(source)? {
        Document::Fan(f) => Ok((f, None)),
        Document::Polytope(p) => Ok((fan_from_polytope(&p)?, Some(p))),
    }
}

pub fn rationals(text: &str) -> Result<Vec<Rational>, InputError> {
    text.split(',')
        .map(|t| parse(t.trim()).map_err(|e| InputError(format!("{text:?}: {e}"))))
        .collect()
}

pub fn vector(text: &str, dim: usize, what: &str) -> Result<QVector, InputError> {
    let v = QVector::new(rationals(text)?);
    if v.len() != dim {
        return Err(InputError(format!("{what} has {} entries, expected {dim}", v.len())));
    }
    Ok(v)
}

/// Vectors separated by `;`.
pub fn vectors(text: &str) -> Result<Vec<QVector>, InputError> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| rationals(t).map(QVector::new))
        .collect()
}
