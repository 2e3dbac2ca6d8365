//! Call-by-name and call-by-value readings of LG.
//!
//! Under call-by-name every formula counts as negative, under call-by-value
//! every formula counts as positive. The type maps below insert the extra
//! negations this requires, and [`Lgt`] and [`Lgq`] are the matching stouped
//! calculi running on the shared search engine.

mod stouped;

pub use stouped::{Lgq, Lgt};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::lp::LinType;
use crate::semantics::{delinearize_type, BaseMap, SimpleType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslationMode {
    Cbn,
    Cbv,
    #[serde(rename = "polar")]
    Polarized,
}

impl TranslationMode {
    pub const ALL: [TranslationMode; 3] = [TranslationMode::Polarized, TranslationMode::Cbv, TranslationMode::Cbn];
}

impl fmt::Display for TranslationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TranslationMode::Cbn => "cbn",
            TranslationMode::Cbv => "cbv",
            TranslationMode::Polarized => "polar",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslationError {
    #[error("`{0}` uses a (co)negation, which has no call-by-name or call-by-value translation")]
    UnsupportedConnective(String),
    #[error("unknown translation mode `{0}` (expected cbn, cbv or polar)")]
    UnknownMode(String),
}

impl FromStr for TranslationMode {
    type Err = TranslationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cbn" => Ok(TranslationMode::Cbn),
            "cbv" => Ok(TranslationMode::Cbv),
            "polar" | "polarized" => Ok(TranslationMode::Polarized),
            other => Err(TranslationError::UnknownMode(other.to_string())),
        }
    }
}

fn neg(t: LinType) -> LinType {
    LinType::neg(t)
}

fn prod(a: LinType, b: LinType) -> LinType {
    LinType::prod(a, b)
}

/// Can `a` be translated under call-by-name and call-by-value?
pub fn in_scope(a: &Formula) -> bool {
    match a {
        Formula::Atom(_) => true,
        Formula::Tensor(l, r)
        | Formula::Par(l, r)
        | Formula::Over(l, r)
        | Formula::Under(l, r)
        | Formula::RSub(l, r)
        | Formula::LSub(l, r) => in_scope(l) && in_scope(r),
        _ => false,
    }
}

/// `⌊A⌋`
pub fn cbn_type(a: &Formula) -> Result<LinType, TranslationError> {
    Ok(match a {
        Formula::Atom(p) => neg(LinType::atom(p.clone())),
        Formula::Over(x, y) | Formula::Under(y, x) => prod(neg(cbn_type(y)?), cbn_type(x)?),
        Formula::RSub(x, y) | Formula::LSub(y, x) => neg(prod(cbn_type(y)?, neg(cbn_type(x)?))),
        Formula::Tensor(x, y) => neg(prod(neg(cbn_type(x)?), neg(cbn_type(y)?))),
        Formula::Par(x, y) => prod(cbn_type(y)?, cbn_type(x)?),
        _ => return Err(TranslationError::UnsupportedConnective(a.to_string())),
    })
}

/// `⌈A⌉`
pub fn cbv_type(a: &Formula) -> Result<LinType, TranslationError> {
    Ok(match a {
        Formula::Atom(p) => LinType::atom(p.clone()),
        Formula::Over(x, y) | Formula::Under(y, x) => neg(prod(cbv_type(y)?, neg(cbv_type(x)?))),
        Formula::RSub(x, y) | Formula::LSub(y, x) => prod(neg(cbv_type(y)?), cbv_type(x)?),
        Formula::Tensor(x, y) => prod(cbv_type(x)?, cbv_type(y)?),
        Formula::Par(x, y) => neg(prod(neg(cbv_type(y)?), neg(cbv_type(x)?))),
        _ => return Err(TranslationError::UnsupportedConnective(a.to_string())),
    })
}

/// The type of a word of category `a`: `¬⌊A⌋`, `⌈A⌉` or the polarized
/// input type.
pub fn lexical_type(a: &Formula, mode: TranslationMode) -> Result<LinType, TranslationError> {
    match mode {
        TranslationMode::Cbn => Ok(neg(cbn_type(a)?)),
        TranslationMode::Cbv => cbv_type(a),
        TranslationMode::Polarized => Ok(a.input_type()),
    }
}

/// Formula translation proper: `⌊A⌋`, `⌈A⌉` or `⟦A⟧`.
pub fn translate(a: &Formula, mode: TranslationMode) -> Result<LinType, TranslationError> {
    match mode {
        TranslationMode::Cbn => cbn_type(a),
        TranslationMode::Cbv => cbv_type(a),
        TranslationMode::Polarized => Ok(a.translate()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub mode: TranslationMode,
    #[serde(serialize_with = "as_string")]
    pub lexical: LinType,
    /// Present when every atom has an interpretation.
    #[serde(serialize_with = "opt_as_string")]
    pub simple: Option<SimpleType>,
    pub negations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    #[serde(serialize_with = "as_string")]
    pub formula: Formula,
    pub rows: Vec<ComparisonRow>,
}

fn as_string<T: fmt::Display, S: serde::Serializer>(t: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(t)
}

fn opt_as_string<T: fmt::Display, S: serde::Serializer>(t: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.collect_str(t),
        None => s.serialize_none(),
    }
}

impl Comparison {
    pub fn row(&self, mode: TranslationMode) -> &ComparisonRow {
        self.rows.iter().find(|r| r.mode == mode).expect("every mode has a row")
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.formula)?;
        for r in &self.rows {
            write!(f, "  {:<6} ¬×{:<3} {}", r.mode.to_string(), r.negations, r.lexical)?;
            if let Some(t) = &r.simple {
                write!(f, "  ::  {}", t)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Lexical types of `a` under the three regimes with their negation counts.
pub fn compare(a: &Formula, base: &BaseMap) -> Result<Comparison, TranslationError> {
    let rows = TranslationMode::ALL
        .iter()
        .map(|&mode| {
            let lexical = lexical_type(a, mode)?;
            Ok(ComparisonRow {
                mode,
                simple: delinearize_type(&lexical, base).ok(),
                negations: lexical.negations(),
                lexical,
            })
        })
        .collect::<Result<_, TranslationError>>()?;
    Ok(Comparison { formula: a.clone(), rows })
}

/// Atom interpretations used when no grammar is at hand.
pub fn default_base() -> BaseMap {
    let mut m = BaseMap::new();
    m.insert("s".into(), SimpleType::T);
    m.insert("np".into(), SimpleType::E);
    m.insert("n".into(), SimpleType::neg(SimpleType::E));
    m
}
