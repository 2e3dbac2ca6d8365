//! Linear λ-calculus with pairs: the target of the derivational semantics.
//!
//! Types are built from atoms, `⊥`, `¬τ = τ → ⊥` and products. A λ-abstraction
//! always returns `⊥`, and applications only happen at `⊥`.

mod reduce;
mod term;
mod typing;

pub use reduce::{normalize, normalize_with, Strategy, DEFAULT_FUEL};
pub use term::{parse_lin_term, LinTerm};
pub use typing::{typecheck, Context, TypeError};

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinType {
    Atom(String),
    Bottom,
    Neg(Box<LinType>),
    Prod(Box<LinType>, Box<LinType>),
}

impl LinType {
    pub fn atom(name: impl Into<String>) -> Self {
        LinType::Atom(name.into())
    }

    pub fn neg(t: LinType) -> Self {
        LinType::Neg(Box::new(t))
    }

    pub fn prod(a: LinType, b: LinType) -> Self {
        LinType::Prod(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            LinType::Atom(_) | LinType::Bottom => 1,
            LinType::Neg(t) => 1 + t.size(),
            LinType::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Number of `¬` constructors.
    pub fn negations(&self) -> usize {
        match self {
            LinType::Atom(_) | LinType::Bottom => 0,
            LinType::Neg(t) => 1 + t.negations(),
            LinType::Prod(a, b) => a.negations() + b.negations(),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinType::Prod(..) => write!(f, "({})", self),
            _ => write!(f, "{}", self),
        }
    }
}

impl fmt::Display for LinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinType::Atom(p) => f.write_str(p),
            LinType::Bottom => f.write_str("⊥"),
            LinType::Neg(t) => {
                f.write_str("¬")?;
                t.fmt_operand(f)
            }
            LinType::Prod(a, b) => {
                a.fmt_operand(f)?;
                f.write_str(" * ")?;
                b.fmt_operand(f)
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("normalization did not terminate within {0} steps")]
    Diverged(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let s = LinType::atom("s");
        let np = LinType::atom("np");
        assert_eq!(LinType::prod(LinType::neg(s.clone()), np.clone()).to_string(), "¬s * np");
        assert_eq!(
            LinType::prod(np.clone(), LinType::prod(LinType::neg(s.clone()), np.clone())).to_string(),
            "np * (¬s * np)"
        );
        assert_eq!(
            LinType::neg(LinType::prod(np.clone(), LinType::neg(s))).to_string(),
            "¬(np * ¬s)"
        );
        assert_eq!(LinType::neg(LinType::neg(np)).to_string(), "¬¬np");
    }

    #[test]
    fn counting() {
        let t = LinType::neg(LinType::prod(LinType::atom("a"), LinType::neg(LinType::Bottom)));
        assert_eq!(t.size(), 5);
        assert_eq!(t.negations(), 2);
    }
}
