//! Formulas of the Lambek-Grishin calculus.
//!
//! A formula is built from atoms with the residuated connectives
//! `⊗, /, \`, their coresiduated duals `⊕, ⊘, ⦸`, the Galois-connected
//! negations `⁰A, A⁰` and the dually Galois-connected conegations. This
//! module also hosts the order-reversing duality, the polarity split and the
//! polarity-sensitive interpretation of formulas as linear types.

pub(crate) mod parse;

use std::fmt;

pub use parse::{parse_formula, ParseError};

use crate::lp::LinType;

/// An LG formula.
///
/// Constructor arguments are stored in the order they are written:
/// `Over(a, b)` is `a/b`, `Under(b, a)` is `b\a`, `RSub(a, b)` is `a⊘b` and
/// `LSub(b, a)` is `b⦸a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Over(Box<Formula>, Box<Formula>),
    Under(Box<Formula>, Box<Formula>),
    RSub(Box<Formula>, Box<Formula>),
    LSub(Box<Formula>, Box<Formula>),
    /// Left negation `⁰A`.
    LNeg(Box<Formula>),
    /// Right negation `A⁰`.
    RNeg(Box<Formula>),
    /// Left conegation, dual of the right negation.
    LCoNeg(Box<Formula>),
    /// Right conegation, dual of the left negation.
    RCoNeg(Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// `a/b`
    pub fn over(a: Formula, b: Formula) -> Formula {
        Formula::Over(Box::new(a), Box::new(b))
    }

    /// `b\a`
    pub fn under(b: Formula, a: Formula) -> Formula {
        Formula::Under(Box::new(b), Box::new(a))
    }

    /// `a⊘b`
    pub fn rsub(a: Formula, b: Formula) -> Formula {
        Formula::RSub(Box::new(a), Box::new(b))
    }

    /// `b⦸a`
    pub fn lsub(b: Formula, a: Formula) -> Formula {
        Formula::LSub(Box::new(b), Box::new(a))
    }

    pub fn lneg(a: Formula) -> Formula {
        Formula::LNeg(Box::new(a))
    }

    pub fn rneg(a: Formula) -> Formula {
        Formula::RNeg(Box::new(a))
    }

    pub fn lconeg(a: Formula) -> Formula {
        Formula::LCoNeg(Box::new(a))
    }

    pub fn rconeg(a: Formula) -> Formula {
        Formula::RCoNeg(Box::new(a))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of connectives.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Tensor(a, b)
            | Formula::Par(a, b)
            | Formula::Over(a, b)
            | Formula::Under(a, b)
            | Formula::RSub(a, b)
            | Formula::LSub(a, b) => 1 + a.size() + b.size(),
            Formula::LNeg(a) | Formula::RNeg(a) | Formula::LCoNeg(a) | Formula::RCoNeg(a) => {
                1 + a.size()
            }
        }
    }

    /// Order-reversing involution: `A ≤ B` iff `dual(B) ≤ dual(A)`.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(p) => Formula::Atom(p.clone()),
            Formula::Tensor(a, b) => Formula::par(b.dual(), a.dual()),
            Formula::Par(a, b) => Formula::tensor(b.dual(), a.dual()),
            Formula::Over(a, b) => Formula::lsub(b.dual(), a.dual()),
            Formula::LSub(b, a) => Formula::over(a.dual(), b.dual()),
            Formula::Under(b, a) => Formula::rsub(a.dual(), b.dual()),
            Formula::RSub(a, b) => Formula::under(b.dual(), a.dual()),
            Formula::LNeg(a) => Formula::rconeg(a.dual()),
            Formula::RCoNeg(a) => Formula::lneg(a.dual()),
            Formula::RNeg(a) => Formula::lconeg(a.dual()),
            Formula::LCoNeg(a) => Formula::rneg(a.dual()),
        }
    }

    /// Atoms carry positive bias.
    pub fn polarity(&self) -> Polarity {
        match self {
            Formula::Atom(_)
            | Formula::Tensor(..)
            | Formula::RSub(..)
            | Formula::LSub(..)
            | Formula::LCoNeg(_)
            | Formula::RCoNeg(_) => Polarity::Pos,
            Formula::Par(..)
            | Formula::Over(..)
            | Formula::Under(..)
            | Formula::LNeg(_)
            | Formula::RNeg(_) => Polarity::Neg,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity() == Polarity::Pos
    }

    /// The LP type `⟦A⟧`.
    ///
    /// Product components follow the order in which the logical rules bind
    /// them, so that terms extracted from derivations are well-typed as is.
    pub fn translate(&self) -> LinType {
        match self {
            Formula::Atom(p) => LinType::Atom(p.clone()),
            Formula::Tensor(a, b) => LinType::prod(a.input_type(), b.input_type()),
            Formula::Par(a, b) => LinType::prod(b.output_type(), a.output_type()),
            Formula::Over(a, b) => LinType::prod(b.input_type(), a.output_type()),
            Formula::Under(b, a) => LinType::prod(a.output_type(), b.input_type()),
            Formula::RSub(a, b) => LinType::prod(a.input_type(), b.output_type()),
            Formula::LSub(b, a) => LinType::prod(b.output_type(), a.input_type()),
            Formula::LNeg(b) | Formula::RNeg(b) => b.input_type(),
            Formula::LCoNeg(b) | Formula::RCoNeg(b) => b.output_type(),
        }
    }

    /// Type of a variable labelling this formula as a hypothesis.
    pub fn input_type(&self) -> LinType {
        match self.polarity() {
            Polarity::Pos => self.translate(),
            Polarity::Neg => LinType::neg(self.translate()),
        }
    }

    /// Type of a covariable labelling this formula as a conclusion.
    pub fn output_type(&self) -> LinType {
        match self.polarity() {
            Polarity::Pos => LinType::neg(self.translate()),
            Polarity::Neg => self.translate(),
        }
    }

    /// Atom names, left to right, with repetitions.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(p) => out.push(p),
            Formula::Tensor(a, b)
            | Formula::Par(a, b)
            | Formula::Over(a, b)
            | Formula::Under(a, b)
            | Formula::RSub(a, b)
            | Formula::LSub(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::LNeg(a) | Formula::RNeg(a) | Formula::LCoNeg(a) | Formula::RCoNeg(a) => {
                a.collect_atoms(out)
            }
        }
    }

    fn binary(&self) -> Option<(&Formula, &'static str, &Formula)> {
        match self {
            Formula::Tensor(a, b) => Some((a, "*", b)),
            Formula::Par(a, b) => Some((a, "+", b)),
            Formula::Over(a, b) => Some((a, "/", b)),
            Formula::Under(b, a) => Some((b, "\\", a)),
            Formula::RSub(a, b) => Some((a, "./", b)),
            Formula::LSub(b, a) => Some((b, ".\\", a)),
            _ => None,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.binary().is_some() {
            write!(f, "({})", self)
        } else {
            write!(f, "{}", self)
        }
    }
}

/// Prints the ASCII surface syntax accepted by [`parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((l, op, r)) = self.binary() {
            l.fmt_operand(f)?;
            write!(f, " {} ", op)?;
            return r.fmt_operand(f);
        }
        match self {
            Formula::Atom(p) => write!(f, "{}", p),
            Formula::LNeg(a) => write!(f, "ln({})", a),
            Formula::RNeg(a) => write!(f, "rn({})", a),
            Formula::LCoNeg(a) => write!(f, "lc({})", a),
            Formula::RCoNeg(a) => write!(f, "rc({})", a),
            _ => unreachable!(),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}
