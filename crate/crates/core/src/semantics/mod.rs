//! Lexical semantics over the simply typed λ-calculus.
//!
//! Derivation terms are delinearized (⊥ ↦ t, ⊗ ↦ ×, ¬τ ↦ τ → t), word
//! variables are replaced by lexical meanings, and the result is normalized.

mod grammar;
mod reading;
mod term;
mod typing;

pub use grammar::{parse_grammar, Entry, GrammarError, Lexicon};
pub use reading::{bracketings, parse_tree, reading, Reading, ReadingOptions, Tree, GOAL};
pub use term::{SimpleTerm, DEFAULT_FUEL};
pub use typing::{check_term, infer_type};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::ParseError;
use crate::lp::{LinTerm, LinType};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    E,
    T,
    Prod(Box<SimpleType>, Box<SimpleType>),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn prod(a: SimpleType, b: SimpleType) -> Self {
        SimpleType::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: SimpleType, b: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(a), Box::new(b))
    }

    /// `τ → t`
    pub fn neg(a: SimpleType) -> Self {
        SimpleType::arrow(a, SimpleType::T)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atomic(t: &SimpleType) -> bool {
            matches!(t, SimpleType::E | SimpleType::T)
        }
        match self {
            SimpleType::E => write!(f, "e"),
            SimpleType::T => write!(f, "t"),
            SimpleType::Prod(a, b) => {
                let wrap = |t: &SimpleType| if atomic(t) { t.to_string() } else { format!("({})", t) };
                write!(f, "{} * {}", wrap(a), wrap(b))
            }
            SimpleType::Arrow(a, b) => {
                let l = if atomic(a) { a.to_string() } else { format!("({})", a) };
                let r = if matches!(**b, SimpleType::Prod(..)) { format!("({})", b) } else { b.to_string() };
                write!(f, "{} -> {}", l, r)
            }
        }
    }
}

impl FromStr for SimpleType {
    type Err = ParseError;

    /// `e`, `t`, `τ * σ`, `τ -> σ` (right associative, `*` binds tighter)
    /// and `~τ` for `τ -> t`. Unicode `×`, `→` and `¬` are accepted too.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            match c {
                ' ' | '\t' => {}
                'e' | 't' | '(' | ')' | '*' | '×' | '→' | '¬' | '~' => toks.push((pos, c)),
                '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                    toks.push((pos, '→'));
                    i += 1;
                }
                _ => return Err(ParseError::new(pos, format!("unexpected `{}` in type", c))),
            }
            i += 1;
        }
        let mut p = TyParser { toks, i: 0, end: src.len() };
        let t = p.arrow()?;
        if p.i < p.toks.len() {
            return Err(ParseError::new(p.toks[p.i].0, "trailing input in type"));
        }
        Ok(t)
    }
}

struct TyParser {
    toks: Vec<(usize, char)>,
    i: usize,
    end: usize,
}

impl TyParser {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.i).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn arrow(&mut self) -> Result<SimpleType, ParseError> {
        let a = self.prod()?;
        if self.peek() == Some('→') {
            self.i += 1;
            return Ok(SimpleType::arrow(a, self.arrow()?));
        }
        Ok(a)
    }

    fn prod(&mut self) -> Result<SimpleType, ParseError> {
        let mut a = self.atom()?;
        while matches!(self.peek(), Some('*') | Some('×')) {
            self.i += 1;
            a = SimpleType::prod(a, self.atom()?);
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<SimpleType, ParseError> {
        let pos = self.pos();
        let c = self.peek().ok_or_else(|| ParseError::new(pos, "expected a type"))?;
        self.i += 1;
        match c {
            'e' => Ok(SimpleType::E),
            't' => Ok(SimpleType::T),
            '¬' | '~' => Ok(SimpleType::neg(self.atom()?)),
            '(' => {
                let t = self.arrow()?;
                if self.peek() != Some(')') {
                    return Err(ParseError::new(self.pos(), "expected `)`"));
                }
                self.i += 1;
                Ok(t)
            }
            _ => Err(ParseError::new(pos, "expected a type")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("no interpretation for atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("undeclared constant `{0}`")]
    UnknownConstant(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch: cannot unify {0} with {1}")]
    TypeMismatch(String, String),
    #[error("normalization ran out of fuel")]
    Diverged,
    #[error("no derivation for the goal `{0}`")]
    NoDerivation(String),
    #[error("search limits reached for the goal `{0}`")]
    DepthExceeded(String),
    #[error("bad bracketing: {0}")]
    Bracketing(String),
}

pub type BaseMap = BTreeMap<String, SimpleType>;

/// ⊥ ↦ t, τ⊗σ ↦ τ×σ, ¬τ ↦ τ→t, atoms through `base`.
pub fn delinearize_type(t: &LinType, base: &BaseMap) -> Result<SimpleType, SemanticsError> {
    Ok(match t {
        LinType::Bottom => SimpleType::T,
        LinType::Atom(a) => base.get(a).cloned().ok_or_else(|| SemanticsError::UnknownAtom(a.clone()))?,
        LinType::Neg(a) => SimpleType::neg(delinearize_type(a, base)?),
        LinType::Prod(a, b) => SimpleType::prod(delinearize_type(a, base)?, delinearize_type(b, base)?),
    })
}

/// Pairs stay pairs; `case N of ⟨x,y⟩. M` becomes `M[π1 N/x, π2 N/y]`.
pub fn delinearize_term(m: &LinTerm) -> SimpleTerm {
    match m {
        LinTerm::Var(x) => SimpleTerm::Var(x.clone()),
        LinTerm::App(a, b) => SimpleTerm::app(delinearize_term(a), delinearize_term(b)),
        LinTerm::Lam(x, _, b) => SimpleTerm::lam(x.clone(), delinearize_term(b)),
        LinTerm::Pair(a, b) => SimpleTerm::pair(delinearize_term(a), delinearize_term(b)),
        LinTerm::Case(n, x, y, body) => {
            let n = delinearize_term(n);
            let mut sub = BTreeMap::new();
            sub.insert(x.clone(), SimpleTerm::proj(1, n.clone()));
            sub.insert(y.clone(), SimpleTerm::proj(2, n));
            delinearize_term(body).subst_many(&sub)
        }
    }
}
