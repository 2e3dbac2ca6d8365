//! Structures, sequents and the display calculus around them.
//!
//! A sequent is stored as a typed pair `(Structure, CoStructure)`: the
//! antecedent is always an input structure and the consequent an output
//! structure. Leaves carry a variable (inputs) or covariable (outputs) that
//! is unique within the sequent.

mod display;
pub mod names;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

pub use display::{canonical, display, display_class, display_moves, dualize, DisplayError};
pub use parse::parse_sequent;

use crate::formula::Formula;
use crate::lp::{Context, LinType, TypeError};

/// Antecedent (input) structures.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    InLeaf(Formula, String),
    /// `Γ • Δ`
    SProd(Box<Structure>, Box<Structure>),
    /// `Γ ⟜ Σ`
    SRSubStr(Box<Structure>, Box<CoStructure>),
    /// `Π ⟞ Γ`
    SLSubStr(Box<CoStructure>, Box<Structure>),
    SRCoNeg(Box<CoStructure>),
    SLCoNeg(Box<CoStructure>),
}

/// Consequent (output) structures.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoStructure {
    OutLeaf(Formula, String),
    /// `Σ ∘ Π`
    SPar(Box<CoStructure>, Box<CoStructure>),
    /// `Π ↼ Γ`
    SUnder(Box<CoStructure>, Box<Structure>),
    /// `Δ ⇀ Π`
    SOver(Box<Structure>, Box<CoStructure>),
    SLNeg(Box<Structure>),
    SRNeg(Box<Structure>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sequent {
    Unfocused(Structure, CoStructure),
    /// `Γ ⊢ [A]`
    FocusedConclusion(Structure, Formula),
    /// `[A] ⊢ Π`
    FocusedHypothesis(CoStructure, Formula),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Input,
    Output,
}

/// A labelled formula occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub formula: Formula,
    pub label: String,
    pub side: Side,
}

impl Structure {
    pub fn leaf(f: Formula, x: impl Into<String>) -> Self {
        Structure::InLeaf(f, x.into())
    }

    pub fn prod(a: Structure, b: Structure) -> Self {
        Structure::SProd(Box::new(a), Box::new(b))
    }

    pub fn rsub(a: Structure, b: CoStructure) -> Self {
        Structure::SRSubStr(Box::new(a), Box::new(b))
    }

    pub fn lsub(a: CoStructure, b: Structure) -> Self {
        Structure::SLSubStr(Box::new(a), Box::new(b))
    }

    pub fn rconeg(a: CoStructure) -> Self {
        Structure::SRCoNeg(Box::new(a))
    }

    pub fn lconeg(a: CoStructure) -> Self {
        Structure::SLCoNeg(Box::new(a))
    }

    /// The formula this structure stands for.
    pub fn readback(&self) -> Formula {
        match self {
            Structure::InLeaf(a, _) => a.clone(),
            Structure::SProd(g, d) => Formula::tensor(g.readback(), d.readback()),
            Structure::SRSubStr(g, s) => Formula::rsub(g.readback(), s.readback()),
            Structure::SLSubStr(p, g) => Formula::lsub(p.readback(), g.readback()),
            Structure::SRCoNeg(p) => Formula::rconeg(p.readback()),
            Structure::SLCoNeg(s) => Formula::lconeg(s.readback()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Structure::InLeaf(..) => 1,
            Structure::SProd(a, b) => 1 + a.node_count() + b.node_count(),
            Structure::SRSubStr(a, b) => 1 + a.node_count() + b.node_count(),
            Structure::SLSubStr(a, b) => 1 + a.node_count() + b.node_count(),
            Structure::SRCoNeg(a) | Structure::SLCoNeg(a) => 1 + a.node_count(),
        }
    }

    pub fn leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            Structure::InLeaf(a, x) => out.push(Leaf {
                formula: a.clone(),
                label: x.clone(),
                side: Side::Input,
            }),
            Structure::SProd(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            Structure::SRSubStr(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            Structure::SLSubStr(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            Structure::SRCoNeg(a) | Structure::SLCoNeg(a) => a.leaves(out),
        }
    }

    /// Apply `f` to every leaf formula.
    pub fn map_formulas(&self, f: &mut impl FnMut(&Formula) -> Formula) -> Structure {
        match self {
            Structure::InLeaf(a, x) => Structure::InLeaf(f(a), x.clone()),
            Structure::SProd(a, b) => Structure::prod(a.map_formulas(f), b.map_formulas(f)),
            Structure::SRSubStr(a, b) => Structure::rsub(a.map_formulas(f), b.map_formulas(f)),
            Structure::SLSubStr(a, b) => Structure::lsub(a.map_formulas(f), b.map_formulas(f)),
            Structure::SRCoNeg(a) => Structure::rconeg(a.map_formulas(f)),
            Structure::SLCoNeg(a) => Structure::lconeg(a.map_formulas(f)),
        }
    }

    fn is_leaf(&self) -> bool {
        matches!(self, Structure::InLeaf(..))
    }
}

impl CoStructure {
    pub fn leaf(f: Formula, e: impl Into<String>) -> Self {
        CoStructure::OutLeaf(f, e.into())
    }

    pub fn par(a: CoStructure, b: CoStructure) -> Self {
        CoStructure::SPar(Box::new(a), Box::new(b))
    }

    pub fn under(a: CoStructure, b: Structure) -> Self {
        CoStructure::SUnder(Box::new(a), Box::new(b))
    }

    pub fn over(a: Structure, b: CoStructure) -> Self {
        CoStructure::SOver(Box::new(a), Box::new(b))
    }

    pub fn lneg(a: Structure) -> Self {
        CoStructure::SLNeg(Box::new(a))
    }

    pub fn rneg(a: Structure) -> Self {
        CoStructure::SRNeg(Box::new(a))
    }

    pub fn readback(&self) -> Formula {
        match self {
            CoStructure::OutLeaf(a, _) => a.clone(),
            CoStructure::SPar(s, p) => Formula::par(p.readback(), s.readback()),
            CoStructure::SUnder(p, g) => Formula::under(g.readback(), p.readback()),
            CoStructure::SOver(d, p) => Formula::over(p.readback(), d.readback()),
            CoStructure::SLNeg(d) => Formula::lneg(d.readback()),
            CoStructure::SRNeg(g) => Formula::rneg(g.readback()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            CoStructure::OutLeaf(..) => 1,
            CoStructure::SPar(a, b) => 1 + a.node_count() + b.node_count(),
            CoStructure::SUnder(a, b) => 1 + a.node_count() + b.node_count(),
            CoStructure::SOver(a, b) => 1 + a.node_count() + b.node_count(),
            CoStructure::SLNeg(a) | CoStructure::SRNeg(a) => 1 + a.node_count(),
        }
    }

    pub fn leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            CoStructure::OutLeaf(a, e) => out.push(Leaf {
                formula: a.clone(),
                label: e.clone(),
                side: Side::Output,
            }),
            CoStructure::SPar(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            CoStructure::SUnder(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            CoStructure::SOver(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            CoStructure::SLNeg(a) | CoStructure::SRNeg(a) => a.leaves(out),
        }
    }

    pub fn map_formulas(&self, f: &mut impl FnMut(&Formula) -> Formula) -> CoStructure {
        match self {
            CoStructure::OutLeaf(a, e) => CoStructure::OutLeaf(f(a), e.clone()),
            CoStructure::SPar(a, b) => CoStructure::par(a.map_formulas(f), b.map_formulas(f)),
            CoStructure::SUnder(a, b) => CoStructure::under(a.map_formulas(f), b.map_formulas(f)),
            CoStructure::SOver(a, b) => CoStructure::over(a.map_formulas(f), b.map_formulas(f)),
            CoStructure::SLNeg(a) => CoStructure::lneg(a.map_formulas(f)),
            CoStructure::SRNeg(a) => CoStructure::rneg(a.map_formulas(f)),
        }
    }

    fn is_leaf(&self) -> bool {
        matches!(self, CoStructure::OutLeaf(..))
    }
}

impl Sequent {
    pub fn unfocused(g: Structure, p: CoStructure) -> Self {
        Sequent::Unfocused(g, p)
    }

    pub fn is_unfocused(&self) -> bool {
        matches!(self, Sequent::Unfocused(..))
    }

    /// All labelled leaves, antecedent first, left to right.
    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        match self {
            Sequent::Unfocused(g, p) => {
                g.leaves(&mut out);
                p.leaves(&mut out);
            }
            Sequent::FocusedConclusion(g, _) => g.leaves(&mut out),
            Sequent::FocusedHypothesis(p, _) => p.leaves(&mut out),
        }
        out
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.leaves().into_iter().map(|l| l.label).collect()
    }

    pub fn node_count(&self) -> usize {
        match self {
            Sequent::Unfocused(g, p) => g.node_count() + p.node_count(),
            Sequent::FocusedConclusion(g, _) => g.node_count() + 1,
            Sequent::FocusedHypothesis(p, _) => p.node_count() + 1,
        }
    }

    /// Formula-level reading `(F(Γ), F(Π))` of an unfocused sequent.
    pub fn readback(&self) -> Option<(Formula, Formula)> {
        match self {
            Sequent::Unfocused(g, p) => Some((g.readback(), p.readback())),
            _ => None,
        }
    }

    /// The LP context under a given typing of leaves.
    pub fn context_with(&self, ty: impl Fn(&Formula, Side) -> LinType) -> Result<Context, TypeError> {
        Context::from_pairs(
            self.leaves()
                .into_iter()
                .map(|l| (l.label, ty(&l.formula, l.side))),
        )
    }

    /// The LP context `⟦s⟧` under the polarized interpretation.
    pub fn context(&self) -> Result<Context, TypeError> {
        self.context_with(|f, side| match side {
            Side::Input => f.input_type(),
            Side::Output => f.output_type(),
        })
    }

    /// Type of the term proving this sequent, polarized interpretation.
    pub fn term_type(&self) -> LinType {
        match self {
            Sequent::Unfocused(..) => LinType::Bottom,
            Sequent::FocusedConclusion(_, a) => a.input_type(),
            Sequent::FocusedHypothesis(_, a) => a.output_type(),
        }
    }

    /// Rename leaves to the canonical pools in left-to-right order.
    pub fn relabel(&self) -> Sequent {
        let mut vars = names::Pool::vars(BTreeSet::new());
        let mut covars = names::Pool::covars(BTreeSet::new());
        relabel_seq(self, &mut vars, &mut covars)
    }
}

/// What a leaf is replaced by; its side must match the leaf's.
#[derive(Clone, Debug)]
pub enum Replacement {
    Input(Structure),
    Output(CoStructure),
}

impl Sequent {
    /// Replace the leaf labelled `label` in place.
    pub fn replace_leaf(&self, label: &str, r: &Replacement) -> Sequent {
        match self {
            Sequent::Unfocused(g, p) => Sequent::Unfocused(replace_s(g, label, r), replace_c(p, label, r)),
            Sequent::FocusedConclusion(g, a) => Sequent::FocusedConclusion(replace_s(g, label, r), a.clone()),
            Sequent::FocusedHypothesis(p, a) => Sequent::FocusedHypothesis(replace_c(p, label, r), a.clone()),
        }
    }
}

fn replace_s(s: &Structure, label: &str, r: &Replacement) -> Structure {
    match (s, r) {
        (Structure::InLeaf(_, x), Replacement::Input(new)) if x == label => new.clone(),
        (Structure::InLeaf(..), _) => s.clone(),
        (Structure::SProd(a, b), _) => Structure::prod(replace_s(a, label, r), replace_s(b, label, r)),
        (Structure::SRSubStr(a, b), _) => Structure::rsub(replace_s(a, label, r), replace_c(b, label, r)),
        (Structure::SLSubStr(a, b), _) => Structure::lsub(replace_c(a, label, r), replace_s(b, label, r)),
        (Structure::SRCoNeg(a), _) => Structure::rconeg(replace_c(a, label, r)),
        (Structure::SLCoNeg(a), _) => Structure::lconeg(replace_c(a, label, r)),
    }
}

fn replace_c(s: &CoStructure, label: &str, r: &Replacement) -> CoStructure {
    match (s, r) {
        (CoStructure::OutLeaf(_, e), Replacement::Output(new)) if e == label => new.clone(),
        (CoStructure::OutLeaf(..), _) => s.clone(),
        (CoStructure::SPar(a, b), _) => CoStructure::par(replace_c(a, label, r), replace_c(b, label, r)),
        (CoStructure::SUnder(a, b), _) => CoStructure::under(replace_c(a, label, r), replace_s(b, label, r)),
        (CoStructure::SOver(a, b), _) => CoStructure::over(replace_s(a, label, r), replace_c(b, label, r)),
        (CoStructure::SLNeg(a), _) => CoStructure::lneg(replace_s(a, label, r)),
        (CoStructure::SRNeg(a), _) => CoStructure::rneg(replace_s(a, label, r)),
    }
}

fn relabel_seq(s: &Sequent, vars: &mut names::Pool, covars: &mut names::Pool) -> Sequent {
    match s {
        Sequent::Unfocused(g, p) => Sequent::Unfocused(relabel_s(g, vars, covars), relabel_c(p, vars, covars)),
        Sequent::FocusedConclusion(g, a) => Sequent::FocusedConclusion(relabel_s(g, vars, covars), a.clone()),
        Sequent::FocusedHypothesis(p, a) => Sequent::FocusedHypothesis(relabel_c(p, vars, covars), a.clone()),
    }
}

fn relabel_s(s: &Structure, v: &mut names::Pool, c: &mut names::Pool) -> Structure {
    match s {
        Structure::InLeaf(a, _) => Structure::InLeaf(a.clone(), v.next_name()),
        Structure::SProd(a, b) => {
            let a = relabel_s(a, v, c);
            Structure::prod(a, relabel_s(b, v, c))
        }
        Structure::SRSubStr(a, b) => {
            let a = relabel_s(a, v, c);
            Structure::rsub(a, relabel_c(b, v, c))
        }
        Structure::SLSubStr(a, b) => {
            let a = relabel_c(a, v, c);
            Structure::lsub(a, relabel_s(b, v, c))
        }
        Structure::SRCoNeg(a) => Structure::rconeg(relabel_c(a, v, c)),
        Structure::SLCoNeg(a) => Structure::lconeg(relabel_c(a, v, c)),
    }
}

fn relabel_c(s: &CoStructure, v: &mut names::Pool, c: &mut names::Pool) -> CoStructure {
    match s {
        CoStructure::OutLeaf(a, _) => CoStructure::OutLeaf(a.clone(), c.next_name()),
        CoStructure::SPar(a, b) => {
            let a = relabel_c(a, v, c);
            CoStructure::par(a, relabel_c(b, v, c))
        }
        CoStructure::SUnder(a, b) => {
            let a = relabel_c(a, v, c);
            CoStructure::under(a, relabel_s(b, v, c))
        }
        CoStructure::SOver(a, b) => {
            let a = relabel_s(a, v, c);
            CoStructure::over(a, relabel_c(b, v, c))
        }
        CoStructure::SLNeg(a) => CoStructure::lneg(relabel_s(a, v, c)),
        CoStructure::SRNeg(a) => CoStructure::rneg(relabel_s(a, v, c)),
    }
}

fn fmt_formula_leaf(f: &mut fmt::Formatter<'_>, a: &Formula, label: &str) -> fmt::Result {
    match a {
        Formula::Tensor(..)
        | Formula::Par(..)
        | Formula::Over(..)
        | Formula::Under(..)
        | Formula::RSub(..)
        | Formula::LSub(..) => write!(f, "({})^{}", a, label),
        _ => write!(f, "{}^{}", a, label),
    }
}

struct Child<'a, T>(&'a T, bool);

impl<T: fmt::Display> fmt::Display for Child<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl Structure {
    fn bare(&self) -> bool {
        self.is_leaf() || matches!(self, Structure::SRCoNeg(_) | Structure::SLCoNeg(_))
    }
}

impl CoStructure {
    fn bare(&self) -> bool {
        self.is_leaf() || matches!(self, CoStructure::SLNeg(_) | CoStructure::SRNeg(_))
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::InLeaf(a, x) => fmt_formula_leaf(f, a, x),
            Structure::SProd(a, b) => write!(f, "{} . {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            Structure::SRSubStr(a, b) => write!(f, "{} </ {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            Structure::SLSubStr(a, b) => write!(f, "{} /> {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            Structure::SRCoNeg(a) => write!(f, "RC{{{}}}", a),
            Structure::SLCoNeg(a) => write!(f, "LC{{{}}}", a),
        }
    }
}

impl fmt::Display for CoStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoStructure::OutLeaf(a, e) => fmt_formula_leaf(f, a, e),
            CoStructure::SPar(a, b) => write!(f, "{} o {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            CoStructure::SUnder(a, b) => write!(f, "{} <- {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            CoStructure::SOver(a, b) => write!(f, "{} -> {}", Child(&**a, a.bare()), Child(&**b, b.bare())),
            CoStructure::SLNeg(a) => write!(f, "LN{{{}}}", a),
            CoStructure::SRNeg(a) => write!(f, "RN{{{}}}", a),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequent::Unfocused(g, p) => write!(f, "{} |- {}", g, p),
            Sequent::FocusedConclusion(g, a) => write!(f, "{} |- [{}]", g, a),
            Sequent::FocusedHypothesis(p, a) => write!(f, "[{}] |- {}", a, p),
        }
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
