//! Backward-applicable inference rules with term construction.
//!
//! A [`RuleApplication`] pairs a conclusion with the premises it needs and a
//! [`Template`] that assembles the conclusion's term from the premises'
//! terms. Search is generic over the [`Calculus`] trait so the polarized
//! calculus and the call-by-name/call-by-value variants share one engine.

mod polarized;

pub use polarized::Polarized;

use crate::formula::Formula;
use crate::lp::{Context, LinTerm, LinType, TypeError};
use crate::sequent::{Sequent, Side};

/// Recipe for a conclusion term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Template {
    /// The term of the i-th premise.
    Premise(usize),
    Var(String),
    App(Box<Template>, Box<Template>),
    Lam(String, Option<LinType>, Box<Template>),
    Pair(Box<Template>, Box<Template>),
    Case(Box<Template>, String, String, Box<Template>),
    /// `M[to/from]` where `M` is the inner template.
    Rename(Box<Template>, String, String),
}

impl Template {
    pub fn premise(i: usize) -> Self {
        Template::Premise(i)
    }

    pub fn var(x: impl Into<String>) -> Self {
        Template::Var(x.into())
    }

    pub fn app(a: Template, b: Template) -> Self {
        Template::App(Box::new(a), Box::new(b))
    }

    pub fn lam(x: impl Into<String>, ty: LinType, body: Template) -> Self {
        Template::Lam(x.into(), Some(ty), Box::new(body))
    }

    pub fn pair(a: Template, b: Template) -> Self {
        Template::Pair(Box::new(a), Box::new(b))
    }

    pub fn case(scrut: Template, x: impl Into<String>, y: impl Into<String>, body: Template) -> Self {
        Template::Case(Box::new(scrut), x.into(), y.into(), Box::new(body))
    }

    pub fn rename(body: Template, from: impl Into<String>, to: impl Into<String>) -> Self {
        Template::Rename(Box::new(body), from.into(), to.into())
    }

    pub fn build(&self, premises: &[LinTerm]) -> LinTerm {
        match self {
            Template::Premise(i) => premises[*i].clone(),
            Template::Var(x) => LinTerm::Var(x.clone()),
            Template::App(a, b) => LinTerm::app(a.build(premises), b.build(premises)),
            Template::Lam(x, ty, b) => LinTerm::Lam(x.clone(), ty.clone(), Box::new(b.build(premises))),
            Template::Pair(a, b) => LinTerm::pair(a.build(premises), b.build(premises)),
            Template::Case(s, x, y, b) => LinTerm::case(s.build(premises), x.clone(), y.clone(), b.build(premises)),
            Template::Rename(b, from, to) => b.build(premises).subst(from, &LinTerm::Var(to.clone())),
        }
    }
}

/// One backward rule step: to prove `conclusion`, prove every premise.
#[derive(Clone, Debug)]
pub struct RuleApplication {
    pub rule: &'static str,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub template: Template,
}

impl RuleApplication {
    pub fn term(&self, premise_terms: &[LinTerm]) -> LinTerm {
        debug_assert_eq!(premise_terms.len(), self.premises.len());
        self.template.build(premise_terms)
    }
}

/// A focused display calculus with a term interpretation.
pub trait Calculus {
    fn name(&self) -> &'static str;

    /// Linear type of a leaf's (co)variable.
    fn leaf_type(&self, f: &Formula, side: Side) -> LinType;

    /// An invertible rule to apply eagerly to an unfocused sequent, if any.
    fn invertible(&self, s: &Sequent) -> Option<RuleApplication>;

    /// Rules that leave the unfocused phase. `s` is one member of a display
    /// class; each leaf is considered only where it is displayed.
    fn decisions(&self, s: &Sequent) -> Vec<RuleApplication>;

    /// Rules for a sequent with a formula in the stoup.
    fn focused(&self, s: &Sequent) -> Vec<RuleApplication>;

    /// Type of the term labelling `s`.
    fn sequent_type(&self, s: &Sequent) -> LinType {
        match s {
            Sequent::Unfocused(..) => LinType::Bottom,
            Sequent::FocusedConclusion(_, a) => self.leaf_type(a, Side::Input),
            Sequent::FocusedHypothesis(_, a) => self.leaf_type(a, Side::Output),
        }
    }

    fn context(&self, s: &Sequent) -> Result<Context, TypeError> {
        s.context_with(|f, side| self.leaf_type(f, side))
    }
}

/// All applications for `s` that do not involve display moves: the eager
/// step if there is one, otherwise decisions or focused rules.
pub fn applications<C: Calculus + ?Sized>(calc: &C, s: &Sequent) -> Vec<RuleApplication> {
    match s {
        Sequent::Unfocused(..) => match calc.invertible(s) {
            Some(a) => vec![a],
            None => calc.decisions(s),
        },
        _ => calc.focused(s),
    }
}
