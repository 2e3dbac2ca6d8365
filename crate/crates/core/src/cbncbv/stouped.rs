//! Stouped calculi for the two uniform-polarity readings.
//!
//! [`Lgt`] only ever focuses hypotheses, [`Lgq`] only conclusions. Pattern
//! pairs follow the component order of [`cbn_type`] and [`cbv_type`].

use super::{cbn_type, cbv_type};
use crate::calculus::{Calculus, RuleApplication, Template};
use crate::formula::Formula;
use crate::lp::LinType;
use crate::sequent::names::Fresh;
use crate::sequent::{CoStructure, Replacement, Sequent, Side, Structure};

/// Call-by-name: every formula is negative.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lgt;

/// Call-by-value: every formula is positive.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lgq;

// Formulas outside the translation table get no rules; an opaque atom keeps
// their leaves typable.
fn cbn(a: &Formula) -> LinType {
    cbn_type(a).unwrap_or_else(|_| LinType::atom(a.to_string()))
}

fn cbv(a: &Formula) -> LinType {
    cbv_type(a).unwrap_or_else(|_| LinType::atom(a.to_string()))
}

fn p(i: usize) -> Template {
    Template::premise(i)
}

fn v(x: &str) -> Template {
    Template::var(x)
}

/// `λ⟨a,b⟩M` as `λw. case w of ⟨a,b⟩. M`.
fn lam_pair(w: String, ty: LinType, a: String, b: String, body: Template) -> Template {
    let scrut = Template::var(w.clone());
    Template::lam(w, ty, Template::case(scrut, a, b, body))
}

fn rule(s: &Sequent, name: &'static str, premises: Vec<Sequent>, template: Template) -> RuleApplication {
    RuleApplication {
        rule: name,
        premises,
        conclusion: s.clone(),
        template,
    }
}

fn un(g: Structure, p: CoStructure) -> Sequent {
    Sequent::Unfocused(g, p)
}

fn inl(a: &Formula, x: &str) -> Structure {
    Structure::leaf(a.clone(), x)
}

fn outl(a: &Formula, e: &str) -> CoStructure {
    CoStructure::leaf(a.clone(), e)
}

impl Calculus for Lgt {
    fn name(&self) -> &'static str {
        "LGT"
    }

    fn leaf_type(&self, f: &Formula, side: Side) -> LinType {
        match side {
            Side::Input => LinType::neg(cbn(f)),
            Side::Output => cbn(f),
        }
    }

    fn invertible(&self, s: &Sequent) -> Option<RuleApplication> {
        if !s.is_unfocused() {
            return None;
        }
        for leaf in s.leaves().into_iter().filter(|l| l.side == Side::Output) {
            let mut fresh = Fresh::new(s.labels());
            let nu = leaf.label.as_str();
            let (name, co, t) = match &leaf.formula {
                Formula::Under(b, a) => {
                    let (y, e) = (fresh.var(), fresh.covar());
                    let co = CoStructure::under(outl(a, &e), inl(b, &y));
                    ("\\∘", co, Template::case(v(nu), y, e, p(0)))
                }
                Formula::Over(a, b) => {
                    let (y, e) = (fresh.var(), fresh.covar());
                    let co = CoStructure::over(inl(b, &y), outl(a, &e));
                    ("/∘", co, Template::case(v(nu), y, e, p(0)))
                }
                Formula::Par(a, b) => {
                    let (k, e) = (fresh.covar(), fresh.covar());
                    let co = CoStructure::par(outl(b, &k), outl(a, &e));
                    ("⊕∘", co, Template::case(v(nu), k, e, p(0)))
                }
                _ => continue,
            };
            return Some(rule(s, name, vec![s.replace_leaf(nu, &Replacement::Output(co))], t));
        }
        None
    }

    fn decisions(&self, s: &Sequent) -> Vec<RuleApplication> {
        let Sequent::Unfocused(g, pi) = s else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let Structure::InLeaf(a, x) = g {
            let t = Template::app(v(x), p(0));
            out.push(rule(s, "D", vec![Sequent::FocusedHypothesis(pi.clone(), a.clone())], t));
        }
        if let CoStructure::OutLeaf(c, nu) = pi {
            let mut fresh = Fresh::new(s.labels());
            match (c, g) {
                (Formula::Tensor(a, b), Structure::SProd(g1, g2)) => {
                    let (e, k) = (fresh.covar(), fresh.covar());
                    let premises = vec![un((**g1).clone(), outl(a, &e)), un((**g2).clone(), outl(b, &k))];
                    let pair = Template::pair(Template::lam(e, cbn(a), p(0)), Template::lam(k, cbn(b), p(1)));
                    out.push(rule(s, "⊗∘", premises, Template::app(v(nu), pair)));
                }
                (Formula::RSub(a, b), Structure::SRSubStr(g1, sg)) | (Formula::LSub(b, a), Structure::SLSubStr(sg, g1)) => {
                    let e = fresh.covar();
                    let name = if matches!(c, Formula::RSub(..)) { "⊘∘" } else { "⦸∘" };
                    let premises = vec![Sequent::FocusedHypothesis((**sg).clone(), (**b).clone()), un((**g1).clone(), outl(a, &e))];
                    let pair = Template::pair(p(0), Template::lam(e, cbn(a), p(1)));
                    out.push(rule(s, name, premises, Template::app(v(nu), pair)));
                }
                _ => {}
            }
        }
        out
    }

    fn focused(&self, s: &Sequent) -> Vec<RuleApplication> {
        let Sequent::FocusedHypothesis(pi, c) = s else {
            return Vec::new();
        };
        let mut fresh = Fresh::new(s.labels());
        let r = match (c, pi) {
            (Formula::Atom(q), CoStructure::OutLeaf(Formula::Atom(q2), e)) if q == q2 => rule(s, "Ax", vec![], v(e)),
            (Formula::Tensor(a, b), _) => {
                let (x, y, w) = (fresh.var(), fresh.var(), fresh.var());
                let premise = un(Structure::prod(inl(a, &x), inl(b, &y)), pi.clone());
                let ty = LinType::prod(LinType::neg(cbn(a)), LinType::neg(cbn(b)));
                rule(s, "⊗•", vec![premise], lam_pair(w, ty, x, y, p(0)))
            }
            (Formula::RSub(a, b), _) | (Formula::LSub(b, a), _) => {
                let (y, n, w) = (fresh.var(), fresh.covar(), fresh.var());
                let (name, st) = match c {
                    Formula::RSub(..) => ("⊘•", Structure::rsub(inl(a, &y), outl(b, &n))),
                    _ => ("⦸•", Structure::lsub(outl(b, &n), inl(a, &y))),
                };
                let ty = LinType::prod(cbn(b), LinType::neg(cbn(a)));
                rule(s, name, vec![un(st, pi.clone())], lam_pair(w, ty, n, y, p(0)))
            }
            (Formula::Under(b, a), CoStructure::SUnder(p1, d)) | (Formula::Over(a, b), CoStructure::SOver(d, p1)) => {
                let e = fresh.covar();
                let name = if matches!(c, Formula::Under(..)) { "\\•" } else { "/•" };
                let premises = vec![un((**d).clone(), outl(b, &e)), Sequent::FocusedHypothesis((**p1).clone(), (**a).clone())];
                rule(s, name, premises, Template::pair(Template::lam(e, cbn(b), p(0)), p(1)))
            }
            (Formula::Par(a, b), CoStructure::SPar(sg, p1)) => {
                let premises = vec![
                    Sequent::FocusedHypothesis((**sg).clone(), (**b).clone()),
                    Sequent::FocusedHypothesis((**p1).clone(), (**a).clone()),
                ];
                rule(s, "⊕•", premises, Template::pair(p(0), p(1)))
            }
            _ => return Vec::new(),
        };
        vec![r]
    }
}

impl Calculus for Lgq {
    fn name(&self) -> &'static str {
        "LGQ"
    }

    fn leaf_type(&self, f: &Formula, side: Side) -> LinType {
        match side {
            Side::Input => cbv(f),
            Side::Output => LinType::neg(cbv(f)),
        }
    }

    fn invertible(&self, s: &Sequent) -> Option<RuleApplication> {
        if !s.is_unfocused() {
            return None;
        }
        for leaf in s.leaves().into_iter().filter(|l| l.side == Side::Input) {
            let mut fresh = Fresh::new(s.labels());
            let z = leaf.label.as_str();
            let (name, st, t) = match &leaf.formula {
                Formula::Tensor(a, b) => {
                    let (x, y) = (fresh.var(), fresh.var());
                    let st = Structure::prod(inl(a, &x), inl(b, &y));
                    ("⊗•", st, Template::case(v(z), x, y, p(0)))
                }
                Formula::RSub(a, b) => {
                    let (x, k) = (fresh.var(), fresh.covar());
                    let st = Structure::rsub(inl(a, &x), outl(b, &k));
                    ("⊘•", st, Template::case(v(z), k, x, p(0)))
                }
                Formula::LSub(b, a) => {
                    let (x, k) = (fresh.var(), fresh.covar());
                    let st = Structure::lsub(outl(b, &k), inl(a, &x));
                    ("⦸•", st, Template::case(v(z), k, x, p(0)))
                }
                _ => continue,
            };
            return Some(rule(s, name, vec![s.replace_leaf(z, &Replacement::Input(st))], t));
        }
        None
    }

    fn decisions(&self, s: &Sequent) -> Vec<RuleApplication> {
        let Sequent::Unfocused(g, pi) = s else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let CoStructure::OutLeaf(a, e) = pi {
            let t = Template::app(v(e), p(0));
            out.push(rule(s, "D", vec![Sequent::FocusedConclusion(g.clone(), a.clone())], t));
        }
        if let Structure::InLeaf(c, z) = g {
            let mut fresh = Fresh::new(s.labels());
            match (c, pi) {
                (Formula::Under(b, a), CoStructure::SUnder(p1, d)) | (Formula::Over(a, b), CoStructure::SOver(d, p1)) => {
                    let x = fresh.var();
                    let name = if matches!(c, Formula::Under(..)) { "\\•" } else { "/•" };
                    let premises = vec![Sequent::FocusedConclusion((**d).clone(), (**b).clone()), un(inl(a, &x), (**p1).clone())];
                    let pair = Template::pair(p(0), Template::lam(x, cbv(a), p(1)));
                    out.push(rule(s, name, premises, Template::app(v(z), pair)));
                }
                (Formula::Par(a, b), CoStructure::SPar(sg, p1)) => {
                    let (y, x) = (fresh.var(), fresh.var());
                    let premises = vec![un(inl(b, &y), (**sg).clone()), un(inl(a, &x), (**p1).clone())];
                    let pair = Template::pair(Template::lam(y, cbv(b), p(0)), Template::lam(x, cbv(a), p(1)));
                    out.push(rule(s, "⊕•", premises, Template::app(v(z), pair)));
                }
                _ => {}
            }
        }
        out
    }

    fn focused(&self, s: &Sequent) -> Vec<RuleApplication> {
        let Sequent::FocusedConclusion(g, c) = s else {
            return Vec::new();
        };
        let mut fresh = Fresh::new(s.labels());
        let r = match (c, g) {
            (Formula::Atom(q), Structure::InLeaf(Formula::Atom(q2), x)) if q == q2 => rule(s, "Ax", vec![], v(x)),
            (Formula::Tensor(a, b), Structure::SProd(g1, g2)) => {
                let premises = vec![
                    Sequent::FocusedConclusion((**g1).clone(), (**a).clone()),
                    Sequent::FocusedConclusion((**g2).clone(), (**b).clone()),
                ];
                rule(s, "⊗∘", premises, Template::pair(p(0), p(1)))
            }
            (Formula::Under(b, a), _) | (Formula::Over(a, b), _) => {
                let (y, e, w) = (fresh.var(), fresh.covar(), fresh.var());
                let (name, co) = match c {
                    Formula::Under(..) => ("\\∘", CoStructure::under(outl(a, &e), inl(b, &y))),
                    _ => ("/∘", CoStructure::over(inl(b, &y), outl(a, &e))),
                };
                let ty = LinType::prod(cbv(b), LinType::neg(cbv(a)));
                rule(s, name, vec![un(g.clone(), co)], lam_pair(w, ty, y, e, p(0)))
            }
            (Formula::Par(a, b), _) => {
                let (k, e, w) = (fresh.covar(), fresh.covar(), fresh.var());
                let co = CoStructure::par(outl(b, &k), outl(a, &e));
                let ty = LinType::prod(LinType::neg(cbv(b)), LinType::neg(cbv(a)));
                rule(s, "⊕∘", vec![un(g.clone(), co)], lam_pair(w, ty, k, e, p(0)))
            }
            (Formula::RSub(a, b), Structure::SRSubStr(g1, sg)) | (Formula::LSub(b, a), Structure::SLSubStr(sg, g1)) => {
                let z = fresh.var();
                let name = if matches!(c, Formula::RSub(..)) { "⊘∘" } else { "⦸∘" };
                let premises = vec![un(inl(b, &z), (**sg).clone()), Sequent::FocusedConclusion((**g1).clone(), (**a).clone())];
                rule(s, name, premises, Template::pair(Template::lam(z, cbv(b), p(0)), p(1)))
            }
            _ => return Vec::new(),
        };
        vec![r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Polarized;
    use crate::lp::LinTerm;
    use crate::search::{derivable_with, search_with, SearchLimits};
    use crate::sequent::parse_sequent;
    use crate::structural::RulePackage;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn axioms() {
        let lgq = Lgq.focused(&Sequent::FocusedConclusion(inl(&atom("p"), "x"), atom("p")));
        assert_eq!((lgq[0].rule, lgq[0].term(&[])), ("Ax", LinTerm::var("x")));
        let lgt = Lgt.focused(&Sequent::FocusedHypothesis(outl(&atom("p"), "ε"), atom("p")));
        assert_eq!((lgt[0].rule, lgt[0].term(&[])), ("Ax", LinTerm::var("ε")));
        // neither calculus focuses on the other side
        assert!(Lgq.focused(&Sequent::FocusedHypothesis(outl(&atom("p"), "ε"), atom("p"))).is_empty());
        assert!(Lgt.focused(&Sequent::FocusedConclusion(inl(&atom("p"), "x"), atom("p"))).is_empty());
    }

    #[test]
    fn identity_terms() {
        let goal = Sequent::Unfocused(inl(&atom("p"), "x"), outl(&atom("p"), "ε"));
        let lim = SearchLimits::default();
        let q = search_with(&Lgq, &goal, RulePackage::EMPTY, lim).unwrap();
        assert_eq!(q.derivations.len(), 1);
        assert_eq!(q.derivations[0].term.to_string(), "(ε x)");
        let t = search_with(&Lgt, &goal, RulePackage::EMPTY, lim).unwrap();
        assert_eq!(t.derivations[0].term.to_string(), "(x ε)");
    }

    const BATTERY: &[&str] = &[
        "np . (np \\ s) |- s",
        "(s / np) . np |- s",
        "np . (((np \\ s) / np) . np) |- s",
        "a * b |- a * b",
        "a * b |- b * a",
        "a + b |- a + b",
        "a + b |- b + a",
        "a ./ b |- a ./ b",
        "b .\\ a |- b .\\ a",
        "a / b |- a / b",
        "a |- (a * b) / b",
        "a |- b \\ (b * a)",
        "(a / b) * b |- a",
        "a |- (a + b) ./ b",
        "a |- b .\\ (b + a)",
        "(a ./ b) * (b / c) |- a",
        "a . b |- a * b",
        "a |- a + b",
        "a / b |- b \\ a",
        "(a + b) * c |- a + (b * c)",
    ];

    #[test]
    fn agree_with_polarized_and_typecheck() {
        let lim = SearchLimits::default();
        for src in BATTERY {
            let goal = seq(src);
            for pkg in [RulePackage::EMPTY, RulePackage::DIST] {
                let polar = derivable_with(&Polarized, &goal, pkg, lim);
                for (name, verdict, derivs) in [
                    ("LGT", derivable_with(&Lgt, &goal, pkg, lim), search_with(&Lgt, &goal, pkg, lim).unwrap()),
                    ("LGQ", derivable_with(&Lgq, &goal, pkg, lim), search_with(&Lgq, &goal, pkg, lim).unwrap()),
                ] {
                    assert_eq!(polar.label(), verdict.label(), "{} on {} with {}", name, src, pkg);
                    for d in &derivs.derivations {
                        let check = if name == "LGT" { d.check(&Lgt) } else { d.check(&Lgq) };
                        check.unwrap_or_else(|e| panic!("{} on {}: {:?}", name, src, e));
                    }
                }
            }
        }
    }

    #[test]
    fn parsed_battery_is_nontrivial() {
        let parsed: Vec<_> = BATTERY.iter().map(|s| seq(s)).collect();
        let yes = parsed.iter().filter(|g| derivable_with(&Polarized, g, RulePackage::EMPTY, SearchLimits::default()).is_yes()).count();
        assert!(yes >= 10 && yes < parsed.len());
    }
}
