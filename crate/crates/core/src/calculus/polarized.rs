//! The polarized focused calculus for LG.
//!
//! Positive formulas (atoms, ⊗, ⊘, ⦸ and the conegations) enter the stoup as
//! conclusions, negative ones (⊕, /, \ and the negations) as hypotheses.
//! Compound positive inputs and negative outputs are unfolded eagerly.

use super::{Calculus, RuleApplication, Template};
use crate::formula::{Formula, Polarity};
use crate::lp::LinType;
use crate::sequent::names::Fresh;
use crate::sequent::{CoStructure, Replacement, Sequent, Side, Structure};

#[derive(Clone, Copy, Debug, Default)]
pub struct Polarized;

type Unfold = (&'static str, Replacement, Template);

fn alpha_input(a: &Formula, x: &str, fresh: &mut Fresh) -> Option<Unfold> {
    let p0 = Template::premise(0);
    let vx = Template::var(x);
    Some(match a {
        Formula::Tensor(l, r) => {
            let (y, z) = (fresh.var(), fresh.var());
            let st = Structure::prod(Structure::leaf((**l).clone(), &y), Structure::leaf((**r).clone(), &z));
            ("α-⊗", Replacement::Input(st), Template::case(vx, y, z, p0))
        }
        Formula::RSub(l, r) => {
            let (y, n) = (fresh.var(), fresh.covar());
            let st = Structure::rsub(Structure::leaf((**l).clone(), &y), CoStructure::leaf((**r).clone(), &n));
            ("α-⊘", Replacement::Input(st), Template::case(vx, y, n, p0))
        }
        Formula::LSub(l, r) => {
            let (k, z) = (fresh.covar(), fresh.var());
            let st = Structure::lsub(CoStructure::leaf((**l).clone(), &k), Structure::leaf((**r).clone(), &z));
            ("α-⦸", Replacement::Input(st), Template::case(vx, k, z, p0))
        }
        Formula::RCoNeg(b) => {
            let k = fresh.covar();
            let st = Structure::rconeg(CoStructure::leaf((**b).clone(), &k));
            ("α-rc", Replacement::Input(st), Template::rename(p0, k, x))
        }
        Formula::LCoNeg(b) => {
            let k = fresh.covar();
            let st = Structure::lconeg(CoStructure::leaf((**b).clone(), &k));
            ("α-lc", Replacement::Input(st), Template::rename(p0, k, x))
        }
        _ => return None,
    })
}

fn alpha_output(a: &Formula, e: &str, fresh: &mut Fresh) -> Option<Unfold> {
    let p0 = Template::premise(0);
    let ve = Template::var(e);
    Some(match a {
        Formula::Over(l, r) => {
            let (y, n) = (fresh.var(), fresh.covar());
            let co = CoStructure::over(Structure::leaf((**r).clone(), &y), CoStructure::leaf((**l).clone(), &n));
            ("α-/", Replacement::Output(co), Template::case(ve, y, n, p0))
        }
        Formula::Under(l, r) => {
            let (k, z) = (fresh.covar(), fresh.var());
            let co = CoStructure::under(CoStructure::leaf((**r).clone(), &k), Structure::leaf((**l).clone(), &z));
            ("α-\\", Replacement::Output(co), Template::case(ve, k, z, p0))
        }
        Formula::Par(l, r) => {
            let (k, n) = (fresh.covar(), fresh.covar());
            let co = CoStructure::par(CoStructure::leaf((**r).clone(), &k), CoStructure::leaf((**l).clone(), &n));
            ("α-⊕", Replacement::Output(co), Template::case(ve, k, n, p0))
        }
        Formula::LNeg(b) => {
            let y = fresh.var();
            let co = CoStructure::lneg(Structure::leaf((**b).clone(), &y));
            ("α-ln", Replacement::Output(co), Template::rename(p0, y, e))
        }
        Formula::RNeg(b) => {
            let y = fresh.var();
            let co = CoStructure::rneg(Structure::leaf((**b).clone(), &y));
            ("α-rn", Replacement::Output(co), Template::rename(p0, y, e))
        }
        _ => return None,
    })
}

fn fc(g: &Structure, a: &Formula) -> Sequent {
    Sequent::FocusedConclusion(g.clone(), a.clone())
}

fn fh(p: &CoStructure, a: &Formula) -> Sequent {
    Sequent::FocusedHypothesis(p.clone(), a.clone())
}

fn pair01() -> Template {
    Template::pair(Template::premise(0), Template::premise(1))
}

impl Polarized {
    fn conclusion_rules(&self, s: &Sequent, g: &Structure, a: &Formula) -> Vec<RuleApplication> {
        let app = |rule, premises, template| RuleApplication {
            rule,
            premises,
            conclusion: s.clone(),
            template,
        };
        if a.polarity() == Polarity::Neg {
            let e = Fresh::new(s.labels()).covar();
            let premise = Sequent::Unfocused(g.clone(), CoStructure::leaf(a.clone(), &e));
            let t = Template::lam(e, a.output_type(), Template::premise(0));
            return vec![app("R∘", vec![premise], t)];
        }
        let r = match (a, g) {
            (Formula::Atom(p), Structure::InLeaf(Formula::Atom(q), x)) if p == q => app("Ax", vec![], Template::var(x)),
            (Formula::Tensor(l, r), Structure::SProd(g1, g2)) => app("β-⊗", vec![fc(g1, l), fc(g2, r)], pair01()),
            (Formula::RSub(l, r), Structure::SRSubStr(g1, sg)) => app("β-⊘", vec![fc(g1, l), fh(sg, r)], pair01()),
            (Formula::LSub(l, r), Structure::SLSubStr(sg, g1)) => app("β-⦸", vec![fh(sg, l), fc(g1, r)], pair01()),
            (Formula::RCoNeg(b), Structure::SRCoNeg(sg)) => app("β-rc", vec![fh(sg, b)], Template::premise(0)),
            (Formula::LCoNeg(b), Structure::SLCoNeg(sg)) => app("β-lc", vec![fh(sg, b)], Template::premise(0)),
            _ => return Vec::new(),
        };
        vec![r]
    }

    fn hypothesis_rules(&self, s: &Sequent, p: &CoStructure, a: &Formula) -> Vec<RuleApplication> {
        let app = |rule, premises, template| RuleApplication {
            rule,
            premises,
            conclusion: s.clone(),
            template,
        };
        if a.polarity() == Polarity::Pos {
            let x = Fresh::new(s.labels()).var();
            let premise = Sequent::Unfocused(Structure::leaf(a.clone(), &x), p.clone());
            let t = Template::lam(x, a.input_type(), Template::premise(0));
            return vec![app("R•", vec![premise], t)];
        }
        let r = match (a, p) {
            (Formula::Par(l, r), CoStructure::SPar(sg, p1)) => app("β-⊕", vec![fh(sg, r), fh(p1, l)], pair01()),
            (Formula::Over(l, r), CoStructure::SOver(d, p1)) => app("β-/", vec![fc(d, r), fh(p1, l)], pair01()),
            (Formula::Under(l, r), CoStructure::SUnder(p1, d)) => app("β-\\", vec![fh(p1, r), fc(d, l)], pair01()),
            (Formula::LNeg(b), CoStructure::SLNeg(d)) => app("β-ln", vec![fc(d, b)], Template::premise(0)),
            (Formula::RNeg(b), CoStructure::SRNeg(d)) => app("β-rn", vec![fc(d, b)], Template::premise(0)),
            _ => return Vec::new(),
        };
        vec![r]
    }
}

impl Calculus for Polarized {
    fn name(&self) -> &'static str {
        "polarized"
    }

    fn leaf_type(&self, f: &Formula, side: Side) -> LinType {
        match side {
            Side::Input => f.input_type(),
            Side::Output => f.output_type(),
        }
    }

    fn invertible(&self, s: &Sequent) -> Option<RuleApplication> {
        if !s.is_unfocused() {
            return None;
        }
        for leaf in s.leaves() {
            let mut fresh = Fresh::new(s.labels());
            let unfold = match leaf.side {
                Side::Input => alpha_input(&leaf.formula, &leaf.label, &mut fresh),
                Side::Output => alpha_output(&leaf.formula, &leaf.label, &mut fresh),
            };
            if let Some((rule, rep, template)) = unfold {
                return Some(RuleApplication {
                    rule,
                    premises: vec![s.replace_leaf(&leaf.label, &rep)],
                    conclusion: s.clone(),
                    template,
                });
            }
        }
        None
    }

    fn decisions(&self, s: &Sequent) -> Vec<RuleApplication> {
        let (g, p) = match s {
            Sequent::Unfocused(g, p) => (g, p),
            _ => return Vec::new(),
        };
        let mut out = Vec::new();
        if let Structure::InLeaf(k, x) = g {
            if k.polarity() == Polarity::Neg {
                out.push(RuleApplication {
                    rule: "D•",
                    premises: vec![fh(p, k)],
                    conclusion: s.clone(),
                    template: Template::app(Template::var(x), Template::premise(0)),
                });
            }
        }
        if let CoStructure::OutLeaf(a, e) = p {
            if a.polarity() == Polarity::Pos {
                out.push(RuleApplication {
                    rule: "D∘",
                    premises: vec![fc(g, a)],
                    conclusion: s.clone(),
                    template: Template::app(Template::var(e), Template::premise(0)),
                });
            }
        }
        out
    }

    fn focused(&self, s: &Sequent) -> Vec<RuleApplication> {
        match s {
            Sequent::FocusedConclusion(g, a) => self.conclusion_rules(s, g, a),
            Sequent::FocusedHypothesis(p, a) => self.hypothesis_rules(s, p, a),
            Sequent::Unfocused(..) => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::lp::{parse_lin_term, typecheck, LinTerm};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn check(app: &RuleApplication, premise_terms: &[LinTerm]) {
        let calc = Polarized;
        for (p, t) in app.premises.iter().zip(premise_terms) {
            let ctx = calc.context(p).unwrap();
            typecheck(&ctx, t, Some(&calc.sequent_type(p))).unwrap_or_else(|e| panic!("premise {}: {}", p, e));
        }
        let ctx = calc.context(&app.conclusion).unwrap();
        let term = app.term(premise_terms);
        typecheck(&ctx, &term, Some(&calc.sequent_type(&app.conclusion)))
            .unwrap_or_else(|e| panic!("conclusion {} with {}: {}", app.conclusion, term, e));
    }

    #[test]
    fn axiom() {
        let s = fc(&Structure::leaf(f("np"), "x"), &f("np"));
        let apps = Polarized.focused(&s);
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].rule, "Ax");
        assert_eq!(apps[0].term(&[]), LinTerm::var("x"));
        assert!(Polarized.focused(&fc(&Structure::leaf(f("np"), "x"), &f("s"))).is_empty());
        // a compound negative focus reacts instead of closing
        let apps = Polarized.focused(&fc(&Structure::leaf(f("np\\s"), "x"), &f("np\\s")));
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].rule, "R∘");
    }

    #[test]
    fn decision_and_reaction_terms() {
        // n^ν as the consequent, n^y as the antecedent
        let s = Sequent::Unfocused(Structure::leaf(f("n"), "y"), CoStructure::leaf(f("n"), "ν"));
        let d = Polarized.decisions(&s);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, "D∘");
        assert_eq!(d[0].term(&[LinTerm::var("y")]).to_string(), "(ν y)");
        check(&d[0], &[LinTerm::var("y")]);

        let h = fh(&CoStructure::leaf(f("n"), "ν"), &f("n"));
        let r = Polarized.focused(&h);
        assert_eq!(r[0].rule, "R•");
        let x = match &r[0].premises[0] {
            Sequent::Unfocused(Structure::InLeaf(_, x), _) => x.clone(),
            other => panic!("{}", other),
        };
        let body = LinTerm::app(LinTerm::var("ν"), LinTerm::var(x.clone()));
        let t = r[0].term(std::slice::from_ref(&body));
        assert!(t.alpha_eq(&parse_lin_term("lam y. (ν y)").unwrap()));
        check(&r[0], &[body]);

        // positive input: no D•
        let s = Sequent::Unfocused(Structure::leaf(f("np"), "x"), CoStructure::leaf(f("s"), "ν"));
        assert!(Polarized.decisions(&s).iter().all(|a| a.rule != "D•"));
    }

    #[test]
    fn alpha_under_and_par() {
        let s = Sequent::Unfocused(Structure::leaf(f("a"), "f"), CoStructure::leaf(f("np\\s"), "δ"));
        let a = Polarized.invertible(&s).unwrap();
        assert_eq!(a.rule, "α-\\");
        let (k, b) = match &a.premises[0] {
            Sequent::Unfocused(_, CoStructure::SUnder(k, b)) => match (&**k, &**b) {
                (CoStructure::OutLeaf(s, k), Structure::InLeaf(np, b)) => {
                    assert_eq!((s, np), (&f("s"), &f("np")));
                    (k.clone(), b.clone())
                }
                _ => panic!(),
            },
            other => panic!("{}", other),
        };
        let m = LinTerm::var("M");
        assert_eq!(a.term(&[m]).to_string(), format!("case δ of <{}, {}>. M", k, b));

        let s = Sequent::Unfocused(Structure::leaf(f("a"), "f"), CoStructure::leaf(f("s + ln(np)"), "δ"));
        let a = Polarized.invertible(&s).unwrap();
        assert_eq!(a.rule, "α-⊕");
        match &a.premises[0] {
            Sequent::Unfocused(_, CoStructure::SPar(l, r)) => {
                assert_eq!(l.readback(), f("ln(np)"));
                assert_eq!(r.readback(), f("s"));
            }
            other => panic!("{}", other),
        }
    }

    #[test]
    fn unary_alpha_renames() {
        let s = Sequent::Unfocused(Structure::leaf(f("a"), "x"), CoStructure::leaf(f("ln(np)"), "ε"));
        let a = Polarized.invertible(&s).unwrap();
        assert_eq!(a.rule, "α-ln");
        let y = match &a.premises[0] {
            Sequent::Unfocused(_, CoStructure::SLNeg(d)) => match &**d {
                Structure::InLeaf(_, y) => y.clone(),
                _ => panic!(),
            },
            other => panic!("{}", other),
        };
        let m = LinTerm::app(LinTerm::var("r"), LinTerm::var(y));
        assert_eq!(a.term(&[m]).to_string(), "(r ε)");
    }

    #[test]
    fn beta_splits_exactly() {
        let p = CoStructure::over(
            Structure::leaf(f("np"), "z"),
            CoStructure::under(CoStructure::leaf(f("s"), "ν"), Structure::leaf(f("np"), "x")),
        );
        let s = fh(&p, &f("(np\\s)/np"));
        let apps = Polarized.focused(&s);
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].rule, "β-/");
        assert_eq!(apps[0].premises[0], fc(&Structure::leaf(f("np"), "z"), &f("np")));
        // shape mismatch: no rule
        let s = fh(&CoStructure::leaf(f("s"), "ν"), &f("(np\\s)/np"));
        assert!(Polarized.focused(&s).is_empty());
        assert!(Polarized.focused(&fc(&Structure::leaf(f("p"), "x"), &f("p * p"))).is_empty());
    }

    #[test]
    fn every_unfolding_typechecks() {
        // each α rule, fed a premise term that uses every premise variable,
        // yields a conclusion term of type ⊥
        for src in ["a * b", "a ./ b", "b .\\ a", "rc(a)", "lc(a)", "a / b", "b \\ a", "a + b", "ln(a)", "rn(a)"] {
            let a = f(src);
            let s = match a.polarity() {
                Polarity::Pos => Sequent::Unfocused(Structure::leaf(a.clone(), "x"), CoStructure::leaf(f("c"), "γ")),
                Polarity::Neg => Sequent::Unfocused(Structure::leaf(f("c"), "w"), CoStructure::leaf(a.clone(), "ε")),
            };
            let app = Polarized.invertible(&s).unwrap_or_else(|| panic!("no α for {}", src));
            let ctx = Polarized.context(&app.premises[0]).unwrap();
            // build a term consuming the premise context: pair everything and hand it to a sink
            let names: Vec<_> = ctx.iter().map(|(n, _)| n.clone()).collect();
            let tys: Vec<_> = ctx.iter().map(|(_, t)| t.clone()).collect();
            let mut tuple = LinTerm::var(names[0].clone());
            let mut ty = tys[0].clone();
            for (n, t) in names.iter().zip(&tys).skip(1) {
                tuple = LinTerm::pair(tuple, LinTerm::var(n.clone()));
                ty = LinType::prod(ty, t.clone());
            }
            let sink = "sink";
            let body = LinTerm::app(LinTerm::var(sink), tuple);
            let mut pctx = ctx.clone();
            pctx.insert(sink, LinType::neg(ty.clone())).unwrap();
            typecheck(&pctx, &body, Some(&LinType::Bottom)).unwrap();
            let mut cctx = Polarized.context(&s).unwrap();
            cctx.insert(sink, LinType::neg(ty)).unwrap();
            let t = app.term(&[body]);
            typecheck(&cctx, &t, Some(&LinType::Bottom)).unwrap_or_else(|e| panic!("{}: {} ({})", src, t, e));
        }
    }
}
