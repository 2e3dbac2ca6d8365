use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::{CoStructure, Sequent, Side, Structure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DisplayError {
    #[error("no leaf labelled `{0}` in the sequent")]
    NotFound(String),
    #[error("display moves only apply to unfocused sequents")]
    Focused,
}

/// One-step display moves, in both directions.
///
/// Because the antecedent and consequent are typed positions, exchanging
/// them is the identity and `s` itself is always part of the result.
pub fn display_moves(s: &Sequent) -> Vec<Sequent> {
    let (g, p) = match s {
        Sequent::Unfocused(g, p) => (g, p),
        _ => return Vec::new(),
    };
    let mut out = vec![s.clone()];
    let u = |g: Structure, p: CoStructure| Sequent::Unfocused(g, p);
    match g {
        Structure::InLeaf(..) => {}
        Structure::SProd(g1, g2) => {
            out.push(u((**g1).clone(), CoStructure::over((**g2).clone(), p.clone())));
            out.push(u((**g2).clone(), CoStructure::under(p.clone(), (**g1).clone())));
        }
        Structure::SRSubStr(g1, sg) => {
            out.push(u((**g1).clone(), CoStructure::par((**sg).clone(), p.clone())));
        }
        Structure::SLSubStr(p1, g1) => {
            out.push(u((**g1).clone(), CoStructure::par(p.clone(), (**p1).clone())));
        }
        Structure::SRCoNeg(p1) => {
            out.push(u(Structure::lconeg(p.clone()), (**p1).clone()));
        }
        Structure::SLCoNeg(s1) => {
            out.push(u(Structure::rconeg(p.clone()), (**s1).clone()));
        }
    }
    match p {
        CoStructure::OutLeaf(..) => {}
        CoStructure::SOver(d, p1) => {
            out.push(u(Structure::prod(g.clone(), (**d).clone()), (**p1).clone()));
        }
        CoStructure::SUnder(p1, g1) => {
            out.push(u(Structure::prod((**g1).clone(), g.clone()), (**p1).clone()));
        }
        CoStructure::SPar(sg, p1) => {
            out.push(u(Structure::rsub(g.clone(), (**sg).clone()), (**p1).clone()));
            out.push(u(Structure::lsub((**p1).clone(), g.clone()), (**sg).clone()));
        }
        CoStructure::SLNeg(d) => {
            out.push(u((**d).clone(), CoStructure::rneg(g.clone())));
        }
        CoStructure::SRNeg(g1) => {
            out.push(u((**g1).clone(), CoStructure::lneg(g.clone())));
        }
    }
    out
}

/// The full display-equivalence class of an unfocused sequent, in BFS order
/// starting with `s`.
pub fn display_class(s: &Sequent) -> Vec<Sequent> {
    let mut seen: HashSet<Sequent> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        for next in display_moves(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        order.push(cur);
    }
    order
}

/// The class member with the least printed form. Focused sequents are their
/// own representatives.
pub fn canonical(s: &Sequent) -> Sequent {
    if !s.is_unfocused() {
        return s.clone();
    }
    display_class(s)
        .into_iter()
        .map(|m| (m.to_string(), m))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, m)| m)
        .expect("a class contains its seed")
}

/// A display-equivalent sequent in which the leaf labelled `label` is the
/// whole antecedent (inputs) or the whole consequent (outputs).
pub fn display(s: &Sequent, label: &str) -> Result<Sequent, DisplayError> {
    if !s.is_unfocused() {
        return Err(DisplayError::Focused);
    }
    let side = s
        .leaves()
        .into_iter()
        .find(|l| l.label == label)
        .map(|l| l.side)
        .ok_or_else(|| DisplayError::NotFound(label.to_string()))?;
    let hit = |m: &Sequent| match (m, side) {
        (Sequent::Unfocused(Structure::InLeaf(_, x), _), Side::Input) => x == label,
        (Sequent::Unfocused(_, CoStructure::OutLeaf(_, e)), Side::Output) => e == label,
        _ => false,
    };
    let mut seen: HashSet<Sequent> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        if hit(&cur) {
            return Ok(cur);
        }
        for next in display_moves(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Err(DisplayError::NotFound(label.to_string()))
}

fn dual_s(g: &Structure) -> CoStructure {
    match g {
        Structure::InLeaf(a, x) => CoStructure::OutLeaf(a.dual(), x.clone()),
        Structure::SProd(a, b) => CoStructure::par(dual_s(a), dual_s(b)),
        Structure::SRSubStr(a, b) => CoStructure::under(dual_s(a), dual_c(b)),
        Structure::SLSubStr(a, b) => CoStructure::over(dual_c(a), dual_s(b)),
        Structure::SRCoNeg(a) => CoStructure::lneg(dual_c(a)),
        Structure::SLCoNeg(a) => CoStructure::rneg(dual_c(a)),
    }
}

fn dual_c(p: &CoStructure) -> Structure {
    match p {
        CoStructure::OutLeaf(a, e) => Structure::InLeaf(a.dual(), e.clone()),
        CoStructure::SPar(a, b) => Structure::prod(dual_c(a), dual_c(b)),
        CoStructure::SUnder(a, b) => Structure::rsub(dual_c(a), dual_s(b)),
        CoStructure::SOver(a, b) => Structure::lsub(dual_s(a), dual_c(b)),
        CoStructure::SLNeg(a) => Structure::rconeg(dual_s(a)),
        CoStructure::SRNeg(a) => Structure::lconeg(dual_s(a)),
    }
}

/// The order-reversing mirror image: `Γ ⊢ Π` becomes `Π∞ ⊢ Γ∞`.
pub fn dualize(s: &Sequent) -> Sequent {
    match s {
        Sequent::Unfocused(g, p) => Sequent::Unfocused(dual_c(p), dual_s(g)),
        Sequent::FocusedConclusion(g, a) => Sequent::FocusedHypothesis(dual_s(g), a.dual()),
        Sequent::FocusedHypothesis(p, a) => Sequent::FocusedConclusion(dual_c(p), a.dual()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Formula};
    use crate::sequent::parse_sequent;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn leaf(a: &str, x: &str) -> Structure {
        Structure::leaf(f(a), x)
    }

    fn out(a: &str, e: &str) -> CoStructure {
        CoStructure::leaf(f(a), e)
    }

    fn np_tv() -> Sequent {
        Sequent::Unfocused(Structure::prod(leaf("np", "x"), leaf("tv", "y")), out("s", "ν"))
    }

    #[test]
    fn residuation_moves() {
        let g = || leaf("a", "x");
        let d = || leaf("b", "y");
        let p = || out("c", "e");
        let s = Sequent::Unfocused(Structure::prod(g(), d()), p());
        let moves = display_moves(&s);
        assert!(moves.contains(&Sequent::Unfocused(g(), CoStructure::over(d(), p()))));
        assert!(moves.contains(&Sequent::Unfocused(d(), CoStructure::under(p(), g()))));
    }

    #[test]
    fn galois_move() {
        let s = Sequent::Unfocused(leaf("a", "x"), CoStructure::lneg(leaf("b", "y")));
        let moves = display_moves(&s);
        assert!(moves.contains(&Sequent::Unfocused(leaf("b", "y"), CoStructure::rneg(leaf("a", "x")))));
    }

    #[test]
    fn atomic_sequent_only_moves_to_itself() {
        let s = Sequent::Unfocused(leaf("p", "x"), out("p", "e"));
        assert_eq!(display_moves(&s), vec![s.clone()]);
        assert_eq!(display_class(&s), vec![s]);
    }

    #[test]
    fn moves_are_invertible() {
        let seeds = [
            "(a . b) . c |- d",
            "a . (b </ c) |- d o e",
            "RC{a} |- LN{b . c}",
            "(e /> a) . LC{b} |- (c -> d) <- f",
            "a |- RN{b . c}",
        ];
        for src in seeds {
            let s = parse_sequent(src).unwrap();
            for m in display_moves(&s) {
                assert!(display_moves(&m).contains(&s), "{} -> {} has no way back", s, m);
            }
        }
    }

    #[test]
    fn moves_preserve_context_and_readback_laws() {
        let s = parse_sequent("(a . b) . (c </ d) |- (e o f) <- LC{g}").unwrap();
        let ctx = s.context().unwrap();
        for m in display_class(&s) {
            assert_eq!(m.context().unwrap(), ctx);
            assert_eq!(m.labels(), s.labels());
        }
    }

    #[test]
    fn display_examples() {
        let s = np_tv();
        assert_eq!(
            display(&s, "x").unwrap(),
            Sequent::Unfocused(leaf("np", "x"), CoStructure::over(leaf("tv", "y"), out("s", "ν")))
        );
        assert_eq!(display(&s, "ν").unwrap(), s);
        let d = display(&s, "y").unwrap();
        assert_eq!(
            d,
            Sequent::Unfocused(leaf("tv", "y"), CoStructure::under(out("s", "ν"), leaf("np", "x")))
        );
        assert_eq!(d.readback().unwrap(), (f("tv"), f("np \\ s")));
        assert_eq!(display(&s, "q"), Err(DisplayError::NotFound("q".into())));
    }

    #[test]
    fn canonical_is_a_class_invariant() {
        let s = parse_sequent("a . (b . c) |- d o e").unwrap();
        let class = display_class(&s);
        assert!(class.len() > 1 && class.len() < 100);
        let c = canonical(&s);
        for m in &class {
            assert_eq!(canonical(m), c);
        }
        let other = parse_sequent("(a . b) . c |- d o e").unwrap();
        assert_ne!(canonical(&other), c);
    }

    #[test]
    fn dualize_matches_formula_duality() {
        let s = Sequent::Unfocused(Structure::prod(leaf("a", "x"), leaf("b", "y")), out("c", "e"));
        let d = dualize(&s);
        assert_eq!(d.readback().unwrap(), (f("c"), f("b + a")));
        assert_eq!(dualize(&d), s);
        let atomic = Sequent::Unfocused(leaf("p", "x"), out("p", "e"));
        assert_eq!(
            dualize(&atomic),
            Sequent::Unfocused(leaf("p", "e"), out("p", "x"))
        );
    }
}
