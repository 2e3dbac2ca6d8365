//! An unfocused prover used as an oracle for the focused one.
//!
//! It has the same connective rules read as an ordinary display calculus.
//! Each formula is either rewritten into its structural counterpart or
//! decomposed by a two-sided monotonicity rule on unfocused premises. There
//! is no stoup, so nothing forces a decomposition to continue into the
//! subformulas.

use std::collections::{HashMap, HashSet};

use crate::formula::Formula;
use crate::sequent::names::Fresh;
use crate::sequent::{canonical, display_class, CoStructure, Replacement, Sequent, Side, Structure};
use crate::structural::{expansions_at, RulePackage};

#[derive(Clone, Copy, Debug)]
pub struct BruteLimits {
    /// Total number of display classes the prover may examine.
    pub budget: usize,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits { budget: 200_000 }
    }
}

/// `Some(true)` or `Some(false)` when settled, `None` when the budget ran out.
pub fn brute_derivable(goal: &Sequent, pkg: RulePackage, lim: BruteLimits) -> Option<bool> {
    if !goal.is_unfocused() {
        return None;
    }
    let mut b = Brute {
        pkg,
        budget: lim.budget,
        memo: HashMap::new(),
        active: HashSet::new(),
    };
    b.prove(goal).ok()
}

struct Exhausted;

struct Brute {
    pkg: RulePackage,
    budget: usize,
    memo: HashMap<String, bool>,
    active: HashSet<String>,
}

fn rewrite(f: &Formula, label: &str, side: Side, fresh: &mut Fresh) -> Option<Replacement> {
    let inl = |a: &Formula, x: String| Structure::leaf(a.clone(), x);
    let outl = |a: &Formula, e: String| CoStructure::leaf(a.clone(), e);
    let _ = label;
    Some(match (side, f) {
        (Side::Input, Formula::Tensor(a, b)) => Replacement::Input(Structure::prod(inl(a, fresh.var()), inl(b, fresh.var()))),
        (Side::Input, Formula::RSub(a, b)) => Replacement::Input(Structure::rsub(inl(a, fresh.var()), outl(b, fresh.covar()))),
        (Side::Input, Formula::LSub(b, a)) => Replacement::Input(Structure::lsub(outl(b, fresh.covar()), inl(a, fresh.var()))),
        (Side::Input, Formula::RCoNeg(a)) => Replacement::Input(Structure::rconeg(outl(a, fresh.covar()))),
        (Side::Input, Formula::LCoNeg(a)) => Replacement::Input(Structure::lconeg(outl(a, fresh.covar()))),
        (Side::Output, Formula::Par(a, b)) => Replacement::Output(CoStructure::par(outl(b, fresh.covar()), outl(a, fresh.covar()))),
        (Side::Output, Formula::Over(a, b)) => Replacement::Output(CoStructure::over(inl(b, fresh.var()), outl(a, fresh.covar()))),
        (Side::Output, Formula::Under(b, a)) => Replacement::Output(CoStructure::under(outl(a, fresh.covar()), inl(b, fresh.var()))),
        (Side::Output, Formula::LNeg(a)) => Replacement::Output(CoStructure::lneg(inl(a, fresh.var()))),
        (Side::Output, Formula::RNeg(a)) => Replacement::Output(CoStructure::rneg(inl(a, fresh.var()))),
        _ => return None,
    })
}

/// Two-sided rules on a displayed formula, each yielding its premises.
fn monotonicity(s: &Sequent) -> Vec<Vec<Sequent>> {
    let (g, p) = match s {
        Sequent::Unfocused(g, p) => (g, p),
        _ => return Vec::new(),
    };
    let mut fresh = Fresh::new(s.labels());
    let (x, e) = (fresh.var(), fresh.covar());
    let hyp = |a: &Formula, p: &CoStructure| Sequent::Unfocused(Structure::leaf(a.clone(), x.clone()), p.clone());
    let con = |g: &Structure, a: &Formula| Sequent::Unfocused(g.clone(), CoStructure::leaf(a.clone(), e.clone()));
    let mut out = Vec::new();
    if let CoStructure::OutLeaf(f, _) = p {
        match (f, g) {
            (Formula::Tensor(a, b), Structure::SProd(g1, g2)) => out.push(vec![con(g1, a), con(g2, b)]),
            (Formula::RSub(a, b), Structure::SRSubStr(g1, sg)) => out.push(vec![con(g1, a), hyp(b, sg)]),
            (Formula::LSub(b, a), Structure::SLSubStr(sg, g1)) => out.push(vec![hyp(b, sg), con(g1, a)]),
            (Formula::RCoNeg(a), Structure::SRCoNeg(sg)) | (Formula::LCoNeg(a), Structure::SLCoNeg(sg)) => {
                out.push(vec![hyp(a, sg)])
            }
            _ => {}
        }
    }
    if let Structure::InLeaf(f, _) = g {
        match (f, p) {
            (Formula::Par(a, b), CoStructure::SPar(sg, p1)) => out.push(vec![hyp(b, sg), hyp(a, p1)]),
            (Formula::Over(a, b), CoStructure::SOver(d, p1)) => out.push(vec![con(d, b), hyp(a, p1)]),
            (Formula::Under(b, a), CoStructure::SUnder(p1, d)) => out.push(vec![hyp(a, p1), con(d, b)]),
            (Formula::LNeg(a), CoStructure::SLNeg(d)) | (Formula::RNeg(a), CoStructure::SRNeg(d)) => out.push(vec![con(d, a)]),
            _ => {}
        }
    }
    out
}

fn is_axiom(s: &Sequent) -> bool {
    matches!(s, Sequent::Unfocused(Structure::InLeaf(Formula::Atom(p), _), CoStructure::OutLeaf(Formula::Atom(q), _)) if p == q)
}

impl Brute {
    fn prove(&mut self, s: &Sequent) -> Result<bool, Exhausted> {
        // rewrites are invertible, so trying the first one is enough
        for leaf in s.leaves() {
            let mut fresh = Fresh::new(s.labels());
            if let Some(r) = rewrite(&leaf.formula, &leaf.label, leaf.side, &mut fresh) {
                return self.prove(&s.replace_leaf(&leaf.label, &r));
            }
        }
        let root = canonical(s);
        let key = root.to_string();
        if let Some(&b) = self.memo.get(&key) {
            return Ok(b);
        }
        if !self.active.insert(key.clone()) {
            return Ok(false);
        }
        let r = self.saturate(&root);
        self.active.remove(&key);
        let r = r?;
        self.memo.insert(key, r);
        Ok(r)
    }

    fn saturate(&mut self, root: &Sequent) -> Result<bool, Exhausted> {
        let mut classes = vec![root.clone()];
        let mut seen: HashSet<String> = HashSet::from([root.to_string()]);
        let mut i = 0;
        while i < classes.len() {
            if self.budget == 0 {
                return Err(Exhausted);
            }
            self.budget -= 1;
            let members = display_class(&classes[i]);
            for m in &members {
                if is_axiom(m) {
                    return Ok(true);
                }
            }
            for m in &members {
                for premises in monotonicity(m) {
                    let mut all = true;
                    for p in &premises {
                        if !self.prove(p)? {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        return Ok(true);
                    }
                }
            }
            for m in &members {
                for (_, p) in expansions_at(m, self.pkg, &[]) {
                    let c = canonical(&p);
                    if seen.insert(c.to_string()) {
                        classes.push(c);
                    }
                }
            }
            i += 1;
        }
        Ok(false)
    }
}
