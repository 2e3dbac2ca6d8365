//! Focused backward proof search with term extraction.
//!
//! Unfocused sequents are first unfolded by the calculus' invertible rules.
//! The remaining sequent is explored modulo display equivalence and the
//! enabled structural rules, and every decision available in that closure is
//! tried. Results are memoized on canonical display representatives, and the
//! search keeps track of whether any resource cap was hit so that a failed
//! search can be reported as a definite no.

mod brute;

pub use brute::{brute_derivable, BruteLimits};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::calculus::{Calculus, Polarized, RuleApplication};
use crate::lp::{typecheck, LinTerm, TypeError};
use crate::sequent::{canonical, display_class, Sequent};
use crate::structural::{expansions_at, RulePackage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Longest chain of logical rules on any branch.
    pub max_depth: usize,
    /// Derivations to enumerate before stopping.
    pub max_derivations: usize,
    /// Display classes explored by one structural closure.
    pub closure_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 64,
            max_derivations: 16,
            closure_cap: 20_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("the goal must be an unfocused sequent")]
    FocusedGoal,
    #[error("search limits were reached before a derivation was found")]
    DepthExceeded,
}

/// A derivation tree. Every node carries the term of its sequent.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rule: String,
    pub sequent: Sequent,
    pub term: LinTerm,
    pub children: Vec<Arc<Derivation>>,
}

impl Derivation {
    /// Nodes in preorder.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let n = out[i];
            out.extend(n.children.iter().map(|c| &**c));
            i += 1;
        }
        out
    }

    pub fn size(&self) -> usize {
        self.nodes().len()
    }

    /// Rule names in preorder.
    pub fn rules(&self) -> Vec<&str> {
        self.nodes().iter().map(|n| n.rule.as_str()).collect()
    }

    /// Typecheck the term at every node against its sequent.
    pub fn check<C: Calculus + ?Sized>(&self, calc: &C) -> Result<(), (String, TypeError)> {
        for n in self.nodes() {
            let ctx = calc.context(&n.sequent).map_err(|e| (n.sequent.to_string(), e))?;
            typecheck(&ctx, &n.term, Some(&calc.sequent_type(&n.sequent)))
                .map_err(|e| (format!("{} at {}", n.term, n.sequent), e))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("derivations serialize")
    }

    fn render(&self, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:indent$}{}  {}  :: {}", "", self.rule, self.sequent, self.term, indent = depth * 2)?;
        for c in &self.children {
            c.render(depth + 1, f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(0, f)
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Derivation", 4)?;
        st.serialize_field("rule", &self.rule)?;
        st.serialize_field("sequent", &self.sequent.to_string())?;
        st.serialize_field("term", &self.term.to_string())?;
        let kids: Vec<&Derivation> = self.children.iter().map(|c| &**c).collect();
        st.serialize_field("children", &kids)?;
        st.end()
    }
}

/// Three-valued derivability.
#[derive(Clone, Debug)]
pub enum Verdict {
    Yes(Derivation),
    No,
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

/// Everything a search found, plus whether the space was fully explored.
#[derive(Clone, Debug, Default)]
pub struct SearchResult {
    pub derivations: Vec<Derivation>,
    pub capped: bool,
}

#[derive(Clone, Debug, Default)]
struct Outcome {
    derivs: Vec<Arc<Derivation>>,
    capped: bool,
}

impl Outcome {
    fn capped() -> Outcome {
        Outcome {
            derivs: Vec::new(),
            capped: true,
        }
    }
}

struct ClassNode {
    rep: Sequent,
    /// Parent class, the member the rule matched, rule name, premise.
    via: Option<(usize, Sequent, &'static str, Sequent)>,
}

fn dp(s: &Sequent, child: Arc<Derivation>) -> Arc<Derivation> {
    if &child.sequent == s {
        return child;
    }
    Arc::new(Derivation {
        rule: "dp".into(),
        sequent: s.clone(),
        term: child.term.clone(),
        children: vec![child],
    })
}

struct Engine<'c, C: ?Sized> {
    calc: &'c C,
    pkg: RulePackage,
    lim: SearchLimits,
    want: usize,
    unfocused_memo: HashMap<String, (Outcome, usize)>,
    focused_memo: HashMap<String, (Outcome, usize)>,
    in_progress: HashSet<String>,
}

impl<C: Calculus + ?Sized> Engine<'_, C> {
    fn sequent(&mut self, s: &Sequent, depth: usize) -> Outcome {
        if s.is_unfocused() {
            self.unfocused(s, depth)
        } else {
            self.focused(s, depth)
        }
    }

    /// Combine premise outcomes into derivations of the conclusion.
    fn assemble(&mut self, app: &RuleApplication, depth: usize) -> Outcome {
        let mut subs = Vec::with_capacity(app.premises.len());
        let mut capped = false;
        for p in &app.premises {
            let o = self.sequent(p, depth + 1);
            if o.derivs.is_empty() {
                return Outcome {
                    derivs: Vec::new(),
                    capped: o.capped,
                };
            }
            capped |= o.capped;
            subs.push(o.derivs);
        }
        let mut derivs = Vec::new();
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; subs.len()];
        'outer: loop {
            let children: Vec<Arc<Derivation>> = idx.iter().zip(&subs).map(|(&i, ds)| ds[i].clone()).collect();
            let terms: Vec<LinTerm> = children.iter().map(|c| c.term.clone()).collect();
            let term = app.term(&terms);
            if seen.insert(term.alpha_key()) {
                derivs.push(Arc::new(Derivation {
                    rule: app.rule.to_string(),
                    sequent: app.conclusion.clone(),
                    term,
                    children,
                }));
                if derivs.len() >= self.want {
                    break;
                }
            }
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < subs[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        Outcome { derivs, capped }
    }

    fn focused(&mut self, s: &Sequent, depth: usize) -> Outcome {
        if depth > self.lim.max_depth {
            return Outcome::capped();
        }
        let key = s.to_string();
        if let Some((o, d)) = self.focused_memo.get(&key) {
            if !o.capped || *d <= depth {
                return o.clone();
            }
        }
        let mut out = Outcome::default();
        let mut seen = HashSet::new();
        for app in self.calc.focused(s) {
            let o = self.assemble(&app, depth);
            out.capped |= o.capped;
            for d in o.derivs {
                if out.derivs.len() < self.want && seen.insert(d.term.alpha_key()) {
                    out.derivs.push(d);
                }
            }
            if out.derivs.len() >= self.want {
                break;
            }
        }
        self.focused_memo.insert(key, (out.clone(), depth));
        out
    }

    fn unfocused(&mut self, s: &Sequent, depth: usize) -> Outcome {
        if depth > self.lim.max_depth {
            return Outcome::capped();
        }
        if let Some(app) = self.calc.invertible(s) {
            return self.assemble(&app, depth);
        }
        let root = canonical(s);
        let key = root.to_string();
        let cached = match self.unfocused_memo.get(&key) {
            Some((o, d)) if !o.capped || *d <= depth => Some(o.clone()),
            _ => None,
        };
        let out = match cached {
            Some(o) => o,
            None => {
                if !self.in_progress.insert(key.clone()) {
                    return Outcome::capped();
                }
                let o = self.saturate(&root, depth);
                self.in_progress.remove(&key);
                self.unfocused_memo.insert(key, (o.clone(), depth));
                o
            }
        };
        Outcome {
            derivs: out.derivs.into_iter().map(|d| dp(s, d)).collect(),
            capped: out.capped,
        }
    }

    /// Explore the structural closure of `root` and try every decision.
    fn saturate(&mut self, root: &Sequent, depth: usize) -> Outcome {
        let mut classes = vec![ClassNode { rep: root.clone(), via: None }];
        let mut capped = false;
        if !self.pkg.is_empty() {
            let mut index: HashSet<String> = HashSet::from([root.to_string()]);
            let mut i = 0;
            'closure: while i < classes.len() {
                for member in display_class(&classes[i].rep) {
                    for (rule, premise) in expansions_at(&member, self.pkg, &[]) {
                        let c = canonical(&premise);
                        if index.insert(c.to_string()) {
                            if classes.len() >= self.lim.closure_cap {
                                capped = true;
                                break 'closure;
                            }
                            classes.push(ClassNode {
                                rep: c,
                                via: Some((i, member.clone(), rule, premise)),
                            });
                        }
                    }
                }
                i += 1;
            }
        }

        let mut out = Outcome { derivs: Vec::new(), capped };
        let mut seen = HashSet::new();
        for k in 0..classes.len() {
            for member in display_class(&classes[k].rep) {
                for app in self.calc.decisions(&member) {
                    let o = self.assemble(&app, depth);
                    out.capped |= o.capped;
                    for d in o.derivs {
                        if seen.insert(d.term.alpha_key()) {
                            out.derivs.push(lift(&classes, k, d));
                            if out.derivs.len() >= self.want {
                                return out;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Re-root a derivation found at some member of class `k` at the closure's
/// root, inserting display and structural steps along the way.
fn lift(classes: &[ClassNode], mut k: usize, d: Arc<Derivation>) -> Arc<Derivation> {
    let mut cur = d;
    loop {
        cur = dp(&classes[k].rep, cur);
        match &classes[k].via {
            None => return cur,
            Some((parent, member, rule, premise)) => {
                cur = dp(premise, cur);
                cur = Arc::new(Derivation {
                    rule: rule.to_string(),
                    sequent: member.clone(),
                    term: cur.term.clone(),
                    children: vec![cur],
                });
                k = *parent;
            }
        }
    }
}

fn run<C: Calculus + ?Sized>(
    calc: &C,
    goal: &Sequent,
    pkg: RulePackage,
    lim: SearchLimits,
    want: usize,
) -> Result<SearchResult, SearchError> {
    if !goal.is_unfocused() {
        return Err(SearchError::FocusedGoal);
    }
    let mut engine = Engine {
        calc,
        pkg,
        lim,
        want: want.max(1),
        unfocused_memo: HashMap::new(),
        focused_memo: HashMap::new(),
        in_progress: HashSet::new(),
    };
    let o = engine.unfocused(goal, 0);
    Ok(SearchResult {
        derivations: o
            .derivs
            .iter()
            .map(|d| {
                // keep the tree, but print the root term with binders apart
                let mut root = (**d).clone();
                root.term = root.term.barendregt();
                root
            })
            .collect(),
        capped: o.capped,
    })
}

/// Enumerate derivations with any calculus, up to `lim.max_derivations`.
pub fn search_with<C: Calculus + ?Sized>(
    calc: &C,
    goal: &Sequent,
    pkg: RulePackage,
    lim: SearchLimits,
) -> Result<SearchResult, SearchError> {
    run(calc, goal, pkg, lim, lim.max_derivations)
}

pub fn derivable_with<C: Calculus + ?Sized>(calc: &C, goal: &Sequent, pkg: RulePackage, lim: SearchLimits) -> Verdict {
    match run(calc, goal, pkg, lim, 1) {
        Ok(mut r) if !r.derivations.is_empty() => Verdict::Yes(r.derivations.swap_remove(0)),
        Ok(r) if !r.capped => Verdict::No,
        _ => Verdict::Unknown,
    }
}

/// One derivation in the polarized calculus, if any exists within limits.
pub fn prove(goal: &Sequent, pkg: RulePackage, lim: SearchLimits) -> Result<Option<Derivation>, SearchError> {
    let mut r = run(&Polarized, goal, pkg, lim, 1)?;
    if let Some(d) = r.derivations.pop() {
        return Ok(Some(d));
    }
    if r.capped {
        return Err(SearchError::DepthExceeded);
    }
    Ok(None)
}

pub fn derivable(goal: &Sequent, pkg: RulePackage, lim: SearchLimits) -> Verdict {
    derivable_with(&Polarized, goal, pkg, lim)
}

/// Up to `lim.max_derivations` derivations with pairwise distinct terms.
pub fn prove_all(goal: &Sequent, pkg: RulePackage, lim: SearchLimits) -> Vec<Derivation> {
    search_with(&Polarized, goal, pkg, lim).map(|r| r.derivations).unwrap_or_default()
}
