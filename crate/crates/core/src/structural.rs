//! Optional structural rules: linear distributivity and the half De Morgan
//! laws, both term-transparent and matched modulo display equivalence.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculus::{RuleApplication, Template};
use crate::sequent::{canonical, display_class, CoStructure, Sequent, Structure};

/// Which structural packages are enabled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RulePackage {
    pub dist: bool,
    pub halfdm: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown rule package `{0}` (expected dist or halfdm)")]
pub struct UnknownPackage(pub String);

impl RulePackage {
    pub const EMPTY: RulePackage = RulePackage { dist: false, halfdm: false };
    pub const DIST: RulePackage = RulePackage { dist: true, halfdm: false };
    pub const ALL: RulePackage = RulePackage { dist: true, halfdm: true };

    pub fn is_empty(&self) -> bool {
        !self.dist && !self.halfdm
    }
}

impl FromStr for RulePackage {
    type Err = UnknownPackage;

    /// Comma-separated flags; the empty string is the empty package.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pkg = RulePackage::EMPTY;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "dist" => pkg.dist = true,
                "halfdm" => pkg.halfdm = true,
                "none" => {}
                other => return Err(UnknownPackage(other.to_string())),
            }
        }
        Ok(pkg)
    }
}

impl fmt::Display for RulePackage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.dist, self.halfdm) {
            (false, false) => write!(f, "none"),
            (true, false) => write!(f, "dist"),
            (false, true) => write!(f, "halfdm"),
            (true, true) => write!(f, "dist,halfdm"),
        }
    }
}

/// Rules that are never part of a package. They exist so that the
/// non-derivability harness can confirm it would notice a collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Probe {
    InverseDist,
    Assoc,
    WeakComm,
}

fn u(g: Structure, p: CoStructure) -> Sequent {
    Sequent::Unfocused(g, p)
}

fn dist_at(g: &Structure, p: &CoStructure, out: &mut Vec<(&'static str, Sequent)>) {
    if let (Structure::SProd(gm, dl), CoStructure::SPar(sg, pi)) = (g, p) {
        let (gm, dl, sg, pi) = (&**gm, &**dl, &**sg, &**pi);
        out.push(("(⦸,/)", u(Structure::lsub(pi.clone(), gm.clone()), CoStructure::over(dl.clone(), sg.clone()))));
        out.push(("(⊘,\\)", u(Structure::rsub(dl.clone(), sg.clone()), CoStructure::under(pi.clone(), gm.clone()))));
        out.push(("(⦸,\\)", u(Structure::lsub(pi.clone(), dl.clone()), CoStructure::under(sg.clone(), gm.clone()))));
        out.push(("(⊘,/)", u(Structure::rsub(gm.clone(), sg.clone()), CoStructure::over(dl.clone(), pi.clone()))));
    }
}

fn halfdm_at(g: &Structure, p: &CoStructure, out: &mut Vec<(&'static str, Sequent)>) {
    match (g, p) {
        (Structure::SRSubStr(x, pi), CoStructure::SLNeg(d)) => {
            out.push(("(⊘,⁰·)", u(Structure::prod((**x).clone(), (**d).clone()), (**pi).clone())));
        }
        (Structure::SRSubStr(x, pi), CoStructure::SRNeg(y)) => {
            out.push(("(⊘,·⁰)", u(Structure::prod((**y).clone(), (**x).clone()), (**pi).clone())));
        }
        (Structure::SLSubStr(pi, x), CoStructure::SRNeg(y)) => {
            out.push(("(⦸,·⁰)", u(Structure::prod((**y).clone(), (**x).clone()), (**pi).clone())));
        }
        (Structure::SLSubStr(pi, x), CoStructure::SLNeg(y)) => {
            out.push(("(⦸,⁰·)", u(Structure::prod((**x).clone(), (**y).clone()), (**pi).clone())));
        }
        _ => {}
    }
    // mirror images under the order-reversing duality, on conegations
    match (g, p) {
        (Structure::SRCoNeg(d), CoStructure::SUnder(x, pi)) => {
            out.push(("(\\,rc)", u((**pi).clone(), CoStructure::par((**x).clone(), (**d).clone()))));
        }
        (Structure::SLCoNeg(y), CoStructure::SUnder(x, pi)) => {
            out.push(("(\\,lc)", u((**pi).clone(), CoStructure::par((**y).clone(), (**x).clone()))));
        }
        (Structure::SLCoNeg(y), CoStructure::SOver(pi, x)) => {
            out.push(("(/,lc)", u((**pi).clone(), CoStructure::par((**y).clone(), (**x).clone()))));
        }
        (Structure::SRCoNeg(y), CoStructure::SOver(pi, x)) => {
            out.push(("(/,rc)", u((**pi).clone(), CoStructure::par((**x).clone(), (**y).clone()))));
        }
        _ => {}
    }
}

fn inverse_dist_at(g: &Structure, p: &CoStructure, out: &mut Vec<(&'static str, Sequent)>) {
    let back = |gm: &Structure, dl: &Structure, sg: &CoStructure, pi: &CoStructure| {
        u(Structure::prod(gm.clone(), dl.clone()), CoStructure::par(sg.clone(), pi.clone()))
    };
    match (g, p) {
        (Structure::SLSubStr(pi, a), CoStructure::SOver(b, sg)) => {
            out.push(("(⦸,/)⁻¹", back(a, b, sg, pi)));
        }
        (Structure::SRSubStr(a, sg), CoStructure::SUnder(pi, b)) => {
            out.push(("(⊘,\\)⁻¹", back(b, a, sg, pi)));
        }
        (Structure::SLSubStr(pi, a), CoStructure::SUnder(sg, b)) => {
            out.push(("(⦸,\\)⁻¹", back(b, a, sg, pi)));
        }
        (Structure::SRSubStr(a, sg), CoStructure::SOver(b, pi)) => {
            out.push(("(⊘,/)⁻¹", back(a, b, sg, pi)));
        }
        _ => {}
    }
}

fn assoc_at(g: &Structure, p: &CoStructure, out: &mut Vec<(&'static str, Sequent)>) {
    if let Structure::SProd(l, r) = g {
        if let Structure::SProd(a, b) = &**l {
            let g2 = Structure::prod((**a).clone(), Structure::prod((**b).clone(), (**r).clone()));
            out.push(("assoc", u(g2, p.clone())));
        }
        if let Structure::SProd(b, c) = &**r {
            let g2 = Structure::prod(Structure::prod((**l).clone(), (**b).clone()), (**c).clone());
            out.push(("assoc", u(g2, p.clone())));
        }
    }
    if let CoStructure::SPar(l, r) = p {
        if let CoStructure::SPar(a, b) = &**l {
            let p2 = CoStructure::par((**a).clone(), CoStructure::par((**b).clone(), (**r).clone()));
            out.push(("assoc", u(g.clone(), p2)));
        }
        if let CoStructure::SPar(b, c) = &**r {
            let p2 = CoStructure::par(CoStructure::par((**l).clone(), (**b).clone()), (**c).clone());
            out.push(("assoc", u(g.clone(), p2)));
        }
    }
}

fn weak_comm_at(g: &Structure, p: &CoStructure, out: &mut Vec<(&'static str, Sequent)>) {
    if let Structure::SProd(l, r) = g {
        if let Structure::SProd(a, b) = &**l {
            let g2 = Structure::prod(Structure::prod((**a).clone(), (**r).clone()), (**b).clone());
            out.push(("comm", u(g2, p.clone())));
        }
        if let Structure::SProd(b, c) = &**r {
            let g2 = Structure::prod((**b).clone(), Structure::prod((**l).clone(), (**c).clone()));
            out.push(("comm", u(g2, p.clone())));
        }
    }
    if let CoStructure::SPar(l, r) = p {
        if let CoStructure::SPar(a, b) = &**l {
            let p2 = CoStructure::par(CoStructure::par((**a).clone(), (**r).clone()), (**b).clone());
            out.push(("comm", u(g.clone(), p2)));
        }
        if let CoStructure::SPar(b, c) = &**r {
            let p2 = CoStructure::par((**b).clone(), CoStructure::par((**l).clone(), (**c).clone()));
            out.push(("comm", u(g.clone(), p2)));
        }
    }
}

/// Backward steps whose conclusion is exactly `s` (no display moves).
pub fn expansions_at(s: &Sequent, pkg: RulePackage, probes: &[Probe]) -> Vec<(&'static str, Sequent)> {
    let mut out = Vec::new();
    let (g, p) = match s {
        Sequent::Unfocused(g, p) => (g, p),
        _ => return out,
    };
    if pkg.dist {
        dist_at(g, p, &mut out);
    }
    if pkg.halfdm {
        halfdm_at(g, p, &mut out);
    }
    for probe in probes {
        match probe {
            Probe::InverseDist => inverse_dist_at(g, p, &mut out),
            Probe::Assoc => assoc_at(g, p, &mut out),
            Probe::WeakComm => weak_comm_at(g, p, &mut out),
        }
    }
    out
}

/// Structural applications available anywhere in the display class of `s`.
/// Each application's conclusion is the class member it matched.
pub fn structural_expansions(s: &Sequent, pkg: RulePackage) -> Vec<RuleApplication> {
    if !s.is_unfocused() || pkg.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for member in display_class(s) {
        for (rule, premise) in expansions_at(&member, pkg, &[]) {
            out.push(RuleApplication {
                rule,
                premises: vec![premise],
                conclusion: member.clone(),
                template: Template::premise(0),
            });
        }
    }
    out
}

/// Outcome of a bounded reachability question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    Yes,
    No,
    Capped,
}

/// Can `premise` be reached from `conclusion` by backward structural steps
/// and display moves? `No` means the whole finite space was explored.
pub fn reachable(conclusion: &Sequent, premise: &Sequent, pkg: RulePackage, probes: &[Probe], cap: usize) -> Reach {
    let target = canonical(premise).to_string();
    let start = canonical(conclusion);
    if start.to_string() == target {
        return Reach::Yes;
    }
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(start.to_string());
    let mut queue = VecDeque::from([start]);
    while let Some(rep) = queue.pop_front() {
        for member in display_class(&rep) {
            for (_, next) in expansions_at(&member, pkg, probes) {
                let c = canonical(&next);
                let key = c.to_string();
                if key == target {
                    return Reach::Yes;
                }
                if seen.insert(key) {
                    if seen.len() > cap {
                        return Reach::Capped;
                    }
                    queue.push_back(c);
                }
            }
        }
    }
    Reach::No
}

/// The four distributivity postulates over distinct atoms, as goals.
pub fn distributivity_instances() -> Vec<&'static str> {
    vec!["(a + b) * c |- a + (b * c)", "(a + b) * c |- (a * c) + b", "a * (b + c) |- (a * b) + c", "a * (b + c) |- b + (a * c)"]
}

/// Counts of structurally reachable classes, for diagnostics.
pub fn closure_size(s: &Sequent, pkg: RulePackage, cap: usize) -> (usize, bool) {
    let mut index: HashMap<String, ()> = HashMap::new();
    let start = canonical(s);
    index.insert(start.to_string(), ());
    let mut queue = VecDeque::from([start]);
    while let Some(rep) = queue.pop_front() {
        for member in display_class(&rep) {
            for (_, next) in expansions_at(&member, pkg, &[]) {
                let c = canonical(&next);
                if index.insert(c.to_string(), ()).is_none() {
                    if index.len() > cap {
                        return (index.len(), true);
                    }
                    queue.push_back(c);
                }
            }
        }
    }
    (index.len(), false)
}
