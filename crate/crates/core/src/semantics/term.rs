use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::SemanticsError;
use crate::formula::ParseError;
use crate::term_syntax::{fresh_name, is_constant, parse_surface, Pattern, Surface};

/// Reduction steps allowed before normalization gives up.
pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleTerm {
    Var(String),
    Const(String),
    App(Box<SimpleTerm>, Box<SimpleTerm>),
    Lam(String, Box<SimpleTerm>),
    Pair(Box<SimpleTerm>, Box<SimpleTerm>),
    Proj(u8, Box<SimpleTerm>),
    And(Box<SimpleTerm>, Box<SimpleTerm>),
}

use SimpleTerm as S;

impl SimpleTerm {
    pub fn var(x: impl Into<String>) -> Self {
        S::Var(x.into())
    }

    pub fn constant(c: impl Into<String>) -> Self {
        S::Const(c.into())
    }

    pub fn app(a: SimpleTerm, b: SimpleTerm) -> Self {
        S::App(Box::new(a), Box::new(b))
    }

    pub fn lam(x: impl Into<String>, b: SimpleTerm) -> Self {
        S::Lam(x.into(), Box::new(b))
    }

    pub fn pair(a: SimpleTerm, b: SimpleTerm) -> Self {
        S::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj(i: u8, a: SimpleTerm) -> Self {
        S::Proj(i, Box::new(a))
    }

    pub fn and(a: SimpleTerm, b: SimpleTerm) -> Self {
        S::And(Box::new(a), Box::new(b))
    }

    /// Parse a meaning term. Free identifiers starting with an uppercase
    /// letter are constants; any other free identifier stays a variable.
    pub fn parse(src: &str) -> Result<SimpleTerm, ParseError> {
        let surface = parse_surface(src)?;
        let mut names = Vec::new();
        surface.all_names(&mut names);
        let mut taken: BTreeSet<String> = names.into_iter().collect();
        Ok(from_surface(&surface, &mut HashMap::new(), &mut taken))
    }

    pub fn size(&self) -> usize {
        match self {
            S::Var(_) | S::Const(_) => 1,
            S::App(a, b) | S::Pair(a, b) | S::And(a, b) => 1 + a.size() + b.size(),
            S::Lam(_, b) | S::Proj(_, b) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            S::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            S::Const(_) => {}
            S::App(a, b) | S::Pair(a, b) | S::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            S::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            S::Proj(_, b) => b.collect_free(bound, out),
        }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let S::Const(c) = t {
                out.insert(c.clone());
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&SimpleTerm)) {
        f(self);
        match self {
            S::Var(_) | S::Const(_) => {}
            S::App(a, b) | S::Pair(a, b) | S::And(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            S::Lam(_, b) | S::Proj(_, b) => b.walk(f),
        }
    }

    /// Does the term contain pairs or projections?
    pub fn has_products(&self) -> bool {
        let mut found = false;
        self.walk(&mut |t| found |= matches!(t, S::Pair(..) | S::Proj(..)));
        found
    }

    fn all_names(&self, out: &mut BTreeSet<String>) {
        self.walk(&mut |t| match t {
            S::Var(x) | S::Lam(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
    }

    pub fn subst(&self, x: &str, n: &SimpleTerm) -> SimpleTerm {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), n.clone());
        self.subst_many(&m)
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn subst_many(&self, sub: &BTreeMap<String, SimpleTerm>) -> SimpleTerm {
        let mut avoid = BTreeSet::new();
        for (k, v) in sub {
            avoid.insert(k.clone());
            avoid.extend(v.free_vars());
        }
        self.all_names(&mut avoid);
        self.subst_rec(sub, &mut avoid)
    }

    fn subst_rec(&self, sub: &BTreeMap<String, SimpleTerm>, avoid: &mut BTreeSet<String>) -> SimpleTerm {
        match self {
            S::Var(x) => sub.get(x).cloned().unwrap_or_else(|| self.clone()),
            S::Const(_) => self.clone(),
            S::App(a, b) => S::app(a.subst_rec(sub, avoid), b.subst_rec(sub, avoid)),
            S::Pair(a, b) => S::pair(a.subst_rec(sub, avoid), b.subst_rec(sub, avoid)),
            S::And(a, b) => S::and(a.subst_rec(sub, avoid), b.subst_rec(sub, avoid)),
            S::Proj(i, b) => S::proj(*i, b.subst_rec(sub, avoid)),
            S::Lam(x, b) => {
                let mut inner = sub.clone();
                inner.remove(x);
                if inner.is_empty() {
                    return self.clone();
                }
                let captures = inner.values().any(|v| v.free_vars().contains(x));
                if captures {
                    let y = fresh_name(x, |c| avoid.contains(c) || is_reserved(c));
                    avoid.insert(y.clone());
                    inner.insert(x.clone(), S::var(y.clone()));
                    S::lam(y, b.subst_rec(&inner, avoid))
                } else {
                    S::lam(x.clone(), b.subst_rec(&inner, avoid))
                }
            }
        }
    }

    fn step(&self) -> Option<SimpleTerm> {
        match self {
            S::App(f, a) => {
                if let S::Lam(x, body) = &**f {
                    return Some(body.subst(x, a));
                }
                if let Some(f2) = f.step() {
                    return Some(S::App(Box::new(f2), a.clone()));
                }
                a.step().map(|a2| S::App(f.clone(), Box::new(a2)))
            }
            S::Proj(i, p) => {
                if let S::Pair(a, b) = &**p {
                    return Some(if *i == 1 { (**a).clone() } else { (**b).clone() });
                }
                p.step().map(|p2| S::proj(*i, p2))
            }
            S::Lam(x, b) => b.step().map(|b2| S::lam(x.clone(), b2)),
            S::Pair(a, b) | S::And(a, b) => {
                let rebuild = |l, r| match self {
                    S::Pair(..) => S::pair(l, r),
                    _ => S::and(l, r),
                };
                if let Some(a2) = a.step() {
                    return Some(rebuild(a2, (**b).clone()));
                }
                b.step().map(|b2| rebuild((**a).clone(), b2))
            }
            S::Var(_) | S::Const(_) => None,
        }
    }

    /// β and projection reduction to normal form, leftmost outermost first.
    pub fn normalize(&self, fuel: usize) -> Result<SimpleTerm, SemanticsError> {
        let mut cur = self.clone();
        for _ in 0..fuel {
            match cur.step() {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
        Err(SemanticsError::Diverged)
    }

    pub fn is_normal(&self) -> bool {
        self.step().is_none()
    }

    /// Printed form with bound variables numbered by binding depth.
    pub fn alpha_key(&self) -> String {
        fn go(t: &SimpleTerm, env: &mut Vec<String>, out: &mut String) {
            match t {
                S::Var(x) => match env.iter().rposition(|b| b == x) {
                    Some(i) => out.push_str(&format!("#{}", i)),
                    None => out.push_str(x),
                },
                S::Const(c) => {
                    out.push('!');
                    out.push_str(c);
                }
                S::App(a, b) | S::Pair(a, b) | S::And(a, b) => {
                    out.push(match t {
                        S::App(..) => '@',
                        S::Pair(..) => ',',
                        _ => '&',
                    });
                    out.push('(');
                    go(a, env, out);
                    out.push(' ');
                    go(b, env, out);
                    out.push(')');
                }
                S::Lam(x, b) => {
                    out.push_str("\\(");
                    env.push(x.clone());
                    go(b, env, out);
                    env.pop();
                    out.push(')');
                }
                S::Proj(i, b) => {
                    out.push_str(&format!("p{}(", i));
                    go(b, env, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn alpha_eq(&self, other: &SimpleTerm) -> bool {
        self.alpha_key() == other.alpha_key()
    }

    /// Rename a free variable (used to compare readings whose goal
    /// variables were named differently).
    pub fn rename_free(&self, from: &str, to: &str) -> SimpleTerm {
        self.subst(from, &S::var(to))
    }

    /// ASCII form in the input syntax; it parses back to an α-equal term.
    pub fn to_ascii(&self) -> String {
        match self {
            S::Var(x) | S::Const(x) => x.clone(),
            S::App(a, b) => format!("({} {})", a.to_ascii(), b.to_ascii()),
            S::Lam(x, b) => format!("lam {}. {}", x, b.to_ascii()),
            S::Pair(a, b) => format!("<{}, {}>", a.to_ascii(), b.to_ascii()),
            S::Proj(i, b) => format!("(p{} {})", i, b.to_ascii()),
            S::And(a, b) => format!("({} /\\ {})", a.to_ascii(), b.to_ascii()),
        }
    }
}

impl fmt::Display for SimpleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S::Var(x) | S::Const(x) => write!(f, "{}", x),
            S::App(a, b) => write!(f, "({} {})", a, b),
            S::Lam(x, b) => {
                let body = b.to_string();
                if body.starts_with('(') {
                    write!(f, "λ{}{}", x, body)
                } else {
                    write!(f, "λ{}.{}", x, body)
                }
            }
            S::Pair(a, b) => write!(f, "⟨{},{}⟩", a, b),
            S::Proj(i, b) => write!(f, "π{}({})", i, b),
            S::And(a, b) => write!(f, "({} ∧ {})", a, b),
        }
    }
}

/// `p1` and `p2` read back as projections, so binders must avoid them.
fn is_reserved(x: &str) -> bool {
    x == "p1" || x == "p2"
}

/// Convert surface syntax. `env` maps pattern-bound names to the
/// projections that replace them.
fn from_surface(s: &Surface, env: &mut HashMap<String, Vec<SimpleTerm>>, taken: &mut BTreeSet<String>) -> SimpleTerm {
    match s {
        Surface::Var(x) => match env.get(x).and_then(|v| v.last()) {
            Some(t) => t.clone(),
            None if is_constant(x) => S::constant(x.clone()),
            None => S::var(x.clone()),
        },
        Surface::App(a, b) => S::app(from_surface(a, env, taken), from_surface(b, env, taken)),
        Surface::Pair(a, b) => S::pair(from_surface(a, env, taken), from_surface(b, env, taken)),
        Surface::And(a, b) => S::and(from_surface(a, env, taken), from_surface(b, env, taken)),
        Surface::Proj(i, b) => S::proj(*i, from_surface(b, env, taken)),
        Surface::Lam(Pattern::Var(x), b) => {
            env.entry(x.clone()).or_default().push(S::var(x.clone()));
            let body = from_surface(b, env, taken);
            env.get_mut(x).map(Vec::pop);
            S::lam(x.clone(), body)
        }
        Surface::Lam(p, b) => {
            let z = fresh_name("p", |c| taken.contains(c) || is_reserved(c));
            taken.insert(z.clone());
            let mut bound = Vec::new();
            bind_pattern(p, S::var(z.clone()), &mut bound);
            for (x, t) in &bound {
                env.entry(x.clone()).or_default().push(t.clone());
            }
            let body = from_surface(b, env, taken);
            for (x, _) in &bound {
                env.get_mut(x).map(Vec::pop);
            }
            S::lam(z, body)
        }
        Surface::Case(scrut, x, y, b) => {
            let n = from_surface(scrut, env, taken);
            env.entry(x.clone()).or_default().push(S::proj(1, n.clone()));
            env.entry(y.clone()).or_default().push(S::proj(2, n));
            let body = from_surface(b, env, taken);
            env.get_mut(y).map(Vec::pop);
            env.get_mut(x).map(Vec::pop);
            body
        }
    }
}

fn bind_pattern(p: &Pattern, at: SimpleTerm, out: &mut Vec<(String, SimpleTerm)>) {
    match p {
        Pattern::Var(x) => out.push((x.clone(), at)),
        Pattern::Pair(a, b) => {
            bind_pattern(a, S::proj(1, at.clone()), out);
            bind_pattern(b, S::proj(2, at), out);
        }
    }
}
