use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::LinType;
use crate::formula::ParseError;
use crate::term_syntax::{fresh_name, parse_surface, Pattern, Surface};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LinTerm {
    Var(String),
    App(Box<LinTerm>, Box<LinTerm>),
    Lam(String, Option<LinType>, Box<LinTerm>),
    Pair(Box<LinTerm>, Box<LinTerm>),
    /// `case N of ⟨x,y⟩. M`
    Case(Box<LinTerm>, String, String, Box<LinTerm>),
}

impl LinTerm {
    pub fn var(x: impl Into<String>) -> Self {
        LinTerm::Var(x.into())
    }

    pub fn app(m: LinTerm, n: LinTerm) -> Self {
        LinTerm::App(Box::new(m), Box::new(n))
    }

    pub fn lam(x: impl Into<String>, ty: Option<LinType>, body: LinTerm) -> Self {
        LinTerm::Lam(x.into(), ty, Box::new(body))
    }

    pub fn pair(m: LinTerm, n: LinTerm) -> Self {
        LinTerm::Pair(Box::new(m), Box::new(n))
    }

    pub fn case(n: LinTerm, x: impl Into<String>, y: impl Into<String>, body: LinTerm) -> Self {
        LinTerm::Case(Box::new(n), x.into(), y.into(), Box::new(body))
    }

    pub fn size(&self) -> usize {
        match self {
            LinTerm::Var(_) => 1,
            LinTerm::App(a, b) | LinTerm::Pair(a, b) => 1 + a.size() + b.size(),
            LinTerm::Lam(_, _, b) => 1 + b.size(),
            LinTerm::Case(n, _, _, m) => 1 + n.size() + m.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            LinTerm::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            LinTerm::App(a, b) | LinTerm::Pair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            LinTerm::Lam(x, _, b) => {
                bound.push(x);
                b.collect_free(bound, out);
                bound.pop();
            }
            LinTerm::Case(n, x, y, m) => {
                n.collect_free(bound, out);
                bound.push(x);
                bound.push(y);
                m.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            LinTerm::Var(y) => x == y,
            LinTerm::App(a, b) | LinTerm::Pair(a, b) => a.occurs_free(x) || b.occurs_free(x),
            LinTerm::Lam(y, _, b) => y != x && b.occurs_free(x),
            LinTerm::Case(n, y, z, m) => n.occurs_free(x) || (y != x && z != x && m.occurs_free(x)),
        }
    }

    /// Every variable name occurring in the term, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            LinTerm::Var(x) => {
                out.insert(x.clone());
            }
            LinTerm::App(a, b) | LinTerm::Pair(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            LinTerm::Lam(x, _, b) => {
                out.insert(x.clone());
                b.collect_names(out);
            }
            LinTerm::Case(n, x, y, m) => {
                n.collect_names(out);
                out.insert(x.clone());
                out.insert(y.clone());
                m.collect_names(out);
            }
        }
    }

    /// Capture-avoiding `self[n/x]`.
    pub fn subst(&self, x: &str, n: &LinTerm) -> LinTerm {
        let mut map = HashMap::new();
        map.insert(x.to_string(), n.clone());
        self.subst_many(&map)
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn subst_many(&self, map: &HashMap<String, LinTerm>) -> LinTerm {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            LinTerm::Var(y) => map.get(y).cloned().unwrap_or_else(|| self.clone()),
            LinTerm::App(a, b) => LinTerm::app(a.subst_many(map), b.subst_many(map)),
            LinTerm::Pair(a, b) => LinTerm::pair(a.subst_many(map), b.subst_many(map)),
            LinTerm::Lam(y, ty, body) => {
                let (names, body) = rebind(map, &[y], body);
                LinTerm::Lam(names[0].clone(), ty.clone(), Box::new(body))
            }
            LinTerm::Case(scrut, y, z, body) => {
                let (names, body) = rebind(map, &[y, z], body);
                LinTerm::Case(
                    Box::new(scrut.subst_many(map)),
                    names[0].clone(),
                    names[1].clone(),
                    Box::new(body),
                )
            }
        }
    }

    /// Rename every binder to a fresh name so no two binders share a name and
    /// none clashes with a free variable.
    pub fn barendregt(&self) -> LinTerm {
        let mut taken = self.free_vars();
        self.rename_binders(&mut HashMap::new(), &mut taken)
    }

    fn rename_binders(&self, env: &mut HashMap<String, String>, taken: &mut BTreeSet<String>) -> LinTerm {
        let bind = |x: &str, env: &mut HashMap<String, String>, taken: &mut BTreeSet<String>| {
            let base = x.trim_end_matches(|c: char| c.is_ascii_digit());
            let base = if base.is_empty() { x } else { base };
            let n = fresh_name(base, |c| taken.contains(c));
            taken.insert(n.clone());
            env.insert(x.to_string(), n.clone()).map(|old| (x.to_string(), old))
        };
        match self {
            LinTerm::Var(x) => LinTerm::Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
            LinTerm::App(a, b) => LinTerm::app(a.rename_binders(env, taken), b.rename_binders(env, taken)),
            LinTerm::Pair(a, b) => LinTerm::pair(a.rename_binders(env, taken), b.rename_binders(env, taken)),
            LinTerm::Lam(x, ty, b) => {
                let saved = bind(x, env, taken);
                let nx = env[x].clone();
                let body = b.rename_binders(env, taken);
                restore(env, x, saved);
                LinTerm::Lam(nx, ty.clone(), Box::new(body))
            }
            LinTerm::Case(n, x, y, m) => {
                let scrut = n.rename_binders(env, taken);
                let sx = bind(x, env, taken);
                let nx = env[x].clone();
                let sy = bind(y, env, taken);
                let ny = env[y].clone();
                let body = m.rename_binders(env, taken);
                restore(env, y, sy);
                restore(env, x, sx);
                LinTerm::Case(Box::new(scrut), nx, ny, Box::new(body))
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &LinTerm) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// A representative of the α-class: binders renamed in traversal order.
    pub fn alpha_key(&self) -> String {
        let mut taken = self.free_vars();
        let mut counter = 0usize;
        let t = self.canon(&mut HashMap::new(), &mut taken, &mut counter);
        t.to_string()
    }

    fn canon(&self, env: &mut HashMap<String, String>, taken: &mut BTreeSet<String>, k: &mut usize) -> LinTerm {
        let next = |taken: &BTreeSet<String>, k: &mut usize| loop {
            let n = format!("_{}", k);
            *k += 1;
            if !taken.contains(&n) {
                return n;
            }
        };
        match self {
            LinTerm::Var(x) => LinTerm::Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
            LinTerm::App(a, b) => LinTerm::app(a.canon(env, taken, k), b.canon(env, taken, k)),
            LinTerm::Pair(a, b) => LinTerm::pair(a.canon(env, taken, k), b.canon(env, taken, k)),
            LinTerm::Lam(x, _, b) => {
                let n = next(taken, k);
                let saved = env.insert(x.clone(), n.clone()).map(|o| (x.clone(), o));
                let body = b.canon(env, taken, k);
                restore(env, x, saved);
                LinTerm::Lam(n, None, Box::new(body))
            }
            LinTerm::Case(s, x, y, m) => {
                let scrut = s.canon(env, taken, k);
                let nx = next(taken, k);
                let ny = next(taken, k);
                let sx = env.insert(x.clone(), nx.clone()).map(|o| (x.clone(), o));
                let sy = env.insert(y.clone(), ny.clone()).map(|o| (y.clone(), o));
                let body = m.canon(env, taken, k);
                restore(env, y, sy);
                restore(env, x, sx);
                LinTerm::Case(Box::new(scrut), nx, ny, Box::new(body))
            }
        }
    }

    /// Drop all binder annotations.
    pub fn erase(&self) -> LinTerm {
        match self {
            LinTerm::Var(_) => self.clone(),
            LinTerm::App(a, b) => LinTerm::app(a.erase(), b.erase()),
            LinTerm::Pair(a, b) => LinTerm::pair(a.erase(), b.erase()),
            LinTerm::Lam(x, _, b) => LinTerm::lam(x.clone(), None, b.erase()),
            LinTerm::Case(n, x, y, m) => LinTerm::case(n.erase(), x.clone(), y.clone(), m.erase()),
        }
    }
}

fn restore(env: &mut HashMap<String, String>, x: &str, saved: Option<(String, String)>) {
    match saved {
        Some((k, v)) => {
            env.insert(k, v);
        }
        None => {
            env.remove(x);
        }
    }
}

/// Push a substitution under binders `xs`, renaming any binder that would
/// capture a free variable of the substituted terms.
fn rebind(map: &HashMap<String, LinTerm>, xs: &[&String], body: &LinTerm) -> (Vec<String>, LinTerm) {
    let mut inner: HashMap<String, LinTerm> = map
        .iter()
        .filter(|(k, _)| !xs.contains(k) && body.occurs_free(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if inner.is_empty() {
        return (xs.iter().map(|x| (*x).clone()).collect(), body.clone());
    }
    let danger: BTreeSet<String> = inner.values().flat_map(|v| v.free_vars()).collect();
    let mut names = Vec::new();
    let mut avoid = danger.clone();
    avoid.extend(body.names());
    avoid.extend(inner.keys().cloned());
    for x in xs {
        if danger.contains(*x) {
            let n = fresh_name(x, |c| avoid.contains(c) || xs.iter().any(|y| *y == c));
            avoid.insert(n.clone());
            inner.insert((*x).clone(), LinTerm::Var(n.clone()));
            names.push(n);
        } else {
            names.push((*x).clone());
        }
    }
    (names, body.subst_many(&inner))
}

fn alpha<'a>(a: &'a LinTerm, b: &'a LinTerm, la: &mut Vec<&'a str>, lb: &mut Vec<&'a str>) -> bool {
    match (a, b) {
        (LinTerm::Var(x), LinTerm::Var(y)) => {
            let ix = la.iter().rposition(|v| v == x);
            let iy = lb.iter().rposition(|v| v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (LinTerm::App(a1, a2), LinTerm::App(b1, b2)) | (LinTerm::Pair(a1, a2), LinTerm::Pair(b1, b2)) => {
            alpha(a1, b1, la, lb) && alpha(a2, b2, la, lb)
        }
        (LinTerm::Lam(x, _, m), LinTerm::Lam(y, _, n)) => {
            la.push(x);
            lb.push(y);
            let r = alpha(m, n, la, lb);
            la.pop();
            lb.pop();
            r
        }
        (LinTerm::Case(s, x1, y1, m), LinTerm::Case(t, x2, y2, n)) => {
            if !alpha(s, t, la, lb) {
                return false;
            }
            la.push(x1);
            la.push(y1);
            lb.push(x2);
            lb.push(y2);
            let r = alpha(m, n, la, lb);
            la.truncate(la.len() - 2);
            lb.truncate(lb.len() - 2);
            r
        }
        _ => false,
    }
}

impl fmt::Display for LinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinTerm::Var(x) => f.write_str(x),
            LinTerm::App(m, n) => write!(f, "({} {})", m, n),
            LinTerm::Lam(x, _, b) => write!(f, "lam {}. {}", x, b),
            LinTerm::Pair(m, n) => write!(f, "<{}, {}>", m, n),
            LinTerm::Case(n, x, y, m) => write!(f, "case {} of <{}, {}>. {}", n, x, y, m),
        }
    }
}

impl Serialize for LinTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for LinTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_lin_term(s)
    }
}

/// Parse a linear term. Pair patterns in binders desugar into `case`.
/// Conjunction and projections are rejected.
pub fn parse_lin_term(src: &str) -> Result<LinTerm, ParseError> {
    let surface = parse_surface(src)?;
    let mut names = Vec::new();
    surface.all_names(&mut names);
    let mut taken: BTreeSet<String> = names.into_iter().collect();
    from_surface(&surface, &mut taken)
}

fn from_surface(s: &Surface, taken: &mut BTreeSet<String>) -> Result<LinTerm, ParseError> {
    Ok(match s {
        Surface::Var(x) => LinTerm::Var(x.clone()),
        Surface::App(a, b) => LinTerm::app(from_surface(a, taken)?, from_surface(b, taken)?),
        Surface::Pair(a, b) => LinTerm::pair(from_surface(a, taken)?, from_surface(b, taken)?),
        Surface::Case(n, x, y, m) => LinTerm::case(from_surface(n, taken)?, x, y, from_surface(m, taken)?),
        Surface::Lam(p, body) => {
            let body = from_surface(body, taken)?;
            match p {
                Pattern::Var(x) => LinTerm::lam(x.clone(), None, body),
                Pattern::Pair(..) => {
                    let z = fresh_name("z", |c| taken.contains(c));
                    taken.insert(z.clone());
                    let inner = destructure(LinTerm::var(z.clone()), p, body, taken);
                    LinTerm::lam(z, None, inner)
                }
            }
        }
        Surface::And(..) => return Err(ParseError::new(0, "conjunction is not a linear term")),
        Surface::Proj(..) => return Err(ParseError::new(0, "projection is not a linear term")),
    })
}

pub(crate) fn destructure(scrut: LinTerm, p: &Pattern, body: LinTerm, taken: &mut BTreeSet<String>) -> LinTerm {
    match p {
        Pattern::Var(x) => body.subst(x, &scrut),
        Pattern::Pair(a, b) => {
            let side = |q: &Pattern, taken: &mut BTreeSet<String>| match q {
                Pattern::Var(x) => x.clone(),
                Pattern::Pair(..) => {
                    let z = fresh_name("z", |c| taken.contains(c));
                    taken.insert(z.clone());
                    z
                }
            };
            let xa = side(a, taken);
            let xb = side(b, taken);
            let mut inner = body;
            if let Pattern::Pair(..) = **b {
                inner = destructure(LinTerm::var(xb.clone()), b, inner, taken);
            }
            if let Pattern::Pair(..) = **a {
                inner = destructure(LinTerm::var(xa.clone()), a, inner, taken);
            }
            LinTerm::case(scrut, xa, xb, inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LinTerm {
        parse_lin_term(s).unwrap()
    }

    #[test]
    fn print_parse_roundtrip() {
        for src in [
            "x",
            "(f x)",
            "lam x. (x y)",
            "<x, lam y. (y z)>",
            "case z of <x, y>. (x y)",
            "((f x) y)",
        ] {
            let a = t(src);
            assert_eq!(t(&a.to_string()), a, "{}", src);
        }
    }

    #[test]
    fn pattern_sugar() {
        let a = t("lam <x, <y, u>>. (x <y, u>)");
        let b = t("lam z. case z of <x, w>. case w of <y, u>. (x <y, u>)");
        assert!(a.alpha_eq(&b), "{} vs {}", a, b);
    }

    #[test]
    fn alpha_equivalence() {
        assert!(t("lam x. (x y)").alpha_eq(&t("lam z. (z y)")));
        assert!(!t("lam x. (x y)").alpha_eq(&t("lam y. (y y)")));
        assert!(!t("lam x. (x y)").alpha_eq(&t("lam z. (z w)")));
        assert!(t("case p of <a, b>. (a b)").alpha_eq(&t("case p of <c, d>. (c d)")));
        assert!(!t("case p of <a, b>. (a b)").alpha_eq(&t("case p of <c, d>. (d c)")));
        assert_eq!(t("lam x. (x y)").alpha_key(), t("lam z. (z y)").alpha_key());
    }

    #[test]
    fn substitution_avoids_capture() {
        let m = t("lam y. (x y)");
        let r = m.subst("x", &t("y"));
        assert!(r.alpha_eq(&t("lam w. (y w)")), "{}", r);
        let m = t("case p of <a, b>. (x <a, b>)");
        let r = m.subst("x", &t("(a b)"));
        assert!(r.alpha_eq(&t("case p of <c, d>. ((a b) <c, d>)")), "{}", r);
        // bound occurrences are untouched
        assert_eq!(t("lam x. x").subst("x", &t("y")), t("lam x. x"));
    }

    #[test]
    fn barendregt_separates_binders() {
        let m = t("<lam x. (x y), lam x. (x y)>").barendregt();
        match &m {
            LinTerm::Pair(a, b) => match (&**a, &**b) {
                (LinTerm::Lam(x1, _, _), LinTerm::Lam(x2, _, _)) => assert_ne!(x1, x2),
                _ => panic!(),
            },
            _ => panic!(),
        }
        assert!(m.alpha_eq(&t("<lam x. (x y), lam x. (x y)>")));
    }

    #[test]
    fn rejects_meaning_only_syntax() {
        assert!(parse_lin_term("(x /\\ y)").is_err());
        assert!(parse_lin_term("(p1 x)").is_err());
    }
}
