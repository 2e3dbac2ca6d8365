use std::collections::HashMap;

use super::{LinTerm, NormalizeError};
use crate::term_syntax::fresh_name;

pub const DEFAULT_FUEL: usize = 10_000;

/// Which redex to contract next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    /// Contract inside subterms, right to left, before the enclosing redex.
    InnermostRightmost,
}

/// Normal form under β, case-β and the two commuting conversions, using the
/// leftmost-outermost strategy.
pub fn normalize(t: &LinTerm) -> Result<LinTerm, NormalizeError> {
    normalize_with(t, Strategy::LeftmostOutermost, DEFAULT_FUEL)
}

pub fn normalize_with(t: &LinTerm, strategy: Strategy, fuel: usize) -> Result<LinTerm, NormalizeError> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        let next = match strategy {
            Strategy::LeftmostOutermost => step_outer(&cur),
            Strategy::InnermostRightmost => step_inner(&cur),
        };
        match next {
            Some(n) => cur = n,
            None => return Ok(cur),
        }
    }
    Err(NormalizeError::Diverged(fuel))
}

/// Contract `t` itself if it is a redex.
fn contract(t: &LinTerm) -> Option<LinTerm> {
    match t {
        LinTerm::App(f, n) => match &**f {
            LinTerm::Lam(x, _, body) => Some(body.subst(x, n)),
            // (case M of ⟨x,y⟩. N) P  ~>  case M of ⟨x,y⟩. (N P)
            LinTerm::Case(m, x, y, body) => {
                let (x, y, body) = apart(x, y, body, &[n]);
                Some(LinTerm::case((**m).clone(), x, y, LinTerm::app(body, (**n).clone())))
            }
            _ => None,
        },
        LinTerm::Case(scrut, x, y, body) => match &**scrut {
            LinTerm::Pair(a, b) => {
                let mut map = HashMap::new();
                map.insert(x.clone(), (**a).clone());
                map.insert(y.clone(), (**b).clone());
                Some(body.subst_many(&map))
            }
            // case (case M of ⟨u,v⟩. N) of ⟨x,y⟩. P  ~>  case M of ⟨u,v⟩. case N of ⟨x,y⟩. P
            LinTerm::Case(m, u, v, n) => {
                let outer = LinTerm::Case(Box::new(LinTerm::Var(String::new())), x.clone(), y.clone(), body.clone());
                let (u, v, n) = apart(u, v, n, &[&outer]);
                Some(LinTerm::case(
                    (**m).clone(),
                    u,
                    v,
                    LinTerm::case(n, x.clone(), y.clone(), (**body).clone()),
                ))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Rename the binders `x`, `y` of `body` if they occur free in any of `others`.
fn apart(x: &str, y: &str, body: &LinTerm, others: &[&LinTerm]) -> (String, String, LinTerm) {
    let clash = |v: &str| others.iter().any(|o| o.occurs_free(v));
    if !clash(x) && !clash(y) {
        return (x.to_string(), y.to_string(), body.clone());
    }
    let mut taken = body.names();
    for o in others {
        taken.extend(o.names());
    }
    let mut map = HashMap::new();
    let mut pick = |v: &str| {
        if clash(v) {
            let n = fresh_name(v, |c| taken.contains(c));
            taken.insert(n.clone());
            map.insert(v.to_string(), LinTerm::Var(n.clone()));
            n
        } else {
            v.to_string()
        }
    };
    let nx = pick(x);
    let ny = pick(y);
    (nx, ny, body.subst_many(&map))
}

fn step_outer(t: &LinTerm) -> Option<LinTerm> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        LinTerm::Var(_) => None,
        LinTerm::App(a, b) => step_outer(a)
            .map(|a| LinTerm::app(a, (**b).clone()))
            .or_else(|| step_outer(b).map(|b| LinTerm::app((**a).clone(), b))),
        LinTerm::Pair(a, b) => step_outer(a)
            .map(|a| LinTerm::pair(a, (**b).clone()))
            .or_else(|| step_outer(b).map(|b| LinTerm::pair((**a).clone(), b))),
        LinTerm::Lam(x, ty, b) => step_outer(b).map(|b| LinTerm::Lam(x.clone(), ty.clone(), Box::new(b))),
        LinTerm::Case(n, x, y, m) => step_outer(n)
            .map(|n| LinTerm::case(n, x.clone(), y.clone(), (**m).clone()))
            .or_else(|| step_outer(m).map(|m| LinTerm::case((**n).clone(), x.clone(), y.clone(), m))),
    }
}

fn step_inner(t: &LinTerm) -> Option<LinTerm> {
    let inside = match t {
        LinTerm::Var(_) => None,
        LinTerm::App(a, b) => step_inner(b)
            .map(|b| LinTerm::app((**a).clone(), b))
            .or_else(|| step_inner(a).map(|a| LinTerm::app(a, (**b).clone()))),
        LinTerm::Pair(a, b) => step_inner(b)
            .map(|b| LinTerm::pair((**a).clone(), b))
            .or_else(|| step_inner(a).map(|a| LinTerm::pair(a, (**b).clone()))),
        LinTerm::Lam(x, ty, b) => step_inner(b).map(|b| LinTerm::Lam(x.clone(), ty.clone(), Box::new(b))),
        LinTerm::Case(n, x, y, m) => step_inner(m)
            .map(|m| LinTerm::case((**n).clone(), x.clone(), y.clone(), m))
            .or_else(|| step_inner(n).map(|n| LinTerm::case(n, x.clone(), y.clone(), (**m).clone()))),
    };
    inside.or_else(|| contract(t))
}
