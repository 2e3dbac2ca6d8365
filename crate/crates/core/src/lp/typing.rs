use std::collections::BTreeMap;

use thiserror::Error;

use super::{LinTerm, LinType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{0}` used more than once")]
    VariableUsedTwice(String),
    #[error("variable `{0}` is never used")]
    VariableUnused(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: LinType, found: LinType },
    #[error("cannot infer the type of the binder `{0}`")]
    MissingAnnotation(String),
    #[error("`{0}` is bound twice in the context")]
    DuplicateVariable(String),
    #[error("expected a negation, found {0}")]
    NotANegation(LinType),
    #[error("expected a product, found {0}")]
    NotAProduct(LinType),
}

/// A linear typing context: each variable occurs at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context(BTreeMap<String, LinType>);

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn insert(&mut self, x: impl Into<String>, ty: LinType) -> Result<(), TypeError> {
        let x = x.into();
        if self.0.contains_key(&x) {
            return Err(TypeError::DuplicateVariable(x));
        }
        self.0.insert(x, ty);
        Ok(())
    }

    pub fn with(mut self, x: impl Into<String>, ty: LinType) -> Result<Self, TypeError> {
        self.insert(x, ty)?;
        Ok(self)
    }

    pub fn get(&self, x: &str) -> Option<&LinType> {
        self.0.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &LinType)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_pairs<I: IntoIterator<Item = (String, LinType)>>(pairs: I) -> Result<Self, TypeError> {
        let mut c = Context::new();
        for (x, t) in pairs {
            c.insert(x, t)?;
        }
        Ok(c)
    }
}

struct Slot {
    name: String,
    ty: LinType,
    used: bool,
}

struct Checker {
    scope: Vec<Slot>,
}

impl Checker {
    fn lookup(&mut self, x: &str) -> Result<LinType, TypeError> {
        let slot = self
            .scope
            .iter_mut()
            .rev()
            .find(|s| s.name == x)
            .ok_or_else(|| TypeError::UnboundVariable(x.to_string()))?;
        if slot.used {
            return Err(TypeError::VariableUsedTwice(x.to_string()));
        }
        slot.used = true;
        Ok(slot.ty.clone())
    }

    fn push(&mut self, x: &str, ty: LinType) {
        self.scope.push(Slot {
            name: x.to_string(),
            ty,
            used: false,
        });
    }

    fn pop(&mut self) -> Result<(), TypeError> {
        let s = self.scope.pop().expect("balanced scope");
        if s.used {
            Ok(())
        } else {
            Err(TypeError::VariableUnused(s.name))
        }
    }

    fn check(&mut self, t: &LinTerm, want: &LinType) -> Result<(), TypeError> {
        let got = self.synth(t, Some(want))?;
        if &got == want {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch {
                expected: want.clone(),
                found: got,
            })
        }
    }

    fn synth(&mut self, t: &LinTerm, want: Option<&LinType>) -> Result<LinType, TypeError> {
        match t {
            LinTerm::Var(x) => self.lookup(x),
            LinTerm::Lam(x, ann, body) => {
                let dom = match (ann, want) {
                    (Some(a), _) => a.clone(),
                    (None, Some(LinType::Neg(d))) => (**d).clone(),
                    (None, Some(other)) => return Err(TypeError::NotANegation(other.clone())),
                    (None, None) => return Err(TypeError::MissingAnnotation(x.clone())),
                };
                self.push(x, dom.clone());
                self.check(body, &LinType::Bottom)?;
                self.pop()?;
                Ok(LinType::neg(dom))
            }
            LinTerm::App(f, a) => {
                if matches!(**f, LinTerm::Lam(_, None, _)) {
                    let ta = self.synth(a, None)?;
                    self.check(f, &LinType::neg(ta))?;
                } else {
                    match self.synth(f, None)? {
                        LinType::Neg(d) => self.check(a, &d)?,
                        other => return Err(TypeError::NotANegation(other)),
                    }
                }
                Ok(LinType::Bottom)
            }
            LinTerm::Pair(m, n) => match want {
                Some(LinType::Prod(a, b)) => {
                    self.check(m, a)?;
                    self.check(n, b)?;
                    Ok(LinType::Prod(a.clone(), b.clone()))
                }
                _ => {
                    let a = self.synth(m, None)?;
                    let b = self.synth(n, None)?;
                    Ok(LinType::prod(a, b))
                }
            },
            LinTerm::Case(n, x, y, m) => {
                let (a, b) = match self.synth(n, None)? {
                    LinType::Prod(a, b) => (*a, *b),
                    other => return Err(TypeError::NotAProduct(other)),
                };
                self.push(x, a);
                self.push(y, b);
                let r = self.synth(m, want)?;
                self.pop()?;
                self.pop()?;
                Ok(r)
            }
        }
    }
}

/// Check `ctx ⊢ t : ty` linearly. Returns the type of `t`.
///
/// With `ty` given the term is checked against it; otherwise its type is
/// synthesized, which needs annotations on λ-binders not under an
/// application or pair with known type.
pub fn typecheck(ctx: &Context, t: &LinTerm, ty: Option<&LinType>) -> Result<LinType, TypeError> {
    let mut c = Checker {
        scope: ctx
            .iter()
            .map(|(n, t)| Slot {
                name: n.clone(),
                ty: t.clone(),
                used: false,
            })
            .collect(),
    };
    let got = match ty {
        Some(want) => {
            c.check(t, want)?;
            want.clone()
        }
        None => c.synth(t, None)?,
    };
    if let Some(s) = c.scope.iter().find(|s| !s.used) {
        return Err(TypeError::VariableUnused(s.name.clone()));
    }
    Ok(got)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::parse_lin_term;

    fn a(s: &str) -> LinType {
        LinType::atom(s)
    }

    fn t(s: &str) -> LinTerm {
        parse_lin_term(s).unwrap()
    }

    #[test]
    fn application_and_abstraction() {
        let ctx = Context::new()
            .with("f", LinType::neg(a("p")))
            .unwrap()
            .with("x", a("p"))
            .unwrap();
        assert_eq!(typecheck(&ctx, &t("(f x)"), None), Ok(LinType::Bottom));
        let ctx = Context::new().with("y", a("p")).unwrap();
        assert_eq!(
            typecheck(&ctx, &t("lam k. (k y)"), Some(&LinType::neg(LinType::neg(a("p"))))),
            Ok(LinType::neg(LinType::neg(a("p"))))
        );
    }

    #[test]
    fn linearity_violations() {
        let ctx = Context::new()
            .with("f", LinType::neg(LinType::prod(a("p"), a("p"))))
            .unwrap()
            .with("x", a("p"))
            .unwrap();
        assert_eq!(
            typecheck(&ctx, &t("(f <x, x>)"), None),
            Err(TypeError::VariableUsedTwice("x".into()))
        );
        let ctx = Context::new()
            .with("f", LinType::neg(a("p")))
            .unwrap()
            .with("x", a("p"))
            .unwrap()
            .with("z", a("q"))
            .unwrap();
        assert_eq!(
            typecheck(&ctx, &t("(f x)"), None),
            Err(TypeError::VariableUnused("z".into()))
        );
        let ctx = Context::new().with("f", LinType::neg(a("p"))).unwrap();
        assert_eq!(
            typecheck(&ctx, &t("(f y)"), None),
            Err(TypeError::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn vacuous_binder_is_rejected() {
        let ctx = Context::new()
            .with("f", LinType::neg(a("p")))
            .unwrap()
            .with("x", a("p"))
            .unwrap();
        assert_eq!(
            typecheck(&ctx, &t("lam k. (f x)"), Some(&LinType::neg(a("q")))),
            Err(TypeError::VariableUnused("k".into()))
        );
    }

    #[test]
    fn mismatch_and_missing_annotation() {
        let ctx = Context::new()
            .with("f", LinType::neg(a("p")))
            .unwrap()
            .with("x", a("q"))
            .unwrap();
        assert!(matches!(
            typecheck(&ctx, &t("(f x)"), None),
            Err(TypeError::TypeMismatch { .. })
        ));
        let ctx = Context::new().with("y", a("p")).unwrap();
        assert_eq!(
            typecheck(&ctx, &t("lam k. (k y)"), None),
            Err(TypeError::MissingAnnotation("k".into()))
        );
    }

    #[test]
    fn case_splits_products() {
        let ctx = Context::new()
            .with("z", LinType::prod(LinType::neg(a("p")), a("p")))
            .unwrap();
        assert_eq!(typecheck(&ctx, &t("case z of <k, x>. (k x)"), None), Ok(LinType::Bottom));
        let ctx = Context::new().with("z", a("p")).unwrap();
        assert_eq!(
            typecheck(&ctx, &t("case z of <k, x>. (k x)"), None),
            Err(TypeError::NotAProduct(a("p")))
        );
    }

    #[test]
    fn duplicate_context_entry() {
        assert_eq!(
            Context::new().with("x", a("p")).unwrap().with("x", a("q")),
            Err(TypeError::DuplicateVariable("x".into()))
        );
    }

    #[test]
    fn redex_with_unannotated_head() {
        let ctx = Context::new()
            .with("f", LinType::neg(a("p")))
            .unwrap()
            .with("x", a("p"))
            .unwrap();
        assert_eq!(typecheck(&ctx, &t("(lam y. (f y) x)"), None), Ok(LinType::Bottom));
    }
}
