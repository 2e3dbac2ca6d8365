//! Type inference for meaning terms by first-order unification.

use std::collections::BTreeMap;

use super::{SemanticsError, SimpleTerm, SimpleType};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    E,
    T,
    Prod(Box<Ty>, Box<Ty>),
    Arrow(Box<Ty>, Box<Ty>),
    Meta(usize),
}

impl Ty {
    fn from_simple(t: &SimpleType) -> Ty {
        match t {
            SimpleType::E => Ty::E,
            SimpleType::T => Ty::T,
            SimpleType::Prod(a, b) => Ty::Prod(Box::new(Ty::from_simple(a)), Box::new(Ty::from_simple(b))),
            SimpleType::Arrow(a, b) => Ty::Arrow(Box::new(Ty::from_simple(a)), Box::new(Ty::from_simple(b))),
        }
    }
}

#[derive(Default)]
struct Unifier {
    slots: Vec<Option<Ty>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ty {
        self.slots.push(None);
        Ty::Meta(self.slots.len() - 1)
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match t {
            Ty::Meta(i) => match &self.slots[*i] {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            Ty::Prod(a, b) => Ty::Prod(Box::new(self.resolve(a)), Box::new(self.resolve(b))),
            Ty::Arrow(a, b) => Ty::Arrow(Box::new(self.resolve(a)), Box::new(self.resolve(b))),
            _ => t.clone(),
        }
    }

    fn occurs(&self, i: usize, t: &Ty) -> bool {
        match self.resolve(t) {
            Ty::Meta(j) => i == j,
            Ty::Prod(a, b) | Ty::Arrow(a, b) => self.occurs(i, &a) || self.occurs(i, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> Result<(), SemanticsError> {
        let (a, b) = (self.resolve(a), self.resolve(b));
        match (&a, &b) {
            (Ty::Meta(i), Ty::Meta(j)) if i == j => Ok(()),
            (Ty::Meta(i), t) | (t, Ty::Meta(i)) => {
                if self.occurs(*i, t) {
                    return Err(self.mismatch(&a, &b));
                }
                self.slots[*i] = Some(t.clone());
                Ok(())
            }
            (Ty::E, Ty::E) | (Ty::T, Ty::T) => Ok(()),
            (Ty::Prod(a1, b1), Ty::Prod(a2, b2)) | (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
            _ => Err(self.mismatch(&a, &b)),
        }
    }

    fn mismatch(&self, a: &Ty, b: &Ty) -> SemanticsError {
        SemanticsError::TypeMismatch(self.show(a), self.show(b))
    }

    fn show(&self, t: &Ty) -> String {
        match self.ground(t) {
            Some(s) => s.to_string(),
            None => "?".into(),
        }
    }

    /// Resolve fully, defaulting unconstrained variables to `t`.
    fn ground(&self, t: &Ty) -> Option<SimpleType> {
        Some(match self.resolve(t) {
            Ty::E => SimpleType::E,
            Ty::T | Ty::Meta(_) => SimpleType::T,
            Ty::Prod(a, b) => SimpleType::prod(self.ground(&a)?, self.ground(&b)?),
            Ty::Arrow(a, b) => SimpleType::arrow(self.ground(&a)?, self.ground(&b)?),
        })
    }

    fn infer(
        &mut self,
        env: &mut Vec<(String, Ty)>,
        consts: &BTreeMap<String, SimpleType>,
        t: &SimpleTerm,
    ) -> Result<Ty, SemanticsError> {
        Ok(match t {
            SimpleTerm::Var(x) => env
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, ty)| ty.clone())
                .ok_or_else(|| SemanticsError::UnboundVariable(x.clone()))?,
            SimpleTerm::Const(c) => Ty::from_simple(consts.get(c).ok_or_else(|| SemanticsError::UnknownConstant(c.clone()))?),
            SimpleTerm::App(f, a) => {
                let tf = self.infer(env, consts, f)?;
                let ta = self.infer(env, consts, a)?;
                let r = self.fresh();
                self.unify(&tf, &Ty::Arrow(Box::new(ta), Box::new(r.clone())))?;
                r
            }
            SimpleTerm::Lam(x, b) => {
                let a = self.fresh();
                env.push((x.clone(), a.clone()));
                let tb = self.infer(env, consts, b);
                env.pop();
                Ty::Arrow(Box::new(a), Box::new(tb?))
            }
            SimpleTerm::Pair(a, b) => {
                let ta = self.infer(env, consts, a)?;
                let tb = self.infer(env, consts, b)?;
                Ty::Prod(Box::new(ta), Box::new(tb))
            }
            SimpleTerm::Proj(i, p) => {
                let tp = self.infer(env, consts, p)?;
                let (a, b) = (self.fresh(), self.fresh());
                self.unify(&tp, &Ty::Prod(Box::new(a.clone()), Box::new(b.clone())))?;
                if *i == 1 {
                    a
                } else {
                    b
                }
            }
            SimpleTerm::And(a, b) => {
                let ta = self.infer(env, consts, a)?;
                self.unify(&ta, &Ty::T)?;
                let tb = self.infer(env, consts, b)?;
                self.unify(&tb, &Ty::T)?;
                Ty::T
            }
        })
    }
}

fn prepare(ctx: &[(String, SimpleType)]) -> Vec<(String, Ty)> {
    ctx.iter().map(|(n, t)| (n.clone(), Ty::from_simple(t))).collect()
}

/// The principal type of `t`, with unconstrained parts read as `t`.
pub fn infer_type(
    t: &SimpleTerm,
    ctx: &[(String, SimpleType)],
    consts: &BTreeMap<String, SimpleType>,
) -> Result<SimpleType, SemanticsError> {
    let mut u = Unifier::default();
    let ty = u.infer(&mut prepare(ctx), consts, t)?;
    Ok(u.ground(&ty).expect("resolution terminates"))
}

/// Does `t` have type `expected`?
pub fn check_term(
    t: &SimpleTerm,
    ctx: &[(String, SimpleType)],
    consts: &BTreeMap<String, SimpleType>,
    expected: &SimpleType,
) -> Result<(), SemanticsError> {
    let mut u = Unifier::default();
    let ty = u.infer(&mut prepare(ctx), consts, t)?;
    u.unify(&ty, &Ty::from_simple(expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> BTreeMap<String, SimpleType> {
        let mut m = BTreeMap::new();
        m.insert("FOUNDED".into(), "e -> e -> t".parse().unwrap());
        m.insert("MATHEMATICIAN".into(), "e -> t".parse().unwrap());
        m.insert("INTUITIONISM".into(), SimpleType::E);
        m
    }

    #[test]
    fn lexical_entries_check() {
        let founded = SimpleTerm::parse("lam <y, <q, x>>. (q ((FOUNDED y) x))").unwrap();
        let want: SimpleType = "(e * ((t -> t) * e)) -> t".parse().unwrap();
        check_term(&founded, &[], &consts(), &want).unwrap();
        let who = SimpleTerm::parse("lam <Q, <nu, P>>. (nu lam x. ((P x) /\\ (Q <lam p. p, x>)))").unwrap();
        let want: SimpleType = "(((t -> t) * e) -> t) * (((e -> t) -> t) * (e -> t)) -> t".parse().unwrap();
        check_term(&who, &[], &consts(), &want).unwrap();
    }

    #[test]
    fn failures() {
        let c = consts();
        let bad = SimpleTerm::parse("(INTUITIONISM INTUITIONISM)").unwrap();
        assert!(matches!(infer_type(&bad, &[], &c), Err(SemanticsError::TypeMismatch(..))));
        let unknown = SimpleTerm::parse("NOPE").unwrap();
        assert_eq!(infer_type(&unknown, &[], &c), Err(SemanticsError::UnknownConstant("NOPE".into())));
        let free = SimpleTerm::parse("(f INTUITIONISM)").unwrap();
        assert_eq!(infer_type(&free, &[], &c), Err(SemanticsError::UnboundVariable("f".into())));
        let selfapp = SimpleTerm::parse("lam x. (x x)").unwrap();
        assert!(infer_type(&selfapp, &[], &c).is_err());
    }

    #[test]
    fn context_and_conjunction() {
        let c = consts();
        let ctx = vec![("g".to_string(), "(e -> t) -> t".parse().unwrap())];
        let m = SimpleTerm::parse("(g lam x. ((MATHEMATICIAN x) /\\ ((FOUNDED INTUITIONISM) x)))").unwrap();
        assert_eq!(infer_type(&m, &ctx, &c).unwrap(), SimpleType::T);
    }
}
