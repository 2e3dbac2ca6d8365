//! Surface syntax shared by linear terms and lexical meaning terms.
//!
//! ```text
//! term    := 'lam' pattern '.' term
//!          | 'case' term 'of' '<' ident ',' ident '>' '.' term
//!          | '<' term ',' term '>'
//!          | '(' term term+ ')'          application, left-nested
//!          | '(' term '/\' term ')'      conjunction (meaning terms only)
//!          | '(' term ')'
//!          | ident
//! pattern := ident | '<' pattern ',' pattern '>'
//! ```
//!
//! Application always needs parentheses, so a λ or case body is a single
//! term and `(lam x. x y)` applies `lam x. x` to `y`. `p1` and `p2` in head
//! position are projections. Whether a free identifier names a constant is
//! decided by the consumer, not by the parser.

use crate::formula::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Pattern {
    Var(String),
    Pair(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    fn names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Pattern::Var(x) => out.push(x),
            Pattern::Pair(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Surface {
    Var(String),
    App(Box<Surface>, Box<Surface>),
    Lam(Pattern, Box<Surface>),
    Pair(Box<Surface>, Box<Surface>),
    Case(Box<Surface>, String, String, Box<Surface>),
    And(Box<Surface>, Box<Surface>),
    Proj(u8, Box<Surface>),
}

impl Surface {
    /// Every identifier occurring anywhere, bound or free.
    pub(crate) fn all_names(&self, out: &mut Vec<String>) {
        match self {
            Surface::Var(x) => out.push(x.clone()),
            Surface::App(a, b) | Surface::Pair(a, b) | Surface::And(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Surface::Lam(p, b) => {
                let mut ns = Vec::new();
                p.names(&mut ns);
                out.extend(ns.into_iter().map(str::to_string));
                b.all_names(out);
            }
            Surface::Case(n, x, y, m) => {
                n.all_names(out);
                out.push(x.clone());
                out.push(y.clone());
                m.all_names(out);
            }
            Surface::Proj(_, a) => a.all_names(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lam,
    Case,
    Of,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
    Dot,
    And,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '<' | '⟨' => Tok::LAngle,
            '>' | '⟩' => Tok::RAngle,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '∧' => Tok::And,
            'λ' => Tok::Lam,
            '/' => {
                it.next();
                match it.peek() {
                    Some(&(_, '\\')) => {
                        it.next();
                        out.push((Tok::And, i));
                        continue;
                    }
                    _ => return Err(ParseError::new(i, "expected `/\\`")),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut end = i;
                while let Some(&(j, d)) = it.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        end = j + d.len_utf8();
                        it.next();
                    } else {
                        break;
                    }
                }
                let word = &src[i..end];
                let tok = match word {
                    "lam" => Tok::Lam,
                    "case" => Tok::Case,
                    "of" => Tok::Of,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, i));
                continue;
            }
            _ => return Err(ParseError::new(i, format!("unexpected character `{}`", c))),
        };
        it.next();
        out.push((tok, i));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 512;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        if self.bump().as_ref() == Some(&want) {
            Ok(())
        } else {
            Err(ParseError::new(pos, format!("expected {}", what)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(x)) if x != "p1" && x != "p2" => Ok(x),
            _ => Err(ParseError::new(pos, "expected a variable")),
        }
    }

    fn pattern(&mut self) -> Result<Pattern, ParseError> {
        if self.peek() == Some(&Tok::LAngle) {
            self.bump();
            let a = self.pattern()?;
            self.expect(Tok::Comma, "`,`")?;
            let b = self.pattern()?;
            self.expect(Tok::RAngle, "`>`")?;
            Ok(Pattern::Pair(Box::new(a), Box::new(b)))
        } else {
            Ok(Pattern::Var(self.ident()?))
        }
    }

    fn term(&mut self) -> Result<Surface, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(self.pos(), "term nested too deeply"));
        }
        let r = self.term_inner();
        self.depth -= 1;
        r
    }

    fn term_inner(&mut self) -> Result<Surface, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Lam) => {
                let p = self.pattern()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.term()?;
                Ok(Surface::Lam(p, Box::new(body)))
            }
            Some(Tok::Case) => {
                let scrut = self.term()?;
                self.expect(Tok::Of, "`of`")?;
                self.expect(Tok::LAngle, "`<`")?;
                let x = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.ident()?;
                self.expect(Tok::RAngle, "`>`")?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.term()?;
                Ok(Surface::Case(Box::new(scrut), x, y, Box::new(body)))
            }
            Some(Tok::LAngle) => {
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::RAngle, "`>`")?;
                Ok(Surface::Pair(Box::new(a), Box::new(b)))
            }
            Some(Tok::LParen) => {
                let head_pos = self.pos();
                let head = self.term()?;
                if self.peek() == Some(&Tok::And) {
                    self.bump();
                    let rhs = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Surface::And(Box::new(head), Box::new(rhs)));
                }
                let mut acc = head;
                while self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(ParseError::new(self.pos(), "expected `)`"));
                    }
                    let arg = self.term()?;
                    acc = match acc {
                        Surface::Var(ref p) if p == "p1" || p == "p2" => {
                            Surface::Proj(if p == "p1" { 1 } else { 2 }, Box::new(arg))
                        }
                        f => Surface::App(Box::new(f), Box::new(arg)),
                    };
                }
                self.bump();
                if let Surface::Var(p) = &acc {
                    if p == "p1" || p == "p2" {
                        return Err(ParseError::new(head_pos, "projection needs an argument"));
                    }
                }
                Ok(acc)
            }
            Some(Tok::Ident(x)) => Ok(Surface::Var(x)),
            Some(_) => Err(ParseError::new(pos, "expected a term")),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn is_constant(name: &str) -> bool {
    name.chars().next().is_some_and(char::is_uppercase)
}

pub(crate) fn parse_surface(src: &str) -> Result<Surface, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
        depth: 0,
    };
    let t = p.term()?;
    if p.at < p.toks.len() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    Ok(t)
}

/// First name `base`, `base1`, `base2`, ... rejected by neither `taken`.
pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{}{}", base, i))
        .find(|n| !taken(n))
        .expect("unbounded supply")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn application_needs_parens() {
        let t = parse_surface("(lam x. x y)").unwrap();
        match t {
            Surface::App(f, a) => {
                assert!(matches!(*f, Surface::Lam(..)));
                assert_eq!(*a, Surface::Var("y".into()));
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn nested_patterns_and_conjunction() {
        let t = parse_surface("lam <Q, <nu, P>>. (nu lam x. ((P x) /\\ (Q <lam p. p, x>)))").unwrap();
        assert!(matches!(t, Surface::Lam(Pattern::Pair(..), _)));
        let t = parse_surface("lam <q, <ν, p>>. (ν lam x. ((p x) /\\ (q <lam z. z, x>)))").unwrap();
        assert!(matches!(t, Surface::Lam(Pattern::Pair(..), _)));
    }

    #[test]
    fn projections() {
        let t = parse_surface("(p1 z)").unwrap();
        assert_eq!(t, Surface::Proj(1, Box::new(Surface::Var("z".into()))));
        assert!(parse_surface("(p2)").is_err());
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(parse_surface("(f x").unwrap_err().pos, 4);
        assert_eq!(parse_surface("lam x x").unwrap_err().pos, 6);
        assert!(parse_surface("x y").is_err());
    }
}
