//! Line-oriented grammar files.
//!
//! ```text
//! atom np : e
//! const FOUNDED : e -> e -> t
//! word founded : (np \ s) / np = lam <y, <q, x>>. (q ((FOUNDED y) x))
//! goal n
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use super::{check_term, delinearize_type, BaseMap, SemanticsError, SimpleTerm, SimpleType};
use crate::formula::{parse_formula, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub formula: Formula,
    pub term: SimpleTerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub base: BaseMap,
    pub consts: BTreeMap<String, SimpleType>,
    pub words: BTreeMap<String, Vec<Entry>>,
    pub goal: Option<Formula>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct GrammarError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> GrammarError {
    GrammarError { line, msg: msg.into() }
}

impl Lexicon {
    pub fn lookup(&self, word: &str) -> Result<&[Entry], SemanticsError> {
        self.words
            .get(word)
            .map(Vec::as_slice)
            .ok_or_else(|| SemanticsError::UnknownWord(word.to_string()))
    }

    /// The meaning type a word of category `f` must have.
    pub fn entry_type(&self, f: &Formula) -> Result<SimpleType, SemanticsError> {
        delinearize_type(&f.input_type(), &self.base)
    }

    fn check_entry(&self, e: &Entry) -> Result<(), SemanticsError> {
        if let Some(x) = e.term.free_vars().into_iter().next() {
            return Err(SemanticsError::UnboundVariable(x));
        }
        let want = self.entry_type(&e.formula)?;
        check_term(&e.term, &[], &self.consts, &want)
    }
}

fn split_decl(rest: &str, line: usize) -> Result<(&str, &str), GrammarError> {
    let (name, ty) = rest.split_once(':').ok_or_else(|| err(line, "expected `name : type`"))?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(err(line, "expected a single name before `:`"));
    }
    Ok((name, ty.trim()))
}

pub fn parse_grammar(src: &str) -> Result<Lexicon, GrammarError> {
    let mut lex = Lexicon::default();
    let mut pending = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match kw {
            "atom" => {
                let (name, ty) = split_decl(rest, line)?;
                let ty: SimpleType = ty.parse().map_err(|e| err(line, format!("bad type: {}", e)))?;
                if lex.base.insert(name.to_string(), ty).is_some() {
                    return Err(err(line, format!("atom `{}` declared twice", name)));
                }
            }
            "const" => {
                let (name, ty) = split_decl(rest, line)?;
                if !name.starts_with(char::is_uppercase) {
                    return Err(err(line, format!("constant `{}` must start with an uppercase letter", name)));
                }
                let ty: SimpleType = ty.parse().map_err(|e| err(line, format!("bad type: {}", e)))?;
                if lex.consts.insert(name.to_string(), ty).is_some() {
                    return Err(err(line, format!("constant `{}` declared twice", name)));
                }
            }
            "word" => {
                let (word, body) = split_decl(rest, line)?;
                let (cat, term) = body.split_once('=').ok_or_else(|| err(line, "expected `word w : category = term`"))?;
                let formula = parse_formula(cat.trim()).map_err(|e| err(line, format!("bad category: {}", e)))?;
                let term = SimpleTerm::parse(term.trim()).map_err(|e| err(line, format!("bad term: {}", e)))?;
                pending.push((line, word.to_string(), Entry { formula, term }));
            }
            "goal" => {
                let f = parse_formula(rest).map_err(|e| err(line, format!("bad goal: {}", e)))?;
                lex.goal = Some(f);
            }
            other => return Err(err(line, format!("unknown directive `{}`", other))),
        }
    }
    for (line, word, entry) in pending {
        lex.check_entry(&entry).map_err(|e| err(line, format!("entry for `{}`: {}", word, e)))?;
        lex.words.entry(word).or_default().push(entry);
    }
    if let Some(g) = &lex.goal {
        lex.entry_type(g).map_err(|e| err(0, format!("goal: {}", e)))?;
    }
    Ok(lex)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = "
        # a tiny grammar
        atom s : t
        atom np : e
        const JOHN : e
        const SLEEPS : e -> t
        word John : np = JOHN
        word sleeps : np \\ s = lam <k, x>. (k (SLEEPS x))   # verb phrase
        goal s
    ";

    #[test]
    fn loads() {
        let lex = parse_grammar(MINI).unwrap();
        assert_eq!(lex.base.len(), 2);
        assert_eq!(lex.lookup("sleeps").unwrap().len(), 1);
        assert_eq!(lex.goal, Some(parse_formula("s").unwrap()));
        assert!(matches!(lex.lookup("snores"), Err(SemanticsError::UnknownWord(_))));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_grammar("atom s : t\nword x : s = lam y. y").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_grammar("atom s : q").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_grammar("atom s : t\nword x : s = (f A)").unwrap_err();
        assert!(e.msg.contains("unbound"), "{}", e);
        let e = parse_grammar("atom s : t\nword x : np = A").unwrap_err();
        assert!(e.msg.contains("np"), "{}", e);
        assert!(parse_grammar("frobnicate").is_err());
        assert!(parse_grammar("const lower : e").is_err());
    }

    #[test]
    fn ill_typed_entry_rejected() {
        let src = "atom s : t\natom np : e\nconst J : e\nword J : np \\ s = J";
        assert!(parse_grammar(src).unwrap_err().msg.contains("type mismatch"));
    }
}
