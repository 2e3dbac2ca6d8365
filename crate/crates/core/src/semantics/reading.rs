use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{check_term, delinearize_term, delinearize_type, Lexicon, SemanticsError, SimpleTerm, SimpleType, DEFAULT_FUEL};
use crate::calculus::Polarized;
use crate::formula::Formula;
use crate::search::{search_with, SearchLimits};
use crate::sequent::names::Pool;
use crate::sequent::{CoStructure, Sequent, Structure};
use crate::structural::RulePackage;

/// Binary phrase structure over words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Word(String),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(a: Tree, b: Tree) -> Tree {
        Tree::Node(Box::new(a), Box::new(b))
    }

    pub fn words(&self) -> Vec<&str> {
        match self {
            Tree::Word(w) => vec![w],
            Tree::Node(a, b) => {
                let mut v = a.words();
                v.extend(b.words());
                v
            }
        }
    }

    fn structure(&self, leaves: &mut impl Iterator<Item = Structure>) -> Structure {
        match self {
            Tree::Word(_) => leaves.next().expect("one leaf per word"),
            Tree::Node(a, b) => {
                let l = a.structure(leaves);
                Structure::prod(l, b.structure(leaves))
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Word(w) => write!(f, "{}", w),
            Tree::Node(a, b) => write!(f, "[{} {}]", a, b),
        }
    }
}

enum Item {
    Word(String),
    Group(Vec<Item>),
}

fn items(src: &str) -> Result<Vec<Item>, SemanticsError> {
    let mut stack: Vec<Vec<Item>> = vec![Vec::new()];
    let mut word = String::new();
    let flush = |word: &mut String, stack: &mut Vec<Vec<Item>>| {
        if !word.is_empty() {
            stack.last_mut().expect("stack is never empty").push(Item::Word(std::mem::take(word)));
        }
    };
    for c in src.chars() {
        match c {
            '[' => {
                flush(&mut word, &mut stack);
                stack.push(Vec::new());
            }
            ']' => {
                flush(&mut word, &mut stack);
                if stack.len() < 2 {
                    return Err(SemanticsError::Bracketing("unmatched `]`".into()));
                }
                let group = stack.pop().expect("checked above");
                stack.last_mut().expect("checked above").push(Item::Group(group));
            }
            c if c.is_whitespace() => flush(&mut word, &mut stack),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut stack);
    if stack.len() != 1 {
        return Err(SemanticsError::Bracketing("unclosed `[`".into()));
    }
    Ok(stack.pop().expect("one level left"))
}

fn to_tree(mut group: Vec<Item>) -> Result<Tree, SemanticsError> {
    match group.len() {
        0 => Err(SemanticsError::Bracketing("empty brackets".into())),
        1 => match group.pop().expect("length one") {
            Item::Word(w) => Ok(Tree::Word(w)),
            Item::Group(g) => to_tree(g),
        },
        2 => {
            let b = group.pop().expect("length two");
            let a = group.pop().expect("length two");
            let conv = |i: Item| match i {
                Item::Word(w) => Ok(Tree::Word(w)),
                Item::Group(g) => to_tree(g),
            };
            Ok(Tree::node(conv(a)?, conv(b)?))
        }
        n => Err(SemanticsError::Bracketing(format!("a bracket holds {} constituents; trees must be binary", n))),
    }
}

/// Parse a bracketed phrase such as `[mathematician [who [founded intuitionism]]]`.
pub fn parse_tree(src: &str) -> Result<Tree, SemanticsError> {
    to_tree(items(src)?)
}

/// Every binary bracketing of `words`, in a fixed order.
pub fn bracketings(words: &[String]) -> Vec<Tree> {
    match words.len() {
        0 => Vec::new(),
        1 => vec![Tree::Word(words[0].clone())],
        n => {
            let mut out = Vec::new();
            for k in 1..n {
                for l in bracketings(&words[..k]) {
                    for r in bracketings(&words[k..]) {
                        out.push(Tree::node(l.clone(), r));
                    }
                }
            }
            out
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReadingOptions {
    pub pkg: RulePackage,
    pub lim: SearchLimits,
    /// Enumerate bracketings when the input has no brackets.
    pub all_brackets: bool,
}

/// A normalized meaning with the covariable `γ` free for the goal.
#[derive(Clone, Debug)]
pub struct Reading {
    pub term: SimpleTerm,
    /// Derivations (across bracketings and lexical choices) yielding it.
    pub derivations: usize,
    pub bracketing: String,
}

/// Step an odometer over lexical choices; false once it wraps around.
fn advance<T>(idx: &mut [usize], choices: &[&[T]]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < choices[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// The name of the goal covariable in every reading.
pub const GOAL: &str = "γ";

pub fn reading(sentence: &str, category: &Formula, lex: &Lexicon, opts: &ReadingOptions) -> Result<Vec<Reading>, SemanticsError> {
    let trees = if sentence.contains('[') || sentence.contains(']') {
        vec![parse_tree(sentence)?]
    } else {
        let words: Vec<String> = sentence.split_whitespace().map(str::to_string).collect();
        if words.len() > 1 && !opts.all_brackets {
            return Err(SemanticsError::Bracketing("several words without brackets; bracket them or enumerate bracketings".into()));
        }
        let trees = bracketings(&words);
        if trees.is_empty() {
            return Err(SemanticsError::Bracketing("no words".into()));
        }
        trees
    };
    let goal_ty = delinearize_type(&category.output_type(), &lex.base)?;
    let mut readings: Vec<Reading> = Vec::new();
    let mut capped = false;
    let mut last_goal = String::new();
    for tree in &trees {
        let words = tree.words();
        let choices: Vec<_> = words.iter().map(|w| lex.lookup(w)).collect::<Result<_, _>>()?;
        let mut idx = vec![0usize; words.len()];
        loop {
            let picked: Vec<_> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            let mut pool = Pool::vars(BTreeSet::new());
            let labels: Vec<String> = picked.iter().map(|_| pool.next_name()).collect();
            let mut leaves = picked.iter().zip(&labels).map(|(e, x)| Structure::leaf(e.formula.clone(), x.clone()));
            let goal = Sequent::Unfocused(tree.structure(&mut leaves), CoStructure::leaf(category.clone(), GOAL));
            last_goal = goal.to_string();
            let res = search_with(&Polarized, &goal, opts.pkg, opts.lim).expect("the goal is unfocused");
            capped |= res.capped && res.derivations.is_empty();
            let sub: BTreeMap<String, SimpleTerm> = labels.iter().cloned().zip(picked.iter().map(|e| e.term.clone())).collect();
            let ctx = [(GOAL.to_string(), goal_ty.clone())];
            for d in &res.derivations {
                let m = delinearize_term(&d.term).subst_many(&sub);
                check_term(&m, &ctx, &lex.consts, &SimpleType::T)?;
                let nf = m.normalize(DEFAULT_FUEL)?;
                match readings.iter_mut().find(|r| r.term.alpha_eq(&nf)) {
                    Some(r) => r.derivations += 1,
                    None => readings.push(Reading {
                        term: nf,
                        derivations: 1,
                        bracketing: tree.to_string(),
                    }),
                }
            }
            if !advance(&mut idx, &choices) {
                break;
            }
        }
    }
    if readings.is_empty() {
        return Err(if capped {
            SemanticsError::DepthExceeded(last_goal)
        } else {
            SemanticsError::NoDerivation(last_goal)
        });
    }
    Ok(readings)
}
