//! ASCII surface syntax for formulas and structures.
//!
//! Formulas: atoms are lowercase identifiers; binary `*` `+` `/` `\` `./`
//! `.\`; unary `ln(..)` `rn(..)` `lc(..)` `rc(..)`. Structures add the binary
//! tokens `.` `o` `->` `<-` `</` `/>` and the unary `LN{..}` `RN{..}` `LC{..}`
//! `RC{..}`. Every binary operator is non-associative. Formula operators share
//! one precedence level and structural operators sit one level below them, so
//! `(np\s)/np . np` needs no extra parentheses but `a * b * c` does.

use thiserror::Error;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BinOp {
    Tensor,
    Par,
    Over,
    Under,
    RSub,
    LSub,
    // structural
    SProd,
    SPar,
    SOver,
    SUnder,
    SRSub,
    SLSub,
}

impl BinOp {
    pub(crate) fn is_structural(self) -> bool {
        matches!(
            self,
            BinOp::SProd | BinOp::SPar | BinOp::SOver | BinOp::SUnder | BinOp::SRSub | BinOp::SLSub
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UnOp {
    LNeg,
    RNeg,
    LCoNeg,
    RCoNeg,
    SLNeg,
    SRNeg,
    SLCoNeg,
    SRCoNeg,
}

impl UnOp {
    pub(crate) fn is_structural(self) -> bool {
        matches!(self, UnOp::SLNeg | UnOp::SRNeg | UnOp::SLCoNeg | UnOp::SRCoNeg)
    }
}

/// Parse tree shared by the formula and sequent readers.
#[derive(Clone, Debug)]
pub(crate) enum Node {
    Atom(String, usize),
    Bin(BinOp, Box<Node>, Box<Node>, usize),
    Un(UnOp, Box<Node>, usize),
}

impl Node {
    pub(crate) fn pos(&self) -> usize {
        match self {
            Node::Atom(_, p) | Node::Bin(_, _, _, p) | Node::Un(_, _, p) => *p,
        }
    }

    pub(crate) fn into_formula(self) -> Result<Formula, ParseError> {
        Ok(match self {
            Node::Atom(name, _) => Formula::Atom(name),
            Node::Bin(op, l, r, pos) => {
                let (l, r) = (l.into_formula()?, r.into_formula()?);
                match op {
                    BinOp::Tensor => Formula::tensor(l, r),
                    BinOp::Par => Formula::par(l, r),
                    BinOp::Over => Formula::over(l, r),
                    BinOp::Under => Formula::under(l, r),
                    BinOp::RSub => Formula::rsub(l, r),
                    BinOp::LSub => Formula::lsub(l, r),
                    _ => return Err(ParseError::new(pos, "structural operator inside a formula")),
                }
            }
            Node::Un(op, a, pos) => {
                let a = a.into_formula()?;
                match op {
                    UnOp::LNeg => Formula::lneg(a),
                    UnOp::RNeg => Formula::rneg(a),
                    UnOp::LCoNeg => Formula::lconeg(a),
                    UnOp::RCoNeg => Formula::rconeg(a),
                    _ => return Err(ParseError::new(pos, "structural operator inside a formula")),
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Bin(BinOp),
    Un(UnOp),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Turnstile,
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let two = |s: &[u8]| bytes.len() >= i + 2 && &bytes[i..i + 2] == s;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let (tok, len) = if two(b"|-") {
            (Tok::Turnstile, 2)
        } else if two(b"./") {
            (Tok::Bin(BinOp::RSub), 2)
        } else if two(b".\\") {
            (Tok::Bin(BinOp::LSub), 2)
        } else if two(b"->") {
            (Tok::Bin(BinOp::SOver), 2)
        } else if two(b"<-") {
            (Tok::Bin(BinOp::SUnder), 2)
        } else if two(b"</") {
            (Tok::Bin(BinOp::SRSub), 2)
        } else if two(b"/>") {
            (Tok::Bin(BinOp::SLSub), 2)
        } else {
            match c {
                b'*' => (Tok::Bin(BinOp::Tensor), 1),
                b'+' => (Tok::Bin(BinOp::Par), 1),
                b'/' => (Tok::Bin(BinOp::Over), 1),
                b'\\' => (Tok::Bin(BinOp::Under), 1),
                b'.' => (Tok::Bin(BinOp::SProd), 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'{' => (Tok::LBrace, 1),
                b'}' => (Tok::RBrace, 1),
                c if c.is_ascii_alphabetic() => {
                    let mut j = i + 1;
                    while j < bytes.len()
                        && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
                    {
                        j += 1;
                    }
                    let word = &src[i..j];
                    let next_is = |b: u8| bytes[j..].iter().find(|c| !c.is_ascii_whitespace()) == Some(&b);
                    let tok = match word {
                        "ln" if next_is(b'(') => Tok::Un(UnOp::LNeg),
                        "rn" if next_is(b'(') => Tok::Un(UnOp::RNeg),
                        "lc" if next_is(b'(') => Tok::Un(UnOp::LCoNeg),
                        "rc" if next_is(b'(') => Tok::Un(UnOp::RCoNeg),
                        "LN" => Tok::Un(UnOp::SLNeg),
                        "RN" => Tok::Un(UnOp::SRNeg),
                        "LC" => Tok::Un(UnOp::SLCoNeg),
                        "RC" => Tok::Un(UnOp::SRCoNeg),
                        _ if c.is_ascii_lowercase() => Tok::Ident(word.to_string()),
                        _ => {
                            return Err(ParseError::new(
                                i,
                                format!("atom `{}` must start with a lowercase letter", word),
                            ))
                        }
                    };
                    (tok, j - i)
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::new(i, format!("unexpected character `{}`", ch)));
                }
            }
        };
        out.push((tok, start));
        i += len;
    }
    Ok(out)
}

pub(crate) struct NodeParser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    /// Whether `o` in operator position reads as the structural par.
    structural: bool,
}

impl NodeParser {
    pub(crate) fn new(src: &str, structural: bool) -> Result<Self, ParseError> {
        Ok(NodeParser {
            toks: lex(src)?,
            at: 0,
            end: src.len(),
            structural,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError::new(pos, format!("expected {}", what))),
        }
    }

    fn binop(&self) -> Option<BinOp> {
        match self.peek() {
            Some(Tok::Bin(op)) if self.structural || !op.is_structural() => Some(*op),
            Some(Tok::Ident(w)) if self.structural && w == "o" => Some(BinOp::SPar),
            _ => None,
        }
    }

    /// `expr := tight (structural-op tight)?`, `tight := operand (formula-op operand)?`.
    /// Structural operators bind more loosely than formula operators, so
    /// `a / b . c` is `(a / b) . c`. Within each level there is no
    /// associativity.
    pub(crate) fn expr(&mut self) -> Result<Node, ParseError> {
        let start = self.pos();
        let lhs = self.tight()?;
        if let Some(op) = self.binop().filter(|op| op.is_structural()) {
            self.bump();
            let rhs = self.tight()?;
            if self.binop().is_some() {
                return Err(self.ambiguous());
            }
            return Ok(Node::Bin(op, Box::new(lhs), Box::new(rhs), start));
        }
        Ok(lhs)
    }

    fn tight(&mut self) -> Result<Node, ParseError> {
        let start = self.pos();
        let lhs = self.operand()?;
        if let Some(op) = self.binop().filter(|op| !op.is_structural()) {
            self.bump();
            let rhs = self.operand()?;
            if self.binop().is_some_and(|op| !op.is_structural()) {
                return Err(self.ambiguous());
            }
            return Ok(Node::Bin(op, Box::new(lhs), Box::new(rhs), start));
        }
        Ok(lhs)
    }

    fn ambiguous(&self) -> ParseError {
        ParseError::new(
            self.pos(),
            "ambiguous operator sequence; binary operators are non-associative, add parentheses",
        )
    }

    fn operand(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(Node::Atom(name, pos)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Un(op)) => {
                let (open, close, what) = if op.is_structural() {
                    (Tok::LBrace, Tok::RBrace, "`}`")
                } else {
                    (Tok::LParen, Tok::RParen, "`)`")
                };
                if op.is_structural() && !self.structural {
                    return Err(ParseError::new(pos, "structural operator inside a formula"));
                }
                self.expect(open, if op.is_structural() { "`{`" } else { "`(`" })?;
                let inner = self.expr()?;
                self.expect(close, what)?;
                Ok(Node::Un(op, Box::new(inner), pos))
            }
            Some(_) => Err(ParseError::new(pos, "expected an atom, `(` or a unary operator")),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parses the ASCII formula syntax.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = NodeParser::new(src, false)?;
    let node = p.expr()?;
    if !p.at_end() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    node.into_formula()
}
