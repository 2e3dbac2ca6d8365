use std::collections::BTreeSet;

use super::names::Pool;
use super::{CoStructure, Sequent, Structure};
use crate::formula::parse::{BinOp, Node, NodeParser, Tok, UnOp};
use crate::formula::ParseError;

/// Parse `Γ |- Π`. Leaves are formulas; variables are assigned left to
/// right from the standard pools.
pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = NodeParser::new(src, true)?;
    let lhs = p.expr()?;
    let pos = p.pos();
    if p.bump() != Some(Tok::Turnstile) {
        return Err(ParseError::new(pos, "expected `|-`"));
    }
    let rhs = p.expr()?;
    if !p.at_end() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    let mut b = Builder {
        vars: Pool::vars(BTreeSet::new()),
        covars: Pool::covars(BTreeSet::new()),
    };
    let g = b.input(lhs)?;
    let d = b.output(rhs)?;
    Ok(Sequent::Unfocused(g, d))
}

fn is_formula(n: &Node) -> bool {
    match n {
        Node::Atom(..) => true,
        Node::Bin(op, l, r, _) => !op.is_structural() && is_formula(l) && is_formula(r),
        Node::Un(op, a, _) => !op.is_structural() && is_formula(a),
    }
}

struct Builder {
    vars: Pool,
    covars: Pool,
}

impl Builder {
    fn input(&mut self, n: Node) -> Result<Structure, ParseError> {
        if is_formula(&n) {
            let f = n.into_formula()?;
            return Ok(Structure::InLeaf(f, self.vars.next_name()));
        }
        let pos = n.pos();
        match n {
            Node::Bin(BinOp::SProd, l, r, _) => {
                let l = self.input(*l)?;
                Ok(Structure::prod(l, self.input(*r)?))
            }
            Node::Bin(BinOp::SRSub, l, r, _) => {
                let l = self.input(*l)?;
                Ok(Structure::rsub(l, self.output(*r)?))
            }
            Node::Bin(BinOp::SLSub, l, r, _) => {
                let l = self.output(*l)?;
                Ok(Structure::lsub(l, self.input(*r)?))
            }
            Node::Un(UnOp::SRCoNeg, a, _) => Ok(Structure::rconeg(self.output(*a)?)),
            Node::Un(UnOp::SLCoNeg, a, _) => Ok(Structure::lconeg(self.output(*a)?)),
            _ => Err(ParseError::new(pos, "not an antecedent structure")),
        }
    }

    fn output(&mut self, n: Node) -> Result<CoStructure, ParseError> {
        if is_formula(&n) {
            let f = n.into_formula()?;
            return Ok(CoStructure::OutLeaf(f, self.covars.next_name()));
        }
        let pos = n.pos();
        match n {
            Node::Bin(BinOp::SPar, l, r, _) => {
                let l = self.output(*l)?;
                Ok(CoStructure::par(l, self.output(*r)?))
            }
            Node::Bin(BinOp::SUnder, l, r, _) => {
                let l = self.output(*l)?;
                Ok(CoStructure::under(l, self.input(*r)?))
            }
            Node::Bin(BinOp::SOver, l, r, _) => {
                let l = self.input(*l)?;
                Ok(CoStructure::over(l, self.output(*r)?))
            }
            Node::Un(UnOp::SLNeg, a, _) => Ok(CoStructure::lneg(self.input(*a)?)),
            Node::Un(UnOp::SRNeg, a, _) => Ok(CoStructure::rneg(self.input(*a)?)),
            _ => Err(ParseError::new(pos, "not a consequent structure")),
        }
    }
}
