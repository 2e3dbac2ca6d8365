pub mod formula;
pub mod lp;
mod term_syntax;
pub mod sequent;
pub mod calculus;
pub mod structural;
pub mod search;
pub mod semantics;
pub mod cbncbv;
