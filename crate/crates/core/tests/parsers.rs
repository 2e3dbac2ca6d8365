use proptest::prelude::*;

use lgsem::formula::parse_formula;
use lgsem::lp::parse_lin_term;
use lgsem::semantics::{parse_grammar, SimpleTerm};
use lgsem::sequent::parse_sequent;

// Inputs built from the tokens the parsers know, so that a good share of
// them get past the lexer.
fn soup() -> impl Strategy<Value = String> {
    let tokens = prop::sample::select(vec![
        "a", "np", "s", "X", "lam", "x", ".", ",", "(", ")", "<", ">", "*", "+", "/", "\\", "./", ".\\", "|-", "o", "->", "<-", "</", "/>",
        "ln(", "rc(", "LN{", "RC{", "}", "/\\", "p1", "p2", "ε", " ", "\n", ":", "=", "word", "atom", "const", "goal", "#",
    ]);
    prop::collection::vec(tokens, 0..24).prop_map(|v| v.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn formula_parser_never_panics(s in soup()) {
        let _ = parse_formula(&s);
    }

    #[test]
    fn sequent_parser_never_panics(s in soup()) {
        if let Ok(q) = parse_sequent(&s) {
            // leaves print as formulas that parse back to themselves
            for l in q.leaves() {
                prop_assert_eq!(parse_formula(&l.formula.to_string()).unwrap(), l.formula);
            }
        }
    }

    #[test]
    fn term_parsers_never_panic(s in soup()) {
        if let Ok(t) = parse_lin_term(&s) {
            prop_assert!(parse_lin_term(&t.to_string()).unwrap().alpha_eq(&t));
        }
        if let Ok(t) = SimpleTerm::parse(&s) {
            prop_assert!(SimpleTerm::parse(&t.to_ascii()).unwrap().alpha_eq(&t));
        }
    }

    #[test]
    fn grammar_parser_never_panics(s in soup()) {
        let _ = parse_grammar(&s);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,40}") {
        let _ = parse_formula(&s);
        let _ = parse_sequent(&s);
        let _ = parse_lin_term(&s);
        let _ = SimpleTerm::parse(&s);
        let _ = parse_grammar(&s);
    }
}

// The fuzz corpus seeds are all well-formed inputs.
#[test]
fn fuzz_seeds_parse() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let read = |dir: &str| -> Vec<(String, String)> {
        let mut v: Vec<_> = std::fs::read_dir(root.join(dir))
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (p.display().to_string(), std::fs::read_to_string(&p).unwrap())
            })
            .collect();
        v.sort();
        assert!(!v.is_empty(), "{} has no seeds", dir);
        v
    };
    for (p, s) in read("parse_formula") {
        parse_formula(&s).unwrap_or_else(|e| panic!("{}: {}", p, e));
    }
    for (p, s) in read("parse_sequent") {
        parse_sequent(&s).unwrap_or_else(|e| panic!("{}: {}", p, e));
    }
    for (p, s) in read("parse_term") {
        assert!(parse_lin_term(&s).is_ok() || SimpleTerm::parse(&s).is_ok(), "{}", p);
    }
    for (p, s) in read("parse_grammar") {
        parse_grammar(&s).unwrap_or_else(|e| panic!("{}: {}", p, e));
    }
}
