#![no_main]

use libfuzzer_sys::fuzz_target;
use lgsem::lp::parse_lin_term;
use lgsem::semantics::SimpleTerm;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = parse_lin_term(s) {
            assert!(parse_lin_term(&t.to_string()).unwrap().alpha_eq(&t));
        }
        if let Ok(t) = SimpleTerm::parse(s) {
            assert!(SimpleTerm::parse(&t.to_ascii()).unwrap().alpha_eq(&t));
        }
    }
});
