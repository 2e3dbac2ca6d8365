#![no_main]

use libfuzzer_sys::fuzz_target;
use lgsem::formula::parse_formula;
use lgsem::sequent::parse_sequent;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = parse_sequent(s) {
            for l in q.leaves() {
                assert_eq!(parse_formula(&l.formula.to_string()).unwrap(), l.formula);
            }
        }
    }
});
