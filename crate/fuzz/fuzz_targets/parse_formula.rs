#![no_main]

use libfuzzer_sys::fuzz_target;
use lgsem::formula::parse_formula;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = parse_formula(s) {
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
});
