//! Rational literals: parsing never panics, and any accepted value
//! round-trips through its canonical rendering.

#![no_main]

use apery_lab::arith::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // cap so pathological digit strings don't dominate fuzzing time
    if data.len() > 4096 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = parse_rational(s) {
            let again = parse_rational(&format_rational(&x)).expect("canonical form must parse");
            assert_eq!(again, x);
        }
    }
});
