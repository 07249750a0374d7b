//! JSONL report rows: parsing never panics, and any accepted row
//! survives a serialize/parse cycle unchanged.

#![no_main]

use apery_lab::report::parse_jsonl_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(row) = parse_jsonl_line(s) {
            let again = parse_jsonl_line(&row.to_jsonl_line()).expect("emitted row must parse");
            assert_eq!(again, row);
        }
    }
});
