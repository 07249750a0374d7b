//! CSV report files: decoding never panics, and any accepted row set
//! survives a write/read cycle unchanged.

#![no_main]

use apery_lab::report::{read_csv, write_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(rows) = read_csv(data) {
        let mut bytes = Vec::new();
        write_csv(&rows, &mut bytes).expect("writing to memory cannot fail");
        let again = read_csv(bytes.as_slice()).expect("emitted csv must parse");
        assert_eq!(again, rows);
    }
});
