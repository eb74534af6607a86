#![no_main]

use libfuzzer_sys::fuzz_target;
use sntrank::cli::parse_cover;

// The first byte picks the ground set size.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(c) = parse_cover(text, usize::from(n % 16)) {
            assert!(c.components().iter().all(|k| !k.is_empty()));
        }
    }
});
