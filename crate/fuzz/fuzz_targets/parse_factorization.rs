#![no_main]

use libfuzzer_sys::fuzz_target;
use sntrank::cli::parse_factorization;
use sntrank::factor::{factors_to_cover, triproduct};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((b, c)) = parse_factorization(text) {
            let _ = triproduct(&b, &c);
            let _ = factors_to_cover(&b, &c);
        }
    }
});
