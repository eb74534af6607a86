#![no_main]

use libfuzzer_sys::fuzz_target;
use sntrank::cli::{parse_graph, GraphFormat};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_graph(text, GraphFormat::Auto) {
            assert!(g.order() <= sntrank::cli::MAX_VERTICES);
        }
    }
});
