#![no_main]

use libfuzzer_sys::fuzz_target;
use starpath::parse_coloring_text;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // must never panic; accepted assignments are well-formed triples
    if let Ok(assignments) = parse_coloring_text(text) {
        for (u, v, _) in assignments {
            assert!(u < v);
        }
    }
});
