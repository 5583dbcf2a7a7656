#![no_main]

use libfuzzer_sys::fuzz_target;
use starpath::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = Graph::from_edge_list(text) {
        // round-trip: re-parsing the printed form reproduces the graph
        let printed = g.to_edge_list();
        let back = Graph::from_edge_list(&printed).expect("printed form parses");
        assert_eq!(back, g);
    }
});
