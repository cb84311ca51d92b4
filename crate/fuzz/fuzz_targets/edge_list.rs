#![no_main]

use libfuzzer_sys::fuzz_target;
use walkgauge::{emit_edge_list, parse_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_edge_list(text) {
        let back = parse_edge_list(&emit_edge_list(&g)).expect("emitted edge list parses");
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edge_count(), g.edge_count());
    }
});
