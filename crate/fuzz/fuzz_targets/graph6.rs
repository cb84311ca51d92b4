#![no_main]

use libfuzzer_sys::fuzz_target;
use walkgauge::{emit_graph6, parse_graph6};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_graph6(data) {
        let line = emit_graph6(&g);
        assert_eq!(parse_graph6(line.as_bytes()).as_ref(), Ok(&g));
    }
});
