#![no_main]

use libfuzzer_sys::fuzz_target;
use walkgauge::BetaGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = text.parse::<BetaGrid>() {
        let v = grid.values();
        assert!(!v.is_empty());
        assert!(v.iter().all(|b| b.is_finite() && *b > 0.0));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
});
