#![no_main]

use agbound::satake::CaseLabel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(label) = s.parse::<CaseLabel>() {
        // Parsed labels are valid, so every invariant is defined unless it
        // overflows.
        let _ = label.hss_dimension();
        let _ = label.rep_dimension();
        label.duality_type().unwrap();
        label.min_compact_factors().unwrap();
        assert_eq!(label.to_string().parse::<CaseLabel>().unwrap(), label);
    }
});
