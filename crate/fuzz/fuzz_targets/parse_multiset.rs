#![no_main]

use agbound::efficiency::{is_efficient_closed, is_efficient_oracle, Multiset};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = s.parse::<Multiset>() {
        assert_eq!(is_efficient_closed(&m), is_efficient_oracle(&m), "{m}");
        assert_eq!(m.to_string().parse::<Multiset>().unwrap(), m);
    }
});
