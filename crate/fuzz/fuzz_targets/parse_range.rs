#![no_main]

use agbound::GenusRange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = s.parse::<GenusRange>() {
        assert!(r.start <= r.end);
        assert_eq!(r.to_string().parse::<GenusRange>().unwrap(), r);
    }
});
