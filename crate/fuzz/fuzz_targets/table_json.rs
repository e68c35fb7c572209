#![no_main]

use agbound::tables::TableSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = TableSet::from_json(s) {
        let again = TableSet::from_json(&set.to_json()).unwrap();
        assert_eq!(again, set);
        let _ = set.to_csv();
        let _ = set.to_markdown();
    }
});
