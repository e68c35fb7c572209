#![no_main]

use agbound::tables::{check_against_fixture, table5};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let table = table5(false).unwrap();
    let _ = check_against_fixture(&table, s);
});
