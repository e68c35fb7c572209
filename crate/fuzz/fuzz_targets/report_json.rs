#![no_main]

use agbound::VerificationReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<VerificationReport>(data) {
        let again: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(again, report);
    }
});
