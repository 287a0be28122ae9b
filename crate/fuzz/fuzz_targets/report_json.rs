#![no_main]
use chainhull::io::parse_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = parse_report(text) {
        let again = parse_report(&report.to_json().unwrap()).unwrap();
        assert_eq!(again, report);
        let _ = report.to_table();
        let _ = report.to_csv();
    }
});
