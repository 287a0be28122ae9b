#![no_main]
use chainhull::io::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cases) = parse_grid(text) {
        for case in cases {
            assert!(!case.n.is_empty());
            assert!(case.ell.iter().all(|&l| l < case.spec.r));
        }
    }
});
