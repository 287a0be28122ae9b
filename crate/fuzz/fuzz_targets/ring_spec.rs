#![no_main]
use chainhull::io::parse_ring;
use chainhull::ringpoly::{ChainRing, TABLE_LIMIT};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = parse_ring(text) else {
        return;
    };
    assert_eq!(parse_ring(&spec.to_string()).unwrap(), spec);
    // Only build rings small enough to tabulate quickly.
    if spec.size().is_some_and(|n| n <= TABLE_LIMIT as u128) {
        if let Ok(ring) = ChainRing::new(spec) {
            let one = ring.one();
            assert_eq!(ring.mul(one, one), one);
        }
    }
});
