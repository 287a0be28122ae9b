#![no_main]
use std::sync::Arc;

use chainhull::cosetlab::CosetAtlas;
use chainhull::io::parse_multiset_text;
use chainhull::serialcodes::DefiningMultiset;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(input) = parse_multiset_text(text) else {
        return;
    };
    let n = input.n.unwrap_or(7);
    let s = input.s.unwrap_or(input.parts.len().saturating_sub(1) as u32);
    if n == 0 || n > 256 || s == 0 || s > 16 {
        return;
    }
    let Ok(atlas) = CosetAtlas::build(n, 2) else {
        return;
    };
    let atlas = Arc::new(atlas);
    if let Ok(m) = input.resolve(Arc::clone(&atlas), s) {
        // Representatives written back out must name the same multiset.
        let again = DefiningMultiset::from_reps(Arc::clone(&atlas), s, &m.reps()).unwrap();
        assert_eq!(again, m);
        assert_eq!(m.diamond().diamond(), m);
    }
});
