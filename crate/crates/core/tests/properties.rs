use std::sync::Arc;

use chainhull::arith::mod_pow;
use chainhull::cosetlab::CosetAtlas;
use chainhull::hullcount::{aleph, average_dim, average_from_counts, hull_counts, HullSetting};
use chainhull::io::{parse_grid, parse_multiset_text, parse_report, parse_ring};
use chainhull::ringpoly::RingSpec;
use chainhull::serialcodes::{DefiningMultiset, TripleSequence};
use num_bigint::BigUint;
use proptest::prelude::*;

fn small_setting() -> impl Strategy<Value = (u64, u64, u32)> {
    (prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), 1u64..40, 1u32..6)
        .prop_filter("coprime", |(q, n, _)| chainhull::arith::gcd(*q, *n) == 1)
}

fn multiset_for(q: u64, n: u64, s: u32) -> impl Strategy<Value = DefiningMultiset> {
    let atlas = Arc::new(CosetAtlas::build(n, q).unwrap());
    prop::collection::vec(0..=s, atlas.omega).prop_map(move |levels| {
        DefiningMultiset::from_levels(Arc::clone(&atlas), s, levels).unwrap()
    })
}

proptest! {
    #[test]
    fn double_dual_is_a_frobenius_scaling(
        m in (prop::sample::select(vec![(2u64, 7u64), (2, 15), (3, 8), (4, 21), (8, 7)]), 1u32..5)
            .prop_flat_map(|((q, n), s)| multiset_for(q, n, s)),
        ell in 0u32..3,
        h in 0u32..3,
    ) {
        let p = if m.q() % 2 == 0 { 2 } else { 3 };
        let twice = m.dual(p, ell).unwrap().dual(p, h).unwrap();
        let n = m.n();
        prop_assert_eq!(twice, m.scale(mod_pow(p, (ell + h) as u64, n) as i64).unwrap());
    }

    #[test]
    fn dual_dimension_law(m in (small_setting()).prop_flat_map(|(q, n, s)| multiset_for(q, n, s))) {
        let p = if m.q() % 3 == 0 { 3 } else if m.q() % 5 == 0 { 5 } else if m.q() % 7 == 0 { 7 } else { 2 };
        let d = m.dual(p, 0).unwrap();
        prop_assert_eq!(m.q_dimension() + d.q_dimension(), m.s() as usize * m.n() as usize);
        let hull = m.hull(p, 0).unwrap();
        prop_assert!(hull.q_dimension() <= m.q_dimension().min(d.q_dimension()));
    }

    #[test]
    fn triple_sequences_round_trip(m in (small_setting()).prop_flat_map(|(q, n, s)| multiset_for(q, n, s))) {
        let t = TripleSequence::from_multiset(&m);
        prop_assert_eq!(t.to_multiset(Arc::clone(m.atlas())).unwrap(), m);
    }

    #[test]
    fn counts_sum_and_average((q, n, s) in small_setting()) {
        let p = [2u64, 3, 5, 7].into_iter().find(|p| q % p == 0).unwrap();
        let r = (1..).find(|&r| p.pow(r) == q).unwrap();
        let st = HullSetting::new(RingSpec::galois(p, s, r).unwrap(), n).unwrap();
        let counts = hull_counts(&st).unwrap();
        let total: BigUint = counts.values().sum();
        prop_assert_eq!(total, BigUint::from(st.s + 1).pow(st.atlas.omega as u32));
        prop_assert_eq!(average_from_counts(&counts).unwrap(), average_dim(&st).unwrap());
        prop_assert_eq!(counts.keys().copied().collect::<Vec<_>>(), aleph(&st).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn parsers_never_panic(text in ".{0,64}") {
        let _ = parse_ring(&text);
        let _ = parse_multiset_text(&text);
        let _ = parse_grid(&text);
        let _ = parse_report(&text);
    }

    #[test]
    fn ring_specs_round_trip(p in prop::sample::select(vec![2u64, 3, 5]), a in 1u32..4, r in 1u32..4) {
        let spec = RingSpec::galois(p, a, r).unwrap();
        prop_assert_eq!(parse_ring(&spec.to_string()).unwrap(), spec);
    }
}
