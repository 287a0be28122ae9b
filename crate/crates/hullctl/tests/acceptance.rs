//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Lines marked as known red print FAIL with the reason and do not fail the
//! run; any other FAIL exits nonzero.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chainhull::bruteforce::{brute_dual, enumerate_codewords, profile_of_set, verify_case, Ambient, DEFAULT_BRUTE_BUDGET};
use chainhull::cosetlab::{in_nq, CosetAtlas};
use chainhull::grarith::{poly, GaloisRing, OmegaTable};
use chainhull::hullcount::{
    average_dim, bnq, bounds, exact_enumeration, hull_counts, HullReport, HullSetting,
};
use chainhull::ringpoly::{ChainRing, RingElem, RingSpec};
use chainhull::serialcodes::CodeSpace;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

/// Wall-clock limit per reference table.
const TABLE_TIME_LIMIT: Duration = Duration::from_secs(1);
/// Wall-clock limit for the whole hull oracle grid.
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(600);
/// Budget for exact enumerations in this suite.
const EXACT_BUDGET: u128 = 10_000_000;

const KNOWN_RED: &[(&str, &str)] = &[
    (
        "1c",
        "the printed n=21 table drops k2=2 from rows (3,0) and (6,0) and gives row (6,3) values up to 15, \
         which break 2k0+k1+k2 <= 21; the transcription follows the stated bounds",
    ),
    (
        "7b",
        "with <u,v>_l = sum u_j s^l(v_j) the double dual is s^(l+h)(C); s^(2r-l-h) differs once r >= 3 \
         (see 7c for the corrected law)",
    ),
];

struct Harness {
    unexpected: Vec<String>,
    known: usize,
}

impl Harness {
    fn record(&mut self, id: &str, ok: bool, detail: String) {
        let red = KNOWN_RED.iter().find(|(k, _)| *k == id);
        match (ok, red) {
            (true, None) => println!("PASS  {id:<3} {detail}"),
            (true, Some(_)) => println!("PASS  {id:<3} {detail}  [listed as known red, now passing]"),
            (false, Some((_, why))) => {
                self.known += 1;
                println!("FAIL  {id:<3} {detail}  [known red: {why}]");
            }
            (false, None) => {
                self.unexpected.push(id.to_string());
                println!("FAIL  {id:<3} {detail}");
            }
        }
    }
}

fn gr(p: u64, a: u32, r: u32) -> RingSpec {
    RingSpec::galois(p, a, r).unwrap()
}

fn f8() -> RingSpec {
    gr(2, 1, 3)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rows `(k0, k1, [k2...])` of a printed table.
fn table(rows: &[(u64, u64, Vec<u64>)]) -> BTreeSet<Vec<u64>> {
    rows.iter()
        .flat_map(|(k0, k1, k2s)| k2s.iter().map(move |&k2| vec![*k0, *k1, k2]))
        .collect()
}

fn span(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).collect()
}

fn with(head: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    head.iter().copied().chain(lo..=hi).collect()
}

fn reference_tables() -> Vec<(&'static str, &'static str, u64, BTreeSet<Vec<u64>>)> {
    vec![
        (
            "1a",
            "Z8",
            7,
            table(&[(0, 0, vec![0, 1, 3, 4, 6, 7]), (0, 3, vec![0, 1]), (3, 0, vec![0, 1])]),
        ),
        (
            "1b",
            "Z27",
            11,
            table(&[(0, 0, vec![0, 1, 5, 6, 10, 11]), (0, 5, vec![0, 1]), (5, 0, vec![0, 1])]),
        ),
        (
            "1c",
            "Z8",
            21,
            table(&[
                (0, 0, span(0, 21)),
                (0, 3, vec![0, 1, 2, 3, 6, 7, 8, 9, 12, 13, 14, 15]),
                (0, 6, span(0, 9)),
                (0, 9, span(0, 3)),
                (3, 0, with(&[0, 1], 3, 15)),
                (3, 6, span(0, 9)),
                (6, 0, with(&[0, 1], 3, 9)),
                (6, 3, vec![0, 1, 2, 3, 6, 7, 8, 9, 12, 13, 14, 15]),
                (9, 0, span(0, 3)),
            ]),
        ),
    ]
}

fn criterion_1(h: &mut Harness) {
    for (id, ring, n, want) in reference_tables() {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_hullctl"))
            .args(["enumerate-hulls", "--ring", ring, "--n", &n.to_string(), "--method", "algorithm1"])
            .output()
            .expect("run hullctl");
        let elapsed = start.elapsed();
        let report = HullReport::from_json(&String::from_utf8_lossy(&out.stdout)).expect("report JSON");
        let got: BTreeSet<Vec<u64>> = report.tuples.into_iter().map(|t| t.k).collect();
        let extra: Vec<_> = got.difference(&want).collect();
        let missing: Vec<_> = want.difference(&got).collect();
        let ok = out.status.success() && extra.is_empty() && missing.is_empty() && elapsed < TABLE_TIME_LIMIT;
        let mut detail = format!("algorithm1 table n={n} over {ring}: {} tuples, {:.3}s", got.len(), elapsed.as_secs_f64());
        if !ok {
            detail += &format!("; not in table {extra:?}; table only {missing:?}");
        }
        h.record(id, ok, detail);
    }
}

fn criterion_2(h: &mut Harness) {
    let grid: Vec<(RingSpec, Vec<u64>)> = vec![
        (RingSpec::Z4, vec![1, 3, 5, 7]),
        (RingSpec::F2U2, vec![1, 3, 5, 7]),
        (RingSpec::Z8, vec![7]),
        (RingSpec::Z9, vec![2, 4]),
    ];
    let start = Instant::now();
    let (mut codes, mut bad) = (0u64, Vec::new());
    for (spec, ns) in &grid {
        for &n in ns {
            for ell in 0..spec.r {
                let summary = verify_case(*spec, n, ell, DEFAULT_BRUTE_BUDGET, 2).expect("oracle case");
                codes += summary.codes;
                bad.extend(summary.mismatches);
            }
        }
    }
    let elapsed = start.elapsed();
    let mut detail = format!(
        "analytic hull = exhaustive hull, with profiles, on {codes} codes, {} mismatches, {:.1}s",
        bad.len(),
        elapsed.as_secs_f64()
    );
    if let Some(m) = bad.first() {
        detail += &format!("; first: {}", serde_json::to_string(m).unwrap_or_default());
    }
    h.record("2", bad.is_empty() && elapsed < ORACLE_TIME_LIMIT, detail);
}

fn criterion_3(h: &mut Harness) {
    let space = CodeSpace::new(RingSpec::Z4, 7).unwrap();
    let code = space.code(space.multiset(&[vec![0], vec![3], vec![1]]).unwrap()).unwrap();
    let dual = code.dual(0).unwrap();
    let hull = code.hull(0).unwrap();
    let amb = Ambient::new(space.ring(), 7, DEFAULT_BRUTE_BUDGET).unwrap();
    let cset = enumerate_codewords(&amb, &code).unwrap();
    let brute = cset.intersection(&brute_dual(&cset, 0).unwrap());
    let checks = [
        ("dual multiset", dual.multiset().reps() == vec![vec![3], vec![1], vec![0]]),
        ("hull multiset", hull.multiset().reps() == vec![vec![], vec![3], vec![0, 1]]),
        ("hull q-dimension 3", hull.q_dimension() == 3),
        ("exhaustive hull q-dimension 3", brute.q_dimension() == Some(3)),
    ];
    let failed: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    h.record(
        "3",
        failed.is_empty(),
        format!("worked example mod 7, s=2: dual, hull and hull q-dimension; failed {failed:?}"),
    );
}

fn average_grid() -> Vec<(RingSpec, u64)> {
    vec![
        (RingSpec::Z4, 3),
        (RingSpec::Z4, 5),
        (RingSpec::Z4, 7),
        (RingSpec::Z8, 7),
        (RingSpec::Z27, 11),
        (RingSpec::F2U2, 7),
    ]
}

/// Mean hull `q`-dimension from exhaustive hull sets.
fn brute_average(spec: RingSpec, n: u64) -> BigRational {
    let space = CodeSpace::new(spec, n).unwrap();
    let amb = Ambient::new(space.ring(), n as usize, DEFAULT_BRUTE_BUDGET).unwrap();
    let (mut total, mut count) = (0i64, 0i64);
    for code in space.all_codes() {
        let c = enumerate_codewords(&amb, &code).unwrap();
        let hull = c.intersection(&brute_dual(&c, 0).unwrap());
        total += hull.q_dimension().unwrap() as i64;
        count += 1;
    }
    ratio(total, count)
}

fn criterion_4(h: &mut Harness) {
    let mut bad = Vec::new();
    for (spec, n) in average_grid() {
        let st = HullSetting::new(spec, n).unwrap();
        let closed = average_dim(&st).unwrap();
        let exact = exact_enumeration(&st, 0, EXACT_BUDGET).unwrap().average();
        if closed != exact {
            bad.push(format!("{spec} n={n}: {closed} vs {exact}"));
        }
    }
    h.record(
        "4a",
        bad.is_empty(),
        format!("closed-form average = exhaustive mean on {} grid points {bad:?}", average_grid().len()),
    );
    let frozen = [(RingSpec::Z4, 3, ratio(1, 1)), (RingSpec::Z8, 7, ratio(23, 4))];
    for (i, (spec, n, want)) in frozen.into_iter().enumerate() {
        let closed = average_dim(&HullSetting::new(spec, n).unwrap()).unwrap();
        let brute = brute_average(spec, n);
        h.record(
            ["4b", "4c"][i],
            closed == want && brute == want,
            format!("E({spec}, n={n}) = {want}: closed form {closed}, codeword sets {brute}"),
        );
    }
}

fn criterion_5(h: &mut Harness) {
    let mut bad = Vec::new();
    for (spec, n) in average_grid() {
        let st = HullSetting::new(spec, n).unwrap();
        let counts = hull_counts(&st).unwrap();
        let total: BigUint = counts.values().sum();
        let codes = BigUint::from(st.code_count().unwrap());
        let weighted: BigUint = counts.iter().map(|(&t, c)| c * t).sum();
        let e = average_dim(&st).unwrap();
        let tally = exact_enumeration(&st, 0, EXACT_BUDGET).unwrap();
        let exact: BTreeMap<u64, BigUint> = tally.taus.iter().map(|(&t, &c)| (t, BigUint::from(c))).collect();
        if total != codes {
            bad.push(format!("{spec} n={n}: sum {total} != {codes}"));
        }
        if BigRational::from_integer(BigInt::from(weighted)) != e * BigRational::from_integer(BigInt::from(codes)) {
            bad.push(format!("{spec} n={n}: weighted sum"));
        }
        if counts != exact {
            bad.push(format!("{spec} n={n}: per-tau counts"));
        }
    }
    h.record("5", bad.is_empty(), format!("counting identities and per-tau agreement {bad:?}"));
}

fn ring_poly(ring: &ChainRing, f: &[Vec<u64>]) -> Vec<RingElem> {
    f.iter().map(|c| ring.from_gr(c)).collect()
}

fn mul(ring: &ChainRing, f: &[RingElem], g: &[RingElem]) -> Vec<RingElem> {
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(a, b));
        }
    }
    out
}

/// Number of coset unions `A` with `Ω(A)* ≠ Ω(-A)`, by depth-first search
/// over which cosets are included.
fn reciprocal_failures(ring: &ChainRing, atlas: &CosetAtlas, table: &OmegaTable) -> (u64, u64) {
    let n = atlas.n;
    let factors: Vec<Vec<RingElem>> = (0..atlas.omega).map(|c| ring_poly(ring, table.factor(c))).collect();
    let neg: Vec<usize> = atlas
        .cosets
        .iter()
        .map(|c| atlas.coset_index(((n - c.rep as u64) % n) as u32))
        .collect();
    struct Walk<'a> {
        ring: &'a ChainRing,
        factors: &'a [Vec<RingElem>],
        neg: &'a [usize],
    }
    impl Walk<'_> {
        fn go(&self, i: usize, p: &[RingElem], q: &[RingElem]) -> (u64, u64) {
            if i == self.factors.len() {
                // P* = Q  iff  reverse(P) = P(0) Q
                let rev: Vec<RingElem> = p.iter().rev().copied().collect();
                let scaled: Vec<RingElem> = q.iter().map(|&c| self.ring.mul(p[0], c)).collect();
                return (1, u64::from(rev != scaled));
            }
            let (a, b) = self.go(i + 1, p, q);
            let p2 = mul(self.ring, p, &self.factors[i]);
            let q2 = mul(self.ring, q, &self.factors[self.neg[i]]);
            let (c, d) = self.go(i + 1, &p2, &q2);
            (a + c, b + d)
        }
    }
    let walk = Walk {
        ring,
        factors: &factors,
        neg: &neg,
    };
    // Split the first few levels across workers.
    let split = atlas.omega.min(6);
    (0u64..1 << split)
        .into_par_iter()
        .map(|mask| {
            let (mut p, mut q) = (vec![ring.one()], vec![ring.one()]);
            for i in 0..split {
                if mask >> i & 1 == 1 {
                    p = mul(ring, &p, &factors[i]);
                    q = mul(ring, &q, &factors[neg[i]]);
                }
            }
            walk.go(split, &p, &q)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

fn criterion_6(h: &mut Harness) {
    let rings = [(2, 1, 1), (2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 3, 1)];
    let (mut lengths, mut product_bad, mut unions, mut recip_bad) = (0, Vec::new(), 0u64, Vec::new());
    let start = Instant::now();
    for (p, a, r) in rings {
        let g = GaloisRing::new(p, a, r).unwrap();
        let ring = ChainRing::new(gr(p, a, r)).unwrap();
        for n in (1..=63u64).filter(|n| n % p != 0) {
            lengths += 1;
            let atlas = CosetAtlas::build(n, g.q()).unwrap();
            let table = OmegaTable::build(&g, &atlas).unwrap();
            let prod = poly::product(&g, table.factors());
            if prod != poly::x_n_minus_one(&g, n as usize) {
                product_bad.push(format!("GR({p}^{a},{r}) n={n}"));
            }
            let (seen, bad) = reciprocal_failures(&ring, &atlas, &table);
            unions += seen;
            if bad > 0 {
                recip_bad.push(format!("GR({p}^{a},{r}) n={n}: {bad}"));
            }
        }
    }
    h.record(
        "6a",
        product_bad.is_empty(),
        format!("product of Omega over all cosets = X^n - 1 for {lengths} (ring, n) pairs {product_bad:?}"),
    );
    h.record(
        "6b",
        recip_bad.is_empty(),
        format!(
            "Omega(A)* = Omega(-A) on all {unions} coset unions, {:.1}s {recip_bad:?}",
            start.elapsed().as_secs_f64()
        ),
    );
}

fn structural_grid() -> Vec<(RingSpec, Vec<u64>)> {
    vec![
        (RingSpec::Z4, vec![1, 3, 5, 7]),
        (RingSpec::F2U2, vec![1, 3, 5, 7]),
        (RingSpec::Z8, vec![7]),
        (RingSpec::Z9, vec![2, 4]),
        (gr(2, 2, 2), vec![1, 3, 5]),
        (f8(), vec![1, 7]),
    ]
}

/// Exhaustive pair checks only where `|R|^n` is this small.
const PAIR_SCAN_LIMIT: u64 = 1 << 16;

fn criterion_7(h: &mut Harness) {
    let mut dims = (0u64, Vec::new());
    let mut literal = (0u64, Vec::new());
    let mut corrected = (0u64, Vec::new());
    let mut sums = (0u64, Vec::new());
    let mut params = (0u64, Vec::new());
    for (spec, ns) in structural_grid() {
        let r = spec.r;
        for n in ns {
            let space = CodeSpace::new(spec, n).unwrap();
            let amb = Ambient::new(space.ring(), n as usize, DEFAULT_BRUTE_BUDGET).unwrap();
            let codes: Vec<_> = space.all_codes().collect();
            let sets: Vec<_> = codes.iter().map(|c| enumerate_codewords(&amb, c).unwrap()).collect();
            let sn = spec.s as usize * n as usize;
            for ell in 0..r {
                let duals: Vec<_> = sets.iter().map(|c| brute_dual(c, ell).unwrap()).collect();
                for (i, code) in codes.iter().enumerate() {
                    let tag = || format!("{spec} n={n} ell={ell} {:?}", code.multiset().reps());
                    let d = code.dual(ell).unwrap();
                    dims.0 += 1;
                    let brute_sum = sets[i].q_dimension().unwrap() + duals[i].q_dimension().unwrap();
                    if code.q_dimension() + d.q_dimension() != sn || brute_sum as usize != sn {
                        dims.1.push(tag());
                    }
                    params.0 += 1;
                    let k = code.params();
                    let mut want = vec![n as usize - k.iter().sum::<usize>()];
                    want.extend(k[1..].iter().rev());
                    if d.params() != want || profile_of_set(&duals[i]).unwrap() != want {
                        params.1.push(tag());
                    }
                    for hh in 0..r {
                        let dd = brute_dual(&duals[i], hh).unwrap();
                        literal.0 += 1;
                        if dd != sets[i].sigma((2 * r - ell - hh) % r) {
                            literal.1.push(format!("{} h={hh}", tag()));
                        }
                        corrected.0 += 1;
                        if dd != sets[i].sigma((ell + hh) % r) {
                            corrected.1.push(format!("{} h={hh}", tag()));
                        }
                    }
                }
                for (i, a) in codes.iter().enumerate() {
                    for (j, b) in codes.iter().enumerate().skip(i) {
                        sums.0 += 1;
                        let lhs = a.sum(b).unwrap().dual(ell).unwrap();
                        let rhs = a.dual(ell).unwrap().intersection(&b.dual(ell).unwrap()).unwrap();
                        let mut ok = lhs.echelon().same_span(space.ring(), rhs.echelon());
                        if ok && amb.size() <= PAIR_SCAN_LIMIT {
                            let sum = sets[i].sum(&sets[j]).unwrap();
                            ok = brute_dual(&sum, ell).unwrap() == duals[i].intersection(&duals[j]);
                        }
                        if !ok {
                            sums.1.push(format!("{spec} n={n} ell={ell} pair {i},{j}"));
                        }
                    }
                }
            }
        }
    }
    let line = |what: &str, (count, bad): &(u64, Vec<String>)| {
        let first = bad.first().map(|b| format!("; first: {b}")).unwrap_or_default();
        format!("{what}: {} of {count} cases fail{first}", bad.len())
    };
    h.record("7a", dims.1.is_empty(), line("dim C + dim dual = sn", &dims));
    h.record("7b", literal.1.is_empty(), line("double dual = sigma^(2r-l-h)(C)", &literal));
    h.record("7c", corrected.1.is_empty(), line("double dual = sigma^(l+h)(C)", &corrected));
    h.record("7d", sums.1.is_empty(), line("(C+C')^perp = C^perp meet C'^perp", &sums));
    h.record("7e", params.1.is_empty(), line("params of dual = (n-k, k_(s-1), ..., k_1)", &params));
}

fn criterion_8(h: &mut Harness) {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for q in [2u64, 3, 4, 5] {
        for n in 1..=2000u64 {
            if chainhull::arith::gcd(n, q) != 1 || in_nq(n, q).unwrap() {
                continue;
            }
            let atlas = Arc::new(CosetAtlas::build(n, q).unwrap());
            let b = atlas.self_reciprocal_degree();
            if b < 1 || 3 * b > 2 * n {
                bad.push(format!("q={q} n={n}: B = {b}"));
            }
            for s in 2..=8u32 {
                let (p, r) = if q == 4 { (2, 2) } else { (q, 1) };
                let st = HullSetting {
                    spec: gr(p, s, r),
                    n,
                    q,
                    s,
                    atlas: Arc::clone(&atlas),
                };
                debug_assert_eq!(bnq(&st), b);
                let e = average_dim(&st).unwrap();
                checked += 1;
                if !bounds(n, s).contains(&e) {
                    bad.push(format!("q={q} n={n} s={s}: E = {e}"));
                }
                let g = chainhull::hullcount::growth_ratio(&e, n, s);
                lo = lo.min(g);
                hi = hi.max(g);
            }
        }
    }
    h.record(
        "8",
        bad.is_empty(),
        format!(
            "E within the explicit bounds for {checked} (q, n, s) with n <= 2000 outside N_q; E/(sn) in [{lo:.4}, {hi:.4}] {:?}",
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn main() {
    let mut h = Harness {
        unexpected: Vec::new(),
        known: 0,
    };
    let start = Instant::now();
    criterion_1(&mut h);
    criterion_2(&mut h);
    criterion_3(&mut h);
    criterion_4(&mut h);
    criterion_5(&mut h);
    criterion_6(&mut h);
    criterion_7(&mut h);
    criterion_8(&mut h);
    println!(
        "acceptance: {} unexpected failures, {} known red, {:.1}s",
        h.unexpected.len(),
        h.known,
        start.elapsed().as_secs_f64()
    );
    if !h.unexpected.is_empty() {
        std::process::exit(1);
    }
}
