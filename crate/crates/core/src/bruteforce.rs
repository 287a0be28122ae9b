//! Exhaustive codeword-set oracles for tiny rings.
//!
//! Nothing here looks at defining multisets or `Ω`: a code enters as a list
//! of spanning rows, and everything after that is set arithmetic on `R^n`.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};
use crate::ringpoly::{ChainRing, RingElem, RingSpec};
use crate::serialcodes::{CodeSpace, CyclicSerialCode};

/// Default cap on `|R|^n`.
pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 24;

/// `R^n` with each word packed into a `u64`, `bits` bits per coordinate,
/// coordinate 0 lowest.
#[derive(Debug)]
pub struct Ambient {
    ring: ChainRing,
    n: usize,
    radix: u64,
    bits: u32,
    /// Number of words, `|R|^n`.
    size: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Ambient {
    pub fn new(ring: &ChainRing, n: usize, budget: u64) -> Result<Arc<Self>> {
        let radix = ring.size() as u64;
        let bits = 64 - (radix - 1).max(1).leading_zeros();
        let size = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(radix).filter(|&v| v <= budget));
        let size = match size {
            Some(size) if bits as usize * n <= 32 => size,
            _ => {
                return Err(Error::Budget {
                    what: format!("scan of R^{n} with |R| = {radix}"),
                    needed: (radix as u128).saturating_pow(n as u32),
                    budget: budget as u128,
                })
            }
        };
        let els: Vec<RingElem> = ring.elements().collect();
        let table = |f: &dyn Fn(RingElem, RingElem) -> RingElem| -> Vec<u32> {
            els.iter().flat_map(|&x| els.iter().map(move |&y| (x, y))).map(|(x, y)| f(x, y).0).collect()
        };
        Ok(Arc::new(Ambient {
            add: table(&|x, y| ring.add(x, y)),
            mul: table(&|x, y| ring.mul(x, y)),
            ring: ring.clone(),
            n,
            radix,
            bits,
            size,
        }))
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|R|^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    fn slots(&self) -> u64 {
        1 << (self.bits as usize * self.n)
    }

    fn mask(&self) -> u64 {
        (1 << self.bits) - 1
    }

    pub fn word(&self, idx: u64) -> Vec<RingElem> {
        (0..self.n)
            .map(|i| RingElem(((idx >> (i as u32 * self.bits)) & self.mask()) as u32))
            .collect()
    }

    pub fn index(&self, w: &[RingElem]) -> u64 {
        w.iter()
            .enumerate()
            .fold(0, |acc, (i, x)| acc | (x.0 as u64) << (i as u32 * self.bits))
    }

    #[inline]
    fn add_el(&self, x: u32, y: u32) -> u32 {
        self.add[(x as u64 * self.radix + y as u64) as usize]
    }

    #[inline]
    fn mul_el(&self, x: u32, y: u32) -> u32 {
        self.mul[(x as u64 * self.radix + y as u64) as usize]
    }

    fn add(&self, x: u64, y: u64) -> u64 {
        let mask = self.mask();
        let mut out = 0;
        for i in 0..self.n as u32 {
            let sh = i * self.bits;
            let d = self.add_el(((x >> sh) & mask) as u32, ((y >> sh) & mask) as u32);
            out |= (d as u64) << sh;
        }
        out
    }

    fn scale(&self, c: RingElem, w: &[RingElem]) -> u64 {
        let scaled: Vec<RingElem> = w.iter().map(|&x| RingElem(self.mul_el(c.0, x.0))).collect();
        self.index(&scaled)
    }
}

/// A set of words of `R^n` as a bitmap, with the rows that generated it.
#[derive(Debug, Clone)]
pub struct CodewordSet {
    ambient: Arc<Ambient>,
    bits: Vec<u64>,
    len: u64,
    generators: Vec<Vec<RingElem>>,
}

impl PartialEq for CodewordSet {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.bits == other.bits
    }
}

impl CodewordSet {
    fn empty(ambient: &Arc<Ambient>) -> Self {
        CodewordSet {
            ambient: Arc::clone(ambient),
            bits: vec![0; ambient.slots().div_ceil(64) as usize],
            len: 0,
            generators: Vec::new(),
        }
    }

    fn insert(&mut self, idx: u64) -> bool {
        let (w, b) = ((idx / 64) as usize, idx % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.bits[(idx / 64) as usize] & (1 << (idx % 64)) != 0
    }

    pub fn contains_word(&self, w: &[RingElem]) -> bool {
        self.contains(self.ambient.index(w))
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    /// Rows that enlarged the set while it was being closed.
    pub fn generators(&self) -> &[Vec<RingElem>] {
        &self.generators
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w as u64 * 64 + b)
        })
    }

    /// The smallest word of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &CodewordSet) -> Option<u64> {
        self.iter().find(|&x| !other.contains(x))
    }

    pub fn intersection(&self, other: &CodewordSet) -> CodewordSet {
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let len = bits.iter().map(|w| w.count_ones() as u64).sum();
        CodewordSet {
            ambient: Arc::clone(&self.ambient),
            bits,
            len,
            generators: Vec::new(),
        }
    }

    /// `log_q |S|`, if `|S|` is a power of `q`.
    pub fn q_dimension(&self) -> Option<u32> {
        log_exact(self.len, self.ambient.ring.q())
    }

    /// Close under `+` and multiplication by `R`, adding rows one by one.
    ///
    /// `S + Rg` is a union of translates `m + S`; a multiple already
    /// covered by an earlier translate is skipped.
    fn absorb(&mut self, members: &mut Vec<u64>, row: &[RingElem]) {
        let amb = Arc::clone(&self.ambient);
        if self.contains(amb.index(row)) {
            return;
        }
        let base = members.len();
        for c in amb.ring.elements() {
            let m = amb.scale(c, row);
            if self.contains(m) {
                continue;
            }
            for i in 0..base {
                let y = amb.add(members[i], m);
                if self.insert(y) {
                    members.push(y);
                }
            }
        }
        self.generators.push(row.to_vec());
    }

    /// Submodule generated by some rows.
    pub fn span(ambient: &Arc<Ambient>, rows: &[Vec<RingElem>]) -> Result<CodewordSet> {
        let mut set = CodewordSet::empty(ambient);
        set.insert(0);
        let mut members = vec![0];
        for row in rows {
            if row.len() != ambient.n {
                return invalid(format!("row of length {} in R^{}", row.len(), ambient.n));
            }
            set.absorb(&mut members, row);
        }
        Ok(set)
    }

    /// Rebuild a set from its members, picking generators greedily; fails if
    /// the members do not form a submodule.
    pub fn from_members(ambient: &Arc<Ambient>, members: impl IntoIterator<Item = u64>) -> Result<CodewordSet> {
        let mut target = CodewordSet::empty(ambient);
        for m in members {
            target.insert(m);
        }
        let mut set = CodewordSet::empty(ambient);
        set.insert(0);
        let mut closed = vec![0];
        for m in target.iter().collect::<Vec<_>>() {
            if !set.contains(m) {
                set.absorb(&mut closed, &ambient.word(m));
                if set.len > target.len {
                    return invalid("word set is not closed under the ring operations");
                }
            }
        }
        if set != target {
            return invalid("word set is not closed under the ring operations");
        }
        Ok(set)
    }

    /// `{σ^h(c) : c ∈ S}`.
    pub fn sigma(&self, h: u32) -> CodewordSet {
        let amb = &self.ambient;
        let mut out = CodewordSet::empty(amb);
        for x in self.iter() {
            let w: Vec<RingElem> = amb.word(x).iter().map(|&c| amb.ring.sigma_pow(c, h)).collect();
            out.insert(amb.index(&w));
        }
        out.generators = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&c| amb.ring.sigma_pow(c, h)).collect())
            .collect();
        out
    }

    /// `S + S'` from the union of the two generator lists.
    pub fn sum(&self, other: &CodewordSet) -> Result<CodewordSet> {
        let rows: Vec<Vec<RingElem>> = self.generators.iter().chain(&other.generators).cloned().collect();
        CodewordSet::span(&self.ambient, &rows)
    }
}

fn log_exact(mut x: u64, q: u64) -> Option<u32> {
    let mut k = 0;
    while x > 1 {
        if x % q != 0 {
            return None;
        }
        x /= q;
        k += 1;
    }
    (x == 1).then_some(k)
}

/// Every codeword of a code, from its spanning rows.
pub fn enumerate_codewords(ambient: &Arc<Ambient>, code: &CyclicSerialCode) -> Result<CodewordSet> {
    CodewordSet::span(ambient, &code.spanning_rows())
}

/// Scan state: `acc[j][i] = Σ_{i' ≥ i} u_{i'} g_{j,i'}` for the current
/// prefix of coordinates, so each word costs one step per row.
struct Scan<'a> {
    amb: &'a Ambient,
    gens: &'a [Vec<u32>],
    digits: Vec<u32>,
    acc: Vec<Vec<u32>>,
    out: Vec<u64>,
}

impl Scan<'_> {
    fn descend(&mut self, i: usize) {
        let n = self.amb.n;
        for d in 0..self.amb.radix as u32 {
            self.digits[i] = d;
            let mut zero = true;
            for (j, g) in self.gens.iter().enumerate() {
                let above = if i + 1 < n { self.acc[j][i + 1] } else { 0 };
                let v = self.amb.add_el(above, self.amb.mul_el(d, g[i]));
                self.acc[j][i] = v;
                zero &= v == 0;
            }
            if i > 0 {
                self.descend(i - 1);
            } else if zero {
                let w: Vec<RingElem> = self.digits.iter().map(|&x| RingElem(x)).collect();
                self.out.push(self.amb.index(&w));
            }
        }
    }
}
/// `S^{⊥_ℓ}` by scanning all of `R^n`.
///
/// Orthogonality is tested against the generators of `S`; the inner
/// product is additive in its second slot and `σ^ℓ`-semilinear, so that
/// covers every codeword.
pub fn brute_dual(set: &CodewordSet, ell: u32) -> Result<CodewordSet> {
    let amb = &set.ambient;
    let ring = &amb.ring;
    if ell >= ring.r() {
        return invalid(format!("ell = {ell} must be below r = {}", ring.r()));
    }
    let gens: Vec<Vec<u32>> = set
        .generators
        .iter()
        .map(|g| g.iter().map(|&c| ring.sigma_pow(c, ell).0).collect())
        .collect();
    if amb.n == 0 {
        return CodewordSet::from_members(amb, [0]);
    }
    // Partition by the leading coordinate.
    let top = amb.n - 1;
    let found: Vec<Vec<u64>> = (0..amb.radix as u32)
        .into_par_iter()
        .map(|lead| {
            let mut scan = Scan {
                amb,
                gens: &gens,
                digits: vec![0; amb.n],
                acc: vec![vec![0; amb.n]; gens.len()],
                out: Vec::new(),
            };
            scan.digits[top] = lead;
            let mut zero = true;
            for (j, g) in gens.iter().enumerate() {
                scan.acc[j][top] = amb.mul_el(lead, g[top]);
                zero &= scan.acc[j][top] == 0;
            }
            if top > 0 {
                scan.descend(top - 1);
            } else if zero {
                scan.out.push(lead as u64);
            }
            scan.out
        })
        .collect();
    let dual = CodewordSet::from_members(amb, found.into_iter().flatten())?;
    if set.len as u128 * dual.len as u128 != amb.size as u128 {
        return internal(format!(
            "|C| |C^perp| = {} * {} != |R|^n = {}",
            set.len, dual.len, amb.size
        ));
    }
    Ok(dual)
}

/// `S ∩ S^{⊥_ℓ}`.
pub fn brute_hull(set: &CodewordSet, ell: u32) -> Result<CodewordSet> {
    Ok(set.intersection(&brute_dual(set, ell)?))
}

/// Random closure test: `x + y ∈ S` and `c x ∈ S` for sampled members.
pub fn check_module_sampled(set: &CodewordSet, rng: &mut impl Rng, samples: usize) -> Result<()> {
    let members: Vec<u64> = set.iter().collect();
    if members.is_empty() || !set.contains(0) {
        return invalid("set does not contain the zero word");
    }
    let amb = &set.ambient;
    for _ in 0..samples {
        let x = members[rng.gen_range(0..members.len())];
        let y = members[rng.gen_range(0..members.len())];
        let c = RingElem(rng.gen_range(0..amb.ring.size()));
        if !set.contains(amb.add(x, y)) || !set.contains(amb.scale(c, &amb.word(x))) {
            return invalid(format!("closure fails at words {x} and {y}"));
        }
    }
    Ok(())
}

/// `(k_0, …, k_{s-1})` from torsion counts: the words `x` with
/// `θ^t x ∈ S` reduce to a residue subspace of dimension `k_0 + ⋯ + k_t`.
pub fn profile_of_set(set: &CodewordSet) -> Result<Vec<usize>> {
    let amb = &set.ambient;
    let ring = &amb.ring;
    let (s, q) = (ring.s(), ring.q());
    let mut dims = Vec::with_capacity(s as usize);
    for t in 0..s {
        let residues: HashSet<u64> = set
            .iter()
            .map(|y| amb.word(y))
            .filter(|w| w.iter().all(|&c| ring.valuation(c) >= t))
            .map(|w| {
                w.iter()
                    .rev()
                    .fold(0u64, |acc, &c| acc * q + ring.pi(ring.theta_divide(c, t)) as u64)
            })
            .collect();
        let d = log_exact(residues.len() as u64, q)
            .ok_or_else(|| Error::Validation(format!("torsion layer {t} has {} residues", residues.len())))?;
        dims.push(d as usize);
    }
    let mut k = Vec::with_capacity(dims.len());
    let mut prev = 0;
    for d in dims {
        if d < prev {
            return internal("torsion dimensions decrease");
        }
        k.push(d - prev);
        prev = d;
    }
    Ok(k)
}

/// A disagreement between the analytic and exhaustive paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub ring: RingSpec,
    pub n: usize,
    pub multiset: Vec<Vec<u64>>,
    pub ell: u32,
    pub what: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_only: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_only: Option<serde_json::Value>,
}

impl Mismatch {
    fn new(code: &CyclicSerialCode, ell: u32, what: impl Into<String>) -> Self {
        Mismatch {
            ring: code.ring().spec(),
            n: code.n(),
            multiset: code.multiset().reps(),
            ell,
            what: what.into(),
            analytic_only: None,
            brute_only: None,
        }
    }

    fn sets(code: &CyclicSerialCode, ell: u32, what: &str, analytic: &CodewordSet, brute: &CodewordSet) -> Option<Self> {
        if analytic == brute {
            return None;
        }
        let amb = analytic.ambient();
        let witness = |x: u64| {
            serde_json::Value::Array(amb.word(x).iter().map(|&c| amb.ring.to_json(c)).collect())
        };
        let mut m = Mismatch::new(code, ell, what);
        m.analytic_only = analytic.first_missing_from(brute).map(witness);
        m.brute_only = brute.first_missing_from(analytic).map(witness);
        Some(m)
    }
}

/// Compare the analytic dual and hull of a code with the exhaustive ones.
pub fn check_code(ambient: &Arc<Ambient>, code: &CyclicSerialCode, ell: u32) -> Result<Option<Mismatch>> {
    Ok(examine(ambient, code, ell)?.0)
}

fn examine(ambient: &Arc<Ambient>, code: &CyclicSerialCode, ell: u32) -> Result<(Option<Mismatch>, Option<CodewordSet>)> {
    let cset = enumerate_codewords(ambient, code)?;
    if cset.q_dimension() != Some(code.q_dimension() as u32) {
        return Ok((Some(Mismatch::new(code, ell, format!("code has {} words", cset.len()))), None));
    }
    let dual = brute_dual(&cset, ell)?;
    let analytic_dual = enumerate_codewords(ambient, &code.dual(ell)?)?;
    if let Some(m) = Mismatch::sets(code, ell, "dual", &analytic_dual, &dual) {
        return Ok((Some(m), None));
    }
    let hull = cset.intersection(&dual);
    let analytic = code.hull(ell)?;
    let analytic_hull = enumerate_codewords(ambient, &analytic)?;
    if let Some(m) = Mismatch::sets(code, ell, "hull", &analytic_hull, &hull) {
        return Ok((Some(m), None));
    }
    let profile = profile_of_set(&hull)?;
    if profile != analytic.params() {
        let what = format!("hull profile {profile:?} vs {:?}", analytic.params());
        return Ok((Some(Mismatch::new(code, ell, what)), None));
    }
    Ok((None, Some(hull)))
}

/// Outcome of checking every code of one length against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub ring: RingSpec,
    pub n: u64,
    pub ell: u32,
    pub codes: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Run [`check_code`] on every code of length `n`, plus a sampled closure
/// check on each exhaustive hull.
pub fn verify_case(spec: RingSpec, n: u64, ell: u32, budget: u64, seed: u64) -> Result<CaseSummary> {
    let space = CodeSpace::new(spec, n)?;
    let ambient = Ambient::new(space.ring(), n as usize, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n << 8) ^ ell as u64);
    let mut summary = CaseSummary {
        ring: spec,
        n,
        ell,
        codes: 0,
        mismatches: Vec::new(),
    };
    for code in space.all_codes() {
        summary.codes += 1;
        let hull = match examine(&ambient, &code, ell)? {
            (None, Some(hull)) => hull,
            (m, _) => {
                summary.mismatches.extend(m);
                continue;
            }
        };
        if let Err(e) = check_module_sampled(&hull, &mut rng, 32) {
            summary.mismatches.push(Mismatch::new(&code, ell, e.to_string()));
        }
    }
    Ok(summary)
}
