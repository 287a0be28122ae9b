use serde::{Deserialize, Serialize};

use super::{Family, RingSpec};
use crate::grarith::{CommRing, GaloisRing, Quotient, Zmod};
use crate::error::{invalid, Error, Result};

/// Rings up to this many elements get precomputed operation tables.
pub const TABLE_LIMIT: u32 = 1024;

/// Largest ring realized explicitly.
const MAX_RING_SIZE: u128 = 1 << 24;

/// An element of a [`ChainRing`], by its index in the ring's mixed-radix
/// enumeration.
///
/// For `GR(p^a, r)` the index is `Σ c_i (p^a)^i` over the coefficients of
/// the power basis, so for `r = 1` it is the integer itself. For
/// `F_{p^r}[u]/(u^s)` it is `Σ d_t q^t` over the `u`-adic digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem(pub u32);

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    val: Vec<u8>,
    sigma: Vec<u32>,
}

/// Explicit arithmetic in a chain ring of one of the two supported families.
#[derive(Debug, Clone)]
pub struct ChainRing {
    spec: RingSpec,
    family: Family,
    gr: GaloisRing,
    field: Quotient<Zmod>,
    size: u32,
    /// Radix of the flat coefficient representation and its length.
    base: u64,
    len: usize,
    tables: Option<Tables>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for ChainRing {}

impl ChainRing {
    pub fn new(spec: RingSpec) -> Result<Self> {
        spec.validate()?;
        let family = spec.family();
        let (gr, base, len) = match family {
            Family::GaloisRing => {
                let gr = GaloisRing::new(spec.p, spec.a, spec.r)?;
                let base = gr.pa();
                (gr, base, spec.r as usize)
            }
            Family::FieldPlusNilpotent => {
                let gr = GaloisRing::new(spec.p, 1, spec.r)?;
                (gr, spec.p, (spec.r * spec.s) as usize)
            }
            Family::Eisenstein => {
                return Err(Error::Unsupported(format!(
                    "ring {spec} is neither a Galois ring nor F_q[u]/(u^s)"
                )))
            }
        };
        let size = match spec.size() {
            Some(n) if n <= MAX_RING_SIZE => n as u32,
            _ => return invalid(format!("ring {spec} is too large for explicit arithmetic")),
        };
        let field = gr.residue_field().clone();
        let mut ring = ChainRing {
            spec,
            family,
            gr,
            field,
            size,
            base,
            len,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        Ok(ring)
    }

    fn build_tables(&self) -> Tables {
        let n = self.size as usize;
        let elems: Vec<Vec<u64>> = (0..self.size).map(|i| self.decode(RingElem(i))).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let s = self.encode(&self.raw_add(&elems[i], &elems[j])).0;
                let m = self.encode(&self.raw_mul(&elems[i], &elems[j])).0;
                add[i * n + j] = s;
                add[j * n + i] = s;
                mul[i * n + j] = m;
                mul[j * n + i] = m;
            }
        }
        Tables {
            add,
            mul,
            neg: elems.iter().map(|x| self.encode(&self.raw_neg(x)).0).collect(),
            val: elems.iter().map(|x| self.raw_valuation(x) as u8).collect(),
            sigma: elems.iter().map(|x| self.encode(&self.raw_sigma(x)).0).collect(),
        }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The Galois ring `GR(p^a, r)` whose `Ω` factors generate codes here:
    /// `R` itself for the Galois family, `F_q` for `F_q[u]/(u^s)`.
    pub fn galois(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn residue_field(&self) -> &Quotient<Zmod> {
        &self.field
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn q(&self) -> u64 {
        self.gr.q()
    }

    pub fn s(&self) -> u32 {
        self.spec.s
    }

    pub fn r(&self) -> u32 {
        self.spec.r
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.size).map(RingElem)
    }

    /// Flat coefficient vector of length `r` (Galois family) or `s·r`
    /// (digits of `F_q[u]/(u^s)`, lowest digit first).
    pub fn decode(&self, x: RingElem) -> Vec<u64> {
        let mut idx = x.0 as u64;
        (0..self.len)
            .map(|_| {
                let c = idx % self.base;
                idx /= self.base;
                c
            })
            .collect()
    }

    pub fn encode(&self, v: &[u64]) -> RingElem {
        debug_assert_eq!(v.len(), self.len);
        RingElem(v.iter().rev().fold(0u64, |acc, &c| acc * self.base + c % self.base) as u32)
    }

    fn digits(&self, v: &[u64]) -> Vec<Vec<u64>> {
        v.chunks(self.spec.r as usize).map(<[u64]>::to_vec).collect()
    }

    fn raw_add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.base).collect()
    }

    fn raw_neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().map(|a| (self.base - a) % self.base).collect()
    }

    fn raw_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        match self.family {
            Family::GaloisRing => self.gr.mul(&x.to_vec(), &y.to_vec()),
            _ => {
                let s = self.spec.s as usize;
                let (dx, dy) = (self.digits(x), self.digits(y));
                let mut out = vec![self.field.zero(); s];
                for i in 0..s {
                    if self.field.is_zero(&dx[i]) {
                        continue;
                    }
                    for j in 0..s - i {
                        let t = self.field.mul(&dx[i], &dy[j]);
                        out[i + j] = self.field.add(&out[i + j], &t);
                    }
                }
                out.concat()
            }
        }
    }

    fn raw_valuation(&self, x: &[u64]) -> u32 {
        match self.family {
            Family::GaloisRing => x
                .iter()
                .map(|&c| {
                    if c == 0 {
                        self.spec.a
                    } else {
                        let mut v = 0;
                        let mut c = c;
                        while c % self.spec.p == 0 {
                            c /= self.spec.p;
                            v += 1;
                        }
                        v
                    }
                })
                .min()
                .unwrap_or(self.spec.a),
            _ => self
                .digits(x)
                .iter()
                .position(|d| !self.field.is_zero(d))
                .map_or(self.spec.s, |t| t as u32),
        }
    }

    fn raw_sigma(&self, x: &[u64]) -> Vec<u64> {
        match self.family {
            Family::GaloisRing => self.gr.frobenius(x),
            _ => self
                .digits(x)
                .iter()
                .flat_map(|d| self.field.pow(d, self.spec.p as u128))
                .collect(),
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        RingElem(1)
    }

    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.add[(x.0 * self.size + y.0) as usize]),
            None => self.encode(&self.raw_add(&self.decode(x), &self.decode(y))),
        }
    }

    pub fn neg(&self, x: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.neg[x.0 as usize]),
            None => self.encode(&self.raw_neg(&self.decode(x))),
        }
    }

    pub fn sub(&self, x: RingElem, y: RingElem) -> RingElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.mul[(x.0 * self.size + y.0) as usize]),
            None => self.encode(&self.raw_mul(&self.decode(x), &self.decode(y))),
        }
    }

    pub fn pow(&self, x: RingElem, mut e: u64) -> RingElem {
        let (mut acc, mut b) = (self.one(), x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// θ-adic valuation in `[0, s]`, `s` exactly for zero.
    pub fn valuation(&self, x: RingElem) -> u32 {
        match &self.tables {
            Some(t) => t.val[x.0 as usize] as u32,
            None => self.raw_valuation(&self.decode(x)),
        }
    }

    pub fn is_unit(&self, x: RingElem) -> bool {
        self.valuation(x) == 0
    }

    /// The uniformizer `θ` (`p` or `u`); zero when `s = 1`.
    pub fn theta(&self) -> RingElem {
        self.theta_pow(1)
    }

    pub fn theta_pow(&self, k: u32) -> RingElem {
        if k >= self.spec.s {
            return self.zero();
        }
        let mut v = vec![0u64; self.len];
        match self.family {
            Family::GaloisRing => v[0] = self.spec.p.pow(k),
            _ => v[k as usize * self.spec.r as usize] = 1,
        }
        self.encode(&v)
    }

    pub fn theta_mul(&self, x: RingElem) -> RingElem {
        self.mul(self.theta(), x)
    }

    /// Some `w` with `θ^v w = x`; requires `valuation(x) >= v`. The result is
    /// a unit when the valuation is exactly `v`.
    pub fn theta_divide(&self, x: RingElem, v: u32) -> RingElem {
        debug_assert!(self.valuation(x) >= v);
        self.theta_split(x, v).1
    }

    /// `x = rem + θ^v quot` with `rem` the canonical representative of `x`
    /// modulo `θ^v`.
    pub fn theta_split(&self, x: RingElem, v: u32) -> (RingElem, RingElem) {
        let c = self.decode(x);
        match self.family {
            Family::GaloisRing => {
                let m = self.spec.p.pow(v.min(self.spec.a));
                let rem: Vec<u64> = c.iter().map(|x| x % m).collect();
                let quot: Vec<u64> = c.iter().map(|x| x / m).collect();
                (self.encode(&rem), self.encode(&quot))
            }
            _ => {
                let cut = (v.min(self.spec.s) * self.spec.r) as usize;
                let mut rem = c.clone();
                rem[cut..].iter_mut().for_each(|x| *x = 0);
                let mut quot = c[cut..].to_vec();
                quot.resize(self.len, 0);
                (self.encode(&rem), self.encode(&quot))
            }
        }
    }

    pub fn inverse(&self, x: RingElem) -> Result<RingElem> {
        if !self.is_unit(x) {
            return invalid("inverse of a non-unit");
        }
        let units = self.size as u64 - self.size as u64 / self.q();
        Ok(self.pow(x, units - 1))
    }

    /// Frobenius `σ`: `p`-th power on Teichmüller digits.
    pub fn sigma(&self, x: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.sigma[x.0 as usize]),
            None => self.encode(&self.raw_sigma(&self.decode(x))),
        }
    }

    pub fn sigma_pow(&self, x: RingElem, k: u32) -> RingElem {
        (0..k % self.spec.r).fold(x, |y, _| self.sigma(y))
    }

    /// Residue map onto `F_q`, as the field element's index.
    pub fn pi(&self, x: RingElem) -> u32 {
        let c = self.decode(x);
        let r = self.spec.r as usize;
        let p = self.spec.p;
        c[..r].iter().rev().fold(0u64, |acc, &d| acc * p + d % p) as u32
    }

    /// A lift of the residue field element with the given index.
    pub fn lift_residue(&self, y: u32) -> RingElem {
        let mut v = vec![0u64; self.len];
        let mut idx = y as u64;
        for c in v.iter_mut().take(self.spec.r as usize) {
            *c = idx % self.spec.p;
            idx /= self.spec.p;
        }
        self.encode(&v)
    }

    /// Image of a `GR(p^a, r)` element (power-basis coefficients).
    pub fn from_gr(&self, x: &[u64]) -> RingElem {
        let mut v = vec![0u64; self.len];
        v[..x.len()].copy_from_slice(x);
        self.encode(&v)
    }

    pub fn from_int(&self, k: i64) -> RingElem {
        let m = (self.spec.p.pow(self.spec.a)) as i64;
        let c = k.rem_euclid(m) as u64;
        let mut v = vec![0u64; self.len];
        v[0] = c;
        self.encode(&v)
    }

    /// JSON form: the integer for `Z_{p^a}`, coefficient lists otherwise.
    pub fn to_json(&self, x: RingElem) -> serde_json::Value {
        let c = self.decode(x);
        match self.family {
            Family::GaloisRing if self.spec.r == 1 => serde_json::json!(c[0]),
            Family::GaloisRing => serde_json::json!(c),
            _ => serde_json::json!(self.digits(&c)),
        }
    }
}

impl CommRing for ChainRing {
    type Elem = RingElem;

    fn zero(&self) -> RingElem {
        RingElem(0)
    }
    fn one(&self) -> RingElem {
        RingElem(1)
    }
    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        ChainRing::add(self, *a, *b)
    }
    fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        ChainRing::sub(self, *a, *b)
    }
    fn neg(&self, a: &RingElem) -> RingElem {
        ChainRing::neg(self, *a)
    }
    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        ChainRing::mul(self, *a, *b)
    }
    fn from_u64(&self, v: u64) -> RingElem {
        self.from_int((v % self.spec.p.pow(self.spec.a)) as i64)
    }
    fn size(&self) -> Option<u128> {
        Some(self.size as u128)
    }
    fn elem_at(&self, idx: u128) -> RingElem {
        RingElem(idx as u32)
    }
    fn index_of(&self, a: &RingElem) -> u128 {
        a.0 as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rings() -> Vec<ChainRing> {
        [
            RingSpec::Z4,
            RingSpec::Z8,
            RingSpec::Z9,
            RingSpec::F2U2,
            RingSpec::galois(2, 2, 2).unwrap(),
            RingSpec::truncated(2, 2, 2).unwrap(),
            RingSpec::truncated(3, 1, 3).unwrap(),
            RingSpec::galois(3, 2, 2).unwrap(),
        ]
        .into_iter()
        .map(|s| ChainRing::new(s).unwrap())
        .collect()
    }

    #[test]
    fn z8_valuations() {
        let r = ChainRing::new(RingSpec::Z8).unwrap();
        assert_eq!(r.valuation(RingElem(2)), 1);
        assert_eq!(r.valuation(RingElem(4)), 2);
        assert_eq!(r.valuation(RingElem(0)), 3);
        assert_eq!(r.mul(RingElem(2), RingElem(4)), RingElem(0));
        assert_eq!(r.theta(), RingElem(2));
        assert_eq!(r.inverse(RingElem(3)).unwrap(), RingElem(3));
        assert!(r.inverse(RingElem(6)).is_err());
    }

    #[test]
    fn eisenstein_is_unsupported() {
        let spec = RingSpec::new(2, 2, 1, 2, 3).unwrap();
        assert!(matches!(ChainRing::new(spec), Err(Error::Unsupported(_))));
    }

    #[test]
    fn axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in rings() {
            let s = r.s();
            assert_ne!(r.theta_pow(s - 1), r.zero());
            assert_eq!(r.mul(r.theta_pow(s - 1), r.theta()), r.zero());
            for _ in 0..200 {
                let [x, y, z] = [0; 3].map(|_| RingElem(rng.gen_range(0..r.size())));
                assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
                assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                assert_eq!(r.sigma(r.mul(x, y)), r.mul(r.sigma(x), r.sigma(y)));
                assert_eq!(r.sigma(r.add(x, y)), r.add(r.sigma(x), r.sigma(y)));
                assert_eq!(r.sigma_pow(x, r.r()), x);
                assert_eq!(
                    r.valuation(r.mul(x, y)),
                    (r.valuation(x) + r.valuation(y)).min(s)
                );
                assert_eq!(r.pi(r.theta_mul(x)), 0);
                let v = r.valuation(x);
                let w = r.theta_divide(x, v);
                assert_eq!(r.mul(r.theta_pow(v), w), x);
                let k = rng.gen_range(0..=s);
                let (rem, quot) = r.theta_split(x, k);
                assert_eq!(r.add(rem, r.mul(r.theta_pow(k), quot)), x);
            }
        }
    }

    #[test]
    fn sigma_fixes_prime_field() {
        for r in rings() {
            for k in 0..20 {
                let x = r.from_int(k);
                assert_eq!(r.sigma(x), x);
            }
            if r.r() == 1 {
                assert!(r.elements().all(|x| r.sigma(x) == x));
            }
        }
    }

    #[test]
    fn residue_map_is_onto() {
        for r in rings() {
            let mut hit = vec![false; r.q() as usize];
            for x in r.elements() {
                hit[r.pi(x) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
            for y in 0..r.q() as u32 {
                assert_eq!(r.pi(r.lift_residue(y)), y);
            }
        }
    }

    #[test]
    fn untabled_ring_agrees() {
        // GR(8, 4) has 4096 elements: no tables
        let r = ChainRing::new(RingSpec::galois(2, 3, 4).unwrap()).unwrap();
        assert!(r.tables.is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = RingElem(rng.gen_range(0..r.size()));
            if r.is_unit(x) {
                let y = r.inverse(x).unwrap();
                assert_eq!(r.mul(x, y), r.one());
            }
            assert_eq!(r.sigma_pow(x, 4), x);
        }
    }
}
