//! Arithmetic in residue fields `F_{p^r}`, Galois rings `GR(p^a, r)` and
//! their extension towers, Hensel lifting of the factorization of `X^n - 1`
//! and the `Ω` map from `q`-closed sets to monic divisors.

use std::fmt::Debug;

mod factor;
mod galois;
pub mod poly;

pub use factor::{reciprocal, Coefficients, FactorEntry, FactorExport, OmegaTable};
pub use galois::{lex_smallest_irreducible, lex_smallest_primitive, GaloisRing};

/// A finite commutative ring with explicit elements.
pub trait CommRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;

    /// Number of elements, `None` if it does not fit in 128 bits.
    fn size(&self) -> Option<u128>;
    /// Element with the given mixed-radix index.
    fn elem_at(&self, idx: u128) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u128;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }
}

/// A finite field.
pub trait Field: CommRing {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Integers modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    m: u64,
}

impl Zmod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Zmod { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl CommRing for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.m
    }
    fn size(&self) -> Option<u128> {
        Some(self.m as u128)
    }
    fn elem_at(&self, idx: u128) -> u64 {
        (idx % self.m as u128) as u64
    }
    fn index_of(&self, a: &u64) -> u128 {
        *a as u128
    }
}

/// `Z/pZ` viewed as a field; `inv` is only meaningful for prime `m`.
impl Field for Zmod {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.m == 0 {
            return None;
        }
        Some(self.pow(a, (self.m - 2) as u128))
    }
}

/// `B[Y]/(h(Y))` for a monic `h` of positive degree.
///
/// Elements are coefficient vectors of length `deg h`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient<B: CommRing> {
    base: B,
    /// Low coefficients of the monic modulus (the leading 1 is implicit).
    low: Vec<B::Elem>,
}

impl<B: CommRing> Quotient<B> {
    /// `modulus` is a full coefficient vector with leading coefficient one.
    pub fn new(base: B, modulus: &[B::Elem]) -> Self {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        assert!(
            *modulus.last().unwrap() == base.one(),
            "modulus must be monic"
        );
        let low = modulus[..modulus.len() - 1].to_vec();
        Quotient { base, low }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.low.len()
    }

    /// Full modulus coefficient vector, leading one included.
    pub fn modulus(&self) -> Vec<B::Elem> {
        let mut m = self.low.clone();
        m.push(self.base.one());
        m
    }

    /// Embed a base element as a constant.
    pub fn constant(&self, c: B::Elem) -> Vec<B::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c;
        v
    }

    /// The class of the indeterminate.
    pub fn gen(&self) -> Vec<B::Elem> {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.neg(&self.low[0])];
        }
        let mut v = vec![self.base.zero(); d];
        v[1] = self.base.one();
        v
    }

    /// Reduce an arbitrary-length coefficient vector modulo the modulus.
    pub fn reduce(&self, mut v: Vec<B::Elem>) -> Vec<B::Elem> {
        let d = self.degree();
        let b = &self.base;
        while v.len() > d {
            let c = v.pop().unwrap();
            if !b.is_zero(&c) {
                let off = v.len() - d;
                for i in 0..d {
                    let t = b.mul(&c, &self.low[i]);
                    v[off + i] = b.sub(&v[off + i], &t);
                }
            }
        }
        v.resize(d, b.zero());
        v
    }

    /// True when all coefficients above the constant term vanish.
    pub fn is_constant(&self, a: &[B::Elem]) -> bool {
        a.iter().skip(1).all(|c| self.base.is_zero(c))
    }
}

impl<B: CommRing> CommRing for Quotient<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        let bs = &self.base;
        let mut prod = vec![bs.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if bs.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = bs.mul(x, y);
                prod[i + j] = bs.add(&prod[i + j], &t);
            }
        }
        self.reduce(prod)
    }
    fn from_u64(&self, v: u64) -> Self::Elem {
        self.constant(self.base.from_u64(v))
    }
    fn size(&self) -> Option<u128> {
        let b = self.base.size()?;
        let mut acc: u128 = 1;
        for _ in 0..self.degree() {
            acc = acc.checked_mul(b)?;
        }
        Some(acc)
    }
    fn elem_at(&self, mut idx: u128) -> Self::Elem {
        let b = self.base.size().expect("base ring too large to index");
        (0..self.degree())
            .map(|_| {
                let c = self.base.elem_at(idx % b);
                idx /= b;
                c
            })
            .collect()
    }
    fn index_of(&self, a: &Self::Elem) -> u128 {
        let b = self.base.size().expect("base ring too large to index");
        a.iter()
            .rev()
            .fold(0u128, |acc, c| acc * b + self.base.index_of(c))
    }
}

/// Field inverse as `a^{|F|-2}`; valid when the modulus is irreducible over
/// a field base.
impl<B: Field> Field for Quotient<B> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let size = self.size().expect("field too large");
        Some(self.pow(a, size - 2))
    }
}
