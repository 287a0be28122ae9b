//! Chain rings `R` with parameters `(p, a, r, e, s)`, their elements,
//! cyclic polynomials over `R` and θ-adic row echelon form.

mod cyclic;
mod echelon;
mod elem;

use serde::{Deserialize, Serialize};

pub use cyclic::{divides_monic, galois_inner_product, CyclicPoly};
pub use echelon::Echelon;
pub use elem::{ChainRing, RingElem, TABLE_LIMIT};

use crate::arith::{checked_pow, is_prime};
use crate::error::{invalid, Result};

/// How elements of a ring are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `GR(p^a, r)` with `θ = p`, `e = 1`, `s = a`.
    GaloisRing,
    /// `F_{p^r}[u]/(u^s)` with `θ = u`, `a = 1`, `e = s`.
    FieldPlusNilpotent,
    /// Any other chain ring; only the combinatorial layers accept it.
    Eisenstein,
}

/// The parameter 5-tuple of a finite chain ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub a: u32,
    pub r: u32,
    pub e: u32,
    pub s: u32,
}

impl RingSpec {
    pub const Z4: RingSpec = RingSpec::raw(2, 2, 1, 1, 2);
    pub const Z8: RingSpec = RingSpec::raw(2, 3, 1, 1, 3);
    pub const Z9: RingSpec = RingSpec::raw(3, 2, 1, 1, 2);
    pub const Z27: RingSpec = RingSpec::raw(3, 3, 1, 1, 3);
    pub const F2U2: RingSpec = RingSpec::raw(2, 1, 1, 2, 2);

    const fn raw(p: u64, a: u32, r: u32, e: u32, s: u32) -> Self {
        RingSpec { p, a, r, e, s }
    }

    /// Validated constructor.
    pub fn new(p: u64, a: u32, r: u32, e: u32, s: u32) -> Result<Self> {
        let spec = RingSpec { p, a, r, e, s };
        spec.validate()?;
        Ok(spec)
    }

    /// Galois ring `GR(p^a, r)`.
    pub fn galois(p: u64, a: u32, r: u32) -> Result<Self> {
        Self::new(p, a, r, 1, a)
    }

    /// `F_{p^r}[u]/(u^s)`.
    pub fn truncated(p: u64, r: u32, s: u32) -> Result<Self> {
        Self::new(p, 1, r, s, s)
    }

    pub fn validate(&self) -> Result<()> {
        let RingSpec { p, a, r, e, s } = *self;
        if !is_prime(p) {
            return invalid(format!("p = {p} is not prime"));
        }
        if a == 0 || r == 0 || e == 0 || s == 0 {
            return invalid("a, r, e, s must all be positive");
        }
        let lo = (a as u64 - 1) * e as u64;
        let hi = a as u64 * e as u64;
        if !(lo < s as u64 && s as u64 <= hi) {
            return invalid(format!("need (a-1)e < s <= ae, got a={a}, e={e}, s={s}"));
        }
        if checked_pow(p, r).map_or(true, |q| q > u32::MAX as u64) {
            return invalid(format!("q = {p}^{r} is too large"));
        }
        Ok(())
    }

    /// Residue field size `p^r`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn family(&self) -> Family {
        if self.e == 1 && self.s == self.a {
            Family::GaloisRing
        } else if self.a == 1 && self.e == self.s {
            Family::FieldPlusNilpotent
        } else {
            Family::Eisenstein
        }
    }

    /// Number of ring elements `q^s`, if it fits.
    pub fn size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.s)
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{},{},{}", self.p, self.a, self.r, self.e, self.s)
    }
}
