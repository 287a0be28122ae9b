use serde::{Deserialize, Serialize};

use super::{ChainRing, RingElem};
use crate::error::{invalid, Result};
use crate::grarith::poly;

/// An element of `R[X]/(X^n - 1)`, coefficient of `X^i` at index `i`.
///
/// Words of `R^n` and cyclic polynomials share this layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicPoly {
    pub coeffs: Vec<RingElem>,
}

impl CyclicPoly {
    pub fn zero(n: usize) -> Self {
        CyclicPoly {
            coeffs: vec![RingElem(0); n],
        }
    }

    /// Reduce an ordinary polynomial modulo `X^n - 1`.
    pub fn from_poly(ring: &ChainRing, f: &[RingElem], n: usize) -> Self {
        let mut coeffs = vec![ring.zero(); n];
        for (i, &c) in f.iter().enumerate() {
            coeffs[i % n] = ring.add(coeffs[i % n], c);
        }
        CyclicPoly { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.0 == 0)
    }

    /// The polynomial of degree `< n` with these coefficients, trimmed.
    pub fn to_poly(&self) -> Vec<RingElem> {
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.0 == 0) {
            v.pop();
        }
        v
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.len();
        let mut coeffs = vec![RingElem(0); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c;
        }
        CyclicPoly { coeffs }
    }

    pub fn add(&self, ring: &ChainRing, other: &Self) -> Self {
        CyclicPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &ChainRing, c: RingElem) -> Self {
        CyclicPoly {
            coeffs: self.coeffs.iter().map(|&a| ring.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, ring: &ChainRing, other: &Self) -> Self {
        let n = self.len();
        let mut coeffs = vec![ring.zero(); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                coeffs[k] = ring.add(coeffs[k], ring.mul(a, b));
            }
        }
        CyclicPoly { coeffs }
    }

    /// Coordinatewise `σ^k`.
    pub fn sigma_pow(&self, ring: &ChainRing, k: u32) -> Self {
        CyclicPoly {
            coeffs: self.coeffs.iter().map(|&a| ring.sigma_pow(a, k)).collect(),
        }
    }
}

/// Whether the monic `f` divides the polynomial `c` (degree `< n`) in `R[X]`.
pub fn divides_monic(ring: &ChainRing, f: &[RingElem], c: &CyclicPoly) -> Result<bool> {
    if !poly::is_monic(ring, f) {
        return invalid("divisor must be monic");
    }
    Ok(poly::rem_monic(ring, &c.to_poly(), f).is_empty())
}

/// `⟨u, v⟩_ℓ = Σ u_j σ^ℓ(v_j)`.
pub fn galois_inner_product(ring: &ChainRing, u: &[RingElem], v: &[RingElem], ell: u32) -> Result<RingElem> {
    if u.len() != v.len() {
        return invalid(format!("length mismatch: {} vs {}", u.len(), v.len()));
    }
    if ell >= ring.r() {
        return invalid(format!("ell = {ell} must be below r = {}", ring.r()));
    }
    Ok(u.iter()
        .zip(v)
        .fold(ring.zero(), |acc, (&a, &b)| ring.add(acc, ring.mul(a, ring.sigma_pow(b, ell)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringpoly::RingSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reduction_and_shift() {
        let r = ChainRing::new(RingSpec::Z4).unwrap();
        let f = vec![RingElem(3), RingElem(0), RingElem(0), RingElem(1)];
        // X^3 - 1 is zero mod X^3 - 1
        assert!(CyclicPoly::from_poly(&r, &f, 3).is_zero());
        let x = CyclicPoly::from_poly(&r, &[RingElem(0), RingElem(1)], 3);
        assert_eq!(x.shift(2).coeffs, vec![RingElem(1), RingElem(0), RingElem(0)]);
        assert_eq!(x.mul(&r, &x).mul(&r, &x).to_poly(), vec![RingElem(1)]);
    }

    #[test]
    fn divisibility() {
        let r = ChainRing::new(RingSpec::Z4).unwrap();
        let xn1 = poly::x_n_minus_one(&r, 7);
        assert!(divides_monic(&r, &xn1, &CyclicPoly::zero(7)).unwrap());
        // X - 1 does not divide 1 + X + ... + X^6 over Z_4: the remainder is 7 = 3
        let ones = CyclicPoly { coeffs: vec![RingElem(1); 7] };
        let x_minus_1 = poly::linear(&r, &RingElem(1));
        assert!(!divides_monic(&r, &x_minus_1, &ones).unwrap());
        let ones_poly = poly::divrem_monic(&r, &xn1, &x_minus_1).0;
        assert!(divides_monic(&r, &ones_poly, &ones).unwrap());
        assert!(divides_monic(&r, &[RingElem(2), RingElem(2)], &ones).is_err());
    }

    #[test]
    fn inner_product_identities() {
        let r = ChainRing::new(RingSpec::galois(2, 2, 2).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u: Vec<RingElem> = (0..5).map(|_| RingElem(rng.gen_range(0..r.size()))).collect();
            let v: Vec<RingElem> = (0..5).map(|_| RingElem(rng.gen_range(0..r.size()))).collect();
            assert_eq!(galois_inner_product(&r, &u, &vec![RingElem(0); 5], 1).unwrap(), RingElem(0));
            for ell in 0..2u32 {
                let lhs = galois_inner_product(&r, &u, &v, ell).unwrap();
                for h in 0..=ell {
                    let sv: Vec<RingElem> = v.iter().map(|&x| r.sigma_pow(x, h)).collect();
                    assert_eq!(galois_inner_product(&r, &u, &sv, ell - h).unwrap(), lhs);
                    // σ^h(⟨σ^{ℓ-h}(v), u⟩_{r-h}), with r - h taken mod r
                    let w: Vec<RingElem> = v.iter().map(|&x| r.sigma_pow(x, ell - h)).collect();
                    let inner = galois_inner_product(&r, &w, &u, (2 - h) % 2).unwrap();
                    assert_eq!(r.sigma_pow(inner, h), lhs);
                }
            }
        }
        assert!(galois_inner_product(&r, &[RingElem(1)], &[], 0).is_err());
    }
}
