use super::poly;
use super::{CommRing, Field, Quotient, Zmod};
use crate::arith::{checked_pow, factorize_u128, is_prime};
use crate::error::{internal, invalid, Result};

/// Rings with a residue field modulo `p` and `p`-adic precision `a`, as
/// needed by Hensel lifting.
pub(crate) trait Liftable: CommRing {
    type Res: Field;
    fn residue_ring(&self) -> &Self::Res;
    fn residue(&self, x: &Self::Elem) -> <Self::Res as CommRing>::Elem;
    fn embed(&self, x: &<Self::Res as CommRing>::Elem) -> Self::Elem;
    /// Exact division by `p^k` of an element divisible by `p^k`.
    fn div_p_pow(&self, x: &Self::Elem, k: u32) -> Self::Elem;
    fn p_pow(&self, k: u32) -> Self::Elem;
    fn precision(&self) -> u32;
}

/// `Z/p^aZ` with its residue field `F_p`.
#[derive(Debug, Clone)]
pub(crate) struct PadicInts {
    p: u64,
    a: u32,
    ring: Zmod,
    field: Zmod,
}

impl PadicInts {
    pub(crate) fn new(p: u64, a: u32) -> Self {
        let pa = checked_pow(p, a).expect("p^a overflows");
        PadicInts {
            p,
            a,
            ring: Zmod::new(pa),
            field: Zmod::new(p),
        }
    }
}

impl CommRing for PadicInts {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.ring.one()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.ring.sub(a, b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.ring.neg(a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.ring.mul(a, b)
    }
    fn from_u64(&self, v: u64) -> u64 {
        self.ring.from_u64(v)
    }
    fn size(&self) -> Option<u128> {
        self.ring.size()
    }
    fn elem_at(&self, idx: u128) -> u64 {
        self.ring.elem_at(idx)
    }
    fn index_of(&self, a: &u64) -> u128 {
        *a as u128
    }
}

impl Liftable for PadicInts {
    type Res = Zmod;
    fn residue_ring(&self) -> &Zmod {
        &self.field
    }
    fn residue(&self, x: &u64) -> u64 {
        x % self.p
    }
    fn embed(&self, x: &u64) -> u64 {
        *x
    }
    fn div_p_pow(&self, x: &u64, k: u32) -> u64 {
        x / self.p.pow(k)
    }
    fn p_pow(&self, k: u32) -> u64 {
        self.ring.from_u64(self.p.pow(k))
    }
    fn precision(&self) -> u32 {
        self.a
    }
}

/// Lift a coprime factorization `f ≡ g0·h0 (mod p)` of a monic `f` to
/// `f = g·h` with `g`, `h` monic.
pub(crate) fn hensel_pair<L: Liftable>(
    ring: &L,
    f: &[L::Elem],
    g0: &[<L::Res as CommRing>::Elem],
    h0: &[<L::Res as CommRing>::Elem],
) -> Result<(Vec<L::Elem>, Vec<L::Elem>)> {
    let res = ring.residue_ring();
    let (d, _, t) = poly::ext_gcd(res, g0, h0);
    if d.len() != 1 {
        return internal("Hensel lifting needs coprime residue factors");
    }
    let embed = |v: &[<L::Res as CommRing>::Elem]| -> Vec<L::Elem> {
        poly::trim(ring, v.iter().map(|c| ring.embed(c)).collect())
    };
    let mut g = embed(g0);
    let mut h = embed(h0);
    for k in 1..ring.precision() {
        let err = poly::sub(ring, f, &poly::mul(ring, &g, &h));
        if err.is_empty() {
            break;
        }
        let e_bar: Vec<_> = poly::trim(
            res,
            err.iter()
                .map(|c| ring.residue(&ring.div_p_pow(c, k)))
                .collect(),
        );
        let dg = poly::rem_monic(res, &poly::mul(res, &t, &e_bar), g0);
        let (dh, rem) = poly::divrem_monic(res, &poly::sub(res, &e_bar, &poly::mul(res, &h0, &dg)), g0);
        if !rem.is_empty() {
            return internal("Hensel step left a remainder");
        }
        let pk = ring.p_pow(k);
        g = poly::add(ring, &g, &poly::scale(ring, &pk, &embed(&dg)));
        h = poly::add(ring, &h, &poly::scale(ring, &pk, &embed(&dh)));
    }
    if poly::mul(ring, &g, &h) != poly::trim(ring, f.to_vec()) {
        return internal("Hensel lifting did not converge");
    }
    Ok((g, h))
}

/// Lift a factorization into pairwise coprime monic residue factors.
pub(crate) fn hensel_lift_all<L: Liftable>(
    ring: &L,
    f: &[L::Elem],
    factors: &[Vec<<L::Res as CommRing>::Elem>],
) -> Result<Vec<Vec<L::Elem>>> {
    match factors.len() {
        0 => {
            if poly::trim(ring, f.to_vec()) == vec![ring.one()] {
                Ok(Vec::new())
            } else {
                internal("empty factor list for a non-unit polynomial")
            }
        }
        1 => Ok(vec![poly::trim(ring, f.to_vec())]),
        _ => {
            let res = ring.residue_ring();
            let rest = poly::product(res, &factors[1..]);
            let (g, h) = hensel_pair(ring, f, &factors[0], &rest)?;
            let mut out = vec![g];
            out.extend(hensel_lift_all(ring, &h, &factors[1..])?);
            Ok(out)
        }
    }
}

/// Candidate monic polynomials of degree `d` over a field of size `size`,
/// coefficients ordered lexicographically from the constant term upward,
/// skipping those with zero constant term when `d > 1`.
fn lex_candidates<F: Field>(
    field: &F,
    d: usize,
    size: u128,
) -> impl Iterator<Item = Vec<F::Elem>> + '_ {
    let start = if d > 1 { size.pow(d as u32 - 1) } else { 0 };
    let end = size.pow(d as u32);
    (start..end).map(move |mut idx| {
        let mut coeffs = vec![field.zero(); d + 1];
        for i in (0..d).rev() {
            coeffs[i] = field.elem_at(idx % size);
            idx /= size;
        }
        coeffs[d] = field.one();
        coeffs
    })
}

/// Lexicographically smallest monic irreducible of degree `d` over `field`.
pub fn lex_smallest_irreducible<F: Field>(field: &F, d: usize) -> Result<Vec<F::Elem>> {
    let size = field.size().expect("field size");
    if size.checked_pow(d as u32).is_none() {
        return invalid(format!("extension of degree {d} is too large"));
    }
    lex_candidates(field, d, size)
        .find(|f| poly::is_irreducible(field, f, size))
        .ok_or_else(|| crate::Error::Internal(format!("no irreducible of degree {d}")))
}

/// Lexicographically smallest primitive monic polynomial of degree `r`
/// over `F_p`.
pub fn lex_smallest_primitive(p: u64, r: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let field = Zmod::new(p);
    let q = checked_pow(p, r).ok_or_else(|| crate::Error::Validation("p^r overflows".into()))? as u128;
    let order = q - 1;
    let primes: Vec<u128> = factorize_u128(order).into_iter().map(|(l, _)| l).collect();
    let x = vec![0u64, 1];
    let found = lex_candidates(&field, r as usize, p as u128).find(|f| {
            if f[0] == 0 || !poly::is_irreducible(&field, f, p as u128) {
                return false;
            }
            primes
                .iter()
                .all(|&l| poly::pow_mod(&field, &x, order / l, f) != vec![1])
    });
    found.ok_or_else(|| crate::Error::Internal(format!("no primitive polynomial of degree {r}")))
}

/// The Galois ring `GR(p^a, r) = Z_{p^a}[ξ]/(F(ξ))`, where `F` is the
/// Hensel lift of the lexicographically smallest primitive polynomial of
/// degree `r` over `F_p` to a divisor of `X^{p^r-1} - 1`. The class `ξ` of
/// the indeterminate generates the Teichmüller units.
#[derive(Debug, Clone)]
pub struct GaloisRing {
    p: u64,
    a: u32,
    r: u32,
    q: u64,
    ring: Quotient<Zmod>,
    field: Quotient<Zmod>,
}

impl GaloisRing {
    pub fn new(p: u64, a: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if a == 0 || r == 0 {
            return invalid("a and r must be positive");
        }
        let pa = checked_pow(p, a).ok_or_else(|| crate::Error::Validation("p^a overflows".into()))?;
        let q = checked_pow(p, r).ok_or_else(|| crate::Error::Validation("p^r overflows".into()))?;
        if pa > 1 << 31 || q > 1 << 24 {
            return invalid(format!("GR({p}^{a}, {r}) is too large for explicit arithmetic"));
        }
        let f = lex_smallest_primitive(p, r)?;
        let lifted = if a == 1 {
            f.clone()
        } else {
            let zp = Zmod::new(p);
            let padic = PadicInts::new(p, a);
            let big = poly::x_n_minus_one(&zp, (q - 1) as usize);
            let (cofactor, rem) = poly::divrem_monic(&zp, &big, &f);
            if !rem.is_empty() {
                return internal("primitive polynomial does not divide X^{q-1} - 1");
            }
            let target = poly::x_n_minus_one(&padic, (q - 1) as usize);
            hensel_pair(&padic, &target, &f, &cofactor)?.0
        };
        Ok(GaloisRing {
            p,
            a,
            r,
            q,
            ring: Quotient::new(Zmod::new(pa), &lifted),
            field: Quotient::new(Zmod::new(p), &f),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    /// Residue field size `p^r`.
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Characteristic `p^a`.
    pub fn pa(&self) -> u64 {
        self.ring.base().modulus()
    }

    pub fn ring(&self) -> &Quotient<Zmod> {
        &self.ring
    }

    pub fn residue_field(&self) -> &Quotient<Zmod> {
        &self.field
    }

    /// Defining polynomial over `Z_{p^a}`.
    pub fn modulus(&self) -> Vec<u64> {
        self.ring.modulus()
    }

    /// Teichmüller generator `ξ`.
    pub fn generator(&self) -> Vec<u64> {
        self.ring.gen()
    }

    pub fn pi(&self, x: &[u64]) -> Vec<u64> {
        x.iter().map(|c| c % self.p).collect()
    }

    pub fn embed_residue(&self, y: &[u64]) -> Vec<u64> {
        y.to_vec()
    }

    pub fn is_unit(&self, x: &[u64]) -> bool {
        x.iter().any(|c| c % self.p != 0)
    }

    pub fn inverse(&self, x: &[u64]) -> Result<Vec<u64>> {
        if !self.is_unit(x) {
            return invalid("inverse of a non-unit");
        }
        let x = x.to_vec();
        let y0 = self.field.inv(&self.pi(&x)).expect("unit residue");
        let mut y = self.embed_residue(&y0);
        let two = self.ring.from_u64(2);
        let mut prec = 1;
        while prec < self.a {
            let xy = self.ring.mul(&x, &y);
            y = self.ring.mul(&y, &self.ring.sub(&two, &xy));
            prec *= 2;
        }
        if self.ring.mul(&x, &y) != self.ring.one() {
            return internal("Newton inversion failed");
        }
        Ok(y)
    }

    /// The Teichmüller representative congruent to `x` modulo `p`.
    pub fn teichmuller(&self, x: &[u64]) -> Vec<u64> {
        let mut y = x.to_vec();
        for _ in 1..self.a {
            y = self.ring.pow(&y, self.q as u128);
        }
        y
    }

    /// Teichmüller digits `t_0, …, t_{a-1}` with `x = Σ t_i p^i`.
    pub fn teichmuller_digits(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut rest = x.to_vec();
        let mut digits = Vec::with_capacity(self.a as usize);
        for _ in 0..self.a {
            let t = self.teichmuller(&self.pi(&rest));
            let diff = self.ring.sub(&rest, &t);
            rest = diff.iter().map(|c| c / self.p).collect();
            digits.push(t);
        }
        digits
    }

    /// Frobenius automorphism, as the substitution `ξ ↦ ξ^p`.
    pub fn frobenius(&self, x: &[u64]) -> Vec<u64> {
        let xi_p = self.ring.pow(&self.generator(), self.p as u128);
        let coeffs: Vec<Vec<u64>> = x.iter().map(|&c| self.ring.from_u64(c)).collect();
        coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, &xi_p), c))
    }

    /// Frobenius from its definition on Teichmüller digits:
    /// `σ(Σ t_i p^i) = Σ t_i^p p^i`.
    pub fn frobenius_by_digits(&self, x: &[u64]) -> Vec<u64> {
        let mut acc = self.ring.zero();
        let mut scale = self.ring.one();
        let pe = self.ring.from_u64(self.p);
        for t in self.teichmuller_digits(x) {
            let tp = self.ring.pow(&t, self.p as u128);
            acc = self.ring.add(&acc, &self.ring.mul(&scale, &tp));
            scale = self.ring.mul(&scale, &pe);
        }
        acc
    }

    pub fn frobenius_pow(&self, x: &[u64], k: u32) -> Vec<u64> {
        let mut y = x.to_vec();
        for _ in 0..(k % self.r) {
            y = self.frobenius(&y);
        }
        y
    }

    pub fn size(&self) -> u128 {
        self.ring.size().expect("ring size")
    }

    pub fn index_of(&self, x: &[u64]) -> u128 {
        self.ring.index_of(&x.to_vec())
    }

    pub fn elem_at(&self, idx: u128) -> Vec<u64> {
        self.ring.elem_at(idx)
    }
}

impl CommRing for GaloisRing {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        self.ring.zero()
    }
    fn one(&self) -> Vec<u64> {
        self.ring.one()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.ring.sub(a, b)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        self.ring.neg(a)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.ring.mul(a, b)
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        self.ring.from_u64(v)
    }
    fn size(&self) -> Option<u128> {
        self.ring.size()
    }
    fn elem_at(&self, idx: u128) -> Vec<u64> {
        self.ring.elem_at(idx)
    }
    fn index_of(&self, a: &Vec<u64>) -> u128 {
        self.ring.index_of(a)
    }
}

impl Liftable for GaloisRing {
    type Res = Quotient<Zmod>;
    fn residue_ring(&self) -> &Quotient<Zmod> {
        &self.field
    }
    fn residue(&self, x: &Vec<u64>) -> Vec<u64> {
        self.pi(x)
    }
    fn embed(&self, x: &Vec<u64>) -> Vec<u64> {
        x.clone()
    }
    fn div_p_pow(&self, x: &Vec<u64>, k: u32) -> Vec<u64> {
        let d = self.p.pow(k);
        x.iter().map(|c| c / d).collect()
    }
    fn p_pow(&self, k: u32) -> Vec<u64> {
        self.ring.from_u64(self.p.pow(k))
    }
    fn precision(&self) -> u32 {
        self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primitive_choice() {
        // X^2 + 1 over F_3 is irreducible but X has order 4, not 8
        assert_eq!(lex_smallest_primitive(3, 2).unwrap(), vec![2, 1, 1]);
        assert_eq!(lex_smallest_primitive(2, 3).unwrap(), vec![1, 0, 1, 1]);
        // r = 1: X - g with g a primitive root
        assert_eq!(lex_smallest_primitive(3, 1).unwrap(), vec![1, 1]);
        assert_eq!(lex_smallest_primitive(2, 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn generator_order() {
        for (p, a, r) in [(2, 2, 2), (2, 3, 1), (3, 2, 1), (3, 3, 2), (2, 2, 3)] {
            let gr = GaloisRing::new(p, a, r).unwrap();
            let xi = gr.generator();
            let q = gr.q() as u128;
            assert_eq!(gr.ring().pow(&xi, q - 1), gr.one(), "({p},{a},{r})");
            for (l, _) in factorize_u128(q - 1) {
                assert_ne!(gr.ring().pow(&xi, (q - 1) / l), gr.one());
            }
            assert_eq!(gr.pi(&gr.modulus()), gr.residue_field().modulus());
        }
    }

    #[test]
    fn frobenius_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, a, r) in [(2, 2, 2), (2, 2, 1), (3, 2, 1), (2, 3, 3)] {
            let gr = GaloisRing::new(p, a, r).unwrap();
            let size = gr.size();
            for _ in 0..100 {
                let x = gr.elem_at(rng.gen_range(0..size));
                let y = gr.elem_at(rng.gen_range(0..size));
                assert_eq!(gr.frobenius(&x), gr.frobenius_by_digits(&x));
                let mut z = x.clone();
                for _ in 0..r {
                    z = gr.frobenius(&z);
                }
                assert_eq!(z, x);
                assert_eq!(
                    gr.frobenius(&gr.mul(&x, &y)),
                    gr.mul(&gr.frobenius(&x), &gr.frobenius(&y))
                );
                let res = gr.residue_field();
                assert_eq!(gr.pi(&gr.frobenius(&x)), res.pow(&gr.pi(&x), p as u128));
                if r == 1 {
                    assert_eq!(gr.frobenius(&x), x);
                }
            }
        }
    }

    #[test]
    fn teichmuller_and_inverse() {
        let z9 = GaloisRing::new(3, 2, 1).unwrap();
        let t = z9.teichmuller(&vec![3 + 2]);
        assert_eq!(t, vec![8]);
        assert_eq!(z9.ring().pow(&t, 2), z9.one());
        let gr = GaloisRing::new(2, 2, 2).unwrap();
        for i in 0..gr.size() {
            let x = gr.elem_at(i);
            if gr.is_unit(&x) {
                let y = gr.inverse(&x).unwrap();
                assert_eq!(gr.mul(&x, &y), gr.one());
                let t = gr.teichmuller(&x);
                assert_eq!(gr.ring().pow(&t, 3), gr.one());
                assert_eq!(gr.frobenius(&t), gr.ring().pow(&t, 2));
            } else {
                assert!(gr.inverse(&x).is_err());
            }
        }
    }
}
