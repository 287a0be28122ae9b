//! Dense univariate polynomials over a [`CommRing`], constant term first.
//!
//! The zero polynomial is the empty vector; every function returns trimmed
//! vectors.

use super::{CommRing, Field};

pub fn trim<R: CommRing>(ring: &R, mut f: Vec<R::Elem>) -> Vec<R::Elem> {
    while f.last().is_some_and(|c| ring.is_zero(c)) {
        f.pop();
    }
    f
}

/// Degree, `None` for the zero polynomial.
pub fn degree<R: CommRing>(f: &[R::Elem]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn is_monic<R: CommRing>(ring: &R, f: &[R::Elem]) -> bool {
    f.last().is_some_and(|c| *c == ring.one())
}

pub fn add<R: CommRing>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let n = f.len().max(g.len());
    let z = ring.zero();
    let out = (0..n)
        .map(|i| ring.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
        .collect();
    trim(ring, out)
}

pub fn sub<R: CommRing>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let n = f.len().max(g.len());
    let z = ring.zero();
    let out = (0..n)
        .map(|i| ring.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
        .collect();
    trim(ring, out)
}

pub fn scale<R: CommRing>(ring: &R, c: &R::Elem, f: &[R::Elem]) -> Vec<R::Elem> {
    trim(ring, f.iter().map(|x| ring.mul(c, x)).collect())
}

pub fn mul<R: CommRing>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ring.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            let t = ring.mul(a, b);
            out[i + j] = ring.add(&out[i + j], &t);
        }
    }
    trim(ring, out)
}

pub fn product<R: CommRing>(ring: &R, factors: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    factors
        .iter()
        .fold(vec![ring.one()], |acc, f| mul(ring, &acc, f))
}

/// Quotient and remainder by a monic divisor; exact over any commutative ring.
pub fn divrem_monic<R: CommRing>(
    ring: &R,
    f: &[R::Elem],
    g: &[R::Elem],
) -> (Vec<R::Elem>, Vec<R::Elem>) {
    assert!(is_monic(ring, g), "divisor must be monic");
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() <= dg {
        return (Vec::new(), trim(ring, rem));
    }
    let mut quot = vec![ring.zero(); rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = rem[k].clone();
        if ring.is_zero(&c) {
            continue;
        }
        quot[k - dg] = c.clone();
        for (i, gi) in g.iter().enumerate() {
            let t = ring.mul(&c, gi);
            rem[k - dg + i] = ring.sub(&rem[k - dg + i], &t);
        }
    }
    rem.truncate(dg);
    (trim(ring, quot), trim(ring, rem))
}

pub fn rem_monic<R: CommRing>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    divrem_monic(ring, f, g).1
}

/// `X^n - 1`.
pub fn x_n_minus_one<R: CommRing>(ring: &R, n: usize) -> Vec<R::Elem> {
    let mut f = vec![ring.zero(); n + 1];
    f[0] = ring.neg(&ring.one());
    f[n] = ring.one();
    trim(ring, f)
}

/// `X - c`.
pub fn linear<R: CommRing>(ring: &R, c: &R::Elem) -> Vec<R::Elem> {
    vec![ring.neg(c), ring.one()]
}

pub fn eval<R: CommRing>(ring: &R, f: &[R::Elem], x: &R::Elem) -> R::Elem {
    f.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}

/// Map coefficients into another ring.
pub fn map<R: CommRing, S: CommRing>(
    target: &S,
    f: &[R::Elem],
    phi: impl Fn(&R::Elem) -> S::Elem,
) -> Vec<S::Elem> {
    trim(target, f.iter().map(phi).collect())
}

pub fn make_monic<F: Field>(field: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    match f.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            scale(field, &inv, f)
        }
    }
}

/// Division with remainder over a field.
pub fn divrem<F: Field>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let lc = g.last().expect("division by zero polynomial");
    let inv = field.inv(lc).expect("nonzero leading coefficient");
    let gm = scale(field, &inv, g);
    let (q, r) = divrem_monic(field, f, &gm);
    (scale(field, &inv, &q), r)
}

/// Monic gcd over a field.
pub fn gcd<F: Field>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(field, f.to_vec());
    let mut b = trim(field, g.to_vec());
    while !b.is_empty() {
        let r = divrem(field, &a, &b).1;
        a = b;
        b = r;
    }
    make_monic(field, &a)
}

/// `(d, s, t)` with `s f + t g = d` and `d` the monic gcd.
pub fn ext_gcd<F: Field>(
    field: &F,
    f: &[F::Elem],
    g: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let mut r0 = trim(field, f.to_vec());
    let mut r1 = trim(field, g.to_vec());
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s2 = sub(field, &s0, &mul(field, &q, &s1));
        let t2 = sub(field, &t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(lc) => {
            let inv = field.inv(lc).expect("nonzero");
            (
                scale(field, &inv, &r0),
                scale(field, &inv, &s0),
                scale(field, &inv, &t0),
            )
        }
    }
}

/// `base^e mod m` for monic `m`.
pub fn pow_mod<R: CommRing>(ring: &R, base: &[R::Elem], mut e: u128, m: &[R::Elem]) -> Vec<R::Elem> {
    let mut acc = rem_monic(ring, &[ring.one()], m);
    let mut b = rem_monic(ring, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem_monic(ring, &mul(ring, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem_monic(ring, &mul(ring, &b, &b), m);
        }
    }
    acc
}

/// Rabin's irreducibility test for a monic `f` over a field of `field_size`
/// elements.
pub fn is_irreducible<F: Field>(field: &F, f: &[F::Elem], field_size: u128) -> bool {
    let d = match degree::<F>(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x = vec![field.zero(), field.one()];
    // frob[k] = X^{Q^k} mod f
    let mut frob = vec![rem_monic(field, &x, f)];
    for k in 1..=d {
        let next = pow_mod(field, &frob[k - 1], field_size, f);
        frob.push(next);
    }
    if !sub(field, &frob[d], &rem_monic(field, &x, f)).is_empty() {
        return false;
    }
    for (prime, _) in crate::arith::factorize(d as u64) {
        let k = d / prime as usize;
        let diff = sub(field, &frob[k], &x);
        if gcd(field, f, &diff).len() != 1 {
            return false;
        }
    }
    true
}
