//! Cyclotomic cosets modulo `n`, their symmetric/asymmetric classification
//! and the counting functions `γ`, `β`, `ω` and membership in `N_q`.
//!
//! Ordering is fixed once here and reused everywhere downstream: cosets are
//! sorted by `(divisor, smallest element)`, and inside an asymmetric pair the
//! coset with the smaller representative is the designated `F`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, gcd, mod_pow};
use crate::error::{internal, invalid, Result};

/// Largest accepted modulus.
pub const MAX_MODULUS: u64 = 1 << 20;

/// Multiplicative order of `q` modulo `j`; `ord_1(q) = 1`.
pub fn mult_order(q: u64, j: u64) -> Result<u64> {
    if q < 2 {
        return invalid(format!("q must be at least 2, got {q}"));
    }
    if j == 0 {
        return invalid("modulus must be positive");
    }
    if gcd(q, j) != 1 {
        return invalid(format!("gcd({q}, {j}) != 1"));
    }
    if j == 1 {
        return Ok(1);
    }
    let qj = q % j;
    let mut acc = qj;
    let mut m = 1;
    while acc != 1 {
        acc = ((acc as u128 * qj as u128) % j as u128) as u64;
        m += 1;
    }
    Ok(m)
}

/// Whether `j` divides `q^i + 1` for some `i >= 1`.
pub fn in_nq(j: u64, q: u64) -> Result<bool> {
    let ord = mult_order(q, j)?;
    if j <= 2 {
        return Ok(true);
    }
    let minus_one = j - 1;
    let mut acc = 1u64;
    for _ in 0..ord {
        acc = ((acc as u128 * (q % j) as u128) % j as u128) as u64;
        if acc == minus_one {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(γ(j;q), β(j;q))`: number of symmetric cosets and of asymmetric pairs
/// made of elements `z` with `n / gcd(n, z) = j`.
pub fn gamma_beta(j: u64, q: u64) -> Result<(u64, u64)> {
    let ord = mult_order(q, j)?;
    let phi = euler_phi(j);
    if in_nq(j, q)? {
        if phi % ord != 0 {
            return internal(format!("phi({j}) = {phi} not divisible by ord = {ord}"));
        }
        Ok((phi / ord, 0))
    } else {
        if phi % (2 * ord) != 0 {
            return internal(format!("phi({j}) = {phi} not divisible by 2*ord = {}", 2 * ord));
        }
        Ok((0, phi / (2 * ord)))
    }
}

/// `B_{n,q}`: total degree of the self-reciprocal part of `X^n - 1`.
pub fn self_reciprocal_degree(n: u64, q: u64) -> Result<u64> {
    let mut total = 0;
    for d in divisors(n) {
        if in_nq(d, q)? {
            total += euler_phi(d);
        }
    }
    Ok(total)
}

fn check_modulus(n: u64, q: u64) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        return invalid(format!("n must lie in [1, {MAX_MODULUS}], got {n}"));
    }
    if q < 2 {
        return invalid(format!("q must be at least 2, got {q}"));
    }
    if gcd(n, q) != 1 {
        return invalid(format!("gcd(n, q) = gcd({n}, {q}) != 1"));
    }
    Ok(())
}

/// One `q`-cyclotomic coset modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub rep: u32,
    pub elements: Vec<u32>,
    pub divisor: u64,
    pub symmetric: bool,
    pub partner_rep: Option<u32>,
}

impl Coset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn orbit(z: u64, n: u64, q: u64) -> Vec<u32> {
    let mut out = vec![z as u32];
    let mut cur = (z as u128 * q as u128 % n as u128) as u64;
    while cur != z {
        out.push(cur as u32);
        cur = (cur as u128 * q as u128 % n as u128) as u64;
    }
    out.sort_unstable();
    out
}

fn negate_residue(z: u32, n: u64) -> u32 {
    ((n - z as u64) % n) as u32
}

/// The coset `{z, qz, q²z, ...} mod n`.
pub fn coset_of(z: u64, n: u64, q: u64) -> Result<Coset> {
    check_modulus(n, q)?;
    if z >= n {
        return invalid(format!("residue {z} out of range for n = {n}"));
    }
    let elements = orbit(z, n, q);
    let negated: Vec<u32> = {
        let mut v: Vec<u32> = elements.iter().map(|&e| negate_residue(e, n)).collect();
        v.sort_unstable();
        v
    };
    let symmetric = negated == elements;
    let rep = elements[0];
    Ok(Coset {
        rep,
        divisor: n / gcd(n, rep as u64),
        partner_rep: if symmetric { None } else { Some(negated[0]) },
        symmetric,
        elements,
    })
}

/// Per-divisor grouping of an atlas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub divisor: u64,
    pub order: u64,
    pub in_nq: bool,
    pub gamma: u64,
    pub beta: u64,
    /// Indices into [`CosetAtlas::cosets`] of the symmetric cosets `Λ_j`.
    pub symmetric: Vec<usize>,
    /// Index pairs `(F, -F)` of the asymmetric pairs `Λ̄_j`.
    pub pairs: Vec<(usize, usize)>,
}

/// One independent coordinate of a cyclic serial code: a symmetric coset or
/// an asymmetric pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Symmetric(usize),
    Pair(usize, usize),
}

/// All `q`-cyclotomic cosets modulo `n` with their classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAtlas {
    pub n: u64,
    pub q: u64,
    pub cosets: Vec<Coset>,
    pub omega: usize,
    pub by_divisor: BTreeMap<u64, DivisorClass>,
    coset_of_residue: Vec<u32>,
    slots: Vec<Slot>,
}

impl CosetAtlas {
    pub fn build(n: u64, q: u64) -> Result<Self> {
        check_modulus(n, q)?;
        let mut seen = vec![false; n as usize];
        let mut cosets = Vec::new();
        for z in 0..n {
            if seen[z as usize] {
                continue;
            }
            let c = coset_of(z, n, q)?;
            for &e in &c.elements {
                seen[e as usize] = true;
            }
            cosets.push(c);
        }
        cosets.sort_by_key(|c| (c.divisor, c.rep));

        let mut coset_of_residue = vec![0u32; n as usize];
        for (idx, c) in cosets.iter().enumerate() {
            for &e in &c.elements {
                coset_of_residue[e as usize] = idx as u32;
            }
        }

        let mut by_divisor = BTreeMap::new();
        for j in divisors(n) {
            let (gamma, beta) = gamma_beta(j, q)?;
            by_divisor.insert(
                j,
                DivisorClass {
                    divisor: j,
                    order: mult_order(q, j)?,
                    in_nq: in_nq(j, q)?,
                    gamma,
                    beta,
                    symmetric: Vec::new(),
                    pairs: Vec::new(),
                },
            );
        }
        for (idx, c) in cosets.iter().enumerate() {
            let class = by_divisor
                .get_mut(&c.divisor)
                .ok_or_else(|| crate::Error::Internal(format!("divisor {} missing", c.divisor)))?;
            if c.symmetric {
                class.symmetric.push(idx);
            } else {
                let partner = coset_of_residue[c.partner_rep.unwrap_or(0) as usize] as usize;
                if c.rep < cosets[partner].rep {
                    class.pairs.push((idx, partner));
                }
            }
        }

        let mut slots = Vec::new();
        for class in by_divisor.values() {
            if class.symmetric.len() as u64 != class.gamma || class.pairs.len() as u64 != class.beta {
                return internal(format!(
                    "divisor {}: found {} symmetric / {} pairs, expected {} / {}",
                    class.divisor,
                    class.symmetric.len(),
                    class.pairs.len(),
                    class.gamma,
                    class.beta
                ));
            }
            // Merge symmetric cosets and pairs of this divisor by representative.
            let mut entries: Vec<(u32, Slot)> = class
                .symmetric
                .iter()
                .map(|&i| (cosets[i].rep, Slot::Symmetric(i)))
                .chain(class.pairs.iter().map(|&(f, g)| (cosets[f].rep, Slot::Pair(f, g))))
                .collect();
            entries.sort_by_key(|e| e.0);
            slots.extend(entries.into_iter().map(|e| e.1));
        }

        let omega = cosets.len();
        Ok(CosetAtlas {
            n,
            q,
            cosets,
            omega,
            by_divisor,
            coset_of_residue,
            slots,
        })
    }

    /// Index of the coset containing residue `z`.
    pub fn coset_index(&self, z: u32) -> usize {
        self.coset_of_residue[z as usize] as usize
    }

    /// Symmetric cosets and asymmetric pairs in canonical order.
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn symmetric_slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().filter_map(|s| match s {
            Slot::Symmetric(i) => Some(*i),
            _ => None,
        })
    }

    pub fn pair_slots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slots.iter().filter_map(|s| match s {
            Slot::Pair(f, g) => Some((*f, *g)),
            _ => None,
        })
    }

    /// `Σ γ + 2 Σ β` over the divisors of `n`.
    pub fn omega_from_counts(&self) -> u64 {
        self.by_divisor
            .values()
            .map(|c| c.gamma + 2 * c.beta)
            .sum()
    }

    pub fn self_reciprocal_degree(&self) -> u64 {
        self.by_divisor
            .values()
            .filter(|c| c.in_nq)
            .map(|c| euler_phi(c.divisor))
            .sum()
    }

    /// Set of residues forming the given cosets.
    pub fn union_of(&self, coset_indices: impl IntoIterator<Item = usize>) -> ResidueSet {
        let mut set = BTreeSet::new();
        for i in coset_indices {
            set.extend(self.cosets[i].elements.iter().copied());
        }
        ResidueSet(set)
    }

    /// Decompose a `q`-closed set into coset indices; errors if not closed.
    pub fn decompose(&self, set: &ResidueSet) -> Result<Vec<usize>> {
        let mut out = BTreeSet::new();
        for &z in &set.0 {
            if z as u64 >= self.n {
                return invalid(format!("residue {z} out of range for n = {}", self.n));
            }
            out.insert(self.coset_index(z));
        }
        for &i in &out {
            if !self.cosets[i].elements.iter().all(|e| set.0.contains(e)) {
                return invalid(format!(
                    "set is not {}-closed modulo {}: missing part of coset of {}",
                    self.q, self.n, self.cosets[i].rep
                ));
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn full_set(&self) -> ResidueSet {
        ResidueSet((0..self.n as u32).collect())
    }
}

/// A subset of `[0, n-1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResidueSet(pub BTreeSet<u32>);

impl ResidueSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_slice(v: &[u32]) -> Self {
        ResidueSet(v.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, z: u32) -> bool {
        self.0.contains(&z)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// `-A = {n - z mod n}`.
    pub fn negate(&self, n: u64) -> Self {
        ResidueSet(self.0.iter().map(|&z| negate_residue(z, n)).collect())
    }

    /// `Ā = [0, n-1] \ A`.
    pub fn complement(&self, n: u64) -> Self {
        ResidueSet((0..n as u32).filter(|z| !self.0.contains(z)).collect())
    }

    /// `uA = {uz mod n}`; requires `gcd(u, n) = 1`.
    pub fn scale(&self, u: u64, n: u64) -> Result<Self> {
        if gcd(u % n.max(1), n) != 1 && n > 1 {
            return invalid(format!("scale factor {u} not invertible modulo {n}"));
        }
        Ok(ResidueSet(
            self.0
                .iter()
                .map(|&z| (z as u128 * u as u128 % n as u128) as u32)
                .collect(),
        ))
    }

    pub fn union(&self, other: &Self) -> Self {
        ResidueSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ResidueSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        ResidueSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_q_closed(&self, n: u64, q: u64) -> bool {
        self.0
            .iter()
            .all(|&z| self.0.contains(&((z as u128 * q as u128 % n as u128) as u32)))
    }
}

/// `q^k mod n`, used for the `p^ℓ` scalings of defining sets.
pub fn power_mod(q: u64, k: u64, n: u64) -> u64 {
    mod_pow(q, k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(3, 11).unwrap(), 5);
        assert_eq!(mult_order(5, 1).unwrap(), 1);
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn nq_examples() {
        assert!(in_nq(3, 2).unwrap());
        assert!(!in_nq(7, 2).unwrap());
        assert!(in_nq(1, 9).unwrap());
        assert!(in_nq(2, 3).unwrap());
        assert!(in_nq(9, 2).is_ok());
        assert!(in_nq(6, 3).is_err());
    }

    #[test]
    fn gamma_beta_examples() {
        assert_eq!(gamma_beta(7, 2).unwrap(), (0, 1));
        assert_eq!(gamma_beta(1, 2).unwrap(), (1, 0));
        assert_eq!(gamma_beta(21, 2).unwrap(), (0, 1));
        assert_eq!(gamma_beta(3, 2).unwrap(), (1, 0));
    }

    #[test]
    fn coset_examples() {
        let c = coset_of(1, 7, 2).unwrap();
        assert_eq!(c.elements, vec![1, 2, 4]);
        assert!(!c.symmetric);
        assert_eq!(c.partner_rep, Some(3));
        let z = coset_of(0, 13, 3).unwrap();
        assert_eq!(z.elements, vec![0]);
        assert!(z.symmetric);
        let c11 = coset_of(1, 11, 3).unwrap();
        assert_eq!(c11.elements, vec![1, 3, 4, 5, 9]);
        assert!(coset_of(7, 7, 2).is_err());
    }

    #[test]
    fn atlas_mod_7() {
        let atlas = CosetAtlas::build(7, 2).unwrap();
        assert_eq!(atlas.omega, 3);
        let reps: Vec<u32> = atlas.cosets.iter().map(|c| c.rep).collect();
        assert_eq!(reps, vec![0, 1, 3]);
        assert_eq!(atlas.slots(), &[Slot::Symmetric(0), Slot::Pair(1, 2)]);
        assert_eq!(atlas.by_divisor[&7].pairs, vec![(1, 2)]);
    }

    #[test]
    fn atlas_trivial_and_21() {
        let one = CosetAtlas::build(1, 5).unwrap();
        assert_eq!(one.omega, 1);
        assert_eq!(one.cosets[0].elements, vec![0]);

        let atlas = CosetAtlas::build(21, 2).unwrap();
        assert_eq!(atlas.omega, 6);
        assert_eq!(atlas.omega as u64, atlas.omega_from_counts());
        assert_eq!(atlas.by_divisor[&3].symmetric.len(), 1);
        assert_eq!(atlas.by_divisor[&7].pairs.len(), 1);
        assert_eq!(atlas.by_divisor[&21].pairs.len(), 1);
        assert_eq!(atlas.self_reciprocal_degree(), 3);
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(CosetAtlas::build(6, 2).is_err());
        assert!(CosetAtlas::build(0, 2).is_err());
        assert!(CosetAtlas::build(MAX_MODULUS + 1, 3).is_err());
    }

    #[test]
    fn set_operations() {
        let a = ResidueSet::from_slice(&[1, 2, 4]);
        assert_eq!(a.negate(7), ResidueSet::from_slice(&[3, 5, 6]));
        assert_eq!(ResidueSet::empty().complement(5), ResidueSet::from_slice(&[0, 1, 2, 3, 4]));
        assert_eq!(a.scale(2, 7).unwrap(), a);
        assert!(a.scale(7, 7).is_err());
        assert!(a.is_q_closed(7, 2));
        assert!(!ResidueSet::from_slice(&[1, 2]).is_q_closed(7, 2));
    }

    #[test]
    fn decompose_rejects_open_sets() {
        let atlas = CosetAtlas::build(7, 2).unwrap();
        assert_eq!(atlas.decompose(&ResidueSet::from_slice(&[0, 3, 5, 6])).unwrap(), vec![0, 2]);
        assert!(atlas.decompose(&ResidueSet::from_slice(&[1])).is_err());
    }
}
