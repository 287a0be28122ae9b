use std::sync::Arc;

use crate::arith::gcd;
use crate::cosetlab::{CosetAtlas, ResidueSet};
use crate::error::{invalid, Result};

/// An ordered `(s+1)`-tuple `(A_0, …, A_s)` of `q`-closed sets partitioning
/// `[0, n-1]`.
///
/// Stored as the level of every coset of the atlas: coset `c` lies in
/// `A_{level[c]}`.
#[derive(Debug, Clone)]
pub struct DefiningMultiset {
    atlas: Arc<CosetAtlas>,
    s: u32,
    levels: Vec<u32>,
}

impl PartialEq for DefiningMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.atlas.n == other.atlas.n
            && self.atlas.q == other.atlas.q
            && self.s == other.s
            && self.levels == other.levels
    }
}

impl Eq for DefiningMultiset {}

impl std::hash::Hash for DefiningMultiset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.atlas.n, self.atlas.q, self.s, &self.levels).hash(state);
    }
}

impl DefiningMultiset {
    pub fn from_levels(atlas: Arc<CosetAtlas>, s: u32, levels: Vec<u32>) -> Result<Self> {
        if s == 0 {
            return invalid("s must be positive");
        }
        if levels.len() != atlas.omega {
            return invalid(format!("expected {} coset levels, got {}", atlas.omega, levels.len()));
        }
        if let Some(l) = levels.iter().find(|&&l| l > s) {
            return invalid(format!("level {l} exceeds s = {s}"));
        }
        Ok(DefiningMultiset { atlas, s, levels })
    }

    /// From the sets `A_0, …, A_s` themselves.
    pub fn from_parts(atlas: Arc<CosetAtlas>, s: u32, parts: &[ResidueSet]) -> Result<Self> {
        if parts.len() != s as usize + 1 {
            return invalid(format!("expected {} parts, got {}", s + 1, parts.len()));
        }
        let mut levels = vec![None; atlas.omega];
        for (t, part) in parts.iter().enumerate() {
            for c in atlas.decompose(part)? {
                if levels[c].replace(t as u32).is_some() {
                    return invalid(format!("coset of {} appears in two parts", atlas.cosets[c].rep));
                }
            }
        }
        let levels = levels
            .into_iter()
            .enumerate()
            .map(|(c, l)| l.ok_or(c))
            .collect::<std::result::Result<Vec<_>, _>>();
        match levels {
            Ok(levels) => Self::from_levels(atlas, s, levels),
            Err(c) => {
                let rep = atlas.cosets[c].rep;
                invalid(format!("parts do not cover the coset of {rep}"))
            }
        }
    }

    /// From coset representatives per part, e.g. `[[0], [3], [1]]`.
    pub fn from_reps(atlas: Arc<CosetAtlas>, s: u32, reps: &[Vec<u64>]) -> Result<Self> {
        let n = atlas.n;
        let mut parts = Vec::with_capacity(reps.len());
        for list in reps {
            let mut cosets = Vec::new();
            for &z in list {
                if z >= n {
                    return invalid(format!("representative {z} out of range for n = {n}"));
                }
                cosets.push(atlas.coset_index(z as u32));
            }
            let set = atlas.union_of(cosets.iter().copied());
            let expected: usize = cosets.iter().map(|&c| atlas.cosets[c].len()).sum();
            if set.len() != expected {
                return invalid("a coset is listed twice within one part");
            }
            parts.push(set);
        }
        Self::from_parts(atlas, s, &parts)
    }

    pub fn atlas(&self) -> &Arc<CosetAtlas> {
        &self.atlas
    }

    pub fn n(&self) -> u64 {
        self.atlas.n
    }

    pub fn q(&self) -> u64 {
        self.atlas.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Level of every coset, in atlas order.
    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn level_of(&self, coset: usize) -> u32 {
        self.levels[coset]
    }

    /// Coset indices in `A_t`.
    pub fn cosets_at(&self, t: u32) -> impl Iterator<Item = usize> + '_ {
        self.levels
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == t)
            .map(|(c, _)| c)
    }

    pub fn part(&self, t: u32) -> ResidueSet {
        self.atlas.union_of(self.cosets_at(t))
    }

    pub fn parts(&self) -> Vec<ResidueSet> {
        (0..=self.s).map(|t| self.part(t)).collect()
    }

    /// Representatives per part, the inverse of [`Self::from_reps`].
    pub fn reps(&self) -> Vec<Vec<u64>> {
        (0..=self.s)
            .map(|t| self.cosets_at(t).map(|c| self.atlas.cosets[c].rep as u64).collect())
            .collect()
    }

    /// `(|A_0|, …, |A_{s-1}|)`.
    pub fn params(&self) -> Vec<usize> {
        let mut k = vec![0; self.s as usize + 1];
        for (c, &l) in self.levels.iter().enumerate() {
            k[l as usize] += self.atlas.cosets[c].len();
        }
        k.truncate(self.s as usize);
        k
    }

    /// `Σ (s - t) |A_t|`.
    pub fn q_dimension(&self) -> usize {
        self.params()
            .iter()
            .enumerate()
            .map(|(t, &k)| (self.s as usize - t) * k)
            .sum()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.atlas.n != other.atlas.n || self.atlas.q != other.atlas.q || self.s != other.s {
            return invalid("multisets over different (n, q, s)");
        }
        Ok(())
    }

    /// `A^◇ = (A_s, …, A_0)`.
    pub fn diamond(&self) -> Self {
        DefiningMultiset {
            atlas: self.atlas.clone(),
            s: self.s,
            levels: self.levels.iter().map(|&l| self.s - l).collect(),
        }
    }

    /// `uA = (uA_0, …, uA_s)` for `u` coprime to `n`; `u` may be negative.
    pub fn scale(&self, u: i64) -> Result<Self> {
        let n = self.atlas.n as i64;
        let u = u.rem_euclid(n) as u64;
        if gcd(u, self.atlas.n) != 1 {
            return invalid(format!("scale factor {u} is not coprime to n = {n}"));
        }
        let mut levels = vec![0; self.levels.len()];
        for (c, &l) in self.levels.iter().enumerate() {
            let rep = self.atlas.cosets[c].rep as u64;
            let image = (rep as u128 * u as u128 % self.atlas.n as u128) as u32;
            levels[self.atlas.coset_index(image)] = l;
        }
        Ok(DefiningMultiset {
            atlas: self.atlas.clone(),
            s: self.s,
            levels,
        })
    }

    /// `A ⊔ B`: the multiset of `ℂ(A) + ℂ(B)`.
    pub fn sqcup(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_levels(other, u32::min))
    }

    /// `A ⊓ B`: the multiset of `ℂ(A) ∩ ℂ(B)`.
    pub fn sqcap(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_levels(other, u32::max))
    }

    fn zip_levels(&self, other: &Self, f: fn(u32, u32) -> u32) -> Self {
        DefiningMultiset {
            atlas: self.atlas.clone(),
            s: self.s,
            levels: self.levels.iter().zip(&other.levels).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `-p^ℓ A^◇`, the multiset of the `ℓ`-Galois dual.
    pub fn dual(&self, p: u64, ell: u32) -> Result<Self> {
        let n = self.atlas.n;
        let pl = crate::arith::mod_pow(p, ell as u64, n);
        self.diamond().scale(-(pl as i64))
    }

    /// `A ⊓ (-p^ℓ A^◇)`.
    pub fn hull(&self, p: u64, ell: u32) -> Result<Self> {
        self.sqcap(&self.dual(p, ell)?)
    }

    /// All `(s+1)^ω` multisets in mixed-radix order of the levels.
    pub fn all(atlas: Arc<CosetAtlas>, s: u32) -> impl Iterator<Item = DefiningMultiset> {
        let omega = atlas.omega as u32;
        let total = (s as u64 + 1).pow(omega);
        (0..total).map(move |idx| Self::nth(atlas.clone(), s, idx))
    }

    /// Multiset number `idx` in the order of [`Self::all`].
    pub fn nth(atlas: Arc<CosetAtlas>, s: u32, mut idx: u64) -> Self {
        let levels = (0..atlas.omega)
            .map(|_| {
                let l = (idx % (s as u64 + 1)) as u32;
                idx /= s as u64 + 1;
                l
            })
            .collect();
        DefiningMultiset { atlas, s, levels }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atlas7() -> Arc<CosetAtlas> {
        Arc::new(CosetAtlas::build(7, 2).unwrap())
    }

    #[test]
    fn worked_example() {
        let a = DefiningMultiset::from_reps(atlas7(), 2, &[vec![0], vec![3], vec![1]]).unwrap();
        let dual = a.dual(2, 0).unwrap();
        assert_eq!(dual.reps(), vec![vec![3], vec![1], vec![0]]);
        let hull = a.hull(2, 0).unwrap();
        assert_eq!(hull.reps(), vec![vec![], vec![3], vec![0, 1]]);
        assert_eq!(hull.q_dimension(), 3);
        assert_eq!(a.q_dimension(), 5);
        // dim identity: 5 + 9 - 11
        let sum = a.sqcup(&dual).unwrap();
        assert_eq!(a.q_dimension() + dual.q_dimension() - sum.q_dimension(), 3);
    }

    #[test]
    fn idempotence_and_validation() {
        let atlas = atlas7();
        for a in DefiningMultiset::all(atlas.clone(), 2) {
            assert_eq!(a.sqcup(&a).unwrap(), a);
            assert_eq!(a.sqcap(&a).unwrap(), a);
            assert_eq!(a.diamond().diamond(), a);
            assert_eq!(a.dual(2, 0).unwrap().dual(2, 0).unwrap(), a);
            let parts = a.parts();
            assert_eq!(DefiningMultiset::from_parts(atlas.clone(), 2, &parts).unwrap(), a);
        }
        // overlap and gaps
        assert!(DefiningMultiset::from_reps(atlas.clone(), 2, &[vec![0], vec![0], vec![1, 3]]).is_err());
        assert!(DefiningMultiset::from_reps(atlas.clone(), 2, &[vec![0], vec![], vec![1]]).is_err());
        assert!(DefiningMultiset::from_parts(
            atlas.clone(),
            1,
            &[ResidueSet::from_slice(&[1, 2]), ResidueSet::from_slice(&[0, 3, 4, 5, 6])]
        )
        .is_err());
        assert!(DefiningMultiset::from_reps(atlas, 2, &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn scaling() {
        let atlas = atlas7();
        let a = DefiningMultiset::from_reps(atlas, 2, &[vec![0], vec![3], vec![1]]).unwrap();
        // q-closed sets are fixed by q
        assert_eq!(a.scale(2).unwrap(), a);
        assert_eq!(a.scale(-1).unwrap().reps(), vec![vec![0], vec![1], vec![3]]);
        assert!(a.scale(7).is_err());
    }
}
