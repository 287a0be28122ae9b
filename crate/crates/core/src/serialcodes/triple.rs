use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::DefiningMultiset;
use crate::cosetlab::{CosetAtlas, Slot};
use crate::error::{invalid, Result};

/// A vector of `E_s`: `s` bits with at most one set.
pub type EsVec = Vec<u8>;

/// The `E_s` vector of a coset at the given level: the unit vector `e_L`
/// for `L < s`, zero for `L = s`.
pub fn es_of_level(level: u32, s: u32) -> EsVec {
    (0..s).map(|a| u8::from(a == level)).collect()
}

/// Inverse of [`es_of_level`].
pub fn level_of_es(x: &[u8], s: u32) -> Result<u32> {
    if x.len() != s as usize {
        return invalid(format!("E_s vector of length {} for s = {s}", x.len()));
    }
    if x.iter().any(|&b| b > 1) {
        return invalid("E_s entries must be 0 or 1");
    }
    match x.iter().filter(|&&b| b == 1).count() {
        0 => Ok(s),
        1 => Ok(x.iter().position(|&b| b == 1).unwrap_or(0) as u32),
        _ => invalid("E_s vector has more than one nonzero entry"),
    }
}

/// The `(x, y, z)` encoding: one `E_s` vector per symmetric coset and a
/// pair per asymmetric pair `(F, -F)`, in the atlas slot order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSequence {
    pub s: u32,
    pub x: Vec<EsVec>,
    pub yz: Vec<(EsVec, EsVec)>,
}

impl TripleSequence {
    pub fn from_multiset(m: &DefiningMultiset) -> Self {
        let s = m.s();
        let atlas = m.atlas();
        let x = atlas.symmetric_slots().map(|c| es_of_level(m.level_of(c), s)).collect();
        let yz = atlas
            .pair_slots()
            .map(|(f, g)| (es_of_level(m.level_of(f), s), es_of_level(m.level_of(g), s)))
            .collect();
        TripleSequence { s, x, yz }
    }

    pub fn to_multiset(&self, atlas: Arc<CosetAtlas>) -> Result<DefiningMultiset> {
        let s = self.s;
        let (mut xs, mut yzs) = (self.x.iter(), self.yz.iter());
        let mut levels = vec![s; atlas.omega];
        for slot in atlas.slots() {
            match *slot {
                Slot::Symmetric(c) => {
                    let x = xs.next().ok_or_else(|| short("x"))?;
                    levels[c] = level_of_es(x, s)?;
                }
                Slot::Pair(f, g) => {
                    let (y, z) = yzs.next().ok_or_else(|| short("(y, z)"))?;
                    levels[f] = level_of_es(y, s)?;
                    levels[g] = level_of_es(z, s)?;
                }
            }
        }
        if xs.next().is_some() || yzs.next().is_some() {
            return invalid("triple-sequence is longer than the atlas");
        }
        DefiningMultiset::from_levels(atlas, s, levels)
    }

    /// `x^{[t]} = Σ_{a>t} x^{(a)}` with `x^{(s)} = 1 - Σ_{a<s} x^{(a)}`.
    pub fn cumulative(x: &[u8], t: u32) -> u8 {
        let s = x.len() as u32;
        let top = 1 - x.iter().sum::<u8>();
        x.iter().skip(t as usize + 1).sum::<u8>() + if t < s { top } else { 0 }
    }
}

fn short(what: &str) -> crate::Error {
    crate::Error::Validation(format!("triple-sequence has too few {what} entries"))
}
