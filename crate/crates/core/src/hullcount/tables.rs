use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{internal, Result};
use crate::serialcodes::{es_of_level, level_of_es};

fn prefix(x: &[u8], upto: i64) -> i64 {
    if upto < 0 {
        return 0;
    }
    x.iter().take(upto as usize + 1).map(|&b| b as i64).sum()
}

/// `△(x) = Σ_t min{Σ_{a≤t} x^(a), 1 - Σ_{a≤s-t-1} x^(a)}`.
pub fn triangle(x: &[u8]) -> Result<u32> {
    let s = x.len() as u32;
    level_of_es(x, s)?;
    Ok((0..s as i64)
        .map(|t| prefix(x, t).min(1 - prefix(x, s as i64 - t - 1)))
        .sum::<i64>() as u32)
}

/// `▲(y, z)`, the pair analogue of [`triangle`].
pub fn blacktriangle(y: &[u8], z: &[u8]) -> Result<u32> {
    let s = y.len() as u32;
    level_of_es(y, s)?;
    level_of_es(z, s)?;
    Ok((0..s as i64)
        .map(|t| {
            prefix(y, t).min(1 - prefix(z, s as i64 - t - 1))
                + prefix(z, t).min(1 - prefix(y, s as i64 - t - 1))
        })
        .sum::<i64>() as u32)
}

/// Distributions of `△` over `E_s` and `▲` over `E_s × E_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTables {
    pub s: u32,
    pub psi: BTreeMap<u32, u64>,
    pub rho: BTreeMap<u32, u64>,
}

impl DeltaTables {
    pub fn new(s: u32) -> Result<Self> {
        let es: Vec<Vec<u8>> = (0..=s).map(|l| es_of_level(l, s)).collect();
        let mut psi = BTreeMap::new();
        for x in &es {
            *psi.entry(triangle(x)?).or_insert(0) += 1;
        }
        let mut rho = BTreeMap::new();
        for y in &es {
            for z in &es {
                *rho.entry(blacktriangle(y, z)?).or_insert(0) += 1;
            }
        }
        for eta in 0..=s {
            let closed = if eta < s { 2 * (eta as u64 + 1) } else { s as u64 + 1 };
            if rho.get(&eta).copied().unwrap_or(0) != closed {
                return internal(format!("rho_{s}({eta}) disagrees with 2(eta+1) / s+1"));
            }
        }
        Ok(DeltaTables { s, psi, rho })
    }
}
