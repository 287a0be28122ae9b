//! Text formats shared by the CLI and the fuzz targets: ring specs,
//! defining multisets, verification grids and hull reports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosetlab::CosetAtlas;
use crate::error::{Error, Result};
use crate::hullcount::HullReport;
use crate::ringpoly::RingSpec;
use crate::serialcodes::DefiningMultiset;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// `Z4`, `Z8`, `Z9`, `Z27`, `F2u2` or a raw `p,a,r,e,s`.
pub fn parse_ring(text: &str) -> Result<RingSpec> {
    let text = text.trim();
    let named = match text {
        "Z4" => Some(RingSpec::Z4),
        "Z8" => Some(RingSpec::Z8),
        "Z9" => Some(RingSpec::Z9),
        "Z27" => Some(RingSpec::Z27),
        "F2u2" => Some(RingSpec::F2U2),
        _ => None,
    };
    if let Some(spec) = named {
        return Ok(spec);
    }
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(parse_err(format!("ring spec {text:?} needs five fields p,a,r,e,s")));
    }
    let p: u64 = fields[0].parse().map_err(|_| parse_err(format!("bad p in {text:?}")))?;
    let mut rest = [0u32; 4];
    for (slot, f) in rest.iter_mut().zip(&fields[1..]) {
        *slot = f.parse().map_err(|_| parse_err(format!("bad field {f:?} in {text:?}")))?;
    }
    RingSpec::new(p, rest[0], rest[1], rest[2], rest[3])
}

/// A multiset as written by a user: representatives per part, optionally
/// with the `n` and `s` it was meant for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetInput {
    #[serde(default)]
    pub n: Option<u64>,
    #[serde(default)]
    pub s: Option<u32>,
    pub parts: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MultisetText {
    Inline(Vec<Vec<u64>>),
    Object(MultisetInput),
}

/// Accepts `[[0],[3],[1]]` or `{"n":7,"s":2,"parts":[[0],[3],[1]]}`.
pub fn parse_multiset_text(text: &str) -> Result<MultisetInput> {
    match serde_json::from_str::<MultisetText>(text) {
        Ok(MultisetText::Inline(parts)) => Ok(MultisetInput { n: None, s: None, parts }),
        Ok(MultisetText::Object(m)) => Ok(m),
        Err(e) => Err(parse_err(format!("multiset: {e}"))),
    }
}

impl MultisetInput {
    /// Expand the representatives against the atlas.
    pub fn resolve(&self, atlas: Arc<CosetAtlas>, s: u32) -> Result<DefiningMultiset> {
        if let Some(n) = self.n.filter(|&n| n != atlas.n) {
            return Err(Error::Validation(format!("multiset is for n = {n}, not {}", atlas.n)));
        }
        if let Some(ms) = self.s.filter(|&ms| ms != s) {
            return Err(Error::Validation(format!("multiset is for s = {ms}, not {s}")));
        }
        DefiningMultiset::from_reps(atlas, s, &self.parts)
    }
}

/// One line of a verification grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCase {
    pub ring: String,
    pub n: Vec<u64>,
    #[serde(default)]
    pub ell: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub cases: Vec<GridCase>,
}

/// A grid case with its ring parsed and its `ℓ` list filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCase {
    pub spec: RingSpec,
    pub n: Vec<u64>,
    pub ell: Vec<u32>,
}

pub fn parse_grid(text: &str) -> Result<Vec<ResolvedCase>> {
    let grid: Grid = serde_json::from_str(text).map_err(|e| parse_err(format!("grid: {e}")))?;
    grid.cases
        .iter()
        .map(|c| {
            let spec = parse_ring(&c.ring)?;
            let ell = match &c.ell {
                Some(list) => {
                    if let Some(&l) = list.iter().find(|&&l| l >= spec.r) {
                        return Err(Error::Validation(format!("ell = {l} out of range for r = {}", spec.r)));
                    }
                    list.clone()
                }
                None => (0..spec.r).collect(),
            };
            if c.n.is_empty() {
                return Err(Error::Validation(format!("grid case {} has no lengths", c.ring)));
            }
            Ok(ResolvedCase {
                spec,
                n: c.n.clone(),
                ell,
            })
        })
        .collect()
}

pub fn parse_report(text: &str) -> Result<HullReport> {
    HullReport::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings() {
        assert_eq!(parse_ring("Z8").unwrap(), RingSpec::Z8);
        assert_eq!(parse_ring(" 2,1,1,2,2 ").unwrap(), RingSpec::F2U2);
        assert!(parse_ring("2,2,1,1").is_err());
        assert!(parse_ring("2,2,1,1,5").is_err());
        assert!(parse_ring("x,2,1,1,2").is_err());
    }

    #[test]
    fn multisets() {
        let atlas = Arc::new(CosetAtlas::build(7, 2).unwrap());
        let inline = parse_multiset_text("[[0],[3],[1]]").unwrap();
        let obj = parse_multiset_text(r#"{"n":7,"s":2,"parts":[[0],[3],[1]]}"#).unwrap();
        assert_eq!(inline.resolve(atlas.clone(), 2).unwrap(), obj.resolve(atlas.clone(), 2).unwrap());
        assert!(parse_multiset_text(r#"{"n":5,"parts":[[0],[3],[1]]}"#)
            .unwrap()
            .resolve(atlas.clone(), 2)
            .is_err());
        assert!(parse_multiset_text("[[0],[3]]").unwrap().resolve(atlas, 2).is_err());
        assert!(parse_multiset_text("[[0],").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid(r#"{"cases":[{"ring":"Z4","n":[1,3]},{"ring":"2,2,2,1,2","n":[3],"ell":[1]}]}"#).unwrap();
        assert_eq!(g[0].ell, vec![0]);
        assert_eq!(g[1].ell, vec![1]);
        assert!(parse_grid(r#"{"cases":[{"ring":"Z4","n":[3],"ell":[1]}]}"#).is_err());
    }
}
