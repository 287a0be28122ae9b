use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{aleph, algorithm1, average_dim, bnq, exact_enumeration, hull_counts, HullSetting, LemCoViolation};
use crate::error::{invalid, Error, Result};
use crate::ringpoly::RingSpec;

/// Which enumerator produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Algorithm1,
    Exact,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algorithm1" => Ok(Method::Algorithm1),
            "exact" => Ok(Method::Exact),
            "both" => Ok(Method::Both),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// Exact rational on the wire: numerator and denominator as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalRepr {
    fn from(x: &BigRational) -> Self {
        RationalRepr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl TryFrom<RationalRepr> for BigRational {
    type Error = Error;

    fn try_from(r: RationalRepr) -> Result<Self> {
        let num = r.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", r.num)))?;
        let den: num_bigint::BigInt = r.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", r.den)))?;
        if den == 0.into() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

pub(crate) mod rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr::from(x).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BigRational, D::Error> {
        let r = RationalRepr::deserialize(de)?;
        BigRational::try_from(r).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod decimal {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("bad decimal {s:?}")))
    }
}

mod opt_decimal {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => ser.serialize_some(&v.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Option<BigUint>, D::Error> {
        match Option::<String>::deserialize(de)? {
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| serde::de::Error::custom(format!("bad decimal {s:?}"))),
            None => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCount {
    pub k: Vec<u64>,
    #[serde(default, with = "opt_decimal", skip_serializing_if = "Option::is_none")]
    pub count: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCount {
    pub tau: u64,
    #[serde(with = "decimal")]
    pub count: BigUint,
}

/// Tuples produced by only one of the two enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Difference {
    pub algorithm1_only: Vec<Vec<u64>>,
    pub exact_only: Vec<Vec<u64>>,
}

impl Difference {
    pub fn is_empty(&self) -> bool {
        self.algorithm1_only.is_empty() && self.exact_only.is_empty()
    }
}

/// Hull parameters of all cyclic serial codes of one length over one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HullReport {
    pub method: Method,
    pub n: u64,
    pub ring: RingSpec,
    #[serde(default)]
    pub ell: u32,
    pub tuples: Vec<TupleCount>,
    pub aleph: Vec<u64>,
    pub counts: Vec<TauCount>,
    #[serde(with = "rational")]
    pub average: BigRational,
    #[serde(rename = "Bnq")]
    pub bnq: u64,
    #[serde(with = "decimal")]
    pub codes: BigUint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<Difference>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_bound_violations: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violation_examples: Vec<LemCoViolation>,
}

impl HullReport {
    /// Build a report. `algorithm1` and `both` only make sense for the
    /// Euclidean hull (`ell = 0`).
    pub fn build(spec: RingSpec, n: u64, method: Method, ell: u32, budget: u128) -> Result<Self> {
        let setting = HullSetting::new(spec, n)?;
        if method != Method::Exact && ell != 0 {
            return invalid("algorithm1 only covers the Euclidean hull (ell = 0)");
        }
        let codes = BigUint::from(setting.s + 1).pow(setting.atlas.omega as u32);
        let mut report = HullReport {
            method,
            n,
            ring: spec,
            ell,
            tuples: Vec::new(),
            aleph: Vec::new(),
            counts: Vec::new(),
            average: BigRational::default(),
            bnq: bnq(&setting),
            codes,
            difference: None,
            step_bound_violations: None,
            violation_examples: Vec::new(),
        };
        if method == Method::Algorithm1 {
            report.tuples = algorithm1(&setting)?
                .into_iter()
                .map(|k| TupleCount { k, count: None })
                .collect();
        } else {
            let tally = exact_enumeration(&setting, ell, budget)?;
            report.tuples = tally
                .tuples
                .iter()
                .map(|(k, &c)| TupleCount {
                    k: k.clone(),
                    count: Some(c.into()),
                })
                .collect();
            if ell == 0 {
                report.step_bound_violations = Some(tally.violation_count as u64);
                report.violation_examples = tally.violations.clone();
            }
            if method == Method::Both {
                let table = algorithm1(&setting)?;
                let exact: BTreeSet<Vec<u64>> = tally.tuples.keys().cloned().collect();
                report.difference = Some(Difference {
                    algorithm1_only: table.difference(&exact).cloned().collect(),
                    exact_only: exact.difference(&table).cloned().collect(),
                });
            }
            if ell != 0 {
                report.counts = tally
                    .taus
                    .iter()
                    .map(|(&tau, &c)| TauCount { tau, count: c.into() })
                    .collect();
                report.aleph = tally.taus.keys().copied().collect();
                report.average = tally.average();
                return Ok(report);
            }
        }
        let counts = hull_counts(&setting)?;
        report.counts = counts
            .into_iter()
            .map(|(tau, count)| TauCount { tau, count })
            .collect();
        report.aleph = aleph(&setting).into_iter().collect();
        report.average = average_dim(&setting)?;
        Ok(report)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Tuples grouped by everything but the last entry.
    fn grouped(&self) -> BTreeMap<&[u64], Vec<u64>> {
        let mut rows: BTreeMap<&[u64], Vec<u64>> = BTreeMap::new();
        for t in &self.tuples {
            if let Some((last, head)) = t.k.split_last() {
                rows.entry(head).or_default().push(*last);
            }
        }
        rows
    }

    fn s(&self) -> usize {
        self.ring.s as usize
    }

    /// CSV: for `s = 3` one row per `(k_0, k_1)` with the `k_2` values
    /// space-separated; otherwise one row per tuple.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Internal(e.to_string());
        let s = self.s();
        if s == 3 {
            w.write_record(["k0", "k1", "k2"]).map_err(csv_err)?;
            for (head, last) in self.grouped() {
                let vals = last.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                w.write_record([head[0].to_string(), head[1].to_string(), vals]).map_err(csv_err)?;
            }
        } else {
            let mut header: Vec<String> = (0..s).map(|t| format!("k{t}")).collect();
            header.push("count".into());
            w.write_record(&header).map_err(csv_err)?;
            for t in &self.tuples {
                let mut row: Vec<String> = t.k.iter().map(u64::to_string).collect();
                row.push(t.count.as_ref().map(|c| c.to_string()).unwrap_or_default());
                w.write_record(&row).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    /// Plain-text table followed by the summary lines.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let s = self.s();
        let _ = writeln!(out, "ring {} n = {} method {:?} ell = {}", self.ring, self.n, self.method, self.ell);
        if s == 3 {
            let _ = writeln!(out, "{:>4} {:>4}  k2", "k0", "k1");
            for (head, last) in self.grouped() {
                let vals = last.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
                let _ = writeln!(out, "{:>4} {:>4}  {}", head[0], head[1], vals);
            }
        } else {
            for t in &self.tuples {
                let k = t.k.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
                match &t.count {
                    Some(c) => {
                        let _ = writeln!(out, "({k})  x{c}");
                    }
                    None => {
                        let _ = writeln!(out, "({k})");
                    }
                }
            }
        }
        let aleph = self.aleph.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "aleph: {{{aleph}}}");
        let _ = writeln!(out, "average: {}", self.average);
        let _ = writeln!(out, "B_nq: {}", self.bnq);
        if let Some(d) = &self.difference {
            if d.is_empty() {
                let _ = writeln!(out, "difference: none");
            } else {
                let _ = writeln!(out, "DIFFERENCE algorithm1 only: {:?}", d.algorithm1_only);
                let _ = writeln!(out, "DIFFERENCE exact only: {:?}", d.exact_only);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        for method in [Method::Algorithm1, Method::Exact, Method::Both] {
            let r = HullReport::build(RingSpec::Z8, 7, method, 0, 1 << 20).unwrap();
            assert_eq!(HullReport::from_json(&r.to_json().unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn both_flags_the_difference() {
        let r = HullReport::build(RingSpec::Z8, 7, Method::Both, 0, 1 << 20).unwrap();
        let d = r.difference.unwrap();
        assert!(d.algorithm1_only.is_empty());
        assert_eq!(d.exact_only, vec![vec![0, 3, 3], vec![0, 3, 4]]);
    }

    #[test]
    fn table_layout() {
        let r = HullReport::build(RingSpec::Z8, 7, Method::Algorithm1, 0, 0).unwrap();
        let table = r.to_table();
        assert!(table.contains("   0    0  0, 1, 3, 4, 6, 7"), "{table}");
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("k0,k1,k2\n0,0,0 1 3 4 6 7\n"), "{csv}");
    }

    #[test]
    fn galois_hull_exact_only() {
        let gr = RingSpec::galois(2, 2, 2).unwrap();
        assert!(HullReport::build(gr, 3, Method::Algorithm1, 1, 1 << 20).is_err());
        let r = HullReport::build(gr, 3, Method::Exact, 1, 1 << 20).unwrap();
        assert_eq!(r.tuples.iter().map(|t| t.count.clone().unwrap()).sum::<BigUint>(), r.codes);
    }
}
