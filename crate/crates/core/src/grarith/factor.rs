use serde::{Deserialize, Serialize};

use super::galois::{hensel_lift_all, lex_smallest_irreducible};
use super::poly;
use super::{CommRing, GaloisRing, Quotient, Zmod};
use crate::arith::{factorize, gcd};
use crate::cosetlab::{mult_order, CosetAtlas, ResidueSet};
use crate::error::{internal, invalid, Error, Result};

/// Largest residue-field extension `F_{q^m}` used to build roots of unity.
pub const MAX_SPLITTING_FIELD_BITS: u32 = 126;

/// `Ω` on the cosets of one atlas: the basic-irreducible factors of
/// `X^n - 1` over `GR(p^a, r)`, one per coset, in atlas order.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    gr: GaloisRing,
    atlas: CosetAtlas,
    residue_factors: Vec<Vec<Vec<u64>>>,
    factors: Vec<Vec<Vec<u64>>>,
}

/// Residue field `F_q`, its extension `F_{q^m}` and a primitive `n`-th root
/// of unity there.
struct SplittingField {
    ext: Quotient<Quotient<Zmod>>,
    alpha: Vec<Vec<u64>>,
    size: u128,
}

fn splitting_field(gr: &GaloisRing, n: u64) -> Result<SplittingField> {
    let q = gr.q();
    let m = mult_order(q, n)?;
    let bits = (q as f64).log2() * m as f64;
    if bits > MAX_SPLITTING_FIELD_BITS as f64 {
        return Err(Error::Budget {
            what: format!("splitting field F_{{{q}^{m}}} for n = {n}"),
            needed: m as u128,
            budget: (MAX_SPLITTING_FIELD_BITS as f64 / (q as f64).log2()) as u128,
        });
    }
    let field = gr.residue_field().clone();
    let h = lex_smallest_irreducible(&field, m as usize)?;
    let ext = Quotient::new(field, &h);
    let size = ext.size().expect("bounded above");
    let cofactor = (size - 1) / n as u128;
    let primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
    let one = ext.one();
    let mut alpha = None;
    for idx in 1..size {
        let cand = ext.pow(&ext.elem_at(idx), cofactor);
        if primes
            .iter()
            .all(|&l| ext.pow(&cand, (n / l) as u128) != one)
        {
            alpha = Some(cand);
            break;
        }
    }
    let alpha = alpha.ok_or_else(|| Error::Internal(format!("no primitive {n}-th root of unity")))?;
    Ok(SplittingField { ext, alpha, size })
}

/// `Π_{c ∈ C} (X - root^c)` over a tower `B[Y]/(h)`, returning the
/// coefficients after checking that they lie in `B` (`Y`-degree zero).
fn descend_product<B: CommRing>(
    ext: &Quotient<B>,
    root: &Vec<B::Elem>,
    exponents: &[u32],
) -> Result<Vec<B::Elem>> {
    let mut prod = vec![ext.one()];
    for &c in exponents {
        let z = ext.pow(root, c as u128);
        prod = poly::mul(ext, &prod, &poly::linear(ext, &z));
    }
    prod.iter()
        .map(|coef| {
            if ext.is_constant(coef) {
                Ok(coef[0].clone())
            } else {
                internal("coefficient does not descend to the base ring")
            }
        })
        .collect()
}

impl OmegaTable {
    /// Build `Ω` by factoring `X^n - 1` over the residue field with minimal
    /// polynomials and Hensel-lifting the factorization.
    pub fn build(gr: &GaloisRing, atlas: &CosetAtlas) -> Result<Self> {
        let n = atlas.n;
        if atlas.q != gr.q() {
            return invalid(format!("atlas built for q = {}, ring has q = {}", atlas.q, gr.q()));
        }
        if gcd(n, gr.p()) != 1 {
            return invalid(format!("gcd(n, p) = gcd({n}, {}) != 1", gr.p()));
        }
        let sf = splitting_field(gr, n)?;
        let field = gr.residue_field();
        let residue_factors: Vec<Vec<Vec<u64>>> = atlas
            .cosets
            .iter()
            .map(|c| descend_product(&sf.ext, &sf.alpha, &c.elements))
            .collect::<Result<_>>()?;
        if poly::product(field, &residue_factors) != poly::x_n_minus_one(field, n as usize) {
            return internal("residue factors do not multiply to X^n - 1");
        }
        for f in &residue_factors {
            if !poly::is_irreducible(field, f, gr.q() as u128) {
                return internal("residue factor is not irreducible");
            }
        }
        let target = poly::x_n_minus_one(gr, n as usize);
        let factors = if gr.a() == 1 {
            residue_factors.clone()
        } else {
            hensel_lift_all(gr, &target, &residue_factors)?
        };
        if poly::product(gr, &factors) != target {
            return internal("lifted factors do not multiply to X^n - 1");
        }
        Ok(OmegaTable {
            gr: gr.clone(),
            atlas: atlas.clone(),
            residue_factors,
            factors,
        })
    }

    /// The same factors computed as `Π (X - δ^c)` in `GR(p^a, r)[Y]/(H)`,
    /// with `δ` the Teichmüller lift of the residue root of unity.
    pub fn via_teichmuller(gr: &GaloisRing, atlas: &CosetAtlas) -> Result<Vec<Vec<Vec<u64>>>> {
        let sf = splitting_field(gr, atlas.n)?;
        let h = sf.ext.modulus();
        let big = Quotient::new(gr.ring().clone(), &h);
        let mut delta = sf.alpha.clone();
        for _ in 1..gr.a() {
            delta = big.pow(&delta, sf.size);
        }
        if big.pow(&delta, atlas.n as u128) != big.one() {
            return internal("lifted root does not have order dividing n");
        }
        atlas
            .cosets
            .iter()
            .map(|c| descend_product(&big, &delta, &c.elements))
            .collect()
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn atlas(&self) -> &CosetAtlas {
        &self.atlas
    }

    /// Factor attached to the coset with the given atlas index.
    pub fn factor(&self, coset: usize) -> &[Vec<u64>] {
        &self.factors[coset]
    }

    pub fn factors(&self) -> &[Vec<Vec<u64>>] {
        &self.factors
    }

    pub fn residue_factor(&self, coset: usize) -> &[Vec<u64>] {
        &self.residue_factors[coset]
    }

    /// `Ω(A)` for a union of cosets given by atlas indices.
    pub fn omega_of_cosets(&self, cosets: impl IntoIterator<Item = usize>) -> Vec<Vec<u64>> {
        let mut acc = vec![self.gr.one()];
        for c in cosets {
            acc = poly::mul(&self.gr, &acc, &self.factors[c]);
        }
        acc
    }

    /// `Ω(A)`; rejects sets that are not `q`-closed.
    pub fn omega(&self, set: &ResidueSet) -> Result<Vec<Vec<u64>>> {
        let cosets = self.atlas.decompose(set)?;
        Ok(self.omega_of_cosets(cosets))
    }

    /// `(X^n - 1) / f` for a monic divisor `f`.
    pub fn hat(&self, f: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let target = poly::x_n_minus_one(&self.gr, self.atlas.n as usize);
        let (q, r) = poly::divrem_monic(&self.gr, &target, f);
        if !r.is_empty() {
            return invalid("polynomial does not divide X^n - 1");
        }
        Ok(q)
    }

    pub fn export(&self) -> FactorExport {
        let flat = self.gr.r() == 1;
        let factors = self
            .atlas
            .cosets
            .iter()
            .zip(&self.factors)
            .map(|(c, f)| FactorEntry {
                coset_rep: c.rep,
                divisor: c.divisor,
                degree: f.len() - 1,
                coefficients: if flat {
                    Coefficients::Flat(f.iter().map(|x| x[0]).collect())
                } else {
                    Coefficients::Nested(f.clone())
                },
            })
            .collect();
        FactorExport {
            p: self.gr.p(),
            a: self.gr.a(),
            r: self.gr.r(),
            n: self.atlas.n,
            modulus: self.gr.modulus(),
            factors,
        }
    }
}

/// Reciprocal `X^k f(1/X)` normalized to be monic.
pub fn reciprocal(gr: &GaloisRing, f: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let c0 = f.first().ok_or_else(|| Error::Validation("zero polynomial".into()))?;
    if !gr.is_unit(c0) {
        return invalid("constant term is not a unit");
    }
    let inv = gr.inverse(c0)?;
    let rev: Vec<Vec<u64>> = f.iter().rev().cloned().collect();
    Ok(poly::scale(gr, &inv, &rev))
}

/// Coefficients mod `p^a`: plain integers when `r = 1`, one length-`r`
/// vector per coefficient otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Flat(Vec<u64>),
    Nested(Vec<Vec<u64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorEntry {
    pub coset_rep: u32,
    pub divisor: u64,
    pub degree: usize,
    pub coefficients: Coefficients,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorExport {
    pub p: u64,
    pub a: u32,
    pub r: u32,
    pub n: u64,
    /// Defining polynomial of the Galois ring over `Z_{p^a}`, low degree first.
    pub modulus: Vec<u64>,
    pub factors: Vec<FactorEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u64, a: u32, r: u32, n: u64) -> OmegaTable {
        let gr = GaloisRing::new(p, a, r).unwrap();
        let atlas = CosetAtlas::build(n, gr.q()).unwrap();
        OmegaTable::build(&gr, &atlas).unwrap()
    }

    #[test]
    fn degrees_match_cosets() {
        let t = table(2, 1, 1, 7);
        let degs: Vec<usize> = t.factors().iter().map(|f| f.len() - 1).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        let t = table(3, 1, 1, 11);
        let degs: Vec<usize> = t.factors().iter().map(|f| f.len() - 1).collect();
        assert_eq!(degs, vec![1, 5, 5]);
        let t = table(2, 2, 1, 1);
        assert_eq!(t.factors(), &[vec![vec![3], vec![1]]]);
    }

    #[test]
    fn lift_over_z4() {
        let t = table(2, 2, 1, 7);
        let gr = t.ring();
        assert_eq!(
            poly::product(gr, t.factors()),
            poly::x_n_minus_one(gr, 7)
        );
        for (i, f) in t.factors().iter().enumerate() {
            assert_eq!(
                f.iter().map(|c| gr.pi(c)).collect::<Vec<_>>(),
                t.residue_factor(i)
            );
        }
    }

    #[test]
    fn teichmuller_path_agrees() {
        for (p, a, r, n) in [(2, 2, 1, 7), (2, 3, 1, 21), (3, 2, 1, 8), (2, 2, 2, 5), (3, 3, 1, 11)] {
            let t = table(p, a, r, n);
            let gr = t.ring().clone();
            let other = OmegaTable::via_teichmuller(&gr, t.atlas()).unwrap();
            assert_eq!(t.factors(), other.as_slice(), "({p},{a},{r}) n={n}");
        }
    }

    #[test]
    fn reciprocal_pairs() {
        let t = table(2, 2, 1, 7);
        let gr = t.ring();
        let x1 = t.omega(&ResidueSet::from_slice(&[1, 2, 4])).unwrap();
        let x3 = t.omega(&ResidueSet::from_slice(&[3, 5, 6])).unwrap();
        assert_eq!(reciprocal(gr, &x1).unwrap(), x3);
        let x0 = t.omega(&ResidueSet::from_slice(&[0])).unwrap();
        assert_eq!(reciprocal(gr, &x0).unwrap(), x0);
        assert_eq!(t.hat(&x0).unwrap(), poly::mul(gr, &x1, &x3));
        assert!(t.omega(&ResidueSet::from_slice(&[1, 2])).is_err());
        assert_eq!(t.omega(&ResidueSet::empty()).unwrap(), vec![gr.one()]);
    }
}
