use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::DefiningMultiset;
use crate::cosetlab::CosetAtlas;
use crate::error::{invalid, Result};
use crate::grarith::OmegaTable;
use crate::ringpoly::{ChainRing, CyclicPoly, Echelon, RingElem, RingSpec};

/// Everything needed to realize cyclic serial codes of length `n` over one
/// ring: the ring, the coset atlas and the `Ω` table.
#[derive(Debug)]
pub struct CodeSpace {
    ring: ChainRing,
    atlas: Arc<CosetAtlas>,
    omega: OmegaTable,
}

impl CodeSpace {
    pub fn new(spec: RingSpec, n: u64) -> Result<Arc<Self>> {
        let ring = ChainRing::new(spec)?;
        if n == 0 {
            return invalid("n must be positive");
        }
        let atlas = CosetAtlas::build(n, ring.q())?;
        let omega = OmegaTable::build(ring.galois(), &atlas)?;
        Ok(Arc::new(CodeSpace {
            ring,
            atlas: Arc::new(atlas),
            omega,
        }))
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn spec(&self) -> RingSpec {
        self.ring.spec()
    }

    pub fn atlas(&self) -> &Arc<CosetAtlas> {
        &self.atlas
    }

    pub fn omega_table(&self) -> &OmegaTable {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.atlas.n as usize
    }

    pub fn s(&self) -> u32 {
        self.ring.s()
    }

    /// `Ω` of a union of cosets, as a polynomial over `R`.
    pub fn omega_poly(&self, cosets: impl IntoIterator<Item = usize>) -> Vec<RingElem> {
        self.omega
            .omega_of_cosets(cosets)
            .iter()
            .map(|c| self.ring.from_gr(c))
            .collect()
    }

    pub fn multiset(&self, reps: &[Vec<u64>]) -> Result<DefiningMultiset> {
        DefiningMultiset::from_reps(self.atlas.clone(), self.s(), reps)
    }

    pub fn code(self: &Arc<Self>, multiset: DefiningMultiset) -> Result<CyclicSerialCode> {
        if multiset.n() != self.atlas.n || multiset.q() != self.atlas.q || multiset.s() != self.s() {
            return invalid("multiset does not match the code space");
        }
        Ok(CyclicSerialCode {
            space: self.clone(),
            multiset,
            generators: OnceLock::new(),
            echelon: OnceLock::new(),
        })
    }

    /// Every cyclic serial code of this length, `(s+1)^ω` of them.
    pub fn all_codes(self: &Arc<Self>) -> impl Iterator<Item = CyclicSerialCode> + '_ {
        DefiningMultiset::all(self.atlas.clone(), self.s()).map(move |m| {
            self.code(m).expect("shape matches")
        })
    }

    /// All cyclic shifts of the given words.
    pub fn shifts(&self, words: &[CyclicPoly]) -> Vec<Vec<RingElem>> {
        words
            .iter()
            .filter(|w| !w.is_zero())
            .flat_map(|w| (0..self.n()).map(move |k| w.shift(k).coeffs))
            .collect()
    }
}

/// `ℂ(A) = ⊕_{t<s} θ^t C(A_t)`.
#[derive(Debug, Clone)]
pub struct CyclicSerialCode {
    space: Arc<CodeSpace>,
    multiset: DefiningMultiset,
    generators: OnceLock<Vec<CyclicPoly>>,
    echelon: OnceLock<Echelon>,
}

impl PartialEq for CyclicSerialCode {
    fn eq(&self, other: &Self) -> bool {
        self.space.spec() == other.space.spec() && self.multiset == other.multiset
    }
}

impl Eq for CyclicSerialCode {}

impl CyclicSerialCode {
    pub fn space(&self) -> &Arc<CodeSpace> {
        &self.space
    }

    pub fn ring(&self) -> &ChainRing {
        &self.space.ring
    }

    pub fn multiset(&self) -> &DefiningMultiset {
        &self.multiset
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn params(&self) -> Vec<usize> {
        self.multiset.params()
    }

    pub fn q_dimension(&self) -> usize {
        self.multiset.q_dimension()
    }

    /// `θ^t Ω(Ā_t)` for `0 ≤ t < s`.
    pub fn generators(&self) -> &[CyclicPoly] {
        self.generators.get_or_init(|| {
            let ring = self.ring();
            let n = self.n();
            (0..self.space.s())
                .map(|t| {
                    let complement = self.multiset.levels().iter().enumerate().filter(|(_, &l)| l != t);
                    let g = self.space.omega_poly(complement.map(|(c, _)| c));
                    CyclicPoly::from_poly(ring, &g, n).scale(ring, ring.theta_pow(t))
                })
                .collect()
        })
    }

    /// `θ^t Ω(A_{t+1} ∪ … ∪ A_s)`, the nested generators of the same code.
    pub fn nested_generators(&self) -> Vec<CyclicPoly> {
        let ring = self.ring();
        (0..self.space.s())
            .map(|t| {
                let above = self.multiset.levels().iter().enumerate().filter(|(_, &l)| l > t);
                let g = self.space.omega_poly(above.map(|(c, _)| c));
                CyclicPoly::from_poly(ring, &g, self.n()).scale(ring, ring.theta_pow(t))
            })
            .collect()
    }

    /// Cyclic shifts of the generators: an `R`-spanning set of the code.
    pub fn spanning_rows(&self) -> Vec<Vec<RingElem>> {
        self.space.shifts(self.generators())
    }

    pub fn echelon(&self) -> &Echelon {
        self.echelon
            .get_or_init(|| Echelon::new(self.ring(), self.n(), &self.spanning_rows()))
    }

    pub fn contains(&self, word: &[RingElem]) -> bool {
        self.echelon().contains(self.ring(), word)
    }

    fn with(&self, multiset: DefiningMultiset) -> CyclicSerialCode {
        CyclicSerialCode {
            space: self.space.clone(),
            multiset,
            generators: OnceLock::new(),
            echelon: OnceLock::new(),
        }
    }

    fn check_ell(&self, ell: u32) -> Result<()> {
        let r = self.ring().r();
        if ell >= r {
            return invalid(format!("ell = {ell} must satisfy 0 <= ell < r = {r}"));
        }
        Ok(())
    }

    pub fn dual(&self, ell: u32) -> Result<CyclicSerialCode> {
        self.check_ell(ell)?;
        Ok(self.with(self.multiset.dual(self.ring().spec().p, ell)?))
    }

    pub fn hull(&self, ell: u32) -> Result<CyclicSerialCode> {
        self.check_ell(ell)?;
        Ok(self.with(self.multiset.hull(self.ring().spec().p, ell)?))
    }

    pub fn sum(&self, other: &CyclicSerialCode) -> Result<CyclicSerialCode> {
        Ok(self.with(self.multiset.sqcup(&other.multiset)?))
    }

    pub fn intersection(&self, other: &CyclicSerialCode) -> Result<CyclicSerialCode> {
        Ok(self.with(self.multiset.sqcap(&other.multiset)?))
    }

    /// `σ^h(C) = ℂ(p^h A)`.
    pub fn sigma(&self, h: u32) -> Result<CyclicSerialCode> {
        let n = self.multiset.n();
        let ph = crate::arith::mod_pow(self.ring().spec().p, h as u64, n);
        Ok(self.with(self.multiset.scale(ph as i64)?))
    }

    pub fn is_free(&self) -> bool {
        self.params().iter().skip(1).all(|&k| k == 0)
    }

    pub fn is_lcd(&self, ell: u32) -> Result<bool> {
        let s = self.space.s();
        Ok(self.hull(ell)?.multiset.levels().iter().all(|&l| l == s))
    }

    pub fn is_self_orthogonal(&self, ell: u32) -> Result<bool> {
        Ok(self.hull(ell)?.multiset == self.multiset)
    }

    pub fn is_self_dual(&self, ell: u32) -> Result<bool> {
        Ok(self.dual(ell)?.multiset == self.multiset)
    }

    /// `π(C)`, the cyclic code over `F_q` defined by `A_0`.
    pub fn residue_code(&self) -> Result<CyclicSerialCode> {
        let spec = self.ring().spec();
        let field = CodeSpace::new(RingSpec::galois(spec.p, 1, spec.r)?, self.multiset.n())?;
        let levels = self.multiset.levels().iter().map(|&l| u32::from(l != 0)).collect();
        let m = DefiningMultiset::from_levels(field.atlas().clone(), 1, levels)?;
        field.code(m)
    }

    /// Apply the residue map to every spanning row.
    pub fn residue_rows(&self) -> Vec<Vec<RingElem>> {
        let ring = self.ring();
        self.spanning_rows()
            .iter()
            .map(|row| row.iter().map(|&c| RingElem(ring.pi(c))).collect())
            .collect()
    }

    pub fn report(&self, ell: u32) -> Result<CodeReport> {
        let dual = self.dual(ell)?;
        let hull = self.hull(ell)?;
        Ok(CodeReport {
            ring: self.ring().spec(),
            n: self.multiset.n(),
            ell,
            multiset: self.multiset.reps(),
            params: self.params(),
            q_dimension: self.q_dimension(),
            dual: dual.multiset.reps(),
            dual_params: dual.params(),
            hull: hull.multiset.reps(),
            hull_params: hull.params(),
            hull_q_dimension: hull.q_dimension(),
            free: self.is_free(),
            lcd: self.is_lcd(ell)?,
            self_orthogonal: self.is_self_orthogonal(ell)?,
            self_dual: self.is_self_dual(ell)?,
            generators: self
                .generators()
                .iter()
                .map(|g| g.coeffs.iter().map(|&c| self.ring().to_json(c)).collect())
                .collect(),
        })
    }
}

/// Parameters, dual, hull and predicates of one code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CodeReport {
    pub ring: RingSpec,
    pub n: u64,
    pub ell: u32,
    pub multiset: Vec<Vec<u64>>,
    pub params: Vec<usize>,
    pub q_dimension: usize,
    pub dual: Vec<Vec<u64>>,
    pub dual_params: Vec<usize>,
    pub hull: Vec<Vec<u64>>,
    pub hull_params: Vec<usize>,
    pub hull_q_dimension: usize,
    pub free: bool,
    pub lcd: bool,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    /// Generator coefficients `θ^t Ω(Ā_t)`, constant term first.
    pub generators: Vec<Vec<serde_json::Value>>,
}
