use super::{ChainRing, RingElem};

/// θ-adic standard form of a row space over a chain ring.
///
/// Pivot rows are stored in the order they were found. Row `i` has the
/// entry `θ^{v_i}` in column `c_i`, every entry of row `i` is divisible by
/// `θ^{v_i}`, rows found later vanish in column `c_i`, and rows found
/// earlier are reduced modulo `θ^{v_i}` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    n: usize,
    s: u32,
    rows: Vec<Vec<RingElem>>,
    pivots: Vec<(usize, u32)>,
}

impl Echelon {
    pub fn new(ring: &ChainRing, n: usize, input: &[Vec<RingElem>]) -> Self {
        let s = ring.s();
        let mut rows: Vec<Vec<RingElem>> = input
            .iter()
            .filter(|r| r.iter().any(|c| c.0 != 0))
            .cloned()
            .collect();
        for r in &rows {
            assert_eq!(r.len(), n, "row length mismatch");
        }
        let mut is_pivot_row = vec![false; rows.len()];
        let mut is_pivot_col = vec![false; n];
        let mut order = Vec::new();
        let mut pivots = Vec::new();
        loop {
            // global minimum valuation; ties go to the leftmost column, then the first row
            let mut best: Option<(u32, usize, usize)> = None;
            for j in (0..n).filter(|&j| !is_pivot_col[j]) {
                for i in (0..rows.len()).filter(|&i| !is_pivot_row[i]) {
                    let v = ring.valuation(rows[i][j]);
                    if v < s && best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, j, i));
                    }
                }
            }
            let Some((v, col, row)) = best else { break };
            let unit = ring.theta_divide(rows[row][col], v);
            let inv = ring.inverse(unit).expect("pivot cofactor is a unit");
            for c in rows[row].iter_mut() {
                *c = ring.mul(inv, *c);
            }
            let pivot_row = rows[row].clone();
            for i in 0..rows.len() {
                if i == row || is_pivot_row[i] || rows[i][col].0 == 0 {
                    continue;
                }
                let f = ring.theta_divide(rows[i][col], v);
                for (c, &pc) in rows[i].iter_mut().zip(&pivot_row) {
                    *c = ring.sub(*c, ring.mul(f, pc));
                }
            }
            is_pivot_row[row] = true;
            is_pivot_col[col] = true;
            order.push(row);
            pivots.push((col, v));
        }
        let mut rows: Vec<Vec<RingElem>> = order.into_iter().map(|i| rows[i].clone()).collect();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let (col, v) = pivots[j];
                let (_, w) = ring.theta_split(rows[i][col], v);
                if w.0 == 0 {
                    continue;
                }
                let pj = rows[j].clone();
                for (c, &pc) in rows[i].iter_mut().zip(&pj) {
                    *c = ring.sub(*c, ring.mul(w, pc));
                }
            }
        }
        Echelon { n, s, rows, pivots }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<RingElem>] {
        &self.rows
    }

    /// `(column, valuation)` of each pivot row.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// `(k_0, …, k_{s-1})`: number of pivots of each valuation.
    pub fn profile(&self) -> Vec<usize> {
        let mut k = vec![0; self.s as usize];
        for &(_, v) in &self.pivots {
            k[v as usize] += 1;
        }
        k
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `log_q` of the number of vectors in the span.
    pub fn q_dimension(&self) -> usize {
        self.pivots.iter().map(|&(_, v)| (self.s - v) as usize).sum()
    }

    pub fn contains(&self, ring: &ChainRing, x: &[RingElem]) -> bool {
        let mut x = x.to_vec();
        for (row, &(col, v)) in self.rows.iter().zip(&self.pivots) {
            if x[col].0 == 0 {
                continue;
            }
            if ring.valuation(x[col]) < v {
                return false;
            }
            let f = ring.theta_divide(x[col], v);
            for (c, &rc) in x.iter_mut().zip(row) {
                *c = ring.sub(*c, ring.mul(f, rc));
            }
        }
        x.iter().all(|c| c.0 == 0)
    }

    /// Same row space.
    pub fn same_span(&self, ring: &ChainRing, other: &Echelon) -> bool {
        self.n == other.n
            && self.q_dimension() == other.q_dimension()
            && other.rows.iter().all(|r| self.contains(ring, r))
    }

    /// Whether `other`'s span lies in this one.
    pub fn contains_span(&self, ring: &ChainRing, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(ring, r))
    }
}
