use std::collections::BTreeSet;

use super::HullSetting;
use crate::arith::ceil_half;
use crate::cosetlab::in_nq;
use crate::error::Result;

/// All sums `Σ w_i c_i` with `0 ≤ c_i ≤ bound_i`, each with its choice vector.
fn choices(weights: &[(u64, u64)]) -> Vec<(u64, Vec<u64>)> {
    let mut out = vec![(0u64, Vec::new())];
    for &(w, bound) in weights {
        out = out
            .into_iter()
            .flat_map(|(sum, picks)| {
                (0..=bound).map(move |c| {
                    let mut p = picks.clone();
                    p.push(c);
                    (sum + w * c, p)
                })
            })
            .collect();
    }
    out
}

/// Hull parameter tuples `(k_0, …, k_{s-1})` produced by Algorithm 1.
///
/// The ν recursion carries the choice made at step `t-1`. Upper bounds
/// `2(β - ν^(t-1))` that would be negative are read as zero.
pub fn algorithm1(setting: &HullSetting) -> Result<BTreeSet<Vec<u64>>> {
    let (n, q, s) = (setting.n, setting.q, setting.s);
    let h = ceil_half(s);
    let (sym, asym) = setting.divisor_weights();
    let mut out = BTreeSet::new();
    if in_nq(n, q)? {
        let values: BTreeSet<u64> = choices(&sym).into_iter().map(|(k, _)| k).collect();
        let mut partial: Vec<Vec<u64>> = vec![vec![0; h as usize]];
        for _ in h..s {
            partial = partial
                .into_iter()
                .flat_map(|k| {
                    values.iter().map(move |&v| {
                        let mut k = k.clone();
                        k.push(v);
                        k
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().filter(|k| k.iter().sum::<u64>() <= n));
        return Ok(out);
    }
    let mu = choices(&sym);
    let mut k = Vec::with_capacity(s as usize);
    descend(setting, &asym, &mu, 0, &vec![0; asym.len()], 0, &mut k, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    setting: &HullSetting,
    asym: &[(u64, u64)],
    mu: &[(u64, Vec<u64>)],
    t: u32,
    nu_prev: &[u64],
    weighted: u64,
    k: &mut Vec<u64>,
    out: &mut BTreeSet<Vec<u64>>,
) {
    let (n, s) = (setting.n, setting.s);
    if t == s {
        out.insert(k.clone());
        return;
    }
    let second = t >= ceil_half(s);
    let bounds: Vec<(u64, u64)> = asym
        .iter()
        .zip(nu_prev)
        .map(|(&(ord, beta), &prev)| {
            let room = beta.saturating_sub(prev);
            (ord, if second { 2 * room } else { room })
        })
        .collect();
    let mu_sums: Vec<u64> = if second {
        mu.iter().map(|(v, _)| *v).collect()
    } else {
        vec![0]
    };
    for (nu_sum, nu) in choices(&bounds) {
        for &m in &mu_sums {
            let kt = m + nu_sum;
            let next = weighted + if t == 0 { 2 * kt } else { kt };
            if t > 0 && next > n {
                continue;
            }
            k.push(kt);
            descend(setting, asym, mu, t + 1, &nu, next, k, out);
            k.pop();
        }
    }
}
