use super::{AbelianCocycle, TwoCochain};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::zmod::solve_lexmin;

pub const MAX_MU_ORDER: usize = 16;
pub const MAX_MU_VALUES: u64 = 24;

/// The lexicographically first normalized `μ: H × H → μ_N` with `δμ = Ψ|_H`,
/// where `δμ(a,b,c) = μ(b,c) μ(a,b+c) μ(a+b,c)⁻¹ μ(a,b)⁻¹`.
///
/// Values are ordered by exponent `0..N` and the free entries `μ(h_i, h_j)`
/// (`h_i, h_j ≠ 0`) by position in the subgroup's element list.
pub fn find_mu(c: &AbelianCocycle, h: &Subgroup, values: u64) -> Result<Option<TwoCochain>> {
    if h.parent() != c.group() {
        return Err(Error::NotSubgroup(format!(
            "{h} is not a subgroup of {}",
            c.group()
        )));
    }
    if h.order() > MAX_MU_ORDER || values > MAX_MU_VALUES || values == 0 {
        return Err(Error::BoundsExceeded(format!(
            "mu search needs |H| <= {MAX_MU_ORDER} and 1 <= N <= {MAX_MU_VALUES}, got |H| = {}, N = {values}",
            h.order()
        )));
    }
    let idx = h.indices();
    let m = idx.len();
    let t = c.group().table();
    let pos = |g: usize| {
        idx.binary_search(&g)
            .expect("subgroup closed under addition")
    };
    let var = |i: usize, j: usize| (i != 0 && j != 0).then(|| (i - 1) * (m - 1) + j - 1);
    let unknowns = (m - 1) * (m - 1);
    let mut equations = Vec::new();
    let mut rhs = Vec::new();
    for a in 1..m {
        for b in 1..m {
            let ab = pos(t.add(idx[a], idx[b]));
            for k in 1..m {
                let bk = pos(t.add(idx[b], idx[k]));
                let Some(target) = c.psi_at(idx[a], idx[b], idx[k]).exponent_in(values) else {
                    return Ok(None);
                };
                let mut row = vec![0i64; unknowns];
                for (v, s) in [
                    (var(b, k), 1),
                    (var(a, bk), 1),
                    (var(ab, k), -1),
                    (var(a, b), -1),
                ] {
                    if let Some(v) = v {
                        row[v] += s;
                    }
                }
                equations.push(
                    row.iter()
                        .map(|&x| x.rem_euclid(values as i64) as u64)
                        .collect(),
                );
                rhs.push(target);
            }
        }
    }
    // triples containing the identity reduce to 1 = Ψ(...), which must hold
    for a in 0..m {
        for b in 0..m {
            for k in 0..m {
                if (a == 0 || b == 0 || k == 0) && !c.psi_at(idx[a], idx[b], idx[k]).is_one() {
                    return Ok(None);
                }
            }
        }
    }
    let Some(x) = solve_lexmin(&equations, &rhs, unknowns, values) else {
        return Ok(None);
    };
    let mut table = vec![RootOfUnity::ONE; m * m];
    for i in 1..m {
        for j in 1..m {
            table[i * m + j] = RootOfUnity::new(values, x[var(i, j).expect("non-identity")] as i64);
        }
    }
    let mu = TwoCochain::new(h, table)?;
    if let Some(w) = mu.coboundary_mismatch(c) {
        return Err(Error::InternalInconsistency(format!(
            "solver returned mu with d(mu) != psi at ({}, {}, {})",
            w[0], w[1], w[2]
        )));
    }
    Ok(Some(mu))
}
