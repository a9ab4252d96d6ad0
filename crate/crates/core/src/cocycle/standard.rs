use num_integer::Integer;

use super::{AbelianCocycle, QuadraticForm};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};

/// A normalized cocycle with trace `q`:
///
/// `Ω(a,b) = Π_i τ_i^{a_i b_i} · Π_{i<j} σ_ij^{a_i b_j}` and
/// `Ψ(a,b,c) = Π_i τ_i^{n_i a_i ⌊(b_i + c_i)/n_i⌋}`,
///
/// with `τ_i = q(e_i)`, `σ_ij = σ(e_i, e_j)` and coordinates in `[0, n_i)`.
pub fn standard_cocycle(q: &QuadraticForm) -> Result<AbelianCocycle> {
    let g = q.group();
    let factors = g.factors();
    let r = g.rank();
    let sigma = q.polarization();
    let tau: Vec<RootOfUnity> = (0..r).map(|i| q.value(&g.generator(i))).collect();
    for (i, (&t, &n)) in tau.iter().zip(factors).enumerate() {
        let bound = if n % 2 == 0 { 2 * n as u64 } else { n as u64 };
        if bound % t.order() != 0 {
            return Err(Error::NotRealizable(format!(
                "q(e_{i}) = {t} has order not dividing {bound}"
            )));
        }
    }
    let mut cross = vec![vec![RootOfUnity::ONE; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let s = sigma.value(&g.generator(i), &g.generator(j));
            let d = (factors[i] as u64).gcd(&(factors[j] as u64));
            if !d.is_multiple_of(s.order()) {
                return Err(Error::NotRealizable(format!(
                    "σ(e_{i}, e_{j}) = {s} has order not dividing {d}"
                )));
            }
            cross[i][j] = s;
        }
    }
    let c = AbelianCocycle::from_fn(
        g,
        |a, b, c| {
            (0..r)
                .map(|i| {
                    let n = factors[i] as i64;
                    let carry = (b.0[i] as i64 + c.0[i] as i64) / n;
                    tau[i].pow(n * a.0[i] as i64 * carry)
                })
                .product()
        },
        |a, b| {
            let mut v: RootOfUnity = (0..r)
                .map(|i| tau[i].pow(a.0[i] as i64 * b.0[i] as i64))
                .product();
            for (i, row) in cross.iter().enumerate() {
                for (j, s) in row.iter().enumerate().skip(i + 1) {
                    v = v * s.pow(a.0[i] as i64 * b.0[j] as i64);
                }
            }
            v
        },
    );
    if let Some(v) = c.first_violation() {
        return Err(Error::ConventionError(format!(
            "standard cocycle is not a cocycle: {v}"
        )));
    }
    let trace = c.trace_form()?;
    if &trace != q {
        return Err(Error::ConventionError(
            "trace of the standard cocycle differs from q".into(),
        ));
    }
    Ok(c)
}
