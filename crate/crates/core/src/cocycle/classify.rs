use std::collections::HashMap;

use num_bigint::BigUint;

use super::{standard_cocycle, AbelianCocycle, QuadraticForm, TwoCochain};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupTable};
use crate::zmod::{kernel, Howell};

pub const MAX_CLASSIFY_ORDER: usize = 4;
pub const MAX_CLASSIFY_VALUES: u64 = 8;

/// Exhaustive enumeration gives up beyond this many candidate tables.
const MAX_EXHAUSTIVE_CANDIDATES: u64 = 1 << 24;

/// One class of normalized `μ_N`-valued abelian 3-cocycles.
#[derive(Clone, Debug)]
pub struct H3Class {
    pub form: QuadraticForm,
    pub representative: AbelianCocycle,
    /// Number of cocycles in the class (the coboundary orbit).
    pub size: BigUint,
}

fn check_bounds(group: &AbelianGroup, n: u64) -> Result<()> {
    if group.order() > MAX_CLASSIFY_ORDER {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            bound: MAX_CLASSIFY_ORDER,
        });
    }
    if n > MAX_CLASSIFY_VALUES {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: MAX_CLASSIFY_VALUES,
        });
    }
    if n == 0 {
        return Err(Error::Parse("value order must be positive".into()));
    }
    Ok(())
}

/// Exponent coordinates for the free (non-identity) entries of `Ψ` and `Ω`.
struct Layout {
    n: usize,
    m: usize,
    table: GroupTable,
}

impl Layout {
    fn new(group: &AbelianGroup) -> Self {
        let n = group.order();
        Layout {
            n,
            m: n - 1,
            table: group.table(),
        }
    }

    fn vars(&self) -> usize {
        self.m.pow(3) + self.m.pow(2)
    }

    fn psi(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        (a != 0 && b != 0 && c != 0).then(|| ((a - 1) * self.m + b - 1) * self.m + c - 1)
    }

    fn omega(&self, a: usize, b: usize) -> Option<usize> {
        (a != 0 && b != 0).then(|| self.m.pow(3) + (a - 1) * self.m + b - 1)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.table.add(a, b)
    }

    /// Rows of the pentagon and hexagon equations.
    fn equations(&self, modulus: u64) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut rows = Vec::new();
        let mut push = |terms: &[(Option<usize>, i64)]| {
            let mut row = vec![0i64; self.vars()];
            for &(v, s) in terms {
                if let Some(v) = v {
                    row[v] += s;
                }
            }
            let row: Vec<u64> = row
                .iter()
                .map(|&x| x.rem_euclid(modulus as i64) as u64)
                .collect();
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        push(&[
                            (self.psi(b, c, d), 1),
                            (self.psi(a, self.add(b, c), d), 1),
                            (self.psi(a, b, c), 1),
                            (self.psi(self.add(a, b), c, d), -1),
                            (self.psi(a, b, self.add(c, d)), -1),
                        ]);
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    push(&[
                        (self.omega(a, self.add(b, c)), 1),
                        (self.psi(a, b, c), 1),
                        (self.psi(b, c, a), 1),
                        (self.omega(a, b), -1),
                        (self.omega(a, c), -1),
                        (self.psi(b, a, c), -1),
                    ]);
                    push(&[
                        (self.omega(self.add(a, b), c), 1),
                        (self.psi(a, c, b), 1),
                        (self.omega(a, c), -1),
                        (self.omega(b, c), -1),
                        (self.psi(a, b, c), -1),
                        (self.psi(c, a, b), -1),
                    ]);
                }
            }
        }
        rows.sort();
        rows.dedup();
        rows
    }

    /// Change of exponents caused by the elementary cochain `φ = ζ_N` at `(x, y)`.
    fn coboundary(&self, x: usize, y: usize, modulus: u64) -> Vec<u64> {
        let n = self.n;
        let hit = |a: usize, b: usize| i64::from(a == x && b == y);
        let mut row = vec![0i64; self.vars()];
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = self.omega(a, b) {
                    row[v] += hit(b, a) - hit(a, b);
                }
                for c in 0..n {
                    if let Some(v) = self.psi(a, b, c) {
                        row[v] +=
                            hit(b, c) + hit(a, self.add(b, c)) - hit(self.add(a, b), c) - hit(a, b);
                    }
                }
            }
        }
        row.iter()
            .map(|&v| v.rem_euclid(modulus as i64) as u64)
            .collect()
    }

    fn trace(&self, x: &[u64]) -> Vec<u64> {
        (1..self.n)
            .map(|g| self.omega(g, g).map_or(0, |v| x[v]))
            .collect()
    }

    fn vectorize(&self, c: &AbelianCocycle, modulus: u64) -> Option<Vec<u64>> {
        let n = self.n;
        let mut x = vec![0; self.vars()];
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = self.omega(a, b) {
                    x[v] = c.omega_at(a, b).exponent_in(modulus)?;
                }
                for k in 0..n {
                    if let Some(v) = self.psi(a, b, k) {
                        x[v] = c.psi_at(a, b, k).exponent_in(modulus)?;
                    }
                }
            }
        }
        Some(x)
    }
}

/// Classes of normalized abelian 3-cocycles with values in `μ_N` modulo
/// coboundaries of `μ_N`-valued 2-cochains, one per quadratic form.
///
/// Works on exponent vectors: cocycles form the kernel of the coherence
/// equations over `Z/N`, coboundaries the image of the elementary cochains,
/// and the trace is the diagonal of `Ω`. The classes are the fibres of the
/// trace exactly when `|Z| = |B| · |T(Z)|` and `T(B) = 0`, which is checked.
pub fn classify_h3ab(group: &AbelianGroup, values: u64) -> Result<Vec<H3Class>> {
    check_bounds(group, values)?;
    let lay = Layout::new(group);
    let vars = lay.vars();
    let z = kernel(&lay.equations(values), vars, values);
    let mut b_rows = Vec::new();
    for x in 1..lay.n {
        for y in 1..lay.n {
            b_rows.push(lay.coboundary(x, y, values));
        }
    }
    let b = Howell::new(b_rows, vars, values);
    for row in b.rows() {
        if !z.contains(row) {
            return Err(Error::ConventionError(
                "a coboundary fails the coherence equations".into(),
            ));
        }
        if lay.trace(row).iter().any(|&t| t != 0) {
            return Err(Error::ConventionError(
                "a coboundary changes the trace".into(),
            ));
        }
    }
    let traces = Howell::new(
        z.rows().iter().map(|r| lay.trace(r)).collect(),
        lay.m,
        values,
    );
    if z.size() != b.size() * traces.size() {
        return Err(Error::InternalInconsistency(format!(
            "{} cocycles, {} coboundaries, {} trace values: orbits and trace fibres differ",
            z.size(),
            b.size(),
            traces.size()
        )));
    }
    let mut out = Vec::new();
    for t in traces.elements() {
        let mut q = vec![RootOfUnity::ONE];
        q.extend(t.iter().map(|&k| RootOfUnity::new(values, k as i64)));
        let form = QuadraticForm::new(group, q)
            .map_err(|e| Error::ConventionError(format!("trace of a cocycle: {e}")))?;
        let representative = standard_cocycle(&form)?;
        let x = lay
            .vectorize(&representative, values)
            .ok_or_else(|| Error::InternalInconsistency("representative leaves μ_N".into()))?;
        if !z.contains(&x) || lay.trace(&x) != t {
            return Err(Error::InternalInconsistency(
                "representative not in its class".into(),
            ));
        }
        out.push(H3Class {
            form,
            representative,
            size: b.size(),
        });
    }
    Ok(out)
}

/// Every normalized `μ_N`-valued cocycle, grouped into orbits of the
/// coboundary action of every normalized `μ_N`-valued 2-cochain. Orbits are
/// listed in order of their first member; members in enumeration order.
pub fn classify_h3ab_exhaustive(
    group: &AbelianGroup,
    values: u64,
) -> Result<Vec<Vec<AbelianCocycle>>> {
    check_bounds(group, values)?;
    let lay = Layout::new(group);
    let (n, m) = (lay.n, lay.m);
    let too_many =
        |count: usize| (values as f64).powi(count as i32) > MAX_EXHAUSTIVE_CANDIDATES as f64;
    if too_many(m.pow(3)) || too_many(m.pow(2)) {
        return Err(Error::BoundsExceeded(format!(
            "exhaustive enumeration over {group} with values in mu_{values}"
        )));
    }
    let build = |psi_free: &[u64], omega_free: &[u64]| {
        let root = |k: u64| RootOfUnity::new(values, k as i64);
        let mut psi = vec![RootOfUnity::ONE; n * n * n];
        let mut omega = vec![RootOfUnity::ONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = lay.omega(a, b) {
                    omega[a * n + b] = root(omega_free[v - m.pow(3)]);
                }
                for c in 0..n {
                    if let Some(v) = lay.psi(a, b, c) {
                        psi[(a * n + b) * n + c] = root(psi_free[v]);
                    }
                }
            }
        }
        AbelianCocycle::new(group, psi, omega).expect("table sizes match")
    };
    let mut cocycles = Vec::new();
    for psi_free in odometer(m.pow(3), values) {
        let only_psi = build(&psi_free, &vec![0; m * m]);
        if !only_psi.check_pentagon() {
            continue;
        }
        for omega_free in odometer(m.pow(2), values) {
            let c = build(&psi_free, &omega_free);
            if c.check_hexagons() {
                cocycles.push(c);
            }
        }
    }
    let position: HashMap<AbelianCocycle, usize> = cocycles
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut parent: Vec<usize> = (0..cocycles.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let whole = crate::group::Subgroup::whole(group);
    for phi_free in odometer(m.pow(2), values) {
        let mut table = vec![RootOfUnity::ONE; n * n];
        for x in 1..n {
            for y in 1..n {
                table[x * n + y] = RootOfUnity::new(values, phi_free[(x - 1) * m + y - 1] as i64);
            }
        }
        let phi = TwoCochain::new(&whole, table)?;
        for (i, c) in cocycles.iter().enumerate() {
            let image = c.apply_coboundary(&phi)?;
            let j = *position.get(&image).ok_or_else(|| {
                Error::InternalInconsistency("coboundary leaves the enumerated set".into())
            })?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut orbits: Vec<Vec<AbelianCocycle>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, c) in cocycles.into_iter().enumerate() {
        let root = find(&mut parent, i);
        let k = *slot.entry(root).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(c);
    }
    Ok(orbits)
}

/// All vectors in `[0, base)^len` in lexicographic order.
fn odometer(len: usize, base: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut next = Some(vec![0u64; len]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for i in (0..len).rev() {
            succ[i] += 1;
            if succ[i] < base {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    })
}
