//! Reduction of cyclotomic matrices modulo a prime `p ≡ 1 (mod N)`.
//!
//! Sending `ζ_N` to a primitive `N`-th root of unity `ω` in `F_p` is a ring
//! homomorphism on the elements whose denominators are prime to `p`, so the
//! rank of the reduction never exceeds the rank over `Q(ζ_N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CycloNumber, Rational};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime field with a chosen primitive `N`-th root of unity.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SplitPrime {
    pub p: u64,
    omega: u64,
}

impl SplitPrime {
    /// The largest prime `p < below` with `p ≡ 1 (mod n)`.
    pub fn below(n: u64, below: u64) -> Option<Self> {
        let mut k = (below - 2) / n;
        while k > 0 {
            let p = k * n + 1;
            if is_prime(p) {
                let qs = prime_factors(n);
                let omega = (2..p)
                    .map(|g| pow_mod(g, (p - 1) / n, p))
                    .find(|&w| qs.iter().all(|&q| pow_mod(w, n / q, p) != 1))?;
                return Some(SplitPrime { p, omega });
            }
            k -= 1;
        }
        None
    }

    fn rational(&self, r: &Rational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor(&p).to_u64()?;
        let den = r.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p))
    }

    /// Image of `x`, or `None` when a denominator vanishes mod `p`.
    pub fn reduce(&self, x: &CycloNumber) -> Option<u64> {
        let mut acc = 0;
        let mut w = 1;
        for c in x.coeffs() {
            acc = (acc + mul_mod(self.rational(c)?, w, self.p)) % self.p;
            w = mul_mod(w, self.omega, self.p);
        }
        Some(acc)
    }

    /// Rank of a row-major matrix over `F_p`.
    pub fn rank(&self, rows: usize, cols: usize, mut a: Vec<u64>) -> usize {
        let p = self.p;
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
            let inv = pow_mod(a[r * cols + c], p - 2, p);
            for i in r + 1..rows {
                let f = mul_mod(a[i * cols + c], inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = mul_mod(f, a[r * cols + j], p);
                    a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::RootOfUnity;

    #[test]
    fn omega_is_primitive() {
        for n in [1u64, 2, 3, 4, 8, 12, 30] {
            let sp = SplitPrime::below(n, 1 << 31).unwrap();
            assert_eq!((sp.p - 1) % n, 0);
            assert_eq!(pow_mod(sp.omega, n, sp.p), 1);
            for m in 1..n {
                assert_ne!(pow_mod(sp.omega, m, sp.p), 1, "n = {n}");
            }
        }
    }

    #[test]
    fn reduction_is_multiplicative() {
        let sp = SplitPrime::below(12, 1 << 31).unwrap();
        for a in 0..12 {
            for b in 0..12 {
                let (x, y) = (
                    RootOfUnity::new(12, a).embed(12).unwrap(),
                    RootOfUnity::new(12, b).embed(12).unwrap(),
                );
                let xy = x.try_mul(&y).unwrap();
                assert_eq!(
                    sp.reduce(&xy).unwrap(),
                    mul_mod(sp.reduce(&x).unwrap(), sp.reduce(&y).unwrap(), sp.p)
                );
            }
        }
    }
}
