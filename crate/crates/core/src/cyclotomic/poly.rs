//! Dense univariate polynomials, coefficients stored lowest degree first.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi of zero");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `n`-th cyclotomic polynomial Φ_n with integer coefficients.
///
/// Built by dividing `x^n - 1` by Φ_d for every proper divisor `d` of `n`,
/// each of which is obtained the same way.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial(0) is undefined");
    let mut memo: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(n) {
        let mut quotient = x_pow_minus_one(d);
        for (_, phi) in memo.range(..d).filter(|(e, _)| d % **e == 0) {
            quotient = div_exact_monic(&quotient, phi);
        }
        memo.insert(d, quotient);
    }
    memo.remove(&n).unwrap()
}

/// `x^n - 1`.
pub fn x_pow_minus_one(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    p
}

/// Exact division of integer polynomials by a monic divisor. Panics on a
/// nonzero remainder.
pub fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * dj;
        }
        quot[i - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reduce a rational polynomial modulo a monic integer polynomial, returning
/// exactly `deg(modulus)` coefficients.
pub(crate) fn reduce_mod(mut p: Vec<BigRational>, modulus: &[BigInt]) -> Vec<BigRational> {
    let d = modulus.len() - 1;
    for i in (d..p.len()).rev() {
        let c = std::mem::take(&mut p[i]);
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus.iter().enumerate().take(d) {
            if !mj.is_zero() {
                p[i - d + j] -= &c * BigRational::from_integer(mj.clone());
            }
        }
    }
    p.resize(d, BigRational::zero());
    p
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = degree(den).expect("polynomial division by zero");
    let mut rem = num.to_vec();
    let Some(dn) = degree(&rem) else {
        return (vec![BigRational::zero()], rem);
    };
    if dn < dd {
        return (vec![BigRational::zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
        quot[i - dd] = c;
    }
    (quot, rem)
}

fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect()
}

/// Inverse of `a` modulo an irreducible monic `modulus`, or `None` when `a`
/// is zero. Extended Euclid over Q[x].
pub(crate) fn inverse_mod(a: &[BigRational], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    degree(a)?;
    let mut r0: Vec<BigRational> = modulus
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r1 = a.to_vec();
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub_rat(&s0, &mul_rat(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant because the modulus is irreducible
    let c = r0[0].clone();
    debug_assert!(degree(&r0) == Some(0));
    let inv: Vec<BigRational> = s0.into_iter().map(|x| x / &c).collect();
    Some(reduce_mod(inv, modulus))
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() as u64 - 1, euler_phi(105));
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(euler_phi(10080), 2304);
    }
}
