//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`CycloNumber`] is stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`,
//! i.e. as a rational polynomial reduced modulo Φ_N. Two numbers at the same
//! conductor are equal exactly when their coefficient vectors are. Mixed
//! conductors are promoted to their lcm, which is capped by
//! [`max_conductor`].

mod matrix;
mod modular;
pub mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::CycloMatrix;
pub use poly::{cyclotomic_polynomial, euler_phi};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const DEFAULT_MAX_CONDUCTOR: u64 = 10_080;

/// Largest conductor mixed-conductor arithmetic may promote to.
///
/// Read once from `SMATRIX_MAX_CONDUCTOR`, falling back to
/// [`DEFAULT_MAX_CONDUCTOR`].
pub fn max_conductor() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("SMATRIX_MAX_CONDUCTOR")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &u64| v >= 1)
            .unwrap_or(DEFAULT_MAX_CONDUCTOR)
    })
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    let l = poly::lcm(a, b);
    let cap = max_conductor();
    if l > cap {
        return Err(Error::ConductorCapExceeded { requested: l, cap });
    }
    Ok(l)
}

/// The root of unity `e^{2πi k/N}`, stored with `gcd(k, N) = 1` so that the
/// stored order is the true order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity {
        order: 1,
        exponent: 0,
    };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity {
        order: 2,
        exponent: 1,
    };

    /// `ζ_order^exponent`; the exponent may be negative or out of range.
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order >= 1, "root of unity of order zero");
        let k = exponent.rem_euclid(order as i64) as u64;
        let g = k.gcd(&order);
        RootOfUnity {
            order: order / g,
            exponent: k / g,
        }
    }

    /// Primitive `n`-th root `ζ_n`.
    pub fn primitive(n: u64) -> Self {
        Self::new(n, 1)
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }

    pub fn inv(self) -> Self {
        Self::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        let k = (self.exponent as i128 * e as i128).rem_euclid(self.order as i128);
        Self::new(self.order, k as i64)
    }

    /// The `k` with `self = ζ_n^k`, if the order of `self` divides `n`.
    pub fn exponent_in(self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.order)
            .then(|| self.exponent * (n / self.order))
    }

    /// Embed into Q(ζ_target).
    pub fn embed(self, target_conductor: u64) -> Result<CycloNumber> {
        let k = self
            .exponent_in(target_conductor)
            .ok_or(Error::ConductorMismatch {
                order: self.order,
                conductor: target_conductor,
            })?;
        Ok(CycloNumber::zeta_pow(target_conductor, k))
    }

    /// Embed into its own field Q(ζ_order).
    pub fn to_cyclo(self) -> CycloNumber {
        CycloNumber::zeta_pow(self.order, self.exponent)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&rhs.order);
        let k = self.exponent * (l / self.order) + rhs.exponent * (l / rhs.order);
        RootOfUnity::new(l, (k % l) as i64)
    }
}

impl std::iter::Product for RootOfUnity {
    fn product<I: Iterator<Item = RootOfUnity>>(iter: I) -> Self {
        iter.fold(RootOfUnity::ONE, |a, b| a * b)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (n, k) => write!(f, "z{n}^{k}"),
        }
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Accepts `zN^k`, `zN` (k = 1), `1` and `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "1" => return Ok(RootOfUnity::ONE),
            "-1" => return Ok(RootOfUnity::MINUS_ONE),
            _ => {}
        }
        let bad = || Error::Parse(format!("bad root-of-unity literal {s:?}"));
        let rest = s
            .strip_prefix('z')
            .or_else(|| s.strip_prefix('Z'))
            .ok_or_else(bad)?;
        let (n, k) = match rest.split_once('^') {
            Some((n, k)) => (n, k),
            None => (rest, "1"),
        };
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(n, k))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of Q(ζ_N) in the Φ_N-reduced power basis.
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
    modulus: Arc<Vec<BigInt>>,
}

impl CycloNumber {
    fn modulus_for(conductor: u64) -> Arc<Vec<BigInt>> {
        Arc::new(cyclotomic_polynomial(conductor))
    }

    /// Reduce an arbitrary-length coefficient vector modulo Φ_N.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Self {
        let modulus = Self::modulus_for(conductor);
        Self::with_modulus(conductor, coeffs, modulus)
    }

    fn with_modulus(conductor: u64, coeffs: Vec<Rational>, modulus: Arc<Vec<BigInt>>) -> Self {
        let coeffs = poly::reduce_mod(coeffs, &modulus);
        CycloNumber {
            conductor,
            coeffs,
            modulus,
        }
    }

    pub fn zero(conductor: u64) -> Self {
        Self::from_coeffs(conductor, vec![])
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(conductor: u64, r: Rational) -> Self {
        Self::from_coeffs(conductor, vec![r])
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(conductor: u64, k: u64) -> Self {
        let k = (k % conductor) as usize;
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self::from_coeffs(conductor, c)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    fn same_field(&self, value: Vec<Rational>) -> Self {
        Self::with_modulus(self.conductor, value, self.modulus.clone())
    }

    /// Re-express in Q(ζ_target); `self.conductor()` must divide `target`.
    pub fn promote(&self, target: u64) -> Result<Self> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch {
                order: self.conductor,
                conductor: target,
            });
        }
        let cap = max_conductor();
        if target > cap {
            return Err(Error::ConductorCapExceeded {
                requested: target,
                cap,
            });
        }
        let step = (target / self.conductor) as usize;
        let mut c = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * step] = x.clone();
        }
        Ok(Self::from_coeffs(target, c))
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        let l = checked_lcm(self.conductor, other.conductor)?;
        Ok((self.promote(l)?, other.promote(l)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(a.same_field(c))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(a.same_field(c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let n = a.coeffs.len();
        let mut c = vec![Rational::zero(); (2 * n).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Ok(a.same_field(c))
    }

    pub fn inv(&self) -> Result<Self> {
        let c = poly::inverse_mod(&self.coeffs, &self.modulus).ok_or(Error::DivisionByZero)?;
        Ok(self.same_field(c))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result =
            Self::with_modulus(self.conductor, vec![Rational::one()], self.modulus.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.same_field(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut c = vec![Rational::zero(); n.max(1)];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[(n - i) % n] += x;
        }
        self.same_field(c)
    }

    /// Mathematical equality, promoting across conductors when needed.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.aligned(other)?;
        Ok(a.coeffs == b.coeffs)
    }

    /// Recognise the number as a root of unity.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let n = self.conductor;
        // reduced monomials ±ζ^i with i < φ(N) are the common case
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if let [i] = nonzero[..] {
            let c = &self.coeffs[i];
            if c.is_one() {
                return Some(RootOfUnity::new(n, i as i64));
            }
            if (-c).is_one() {
                return Some(RootOfUnity::new(n, i as i64) * RootOfUnity::MINUS_ONE);
            }
        }
        let m = n.lcm(&2);
        let promoted = self.promote(m).ok()?;
        (0..m).map(|k| RootOfUnity::new(m, k as i64)).find(|r| {
            r.embed(m)
                .map(|z| z.coeffs == promoted.coeffs)
                .unwrap_or(false)
        })
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            self.equals(other).unwrap_or(false)
        }
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[N={}]({})", self.conductor, self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_root_of_unity() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.conductor, i)?,
                (_, false) => write!(f, "{mag}*z{}^{}", self.conductor, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic only when promotion would exceed the conductor cap;
// the `try_*` methods report that as an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs)
                    .expect("cyclotomic conductor cap exceeded")
            }
        }
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.same_field(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}
