//! Coefficient fields: arbitrary-precision rationals and small prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgError;

/// Default working prime for small exhaustive scans.
pub const P_SMALL: u32 = 101;
/// Default working prime for interpolation and probabilistic rank tests.
pub const P_WORK: u32 = 32003;

/// A coefficient field.
///
/// Elements are plain values; all arithmetic goes through the field handle so
/// that prime fields can carry their modulus at runtime.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;

    /// Parse a coefficient written as `n` or `n/m` (integers, optional sign).
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgError>;
    /// Canonical textual form used by the polynomial printer.
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Whether the canonical text of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Image of `a` in F_p. Fails when a denominator is not a unit mod p or
    /// when the source is a different prime field.
    fn reduce_mod(&self, a: &Self::Elem, fp: &PrimeField) -> Result<u32, AlgError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem, AlgError> {
        let d = self.from_i64(den);
        let di = self.inv(&d).ok_or(AlgError::DivisionByZero)?;
        Ok(self.mul(&self.from_i64(num), &di))
    }
}

/// The field of rational numbers with arbitrary-precision numerator and
/// denominator. `BigRational` keeps values reduced with a positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgError> {
        let bad = || AlgError::Parse(format!("bad rational coefficient `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(AlgError::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn reduce_mod(&self, a: &BigRational, fp: &PrimeField) -> Result<u32, AlgError> {
        let p = BigInt::from(fp.p);
        let num = a.numer().mod_floor(&p).to_u32().expect("residue fits");
        let den = a.denom().mod_floor(&p).to_u32().expect("residue fits");
        if den == 0 {
            return Err(AlgError::BadPrime {
                p: fp.p,
                reason: format!("denominator of {a} vanishes"),
            });
        }
        Ok(fp.mul(&num, &fp.inv(&den).expect("nonzero")))
    }
}

/// The prime field F_p for an odd prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgError> {
        if !(3..1 << 31).contains(&p) || !is_prime(p as u64) {
            return Err(AlgError::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduce a signed integer into [0, p).
    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(self.pow_raw(a, self.p - 2))
    }

    pub fn pow_raw(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_raw(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.sub_raw(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_raw(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_raw(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn parse_elem(&self, s: &str) -> Result<u32, AlgError> {
        let bad = || AlgError::Parse(format!("bad coefficient `{s}`"));
        let s = s.trim();
        let to_res = |t: &str| -> Result<u32, AlgError> {
            let v: BigInt = t.trim().parse().map_err(|_| bad())?;
            Ok(v.mod_floor(&BigInt::from(self.p))
                .to_u32()
                .expect("residue fits"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = to_res(d)?;
                let di = self.inv_raw(d).ok_or(AlgError::DivisionByZero)?;
                Ok(self.mul_raw(to_res(n)?, di))
            }
            None => to_res(s),
        }
    }

    fn format_elem(&self, a: &u32) -> String {
        self.signed(*a).to_string()
    }

    fn is_negative(&self, a: &u32) -> bool {
        self.signed(*a) < 0
    }

    fn reduce_mod(&self, a: &u32, fp: &PrimeField) -> Result<u32, AlgError> {
        if fp.p != self.p {
            return Err(AlgError::FieldMismatch(format!(
                "cannot map F_{} into F_{}",
                self.p, fp.p
            )));
        }
        Ok(*a)
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
