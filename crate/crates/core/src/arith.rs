//! Exact arithmetic in the local ring Z_(3).
//!
//! A [`LocalScalar`] is a fraction `num/den` with `3 ∤ den`, kept in lowest
//! terms so that structural equality is numeric equality. Residues modulo
//! `3^k` are produced by [`LocalScalar::reduce_mod`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 3-adic valuation. `Infinite` is reserved for zero and orders above every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "∞"),
        }
    }
}

/// 3-adic valuation of an integer.
pub fn val3_int(n: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let three = BigInt::from(3);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&three);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// `3^k` as a big integer.
pub fn pow3(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(3), k as usize)
}

/// Exact element of Z_(3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalScalar {
    num: BigInt,
    den: BigInt,
}

impl LocalScalar {
    /// Builds `num/den`, rejecting denominators that vanish or are divisible by 3.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Arith("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        if (&den % 3u32).is_zero() {
            return Err(Error::Arith(format!("{num}/{den} is not 3-local")));
        }
        Ok(LocalScalar { num, den })
    }

    fn from_parts_unchecked(num: BigInt, den: BigInt) -> Self {
        // callers guarantee den > 0, 3 ∤ den; only the gcd is reduced here
        let g = num.gcd(&den);
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            LocalScalar { num, den }
        } else {
            LocalScalar { num: num / &g, den: den / &g }
        }
    }

    pub fn zero() -> Self {
        LocalScalar { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        LocalScalar { num: BigInt::one(), den: BigInt::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        LocalScalar { num: n.into(), den: BigInt::one() }
    }

    /// `3^k`.
    pub fn pow3(k: u32) -> Self {
        Self::from_int(pow3(k))
    }

    /// `2^e` for any integer `e` (2 is a unit).
    pub fn pow2(e: i64) -> Self {
        let p = num_traits::pow(BigInt::from(2), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_int(p)
        } else {
            LocalScalar { num: BigInt::one(), den: p }
        }
    }

    /// `b^e` for a 3-free base `b` and any integer exponent.
    pub fn unit_pow(base: i64, e: i64) -> Self {
        debug_assert!(base % 3 != 0);
        let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_int(p)
        } else {
            LocalScalar::new(1, p).expect("3-free base")
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.val3() == Valuation::Finite(0)
    }

    /// The 3-adic valuation; the denominator never contributes.
    pub fn val3(&self) -> Valuation {
        val3_int(&self.num)
    }

    /// `x / 3^{val3(x)}`.
    pub fn unit_part(&self) -> Result<Self> {
        match self.val3() {
            Valuation::Infinite => Err(Error::Arith("unit part of zero".into())),
            Valuation::Finite(v) => Ok(LocalScalar {
                num: &self.num / pow3(v),
                den: self.den.clone(),
            }),
        }
    }

    /// Inverse of a unit of Z_(3).
    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::Arith(format!("{self} is not a unit of Z_(3)")));
        }
        LocalScalar::new(self.den.clone(), self.num.clone())
    }

    /// `self / rhs` when the quotient lies in Z_(3), i.e. `val(self) ≥ val(rhs)`.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.val3() < rhs.val3() {
            return None;
        }
        // (a/b) / (c/d) = (a d) / (b c); c's 3-part divides a
        let mut num = &self.num * &rhs.den;
        let mut den = &self.den * &rhs.num;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        Some(LocalScalar { num: num / &g, den: den / &g })
    }

    pub fn pow(&self, e: u32) -> Self {
        LocalScalar {
            num: num_traits::pow(self.num.clone(), e as usize),
            den: num_traits::pow(self.den.clone(), e as usize),
        }
    }

    /// `num · den⁻¹ mod 3^k`; `k = 0` gives the zero ring.
    pub fn reduce_mod(&self, k: u32) -> Residue {
        let modulus = pow3(k);
        if k == 0 {
            return Residue { value: BigUint::zero(), exponent: 0 };
        }
        let inv = mod_inverse(&self.den, &modulus).expect("denominator coprime to 3");
        let v = (&self.num * inv).mod_floor(&modulus);
        Residue {
            value: v.to_biguint().expect("non-negative after mod_floor"),
            exponent: k,
        }
    }

    /// Canonical representative in `[0, 3^k)` as a scalar.
    pub fn reduced(&self, k: u32) -> Self {
        Self::from_int(BigInt::from(self.reduce_mod(k).value))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.den.is_one() {
            self.num.to_i64()
        } else {
            None
        }
    }

    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl Default for LocalScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for LocalScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for LocalScalar {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Debug for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl PartialOrd for LocalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LocalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl<'a> Add<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn add(self, rhs: &LocalScalar) -> LocalScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return LocalScalar::from_parts_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        LocalScalar::from_parts_unchecked(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn sub(self, rhs: &LocalScalar) -> LocalScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return LocalScalar::from_parts_unchecked(&self.num - &rhs.num, self.den.clone());
        }
        LocalScalar::from_parts_unchecked(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn mul(self, rhs: &LocalScalar) -> LocalScalar {
        if self.is_zero() || rhs.is_zero() {
            return LocalScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return LocalScalar { num: &self.num * &rhs.num, den: BigInt::one() };
        }
        LocalScalar::from_parts_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &LocalScalar {
    type Output = LocalScalar;
    fn neg(self) -> LocalScalar {
        LocalScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for LocalScalar {
    type Output = LocalScalar;
    fn neg(self) -> LocalScalar {
        LocalScalar { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LocalScalar> for LocalScalar {
            type Output = LocalScalar;
            fn $m(self, rhs: LocalScalar) -> LocalScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LocalScalar> for LocalScalar {
            type Output = LocalScalar;
            fn $m(self, rhs: &LocalScalar) -> LocalScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LocalScalar> for LocalScalar {
    fn add_assign(&mut self, rhs: &LocalScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LocalScalar> for LocalScalar {
    fn sub_assign(&mut self, rhs: &LocalScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&LocalScalar> for LocalScalar {
    fn mul_assign(&mut self, rhs: &LocalScalar) {
        *self = &*self * rhs;
    }
}

impl Serialize for LocalScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An element of `Z/3^k`, stored by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub value: BigUint,
    pub exponent: u32,
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn modulus(&self) -> BigUint {
        num_traits::pow(BigUint::from(3u32), self.exponent as usize)
    }

    /// Additive order as an exponent of 3.
    pub fn order_exponent(&self) -> u32 {
        match val3_int(&BigInt::from(self.value.clone())) {
            Valuation::Infinite => 0,
            Valuation::Finite(v) => self.exponent.saturating_sub(v),
        }
    }

    pub fn add(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.exponent, rhs.exponent);
        Residue { value: (&self.value + &rhs.value) % self.modulus(), exponent: self.exponent }
    }

    pub fn mul(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.exponent, rhs.exponent);
        Residue { value: (&self.value * &rhs.value) % self.modulus(), exponent: self.exponent }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 3^{}", self.value, self.exponent)
    }
}
