//! Scalar rings and fields used throughout the crate.
//!
//! Everything is exact. Integer matrices are generic over [`IntegerScalar`]
//! (`i64`, `i128`, `BigInt`), Lie-algebra coefficients over [`Ring`], and
//! rank computations over [`Field`]. The small finite fields needed for the
//! characteristic-dependent checks are [`Fp`] (prime order, const generic)
//! and [`Gf4`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// A commutative ring with identity whose elements can be built from `i64`.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Characteristic of the ring (0 for ℤ and ℚ).
    fn characteristic() -> u64;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// A field with finitely many elements, listed in a fixed order.
pub trait FiniteField: Field {
    fn elements() -> Vec<Self>;
}

/// Exact integer types usable as matrix entries.
pub trait IntegerScalar: Ring + Integer + Signed + FromPrimitive + ToPrimitive + Display {}

impl<T> IntegerScalar for T where T: Ring + Integer + Signed + FromPrimitive + ToPrimitive + Display {}

macro_rules! impl_ring_for_int {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn characteristic() -> u64 {
                0
            }
        }
    )*};
}

impl_ring_for_int!(i64, i128);

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn characteristic() -> u64 {
        0
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic() -> u64 {
        0
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// The prime field 𝔽_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn characteristic() -> u64 {
        P
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> FiniteField for Fp<P> {
    fn elements() -> Vec<Self> {
        (0..P).map(Fp).collect()
    }
}

/// 𝔽_4 = 𝔽_2[ω]/(ω² + ω + 1), stored as the bit pair `a + bω`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    /// A generator of the multiplicative group.
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_SQ: Gf4 = Gf4(3);

    pub fn new(a: bool, b: bool) -> Self {
        Gf4(a as u8 | ((b as u8) << 1))
    }

    /// The Frobenius endomorphism x ↦ x².
    pub fn frobenius(self) -> Self {
        self * self
    }
}

impl Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w+1",
        };
        f.write_str(s)
    }
}

impl Add for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Sub for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Neg for Gf4 {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for Gf4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = ac + bd + (ad + bc + bd)ω, using ω² = ω + 1
        let (a, b) = (self.0 & 1, self.0 >> 1);
        let (c, d) = (rhs.0 & 1, rhs.0 >> 1);
        let lo = (a & c) ^ (b & d);
        let hi = (a & d) ^ (b & c) ^ (b & d);
        Gf4(lo | (hi << 1))
    }
}

impl Zero for Gf4 {
    fn zero() -> Self {
        Gf4(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Gf4 {
    fn one() -> Self {
        Gf4(1)
    }
}

impl Ring for Gf4 {
    fn from_i64(v: i64) -> Self {
        Gf4((v.rem_euclid(2)) as u8)
    }
    fn characteristic() -> u64 {
        2
    }
}

impl Field for Gf4 {
    fn inv(&self) -> Option<Self> {
        match self.0 {
            0 => None,
            1 => Some(Gf4(1)),
            2 => Some(Gf4(3)),
            _ => Some(Gf4(2)),
        }
    }
}

impl FiniteField for Gf4 {
    fn elements() -> Vec<Self> {
        (0..4).map(Gf4).collect()
    }
}

/// Deterministic primality test for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `≤ bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime divisors of `|n|`, ascending. Zero has none by convention.
pub fn prime_divisors<T: IntegerScalar>(n: &T) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    loop {
        let dd = T::from_u64(d).expect("small divisor fits");
        if dd.clone() * dd.clone() > n {
            break;
        }
        if n.is_multiple_of(&dd) {
            out.push(d);
            while n.is_multiple_of(&dd) {
                n = n / dd.clone();
            }
        }
        d += 1;
    }
    if n > T::one() {
        out.push(n.to_u64().expect("remaining prime factor fits in u64"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type F2 = Fp<2>;
    type F5 = Fp<5>;

    #[test]
    fn gf4_is_a_field() {
        let els = Gf4::elements();
        for &a in &els {
            for &b in &els {
                assert_eq!(a * b, b * a);
                for &c in &els {
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), Gf4::ONE);
            }
        }
        assert_eq!(Gf4::OMEGA * Gf4::OMEGA, Gf4::OMEGA + Gf4::ONE);
        assert_ne!(Gf4::OMEGA.frobenius(), Gf4::OMEGA);
    }

    #[test]
    fn prime_field_inverse() {
        for a in F5::elements().into_iter().skip(1) {
            assert_eq!(a * a.inv().unwrap(), F5::one());
        }
        assert_eq!(F2::from_i64(-3), F2::one());
        assert!(F2::zero().inv().is_none());
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(13), vec![2, 3, 5, 7, 11, 13]);
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert_eq!(prime_divisors(&360i64), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(-49)), vec![7]);
        assert!(prime_divisors(&0i64).is_empty());
        assert!(prime_divisors(&1i64).is_empty());
    }
}
