//! Exact coefficients: arbitrary-precision rationals or residues modulo a prime `p > 3`.
//!
//! Integer and rational literals (such as the constants 2, 3, 18 and 27 that appear in the cover
//! formulas) are created as rationals and are coerced into the prime field the moment they meet a
//! residue. Mixing two different moduli is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The coefficient domain of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// A prime field `F_p`; `p` must be a prime larger than 3.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Maps an integer into this field.
    pub fn from_int(self, n: i64) -> Scalar {
        Scalar::from(n).into_field(self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue class modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn add(self, other: Residue) -> Residue {
        Residue {
            value: ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Square root by Tonelli-Shanks, if one exists.
    fn sqrt(self) -> Option<Residue> {
        let p = self.modulus;
        let r = |v: u64| Residue { value: v, modulus: p };
        if self.value == 0 {
            return Some(self);
        }
        if self.pow((p - 1) / 2).value != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while r(z).pow((p - 1) / 2).value != p - 1 {
            z += 1;
        }
        let mut c = r(z).pow(q);
        let mut x = self.pow(q.div_ceil(2));
        let mut t = self.pow(q);
        let mut m = s;
        while t.value != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.value != 1 {
                t2 = t2.mul(t2);
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            x = x.mul(b);
            c = b.mul(b);
            t = t.mul(c);
            m = i;
        }
        Some(x)
    }

    fn inv(self) -> Option<Residue> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    fn from_rational(r: &BigRational, modulus: u64) -> Option<Residue> {
        let m = BigInt::from(modulus);
        let num = r.numer().mod_floor(&m).to_u64()?;
        let den = r.denom().mod_floor(&m).to_u64()?;
        let den = Residue {
            value: den,
            modulus,
        }
        .inv()?;
        Some(
            Residue {
                value: num,
                modulus,
            }
            .mul(den),
        )
    }
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Residue),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    /// The rational number `num / den`. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular(m) => m.value == 1,
        }
    }

    /// Characteristic of the field this value lives in; 0 for rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Modular(m) => m.modulus,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular(m) => Field::Prime(m.modulus),
        }
    }

    /// Coerces into `field`. Panics if a denominator is not invertible there.
    pub fn into_field(self, field: Field) -> Scalar {
        match (self, field) {
            (s, Field::Rational) => s,
            (Scalar::Rational(r), Field::Prime(p)) => Scalar::Modular(
                Residue::from_rational(&r, p)
                    .unwrap_or_else(|| panic!("denominator of {r} vanishes modulo {p}")),
            ),
            (Scalar::Modular(m), Field::Prime(p)) => {
                assert_eq!(m.modulus, p, "mixed prime moduli");
                Scalar::Modular(m)
            }
        }
    }

    /// Fallible variant of [`Scalar::into_field`].
    pub fn try_into_field(self, field: Field) -> Option<Scalar> {
        match (self, field) {
            (s, Field::Rational) => Some(s),
            (Scalar::Rational(r), Field::Prime(p)) => {
                Residue::from_rational(&r, p).map(Scalar::Modular)
            }
            (Scalar::Modular(m), Field::Prime(p)) => (m.modulus == p).then_some(Scalar::Modular(m)),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Modular(m) => m.inv().map(Scalar::Modular),
        }
    }

    /// An exact square root, if the value is a square in its field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Modular(m) => m.sqrt().map(Scalar::Modular),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow(r.clone(), e as usize)),
            Scalar::Modular(m) => Scalar::Modular(m.pow(e as u64)),
        }
    }

    /// The rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular(_) => None,
        }
    }

    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular(_) => false,
        }
    }

    fn unify(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Modular(m), Scalar::Rational(_)) => {
                (a.clone(), b.clone().into_field(Field::Prime(m.modulus)))
            }
            (Scalar::Rational(_), Scalar::Modular(m)) => {
                (a.clone().into_field(Field::Prime(m.modulus)), b.clone())
            }
            _ => (a.clone(), b.clone()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match Scalar::unify(self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Modular(a), Scalar::Modular(b)) => a == b,
            _ => unreachable!(),
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                assert_eq!(a.modulus, b.modulus, "mixed prime moduli");
                Scalar::Modular(a.add(*b))
            }
            _ => {
                let (a, b) = Scalar::unify(self, rhs);
                &a + &b
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                assert_eq!(a.modulus, b.modulus, "mixed prime moduli");
                Scalar::Modular(a.mul(*b))
            }
            _ => {
                let (a, b) = Scalar::unify(self, rhs);
                &a * &b
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular(m) => Scalar::Modular(m.neg()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular(m) => write!(f, "{}", m.value),
        }
    }
}

/// Total order used only to make outputs deterministic; it is not a field order.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match Scalar::unify(self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(&b),
            (Scalar::Modular(a), Scalar::Modular(b)) => a.value.cmp(&b.value),
            _ => unreachable!(),
        }
    }
}
