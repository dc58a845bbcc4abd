//! Homogeneous forms: ternary forms on the plane and binary forms on a line.

use std::fmt;
use std::ops::{Mul, Neg};

use super::gcd;
use super::poly::{write_poly, Monomial, Poly};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A homogeneous polynomial in `N` variables. The zero form keeps a declared degree so that it can
/// stand for the zero section of a given twist.
#[derive(Clone, Debug)]
pub struct HomogeneousForm<const N: usize> {
    poly: Poly<N>,
    degree: u32,
}

/// A form in the plane coordinates `x, y, z`.
pub type Form = HomogeneousForm<3>;

/// A form in the line parameters `λ, μ`.
pub type BinaryForm = HomogeneousForm<2>;

impl<const N: usize> PartialEq for HomogeneousForm<N> {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl<const N: usize> Eq for HomogeneousForm<N> {}

impl<const N: usize> HomogeneousForm<N> {
    pub fn zero(degree: u32) -> Self {
        HomogeneousForm {
            poly: Poly::zero(),
            degree,
        }
    }

    pub fn constant(c: Scalar) -> Self {
        HomogeneousForm {
            poly: Poly::constant(c),
            degree: 0,
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::from(n))
    }

    pub fn var(i: usize) -> Self {
        HomogeneousForm {
            poly: Poly::var(i),
            degree: 1,
        }
    }

    pub fn monomial(c: Scalar, exponents: [u32; N]) -> Self {
        let m = Monomial(exponents);
        HomogeneousForm {
            degree: m.degree(),
            poly: Poly::monomial(c, m),
        }
    }

    /// Wraps a polynomial, checking homogeneity. The zero polynomial gets degree 0.
    pub fn from_poly(poly: Poly<N>) -> Result<Self> {
        let hi = poly.total_degree().unwrap_or(0);
        let lo = poly.min_total_degree().unwrap_or(0);
        if hi != lo {
            return Err(Error::NotHomogeneous(lo, hi));
        }
        Ok(HomogeneousForm { poly, degree: hi })
    }

    pub(crate) fn from_poly_unchecked(poly: Poly<N>, degree: u32) -> Self {
        debug_assert!(poly.is_zero() || poly.total_degree() == Some(degree));
        HomogeneousForm { poly, degree }
    }

    pub fn poly(&self) -> &Poly<N> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<N> {
        self.poly
    }

    /// Degree of the form; for the zero form, its declared degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn with_degree(mut self, degree: u32) -> Result<Self> {
        if !self.is_zero() && self.degree != degree {
            return Err(Error::DegreeMismatch {
                expected: degree as i64,
                found: self.degree as i64,
            });
        }
        self.degree = degree;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.len()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.poly.leading_coefficient()
    }

    pub fn characteristic(&self) -> u64 {
        self.poly.characteristic()
    }

    pub fn into_field(self, field: Field) -> Self {
        HomogeneousForm {
            poly: self.poly.into_field(field),
            degree: self.degree,
        }
    }

    pub fn coefficient(&self, exponents: [u32; N]) -> Scalar {
        self.poly.coefficient(&Monomial(exponents))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ([u32; N], &Scalar)> {
        self.poly.terms().map(|(m, c)| (m.0, c))
    }

    fn check_same_degree(&self, other: &Self) -> Result<u32> {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => Ok(other.degree),
            (_, true) => Ok(self.degree),
            _ if self.degree == other.degree => Ok(self.degree),
            _ => Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                found: other.degree as i64,
            }),
        }
    }

    /// Sum of two forms of equal degree (either may be zero).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let degree = self.check_same_degree(other)?;
        Ok(HomogeneousForm {
            poly: &self.poly + &other.poly,
            degree,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let degree = self.check_same_degree(other)?;
        Ok(HomogeneousForm {
            poly: &self.poly - &other.poly,
            degree,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        HomogeneousForm {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        HomogeneousForm {
            poly: self.poly.pow(e),
            degree: self.degree * e,
        }
    }

    /// Scales so that the graded-lex leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        HomogeneousForm {
            poly: self.poly.monic(),
            degree: self.degree,
        }
    }

    /// Whether `self` is a nonzero scalar multiple of `other`.
    pub fn is_associate(&self, other: &Self) -> bool {
        !self.is_zero() && !other.is_zero() && self.monic() == other.monic()
    }

    /// The `q` with `q * g = self`.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroForm("divisor"));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.degree.saturating_sub(g.degree)));
        }
        if g.degree > self.degree {
            return Err(Error::NotDivisible);
        }
        let q = self.poly.exact_div(&g.poly).ok_or(Error::NotDivisible)?;
        Ok(HomogeneousForm {
            poly: q,
            degree: self.degree - g.degree,
        })
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.exact_div(self).is_ok()
    }

    pub fn derivative(&self, v: usize) -> Self {
        HomogeneousForm {
            poly: self.poly.derivative(v),
            degree: self.degree.saturating_sub(1),
        }
    }

    pub fn evaluate(&self, point: &[Scalar; N]) -> Scalar {
        self.poly.evaluate(point)
    }

    /// Monic greatest common divisor; `gcd(f, 0)` is `f` made monic.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let g = gcd::gcd_homogeneous(&self.poly, &other.poly).ok_or(Error::BothZero)?;
        let degree = g.total_degree().unwrap_or(0);
        Ok(HomogeneousForm { poly: g, degree })
    }

    fn check_characteristic(&self) -> Result<()> {
        let p = self.characteristic();
        if p != 0 && p <= self.degree as u64 {
            return Err(Error::CharacteristicTooSmall {
                characteristic: p,
                bound: self.degree as u64,
            });
        }
        Ok(())
    }

    /// Square-free decomposition `f = unit * prod g_i^i` with monic, square-free, pairwise coprime
    /// `g_i`, sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition<N>> {
        if self.is_zero() {
            return Err(Error::ZeroForm("square-free decomposition input"));
        }
        self.check_characteristic()?;
        let parts = gcd::squarefree_factors_homogeneous(&self.poly)
            .into_iter()
            .map(|(p, i)| {
                let d = p.total_degree().unwrap_or(0);
                (HomogeneousForm::from_poly_unchecked(p, d), i)
            })
            .collect();
        Ok(SquarefreeDecomposition {
            unit: self.leading_coefficient().cloned().unwrap(),
            parts,
        })
    }

    /// Splits `f = f1 * f0^2` with `f1` square-free. The unit of `f` is carried by `f1`; `f0` is
    /// monic.
    pub fn squarefree_split(&self) -> Result<(Self, Self)> {
        let dec = self.squarefree_decomposition()?;
        let mut free = Self::constant(dec.unit.clone());
        let mut root = Self::one();
        for (g, i) in &dec.parts {
            if i % 2 == 1 {
                free = &free * g;
            }
            if i / 2 > 0 {
                root = &root * &g.pow(i / 2);
            }
        }
        Ok((free, root))
    }

    /// Whether the form has no repeated factor.
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self
            .squarefree_decomposition()?
            .parts
            .iter()
            .all(|(_, i)| *i == 1))
    }
}

/// Output of [`HomogeneousForm::squarefree_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<const N: usize> {
    pub unit: Scalar,
    pub parts: Vec<(HomogeneousForm<N>, u32)>,
}

impl<const N: usize> SquarefreeDecomposition<N> {
    pub fn expand(&self) -> HomogeneousForm<N> {
        self.parts
            .iter()
            .fold(HomogeneousForm::constant(self.unit.clone()), |acc, (g, i)| {
                &acc * &g.pow(*i)
            })
    }
}

impl<'a, const N: usize> Mul<&'a HomogeneousForm<N>> for &'a HomogeneousForm<N> {
    type Output = HomogeneousForm<N>;
    fn mul(self, rhs: &'a HomogeneousForm<N>) -> HomogeneousForm<N> {
        HomogeneousForm {
            poly: &self.poly * &rhs.poly,
            degree: self.degree + rhs.degree,
        }
    }
}

impl<const N: usize> Mul for HomogeneousForm<N> {
    type Output = HomogeneousForm<N>;
    fn mul(self, rhs: HomogeneousForm<N>) -> HomogeneousForm<N> {
        &self * &rhs
    }
}

impl<const N: usize> Neg for &HomogeneousForm<N> {
    type Output = HomogeneousForm<N>;
    fn neg(self) -> HomogeneousForm<N> {
        HomogeneousForm {
            poly: -&self.poly,
            degree: self.degree,
        }
    }
}

impl<const N: usize> Neg for HomogeneousForm<N> {
    type Output = HomogeneousForm<N>;
    fn neg(self) -> HomogeneousForm<N> {
        -&self
    }
}

impl<const N: usize> fmt::Display for HomogeneousForm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match N {
            2 => &["λ", "μ"],
            3 => &["x", "y", "z"],
            _ => &["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        };
        write_poly(&self.poly, names, f)
    }
}

impl Form {
    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Form {
        Form::x()
    }
    fn y() -> Form {
        Form::y()
    }
    fn z() -> Form {
        Form::z()
    }
    fn sum(a: &Form, b: &Form) -> Form {
        a.checked_add(b).unwrap()
    }
    fn diff(a: &Form, b: &Form) -> Form {
        a.checked_sub(b).unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        let xx = &x() * &x();
        assert_eq!(xx, Form::monomial(Scalar::one(), [2, 0, 0]));
        assert_eq!(xx.degree(), 2);
        assert!(sum(&x(), &-x()).is_zero());
        let expected = Form::from_poly(&x().pow(2).into_poly() - &y().pow(2).into_poly()).unwrap();
        assert_eq!(&sum(&x(), &y()) * &diff(&x(), &y()), expected);
    }

    #[test]
    fn inhomogeneous_addition_is_rejected() {
        let err = x().checked_add(&y().pow(2)).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeMismatch {
                expected: 1,
                found: 2
            }
        );
        assert!(x().checked_add(&Form::zero(5)).is_ok());
    }

    #[test]
    fn from_poly_reports_offending_degrees() {
        let p = &x().into_poly() + &y().pow(2).into_poly();
        assert_eq!(Form::from_poly(p).unwrap_err(), Error::NotHomogeneous(1, 2));
    }

    #[test]
    fn exact_div_examples() {
        let x2y = Form::monomial(Scalar::one(), [2, 1, 0]);
        assert_eq!(x2y.exact_div(&x()).unwrap(), &x() * &y());
        let f = sum(&x().pow(2), &y().pow(2));
        assert_eq!(f.exact_div(&f).unwrap(), Form::one());
        assert_eq!(f.exact_div(&x()).unwrap_err(), Error::NotDivisible);
        assert_eq!(f.exact_div(&Form::zero(1)).unwrap_err(), Error::ZeroForm("divisor"));
    }

    #[test]
    fn gcd_examples() {
        let x2y = Form::monomial(Scalar::one(), [2, 1, 0]);
        let xy2 = Form::monomial(Scalar::one(), [1, 2, 0]);
        assert_eq!(x2y.gcd(&xy2).unwrap(), &x() * &y());
        let l = sum(&x(), &y());
        assert_eq!((&l.pow(2) * &z()).gcd(&(&l * &y())).unwrap(), l);
        // s = xy, t = xyz: gcd(s^3, t^2) = x^2 y^2
        let s = &x() * &y();
        let t = &s * &z();
        assert_eq!(s.pow(3).gcd(&t.pow(2)).unwrap(), Form::monomial(Scalar::one(), [2, 2, 0]));
        assert_eq!(Form::zero(1).gcd(&Form::zero(2)).unwrap_err(), Error::BothZero);
    }

    #[test]
    fn squarefree_examples() {
        let x2y = Form::monomial(Scalar::one(), [2, 1, 0]);
        let dec = x2y.squarefree_decomposition().unwrap();
        assert_eq!(dec.parts, vec![(y(), 1), (x(), 2)]);
        let f = sum(&x(), &y()).scale(&Scalar::from(3));
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.parts, vec![(sum(&x(), &y()), 1)]);
        assert_eq!(dec.expand(), f);
        let p = &sum(&x(), &y()).pow(3) * &diff(&x(), &y());
        let dec = p.squarefree_decomposition().unwrap();
        assert_eq!(dec.parts, vec![(diff(&x(), &y()), 1), (sum(&x(), &y()), 3)]);
    }

    #[test]
    fn squarefree_split_examples() {
        let f = sum(&x(), &y());
        assert_eq!(f.squarefree_split().unwrap(), (f.clone(), Form::one()));
        let x2y = Form::monomial(Scalar::one(), [2, 1, 0]);
        assert_eq!(x2y.squarefree_split().unwrap(), (y(), x()));
        let g = &f.pow(3) * &z().pow(2);
        assert_eq!(g.squarefree_split().unwrap(), (f.clone(), &f * &z()));
    }

    #[test]
    fn characteristic_must_exceed_degree() {
        let p = Field::prime(5).unwrap();
        let f = x().pow(5).into_field(p);
        assert!(matches!(
            f.squarefree_decomposition(),
            Err(Error::CharacteristicTooSmall { .. })
        ));
        let g = x().pow(4).into_field(p);
        assert_eq!(g.squarefree_decomposition().unwrap().parts, vec![(x().into_field(p), 4)]);
    }
}
