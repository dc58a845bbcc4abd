use std::fmt;

use super::form::{BinaryForm, Form};
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A line `u1*x + u2*y + u3*z = 0` in the plane, with a parametrization `λP + μQ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineP2 {
    coefficients: [Scalar; 3],
    p: [Scalar; 3],
    q: [Scalar; 3],
}

fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

impl LineP2 {
    /// The line with the given coefficients. The parametrizing points are chosen canonically: for
    /// `u3 != 0` they are `(u3, 0, -u1)` and `(0, u3, -u2)`, otherwise `(u2, -u1, 0)` and `(0, 0, 1)`.
    pub fn new(coefficients: [Scalar; 3]) -> Result<Self> {
        let [u1, u2, u3] = &coefficients;
        let zero = Scalar::zero;
        let (p, q) = if !u3.is_zero() {
            ([u3.clone(), zero(), -u1], [zero(), u3.clone(), -u2])
        } else if !u2.is_zero() || !u1.is_zero() {
            ([u2.clone(), -u1, zero()], [zero(), zero(), Scalar::one()])
        } else {
            return Err(Error::ZeroLine);
        };
        Ok(LineP2 { coefficients, p, q })
    }

    pub fn from_ints(u1: i64, u2: i64, u3: i64) -> Result<Self> {
        Self::new([u1.into(), u2.into(), u3.into()])
    }

    /// The line through two distinct points, parametrized by exactly those points.
    pub fn through(p: [Scalar; 3], q: [Scalar; 3]) -> Result<Self> {
        let coefficients = cross(&p, &q);
        if coefficients.iter().all(Scalar::is_zero) {
            return Err(Error::DependentPoints);
        }
        Ok(LineP2 { coefficients, p, q })
    }

    pub fn coefficients(&self) -> &[Scalar; 3] {
        &self.coefficients
    }

    pub fn points(&self) -> (&[Scalar; 3], &[Scalar; 3]) {
        (&self.p, &self.q)
    }

    /// The defining linear form `u1*x + u2*y + u3*z`.
    pub fn linear_form(&self) -> Form {
        let mut f = Form::zero(1);
        for (i, u) in self.coefficients.iter().enumerate() {
            f = f.checked_add(&Form::var(i).scale(u)).unwrap();
        }
        f
    }

    /// Substitutes `λP + μQ` into `f`.
    pub fn restrict(&self, f: &Form) -> BinaryForm {
        let image = |i: usize| {
            let lam = Poly::<2>::var(0).scale(&self.p[i]);
            let mu = Poly::<2>::var(1).scale(&self.q[i]);
            &lam + &mu
        };
        let poly = f.poly().substitute(&[image(0), image(1), image(2)]);
        BinaryForm::from_poly_unchecked(poly, f.degree())
    }
}

impl fmt::Display for LineP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.linear_form())
    }
}

/// Restriction of a plane form to a line, as a binary form in `λ, μ`.
pub fn restrict_to_line(f: &Form, line: &LineP2) -> BinaryForm {
    line.restrict(f)
}
