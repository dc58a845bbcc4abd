//! Sparse polynomials in a fixed number of variables.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded lexicographic with
//! `x0 > x1 > ...`; the last entry of the map is therefore the leading term. Zero coefficients are
//! never stored.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial<const N: usize>(pub [u32; N]);

impl<const N: usize> Monomial<N> {
    pub fn one() -> Self {
        Monomial([0; N])
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = [0; N];
        m[i] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    fn div(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A sparse polynomial with exact coefficients in `N` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<Monomial<N>, Scalar>,
}

impl<const N: usize> Default for Poly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(c: Scalar, m: Monomial<N>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Scalar::one(), Monomial::var(i, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<N>, Scalar)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<N>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial<N>) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_total_degree()
    }

    pub fn leading_term(&self) -> Option<(&Monomial<N>, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Characteristic of the coefficients (0 when all are rational).
    pub fn characteristic(&self) -> u64 {
        self.terms
            .values()
            .map(Scalar::characteristic)
            .max()
            .unwrap_or(0)
    }

    pub fn field(&self) -> Field {
        match self.characteristic() {
            0 => Field::Rational,
            p => Field::Prime(p),
        }
    }

    pub fn into_field(self, field: Field) -> Self {
        Poly::from_terms(self.terms.into_iter().map(|(m, c)| (m, c.into_field(field))))
    }

    fn add_term(&mut self, m: Monomial<N>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    ///
    /// Uses division by a single divisor in graded-lex order; the remainder vanishes exactly when
    /// `g` divides `self`.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        let (gm, gc) = g.leading_term()?;
        let gc_inv = gc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading_term() {
            if !gm.divides(rm) {
                return None;
            }
            let m = rm.div(gm);
            let c = rc * &gc_inv;
            for (k, a) in &g.terms {
                r.add_term(k.mul(&m), -&(a * &c));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Degree in variable `v`; 0 for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Coefficient of `x_v^i`, as a polynomial free of `x_v`.
    pub fn coefficient_in(&self, v: usize, i: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] == i)
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[v] = 0;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients in `x_v` from degree 0 upward.
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        (0..=self.degree_in(v))
            .map(|i| self.coefficient_in(v, i))
            .collect()
    }

    /// Sets `x_{N-1} = 1` after removing its largest power; returns that power too.
    pub fn dehomogenize(&self) -> (Self, u32) {
        let last = N - 1;
        let v = self.valuation_in(last);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[last] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        (out, v)
    }

    /// Inverse of [`Poly::dehomogenize`] for a polynomial free of `x_{N-1}`: pads every term
    /// with powers of `x_{N-1}` up to the total degree.
    pub fn homogenize(&self) -> Self {
        let last = N - 1;
        let d = self.total_degree().unwrap_or(0);
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[last] = d - m.degree();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: usize) -> Self {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.0[v] > 0).map(|(m, c)| {
            let mut e = m.0;
            e[v] -= 1;
            (Monomial(e), c * &Scalar::from(m.0[v] as i64))
        }))
    }

    /// Smallest exponent of `x_v` across the terms.
    pub fn valuation_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).min().unwrap_or(0)
    }

    /// Substitutes a polynomial in `M` variables for every variable.
    pub fn substitute<const M: usize>(&self, images: &[Poly<M>; N]) -> Poly<M> {
        let mut powers: Vec<Vec<Poly<M>>> = vec![vec![Poly::one()]; N];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar; N]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                t = &t * &x.pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<'a, const N: usize> Add<&'a Poly<N>> for &'a Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: &'a Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, const N: usize> Sub<&'a Poly<N>> for &'a Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: &'a Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a, const N: usize> Mul<&'a Poly<N>> for &'a Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &'a Poly<N>) -> Poly<N> {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Writes terms in descending order using `names` for the variables, e.g. `4*x*y + 27*z^2`.
pub(crate) fn write_poly<const N: usize>(
    p: &Poly<N>,
    names: &[&str],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.degree() == 0 {
            factors.push(abs.to_string());
        }
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[v].to_string()),
                _ => factors.push(format!("{}^{}", names[v], e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}
