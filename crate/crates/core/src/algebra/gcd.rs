//! Multivariate GCD and square-free decomposition.
//!
//! The GCD recurses on variables: the polynomials are viewed as univariate in the last active
//! variable with coefficients in the remaining ones, split into content and primitive part, and the
//! primitive parts are reduced by a primitive pseudo-remainder sequence. Square-free decomposition
//! applies Yun's derivative-GCD algorithm to the primitive part in each variable in turn.
//! Homogeneous inputs go through the evaluation path in `interp` first and are otherwise
//! dehomogenized in the last variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, Poly};
use super::scalar::Scalar;

/// Monic greatest common divisor; `gcd(f, 0) = monic(f)`. Returns `None` when both are zero.
pub fn gcd<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    if f.is_zero() && g.is_zero() {
        return None;
    }
    Some(gcd_rec(f, g, N).monic())
}

/// [`gcd`] for homogeneous inputs, computed on the dehomogenizations.
pub fn gcd_homogeneous<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    if f.is_zero() || g.is_zero() || N < 2 {
        return gcd(f, g);
    }
    if let Some(h) = super::interp::gcd_forms(f, g) {
        return Some(h);
    }
    let (fd, vf) = f.dehomogenize();
    let (gd, vg) = g.dehomogenize();
    let h = gcd_rec(&fd, &gd, N - 1).homogenize();
    let shift = Poly::monomial(Scalar::one(), Monomial::var(N - 1, vf.min(vg)));
    Some((&h * &shift).monic())
}

/// Scales to integer coefficients with trivial content and positive leading coefficient; monic
/// over a prime field.
fn normalize<const N: usize>(p: &Poly<N>) -> Poly<N> {
    let Some(lc) = p.leading_coefficient() else {
        return Poly::zero();
    };
    if lc.as_rational().is_none() {
        return p.monic();
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficients");
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    let mut factor = BigRational::new(den, num);
    if lc.is_negative() {
        factor = -factor;
    }
    p.scale(&Scalar::Rational(factor))
}

fn gcd_rec<const N: usize>(f: &Poly<N>, g: &Poly<N>, active: usize) -> Poly<N> {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() || active == 0 {
        return Poly::one();
    }
    let v = active - 1;
    let (df, dg) = (f.degree_in(v), g.degree_in(v));
    if df == 0 && dg == 0 {
        return gcd_rec(f, g, v);
    }
    let (cf, pf) = content_and_primitive(f, v);
    let (cg, pg) = content_and_primitive(g, v);
    let content = gcd_rec(&cf, &cg, v);
    if pf.degree_in(v) == 0 || pg.degree_in(v) == 0 {
        return content;
    }
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) {
        (pf, pg)
    } else {
        (pg, pf)
    };
    let primitive = loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(v) == 0 {
            break Poly::one();
        }
        a = b;
        b = content_and_primitive(&r, v).1;
    };
    &content * &primitive
}

/// Splits `f` into its content with respect to `x_v` (a polynomial in the variables below `v`) and
/// the normalized primitive part.
fn content_and_primitive<const N: usize>(f: &Poly<N>, v: usize) -> (Poly<N>, Poly<N>) {
    if f.degree_in(v) == 0 {
        return (f.clone(), Poly::one());
    }
    let mut content = Poly::zero();
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        content = gcd_rec(&content, &c, v).monic();
        if content.is_constant() {
            break;
        }
    }
    let primitive = f
        .exact_div(&content)
        .expect("content divides every coefficient");
    (content, normalize(&primitive))
}

/// `lc(b)^k * a mod b` in `x_v`, without tracking the power `k`.
fn pseudo_remainder<const N: usize>(a: &Poly<N>, b: &Poly<N>, v: usize) -> Poly<N> {
    let db = b.degree_in(v);
    let lcb = b.coefficient_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coefficient_in(v, dr);
        let shift = Poly::monomial(super::Scalar::one(), Monomial::var(v, dr - db));
        r = &(&r * &lcb) - &(&(&lcr * &shift) * b);
    }
    r
}

/// Square-free factors `(g_i, i)` with `f = lc(f) * prod g_i^i`, each `g_i` monic, square-free and
/// pairwise coprime, sorted by multiplicity. The caller checks the characteristic.
pub fn squarefree_factors<const N: usize>(f: &Poly<N>) -> Vec<(Poly<N>, u32)> {
    let mut out = Vec::new();
    squarefree_rec(&f.monic(), N, &mut out);
    merge_by_multiplicity(out)
}

/// [`squarefree_factors`] for a homogeneous input, computed on the dehomogenization.
pub fn squarefree_factors_homogeneous<const N: usize>(f: &Poly<N>) -> Vec<(Poly<N>, u32)> {
    if N < 2 || f.is_zero() {
        return squarefree_factors(f);
    }
    if let Some(parts) = super::interp::squarefree_forms(f) {
        return parts;
    }
    let (fd, v) = f.dehomogenize();
    let mut out = Vec::new();
    squarefree_rec(&fd.monic(), N - 1, &mut out);
    let mut out: Vec<(Poly<N>, u32)> = out
        .into_iter()
        .map(|(p, i)| (p.homogenize().monic(), i))
        .collect();
    if v > 0 {
        out.push((Poly::var(N - 1), v));
    }
    merge_by_multiplicity(out)
}

fn squarefree_rec<const N: usize>(f: &Poly<N>, active: usize, out: &mut Vec<(Poly<N>, u32)>) {
    if f.is_constant() || active == 0 {
        return;
    }
    let v = active - 1;
    if f.degree_in(v) == 0 {
        return squarefree_rec(f, v, out);
    }
    let (content, primitive) = content_and_primitive(f, v);
    yun(&primitive, v, active, out);
    squarefree_rec(&content, v, out);
}

fn yun<const N: usize>(f: &Poly<N>, v: usize, active: usize, out: &mut Vec<(Poly<N>, u32)>) {
    let df = f.derivative(v);
    let a0 = gcd_rec(f, &df, active).monic();
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_rec(&b, &d, active).monic();
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        let c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative(v);
        i += 1;
    }
}

fn merge_by_multiplicity<const N: usize>(parts: Vec<(Poly<N>, u32)>) -> Vec<(Poly<N>, u32)> {
    let mut merged: Vec<(Poly<N>, u32)> = Vec::new();
    for (p, i) in parts {
        match merged.iter_mut().find(|(_, j)| *j == i) {
            Some((q, _)) => *q = &*q * &p,
            None => merged.push((p, i)),
        }
    }
    merged.sort_by_key(|(_, i)| *i);
    merged
}
