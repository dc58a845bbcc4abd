//! GCD and square-free decomposition of forms in two or three variables by evaluation.
//!
//! A shear `x_j -> x_j + c_j x_0` makes the coefficient of the top power of `x_0` a nonzero
//! constant. After dehomogenizing, the gcd is then monic in `x_0` up to a scalar, so its
//! coefficients can be interpolated in `x_1` from univariate gcds at sample points. Every result is
//! checked by exact division; `None` sends the caller to the recursive algorithm. Over the
//! rationals the same computation runs modulo word-sized primes and the coefficients are recovered
//! by Chinese remaindering and rational reconstruction.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};
use super::scalar::{is_prime, Field, Scalar};

fn shear_candidates(n: usize) -> impl Iterator<Item = Vec<i64>> {
    let range: Vec<i64> = (0..=6).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).collect();
    let tuples: Vec<Vec<i64>> = match n {
        2 => range.iter().map(|&a| vec![0, a]).collect(),
        _ => range
            .iter()
            .flat_map(|&a| range.iter().map(move |&b| vec![0, a, b]))
            .collect(),
    };
    tuples.into_iter()
}

fn find_shear<const N: usize>(forms: &[&Poly<N>]) -> Option<Vec<Scalar>> {
    let field = forms.iter().map(|f| f.field()).max_by_key(|f| f.characteristic())?;
    shear_candidates(N).find_map(|c| {
        let c: Vec<Scalar> = c.into_iter().map(|v| field.from_int(v)).collect();
        let mut point: [Scalar; N] = std::array::from_fn(|i| c[i].clone());
        point[0] = Scalar::one();
        forms
            .iter()
            .all(|f| !f.evaluate(&point).is_zero())
            .then_some(c)
    })
}

fn apply_shear<const N: usize>(f: &Poly<N>, c: &[Scalar], inverse: bool) -> Poly<N> {
    if c.iter().all(Scalar::is_zero) {
        return f.clone();
    }
    let images: [Poly<N>; N] = std::array::from_fn(|j| {
        let v = Poly::var(j);
        if j == 0 || c[j].is_zero() {
            v
        } else {
            let shift = Poly::<N>::var(0).scale(&c[j]);
            if inverse {
                &v - &shift
            } else {
                &v + &shift
            }
        }
    });
    f.substitute(&images)
}

type Dense = Vec<Scalar>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(Scalar::is_zero) {
        a.pop();
    }
    a
}

fn dense_monic(a: Dense) -> Dense {
    let a = trim(a);
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = lc.inv().expect("nonzero");
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

fn dense_rem(mut a: Dense, b: &Dense) -> Dense {
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero");
    while a.len() > db {
        let lead = &a[a.len() - 1] * &inv;
        let shift = a.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            let delta = &lead * c;
            a[shift + i] = &a[shift + i] - &delta;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn dense_gcd(a: Dense, b: Dense) -> Dense {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = dense_rem(a, &b);
        a = b;
        b = dense_monic(r);
    }
    dense_monic(a)
}

/// The polynomial in `x_0` obtained by setting `x_1 = at` (ignored when `at` is `None`).
fn evaluate_to_dense<const N: usize>(f: &Poly<N>, at: Option<&Scalar>) -> Dense {
    let mut out = vec![Scalar::zero(); f.degree_in(0) as usize + 1];
    for (m, c) in f.terms() {
        let e = m.0[0] as usize;
        let v = match at {
            Some(a) if m.0[1] > 0 => c * &a.pow(m.0[1]),
            _ => c.clone(),
        };
        out[e] = &out[e] + &v;
    }
    out
}

/// Newton interpolation; returns coefficients in increasing degree.
fn interpolate(points: &[Scalar], values: &[Scalar]) -> Dense {
    let n = points.len();
    let mut coef = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i] - &points[i - j];
            coef[i] = &num / &den;
        }
    }
    let mut p: Dense = vec![coef[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let mut next = vec![Scalar::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            let delta = c * &points[k];
            next[i] = &next[i] - &delta;
        }
        next[0] = &next[0] + &coef[k];
        p = next;
    }
    trim(p)
}

fn sample_points(field: Field) -> impl Iterator<Item = Scalar> {
    let limit = match field.characteristic() {
        0 => 4096,
        p => (p / 2).min(4096) as i64,
    };
    (0..=limit)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(move |v| field.from_int(v))
}

/// Gcd of dehomogenized polynomials in `x_0, x_1` whose leading coefficients in `x_0` are
/// constants.
fn bivariate_gcd<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    let bound = f.degree_in(1).min(g.degree_in(1)) as usize;
    let field = f.field();
    let mut accepted_below = usize::MAX;
    let mut samples: Vec<(Scalar, Dense)> = Vec::new();
    for a in sample_points(field) {
        let u = dense_gcd(evaluate_to_dense(f, Some(&a)), evaluate_to_dense(g, Some(&a)));
        let e = u.len() - 1;
        if e == 0 {
            return Some(Poly::one());
        }
        if e >= accepted_below {
            continue;
        }
        match samples.first() {
            Some((_, v)) if v.len() - 1 < e => continue,
            Some((_, v)) if v.len() - 1 > e => samples.clear(),
            _ => {}
        }
        samples.push((a, u));
        if samples.len() == bound + 1 {
            let points: Vec<Scalar> = samples.iter().map(|(a, _)| a.clone()).collect();
            let mut h = Poly::zero();
            for i in 0..=e {
                let values: Vec<Scalar> = samples.iter().map(|(_, u)| u[i].clone()).collect();
                for (j, c) in interpolate(&points, &values).into_iter().enumerate() {
                    let mut exps = [0u32; N];
                    exps[0] = i as u32;
                    exps[1] = j as u32;
                    h = &h + &Poly::monomial(c, Monomial(exps));
                }
            }
            if f.exact_div(&h).is_some() && g.exact_div(&h).is_some() {
                return Some(h);
            }
            accepted_below = e;
            samples.clear();
        }
    }
    None
}

/// Gcd of dehomogenized inputs with constant leading coefficients in `x_0`, normalized so that
/// the coefficient of the top power of `x_0` is 1.
fn dehomogenized_gcd<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    if N == 2 {
        let u = dense_gcd(evaluate_to_dense(f, None), evaluate_to_dense(g, None));
        Some(Poly::from_terms(u.into_iter().enumerate().map(|(i, c)| {
            (Monomial(std::array::from_fn(|j| if j == 0 { i as u32 } else { 0 })), c)
        })))
    } else {
        bivariate_gcd(f, g)
    }
}

const MAX_PRIMES: usize = 64;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        (0..(1u64 << 31))
            .rev()
            .filter(|&n| n % 2 == 1 && is_prime(n))
            .take(MAX_PRIMES)
            .collect()
    })
}

/// The image of `f` in `F_p`, or `None` if a denominator or the leading coefficient in `x_0`
/// vanishes there.
fn reduce<const N: usize>(f: &Poly<N>, p: u64) -> Option<Poly<N>> {
    let field = Field::Prime(p);
    let top = f.degree_in(0);
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let r = c.clone().try_into_field(field)?;
        if m.0[0] == top && r.is_zero() {
            return None;
        }
        terms.push((*m, r));
    }
    Some(Poly::from_terms(terms))
}

/// `r / s` with `r = a s mod m` and `|r|, |s|` below `sqrt(m / 2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn residue_value(c: &Scalar) -> u64 {
    match c {
        Scalar::Modular(r) => r.value(),
        Scalar::Rational(_) => unreachable!("residue expected"),
    }
}

/// Gcd over the rationals from its images modulo several primes.
fn modular_gcd<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    let mut modulus = BigInt::one();
    let mut images: BTreeMap<Monomial<N>, BigInt> = BTreeMap::new();
    let mut degree = u32::MAX;
    let mut previous: Option<Poly<N>> = None;
    for &p in primes() {
        let (Some(fp), Some(gp)) = (reduce(f, p), reduce(g, p)) else {
            continue;
        };
        let hp = dehomogenized_gcd(&fp, &gp)?;
        let e = hp.degree_in(0);
        if e == 0 {
            return Some(Poly::one());
        }
        if e > degree {
            continue;
        }
        if e < degree {
            degree = e;
            modulus = BigInt::one();
            images.clear();
            previous = None;
        }
        let pb = BigInt::from(p);
        let inv = modulus.modpow(&(&pb - 2), &pb);
        let keys: Vec<Monomial<N>> = images.keys().copied().chain(hp.terms().map(|(m, _)| *m)).collect();
        for m in keys {
            let old = images.get(&m).cloned().unwrap_or_default();
            let v = BigInt::from(residue_value(&hp.coefficient(&m)));
            let step = ((&v - &old) * &inv).mod_floor(&pb);
            images.insert(m, old + &modulus * step);
        }
        modulus *= &pb;
        let candidate: Option<Vec<(Monomial<N>, Scalar)>> = images
            .iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(m, a)| rational_reconstruction(a, &modulus).map(|r| (*m, Scalar::Rational(r))))
            .collect();
        let Some(candidate) = candidate.map(Poly::from_terms) else {
            continue;
        };
        if previous.as_ref() == Some(&candidate)
            && f.exact_div(&candidate).is_some()
            && g.exact_div(&candidate).is_some()
        {
            return Some(candidate);
        }
        previous = Some(candidate);
    }
    None
}

/// Monic gcd of two forms, or `None` if the fast path does not apply.
pub(crate) fn gcd_forms<const N: usize>(f: &Poly<N>, g: &Poly<N>) -> Option<Poly<N>> {
    if !(2..=3).contains(&N) {
        return None;
    }
    if f.is_zero() {
        return Some(g.monic());
    }
    if g.is_zero() {
        return Some(f.monic());
    }
    if f.is_constant() || g.is_constant() {
        return Some(Poly::one());
    }
    let c = find_shear(&[f, g])?;
    let (fd, _) = apply_shear(f, &c, false).dehomogenize();
    let (gd, _) = apply_shear(g, &c, false).dehomogenize();
    let h = match f.field() {
        Field::Rational => modular_gcd(&fd, &gd)?,
        Field::Prime(_) => dehomogenized_gcd(&fd, &gd)?,
    };
    Some(apply_shear(&h.homogenize(), &c, true).monic())
}

/// Yun's algorithm in `x_0` after a shear, so that contents in `x_0` are constants. The caller
/// guarantees characteristic 0 or larger than the degree.
pub(crate) fn squarefree_forms<const N: usize>(f: &Poly<N>) -> Option<Vec<(Poly<N>, u32)>> {
    if !(2..=3).contains(&N) || f.is_zero() {
        return None;
    }
    if f.is_constant() {
        return Some(Vec::new());
    }
    let c = find_shear(&[f])?;
    let fs = apply_shear(f, &c, false).monic();
    let df = fs.derivative(0);
    let a0 = gcd_forms(&fs, &df)?;
    let mut b = fs.exact_div(&a0)?;
    let mut d = &df.exact_div(&a0)? - &b.derivative(0);
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_forms(&b, &d)?;
        if !a.is_constant() {
            out.push((apply_shear(&a, &c, true).monic(), i));
        }
        b = b.exact_div(&a)?;
        d = &d.exact_div(&a)? - &b.derivative(0);
        i += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly<3> {
        Poly::var(0)
    }
    fn y() -> Poly<3> {
        Poly::var(1)
    }
    fn z() -> Poly<3> {
        Poly::var(2)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let pts: Vec<Scalar> = [0, 1, -1, 2].map(Scalar::from).to_vec();
        let vals: Vec<Scalar> = pts.iter().map(|a| &(&a.pow(3) * &Scalar::from(2)) + &Scalar::from(5)).collect();
        let p = interpolate(&pts, &vals);
        assert_eq!(p, [5, 0, 0, 2].map(Scalar::from).to_vec());
    }

    #[test]
    fn shared_factors() {
        let l1 = &x() - &y();
        let l2 = &(&x() + &y()) - &z();
        let f = &(&l1.pow(3) * &l2) * &z();
        let g = &(&l1.pow(2) * &l2.pow(2)) * &y();
        let expected = (&l1.pow(2) * &l2).monic();
        assert_eq!(gcd_forms(&f, &g).unwrap(), expected);
        assert_eq!(gcd_forms(&x().pow(2), &(&x() * &y())).unwrap(), x());
        assert_eq!(gcd_forms(&x(), &y()).unwrap(), Poly::one());
    }

    #[test]
    fn squarefree_by_shear() {
        let l = &x() + &z();
        let f = &(&l.pow(3) * &y().pow(2)) * &(&x() - &y());
        let parts = squarefree_forms(&f).unwrap();
        assert_eq!(parts, vec![((&x() - &y()).monic(), 1), (y(), 2), (l, 3)]);
    }
}
