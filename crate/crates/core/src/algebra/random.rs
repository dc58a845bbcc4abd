//! Seeded generators for test data and line sampling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::form::Form;
use super::line::LineP2;
use super::scalar::Scalar;

/// All exponent triples of total degree `degree`, in descending graded-lex order.
pub fn monomials_of_degree(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

/// A random form with integer coefficients in `[-bound, bound]`, never zero.
pub fn random_form_with<R: Rng>(rng: &mut R, degree: u32, bound: i64) -> Form {
    let bound = bound.max(1);
    loop {
        let mut f = Form::zero(degree);
        for m in monomials_of_degree(degree) {
            let c: i64 = rng.gen_range(-bound..=bound);
            f = f.checked_add(&Form::monomial(c.into(), m)).unwrap();
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Deterministic random form for a given seed.
pub fn random_form(degree: u32, seed: u64, coefficient_bound: i64) -> Form {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form_with(&mut rng, degree, coefficient_bound)
}

/// A line whose coefficients are drawn from `[-bound, bound]^3 \ {0}`.
pub fn random_line<R: Rng>(rng: &mut R, bound: i64) -> LineP2 {
    loop {
        let u: [i64; 3] = [
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        ];
        if let Ok(l) = LineP2::from_ints(u[0], u[1], u[2]) {
            return l;
        }
    }
}

/// A random point with small integer coordinates, not all zero.
pub fn random_point<R: Rng>(rng: &mut R, bound: i64) -> [Scalar; 3] {
    loop {
        let p: [i64; 3] = [
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        ];
        if p != [0, 0, 0] {
            return p.map(Scalar::from);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_a_nonzero_constant() {
        let f = random_form(0, 3, 5);
        assert!(f.is_constant() && !f.is_zero());
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_form(3, 11, 9), random_form(3, 11, 9));
        assert_eq!(random_form(4, 11, 9).degree(), 4);
    }

    #[test]
    fn golden_quadratic() {
        assert_eq!(random_form(2, 7, 5).to_string(), GOLDEN_SEED7);
    }

    const GOLDEN_SEED7: &str = "x^2 + 4*x*y - x*z - 3*y^2 - y*z - 2*z^2";

    #[test]
    fn monomial_count() {
        assert_eq!(monomials_of_degree(3).len(), 10);
    }
}
