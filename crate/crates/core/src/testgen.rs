//! Seeded generators of valid covers, shared by tests, benches and the CLI `verify` command.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{random_form_with, FactoredForm, Field, Form, Scalar};
use crate::miranda::{section_degrees, MirandaData};
use crate::tan::MinimalCubic;

/// Order patterns `(sigma, tau)` of a single base in a minimal equation.
const PATTERNS: [(u32, u32); 12] = [
    (1, 0),
    (2, 0),
    (3, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (2, 1),
    (3, 1),
    (1, 2),
    (2, 2),
    (1, 3),
];

/// Inputs for a random minimal cubic `z^3 + s z + t`.
#[derive(Clone, Debug)]
pub struct RandomCubic {
    pub s: FactoredForm,
    pub t: FactoredForm,
    pub m: u32,
}

impl RandomCubic {
    pub fn minimal(&self) -> MinimalCubic {
        MinimalCubic::new(self.s.clone(), self.t.clone(), self.m).expect("generated cubic is minimal")
    }
}

fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

fn fresh_base<R: Rng>(rng: &mut R, taken: &[Form], field: Field) -> Form {
    loop {
        let degree = if rng.gen_bool(0.2) { 2 } else { 1 };
        let f = random_form_with(rng, degree, 3).into_field(field).monic();
        if f.is_constant() || f.degree() != degree {
            continue;
        }
        let coprime = taken
            .iter()
            .all(|g| g.gcd(&f).map(|h| h.is_constant()).unwrap_or(false));
        if coprime {
            return f;
        }
    }
}

/// A random factored pair `(s, t)` with `3 deg s = 2 deg t` and every base of a minimal order
/// pattern. Bases are pairwise coprime linear or quadratic forms.
pub fn random_minimal_cubic(seed: u64, field: Field) -> RandomCubic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases: Vec<Form> = Vec::new();
    let mut orders: Vec<(u32, u32)> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        bases.push(fresh_base(&mut rng, &bases, field));
        orders.push(*PATTERNS.choose(&mut rng).unwrap());
    }
    let imbalance = |bases: &[Form], orders: &[(u32, u32)]| -> i64 {
        bases
            .iter()
            .zip(orders)
            .map(|(b, (s, t))| b.degree() as i64 * (3 * *s as i64 - 2 * *t as i64))
            .sum()
    };
    loop {
        let delta = imbalance(&bases, &orders);
        let pad = match delta {
            0 => break,
            d if d >= 6 => (0, 3),
            d if d >= 4 => (0, 2),
            d if d >= 2 => (0, 1),
            1 => (1, 2),
            d if d <= -9 => (3, 0),
            d if d <= -6 => (2, 0),
            d if d <= -4 => (2, 1),
            d if d <= -3 => (1, 0),
            _ => (1, 1),
        };
        let mut taken = bases.clone();
        loop {
            let b = fresh_base(&mut rng, &taken, field);
            if b.degree() == 1 {
                bases.push(b);
                break;
            }
            taken.push(b);
        }
        orders.push(pad);
    }
    let collect = |pick: fn(&(u32, u32)) -> u32| -> Vec<(Form, u32)> {
        bases
            .iter()
            .zip(&orders)
            .filter(|(_, o)| pick(o) > 0)
            .map(|(b, o)| (b.clone(), pick(o)))
            .collect()
    };
    let unit = |rng: &mut ChaCha8Rng| Scalar::from(nonzero_int(rng, 5)).into_field(field);
    let s = FactoredForm::new(unit(&mut rng), collect(|o| o.0), true).unwrap();
    let t = FactoredForm::new(unit(&mut rng), collect(|o| o.1), true).unwrap();
    let m = s.degree() / 2;
    RandomCubic { s, t, m }
}

/// Random Miranda data with twists `t2 <= t1 <= 0` and `t2 >= 2 t1`, so every section has
/// nonnegative degree.
pub fn random_miranda(seed: u64, field: Field) -> MirandaData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t1 = rng.gen_range(-2..=0);
    let t2 = rng.gen_range(2 * t1..=t1);
    let [da, db, dc, dd] = section_degrees(t1, t2).map(|d| d as u32);
    let mut form = |d| random_form_with(&mut rng, d, 4).into_field(field);
    let (a, b, c, d) = (form(da), form(db), form(dc), form(dd));
    MirandaData::new(t1, t2, a, b, c, d).expect("generated data is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tan::tan_decomposition;

    #[test]
    fn balanced_and_minimal() {
        for seed in 0..40 {
            let rc = random_minimal_cubic(seed, Field::Rational);
            assert_eq!(3 * rc.s.degree(), 2 * rc.t.degree());
            assert_eq!(rc.s.degree(), 2 * rc.m);
            let td = tan_decomposition(&rc.minimal()).unwrap();
            td.validate().unwrap();
        }
    }

    #[test]
    fn prime_field_generation() {
        let f = Field::Prime(10007);
        for seed in 0..10 {
            let rc = random_minimal_cubic(seed, f);
            assert_eq!(rc.s.expand().characteristic(), 10007);
            rc.minimal();
        }
    }

    #[test]
    fn deterministic() {
        let a = random_minimal_cubic(5, Field::Rational);
        let b = random_minimal_cubic(5, Field::Rational);
        assert_eq!(a.s, b.s);
        assert_eq!(a.t, b.t);
    }

    #[test]
    fn miranda_generator() {
        for seed in 0..20 {
            let md = random_miranda(seed, Field::Rational);
            let (t1, t2) = md.twists();
            assert!(t2 <= t1 && t1 <= 0);
        }
    }
}
