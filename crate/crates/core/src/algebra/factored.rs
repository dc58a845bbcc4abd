use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::form::{BinaryForm, Form};
use super::random::random_line;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A product `unit * prod base_i^{m_i}` over pairwise non-associate, nonconstant bases.
///
/// Bases are stored monic; their leading coefficients are folded into the unit. Irreducibility of
/// the bases is asserted by the caller and never verified beyond [`FactoredForm::sanity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    unit: Scalar,
    factors: Vec<(Form, u32)>,
    irreducible: bool,
}

impl FactoredForm {
    pub fn new(unit: Scalar, factors: Vec<(Form, u32)>, irreducible: bool) -> Result<Self> {
        let mut unit = unit;
        let mut bases: Vec<(Form, u32)> = Vec::with_capacity(factors.len());
        for (i, (base, mult)) in factors.into_iter().enumerate() {
            if base.is_constant() {
                return Err(Error::ConstantBase(i));
            }
            if mult == 0 {
                continue;
            }
            if let Some(j) = bases.iter().position(|(b, _)| b.is_associate(&base)) {
                return Err(Error::AssociateBases(j, i));
            }
            let lc = base.leading_coefficient().unwrap().clone();
            unit = &unit * &lc.pow(mult);
            bases.push((base.monic(), mult));
        }
        if unit.is_zero() {
            bases.clear();
        }
        Ok(FactoredForm {
            unit,
            factors: bases,
            irreducible,
        })
    }

    /// The product of the given bases, taken as irreducible.
    pub fn from_factors(factors: Vec<(Form, u32)>) -> Result<Self> {
        Self::new(Scalar::one(), factors, true)
    }

    pub fn one() -> Self {
        FactoredForm {
            unit: Scalar::one(),
            factors: Vec::new(),
            irreducible: true,
        }
    }

    pub fn zero() -> Self {
        FactoredForm {
            unit: Scalar::zero(),
            factors: Vec::new(),
            irreducible: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn unit(&self) -> &Scalar {
        &self.unit
    }

    pub fn factors(&self) -> &[(Form, u32)] {
        &self.factors
    }

    pub fn irreducible_asserted(&self) -> bool {
        self.irreducible
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(b, m)| b.degree() * m).sum()
    }

    /// Multiplicity of `base` (matched up to scalars); 0 if absent.
    pub fn multiplicity_of(&self, base: &Form) -> u32 {
        self.factors
            .iter()
            .find(|(b, _)| b.is_associate(base))
            .map_or(0, |(_, m)| *m)
    }

    pub fn with_unit(mut self, unit: Scalar) -> Self {
        self.unit = unit;
        self
    }

    pub fn expand(&self) -> Form {
        if self.is_zero() {
            return Form::zero(self.degree());
        }
        self.factors
            .iter()
            .fold(Form::constant(self.unit.clone()), |acc, (b, m)| &acc * &b.pow(*m))
    }

    /// Product of the distinct bases (the reduced divisor), monic.
    pub fn radical(&self) -> Form {
        self.factors.iter().fold(Form::one(), |acc, (b, _)| &acc * b)
    }

    /// Probabilistic check that the bases behave like distinct irreducibles: on a random line the
    /// product of the restricted bases must have no repeated root.
    pub fn sanity_check(&self, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let line = random_line(&mut rng, 50);
        let product = self
            .factors
            .iter()
            .fold(BinaryForm::one(), |acc, (b, _)| &acc * &line.restrict(b));
        if product.is_zero() {
            return false;
        }
        product.is_squarefree().unwrap_or(false)
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (b, m) in &self.factors {
            parts.push(format!("({b})^{m}"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_fold_and_bases_become_monic() {
        let f = FactoredForm::from_factors(vec![(Form::x().scale(&2.into()), 2), (Form::y(), 1)])
            .unwrap();
        assert_eq!(f.unit(), &Scalar::from(4));
        assert_eq!(f.factors()[0].0, Form::x());
        assert_eq!(f.degree(), 3);
        assert_eq!(f.expand(), (&Form::x().pow(2) * &Form::y()).scale(&4.into()));
    }

    #[test]
    fn associate_and_constant_bases_are_rejected() {
        let err = FactoredForm::from_factors(vec![(Form::x(), 1), (Form::x().scale(&3.into()), 1)]);
        assert_eq!(err.unwrap_err(), Error::AssociateBases(0, 1));
        let err = FactoredForm::from_factors(vec![(Form::int(2), 1)]);
        assert_eq!(err.unwrap_err(), Error::ConstantBase(0));
    }

    #[test]
    fn sanity_check_flags_squares() {
        let good = FactoredForm::from_factors(vec![(Form::x(), 2), (Form::y(), 1)]).unwrap();
        assert!(good.sanity_check(1));
        let bad = FactoredForm::from_factors(vec![(Form::x().pow(2), 1)]).unwrap();
        assert!(!bad.sanity_check(1));
    }
}
