//! Miranda data expressed through the Tan factors on the charts `U1 = P2 \ C0` and
//! `U2 = P2 \ (A0 + A2)`, together with exact discriminant checks.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Form, Scalar};
use crate::error::{Error, Result};
use crate::tan::{abc_data, ramification_report, AbcData, TanData};

/// A quotient of forms, kept unreduced until [`RationalSection::reduced`] is called.
#[derive(Clone, Debug)]
pub struct RationalSection {
    num: Form,
    den: Form,
}

impl RationalSection {
    pub fn new(num: Form, den: Form) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroForm("denominator"));
        }
        Ok(RationalSection { num, den })
    }

    pub fn from_form(f: Form) -> Self {
        RationalSection {
            num: f,
            den: Form::one(),
        }
    }

    pub fn num(&self) -> &Form {
        &self.num
    }

    pub fn den(&self) -> &Form {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num - deg den`.
    pub fn weight(&self) -> i64 {
        self.num.degree() as i64 - self.den.degree() as i64
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalSection {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RationalSection {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(&Scalar::from(-1)));
        }
        if self.den == other.den {
            return Ok(RationalSection {
                num: self.num.checked_sub(&other.num)?,
                den: self.den.clone(),
            });
        }
        Ok(RationalSection {
            num: (&self.num * &other.den).checked_sub(&(&other.num * &self.den))?,
            den: &self.den * &other.den,
        })
    }

    /// Cancels the gcd and makes the denominator monic.
    pub fn reduced(&self) -> Self {
        if self.is_zero() {
            return RationalSection {
                num: Form::zero(self.num.degree().saturating_sub(self.den.degree())),
                den: Form::one(),
            };
        }
        let g = self.num.gcd(&self.den).expect("nonzero denominator");
        let num = self.num.exact_div(&g).expect("gcd divides");
        let den = self.den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_coefficient().cloned().unwrap();
        let inv = lc.inv().expect("nonzero");
        RationalSection {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Cross-multiplied equality.
    pub fn same_as(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coefficient([0, 0, 0]).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Chart {
    U1,
    U2,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::U1 => write!(f, "U1"),
            Chart::U2 => write!(f, "U2"),
        }
    }
}

/// The quadruple `(a~, b~, c~, d~)` on one chart.
#[derive(Clone, Debug)]
pub struct ChartMirandaData {
    pub chart: Chart,
    pub a: RationalSection,
    pub b: RationalSection,
    pub c: RationalSection,
    pub d: RationalSection,
}

impl ChartMirandaData {
    /// `e = a^2 - bd, f = ad - bc, g = d^2 - ac`.
    pub fn derived_efg(&self) -> Result<[RationalSection; 3]> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Ok([
            a.mul(a).sub(&b.mul(d))?,
            a.mul(d).sub(&b.mul(c))?,
            d.mul(d).sub(&a.mul(c))?,
        ])
    }

    /// `f^2 - 4eg`.
    pub fn discriminant(&self) -> Result<RationalSection> {
        let [e, f, g] = self.derived_efg()?;
        f.mul(&f).sub(&e.mul(&g).scale(&Scalar::from(4)))
    }

    pub fn sections(&self) -> [(&'static str, &RationalSection); 4] {
        [("a", &self.a), ("b", &self.b), ("c", &self.c), ("d", &self.d)]
    }
}

fn characteristic(td: &TanData) -> u64 {
    td.all()
        .iter()
        .map(|(_, f)| f.expand().characteristic())
        .max()
        .unwrap_or(0)
}

fn require_characteristic(td: &TanData, forbidden: &[u64]) -> Result<()> {
    let p = characteristic(td);
    if forbidden.contains(&p) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: p,
            bound: *forbidden.iter().max().unwrap(),
        });
    }
    Ok(())
}

/// `a~ = 0, b~ = a2 b1, c~ = -a1 b0, d~ = a0 a1 a2 / 3`.
pub fn to_miranda_u1(td: &TanData) -> Result<ChartMirandaData> {
    require_characteristic(td, &[3])?;
    let (a0, a1, a2, b0, b1) = expanded(td);
    Ok(ChartMirandaData {
        chart: Chart::U1,
        a: RationalSection::from_form(Form::zero(0)),
        b: RationalSection::from_form(&a2 * &b1),
        c: RationalSection::from_form((&a1 * &b0).scale(&Scalar::from(-1))),
        d: RationalSection::from_form((&(&a0 * &a1) * &a2).scale(&Scalar::ratio(1, 3))),
    })
}

/// `a~ = 3 b0 b1 / a0, b~ = 3 b1 c0 / (2 a0), c~ = b0 c1 / (18 a0), d~ = c0 c1 / (18 a0)`.
pub fn to_miranda_u2(td: &TanData) -> Result<ChartMirandaData> {
    require_characteristic(td, &[2, 3])?;
    let abc = abc_data(td)?;
    Ok(u2_from(td, &abc))
}

fn u2_from(td: &TanData, abc: &AbcData) -> ChartMirandaData {
    let (a0, _, _, b0, b1) = expanded(td);
    let over = |num: Form, k: i64| RationalSection {
        num,
        den: a0.scale(&Scalar::from(k)),
    };
    ChartMirandaData {
        chart: Chart::U2,
        a: over((&b0 * &b1).scale(&Scalar::from(3)), 1),
        b: over((&b1 * &abc.c0).scale(&Scalar::from(3)), 2),
        c: over(&b0 * &abc.c1, 18),
        d: over(&abc.c0 * &abc.c1, 18),
    }
}

fn expanded(td: &TanData) -> (Form, Form, Form, Form, Form) {
    (
        td.a0.expand(),
        td.a1.expand(),
        td.a2.expand(),
        td.b0.expand(),
        td.b1.expand(),
    )
}

/// Result of comparing `4s^3 + 27t^2` with `27 D W^2`.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `4s^3 + 27t^2`.
    pub lhs: Form,
    /// `27 D W^2`.
    pub rhs: RationalSection,
    /// The square factor `W`, when one was found.
    pub w: Option<Form>,
    /// `lhs - rhs` after clearing denominators when an explicit `W` is tested; otherwise the
    /// reduced quotient `lhs / (27 D)`, which failed to be a square.
    pub witness: RationalSection,
}

fn disc_lhs(td: &TanData) -> Result<Form> {
    let s = td.s();
    let t = td.t();
    s.pow(3)
        .scale(&Scalar::from(4))
        .checked_add(&t.pow(2).scale(&Scalar::from(27)))
}

/// Tests `4s^3 + 27t^2 = 27 D W^2` for a given `W`.
pub fn check_with_square(
    data: &ChartMirandaData,
    td: &TanData,
    w: &Form,
) -> Result<IdentityCheck> {
    let lhs = disc_lhs(td)?;
    let d = data.discriminant()?;
    let rhs = RationalSection {
        num: (&d.num * &w.pow(2)).scale(&Scalar::from(27)),
        den: d.den.clone(),
    };
    let diff = (&lhs * &rhs.den).checked_sub(&rhs.num)?;
    Ok(IdentityCheck {
        holds: diff.is_zero(),
        lhs,
        rhs,
        w: Some(w.clone()),
        witness: RationalSection {
            num: diff,
            den: d.den,
        },
    })
}

/// Searches for `W` with `4s^3 + 27t^2 = 27 D W^2`: the quotient must be a polynomial that is a
/// perfect square.
pub fn find_square_factor(data: &ChartMirandaData, td: &TanData) -> Result<IdentityCheck> {
    let lhs = disc_lhs(td)?;
    let d = data.discriminant()?;
    let q = RationalSection {
        num: &lhs * &d.den,
        den: d.num.scale(&Scalar::from(27)),
    };
    let fail = |q: RationalSection, d: RationalSection, lhs: Form| IdentityCheck {
        holds: false,
        lhs,
        rhs: d.scale(&Scalar::from(27)),
        w: None,
        witness: q,
    };
    if d.is_zero() {
        return Ok(fail(q, d, lhs));
    }
    let q = q.reduced();
    if !q.den.is_constant() {
        return Ok(fail(q, d, lhs));
    }
    match square_root(&q.num)? {
        Some(w) => check_with_square(data, td, &w),
        None => Ok(fail(q, d, lhs)),
    }
}

/// An exact square root of a form, if it is a square.
pub fn square_root(f: &Form) -> Result<Option<Form>> {
    if f.is_zero() {
        return Ok(Some(f.clone()));
    }
    let dec = f.squarefree_decomposition()?;
    if dec.parts.iter().any(|(_, m)| m % 2 == 1) {
        return Ok(None);
    }
    let Some(unit) = dec.unit.sqrt() else {
        return Ok(None);
    };
    Ok(Some(
        dec.parts
            .iter()
            .fold(Form::constant(unit), |acc, (g, m)| &acc * &g.pow(m / 2)),
    ))
}

/// `4s^3 + 27t^2 = 27 (f^2 - 4eg) (a2 b1)^2` for the `U1` quadruple.
pub fn verify_u1_discriminant_identity(td: &TanData) -> Result<IdentityCheck> {
    let data = to_miranda_u1(td)?;
    let w = &td.a2.expand() * &td.b1.expand();
    check_with_square(&data, td, &w)
}

/// The `U2` analog: searches for a square factor `W` after clearing the powers of `a0`.
pub fn verify_u2_discriminant_identity(td: &TanData) -> Result<IdentityCheck> {
    let data = to_miranda_u2(td)?;
    find_square_factor(&data, td)
}

/// Reduced loci on one chart, with the excluded divisor removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartLocus {
    pub chart: Chart,
    /// Reduced equation of the excluded divisor.
    pub excluded: Form,
    /// Reduced zero locus of the chart discriminant away from `excluded`.
    pub discriminant_locus: Form,
    /// Reduced branch locus away from `excluded`.
    pub branch_locus: Form,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCompatibility {
    pub u1: ChartLocus,
    pub u2: ChartLocus,
}

fn radical(f: &Form) -> Result<Form> {
    if f.is_constant() {
        return Ok(Form::one());
    }
    Ok(f.squarefree_decomposition()?
        .parts
        .iter()
        .fold(Form::one(), |acc, (g, _)| &acc * g))
}

fn strip(f: &Form, excluded: &Form) -> Result<Form> {
    let mut r = f.clone();
    loop {
        let g = r.gcd(excluded)?;
        if g.is_constant() {
            return Ok(r.monic());
        }
        r = r.exact_div(&g)?;
    }
}

fn locus(chart: Chart, disc: &RationalSection, branch: &Form, excluded: Form) -> Result<ChartLocus> {
    let excluded = radical(&excluded)?;
    let discriminant_locus = if disc.is_zero() {
        Form::zero(0)
    } else {
        strip(&radical(&disc.num)?, &excluded)?
    };
    let branch_locus = strip(branch, &excluded)?;
    Ok(ChartLocus {
        chart,
        compatible: discriminant_locus == branch_locus,
        excluded,
        discriminant_locus,
        branch_locus,
    })
}

/// Compares the reduced discriminant locus of each chart with the reduced branch locus
/// `2A1 + 2A2 + B1 + C1`, away from the excluded divisor of that chart.
pub fn chart_compatibility(td: &TanData) -> Result<ChartCompatibility> {
    let abc = abc_data(td)?;
    let report = ramification_report(td, &abc)?;
    let branch = report.branch_locus.reduced_equation();
    let u1 = to_miranda_u1(td)?;
    let u2 = u2_from(td, &abc);
    Ok(ChartCompatibility {
        u1: locus(Chart::U1, &u1.discriminant()?, &branch, abc.c0.clone())?,
        u2: locus(
            Chart::U2,
            &u2.discriminant()?,
            &branch,
            &td.a0.expand() * &td.a2.expand(),
        )?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FactoredForm;
    use crate::tan::{tan_decomposition, MinimalCubic};

    fn x() -> Form {
        Form::x()
    }
    fn y() -> Form {
        Form::y()
    }
    fn z() -> Form {
        Form::z()
    }

    fn factored(unit: i64, f: Vec<(Form, u32)>) -> FactoredForm {
        FactoredForm::new(Scalar::from(unit), f, true).unwrap()
    }

    fn worked() -> TanData {
        let s = factored(1, vec![(x(), 1), (y(), 1)]);
        let t = factored(1, vec![(x(), 1), (y(), 1), (z(), 1)]);
        tan_decomposition(&MinimalCubic::new(s, t, 1).unwrap()).unwrap()
    }

    fn c1() -> Form {
        (&x() * &y())
            .scale(&Scalar::from(4))
            .checked_add(&z().pow(2).scale(&Scalar::from(27)))
            .unwrap()
    }

    #[test]
    fn u1_worked_values() {
        let data = to_miranda_u1(&worked()).unwrap();
        assert!(data.a.is_zero());
        assert_eq!(*data.b.num(), Form::one());
        assert_eq!(*data.c.num(), (&(&x() * &y()) * &z()).scale(&Scalar::from(-1)));
        assert_eq!(*data.d.num(), (&x() * &y()).scale(&Scalar::ratio(1, 3)));
        for (_, s) in data.sections() {
            assert!(s.den().is_constant());
        }
    }

    #[test]
    fn u1_identity_worked() {
        let check = verify_u1_discriminant_identity(&worked()).unwrap();
        assert!(check.holds);
        let expected = &(&x().pow(2) * &y().pow(2)) * &c1();
        assert_eq!(check.lhs, expected);
        assert!(check.witness.is_zero());
    }

    #[test]
    fn u1_constant_data() {
        let s = factored(-3, vec![]);
        let t = factored(5, vec![]);
        let td = tan_decomposition(&MinimalCubic::new(s, t, 0).unwrap()).unwrap();
        let data = to_miranda_u1(&td).unwrap();
        for (_, s) in data.sections() {
            assert!(s.num().is_constant());
        }
        assert!(verify_u1_discriminant_identity(&td).unwrap().holds);
        let report = chart_compatibility(&td).unwrap();
        assert!(report.u1.compatible && report.u2.compatible);
        assert_eq!(report.u1.branch_locus, Form::one());
    }

    #[test]
    fn u1_degrees() {
        let td = worked();
        let data = to_miranda_u1(&td).unwrap();
        let [_, f, _] = data.derived_efg().unwrap();
        let d = data.discriminant().unwrap();
        let lhs = disc_lhs(&td).unwrap();
        let w = &td.a2.expand() * &td.b1.expand();
        let f_deg = [&td.a1, &td.a2, &td.b0, &td.b1].iter().map(|g| g.degree()).sum::<u32>();
        assert_eq!(f.num().degree(), f_deg);
        assert_eq!(f_deg, 3);
        assert_eq!(d.num().degree(), lhs.degree() - 2 * w.degree());
    }

    #[test]
    fn u2_worked_values() {
        let data = to_miranda_u2(&worked()).unwrap();
        assert!(data.a.same_as(&RationalSection::from_form(z().scale(&Scalar::from(3)))));
        assert!(data.b.same_as(&RationalSection::from_form(Form::constant(Scalar::ratio(3, 2)))));
        let c = RationalSection::new(&z() * &c1(), Form::int(18)).unwrap();
        let d = RationalSection::new(c1(), Form::int(18)).unwrap();
        assert!(data.c.same_as(&c));
        assert!(data.d.same_as(&d));
        let weights: Vec<i64> = data.sections().iter().map(|(_, s)| s.weight()).collect();
        assert_eq!(weights, vec![1, 0, 3, 2]);
    }

    // The printed U2 quadruple has a discriminant with an extra quartic factor, so no square W
    // exists; the checker reports the quotient as its witness.
    #[test]
    fn u2_identity_reports_mismatch() {
        let check = verify_u2_discriminant_identity(&worked()).unwrap();
        assert!(!check.holds);
        assert!(check.w.is_none());
        let quartic = [([2, 2, 0], 64), ([1, 1, 2], -1620), ([0, 0, 4], 9477)]
            .into_iter()
            .fold(Form::zero(4), |acc, (e, c)| {
                acc.checked_add(&Form::monomial(Scalar::from(c), e)).unwrap()
            });
        let expected = RationalSection::new(
            (&x().pow(2) * &y().pow(2)).scale(&Scalar::from(144)),
            quartic,
        )
        .unwrap();
        assert!(check.witness.same_as(&expected));
    }

    #[test]
    fn square_factor_search_recovers_u1_w() {
        let td = worked();
        let data = to_miranda_u1(&td).unwrap();
        let check = find_square_factor(&data, &td).unwrap();
        assert!(check.holds);
        assert!(check.w.unwrap().is_associate(&Form::one()));
    }

    #[test]
    fn perturbed_quadruple_is_rejected() {
        let td = worked();
        let mut data = to_miranda_u1(&td).unwrap();
        data.b = RationalSection::from_form(Form::int(2));
        let w = &td.a2.expand() * &td.b1.expand();
        let check = check_with_square(&data, &td, &w).unwrap();
        assert!(!check.holds);
        assert!(!check.witness.is_zero());
        assert!(!find_square_factor(&data, &td).unwrap().holds);
    }

    #[test]
    fn compatibility_worked() {
        let report = chart_compatibility(&worked()).unwrap();
        let expected = (&(&x() * &y()) * &c1()).monic();
        assert!(report.u1.compatible);
        assert_eq!(report.u1.discriminant_locus, expected);
        assert_eq!(report.u2.branch_locus, expected);
        assert!(!report.u2.compatible);
    }

    #[test]
    fn compatibility_excludes_c0() {
        // s = -3u^2 and t = 2u^3 + (xyz)^2 give 4s^3 + 27t^2 = 27 (xyz)^2 (4u^3 + (xyz)^2).
        let u = x().pow(2).checked_add(&(&y() * &z())).unwrap();
        let w = (&(&x() * &y()) * &z()).pow(2);
        let t_form = u.pow(3).scale(&Scalar::from(2)).checked_add(&w).unwrap();
        let s = factored(-3, vec![(u, 2)]);
        let t = FactoredForm::new(Scalar::one(), vec![(t_form, 1)], true).unwrap();
        let td = tan_decomposition(&MinimalCubic::new(s, t, 2).unwrap()).unwrap();
        let abc = abc_data(&td).unwrap();
        assert_eq!(abc.c0, (&(&x() * &y()) * &z()));
        let report = chart_compatibility(&td).unwrap();
        assert_eq!(report.u1.excluded, abc.c0);
        assert!(report.u1.compatible);
        assert!(!report.u1.excluded.divides(&report.u1.branch_locus));
        assert!(verify_u1_discriminant_identity(&td).unwrap().holds);
    }

    #[test]
    fn prime_field_u1() {
        let f = crate::Field::Prime(101);
        let s = FactoredForm::new(Scalar::one().into_field(f), vec![(x(), 1), (y(), 1)], true).unwrap();
        let t = FactoredForm::new(
            Scalar::one().into_field(f),
            vec![(x(), 1), (y(), 1), (z(), 1)],
            true,
        )
        .unwrap();
        let td = tan_decomposition(&MinimalCubic::new(s, t, 1).unwrap()).unwrap();
        assert!(verify_u1_discriminant_identity(&td).unwrap().holds);
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let r = RationalSection::new(&x() * &y(), x().scale(&Scalar::from(2))).unwrap();
        let red = r.reduced();
        assert_eq!(*red.den(), Form::one());
        assert_eq!(*red.num(), y().scale(&Scalar::ratio(1, 2)));
        assert!(RationalSection::new(x(), Form::zero(1)).is_err());
    }
}
