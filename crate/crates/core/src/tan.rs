//! Triple covers given by a minimal cubic `z^3 + s z + t = 0`.
//!
//! Minimality means no prime divides `s` to order at least 2 and `t` to order at least 3. Each
//! prime then falls into exactly one exponent pattern, which yields the decomposition
//!
//! ```text
//! s = a1 a2^2 b1 a0,    t = a1 a2^2 b1^2 b0
//! ```
//!
//! with `a1, a2, b1` square-free, and the abc data `a = 4 a1 a2^2 a0^3`, `b = 27 b1 b0^2`,
//! `c = a + b = c1 c0^2`.

use serde::Serialize;

use crate::algebra::{FactoredForm, Form, Scalar};
use crate::error::{Error, Result};

/// A validated minimal cubic over a shared list of (asserted irreducible) bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCubic {
    m: u32,
    s: FactoredForm,
    t: FactoredForm,
    /// Distinct monic bases of `s t`, sorted canonically, with their orders in `s` and `t`.
    orders: Vec<(Form, u32, u32)>,
}

fn canonical_key(f: &Form) -> (u32, String) {
    (f.degree(), f.to_string())
}

impl MinimalCubic {
    /// `s` of degree `2m`, `t` of degree `3m`, both nonzero, with the equation minimal at every base.
    pub fn new(s: FactoredForm, t: FactoredForm, m: u32) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::Degenerate("s"));
        }
        if t.is_zero() {
            return Err(Error::Degenerate("t"));
        }
        for (f, expected) in [(&s, 2 * m), (&t, 3 * m)] {
            if f.degree() != expected {
                return Err(Error::DegreeMismatch {
                    expected: expected as i64,
                    found: f.degree() as i64,
                });
            }
        }
        let mut bases: Vec<Form> = Vec::new();
        for (b, _) in s.factors().iter().chain(t.factors()) {
            if !bases.iter().any(|x| x.is_associate(b)) {
                bases.push(b.monic());
            }
        }
        bases.sort_by_key(canonical_key);
        let mut orders = Vec::with_capacity(bases.len());
        for b in bases {
            let sigma = s.multiplicity_of(&b);
            let tau = t.multiplicity_of(&b);
            if sigma >= 2 && tau >= 3 {
                return Err(Error::NotMinimal { sigma, tau });
            }
            orders.push((b, sigma, tau));
        }
        Ok(MinimalCubic { m, s, t, orders })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn s(&self) -> &FactoredForm {
        &self.s
    }

    pub fn t(&self) -> &FactoredForm {
        &self.t
    }

    /// `(base, ord_base(s), ord_base(t))` for every base.
    pub fn orders(&self) -> &[(Form, u32, u32)] {
        &self.orders
    }
}

/// Exponents of one prime in `(a1, a2, b1, a0, b0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePattern {
    pub a1: u32,
    pub a2: u32,
    pub b1: u32,
    pub a0: u32,
    pub b0: u32,
}

impl PrimePattern {
    /// Order in `s = a1 a2^2 b1 a0`.
    pub fn sigma(&self) -> u32 {
        self.a1 + 2 * self.a2 + self.b1 + self.a0
    }

    /// Order in `t = a1 a2^2 b1^2 b0`.
    pub fn tau(&self) -> u32 {
        self.a1 + 2 * self.a2 + 2 * self.b1 + self.b0
    }
}

/// The unique exponent pattern of a prime with orders `sigma` in `s` and `tau` in `t`.
///
/// | orders               | pattern               |
/// |----------------------|-----------------------|
/// | `tau = 0`            | `a0^sigma`            |
/// | `sigma = 0`          | `b0^tau`              |
/// | `tau = 1`            | `a1 a0^(sigma-1)`     |
/// | `tau = 2, sigma = 1` | `b1`                  |
/// | `tau = 2, sigma >= 2`| `a2 a0^(sigma-2)`     |
/// | `tau >= 3, sigma = 1`| `b1 b0^(tau-2)`       |
pub fn prime_pattern_assign(sigma: u32, tau: u32) -> Result<PrimePattern> {
    let zero = PrimePattern {
        a1: 0,
        a2: 0,
        b1: 0,
        a0: 0,
        b0: 0,
    };
    let pattern = match (sigma, tau) {
        (0, 0) => return Err(Error::NoAssignment { sigma, tau }),
        (s, t) if s >= 2 && t >= 3 => return Err(Error::NotMinimal { sigma, tau }),
        (s, 0) => PrimePattern { a0: s, ..zero },
        (0, t) => PrimePattern { b0: t, ..zero },
        (s, 1) => PrimePattern {
            a1: 1,
            a0: s - 1,
            ..zero
        },
        (1, 2) => PrimePattern { b1: 1, ..zero },
        (s, 2) => PrimePattern {
            a2: 1,
            a0: s - 2,
            ..zero
        },
        (1, t) => PrimePattern {
            b1: 1,
            b0: t - 2,
            ..zero
        },
        _ => return Err(Error::NoAssignment { sigma, tau }),
    };
    debug_assert_eq!((pattern.sigma(), pattern.tau()), (sigma, tau));
    Ok(pattern)
}

/// The five factors of a minimal cubic.
///
/// The unit of `s` is carried by `a0` and the unit of `t` by `b0`, so the reconstruction
/// identities hold exactly rather than up to scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanData {
    pub a0: FactoredForm,
    pub a1: FactoredForm,
    pub a2: FactoredForm,
    pub b0: FactoredForm,
    pub b1: FactoredForm,
}

/// Splits a minimal cubic prime by prime.
pub fn tan_decomposition(mc: &MinimalCubic) -> Result<TanData> {
    let mut parts: [Vec<(Form, u32)>; 5] = Default::default();
    for (base, sigma, tau) in mc.orders() {
        let p = prime_pattern_assign(*sigma, *tau)?;
        for (slot, e) in [p.a0, p.a1, p.a2, p.b0, p.b1].into_iter().enumerate() {
            if e > 0 {
                parts[slot].push((base.clone(), e));
            }
        }
    }
    let [a0, a1, a2, b0, b1] = parts.map(|f| FactoredForm::from_factors(f).expect("distinct bases"));
    Ok(TanData {
        a0: a0.with_unit(mc.s().unit().clone()),
        a1,
        a2,
        b0: b0.with_unit(mc.t().unit().clone()),
        b1,
    })
}

impl TanData {
    /// Checks square-freeness of `a1, a2, b1` and the coprimality conditions between the factors.
    pub fn validate(&self) -> Result<()> {
        for f in [&self.a1, &self.a2, &self.b1] {
            if f.factors().iter().any(|(_, m)| *m > 1) {
                return Err(Error::InvalidTanData("a1, a2, b1 must be square-free"));
            }
        }
        let shares = |x: &FactoredForm, y: &FactoredForm| {
            x.factors()
                .iter()
                .any(|(b, _)| y.multiplicity_of(b) > 0)
        };
        let a_side = [&self.a0, &self.a1, &self.a2];
        let b_side = [&self.b0, &self.b1];
        let coprime = !shares(&self.a1, &self.a2)
            && a_side
                .iter()
                .all(|a| b_side.iter().all(|b| !shares(a, b)));
        if !coprime {
            return Err(Error::InvalidTanData("a-side and b-side factors must be coprime"));
        }
        Ok(())
    }

    /// `s = a1 a2^2 b1 a0`.
    pub fn s(&self) -> Form {
        &(&(&self.a1.expand() * &self.a2.expand().pow(2)) * &self.b1.expand()) * &self.a0.expand()
    }

    /// `t = a1 a2^2 b1^2 b0`.
    pub fn t(&self) -> Form {
        &(&(&self.a1.expand() * &self.a2.expand().pow(2)) * &self.b1.expand().pow(2))
            * &self.b0.expand()
    }

    pub fn all(&self) -> [(&'static str, &FactoredForm); 5] {
        [
            ("a0", &self.a0),
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("b0", &self.b0),
            ("b1", &self.b1),
        ]
    }
}

/// The abc data and the auxiliary sections `g1, g2, g3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcData {
    pub a: Form,
    pub b: Form,
    pub c: Form,
    /// Square-free part of `c`, carrying its unit.
    pub c1: Form,
    pub c0: Form,
    pub g1: Form,
    pub g2: Form,
    pub g3: Form,
    /// Whether `a, b, c` agree with `4s^3, 27t^2, 4s^3 + 27t^2` divided by `gcd(s^3, t^2)`.
    pub gcd_formulas_agree: bool,
}

fn check_characteristic(f: &Form) -> Result<()> {
    match f.characteristic() {
        p @ (2 | 3) => Err(Error::CharacteristicTooSmall {
            characteristic: p,
            bound: 3,
        }),
        _ => Ok(()),
    }
}

/// `(4s^3, 27t^2, 4s^3 + 27t^2)` each divided by `gcd(s^3, t^2)`.
pub fn abc_from_gcd(s: &Form, t: &Form) -> Result<(Form, Form, Form)> {
    let s3 = s.pow(3).scale(&Scalar::from(4));
    let t2 = t.pow(2).scale(&Scalar::from(27));
    let g = s.pow(3).gcd(&t.pow(2))?;
    let a = s3.exact_div(&g)?;
    let b = t2.exact_div(&g)?;
    let c = s3.checked_add(&t2)?.exact_div(&g)?;
    Ok((a, b, c))
}

pub fn abc_data(td: &TanData) -> Result<AbcData> {
    let a0 = td.a0.expand();
    let a2 = td.a2.expand();
    let b0 = td.b0.expand();
    for f in [&a0, &b0] {
        check_characteristic(f)?;
    }
    let a = (&(&td.a1.expand() * &a2.pow(2)) * &a0.pow(3)).scale(&Scalar::from(4));
    let b = (&td.b1.expand() * &b0.pow(2)).scale(&Scalar::from(27));
    let c = a.checked_add(&b)?;
    if c.is_zero() {
        return Err(Error::Degenerate("4s^3 + 27t^2"));
    }
    let (c1, c0) = c.squarefree_split()?;
    let gcd_formulas_agree = abc_from_gcd(&td.s(), &td.t())
        .map(|(ga, gb, gc)| ga == a && gb == b && gc == c)
        .unwrap_or(false);
    Ok(AbcData {
        g1: (&a0 * &a2).scale(&Scalar::ratio(2, 3)),
        g2: b0,
        g3: c0.clone(),
        a,
        b,
        c,
        c1,
        c0,
        gcd_formulas_agree,
    })
}

/// An effective divisor as a list of components with multiplicities. Components are monic forms;
/// they are irreducible when they come from asserted-irreducible bases and square-free otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    components: Vec<(Form, u32)>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_factored(f: &FactoredForm) -> Self {
        let mut d = Divisor::zero();
        for (b, m) in f.factors() {
            d.add_component(b, *m);
        }
        d
    }

    /// Divisor of a nonzero form, split into square-free parts.
    pub fn of_form(f: &Form) -> Result<Self> {
        let mut d = Divisor::zero();
        for (g, m) in f.squarefree_decomposition()?.parts {
            d.add_component(&g, m);
        }
        Ok(d)
    }

    fn add_component(&mut self, f: &Form, m: u32) {
        if f.is_constant() || m == 0 {
            return;
        }
        let f = f.monic();
        match self.components.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += m,
            None => self.components.push((f, m)),
        }
    }

    pub fn components(&self) -> &[(Form, u32)] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(|(f, m)| f.degree() * m).sum()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (f, m) in &other.components {
            d.add_component(f, *m);
        }
        d
    }

    pub fn times(&self, k: u32) -> Divisor {
        let mut d = Divisor::zero();
        for (f, m) in &self.components {
            d.add_component(f, m * k);
        }
        d
    }

    /// The reduced equation: product of the distinct components.
    pub fn reduced_equation(&self) -> Form {
        self.components.iter().fold(Form::one(), |acc, (f, _)| &acc * f)
    }
}

impl std::fmt::Display for Divisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(g, m)| match m {
                1 => format!("{{{g} = 0}}"),
                _ => format!("{m}{{{g} = 0}}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Ramification of a Tan cover in terms of the divisors `A_i, B_j, C_k` of the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub a0: Divisor,
    pub a1: Divisor,
    pub a2: Divisor,
    pub b0: Divisor,
    pub b1: Divisor,
    pub c0: Divisor,
    pub c1: Divisor,
    /// `T = A1 + A2`, where the cover is totally ramified.
    pub totally_ramified: Divisor,
    /// `S = B1 + C1`, where the cover is simply ramified.
    pub simple: Divisor,
    /// `2A1 + 2A2 + B1 + C1`.
    pub branch_locus: Divisor,
    /// `A2 + B1 + C0`.
    pub non_normal_image: Divisor,
    /// `deg S + 2 deg T`.
    pub bar_d_degree: u32,
    pub warnings: Vec<String>,
}

pub fn ramification_report(td: &TanData, abc: &AbcData) -> Result<RamificationReport> {
    let a0 = Divisor::from_factored(&td.a0);
    let a1 = Divisor::from_factored(&td.a1);
    let a2 = Divisor::from_factored(&td.a2);
    let b0 = Divisor::from_factored(&td.b0);
    let b1 = Divisor::from_factored(&td.b1);
    let c0 = Divisor::of_form(&abc.c0)?;
    let c1 = Divisor::of_form(&abc.c1)?;
    let totally_ramified = a1.plus(&a2);
    let simple = b1.plus(&c1);
    let branch_locus = totally_ramified.times(2).plus(&simple);
    let non_normal_image = a2.plus(&b1).plus(&c0);
    let mut report = RamificationReport {
        a0,
        a1,
        a2,
        b0,
        b1,
        c0,
        c1,
        bar_d_degree: 0,
        totally_ramified,
        simple,
        branch_locus,
        non_normal_image,
        warnings: Vec::new(),
    };
    let (degree, warning) = branch_divisor_degree(&report);
    report.bar_d_degree = degree;
    report.warnings.extend(warning);
    Ok(report)
}

/// `deg S + 2 deg T`, with a warning when `deg S` is odd (the total is then odd too, which no
/// geometric cover produces).
pub fn branch_divisor_degree(report: &RamificationReport) -> (u32, Option<String>) {
    let s = report.simple.degree();
    let t = report.totally_ramified.degree();
    let warning = (s % 2 == 1).then(|| {
        format!("simple ramification divisor has odd degree {s}; branch degree {} is odd", s + 2 * t)
    });
    (s + 2 * t, warning)
}

/// Every stage of the Tan pipeline for one cover.
#[derive(Clone, Debug)]
pub struct TanAnalysis {
    pub cubic: MinimalCubic,
    pub data: TanData,
    pub abc: AbcData,
    pub ramification: RamificationReport,
}

pub fn analyze(s: FactoredForm, t: FactoredForm, m: u32) -> Result<TanAnalysis> {
    let cubic = MinimalCubic::new(s, t, m)?;
    let data = tan_decomposition(&cubic)?;
    let abc = abc_data(&data)?;
    let ramification = ramification_report(&data, &abc)?;
    Ok(TanAnalysis {
        cubic,
        data,
        abc,
        ramification,
    })
}
