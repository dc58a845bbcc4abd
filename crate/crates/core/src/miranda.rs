//! Triple covers given by a split trace-free bundle `E = O(t1) ⊕ O(t2)` and four sections
//! `a, b, c, d`.
//!
//! On a local basis `{z, w}` of `E` the cover algebra `O ⊕ E` multiplies as
//!
//! ```text
//! z^2 = 2e + a z + b w
//! z w = -f - d z - a w
//! w^2 = 2g + c z + d w
//! ```
//!
//! with `e = a^2 - bd`, `f = ad - bc`, `g = d^2 - ac`, and the branch divisor is cut out by
//! `f^2 - 4eg`.

use serde::Serialize;

use crate::algebra::{BinaryForm, Form, LineP2, Poly, Scalar};
use crate::error::{Error, Result};

/// Degrees of `a, b, c, d` forced by the twists: `(-t1, -2t1 + t2, t1 - 2t2, -t2)`.
pub fn section_degrees(t1: i64, t2: i64) -> [i64; 4] {
    [-t1, -2 * t1 + t2, t1 - 2 * t2, -t2]
}

const SECTION_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Validated cover data for a split bundle, with `t1 >= t2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirandaData {
    t1: i64,
    t2: i64,
    a: Form,
    b: Form,
    c: Form,
    d: Form,
}

impl MirandaData {
    /// Validates the data. Twists given with `t1 < t2` are swapped together with the roles of the
    /// basis vectors, which sends `(a, b, c, d)` to `(d, c, b, a)`.
    pub fn new(t1: i64, t2: i64, a: Form, b: Form, c: Form, d: Form) -> Result<Self> {
        let (t1, t2, a, b, c, d) = if t1 < t2 {
            (t2, t1, d, c, b, a)
        } else {
            (t1, t2, a, b, c, d)
        };
        let degrees = section_degrees(t1, t2);
        if let Some(i) = degrees.iter().position(|&deg| deg < 0) {
            return Err(Error::BadTwists {
                t1,
                t2,
                section: SECTION_NAMES[i],
                degree: degrees[i],
            });
        }
        let mut sections = [a, b, c, d];
        for (s, &deg) in sections.iter_mut().zip(degrees.iter()) {
            *s = std::mem::replace(s, Form::zero(0)).with_degree(deg as u32)?;
        }
        let [a, b, c, d] = sections;
        if b.is_zero() {
            return Err(Error::NotIntegral("b"));
        }
        if c.is_zero() {
            return Err(Error::NotIntegral("c"));
        }
        Ok(MirandaData { t1, t2, a, b, c, d })
    }

    pub fn twists(&self) -> (i64, i64) {
        (self.t1, self.t2)
    }

    pub fn a(&self) -> &Form {
        &self.a
    }
    pub fn b(&self) -> &Form {
        &self.b
    }
    pub fn c(&self) -> &Form {
        &self.c
    }
    pub fn d(&self) -> &Form {
        &self.d
    }

    /// First Chern number `t1 + t2` of the trace-free bundle.
    pub fn c1(&self) -> i64 {
        self.t1 + self.t2
    }

    pub fn derived_efg(&self) -> DerivedSections {
        DerivedSections::from_abcd(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn multiplication_table(&self) -> MultiplicationTable {
        MultiplicationTable::new(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn discriminant(&self) -> BranchData {
        let efg = self.derived_efg();
        let disc = efg.discriminant();
        BranchData {
            degree: (!disc.is_zero()).then(|| disc.degree()),
            expected_degree: -2 * self.c1(),
            degenerate: disc.is_zero(),
            discriminant: disc,
        }
    }

    /// A triple cover is Galois exactly when `a = d = 0`.
    pub fn is_galois(&self) -> bool {
        self.a.is_zero() && self.d.is_zero()
    }

    pub fn cubic_section_twist(&self) -> Option<u32> {
        is_cubic_section_type(self.t1, self.t2)
    }

    pub fn restrict(&self, line: &LineP2) -> RestrictedData {
        RestrictedData {
            t1: self.t1,
            t2: self.t2,
            a: line.restrict(&self.a),
            b: line.restrict(&self.b),
            c: line.restrict(&self.c),
            d: line.restrict(&self.d),
        }
    }
}

/// `m > 0` with `{t1, t2} = {-m, -2m}`: the cover is then a cubic section of the total space of
/// `O(m)`.
pub fn is_cubic_section_type(t1: i64, t2: i64) -> Option<u32> {
    let (hi, lo) = if t1 >= t2 { (t1, t2) } else { (t2, t1) };
    (hi < 0 && lo == 2 * hi).then(|| (-hi) as u32)
}

/// The sections `e, f, g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSections {
    pub e: Form,
    pub f: Form,
    pub g: Form,
}

impl DerivedSections {
    /// Applies `e = a^2 - bd`, `f = ad - bc`, `g = d^2 - ac`. Panics if the degrees are
    /// inconsistent, which validated data rules out.
    pub fn from_abcd(a: &Form, b: &Form, c: &Form, d: &Form) -> Self {
        let e = (a * a).checked_sub(&(b * d)).expect("deg e");
        let f = (a * d).checked_sub(&(b * c)).expect("deg f");
        let g = (d * d).checked_sub(&(a * c)).expect("deg g");
        DerivedSections { e, f, g }
    }

    /// `f^2 - 4eg`.
    pub fn discriminant(&self) -> Form {
        let four_eg = (&self.e * &self.g).scale(&Scalar::from(4));
        (&self.f * &self.f)
            .checked_sub(&four_eg)
            .expect("deg f^2 = deg eg")
    }
}

/// Branch data of a Miranda cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub discriminant: Form,
    /// Degree of the discriminant, `None` when it vanishes identically.
    pub degree: Option<u32>,
    /// `-2 (t1 + t2)`.
    pub expected_degree: i64,
    /// The discriminant vanishes identically: every point is a branch point.
    pub degenerate: bool,
}

/// Basis elements of the trace-free part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    Z,
    W,
}

/// Element `c0 + c1 z + c2 w` of the cover algebra. Components are sections of different twists,
/// so they are kept as plain polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement(pub [Poly<3>; 3]);

/// Products of basis vectors in the basis `{1, z, w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    /// `z^2 = (2e, a, b)`.
    pub zz: [Form; 3],
    /// `zw = (-f, -d, -a)`.
    pub zw: [Form; 3],
    /// `w^2 = (2g, c, d)`.
    pub ww: [Form; 3],
}

impl MultiplicationTable {
    pub fn new(a: &Form, b: &Form, c: &Form, d: &Form) -> Self {
        let DerivedSections { e, f, g } = DerivedSections::from_abcd(a, b, c, d);
        let two = Scalar::from(2);
        MultiplicationTable {
            zz: [e.scale(&two), a.clone(), b.clone()],
            zw: [-&f, -d, -a],
            ww: [g.scale(&two), c.clone(), d.clone()],
        }
    }

    fn row(r: &[Form; 3]) -> [Poly<3>; 3] {
        [r[0].poly().clone(), r[1].poly().clone(), r[2].poly().clone()]
    }

    /// Product in the cover algebra.
    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let [u0, u1, u2] = &u.0;
        let [v0, v1, v2] = &v.0;
        let mut out = [
            u0 * v0,
            &(u0 * v1) + &(u1 * v0),
            &(u0 * v2) + &(u2 * v0),
        ];
        let zz_coef = u1 * v1;
        let zw_coef = &(u1 * v2) + &(u2 * v1);
        let ww_coef = u2 * v2;
        for (coef, row) in [(zz_coef, &self.zz), (zw_coef, &self.zw), (ww_coef, &self.ww)] {
            for (o, r) in out.iter_mut().zip(Self::row(row).iter()) {
                *o = &*o + &(&coef * r);
            }
        }
        AlgebraElement(out)
    }

    pub fn generator(g: Generator) -> AlgebraElement {
        let mut e = [Poly::zero(), Poly::zero(), Poly::zero()];
        e[match g {
            Generator::Z => 1,
            Generator::W => 2,
        }] = Poly::one();
        AlgebraElement(e)
    }

    /// Matrix of multiplication by a generator on `{1, z, w}`; column `j` is the image of the
    /// `j`-th basis vector.
    pub fn operator(&self, g: Generator) -> [[Poly<3>; 3]; 3] {
        let images = [
            Self::generator(g).0,
            match g {
                Generator::Z => Self::row(&self.zz),
                Generator::W => Self::row(&self.zw),
            },
            match g {
                Generator::Z => Self::row(&self.zw),
                Generator::W => Self::row(&self.ww),
            },
        ];
        let mut m: [[Poly<3>; 3]; 3] = Default::default();
        for (j, col) in images.iter().enumerate() {
            for (i, entry) in col.iter().enumerate() {
                m[i][j] = entry.clone();
            }
        }
        m
    }

    pub fn trace(&self, g: Generator) -> Poly<3> {
        let m = self.operator(g);
        &(&m[0][0] + &m[1][1]) + &m[2][2]
    }

    /// Checks `z(zw) = (zz)w` and `w(wz) = (ww)z` symbolically.
    pub fn is_associative(&self) -> bool {
        let z = Self::generator(Generator::Z);
        let w = Self::generator(Generator::W);
        let zw = self.multiply(&z, &w);
        let lhs1 = self.multiply(&z, &zw);
        let rhs1 = self.multiply(&self.multiply(&z, &z), &w);
        let lhs2 = self.multiply(&w, &zw);
        let rhs2 = self.multiply(&self.multiply(&w, &w), &z);
        lhs1 == rhs1 && lhs2 == rhs2
    }
}

/// Cover data restricted to a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedData {
    pub t1: i64,
    pub t2: i64,
    pub a: BinaryForm,
    pub b: BinaryForm,
    pub c: BinaryForm,
    pub d: BinaryForm,
}

impl RestrictedData {
    /// Degrees of the restricted sections; `None` where the restriction vanishes.
    pub fn degrees(&self) -> [Option<u32>; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(|s| (!s.is_zero()).then(|| s.degree()))
    }

    pub fn derived_efg(&self) -> [BinaryForm; 3] {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        [
            (a * a).checked_sub(&(b * d)).unwrap(),
            (a * d).checked_sub(&(b * c)).unwrap(),
            (d * d).checked_sub(&(a * c)).unwrap(),
        ]
    }
}
