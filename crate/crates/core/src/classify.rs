//! Uniformity classification of trace-free bundles by branch degree.
//!
//! A normal triple cover with branch divisor of degree `2k` has `det E = O(-k)`. Candidate
//! uniform bundles are split bundles allowed by the twist inequalities together with the
//! cotangent twist of matching first Chern number. A hypothetical jump line of jump `m` forces
//! the chart sections to restrict with the degrees of [`DegreeProfile`]; the elimination engine
//! rules out each `m` from the degree of `b~` on that line.

use std::fmt;

use serde::Serialize;

use crate::bundle::{BundleClass, SplittingType};
use crate::error::{Error, Result};
use crate::miranda::is_cubic_section_type;

/// Degrees of `a~, b~, c~, d~` restricted to a jump line with jump `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub k: i64,
    pub m: i64,
    pub deg_a: i64,
    pub deg_b: i64,
    pub deg_c: i64,
    pub deg_d: i64,
}

pub fn jump_section_degrees(k: i64, m: i64) -> DegreeProfile {
    let [deg_a, deg_b, deg_c, deg_d] = if k % 2 == 0 {
        let t = k / 2;
        [t - m, t - 3 * m, t + 3 * m, t + m]
    } else {
        let t = (k + 1) / 2;
        [t - 1 - m, t - 2 - 3 * m, t + 3 * m + 1, t + m]
    };
    DegreeProfile {
        k,
        m,
        deg_a,
        deg_b,
        deg_c,
        deg_d,
    }
}

/// Why a jump of a given size cannot occur.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationReason {
    /// `b~|L = 0` with the line dividing `a2` or `c0`: then `d~|L` vanishes as well, against its
    /// required degree.
    DTildeVanishes { deg_d: i64 },
    /// `b~|L = 0` with the line dividing `b1`: the cover is totally ramified over `L`, so the line
    /// divides `a1 a2`, against coprimality of the factors.
    TotallyRamifiedCoprime,
    /// `b~` is a nonzero constant, forcing `a0, a2, b1, c0` constant and the relation
    /// `a1 + b0^2 = c1`, whose two sides have different degrees on a general line.
    ConstantCaseDegreeMismatch {
        equation: &'static str,
        generic_type: SplittingType,
        /// Degree of `c1` on a general line, where a number is stated; otherwise only parity is
        /// compared.
        rhs_degree: Option<u32>,
    },
    /// `deg b~|L > 0`; the case analysis does not apply.
    Inconclusive { deg_b: i64 },
}

impl EliminationReason {
    pub fn label(&self) -> &'static str {
        match self {
            EliminationReason::DTildeVanishes { .. } => "d~ vanishes on the line",
            EliminationReason::TotallyRamifiedCoprime => "total ramification breaks coprimality",
            EliminationReason::ConstantCaseDegreeMismatch { .. } => "a1 + b0^2 = c1 degree mismatch",
            EliminationReason::Inconclusive { .. } => "inconclusive",
        }
    }
}

impl fmt::Display for EliminationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EliminationReason::DTildeVanishes { deg_d } => {
                write!(f, "line | a2 or line | c0 => d~|L = 0, but d~|L has degree {deg_d}")
            }
            EliminationReason::TotallyRamifiedCoprime => {
                write!(f, "line | b1 => totally ramified over L => line | a1 a2, not coprime to b1")
            }
            EliminationReason::ConstantCaseDegreeMismatch {
                equation,
                generic_type,
                rhs_degree,
            } => {
                write!(f, "b~ constant, generic type {generic_type}: {equation} on a general line, ")?;
                match rhs_degree {
                    Some(d) => write!(f, "even degree on the left, {d} on the right"),
                    None => write!(f, "even degree on the left, odd on the right"),
                }
            }
            EliminationReason::Inconclusive { deg_b } => {
                write!(f, "deg b~|L = {deg_b} > 0, no elimination")
            }
        }
    }
}

/// Result of the case analysis for one `(k, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub profile: DegreeProfile,
    pub reasons: Vec<EliminationReason>,
}

impl Elimination {
    pub fn eliminated(&self) -> bool {
        !self
            .reasons
            .iter()
            .any(|r| matches!(r, EliminationReason::Inconclusive { .. }))
    }
}

fn generic_type(k: i64) -> SplittingType {
    if k % 2 == 0 {
        SplittingType::new(-k / 2, -k / 2)
    } else {
        let t = (k + 1) / 2;
        SplittingType::new(-t + 1, -t)
    }
}

pub fn eliminate_jump(k: i64, m: i64) -> Elimination {
    let profile = jump_section_degrees(k, m);
    let reasons = match profile.deg_b {
        d if d < 0 => vec![
            EliminationReason::DTildeVanishes {
                deg_d: profile.deg_d,
            },
            EliminationReason::TotallyRamifiedCoprime,
        ],
        0 => vec![EliminationReason::ConstantCaseDegreeMismatch {
            equation: "a1 + b0^2 = c1",
            generic_type: generic_type(k),
            rhs_degree: (k == 6).then_some(3),
        }],
        d => vec![EliminationReason::Inconclusive { deg_b: d }],
    };
    Elimination { profile, reasons }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Uniform,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Uniform => write!(f, "uniform"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// The case analysis for every jump `m = 1, ..., m_bound`, where `m_bound` is the first `m` with
/// `deg b~|L < 0`; larger jumps only lower that degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityVerdict {
    pub k: i64,
    pub status: Status,
    pub m_bound: i64,
    pub eliminations: Vec<Elimination>,
}

pub fn uniformity_verdict(k: i64) -> UniformityVerdict {
    let mut eliminations = Vec::new();
    let mut m = 1;
    loop {
        let e = eliminate_jump(k, m);
        let done = e.profile.deg_b < 0;
        eliminations.push(e);
        if done {
            break;
        }
        m += 1;
    }
    let status = if eliminations.iter().all(Elimination::eliminated) {
        Status::Uniform
    } else {
        Status::Inconclusive
    };
    UniformityVerdict {
        k,
        status,
        m_bound: m,
        eliminations,
    }
}

/// Pairs `t1 >= t2` with `t1 + t2 = -k`, `2 t1 <= t2` and `2 t2 <= t1`, by increasing `t1`.
pub fn admissible_split_types(k: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for t2 in -k..=0 {
        let t1 = -k - t2;
        if t1 >= t2 && 2 * t1 <= t2 && 2 * t2 <= t1 {
            out.push((t1, t2));
        }
    }
    out.sort();
    out
}

/// `Omega(t)` with `2t - 3 = -k`, for odd `k`.
pub fn cotangent_candidate(k: i64) -> Option<BundleClass> {
    (k % 2 != 0).then(|| BundleClass::CotangentTwist((3 - k) / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TableClass {
    Split(i64, i64),
    Cotangent(i64),
}

impl TableClass {
    pub fn bundle(self) -> BundleClass {
        match self {
            TableClass::Split(a, b) => BundleClass::Split(a, b),
            TableClass::Cotangent(t) => BundleClass::CotangentTwist(t),
        }
    }

    pub fn c1(self) -> i64 {
        self.bundle().c1()
    }

    fn of(b: &BundleClass) -> Option<Self> {
        match b {
            BundleClass::Split(a, b) => Some(TableClass::Split(*a.max(b), *a.min(b))),
            BundleClass::CotangentTwist(t) => Some(TableClass::Cotangent(*t)),
            BundleClass::Presented(_) => None,
        }
    }
}

impl fmt::Display for TableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bundle().fmt(f)
    }
}

use TableClass::{Cotangent as Om, Split as Sp};

/// The known classification by branch degree.
pub const CLASSIFICATION_TABLE: [(i64, &[TableClass]); 8] = [
    (2, &[Om(1)]),
    (4, &[Sp(-1, -1)]),
    (6, &[Sp(-1, -2), Om(0)]),
    (8, &[Sp(-2, -2)]),
    (10, &[Sp(-2, -3), Om(-1)]),
    (12, &[Sp(-3, -3), Sp(-2, -4)]),
    (14, &[Sp(-3, -4), Om(-2)]),
    (18, &[Sp(-4, -5), Sp(-3, -6), Om(-3)]),
];

pub fn table_row(two_k: i64) -> Option<&'static [TableClass]> {
    CLASSIFICATION_TABLE
        .iter()
        .find(|(d, _)| *d == two_k)
        .map(|(_, row)| *row)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationEntry {
    pub two_k: i64,
    pub status: Status,
    /// Enumerated candidates: admissible split types, then the cotangent twist.
    pub classes: Vec<TableClass>,
    /// Whether the enumeration agrees with the hard-coded table; `None` outside the table.
    pub table_agrees: Option<bool>,
    /// Classes of the form `L^-1 + L^-2`, with the degree of `L`.
    pub cubic_sections: Vec<(TableClass, u32)>,
    pub verdict: UniformityVerdict,
}

pub fn classify_branch_degree(two_k: i64) -> Result<ClassificationEntry> {
    if two_k < 2 || two_k % 2 != 0 {
        return Err(Error::OddDegree(two_k));
    }
    let k = two_k / 2;
    let verdict = uniformity_verdict(k);
    let mut classes: Vec<TableClass> = admissible_split_types(k)
        .into_iter()
        .map(|(a, b)| Sp(a, b))
        .collect();
    classes.extend(cotangent_candidate(k).as_ref().and_then(TableClass::of));
    let table_agrees = table_row(two_k).map(|row| {
        let mut a = row.to_vec();
        let mut b = classes.clone();
        a.sort();
        b.sort();
        a == b
    });
    let cubic_sections = classes
        .iter()
        .filter_map(|c| match c {
            Sp(a, b) => is_cubic_section_type(*a, *b).map(|d| (*c, d)),
            Om(_) => None,
        })
        .collect();
    Ok(ClassificationEntry {
        two_k,
        status: verdict.status,
        classes,
        table_agrees,
        cubic_sections,
        verdict,
    })
}

/// Geometry of the cover for one row of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryNote {
    pub surface: &'static str,
    pub map: Option<&'static str>,
}

const NOTES: [(i64, TableClass, GeometryNote); 10] = [
    (4, Sp(-1, -1), note("Steiner cubic surface in P4", Some("linear projection"))),
    (6, Sp(-1, -2), note("cubic surface in P3", None)),
    (6, Om(0), note("birational to B x P1, B elliptic", None)),
    (
        8,
        Sp(-2, -2),
        note("P1 x P1 blown up in 9 points", Some("curves of bidegree (2,3) through the 9 points")),
    ),
    (10, Sp(-2, -3), note("quartic surface blown up in a point", Some("projection from the point"))),
    (
        10,
        Om(-1),
        note("P2 blown up in 13 points", Some("quartics through the 13 points (12 conditions)")),
    ),
    (12, Sp(-2, -4), note("general type, p_g = K^2 = 3", Some("canonical map"))),
    (
        12,
        Sp(-3, -3),
        note("elliptic over P1 by the canonical map", Some("genus 4 trisections")),
    ),
    (14, Sp(-3, -4), note("quintic in P3 with a double point p", Some("projection from p"))),
    (14, Om(-2), note("q = 0, p_g = 3, K^2 = 2, e = 46", None)),
];

const fn note(surface: &'static str, map: Option<&'static str>) -> GeometryNote {
    GeometryNote { surface, map }
}

/// The geometry of the cover for `(2k, bundle)`; `None` for rows without a description.
pub fn geometry_notes(two_k: i64, bundle: &BundleClass) -> Result<Option<GeometryNote>> {
    let unknown = || Error::UnknownEntry {
        two_k,
        bundle: bundle.to_string(),
    };
    let class = TableClass::of(bundle).ok_or_else(unknown)?;
    let row = table_row(two_k).ok_or_else(unknown)?;
    if !row.contains(&class) {
        return Err(unknown());
    }
    Ok(NOTES
        .iter()
        .find(|(d, c, _)| *d == two_k && *c == class)
        .map(|(_, _, n)| n.clone()))
}
