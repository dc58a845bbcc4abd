//! Splitting types of rank-2 bundles on lines and jump-line detection.

mod kernel;
mod linalg;
mod presentation;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{random_line, BinaryForm, Form, LineP2};
use crate::error::{Error, Result};

pub use kernel::{minimal_kernel_basis, KernelColumn};
pub use presentation::{
    euler_cotangent_presentation, restrict_presentation, Presentation, PresentationKind,
    RestrictedPresentation,
};

/// `(a1, a2)` with `a1 >= a2`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplittingType {
    pub a1: i64,
    pub a2: i64,
}

impl SplittingType {
    pub fn new(a: i64, b: i64) -> Self {
        SplittingType {
            a1: a.max(b),
            a2: a.min(b),
        }
    }

    pub fn c1(&self) -> i64 {
        self.a1 + self.a2
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a1, self.a2)
    }
}

/// A rank-2 bundle on the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleClass {
    /// `O(t1) + O(t2)`.
    Split(i64, i64),
    /// `Omega(t)`, with first Chern number `2t - 3`.
    CotangentTwist(i64),
    Presented(Presentation),
}

impl BundleClass {
    pub fn c1(&self) -> i64 {
        match self {
            BundleClass::Split(a, b) => a + b,
            BundleClass::CotangentTwist(t) => 2 * t - 3,
            BundleClass::Presented(p) => p.c1(),
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleClass::Split(a, b) => write!(f, "O({a}) + O({b})"),
            BundleClass::CotangentTwist(t) => write!(f, "Omega({t})"),
            BundleClass::Presented(p) => write!(
                f,
                "{:?} of a {}x{} matrix",
                p.kind(),
                p.row_twists().len(),
                p.col_twists().len()
            ),
        }
    }
}

pub fn splitting_on_line(bundle: &BundleClass, line: &LineP2) -> Result<SplittingType> {
    match bundle {
        BundleClass::Split(a, b) => Ok(SplittingType::new(*a, *b)),
        BundleClass::CotangentTwist(t) => Ok(SplittingType::new(t - 1, t - 2)),
        BundleClass::Presented(p) => splitting_type_presented(p, line),
    }
}

/// Splitting type of a rank-2 presented bundle on `line`. Cokernels are handled through the dual.
pub fn splitting_type_presented(p: &Presentation, line: &LineP2) -> Result<SplittingType> {
    if p.bundle_rank() != 2 {
        return Err(Error::NotExpectedRank { expected: 2 });
    }
    let restricted = restrict_presentation(p, line)?;
    let twists: Vec<i64> = match p.kind() {
        PresentationKind::Kernel => minimal_kernel_basis(&restricted)?
            .iter()
            .map(|c| c.twist)
            .collect(),
        PresentationKind::Cokernel => minimal_kernel_basis(&restricted.transpose())?
            .iter()
            .map(|c| -c.twist)
            .collect(),
    };
    Ok(SplittingType::new(twists[0], twists[1]))
}

/// Whether the maximal minors of a two-column kernel basis have no common factor.
pub fn minors_coprime(basis: &[KernelColumn]) -> bool {
    let [u, v] = basis else {
        return basis.len() == 1 && gcd_all(basis[0].entries.iter().cloned());
    };
    let n = u.entries.len();
    let mut minors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = &u.entries[i] * &v.entries[j];
            let q = &u.entries[j] * &v.entries[i];
            minors.push(if p.is_zero() {
                -q
            } else {
                p.checked_sub(&q).unwrap()
            });
        }
    }
    gcd_all(minors.into_iter())
}

fn gcd_all(forms: impl Iterator<Item = BinaryForm>) -> bool {
    let mut g: Option<BinaryForm> = None;
    for f in forms.filter(|f| !f.is_zero()) {
        g = Some(match g {
            None => f.monic(),
            Some(h) => h.gcd(&f).unwrap(),
        });
    }
    g.is_some_and(|g| g.is_constant())
}

/// Outcome of sampling lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpReport {
    pub generic_type: SplittingType,
    pub samples: usize,
    /// Sampled lines whose type is larger than the generic one.
    pub deviations: Vec<(LineP2, SplittingType)>,
    /// Sampled lines on which the presentation drops rank.
    pub skipped: Vec<LineP2>,
}

/// Coefficient box for sampled lines.
pub const LINE_BOX: i64 = 3;

/// Samples `n` lines from a seeded stream and reports the lines whose type exceeds the minimum.
pub fn jump_line_scan(bundle: &BundleClass, n: usize, seed: u64) -> Result<JumpReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lines: Vec<LineP2> = (0..n.max(1)).map(|_| random_line(&mut rng, LINE_BOX)).collect();
    jump_line_scan_lines(bundle, &lines)
}

pub fn jump_line_scan_lines(bundle: &BundleClass, lines: &[LineP2]) -> Result<JumpReport> {
    let mut typed = Vec::new();
    let mut skipped = Vec::new();
    for line in lines {
        match splitting_on_line(bundle, line) {
            Ok(t) => typed.push((line.clone(), t)),
            Err(Error::DegenerateOnLine) => skipped.push(line.clone()),
            Err(e) => return Err(e),
        }
    }
    let generic_type = typed
        .iter()
        .map(|(_, t)| *t)
        .min()
        .ok_or(Error::DegenerateOnLine)?;
    Ok(JumpReport {
        generic_type,
        samples: lines.len(),
        deviations: typed.into_iter().filter(|(_, t)| *t > generic_type).collect(),
        skipped,
    })
}

/// Kernel of `(x, y, z^2): O(-1)^2 + O(-2) -> O`. The generic type is `(-2, -2)`; lines through
/// `(0:0:1)` have type `(-1, -3)`.
pub fn jumping_example() -> Presentation {
    Presentation::new(
        PresentationKind::Kernel,
        vec![vec![Form::x(), Form::y(), Form::z().pow(2)]],
        vec![0],
        vec![-1, -1, -2],
    )
    .expect("valid presentation")
}

/// `O(-2) + O(-4)` as the kernel of `(x^2, 0, 1): O(-2) + O(-4) + O -> O`.
pub fn split_example() -> Presentation {
    Presentation::new(
        PresentationKind::Kernel,
        vec![vec![Form::x().pow(2), Form::zero(4), Form::one()]],
        vec![0],
        vec![-2, -4, 0],
    )
    .expect("valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(n: usize, seed: u64) -> Vec<LineP2> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| random_line(&mut rng, LINE_BOX)).collect()
    }

    #[test]
    fn lexicographic_order() {
        assert!(SplittingType::new(-1, -3) > SplittingType::new(-2, -2));
        assert_eq!(SplittingType::new(-4, -1), SplittingType { a1: -1, a2: -4 });
    }

    #[test]
    fn chern_numbers() {
        assert_eq!(BundleClass::Split(-1, -2).c1(), -3);
        assert_eq!(BundleClass::CotangentTwist(-3).c1(), -9);
        assert_eq!(BundleClass::Presented(euler_cotangent_presentation(2)).c1(), 1);
    }

    #[test]
    fn euler_matches_cotangent_formula() {
        for t in [-3, 0, 2] {
            let p = BundleClass::Presented(euler_cotangent_presentation(t));
            for line in lines(10, (t + 40) as u64) {
                let got = splitting_on_line(&p, &line).unwrap();
                assert_eq!(got, splitting_on_line(&BundleClass::CotangentTwist(t), &line).unwrap());
                assert_eq!(got.c1(), 2 * t - 3);
            }
        }
    }

    #[test]
    fn split_presentation() {
        let p = split_example();
        for line in lines(15, 2) {
            assert_eq!(splitting_type_presented(&p, &line).unwrap(), SplittingType::new(-2, -4));
        }
    }

    #[test]
    fn engineered_jump() {
        let p = jumping_example();
        let x0 = LineP2::from_ints(1, 0, 0).unwrap();
        let generic = LineP2::from_ints(1, 2, 3).unwrap();
        assert_eq!(splitting_type_presented(&p, &x0).unwrap(), SplittingType::new(-1, -3));
        assert_eq!(splitting_type_presented(&p, &generic).unwrap(), SplittingType::new(-2, -2));
        let report = jump_line_scan(&BundleClass::Presented(p), 30, 1).unwrap();
        assert_eq!(report.generic_type, SplittingType::new(-2, -2));
        assert!(!report.deviations.is_empty());
        for (line, t) in &report.deviations {
            assert!(line.coefficients()[2].is_zero());
            assert_eq!(*t, SplittingType::new(-1, -3));
        }
    }

    #[test]
    fn uniform_families_do_not_jump() {
        for seed in 0..5 {
            for b in [BundleClass::Split(-1, -2), BundleClass::CotangentTwist(-1)] {
                let r = jump_line_scan(&b, 20, seed).unwrap();
                assert!(r.deviations.is_empty());
            }
            let r = jump_line_scan(&BundleClass::Presented(euler_cotangent_presentation(0)), 20, seed)
                .unwrap();
            assert_eq!(r.generic_type, SplittingType::new(-1, -2));
            assert!(r.deviations.is_empty());
        }
    }

    #[test]
    fn cokernel_through_dual() {
        // The dual Euler sequence: T(-1) is the cokernel of (x, y, z)^T: O(-1) -> O^3.
        let p = Presentation::new(
            PresentationKind::Cokernel,
            vec![vec![Form::x()], vec![Form::y()], vec![Form::z()]],
            vec![0, 0, 0],
            vec![-1],
        )
        .unwrap();
        assert_eq!(p.c1(), 1);
        for line in lines(8, 9) {
            assert_eq!(splitting_type_presented(&p, &line).unwrap(), SplittingType::new(1, 0));
        }
    }

    #[test]
    fn bases_are_minimal() {
        let p = jumping_example();
        for line in lines(10, 4) {
            let r = restrict_presentation(&p, &line).unwrap();
            assert!(minors_coprime(&minimal_kernel_basis(&r).unwrap()));
        }
    }
}
