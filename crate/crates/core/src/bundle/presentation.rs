//! Graded matrix presentations of bundles and their restrictions to lines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg;
use crate::algebra::{random_point, BinaryForm, Form, LineP2, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PresentationKind {
    Kernel,
    Cokernel,
}

/// A map `M: sum O(c_j) -> sum O(r_i)`; the bundle is its kernel or its cokernel. Entry `(i, j)` is
/// zero or a form of degree `r_i - c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    kind: PresentationKind,
    matrix: Vec<Vec<Form>>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
}

const RANK_SEED: u64 = 0x5eed;

impl Presentation {
    pub fn new(
        kind: PresentationKind,
        matrix: Vec<Vec<Form>>,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
    ) -> Result<Self> {
        let mut checked = Vec::with_capacity(matrix.len());
        if matrix.len() != row_twists.len() {
            return Err(Error::PresentationShape {
                row: matrix.len(),
                col: 0,
                expected: row_twists.len() as i64,
                found: matrix.len() as i64,
            });
        }
        for (i, row) in matrix.into_iter().enumerate() {
            if row.len() != col_twists.len() {
                return Err(Error::PresentationShape {
                    row: i,
                    col: row.len(),
                    expected: col_twists.len() as i64,
                    found: row.len() as i64,
                });
            }
            let mut out = Vec::with_capacity(row.len());
            for (j, f) in row.into_iter().enumerate() {
                let expected = row_twists[i] - col_twists[j];
                if f.is_zero() {
                    out.push(Form::zero(expected.max(0) as u32));
                } else if f.degree() as i64 != expected {
                    return Err(Error::PresentationShape {
                        row: i,
                        col: j,
                        expected,
                        found: f.degree() as i64,
                    });
                } else {
                    out.push(f);
                }
            }
            checked.push(out);
        }
        let p = Presentation {
            kind,
            matrix: checked,
            row_twists,
            col_twists,
        };
        let full = p.full_rank();
        if p.bundle_rank() < 1 || p.generic_rank() != full {
            return Err(Error::NotExpectedRank { expected: full });
        }
        Ok(p)
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Vec<Form>] {
        &self.matrix
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    fn full_rank(&self) -> usize {
        match self.kind {
            PresentationKind::Kernel => self.row_twists.len(),
            PresentationKind::Cokernel => self.col_twists.len(),
        }
    }

    /// Rank of the presented bundle.
    pub fn bundle_rank(&self) -> usize {
        let (r, c) = (self.row_twists.len(), self.col_twists.len());
        match self.kind {
            PresentationKind::Kernel => c.saturating_sub(r),
            PresentationKind::Cokernel => r.saturating_sub(c),
        }
    }

    /// First Chern number of the presented bundle.
    pub fn c1(&self) -> i64 {
        let r: i64 = self.row_twists.iter().sum();
        let c: i64 = self.col_twists.iter().sum();
        match self.kind {
            PresentationKind::Kernel => c - r,
            PresentationKind::Cokernel => r - c,
        }
    }

    /// Rank of the matrix at a seeded random point.
    pub fn generic_rank(&self) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(RANK_SEED);
        let pt = random_point(&mut rng, 1000);
        let rows: Vec<Vec<Scalar>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|f| f.evaluate(&pt)).collect())
            .collect();
        linalg::rank(&rows, self.col_twists.len())
    }
}

/// `Omega(t)` as the kernel of `(x y z): O(t-1)^3 -> O(t)`.
pub fn euler_cotangent_presentation(t: i64) -> Presentation {
    Presentation::new(
        PresentationKind::Kernel,
        vec![vec![Form::x(), Form::y(), Form::z()]],
        vec![t],
        vec![t - 1; 3],
    )
    .expect("Euler presentation is valid")
}

/// A presentation matrix restricted to a line, with the twists unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedPresentation {
    pub kind: PresentationKind,
    pub matrix: Vec<Vec<BinaryForm>>,
    pub row_twists: Vec<i64>,
    pub col_twists: Vec<i64>,
}

impl RestrictedPresentation {
    /// The matrix of scalars at `(λ, μ)`.
    pub fn evaluate(&self, point: &[Scalar; 2]) -> Vec<Vec<Scalar>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|f| f.evaluate(point)).collect())
            .collect()
    }

    pub fn transpose(&self) -> RestrictedPresentation {
        let nrows = self.row_twists.len();
        let ncols = self.col_twists.len();
        let matrix = (0..ncols)
            .map(|j| (0..nrows).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        RestrictedPresentation {
            kind: match self.kind {
                PresentationKind::Kernel => PresentationKind::Cokernel,
                PresentationKind::Cokernel => PresentationKind::Kernel,
            },
            matrix,
            row_twists: self.col_twists.iter().map(|c| -c).collect(),
            col_twists: self.row_twists.iter().map(|r| -r).collect(),
        }
    }
}

/// Restricts every entry to `line`. Fails when the matrix loses rank at sampled points of the line.
pub fn restrict_presentation(p: &Presentation, line: &LineP2) -> Result<RestrictedPresentation> {
    let r = RestrictedPresentation {
        kind: p.kind,
        matrix: p
            .matrix
            .iter()
            .map(|row| row.iter().map(|f| line.restrict(f)).collect())
            .collect(),
        row_twists: p.row_twists.clone(),
        col_twists: p.col_twists.clone(),
    };
    let full = p.full_rank();
    for (l, m) in [(1, 0), (0, 1), (2, 3), (-5, 7)] {
        let rows = r.evaluate(&[Scalar::from(l), Scalar::from(m)]);
        if linalg::rank(&rows, p.col_twists.len()) == full {
            return Ok(r);
        }
    }
    Err(Error::DegenerateOnLine)
}
