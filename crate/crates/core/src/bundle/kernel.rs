//! Minimal kernel bases of binary-form matrices, degree by degree.

use super::linalg;
use super::presentation::RestrictedPresentation;
use crate::algebra::{BinaryForm, Scalar};
use crate::error::{Error, Result};

/// A kernel generator: a column of binary forms, entry `j` of degree `d + c_j`, spanning a summand
/// `O(-d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelColumn {
    /// The twist `-d` of the summand generated by this column.
    pub twist: i64,
    pub entries: Vec<BinaryForm>,
}

fn monomials(degree: i64) -> Vec<[u32; 2]> {
    if degree < 0 {
        return Vec::new();
    }
    let n = degree as u32;
    (0..=n).rev().map(|a| [a, n - a]).collect()
}

/// Unknowns: coefficients of column entry `j` in degree `d + c_j`.
struct Layout {
    offsets: Vec<usize>,
    monomials: Vec<Vec<[u32; 2]>>,
    len: usize,
}

impl Layout {
    fn new(col_twists: &[i64], d: i64) -> Self {
        let mut offsets = Vec::new();
        let mut mons = Vec::new();
        let mut len = 0;
        for c in col_twists {
            offsets.push(len);
            let m = monomials(d + c);
            len += m.len();
            mons.push(m);
        }
        Layout {
            offsets,
            monomials: mons,
            len,
        }
    }

    fn to_column(&self, v: &[Scalar], col_twists: &[i64], d: i64) -> Vec<BinaryForm> {
        (0..col_twists.len())
            .map(|j| {
                let deg = (d + col_twists[j]).max(0) as u32;
                self.monomials[j]
                    .iter()
                    .enumerate()
                    .fold(BinaryForm::zero(deg), |acc, (k, m)| {
                        acc.checked_add(&BinaryForm::monomial(v[self.offsets[j] + k].clone(), *m))
                            .unwrap()
                    })
            })
            .collect()
    }

    fn to_vector(&self, column: &[BinaryForm]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.len];
        for (j, f) in column.iter().enumerate() {
            for (k, m) in self.monomials[j].iter().enumerate() {
                v[self.offsets[j] + k] = f.coefficient(*m);
            }
        }
        v
    }
}

/// The linear system `M v = 0` in degree `d`.
fn system(m: &RestrictedPresentation, layout: &Layout, d: i64) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::new();
    for (i, r) in m.row_twists.iter().enumerate() {
        let targets = monomials(d + r);
        let mut block = vec![vec![Scalar::zero(); layout.len]; targets.len()];
        for (j, entry) in m.matrix[i].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            for (k, mon) in layout.monomials[j].iter().enumerate() {
                for (e, c) in entry.terms() {
                    let prod = [e[0] + mon[0], e[1] + mon[1]];
                    let row = targets.iter().position(|t| *t == prod).expect("degree bookkeeping");
                    let col = layout.offsets[j] + k;
                    block[row][col] = &block[row][col] + c;
                }
            }
        }
        rows.extend(block);
    }
    rows
}

fn multiples(gens: &[KernelColumn], d: i64, layout: &Layout) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for g in gens {
        for m in monomials(d + g.twist) {
            let mono = BinaryForm::monomial(Scalar::one(), m);
            let col: Vec<BinaryForm> = g.entries.iter().map(|f| &mono * f).collect();
            out.push(layout.to_vector(&col));
        }
    }
    out
}

/// A minimal generating set of the kernel of a restricted kernel-kind matrix, by increasing
/// degree. The result has exactly `ncols - nrows` columns.
pub fn minimal_kernel_basis(m: &RestrictedPresentation) -> Result<Vec<KernelColumn>> {
    let expected = m.col_twists.len().saturating_sub(m.row_twists.len());
    if expected == 0 {
        return Err(Error::NotExpectedRank { expected });
    }
    let cmax = *m.col_twists.iter().max().unwrap();
    let c1: i64 = m.col_twists.iter().sum::<i64>() - m.row_twists.iter().sum::<i64>();
    let first = -cmax;
    let last = (expected as i64 - 1) * cmax - c1;
    let mut gens: Vec<KernelColumn> = Vec::new();
    for d in first..=last {
        let layout = Layout::new(&m.col_twists, d);
        if layout.len == 0 {
            continue;
        }
        let null = linalg::nullspace(&system(m, &layout, d), layout.len);
        let mut span = multiples(&gens, d, &layout);
        let mut r = linalg::rank(&span, layout.len);
        for v in null {
            if gens.len() == expected {
                break;
            }
            span.push(v.clone());
            let r2 = linalg::rank(&span, layout.len);
            if r2 > r {
                r = r2;
                gens.push(KernelColumn {
                    twist: -d,
                    entries: layout.to_column(&v, &m.col_twists, d),
                });
            } else {
                span.pop();
            }
        }
        if gens.len() >= expected {
            break;
        }
    }
    if gens.len() != expected {
        return Err(Error::NotExpectedRank { expected });
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::presentation::PresentationKind;

    fn lam() -> BinaryForm {
        BinaryForm::var(0)
    }
    fn mu() -> BinaryForm {
        BinaryForm::var(1)
    }

    fn kernel(row: Vec<BinaryForm>, cols: Vec<i64>) -> RestrictedPresentation {
        RestrictedPresentation {
            kind: PresentationKind::Kernel,
            matrix: vec![row],
            row_twists: vec![0],
            col_twists: cols,
        }
    }

    fn apply(m: &RestrictedPresentation, col: &KernelColumn) -> bool {
        m.matrix.iter().all(|row| {
            row.iter()
                .zip(&col.entries)
                .fold(BinaryForm::zero(0), |acc, (a, b)| {
                    let p = a * b;
                    if acc.is_zero() {
                        p
                    } else {
                        acc.checked_add(&p).unwrap()
                    }
                })
                .is_zero()
        })
    }

    #[test]
    fn syzygy_of_two_linears() {
        let m = kernel(vec![lam(), mu()], vec![-1, -1]);
        let basis = minimal_kernel_basis(&m).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].twist, -2);
        assert!(apply(&m, &basis[0]));
    }

    #[test]
    fn euler_on_z0() {
        let m = kernel(vec![lam(), mu(), BinaryForm::zero(1)], vec![-1, -1, -1]);
        let basis = minimal_kernel_basis(&m).unwrap();
        let twists: Vec<i64> = basis.iter().map(|c| c.twist).collect();
        assert_eq!(twists, vec![-1, -2]);
        assert!(basis.iter().all(|c| apply(&m, c)));
    }

    #[test]
    fn quadrics() {
        let m = kernel(vec![lam().pow(2), &lam() * &mu(), mu().pow(2)], vec![-2, -2, -2]);
        let basis = minimal_kernel_basis(&m).unwrap();
        let twists: Vec<i64> = basis.iter().map(|c| c.twist).collect();
        assert_eq!(twists, vec![-3, -3]);
        assert!(basis.iter().all(|c| apply(&m, c)));
    }

    #[test]
    fn no_kernel_expected() {
        let m = kernel(vec![lam()], vec![-1]);
        assert_eq!(minimal_kernel_basis(&m).unwrap_err(), Error::NotExpectedRank { expected: 0 });
    }
}
