//! Smith normal form over the integers, with unimodular witnesses.
//!
//! `left * original * right` equals the diagonal embedding of the invariant
//! factors. Pivoting picks the minimal-absolute-value nonzero entry of the
//! remaining submatrix, scanning rows then columns, so witnesses are
//! reproducible. Diagonal entries are normalized nonnegative; signs are
//! absorbed into the left witness.

use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Diagonalization `left * m * right = diag(d_1, ..., d_r, 0, ...)` with
/// `d_i > 0`, `d_i | d_{i+1}` and `|det(left)| = |det(right)| = 1`.
///
/// `diagonal` stores only the nonzero invariant factors, so its length is
/// the rank of `m`; a zero matrix yields an empty diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: Scalar> fmt::Debug for SmithForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithForm")
            .field("diagonal", &self.diagonal)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The invariant factors embedded in a `rows x cols` diagonal matrix.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |r, c| {
            if r == c && r < self.diagonal.len() {
                self.diagonal[r].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Checks every invariant against the matrix this form was computed from.
    pub fn verify(&self, original: &Matrix<T>) -> bool {
        let product = self
            .left
            .mul(original)
            .and_then(|lm| lm.mul(&self.right))
            .expect("witness dimensions match the original");
        if product != self.diagonal_matrix(original.rows(), original.cols()) {
            return false;
        }
        if self.diagonal.iter().any(|d| !d.is_positive()) {
            return false;
        }
        if self
            .diagonal
            .windows(2)
            .any(|w| !(w[1].clone() % w[0].clone()).is_zero())
        {
            return false;
        }
        let unimodular = |m: &Matrix<T>| {
            m.determinant()
                .map(|d| d.abs() == T::one())
                .unwrap_or(false)
        };
        unimodular(&self.left) && unimodular(&self.right)
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn smith_normal_form(&self) -> SmithForm<T> {
        let (rows, cols) = (self.rows(), self.cols());
        let mut w = self.to_rows();
        let mut left = Matrix::<T>::identity(rows).to_rows();
        let mut right = Matrix::<T>::identity(cols).to_rows();

        let mut diagonal = Vec::new();
        for t in 0..rows.min(cols) {
            let placed = reduce_pivot(&mut w, &mut left, &mut right, t);
            if !placed {
                break;
            }
            if w[t][t].is_negative() {
                negate_row(&mut w, t);
                negate_row(&mut left, t);
            }
            diagonal.push(w[t][t].clone());
        }

        let form = SmithForm {
            diagonal,
            left: Matrix::from_rows(left).expect("square witness"),
            right: Matrix::from_rows(right).expect("square witness"),
        };
        debug_assert!(form.verify(self));
        form
    }
}

/// Moves the minimal-absolute-value nonzero entry of `w[t.., t..]` to the
/// pivot slot, clears its row and column, and enforces that the pivot
/// divides the rest of the submatrix. Returns false when the submatrix is
/// already zero.
fn reduce_pivot<T: Scalar>(
    w: &mut [Vec<T>],
    left: &mut [Vec<T>],
    right: &mut [Vec<T>],
    t: usize,
) -> bool {
    let rows = w.len();
    let cols = w[0].len();
    loop {
        let Some((pr, pc)) = min_abs_entry(w, t) else {
            return false;
        };
        if pr != t {
            w.swap(t, pr);
            left.swap(t, pr);
        }
        if pc != t {
            swap_cols(w, t, pc);
            swap_cols(right, t, pc);
        }

        // Euclidean steps: leave remainders in place of the cleared entries;
        // any nonzero remainder is smaller than the pivot, so re-pick.
        let mut dirty = false;
        for i in t + 1..rows {
            if w[i][t].is_zero() {
                continue;
            }
            let q = w[i][t].clone() / w[t][t].clone();
            if !q.is_zero() {
                row_sub_mul(w, i, t, &q);
                row_sub_mul(left, i, t, &q);
            }
            dirty |= !w[i][t].is_zero();
        }
        for j in t + 1..cols {
            if w[t][j].is_zero() {
                continue;
            }
            let q = w[t][j].clone() / w[t][t].clone();
            if !q.is_zero() {
                col_sub_mul(w, j, t, &q);
                col_sub_mul(right, j, t, &q);
            }
            dirty |= !w[t][j].is_zero();
        }
        if dirty {
            continue;
        }

        // Divisibility sweep: fold a bad row into the pivot row; the next
        // Euclidean pass shrinks the pivot to a common divisor.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(w[i][j].clone() % w[t][t].clone()).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        match offender {
            Some(i) => {
                row_add(w, t, i);
                row_add(left, t, i);
            }
            None => return true,
        }
    }
}

fn min_abs_entry<T: Scalar>(w: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in w.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.abs() < w[bi][bj].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row<T: Scalar>(m: &mut [Vec<T>], r: usize) {
    for v in m[r].iter_mut() {
        *v = -v.clone();
    }
}

/// `row_i -= q * row_t`
fn row_sub_mul<T: Scalar>(m: &mut [Vec<T>], i: usize, t: usize, q: &T) {
    for j in 0..m[i].len() {
        let delta = q.clone() * m[t][j].clone();
        m[i][j] = m[i][j].clone() - delta;
    }
}

/// `col_j -= q * col_t`
fn col_sub_mul<T: Scalar>(m: &mut [Vec<T>], j: usize, t: usize, q: &T) {
    for row in m.iter_mut() {
        let delta = q.clone() * row[t].clone();
        row[j] = row[j].clone() - delta;
    }
}

/// `row_t += row_i`
fn row_add<T: Scalar>(m: &mut [Vec<T>], t: usize, i: usize) {
    for j in 0..m[i].len() {
        let v = m[i][j].clone();
        m[t][j] = m[t][j].clone() + v;
    }
}
