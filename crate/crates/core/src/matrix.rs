//! Dense matrices over an exact integer scalar.
//!
//! Everything here is exact: determinants and ranks go through fraction-free
//! (Bareiss) elimination, characteristic polynomials through
//! Faddeev–LeVerrier, whose interior divisions are exact over the integers.
//! Matrices are immutable values; every operation returns a fresh matrix.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Row-major dense matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from a row-major entry list.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::BadEntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 || rows[0].is_empty() {
            return Err(Error::EmptyMatrix {
                rows: nrows,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        let ncols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries as a row-major nested vector, mostly for serialization.
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.at(r, c).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("add", other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() + other.at(r, c).clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("sub", other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() - other.at(r, c).clone()
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "mul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(r, k).clone() * other.at(k, c).clone();
            }
            acc
        }))
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                op: "mul_vec",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn trace(&self) -> Result<T> {
        self.check_square()?;
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.at(i, i).clone();
        }
        Ok(acc)
    }

    /// diag(self, other): the two blocks on the diagonal, zero off-blocks.
    pub fn block_diagonal(&self, other: &Self) -> Self {
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |r, c| match (r < self.rows, c < self.cols) {
                (true, true) => self.at(r, c).clone(),
                (false, false) => other.at(r - self.rows, c - self.cols).clone(),
                _ => T::zero(),
            },
        )
    }

    /// Copies the rectangle `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 < r1 && r1 <= self.rows && c0 < c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    /// Exact determinant: cofactor expansion up to 4x4, Bareiss
    /// fraction-free elimination beyond.
    pub fn determinant(&self) -> Result<T> {
        self.check_square()?;
        if self.rows <= 4 {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    fn det_cofactor(&self) -> T {
        let n = self.rows;
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = T::zero();
        for c in 0..n {
            if self.at(0, c).is_zero() {
                continue;
            }
            let minor = Self::from_fn(n - 1, n - 1, |i, j| {
                self.at(i + 1, if j < c { j } else { j + 1 }).clone()
            });
            let term = self.at(0, c).clone() * minor.det_cofactor();
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn det_bareiss(&self) -> T {
        let n = self.rows;
        let mut m = self.to_rows();
        let mut prev = T::one();
        let mut sign_flip = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                    debug_assert!((num.clone() % prev.clone()).is_zero());
                    m[i][j] = num / prev.clone();
                }
                m[i][k] = T::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            -det
        } else {
            det
        }
    }

    /// Rank over the rationals, by fraction-free Gaussian elimination.
    pub fn rational_rank(&self) -> usize {
        let mut m = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = T::one();
        let mut pivot_row = 0;
        for col in 0..cols {
            let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, r);
            for i in pivot_row + 1..rows {
                for j in col + 1..cols {
                    let num = m[i][j].clone() * m[pivot_row][col].clone()
                        - m[i][col].clone() * m[pivot_row][j].clone();
                    debug_assert!((num.clone() % prev.clone()).is_zero());
                    m[i][j] = num / prev.clone();
                }
                m[i][col] = T::zero();
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
            rank += 1;
            if pivot_row == rows {
                break;
            }
        }
        rank
    }

    /// Monic characteristic polynomial `det(tI - M)` by Faddeev–LeVerrier.
    ///
    /// The trace divisions in the recurrence are exact over the integers, so
    /// the computation never leaves the scalar ring.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial<T>> {
        self.check_square()?;
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = self.clone();
        let mut c = -m.trace()?;
        coeffs[n - 1] = c.clone();
        for k in 2..=n {
            let shifted = Self::from_fn(n, n, |r, col| {
                if r == col {
                    m.at(r, col).clone() + c.clone()
                } else {
                    m.at(r, col).clone()
                }
            });
            m = self.mul(&shifted)?;
            let k_scalar = T::from_usize(k).expect("small integer fits any scalar");
            c = -m.trace()? / k_scalar;
            coeffs[n - k] = c.clone();
        }
        Ok(Polynomial::new(coeffs))
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_same_shape(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Dimension {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            })
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.entries[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_identity() {
        assert_eq!(Matrix::<BigInt>::identity(2).determinant().unwrap(), 1.into());
    }

    #[test]
    fn determinant_small_cases() {
        // det [[-1,-1],[-1,0]] by cofactor expansion: (-1)(0) - (-1)(-1) = -1
        assert_eq!(
            m(vec![vec![-1, -1], vec![-1, 0]]).determinant().unwrap(),
            BigInt::from(-1)
        );
        // 2*8 - 4*6 = -8
        assert_eq!(
            m(vec![vec![2, 4], vec![6, 8]]).determinant().unwrap(),
            BigInt::from(-8)
        );
    }

    #[test]
    fn determinant_rejects_non_square() {
        let r = m(vec![vec![1, 2, 3], vec![4, 5, 6]]).determinant();
        assert_eq!(r, Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn determinant_bareiss_matches_cofactor() {
        // 5x5 goes through Bareiss; its 4x4 leading minor through cofactor.
        let a = m(vec![
            vec![2, -1, 0, 3, 1],
            vec![4, 0, -2, 1, 5],
            vec![-3, 2, 1, 0, -1],
            vec![1, 1, 1, 1, 1],
            vec![0, -2, 3, 4, 2],
        ]);
        let det5 = a.determinant().unwrap();
        // Laplace expansion along the last column using 4x4 cofactor minors.
        let mut expect = BigInt::from(0);
        for r in 0..5 {
            let minor = Matrix::from_fn(4, 4, |i, j| {
                a.at(if i < r { i } else { i + 1 }, j).clone()
            });
            let term = a.at(r, 4).clone() * minor.determinant().unwrap();
            if (r + 4) % 2 == 0 {
                expect += term;
            } else {
                expect -= term;
            }
        }
        assert_eq!(det5, expect);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<BigInt>::zero(3, 3).rational_rank(), 0);
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).rational_rank(), 1);
        // I - A for A = [[2,1],[1,1]]: determinant -1, hence full rank.
        assert_eq!(m(vec![vec![-1, -1], vec![-1, 0]]).rational_rank(), 2);
    }

    #[test]
    fn rank_rectangular() {
        assert_eq!(m(vec![vec![1, 0, 2], vec![0, 1, 3]]).rational_rank(), 2);
        assert_eq!(m(vec![vec![0, 0, 0], vec![0, 7, 0]]).rational_rank(), 1);
    }

    #[test]
    fn char_poly_examples() {
        // trace 3, det 1
        let p = m(vec![vec![2, 1], vec![1, 1]])
            .characteristic_polynomial()
            .unwrap();
        assert_eq!(p.coeffs_vec(), vec![1.into(), BigInt::from(-3), 1.into()]);
        // (t-1)^2
        let p = Matrix::<BigInt>::identity(2)
            .characteristic_polynomial()
            .unwrap();
        assert_eq!(p.coeffs_vec(), vec![1.into(), BigInt::from(-2), 1.into()]);
        // trace 0, det 1
        let p = m(vec![vec![0, 1], vec![-1, 0]])
            .characteristic_polynomial()
            .unwrap();
        assert_eq!(p.coeffs_vec(), vec![1.into(), 0.into(), 1.into()]);
    }

    #[test]
    fn char_poly_rejects_non_square() {
        let r = m(vec![vec![1, 2, 3], vec![4, 5, 6]]).characteristic_polynomial();
        assert_eq!(r, Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn char_poly_constant_term_and_trace() {
        let a = m(vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let p = a.characteristic_polynomial().unwrap();
        // p(0) = (-1)^n det, second-highest coefficient = -trace
        let det = a.determinant().unwrap();
        assert_eq!(p.coeff(0), -det);
        assert_eq!(p.coeff(2), -a.trace().unwrap());
    }

    #[test]
    fn block_diagonal_shape() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let b = m(vec![vec![5]]);
        let d = a.block_diagonal(&b);
        assert_eq!(d.rows(), 3);
        assert_eq!(*d.at(2, 2), BigInt::from(5));
        assert_eq!(*d.at(0, 2), BigInt::from(0));
        assert_eq!(*d.at(2, 0), BigInt::from(0));
    }

    #[test]
    fn mul_dimension_error() {
        let a = m(vec![vec![1, 2]]);
        let b = m(vec![vec![1, 2]]);
        assert!(matches!(a.mul(&b), Err(Error::Dimension { .. })));
    }
}
