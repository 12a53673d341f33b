//! Monodromies: Dehn-twist words and their action on first homology.
//!
//! Twist convention, fixed once: the right-handed twist along a curve class
//! `c` acts on homology by the symplectic transvection
//!
//! ```text
//! x  |->  x + power * <x, c> * c
//! ```
//!
//! With the interleaved basis and `<a_1, b_1> = +1` this makes the twist
//! along `a_1` on the torus the matrix `[[1, -1], [0, 1]]` (it sends `b_1`
//! to `b_1 - a_1`). Nondegeneracy and rank statements downstream are
//! insensitive to the handedness choice.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::surface::{CurveClass, Surface};
use crate::IntMatrix;

/// One twist `tau_c^power` in a word; the power is nonzero by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistLetter {
    curve: CurveClass,
    power: i64,
}

impl TwistLetter {
    pub fn new(curve: CurveClass, power: i64) -> Result<Self> {
        if power == 0 {
            return Err(Error::ZeroTwistPower);
        }
        Ok(Self { curve, power })
    }

    pub fn curve(&self) -> &CurveClass {
        &self.curve
    }

    pub fn power(&self) -> i64 {
        self.power
    }

    pub fn inverse(&self) -> Self {
        Self {
            curve: self.curve.clone(),
            power: -self.power,
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        transvection_matrix(&self.curve, self.power)
    }
}

/// Homology action of `tau_c^power`: the rank-one update
/// `I + power * c * (Jc)^T`. A separating curve has zero homology class, so
/// its twist acts as the identity.
pub fn transvection_matrix(curve: &CurveClass, power: i64) -> IntMatrix {
    let n = curve.surface().h1_rank();
    let c = curve.homology();
    // (Jc)[2i] = c[2i+1], (Jc)[2i+1] = -c[2i]
    let jc: Vec<BigInt> = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                c[i + 1].clone()
            } else {
                -c[i - 1].clone()
            }
        })
        .collect();
    let k = BigInt::from(power);
    IntMatrix::from_fn(n, n, |i, j| {
        let v = &k * &jc[j] * &c[i];
        if i == j {
            v + BigInt::one()
        } else {
            v
        }
    })
}

/// A monodromy: its symplectic action on `H_1`, optionally together with a
/// Dehn-twist word inducing it. Letters are listed in application order
/// (first letter applied first), so the matrix is the product of the
/// letters' transvections with the last letter leftmost.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MappingClass {
    surface: Surface,
    word: Option<Vec<TwistLetter>>,
    matrix: IntMatrix,
}

impl MappingClass {
    pub fn identity(surface: Surface) -> Self {
        Self {
            surface,
            word: Some(Vec::new()),
            matrix: IntMatrix::identity(surface.h1_rank()),
        }
    }

    /// Wraps an explicit homology matrix, which must be symplectic.
    pub fn from_matrix(surface: Surface, matrix: IntMatrix) -> Result<Self> {
        let f = Self::from_matrix_unchecked(surface, matrix)?;
        if !f.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(f)
    }

    /// Wraps a matrix without the symplectic check. Meant for verification
    /// paths that re-examine untrusted data and report failures in a
    /// certificate instead of refusing to load.
    pub fn from_matrix_unchecked(surface: Surface, matrix: IntMatrix) -> Result<Self> {
        let n = surface.h1_rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension {
                op: "monodromy matrix",
                lhs_rows: n,
                lhs_cols: n,
                rhs_rows: matrix.rows(),
                rhs_cols: matrix.cols(),
            });
        }
        Ok(Self {
            surface,
            word: None,
            matrix,
        })
    }

    /// Builds the monodromy of a twist word.
    pub fn from_twist_word(surface: Surface, word: Vec<TwistLetter>) -> Result<Self> {
        let matrix = word_matrix(surface, &word)?;
        Ok(Self {
            surface,
            word: Some(word),
            matrix,
        })
    }

    /// Accepts a word together with an explicit matrix and cross-checks that
    /// the word induces exactly that matrix.
    pub fn from_word_and_matrix(
        surface: Surface,
        word: Vec<TwistLetter>,
        matrix: IntMatrix,
    ) -> Result<Self> {
        let computed = word_matrix(surface, &word)?;
        if computed != matrix {
            return Err(Error::WordMatrixDisagree);
        }
        Ok(Self {
            surface,
            word: Some(word),
            matrix,
        })
    }

    pub(crate) fn from_parts_unchecked(
        surface: Surface,
        word: Option<Vec<TwistLetter>>,
        matrix: IntMatrix,
    ) -> Self {
        Self {
            surface,
            word,
            matrix,
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> Option<&[TwistLetter]> {
        self.word.as_deref()
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace().expect("monodromy matrices are square")
    }

    /// `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        let j = self.surface.symplectic_form();
        self.matrix
            .transpose()
            .mul(&j)
            .and_then(|mj| mj.mul(&self.matrix))
            .map(|m| m == j)
            .unwrap_or(false)
    }

    /// `self . other` — apply `other` first; the matrix is
    /// `self.matrix * other.matrix`. Words concatenate when both are known.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch {
                expected: self.surface.genus(),
                found: other.surface.genus(),
            });
        }
        let matrix = self.matrix.mul(&other.matrix)?;
        let word = match (&self.word, &other.word) {
            (Some(mine), Some(first)) => {
                let mut letters = first.clone();
                letters.extend(mine.iter().cloned());
                Some(letters)
            }
            _ => None,
        };
        Ok(Self {
            surface: self.surface,
            word,
            matrix,
        })
    }

    /// Inverse monodromy. On matrices `M^{-1} = -J M^T J`; on words, the
    /// letters reverse with negated powers.
    pub fn inverse(&self) -> Self {
        let j = self.surface.symplectic_form();
        let matrix = j
            .mul(&self.matrix.transpose())
            .and_then(|m| m.mul(&j))
            .expect("square matrices of equal size")
            .neg();
        debug_assert!(matrix
            .mul(&self.matrix)
            .map(|m| m.is_identity())
            .unwrap_or(false));
        let word = self.word.as_ref().map(|letters| {
            letters.iter().rev().map(TwistLetter::inverse).collect()
        });
        Self {
            surface: self.surface,
            word,
            matrix,
        }
    }
}

fn word_matrix(surface: Surface, word: &[TwistLetter]) -> Result<IntMatrix> {
    let n = surface.h1_rank();
    let mut acc = IntMatrix::identity(n);
    for letter in word {
        if letter.curve().surface() != surface {
            return Err(Error::SurfaceMismatch {
                expected: surface.genus(),
                found: letter.curve().surface().genus(),
            });
        }
        // Letters apply in list order, so each new letter multiplies on the left.
        acc = letter.matrix().mul(&acc)?;
    }
    Ok(acc)
}

/// Convenience for tests and callers assembling words by hand.
pub fn twist(curve: &CurveClass, power: i64) -> Result<TwistLetter> {
    TwistLetter::new(curve.clone(), power)
}
