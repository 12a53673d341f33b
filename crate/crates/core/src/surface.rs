//! Symplectic model of a closed oriented surface.
//!
//! The homology basis is ordered `(a_1, b_1, a_2, b_2, ..., a_g, b_g)` with
//! `<a_i, b_i> = +1`; the interleaving makes the handle split of an extension
//! a contiguous coordinate split. Curve classes carry homological data plus a
//! separating tag only — a separating curve is nullhomologous, a
//! nonseparating one is a primitive vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntMatrix;

/// Largest supported genus; matrices stay within 128x128.
pub const MAX_GENUS: usize = 64;

/// Closed oriented surface of genus at least one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Surface {
    genus: usize,
}

impl Surface {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 || genus > MAX_GENUS {
            return Err(Error::GenusOutOfRange { genus });
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of first homology, `2g`.
    pub fn h1_rank(&self) -> usize {
        2 * self.genus
    }

    pub fn symplectic_form(&self) -> IntMatrix {
        standard_symplectic_form(self.genus).expect("genus already validated")
    }
}

/// The `2g x 2g` intersection form in the interleaved basis: block diagonal
/// with `g` copies of `[[0, 1], [-1, 0]]`.
pub fn standard_symplectic_form(genus: usize) -> Result<IntMatrix> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(Error::GenusOutOfRange { genus });
    }
    Ok(IntMatrix::from_fn(2 * genus, 2 * genus, |r, c| {
        if r / 2 != c / 2 {
            BigInt::zero()
        } else if r % 2 == 0 && c % 2 == 1 {
            BigInt::one()
        } else if r % 2 == 1 && c % 2 == 0 {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// A curve on a surface, remembered only through its homology class and
/// whether it separates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveClass {
    surface: Surface,
    homology: Vec<BigInt>,
    separating: bool,
    label: Option<String>,
}

impl CurveClass {
    /// Nonseparating class; the vector must be primitive.
    pub fn nonseparating(surface: Surface, homology: Vec<BigInt>) -> Result<Self> {
        if homology.len() != surface.h1_rank() {
            return Err(Error::HomologyLength {
                expected: surface.h1_rank(),
                found: homology.len(),
            });
        }
        let gcd = homology
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !gcd.is_one() {
            return Err(Error::NotPrimitive);
        }
        Ok(Self {
            surface,
            homology,
            separating: false,
            label: None,
        })
    }

    /// Separating class: nullhomologous by definition.
    pub fn separating(surface: Surface) -> Self {
        Self {
            surface,
            homology: vec![BigInt::zero(); surface.h1_rank()],
            separating: true,
            label: None,
        }
    }

    /// Reconstructs a class from serialized parts, enforcing the invariants.
    pub fn from_parts(
        surface: Surface,
        homology: Vec<BigInt>,
        separating: bool,
        label: Option<String>,
    ) -> Result<Self> {
        let mut class = if separating {
            if homology.len() != surface.h1_rank() {
                return Err(Error::HomologyLength {
                    expected: surface.h1_rank(),
                    found: homology.len(),
                });
            }
            if homology.iter().any(|v| !v.is_zero()) {
                return Err(Error::SeparatingNonzero);
            }
            Self::separating(surface)
        } else {
            Self::nonseparating(surface, homology)?
        };
        class.label = label;
        Ok(class)
    }

    /// The basis curve `a_i` (1-based).
    pub fn generator_a(surface: Surface, i: usize) -> Result<Self> {
        Self::generator(surface, i, 0, 'a')
    }

    /// The basis curve `b_i` (1-based).
    pub fn generator_b(surface: Surface, i: usize) -> Result<Self> {
        Self::generator(surface, i, 1, 'b')
    }

    fn generator(surface: Surface, i: usize, offset: usize, kind: char) -> Result<Self> {
        if i == 0 || i > surface.genus() {
            return Err(Error::UnknownGenerator {
                name: format!("{kind}{i}"),
                genus: surface.genus(),
            });
        }
        let mut homology = vec![BigInt::zero(); surface.h1_rank()];
        homology[2 * (i - 1) + offset] = BigInt::one();
        Ok(Self {
            surface,
            homology,
            separating: false,
            label: Some(format!("{kind}{i}")),
        })
    }

    /// Parses a standard generator name such as `a1` or `b3`.
    pub fn standard_generator(surface: Surface, name: &str) -> Result<Self> {
        let err = || Error::UnknownGenerator {
            name: name.to_string(),
            genus: surface.genus(),
        };
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(err)?;
        let index: usize = chars.as_str().parse().map_err(|_| err())?;
        match kind {
            'a' => Self::generator_a(surface, index),
            'b' => Self::generator_b(surface, index),
            _ => Err(err()),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn homology(&self) -> &[BigInt] {
        &self.homology
    }

    pub fn is_separating(&self) -> bool {
        self.separating
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `Some("a3")`-style name when the class is a standard basis vector.
    pub fn canonical_name(&self) -> Option<String> {
        if self.separating {
            return None;
        }
        let mut hit = None;
        for (idx, v) in self.homology.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !v.is_one() || hit.is_some() {
                return None;
            }
            hit = Some(idx);
        }
        let idx = hit?;
        let kind = if idx % 2 == 0 { 'a' } else { 'b' };
        Some(format!("{kind}{}", idx / 2 + 1))
    }
}

/// Algebraic intersection number `<x, y> = x^T J y`.
pub fn intersection_number(x: &CurveClass, y: &CurveClass) -> Result<BigInt> {
    if x.surface != y.surface {
        return Err(Error::SurfaceMismatch {
            expected: x.surface.genus(),
            found: y.surface.genus(),
        });
    }
    Ok(pairing(x.homology(), y.homology()))
}

/// The pairing on raw coordinate vectors in the interleaved basis.
pub(crate) fn pairing(x: &[BigInt], y: &[BigInt]) -> BigInt {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = BigInt::zero();
    for i in 0..x.len() / 2 {
        acc += &x[2 * i] * &y[2 * i + 1] - &x[2 * i + 1] * &y[2 * i];
    }
    acc
}

/// Coordinate split of `H_1(F_s)` into the image of a genus-`g_t` subsurface
/// (first `2 g_t` coordinates) and the `delta = g_s - g_t` added handles
/// (last `2 delta` coordinates).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BasisSplit {
    g_s: usize,
    g_t: usize,
}

impl BasisSplit {
    pub fn new(g_s: usize, g_t: usize) -> Result<Self> {
        Surface::new(g_t)?;
        Surface::new(g_s)?;
        if g_s <= g_t {
            return Err(Error::GenusNotLarger { g_s, g_t });
        }
        Ok(Self { g_s, g_t })
    }

    pub fn g_s(&self) -> usize {
        self.g_s
    }

    pub fn g_t(&self) -> usize {
        self.g_t
    }

    pub fn delta(&self) -> usize {
        self.g_s - self.g_t
    }

    pub fn source_surface(&self) -> Surface {
        Surface::new(self.g_s).expect("validated at construction")
    }

    pub fn target_surface(&self) -> Surface {
        Surface::new(self.g_t).expect("validated at construction")
    }

    pub fn v_indices(&self) -> std::ops::Range<usize> {
        0..2 * self.g_t
    }

    pub fn w_indices(&self) -> std::ops::Range<usize> {
        2 * self.g_t..2 * self.g_s
    }
}

/// The standard curves spanning the added handles of a split: `alpha_l` and
/// `beta_l` are the basis curves of handle `g_t + l`, and `gamma_l` is the
/// boundary of a neighborhood of `alpha_l U beta_l` — a separating curve,
/// hence nullhomologous.
#[derive(Clone, Debug)]
pub struct HandleCurves {
    pub alphas: Vec<CurveClass>,
    pub betas: Vec<CurveClass>,
    pub gammas: Vec<CurveClass>,
}

pub fn handle_curve_family(split: &BasisSplit) -> HandleCurves {
    let surface = split.source_surface();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut gammas = Vec::new();
    for l in 1..=split.delta() {
        let handle = split.g_t() + l;
        alphas.push(
            CurveClass::generator_a(surface, handle)
                .expect("handle index within genus")
                .with_label(format!("alpha{l}")),
        );
        betas.push(
            CurveClass::generator_b(surface, handle)
                .expect("handle index within genus")
                .with_label(format!("beta{l}")),
        );
        gammas.push(CurveClass::separating(surface).with_label(format!("gamma{l}")));
    }
    HandleCurves {
        alphas,
        betas,
        gammas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_zero_rejected() {
        assert_eq!(Surface::new(0), Err(Error::GenusOutOfRange { genus: 0 }));
        assert!(standard_symplectic_form(0).is_err());
    }

    #[test]
    fn symplectic_form_torus() {
        let j = standard_symplectic_form(1).unwrap();
        assert_eq!(j.to_rows(), vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(-1), BigInt::from(0)],
        ]);
    }

    #[test]
    fn symplectic_form_genus_two_blocks() {
        let j = standard_symplectic_form(2).unwrap();
        let block = standard_symplectic_form(1).unwrap();
        assert_eq!(j, block.block_diagonal(&block));
    }

    #[test]
    fn symplectic_form_determinant_one() {
        assert_eq!(
            standard_symplectic_form(3).unwrap().determinant().unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn form_is_antisymmetric() {
        let j = standard_symplectic_form(3).unwrap();
        assert_eq!(j.transpose(), j.neg());
    }

    #[test]
    fn intersection_of_dual_pair() {
        let s = Surface::new(2).unwrap();
        let a1 = CurveClass::generator_a(s, 1).unwrap();
        let b1 = CurveClass::generator_b(s, 1).unwrap();
        let a2 = CurveClass::generator_a(s, 2).unwrap();
        assert_eq!(intersection_number(&a1, &b1).unwrap(), BigInt::one());
        assert_eq!(intersection_number(&b1, &a1).unwrap(), BigInt::from(-1));
        assert_eq!(intersection_number(&a1, &a2).unwrap(), BigInt::zero());
        assert_eq!(intersection_number(&a1, &a1).unwrap(), BigInt::zero());
    }

    #[test]
    fn pairing_matches_matrix_form() {
        // <x, y> via the block formula equals x^T J y literally.
        let s = Surface::new(2).unwrap();
        let x = CurveClass::nonseparating(
            s,
            vec![1.into(), 2.into(), BigInt::from(-3), 1.into()],
        )
        .unwrap();
        let y = CurveClass::nonseparating(
            s,
            vec![0.into(), 5.into(), 2.into(), 7.into()],
        )
        .unwrap();
        let j = s.symplectic_form();
        let jy = j.mul_vec(y.homology()).unwrap();
        let explicit: BigInt = x
            .homology()
            .iter()
            .zip(&jy)
            .map(|(a, b)| a * b)
            .sum();
        assert_eq!(intersection_number(&x, &y).unwrap(), explicit);
    }

    #[test]
    fn pairing_antisymmetric_on_all_basis_pairs() {
        let s = Surface::new(3).unwrap();
        let mut basis = Vec::new();
        for i in 1..=3 {
            basis.push(CurveClass::generator_a(s, i).unwrap());
            basis.push(CurveClass::generator_b(s, i).unwrap());
        }
        for x in &basis {
            for y in &basis {
                let xy = intersection_number(x, y).unwrap();
                let yx = intersection_number(y, x).unwrap();
                assert_eq!(xy, -yx);
            }
        }
    }

    #[test]
    fn intersection_requires_same_surface() {
        let a = CurveClass::generator_a(Surface::new(1).unwrap(), 1).unwrap();
        let b = CurveClass::generator_a(Surface::new(2).unwrap(), 1).unwrap();
        assert!(intersection_number(&a, &b).is_err());
    }

    #[test]
    fn nonseparating_must_be_primitive() {
        let s = Surface::new(1).unwrap();
        assert_eq!(
            CurveClass::nonseparating(s, vec![2.into(), 0.into()]),
            Err(Error::NotPrimitive)
        );
        assert_eq!(
            CurveClass::nonseparating(s, vec![0.into(), 0.into()]),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn separating_parts_must_be_zero() {
        let s = Surface::new(1).unwrap();
        assert_eq!(
            CurveClass::from_parts(s, vec![1.into(), 0.into()], true, None),
            Err(Error::SeparatingNonzero)
        );
    }

    #[test]
    fn generator_names() {
        let s = Surface::new(3).unwrap();
        let b3 = CurveClass::standard_generator(s, "b3").unwrap();
        assert_eq!(b3.canonical_name().as_deref(), Some("b3"));
        assert!(CurveClass::standard_generator(s, "a4").is_err());
        assert!(CurveClass::standard_generator(s, "c1").is_err());
        assert!(CurveClass::standard_generator(s, "a0").is_err());
    }

    #[test]
    fn split_indices_partition() {
        let split = BasisSplit::new(4, 2).unwrap();
        assert_eq!(split.v_indices(), 0..4);
        assert_eq!(split.w_indices(), 4..8);
        assert_eq!(split.delta(), 2);
        assert!(BasisSplit::new(2, 2).is_err());
    }

    #[test]
    fn handle_curves_genus_one_to_two() {
        let split = BasisSplit::new(2, 1).unwrap();
        let fam = handle_curve_family(&split);
        assert_eq!(fam.alphas.len(), 1);
        // alpha_1 is the a_2 basis vector
        assert_eq!(
            fam.alphas[0].homology(),
            &[0.into(), 0.into(), 1.into(), BigInt::zero()]
        );
        assert_eq!(
            fam.betas[0].homology(),
            &[0.into(), 0.into(), 0.into(), BigInt::one()]
        );
        assert!(fam.gammas[0].is_separating());
        assert!(fam.gammas[0].homology().iter().all(Zero::is_zero));
    }

    #[test]
    fn handle_curves_pairings() {
        let split = BasisSplit::new(4, 2).unwrap();
        let fam = handle_curve_family(&split);
        for l in 0..2 {
            assert_eq!(
                intersection_number(&fam.alphas[l], &fam.betas[l]).unwrap(),
                BigInt::one()
            );
            for m in 0..2 {
                if l != m {
                    assert!(intersection_number(&fam.alphas[l], &fam.betas[m])
                        .unwrap()
                        .is_zero());
                }
                assert!(intersection_number(&fam.alphas[l], &fam.alphas[m])
                    .unwrap()
                    .is_zero());
                assert!(intersection_number(&fam.gammas[l], &fam.alphas[m])
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn handle_curves_assemble_standard_form() {
        // The pairing matrix of (alpha_1, beta_1, ..., alpha_d, beta_d) is the
        // genus-delta standard form.
        let split = BasisSplit::new(4, 2).unwrap();
        let fam = handle_curve_family(&split);
        let ordered = [
            &fam.alphas[0],
            &fam.betas[0],
            &fam.alphas[1],
            &fam.betas[1],
        ];
        let pairing_matrix = IntMatrix::from_fn(4, 4, |r, c| {
            intersection_number(ordered[r], ordered[c]).unwrap()
        });
        assert_eq!(pairing_matrix, standard_symplectic_form(2).unwrap());
    }
}
