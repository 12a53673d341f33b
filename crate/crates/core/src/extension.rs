//! Extending a monodromy to a higher-genus surface at the homology level.
//!
//! Given a genus-`g_t` monodromy `f_t` and a target genus `g_s > g_t`, the
//! extension acts block-diagonally on the interleaved basis: the original
//! action on the first `2 g_t` coordinates and a chosen block `A` on the
//! `2 delta` coordinates of the added handles, `delta = g_s - g_t`. A pinch
//! collapsing the added handles then intertwines the two actions, which is
//! exactly what a fiber-preserving degree-one map between the mapping tori
//! needs on homology.
//!
//! Three blocks are available:
//!
//! * `delta = 1`: `A = [[2+k, 1+k], [1, 1]]` for `k >= 0`, with
//!   `det(I - A) = -(1+k)`, so the fixed space gains nothing and the first
//!   Betti number of the bundle is preserved.
//! * `delta >= 2`: `A = U * (-I)` where `U` is the unipotent action of
//!   twists along the handle curves `alpha_l`; `I - A = I + U` is upper
//!   triangular with diagonal 2, so `det(I - A) = 2^(2 delta)`.
//! * naive: `A = I`, which raises the Betti number by `2 delta` — the
//!   negative control showing Betti equality is a genuine constraint.
//!
//! Certificates recompute every claim from scratch rather than trusting
//! construction-time values. One caveat is inherited from the geometry: a
//! pinch pair requires non-homotopic pinch loci, and both loci are
//! separating (nullhomologous) curves, so that condition is invisible on
//! homology and is not part of the certificate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle;
use crate::certify::{certify_pseudo_anosov, PACertificate};
use crate::error::{Error, Result};
use crate::mapping_class::{MappingClass, TwistLetter};
use crate::surface::{handle_curve_family, BasisSplit, CurveClass, Surface};
use crate::IntMatrix;

/// Homology action of a pinch `F_s -> F_t`: projection onto the first
/// `2 g_t` coordinates. Homotopic pinches induce the same projection, so a
/// single map represents both sides of the commuting square.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PinchMap {
    split: BasisSplit,
    matrix: IntMatrix,
}

impl PinchMap {
    pub fn split(&self) -> &BasisSplit {
        &self.split
    }

    /// The `2 g_t x 2 g_s` projection `[I | 0]`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Inclusion of the target summand, the section `[I | 0]^T`.
    pub fn section(&self) -> IntMatrix {
        self.matrix.transpose()
    }
}

pub fn pinch_homology_map(g_s: usize, g_t: usize) -> Result<PinchMap> {
    let split = BasisSplit::new(g_s, g_t)?;
    let matrix = IntMatrix::from_fn(2 * g_t, 2 * g_s, |r, c| {
        if r == c {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    Ok(PinchMap { split, matrix })
}

/// The handle block for `delta = 1`: `[[2+k, 1+k], [1, 1]]`, `k >= 0`.
///
/// Its determinant is 1 and `det(I - A) = -(1+k)`, nonzero for every
/// admissible `k`.
pub fn delta_one_block(k: u64) -> IntMatrix {
    let k = BigInt::from(k);
    IntMatrix::from_rows(vec![
        vec![BigInt::from(2) + &k, BigInt::one() + &k],
        vec![BigInt::one(), BigInt::one()],
    ])
    .expect("2x2 literal")
}

/// The handle block for `delta >= 2`: the unipotent twist action along the
/// handle curves `alpha_l` (one nonzero multiplicity each), composed with
/// `-I`. `I - A = I + U` has determinant `2^(2 delta)`.
pub fn delta_general_block(delta: usize, multiplicities: &[i64]) -> Result<IntMatrix> {
    if delta < 2 {
        return Err(Error::DeltaTooSmall { delta });
    }
    if multiplicities.len() != delta {
        return Err(Error::MultiplicityCount {
            expected: delta,
            found: multiplicities.len(),
        });
    }
    if let Some(index) = multiplicities.iter().position(|&m| m == 0) {
        return Err(Error::ZeroMultiplicity { index });
    }
    let handles = Surface::new(delta)?;
    let mut unipotent = IntMatrix::identity(2 * delta);
    for (l, &m) in multiplicities.iter().enumerate() {
        let alpha = CurveClass::generator_a(handles, l + 1)?;
        let letter = TwistLetter::new(alpha, m)?;
        unipotent = letter.matrix().mul(&unipotent)?;
    }
    Ok(unipotent.neg())
}

/// Which block was chosen, together with its parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlockParameters {
    DeltaOne { k: u64 },
    General { multiplicities: Vec<i64> },
    Naive,
}

impl BlockParameters {
    pub fn variant_name(&self) -> &'static str {
        match self {
            BlockParameters::DeltaOne { .. } => "equal-betti-delta-one",
            BlockParameters::General { .. } => "equal-betti-general",
            BlockParameters::Naive => "naive",
        }
    }

    pub fn is_equal_betti(&self) -> bool {
        !matches!(self, BlockParameters::Naive)
    }

    /// Rebuilds the block the parameters describe.
    pub fn block(&self, delta: usize) -> Result<IntMatrix> {
        match self {
            BlockParameters::DeltaOne { k } => {
                if delta != 1 {
                    return Err(Error::BadParameter {
                        name: "k",
                        reason: format!("delta-one block used with delta = {delta}"),
                    });
                }
                Ok(delta_one_block(*k))
            }
            BlockParameters::General { multiplicities } => {
                delta_general_block(delta, multiplicities)
            }
            BlockParameters::Naive => Ok(IntMatrix::identity(2 * delta)),
        }
    }
}

/// Requested extension variant; unset parameters fall back to the
/// deterministic defaults `k = 0` and all multiplicities 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtensionRequest {
    EqualBetti {
        k: Option<u64>,
        multiplicities: Option<Vec<i64>>,
    },
    Naive,
}

impl ExtensionRequest {
    pub fn equal_betti_default() -> Self {
        ExtensionRequest::EqualBetti {
            k: None,
            multiplicities: None,
        }
    }

    fn resolve(&self, delta: usize) -> Result<BlockParameters> {
        match self {
            ExtensionRequest::Naive => Ok(BlockParameters::Naive),
            ExtensionRequest::EqualBetti { k, multiplicities } => {
                if delta == 1 {
                    if multiplicities.is_some() {
                        return Err(Error::BadParameter {
                            name: "mults",
                            reason: "genus difference is 1; the block takes k instead".into(),
                        });
                    }
                    Ok(BlockParameters::DeltaOne { k: k.unwrap_or(0) })
                } else {
                    if k.is_some() {
                        return Err(Error::BadParameter {
                            name: "k",
                            reason: format!(
                                "genus difference is {delta}; the block takes multiplicities"
                            ),
                        });
                    }
                    Ok(BlockParameters::General {
                        multiplicities: multiplicities
                            .clone()
                            .unwrap_or_else(|| vec![1; delta]),
                    })
                }
            }
        }
    }
}

/// A constructed extension: the original monodromy, the extended one, the
/// pinch intertwining them, and the chosen handle block.
#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub f_t: MappingClass,
    pub f_s: MappingClass,
    pub pinch: PinchMap,
    pub a_block: IntMatrix,
    pub parameters: BlockParameters,
}

impl ExtensionResult {
    pub fn g_t(&self) -> usize {
        self.f_t.genus()
    }

    pub fn g_s(&self) -> usize {
        self.f_s.genus()
    }

    pub fn delta(&self) -> usize {
        self.g_s() - self.g_t()
    }
}

/// Builds `f_s = diag(f_t, A)` on the genus-`g_s` surface.
///
/// When `f_t` carries a twist word and the block is itself realized by
/// twists, the extension carries a word too: the original letters embedded
/// into the larger surface, followed by handle letters inducing `A`. The
/// `delta = 1` block arises from a composition that is not a twist product
/// on the nose, so that variant is recorded matrix-only. For `delta >= 2`
/// the `-I` part of the block is realized per handle by the classical
/// relation `(tau_alpha tau_beta)^3 = -I` on a one-handle summand.
pub fn build_extension(
    f_t: &MappingClass,
    g_s: usize,
    request: &ExtensionRequest,
) -> Result<ExtensionResult> {
    if !f_t.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let split = BasisSplit::new(g_s, f_t.genus())?;
    let delta = split.delta();
    let parameters = request.resolve(delta)?;
    let a_block = parameters.block(delta)?;
    let source = split.source_surface();
    let matrix = f_t.matrix().block_diagonal(&a_block);

    let word = match (&parameters, f_t.word()) {
        (BlockParameters::DeltaOne { .. }, _) | (_, None) => None,
        (_, Some(letters)) => {
            let mut word: Vec<TwistLetter> = letters
                .iter()
                .map(|letter| embed_letter(letter, source))
                .collect::<Result<_>>()?;
            word.extend(handle_block_word(&split, &parameters)?);
            Some(word)
        }
    };

    let f_s = match word {
        Some(word) => MappingClass::from_word_and_matrix(source, word, matrix)?,
        None => MappingClass::from_matrix(source, matrix)?,
    };

    Ok(ExtensionResult {
        f_t: f_t.clone(),
        f_s,
        pinch: pinch_homology_map(g_s, f_t.genus())?,
        a_block,
        parameters,
    })
}

/// Pads a curve with zero coordinates on the added handles.
fn embed_letter(letter: &TwistLetter, target: Surface) -> Result<TwistLetter> {
    let curve = letter.curve();
    let mut homology = curve.homology().to_vec();
    homology.resize(target.h1_rank(), BigInt::zero());
    let embedded = CurveClass::from_parts(
        target,
        homology,
        curve.is_separating(),
        curve.label().map(str::to_string),
    )?;
    TwistLetter::new(embedded, letter.power())
}

/// Twist letters on the added handles inducing the chosen block.
fn handle_block_word(split: &BasisSplit, parameters: &BlockParameters) -> Result<Vec<TwistLetter>> {
    let BlockParameters::General { multiplicities } = parameters else {
        return Ok(Vec::new());
    };
    let family = handle_curve_family(split);
    let mut word = Vec::new();
    // (tau_alpha tau_beta)^3 acts as -I on each handle; letters are listed
    // first-applied-first, so each pass is beta then alpha.
    for l in 0..split.delta() {
        for _ in 0..3 {
            word.push(TwistLetter::new(family.betas[l].clone(), 1)?);
            word.push(TwistLetter::new(family.alphas[l].clone(), 1)?);
        }
    }
    for (l, &m) in multiplicities.iter().enumerate() {
        word.push(TwistLetter::new(family.alphas[l].clone(), m)?);
    }
    Ok(word)
}

/// The checkable conclusions about an extension, each recomputed
/// independently of how the result was built.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtensionCertificate {
    pub block_form_ok: bool,
    pub symplectic_ok: bool,
    pub square_commutes_ok: bool,
    pub i_minus_a_nondegenerate: bool,
    pub betti_equal: bool,
    pub pa_certificate: PACertificate,
}

impl ExtensionCertificate {
    /// The structure shared by every variant.
    pub fn structural_ok(&self) -> bool {
        self.block_form_ok && self.symplectic_ok && self.square_commutes_ok
    }

    /// Whether everything the given variant promises actually holds. The
    /// naive variant promises only the structure; the equal-Betti variants
    /// additionally promise a nondegenerate fixed part and Betti equality.
    pub fn claims_hold(&self, parameters: &BlockParameters) -> bool {
        self.structural_ok()
            && (!parameters.is_equal_betti()
                || (self.i_minus_a_nondegenerate && self.betti_equal))
    }
}

/// Re-derives every certificate field from the result's matrices. Failures
/// are reported in the certificate, never thrown.
pub fn verify_extension(result: &ExtensionResult) -> ExtensionCertificate {
    let delta = result.g_s().saturating_sub(result.g_t());
    let expected_block = result.parameters.block(delta);

    let block_form_ok = expected_block
        .map(|expected| {
            result.a_block == expected
                && *result.f_s.matrix() == result.f_t.matrix().block_diagonal(&expected)
        })
        .unwrap_or(false);

    let symplectic_ok = result.f_s.is_symplectic();

    let p = result.pinch.matrix();
    let square_commutes_ok = match (p.mul(result.f_s.matrix()), result.f_t.matrix().mul(p)) {
        (Ok(lhs), Ok(rhs)) => lhs == rhs,
        _ => false,
    };

    let i_minus_a_nondegenerate = result.a_block.is_square()
        && IntMatrix::identity(result.a_block.rows())
            .sub(&result.a_block)
            .and_then(|m| m.determinant())
            .map(|det| !det.is_zero())
            .unwrap_or(false);

    let betti_equal = match (bundle::betti_one(&result.f_s), bundle::betti_one(&result.f_t)) {
        (Ok(bs), Ok(bt)) => bs == bt,
        _ => false,
    };

    ExtensionCertificate {
        block_form_ok,
        symplectic_ok,
        square_commutes_ok,
        i_minus_a_nondegenerate,
        betti_equal,
        pa_certificate: certify_pseudo_anosov(&result.f_s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::mapping_class::twist;
    use crate::surface::intersection_number;

    fn im(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    fn anosov_torus() -> MappingClass {
        MappingClass::from_matrix(
            Surface::new(1).unwrap(),
            im(vec![vec![2, 1], vec![1, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn pinch_is_projection_with_section() {
        let pinch = pinch_homology_map(2, 1).unwrap();
        assert_eq!(pinch.matrix(), &im(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]));
        let composed = pinch.matrix().mul(&pinch.section()).unwrap();
        assert!(composed.is_identity());

        let wide = pinch_homology_map(4, 2).unwrap();
        assert_eq!(wide.matrix().rows(), 4);
        assert_eq!(wide.matrix().cols(), 8);
        assert!(wide
            .matrix()
            .mul(&wide.section())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn pinch_requires_genus_increase() {
        assert!(pinch_homology_map(1, 1).is_err());
        assert!(pinch_homology_map(1, 2).is_err());
    }

    #[test]
    fn delta_one_block_values() {
        assert_eq!(delta_one_block(0), im(vec![vec![2, 1], vec![1, 1]]));
        let a3 = delta_one_block(3);
        assert_eq!(a3, im(vec![vec![5, 4], vec![1, 1]]));
        let i_minus = IntMatrix::identity(2).sub(&a3).unwrap();
        assert_eq!(i_minus.determinant().unwrap(), BigInt::from(-4));
        for k in 0..=10 {
            assert_eq!(
                delta_one_block(k).determinant().unwrap(),
                BigInt::one()
            );
        }
    }

    #[test]
    fn general_block_determinant_and_symplecticity() {
        let a = delta_general_block(2, &[1, 1]).unwrap();
        let i_minus = IntMatrix::identity(4).sub(&a).unwrap();
        assert_eq!(i_minus.determinant().unwrap(), BigInt::from(16));

        let a = delta_general_block(2, &[3, -2]).unwrap();
        let s = Surface::new(2).unwrap();
        let as_class = MappingClass::from_matrix(s, a).unwrap();
        assert!(as_class.is_symplectic());
    }

    #[test]
    fn general_block_rejects_bad_input() {
        assert_eq!(
            delta_general_block(1, &[1]),
            Err(Error::DeltaTooSmall { delta: 1 })
        );
        assert_eq!(
            delta_general_block(2, &[0, 1]),
            Err(Error::ZeroMultiplicity { index: 0 })
        );
        assert_eq!(
            delta_general_block(2, &[1]),
            Err(Error::MultiplicityCount {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn extend_torus_equal_betti_k0() {
        let f_t = anosov_torus();
        let result = build_extension(&f_t, 2, &ExtensionRequest::equal_betti_default()).unwrap();
        let expected = im(vec![
            vec![2, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 2, 1],
            vec![0, 0, 1, 1],
        ]);
        assert_eq!(result.f_s.matrix(), &expected);
        assert_eq!(bundle::betti_one(&result.f_s).unwrap(), 1);
        assert_eq!(bundle::betti_one(&result.f_t).unwrap(), 1);
        let cert = verify_extension(&result);
        assert!(cert.block_form_ok);
        assert!(cert.symplectic_ok);
        assert!(cert.square_commutes_ok);
        assert!(cert.i_minus_a_nondegenerate);
        assert!(cert.betti_equal);
        assert!(cert.claims_hold(&result.parameters));
    }

    #[test]
    fn extend_torus_naive_raises_betti() {
        let f_t = anosov_torus();
        let result = build_extension(&f_t, 2, &ExtensionRequest::Naive).unwrap();
        assert_eq!(
            result.f_s.matrix(),
            &im(vec![
                vec![2, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ])
        );
        assert_eq!(bundle::betti_one(&result.f_s).unwrap(), 3);
        let cert = verify_extension(&result);
        assert!(cert.structural_ok());
        assert!(!cert.betti_equal);
        assert!(!cert.i_minus_a_nondegenerate);
        assert!(cert.claims_hold(&result.parameters));
    }

    #[test]
    fn extend_genus_two_with_word() {
        let s = Surface::new(2).unwrap();
        let a1 = CurveClass::generator_a(s, 1).unwrap();
        let b2 = CurveClass::generator_b(s, 2).unwrap();
        let f_t = MappingClass::from_twist_word(
            s,
            vec![twist(&a1, 1).unwrap(), twist(&b2, -2).unwrap()],
        )
        .unwrap();
        let result = build_extension(&f_t, 4, &ExtensionRequest::equal_betti_default()).unwrap();
        assert_eq!(
            bundle::betti_one(&result.f_s).unwrap(),
            bundle::betti_one(&result.f_t).unwrap()
        );
        // word survives the extension and reproduces the block matrix
        assert!(result.f_s.word().is_some());
        let cert = verify_extension(&result);
        assert!(cert.claims_hold(&result.parameters));
    }

    #[test]
    fn handle_word_realizes_minus_identity() {
        // (tau_alpha tau_beta)^3 on a one-handle block
        let split = BasisSplit::new(3, 1).unwrap();
        let family = handle_curve_family(&split);
        let s = split.source_surface();
        let mut word = Vec::new();
        for _ in 0..3 {
            word.push(twist(&family.betas[0], 1).unwrap());
            word.push(twist(&family.alphas[0], 1).unwrap());
        }
        let f = MappingClass::from_twist_word(s, word).unwrap();
        // -I on the first handle block, identity elsewhere
        let m = f.matrix();
        assert_eq!(*m.at(2, 2), BigInt::from(-1));
        assert_eq!(*m.at(3, 3), BigInt::from(-1));
        assert_eq!(*m.at(0, 0), BigInt::one());
        assert_eq!(
            intersection_number(&family.alphas[0], &family.betas[0]).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn corrupted_off_diagonal_entry_fails_block_form() {
        let f_t = anosov_torus();
        let good = build_extension(&f_t, 2, &ExtensionRequest::equal_betti_default()).unwrap();
        let mut rows = good.f_s.matrix().to_rows();
        rows[0][2] = BigInt::from(1);
        let corrupted = ExtensionResult {
            f_s: MappingClass::from_matrix_unchecked(
                good.f_s.surface(),
                IntMatrix::from_rows(rows).unwrap(),
            )
            .unwrap(),
            ..good
        };
        let cert = verify_extension(&corrupted);
        assert!(!cert.block_form_ok);
        assert!(!cert.claims_hold(&corrupted.parameters));
    }

    #[test]
    fn extension_requires_larger_genus() {
        let f_t = anosov_torus();
        assert!(matches!(
            build_extension(&f_t, 1, &ExtensionRequest::Naive),
            Err(Error::GenusNotLarger { .. })
        ));
    }

    #[test]
    fn parameter_validation_per_delta() {
        let f_t = anosov_torus();
        // mults with delta = 1
        assert!(build_extension(
            &f_t,
            2,
            &ExtensionRequest::EqualBetti {
                k: None,
                multiplicities: Some(vec![1])
            }
        )
        .is_err());
        // k with delta = 2
        assert!(build_extension(
            &f_t,
            3,
            &ExtensionRequest::EqualBetti {
                k: Some(1),
                multiplicities: None
            }
        )
        .is_err());
    }

    #[test]
    fn equal_betti_extension_is_inconclusive_not_refuted() {
        // Block-diagonal actions have reducible characteristic polynomials,
        // so the one-sided certificate must stay inconclusive.
        let f_t = anosov_torus();
        let result = build_extension(&f_t, 2, &ExtensionRequest::equal_betti_default()).unwrap();
        let cert = verify_extension(&result);
        assert_eq!(cert.pa_certificate.verdict, Verdict::Inconclusive);
    }
}
