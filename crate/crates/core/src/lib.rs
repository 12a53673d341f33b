//! Exact first-homology invariants of surface bundles over the circle.
//!
//! The library models monodromies of closed oriented surfaces through their
//! symplectic action on `H_1`, computes mapping-torus homology (Betti number
//! and torsion) by exact integer linear algebra, builds block-diagonal
//! extensions of a monodromy to higher genus — including variants that
//! preserve the first Betti number of the bundle — and emits
//! machine-checkable certificates for every claim it makes.
//!
//! The linear algebra layer ([`matrix`], [`poly`], [`smith`]) is generic
//! over any signed integer scalar via `num-traits`; everything
//! domain-facing uses the arbitrary-precision aliases [`IntMatrix`],
//! [`IntPolynomial`] and [`IntSmithForm`] — twist powers make entries grow
//! without bound, so fixed-width arithmetic would be a correctness bug.

pub mod bundle;
pub mod certify;
pub mod error;
pub mod extension;
pub mod jsonio;
pub mod mapping_class;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod smith;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use matrix::Matrix;
pub use poly::Polynomial;
pub use smith::SmithForm;

/// Arbitrary-precision matrix, the carrier for every homology action.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Arbitrary-precision polynomial (characteristic polynomials and friends).
pub type IntPolynomial = Polynomial<num_bigint::BigInt>;
/// Smith normal form over the integers with unimodular witnesses.
pub type IntSmithForm = SmithForm<num_bigint::BigInt>;

pub use bundle::{betti_one, integral_h1, BundleHomology};
pub use certify::{certify_pseudo_anosov, PACertificate, Verdict};
pub use extension::{
    build_extension, delta_general_block, delta_one_block, pinch_homology_map, verify_extension,
    BlockParameters, ExtensionCertificate, ExtensionRequest, ExtensionResult, PinchMap,
};
pub use jsonio::{ExtensionDocument, MappingClassData};
pub use mapping_class::{transvection_matrix, MappingClass, TwistLetter};
pub use surface::{
    handle_curve_family, intersection_number, standard_symplectic_form, BasisSplit, CurveClass,
    HandleCurves, Surface,
};
