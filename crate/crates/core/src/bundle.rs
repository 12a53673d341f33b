//! First homology of a mapping torus from the monodromy's action.
//!
//! The Wang sequence of the fibration gives
//! `H_1(M(F, f); Z) = coker(I - f_#) (+) Z`, so the first Betti number is
//! `1 + nullity(I - f_#) = 1 + 2g - rank(I - f_#)` and the torsion is read
//! off the Smith normal form of `I - f_#`. An often-seen quotient-by-kernel
//! formulation, `H_1(F)/ker(I - f_#) (+) Z`, produces the same free rank but
//! would misplace torsion, which lives in the cokernel; this module computes
//! the cokernel.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonio;
use crate::mapping_class::MappingClass;
use crate::IntMatrix;

/// `H_1` of a mapping torus: free rank and invariant-factor torsion.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BundleHomology {
    pub betti_one: usize,
    #[serde(with = "jsonio::bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

/// First Betti number `1 + (2g - rank_Q(I - f_#))`.
pub fn betti_one(f: &MappingClass) -> Result<usize> {
    let fixed = fixed_part_matrix(f)?;
    Ok(1 + f.surface().h1_rank() - fixed.rational_rank())
}

/// Full integral `H_1(M(F, f))` via the Smith normal form of `I - f_#`.
pub fn integral_h1(f: &MappingClass) -> Result<BundleHomology> {
    let fixed = fixed_part_matrix(f)?;
    let form = fixed.smith_normal_form();
    let rank_h1 = f.surface().h1_rank();
    let free_rank = 1 + (rank_h1 - form.rank());
    let torsion: Vec<BigInt> = form
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    Ok(BundleHomology {
        betti_one: free_rank,
        torsion,
        free_rank,
    })
}

/// `I - f_#`, after insisting the action is symplectic.
fn fixed_part_matrix(f: &MappingClass) -> Result<IntMatrix> {
    if !f.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let n = f.surface().h1_rank();
    IntMatrix::identity(n).sub(f.matrix())
}
