use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Exact integer scalar the linear algebra layer is generic over.
///
/// Everything downstream of the matrix and polynomial types works for any
/// signed integer ring with exact division and gcd: `BigInt` in production
/// (entry growth under twist powers and fraction-free elimination is
/// unbounded), machine integers in small tests.
pub trait Scalar: Integer + Signed + FromPrimitive + Clone + Debug + Display {}

impl<T> Scalar for T where T: Integer + Signed + FromPrimitive + Clone + Debug + Display {}
