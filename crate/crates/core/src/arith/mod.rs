//! Exact arithmetic foundation: arbitrary-precision integers and rationals,
//! quadratic residue symbols, dense polynomials over Q and over F_p, and the
//! finite coefficient rings F_{p^2} and GR(p^2, 2) used by the module oracle.

mod fp;
mod fp2;
mod fplinalg;
mod fppoly;
mod gr2;
mod kronecker;
mod primes;
mod qpoly;

pub use fp::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, sqrt_mod};
pub use fplinalg::{kernel_mod_p, rank_mod_p, rref_mod_p};
pub use fp2::{Fp2, Fp2Ctx};
pub use fppoly::{factor_quartic_mod_p, FpPoly};
pub use gr2::{Gr2, Gr2Ctx};
pub use kronecker::{kronecker, kronecker_i64};
pub use primes::{is_prime, primes_below};
pub use qpoly::QPoly;

/// Arbitrary-precision signed integer.
pub type Int = num::BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = num::BigRational;

/// `Rat` from an `i64`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `Rat` from an integer pair `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
