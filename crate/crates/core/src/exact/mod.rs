//! Exact and high-precision arithmetic shared by every engine in the crate.

mod bernoulli;
mod bigfloat;
mod combinat;
mod gaussian;
mod laurent;
mod linsolve;

pub use bernoulli::bernoulli;
pub use bigfloat::{BigFloat, DEFAULT_PRECISION};
pub use combinat::{binomial, double_factorial, factorial, pochhammer};
pub use gaussian::GaussianRat;
pub use laurent::{laurent_dt, GenusBlock, LaurentT};
pub use linsolve::solve_exact;
pub(crate) use linsolve::sum as linsolve_sum;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number; always reduced with a positive denominator.
pub type BigRat = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// `2^e` as a rational, for any sign of `e`.
pub fn pow2(e: i64) -> BigRat {
    if e >= 0 {
        int(BigInt::from(1) << (e as usize))
    } else {
        BigRat::new(BigInt::from(1), BigInt::from(1) << ((-e) as usize))
    }
}

/// `base^e` for a small integer base and any sign of `e`.
pub fn ipow(base: i64, e: i64) -> BigRat {
    let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        int(p)
    } else {
        BigRat::new(BigInt::from(1), p)
    }
}
