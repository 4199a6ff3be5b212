use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::{binomial, BigRat};

fn table() -> &'static RwLock<Vec<BigRat>> {
    static TABLE: OnceLock<RwLock<Vec<BigRat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRat::one()]))
}

/// Bernoulli number `B_m` with `B_1 = -1/2`, from the recurrence
/// `sum_{k=0}^{m} C(m+1, k) B_k = 0`. Memoized; extensions are serialized
/// behind the write lock.
pub fn bernoulli(m: usize) -> BigRat {
    if let Some(b) = table().read().unwrap().get(m) {
        return b.clone();
    }
    let mut t = table().write().unwrap();
    while t.len() <= m {
        let j = t.len();
        let mut acc = BigRat::from_integer(BigInt::from(0));
        for (k, b) in t.iter().enumerate() {
            acc += b * BigRat::from_integer(binomial(j + 1, k));
        }
        let next = -acc / BigRat::from_integer(BigInt::from(j + 1));
        t.push(next);
    }
    t[m].clone()
}
