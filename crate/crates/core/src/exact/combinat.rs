use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BigRat;

fn factorial_table() -> &'static Mutex<Vec<BigInt>> {
    static TABLE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigInt::one()]))
}

/// `n!`, memoized.
pub fn factorial(n: usize) -> BigInt {
    let mut table = factorial_table().lock().unwrap();
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigInt::from(k);
        table.push(next);
    }
    table[n].clone()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Double factorial `k!!` for odd or even `k >= -1`, extended to negative
/// odd `k` through `k!! = (k+2)!!/(k+2)`, so `(-1)!! = 1` and `(-3)!! = -1`.
pub fn double_factorial(k: i64) -> BigRat {
    if k >= -1 {
        let mut acc = BigInt::one();
        let mut m = k;
        while m > 1 {
            acc *= BigInt::from(m);
            m -= 2;
        }
        return BigRat::from_integer(acc);
    }
    assert!(
        k % 2 != 0,
        "double factorial undefined at negative even {k}"
    );
    double_factorial(k + 2) / BigRat::from_integer(BigInt::from(k + 2))
}

/// Rising factorial `a (a+1) ... (a+n-1)`; the empty product is 1.
pub fn pochhammer(a: &BigRat, n: usize) -> BigRat {
    let mut acc = BigRat::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRat::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(5, 2), 1), rat(5, 2));
        assert_eq!(pochhammer(&rat(-7, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(3, 2), 3), rat(105, 8));
    }

    #[test]
    fn double_factorial_extension() {
        assert_eq!(double_factorial(-1), rat(1, 1));
        assert_eq!(double_factorial(-3), rat(-1, 1));
        assert_eq!(double_factorial(-5), rat(1, 3));
        assert_eq!(double_factorial(7), rat(105, 1));
        assert_eq!(double_factorial(0), rat(1, 1));
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
