use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, ipow, rat, BigRat};

#[derive(Default)]
struct AltMemo {
    values: HashMap<(usize, usize), BigRat>,
}

fn inv_factorial(k: usize) -> BigRat {
    BigRat::new(BigInt::from(1), factorial(k))
}

impl AltMemo {
    /// Values known to vanish without recursion: `2g - 2 + n <= 0`.
    fn known_zero(g: usize, n: usize) -> bool {
        super::unstable(g as i64, n as i64)
    }

    fn get(&mut self, g: usize, n: usize) -> BigRat {
        debug_assert!(n >= 2);
        if Self::known_zero(g, n) {
            return BigRat::zero();
        }
        if let Some(v) = self.values.get(&(g, n)) {
            return v.clone();
        }
        let v = self.compute(g, n);
        self.values.insert((g, n), v.clone());
        v
    }

    fn compute(&mut self, g: usize, n: usize) -> BigRat {
        let q = n - 2;
        let mut parts = Vec::new();
        for j1 in 0..=g {
            for j2 in 0..=g - j1 {
                let jj = j1 + j2;
                let total = q + 4 + 2 * jj;
                let sign_weight =
                    ipow(-4, -(jj as i64)) * inv_factorial(2 * j1 + 1) * inv_factorial(2 * j2 + 1);
                for g1 in 0..=g - jj {
                    let g2 = g - jj - g1;
                    let lo1 = 2 + 2 * j1;
                    let lo2 = 2 + 2 * j2;
                    if total < lo1 + lo2 {
                        continue;
                    }
                    for n1 in lo1..=total - lo2 {
                        let n2 = total - n1;
                        if Self::known_zero(g1, n1) || Self::known_zero(g2, n2) {
                            continue;
                        }
                        let a1 = self.get(g1, n1);
                        let a2 = self.get(g2, n2);
                        let w = &sign_weight * inv_factorial(n1 - lo1) * inv_factorial(n2 - lo2);
                        parts.push(w * a1 * a2);
                    }
                }
            }
        }
        let mut acc = crate::exact::linsolve_sum(parts) * int(factorial(q)) * rat(1, 2);
        for j in 1..=g {
            let a = self.get(g - j, q + 2 * j + 2);
            acc -= a * ipow(-4, -(j as i64)) * inv_factorial(2 * j);
        }
        if q == 1 && g == 0 {
            acc += rat(1, 1);
        }
        acc
    }
}

fn memo() -> &'static Mutex<AltMemo> {
    static MEMO: OnceLock<Mutex<AltMemo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(AltMemo::default()))
}

/// `a_{g,n}` from the alternating-sign recursion; only defined for `n >= 2`.
pub fn a_alt(g: usize, n: usize) -> Result<BigRat> {
    if n < 2 {
        return Err(Error::domain(format!(
            "alternating recursion needs n >= 2, got n = {n}"
        )));
    }
    Ok(memo().lock().unwrap().get(g, n))
}
