use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BigRat;
use crate::error::{Error, Result};

/// Sums rationals over a common denominator, reducing once at the end.
pub(crate) fn sum(parts: impl IntoIterator<Item = BigRat>) -> BigRat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in parts {
        let (pn, pd) = p.into_raw();
        if pd == den {
            num += pn;
        } else {
            let l = den.lcm(&pd);
            num = num * (&l / &den) + pn * (&l / &pd);
            den = l;
        }
    }
    BigRat::new(num, den)
}

/// Solves `a x = b` exactly by Gaussian elimination.
pub fn solve_exact(mut a: Vec<Vec<BigRat>>, mut b: Vec<BigRat>) -> Result<Vec<BigRat>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::domain("solve_exact needs a square system"));
    }
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()))
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let (upper, lower) = a.split_at_mut(r);
            for (target, pivot) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &f * pivot;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![BigRat::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}
