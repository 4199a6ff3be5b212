use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, rat, BigFloat, BigRat};

/// Polynomial in `n` and `M = -pi^2/144` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    /// `(power of n, power of M) -> coefficient`, zeros omitted.
    terms: BTreeMap<(u32, u32), BigRat>,
}

impl MPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff * n^n_pow * M^m_pow`.
    pub fn add_term(&mut self, n_pow: u32, m_pow: u32, coeff: BigRat) {
        let e = self
            .terms
            .entry((n_pow, m_pow))
            .or_insert_with(BigRat::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&(n_pow, m_pow));
        }
    }

    /// Adds `(sum_j m[j] M^j) / den * n^n_pow`.
    fn add_n_coeff(&mut self, n_pow: u32, m: &[i64], den: i64) {
        for (j, c) in m.iter().enumerate() {
            self.add_term(n_pow, j as u32, rat(*c, den));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRat)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn degree_n(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_m(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Exact substitution of `n`; returns coefficients of `M^0, M^1, ...`.
    pub fn at_n(&self, n: &BigRat) -> Vec<BigRat> {
        let mut out = vec![BigRat::zero(); self.degree_m() as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c * num_traits::pow(n.clone(), i as usize);
        }
        out
    }

    pub fn eval(&self, n: &BigRat, precision: u32) -> BigFloat {
        let work = precision + 32;
        let m = m_constant(work);
        let mut acc = BigFloat::zero(work);
        let mut m_pow = BigFloat::from_i64(1, work);
        for c in self.at_n(n) {
            acc = &acc + &(&BigFloat::from_rat(&c, work) * &m_pow);
            m_pow = &m_pow * &m;
        }
        acc.with_precision(precision)
    }
}

/// `M = -pi^2/144`.
pub fn m_constant(precision: u32) -> BigFloat {
    let pi = BigFloat::pi(precision + 16);
    (&(&pi * &pi) / &BigFloat::from_i64(-144, precision + 16)).with_precision(precision)
}

/// Published polynomial `m_k(n)` of the volume expansion, `k <= 3`.
pub fn paper_m_poly(k: usize) -> Result<MPoly> {
    let mut p = MPoly::new();
    match k {
        0 => p.add_n_coeff(0, &[1], 1),
        1 => p.add_n_coeff(0, &[0, 1], 1),
        2 => {
            p.add_n_coeff(3, &[0, 1], 24);
            p.add_n_coeff(2, &[0, -3], 8);
            p.add_n_coeff(1, &[0, 4, -17], 6);
            p.add_n_coeff(0, &[0, 1, 19], 2);
        }
        3 => {
            p.add_n_coeff(4, &[0, -8, -27], 288);
            p.add_n_coeff(3, &[0, 17, 65], 48);
            p.add_n_coeff(2, &[0, -860, -1890, 14256], 576);
            p.add_n_coeff(1, &[0, 104, -373, -6156], 48);
            p.add_n_coeff(0, &[0, -55, 3615, 28650, -126846], 180);
        }
        _ => return Err(Error::domain("only m_0 .. m_3 are published")),
    }
    Ok(p)
}

/// Published polynomial `C_k(n)` of the area Siegel–Veech expansion, `k <= 3`.
pub fn paper_c_poly(k: usize) -> Result<MPoly> {
    let mut p = MPoly::new();
    match k {
        0 => p.add_n_coeff(0, &[1], 4),
        1 => {
            p.add_n_coeff(2, &[1], 48);
            p.add_n_coeff(1, &[-3], 16);
            p.add_n_coeff(0, &[1, -2], 4);
        }
        2 => {
            p.add_n_coeff(3, &[-5, -12], 576);
            p.add_n_coeff(2, &[59, 180], 576);
            p.add_n_coeff(1, &[-11, -6, 72], 32);
            p.add_n_coeff(0, &[23, 15, -648], 72);
        }
        3 => {
            p.add_n_coeff(4, &[4, 17, 54], 1152);
            p.add_n_coeff(3, &[-179, -978, -3564], 3456);
            p.add_n_coeff(2, &[929, 5169, 13554, -42768], 3456);
            p.add_n_coeff(1, &[-989, -4851, 4428, 192456], 1728);
            p.add_n_coeff(0, &[295, 1165, -16140, -105300, 253692], 720);
        }
        _ => return Err(Error::domain("only C_0 .. C_3 are published")),
    }
    Ok(p)
}

pub fn paper_m(k: usize, n: usize, precision: u32) -> Result<BigFloat> {
    Ok(paper_m_poly(k)?.eval(&int(n as i64), precision))
}

pub fn paper_c(k: usize, n: usize, precision: u32) -> Result<BigFloat> {
    Ok(paper_c_poly(k)?.eval(&int(n as i64), precision))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert!((paper_m(2, 0, 128).unwrap().to_f64() - 0.0103576).abs() < 1e-7);
        assert!((paper_c(1, 0, 128).unwrap().to_f64() - 0.2842695).abs() < 1e-7);
        for n in 0..5 {
            assert_eq!(paper_m(0, n, 128).unwrap().to_rat(), rat(1, 1));
            assert_eq!(paper_c(0, n, 128).unwrap().to_rat(), rat(1, 4));
        }
        assert!(paper_m(4, 0, 64).is_err());
        assert!(paper_c(4, 0, 64).is_err());
    }

    #[test]
    fn evaluation_matches_substitution() {
        let m = -std::f64::consts::PI.powi(2) / 144.0;
        for n in 0..6 {
            let nf = n as f64;
            let direct = m / 24.0 * nf.powi(3) - 3.0 * m / 8.0 * nf * nf
                + (4.0 * m - 17.0 * m * m) / 6.0 * nf
                + (m + 19.0 * m * m) / 2.0;
            let v = paper_m(2, n, 128).unwrap().to_f64();
            assert!((v - direct).abs() < 1e-15, "{n}");
        }
        let p = paper_c_poly(1).unwrap();
        assert_eq!(
            p.at_n(&int(2)),
            vec![rat(1, 12) - rat(3, 8) + rat(1, 4), rat(-1, 2)]
        );
        assert_eq!((p.degree_n(), p.degree_m()), (2, 1));
    }
}
