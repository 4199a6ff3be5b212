use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{solve_exact, BigFloat, BigRat};

/// How far the error-estimate window is shifted towards smaller `g`.
pub const WINDOW_SHIFT: usize = 5;

/// Coefficients of `f(g) ~ sum_{k=0}^{K} c_k g^{-k}` extracted from exact samples.
#[derive(Clone, Debug)]
pub struct AsymFit {
    /// Interpolation through the top `K + 1` samples.
    pub coefficients: Vec<BigFloat>,
    /// Least squares over the top `2K` samples (or as many as exist).
    pub lsq_coefficients: Vec<BigFloat>,
    /// `|c_k(top window) - c_k(window shifted down)|`.
    pub error_estimates: Vec<BigFloat>,
    /// Smallest and largest `g` of the interpolation window.
    pub window: (usize, usize),
    pub k: usize,
    /// The shifted or least-squares window had to be shortened.
    pub degraded: bool,
}

fn inv_pow(g: usize, k: usize) -> BigRat {
    BigRat::new(BigInt::one(), num_traits::pow(BigInt::from(g), k))
}

fn design_row(g: usize, k: usize) -> Vec<BigRat> {
    (0..=k).map(|j| inv_pow(g, j)).collect()
}

fn interpolate(points: &[(usize, BigRat)], k: usize) -> Result<Vec<BigRat>> {
    let a = points.iter().map(|(g, _)| design_row(*g, k)).collect();
    let b = points.iter().map(|(_, y)| y.clone()).collect();
    solve_exact(a, b)
}

fn least_squares(points: &[(usize, BigRat)], k: usize) -> Result<Vec<BigRat>> {
    let rows: Vec<Vec<BigRat>> = points.iter().map(|(g, _)| design_row(*g, k)).collect();
    let mut ata = vec![vec![BigRat::zero(); k + 1]; k + 1];
    let mut atb = vec![BigRat::zero(); k + 1];
    for (row, (_, y)) in rows.iter().zip(points) {
        for i in 0..=k {
            atb[i] += &row[i] * y;
            for j in 0..=k {
                ata[i][j] += &row[i] * &row[j];
            }
        }
    }
    solve_exact(ata, atb)
}

/// Fits `sum_{k=0}^{K} c_k g^{-k}` to the largest-`g` samples.
///
/// Samples are exact binary fractions, so both fits are solved exactly and
/// rounded once to the samples' precision.
pub fn richardson_fit(samples: &[(usize, BigFloat)], k: usize) -> Result<AsymFit> {
    if samples.len() < k + 2 {
        return Err(Error::domain(format!(
            "{} samples cannot support an order-{k} fit",
            samples.len()
        )));
    }
    let mut points: Vec<(usize, BigRat)> = samples.iter().map(|(g, v)| (*g, v.to_rat())).collect();
    points.sort_by_key(|(g, _)| *g);
    if points.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::domain("sample g values must be distinct"));
    }
    if points[0].0 == 0 {
        return Err(Error::domain("samples need g >= 1"));
    }
    let precision = samples
        .iter()
        .map(|(_, v)| v.precision())
        .max()
        .unwrap_or(64);
    let len = points.len();

    let top = &points[len - (k + 1)..];
    let c = interpolate(top, k)?;

    let shift = WINDOW_SHIFT.min(len - (k + 1));
    let shifted = &points[len - (k + 1) - shift..len - shift];
    let c_shifted = interpolate(shifted, k)?;

    let lsq_len = (2 * k).max(k + 1).min(len);
    let lsq = least_squares(&points[len - lsq_len..], k)?;

    let to_float = |v: &BigRat| BigFloat::from_rat(v, precision);
    let abs = |v: BigRat| if v < BigRat::zero() { -v } else { v };
    Ok(AsymFit {
        coefficients: c.iter().map(to_float).collect(),
        lsq_coefficients: lsq.iter().map(to_float).collect(),
        error_estimates: c
            .iter()
            .zip(&c_shifted)
            .map(|(a, b)| to_float(&abs(a - b)))
            .collect(),
        window: (top[0].0, top[k].0),
        k,
        degraded: shift < WINDOW_SHIFT || lsq_len < 2 * k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn series(c: &[BigRat], gs: impl Iterator<Item = usize>, prec: u32) -> Vec<(usize, BigFloat)> {
        gs.map(|g| {
            let v: BigRat = c.iter().enumerate().map(|(k, ck)| ck * inv_pow(g, k)).sum();
            (g, BigFloat::from_rat(&v, prec))
        })
        .collect()
    }

    #[test]
    fn recovers_quadratic() {
        let c = [rat(1, 1), rat(1, 1), rat(2, 1)];
        let fit = richardson_fit(&series(&c, 10..=40, 256), 2).unwrap();
        for (est, exact) in fit.coefficients.iter().zip(&c) {
            let err = (est - &BigFloat::from_rat(exact, 256)).abs().to_f64();
            assert!(err < 1e-20, "{err}");
        }
        assert_eq!(fit.window, (38, 40));
        assert!(!fit.degraded);
    }

    #[test]
    fn constant_series() {
        let fit = richardson_fit(&series(&[rat(7, 1)], 10..=30, 128), 3).unwrap();
        assert_eq!(fit.coefficients[0].to_rat(), rat(7, 1));
        for (c, e) in fit.coefficients[1..].iter().zip(&fit.error_estimates[1..]) {
            assert!(c.abs() <= *e);
        }
    }

    #[test]
    fn short_input_interpolates_exactly() {
        let s = series(&[rat(3, 1), rat(-1, 2), rat(5, 7)], 10..=13, 128);
        let fit = richardson_fit(&s, 2).unwrap();
        assert!(fit.degraded);
        assert_eq!(fit.window, (11, 13));
        for (g, v) in &s[1..] {
            let model: BigRat = fit
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| c.to_rat() * inv_pow(*g, k))
                .sum();
            let resid = (&BigFloat::from_rat(&model, 128) - v).abs().to_f64();
            assert!(resid < 1e-30);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = series(&[rat(1, 1)], 10..=12, 64);
        assert!(richardson_fit(&s, 2).is_err());
        let mut dup = series(&[rat(1, 1)], 10..=15, 64);
        dup.push(dup[0].clone());
        assert!(richardson_fit(&dup, 2).is_err());
    }
}
