use rayon::prelude::*;

use super::fit::{richardson_fit, AsymFit};
use crate::agn::unstable;
use crate::error::{Error, Result};
use crate::exact::{factorial, int, ipow, pow2, BigFloat, BigRat};
use crate::genus::{agn_from_series, coeffs_c};
use crate::volumes::sv_constant_with;

const MIN_PRECISION: u32 = 64;

/// `r(g,n) = a (4g-4+n)! 3^{4g+n-4} pi^{6g-5+2n} / ((6g-7+2n)! 2^{10g+4n-11})`,
/// the volume divided by its conjectured leading asymptotics.
pub fn normalize_vol(g: usize, n: usize, a: &BigRat, precision: u32) -> Result<BigFloat> {
    if precision < MIN_PRECISION {
        return Err(Error::domain(format!(
            "precision must be at least {MIN_PRECISION} bits"
        )));
    }
    if unstable(g as i64, n as i64) || (g, n) == (0, 3) {
        return Err(Error::domain(format!(
            "no normalized volume at (g, n) = ({g}, {n})"
        )));
    }
    let (gi, ni) = (g as i64, n as i64);
    let exact = a * int(factorial((4 * gi - 4 + ni) as usize)) * ipow(3, 4 * gi + ni - 4)
        / (int(factorial((6 * gi - 7 + 2 * ni) as usize)) * pow2(10 * gi + 4 * ni - 11));
    let work = precision + 32;
    let pi_pow = BigFloat::pi(work).powi((6 * gi - 5 + 2 * ni) as u64);
    Ok((&BigFloat::from_rat(&exact, work) * &pi_pow).with_precision(precision))
}

fn check_window(gmax: usize, k: usize) -> Result<()> {
    if gmax < 2 * k + 10 {
        return Err(Error::domain(format!(
            "gmax = {gmax} is below 2K + 10 = {}",
            2 * k + 10
        )));
    }
    Ok(())
}

fn first_genus(n: usize) -> usize {
    (0..)
        .find(|&g| !unstable(g as i64, n as i64) && (g, n) != (0, 3))
        .unwrap()
        .max(1)
}

/// Warms the genus caches sequentially so parallel readers only hit memoized data.
fn prepare(gmax: usize) -> Result<()> {
    if gmax >= 2 {
        coeffs_c(gmax)?;
    }
    Ok(())
}

/// Extrapolates `m_0(n), ..., m_K(n)` from `r(g,n)`, `g <= gmax`.
pub fn estimate_m(n: usize, gmax: usize, k: usize, precision: u32) -> Result<AsymFit> {
    check_window(gmax, k)?;
    prepare(gmax)?;
    let samples = (first_genus(n)..=gmax)
        .into_par_iter()
        .map(|g| Ok((g, normalize_vol(g, n, &agn_from_series(g, n), precision)?)))
        .collect::<Result<Vec<_>>>()?;
    richardson_fit(&samples, k)
}

/// Extrapolates `C_0(n), ..., C_K(n)` from the area Siegel–Veech constants, `g <= gmax`.
pub fn estimate_c(n: usize, gmax: usize, k: usize, precision: u32) -> Result<AsymFit> {
    if precision < MIN_PRECISION {
        return Err(Error::domain(format!(
            "precision must be at least {MIN_PRECISION} bits"
        )));
    }
    check_window(gmax, k)?;
    prepare(gmax)?;
    let rows: Vec<Vec<BigRat>> = (0..=gmax)
        .into_par_iter()
        .map(|g| (0..=n + 2).map(|m| agn_from_series(g, m)).collect())
        .collect();
    let source = |g: usize, m: usize| rows[g][m].clone();
    let samples = (first_genus(n)..=gmax)
        .into_par_iter()
        .map(|g| {
            let c = sv_constant_with(g, n, &source)?;
            Ok((g, c.to_bigfloat(precision)))
        })
        .collect::<Result<Vec<_>>>()?;
    richardson_fit(&samples, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn normalized_spot_values() {
        let r = normalize_vol(2, 0, &rat(1, 96), 128).unwrap().to_f64();
        let expect = 1944.0 / 5898240.0 * std::f64::consts::PI.powi(7);
        assert!((r - expect).abs() < 1e-14, "{r}");
        assert!((r - 0.995455).abs() < 5e-6);
        assert!(normalize_vol(1, 1, &rat(1, 12), 128).unwrap().to_f64() > 0.0);
        assert!(normalize_vol(2, 0, &rat(1, 96), 32).is_err());
        assert!(normalize_vol(0, 3, &rat(1, 1), 128).is_err());
        assert!(normalize_vol(1, 0, &rat(1, 1), 128).is_err());
    }

    #[test]
    fn window_precondition() {
        assert!(estimate_m(0, 19, 5, 128).is_err());
        assert!(estimate_c(0, 11, 1, 128).is_err());
    }

    #[test]
    fn leading_coefficients_at_low_order() {
        let fit = estimate_m(0, 30, 3, 256).unwrap();
        assert!((fit.coefficients[0].to_f64() - 1.0).abs() < 1e-5);
        let fit = estimate_c(1, 30, 3, 256).unwrap();
        assert!(
            (fit.coefficients[0].to_f64() - 0.25).abs() < 1e-5,
            "{}",
            fit.coefficients[0]
        );
    }
}
