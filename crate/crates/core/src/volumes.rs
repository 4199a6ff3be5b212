//! Masur–Veech volumes, κ_g constants and area Siegel–Veech constants.

use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::agn::{a_direct, unstable};
use crate::error::{Error, Result};
use crate::exact::{
    bernoulli, double_factorial, factorial, int, ipow, pow2, rat, BigFloat, BigRat,
};

/// `coeff * pi^(pi_half_exponent / 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScaled {
    pub coeff: BigRat,
    pub pi_half_exponent: i64,
}

impl PiScaled {
    pub fn new(coeff: BigRat, pi_half_exponent: i64) -> Self {
        Self {
            coeff,
            pi_half_exponent,
        }
    }

    /// Integer power of pi.
    pub fn pi_pow(coeff: BigRat, pi_exponent: i64) -> Self {
        Self::new(coeff, 2 * pi_exponent)
    }

    pub fn to_bigfloat(&self, precision: u32) -> BigFloat {
        let work = precision + 32;
        let e = self.pi_half_exponent;
        let pi = BigFloat::pi(work);
        let mut p = pi.powi(e.unsigned_abs() / 2);
        if e % 2 != 0 {
            p = &p * &pi.sqrt().expect("pi is positive");
        }
        if e < 0 {
            p = &BigFloat::from_i64(1, work) / &p;
        }
        (&BigFloat::from_rat(&self.coeff, work) * &p).with_precision(precision)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_bigfloat(64).to_f64()
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.pi_half_exponent;
        match (e, e % 2) {
            (0, _) => write!(f, "{}", self.coeff),
            (2, _) => write!(f, "{}*pi", self.coeff),
            (_, 0) => write!(f, "{}*pi^{}", self.coeff, e / 2),
            _ => write!(f, "{}*pi^({}/2)", self.coeff, e),
        }
    }
}

/// `Vol Q_{g,n}` from `a_{g,n}` computed by the direct recursion.
pub fn volume(g: usize, n: usize) -> Result<PiScaled> {
    check_stable(g, n)?;
    if (g, n) == (0, 3) {
        return volume_closed_g0(3);
    }
    volume_from(g, n, &a_direct(g, n))
}

/// `Vol Q_{g,n} = 2^{2g+1} pi^{6g-6+2n} (4g-4+n)!/(6g-7+2n)! a_{g,n}` for a given `a_{g,n}`.
pub fn volume_from(g: usize, n: usize, a: &BigRat) -> Result<PiScaled> {
    check_stable(g, n)?;
    if (g, n) == (0, 3) {
        return Err(Error::domain("the CMS prefactor is undefined at (0,3)"));
    }
    let (g, n) = (g as i64, n as i64);
    let ratio =
        int(factorial((4 * g - 4 + n) as usize)) / int(factorial((6 * g - 7 + 2 * n) as usize));
    Ok(PiScaled::pi_pow(
        pow2(2 * g + 1) * ratio * a,
        6 * g - 6 + 2 * n,
    ))
}

/// `Vol Q_{0,n} = pi^{2n-6} / 2^{n-5}`.
pub fn volume_closed_g0(n: usize) -> Result<PiScaled> {
    if n < 3 {
        return Err(Error::domain("genus 0 needs n >= 3"));
    }
    let n = n as i64;
    Ok(PiScaled::pi_pow(pow2(5 - n), 2 * n - 6))
}

/// `Vol Q_{1,n} = pi^{2n}/3 (n!/(2n-1)!! + 2n/((2n-1) 2^n))`.
pub fn volume_closed_g1(n: usize) -> Result<PiScaled> {
    if n < 1 {
        return Err(Error::domain("genus 1 needs n >= 1"));
    }
    let m = n as i64;
    let c =
        int(factorial(n)) / double_factorial(2 * m - 1) + int(2 * m) / (int(2 * m - 1) * pow2(m));
    Ok(PiScaled::pi_pow(c / int(3), 2 * m))
}

/// `((2^{2g-1}-1)/2^{2g-1}) (4g-7)!! |B_{2g}|/(2g)!`, which equals `C_{g,g}`.
pub fn lambda_g_value(g: usize) -> Result<BigRat> {
    if g < 2 {
        return Err(Error::domain("lambda_g value needs g >= 2"));
    }
    let p = pow2(2 * g as i64 - 1);
    let b = bernoulli(2 * g);
    let abs_b = if b < BigRat::zero() { -b } else { b };
    Ok(
        (&p - BigRat::one()) / p * double_factorial(4 * g as i64 - 7) * abs_b
            / int(factorial(2 * g)),
    )
}

/// `c_g = 50 (g-1)^2 c_{g-1} + 1/2 sum_{h=2}^{g-2} c_h c_{g-h}`, `c_0 = -1, c_1 = 2, c_2 = 98`.
pub fn cg_seq(g: usize) -> BigRat {
    static MEMO: Mutex<Vec<BigRat>> = Mutex::new(Vec::new());
    let mut memo = MEMO.lock().unwrap();
    if memo.is_empty() {
        memo.extend([rat(-1, 1), rat(2, 1), rat(98, 1)]);
    }
    while memo.len() <= g {
        let k = memo.len();
        let mut conv = BigRat::zero();
        for h in 2..=k - 2 {
            conv += &memo[h] * &memo[k - h];
        }
        let next = int(50 * ((k - 1) * (k - 1)) as i64) * &memo[k - 1] + conv / int(2);
        memo.push(next);
    }
    memo[g].clone()
}

/// `kappa_g = 64 pi^{6g-11/2} c_g / (384^g Gamma((5g-1)/2))`.
pub fn kappa(g: usize) -> PiScaled {
    let gi = g as i64;
    // Gamma((5g-1)/2) = gamma_rat * pi^(gamma_half/2)
    let (gamma_rat, gamma_half) = if (5 * gi - 1) % 2 == 0 {
        (int(factorial(((5 * gi - 1) / 2 - 1) as usize)), 0)
    } else {
        let m = (5 * gi - 2) / 2;
        (double_factorial(2 * m - 1) / pow2(m), 1)
    };
    let coeff = int(64) * cg_seq(g) / (ipow(384, gi) * gamma_rat);
    PiScaled::new(coeff, 12 * gi - 11 - gamma_half)
}

/// Area Siegel–Veech constant by Goujard's formula, as a multiple of `pi^{-2}`.
pub fn sv_constant(g: usize, n: usize) -> Result<PiScaled> {
    sv_constant_with(g, n, &|g, n| a_direct(g, n))
}

/// [`sv_constant`] over an arbitrary source of `a_{g,n}`.
pub fn sv_constant_with(
    g: usize,
    n: usize,
    agn: &(dyn Fn(usize, usize) -> BigRat + Sync),
) -> Result<PiScaled> {
    check_stable(g, n)?;
    let a = |g: i64, n: i64| {
        if unstable(g, n) {
            BigRat::zero()
        } else {
            agn(g as usize, n as usize)
        }
    };
    let (gi, ni) = (g as i64, n as i64);
    let denom = a(gi, ni);
    if denom.is_zero() {
        return Err(Error::domain(format!("a_({g},{n}) = 0")));
    }
    let mut s = int(ni * (ni - 1)) * a(gi, ni - 1) + a(gi - 1, ni + 2);
    for g1 in 0..=gi {
        let g2 = gi - g1;
        for n1 in 1..=ni + 1 {
            let n2 = ni + 2 - n1;
            if 3 * g1 - 3 + n1 > 0 && 3 * g2 - 3 + n2 > 0 {
                let w = int(crate::exact::binomial(n, (n1 - 1) as usize));
                s += w * a(g1, n1) * a(g2, n2);
            }
        }
    }
    Ok(PiScaled::pi_pow(s / (int(4) * denom), -2))
}

fn check_stable(g: usize, n: usize) -> Result<()> {
    if unstable(g as i64, n as i64) {
        return Err(Error::domain(format!(
            "2g - 2 + n must be positive, got (g, n) = ({g}, {n})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{agn_from_series, coeffs_c};

    #[test]
    fn small_volumes() {
        assert_eq!(volume(0, 4).unwrap(), PiScaled::pi_pow(rat(2, 1), 2));
        assert_eq!(volume(1, 1).unwrap(), PiScaled::new(rat(2, 3), 4));
        assert_eq!(volume(0, 3).unwrap(), PiScaled::new(rat(4, 1), 0));
        assert!(volume(1, 0).is_err());
        assert!(volume(0, 2).is_err());
        assert!(volume_from(0, 3, &rat(1, 1)).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(volume_closed_g0(5).unwrap(), PiScaled::pi_pow(rat(1, 1), 4));
        assert_eq!(volume_closed_g1(2).unwrap(), PiScaled::pi_pow(rat(1, 3), 4));
        assert_eq!(volume_closed_g1(1).unwrap(), PiScaled::pi_pow(rat(2, 3), 2));
        assert!(volume_closed_g0(2).is_err());
        assert!(volume_closed_g1(0).is_err());
        for n in 4..=12 {
            assert_eq!(volume(0, n).unwrap(), volume_closed_g0(n).unwrap());
        }
        for n in 1..=12 {
            assert_eq!(volume(1, n).unwrap(), volume_closed_g1(n).unwrap());
        }
    }

    #[test]
    fn lambda_and_iz() {
        assert_eq!(lambda_g_value(2).unwrap(), rat(7, 5760));
        assert_eq!(
            lambda_g_value(3).unwrap(),
            rat(31, 32) * int(15) * rat(1, 42) / int(720)
        );
        assert_eq!(cg_seq(2), rat(98, 1));
        assert_eq!(cg_seq(3), rat(19600, 1));
        for g in 2..=8 {
            let c = coeffs_c(g).unwrap().c;
            assert_eq!(lambda_g_value(g).unwrap(), c[g]);
            let gi = g as i64;
            let iz = cg_seq(g) / (ipow(24, gi) * int((5 * gi - 3) * (5 * gi - 5)));
            assert_eq!(iz, c[0]);
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(0), PiScaled::pi_pow(rat(32, 1), -6));
        assert_eq!(kappa(1), PiScaled::new(rat(1, 3), 1));
        assert_eq!(kappa(2), PiScaled::pi_pow(rat(7, 1080), 6));
    }

    #[test]
    fn sv_values() {
        assert_eq!(sv_constant(1, 1).unwrap(), PiScaled::pi_pow(rat(3, 1), -2));
        assert_eq!(sv_constant(0, 5).unwrap(), PiScaled::pi_pow(rat(5, 3), -2));
        assert!(sv_constant(0, 2).is_err());
        for g in 0..=4 {
            for n in 0..=6 {
                if let Ok(c) = sv_constant(g, n) {
                    if (g, n) == (0, 3) {
                        assert!(c.coeff.is_zero());
                    } else {
                        assert!(c.coeff > BigRat::zero(), "({g},{n})");
                    }
                }
            }
        }
    }

    #[test]
    fn numeric_evaluation() {
        let v = PiScaled::new(rat(1, 3), 1).to_bigfloat(128).to_f64();
        assert!((v - std::f64::consts::PI.sqrt() / 3.0).abs() < 1e-15);
        let v = kappa(0).to_f64();
        assert!((v - 32.0 / std::f64::consts::PI.powi(6)).abs() < 1e-15);
        assert_eq!(PiScaled::new(rat(2, 3), 4).to_string(), "2/3*pi^2");
    }

    fn large_n_deviation(n: usize) -> f64 {
        let v = volume_from(2, n, &agn_from_series(2, n)).unwrap();
        // volume * 2^n / (pi^{2n} n)
        let r = PiScaled::new(
            v.coeff * pow2(n as i64) / int(n as i64),
            v.pi_half_exponent - 4 * n as i64,
        );
        let k = kappa(2);
        let ratio = (&r.to_bigfloat(128) / &k.to_bigfloat(128)).to_f64();
        (ratio - 1.0).abs()
    }

    #[test]
    fn large_n_approaches_kappa() {
        let d100 = large_n_deviation(100);
        let d400 = large_n_deviation(400);
        assert!(d400 < d100, "{d400} vs {d100}");
        assert!(d400 < 0.1, "{d400}");
    }
}
