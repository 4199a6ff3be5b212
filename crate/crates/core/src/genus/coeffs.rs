use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use super::ilw::u_from_tilde;
use crate::error::{Error, Result};
use crate::exact::{
    double_factorial, factorial, int, laurent_dt, pochhammer, pow2, rat, BigRat, GenusBlock,
    LaurentT,
};

/// `C_{g,j} = <lambda_j tau_2^{3g-3-j}>_g / (3g-3-j)!` for `j = 0..=g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCoeffs {
    pub g: usize,
    pub c: Vec<BigRat>,
}

impl GenusCoeffs {
    /// `H_g = sum_j C_{g,j} T^{-(5g-5-j)}`
    pub fn free_energy(&self) -> LaurentT {
        let g = self.g as i64;
        LaurentT::from_terms(
            self.c
                .iter()
                .enumerate()
                .map(|(j, c)| (-(5 * g - 5 - j as i64), c.clone())),
        )
    }
}

fn coeffs_cache() -> &'static Mutex<Vec<Option<GenusCoeffs>>> {
    static CACHE: OnceLock<Mutex<Vec<Option<GenusCoeffs>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Extracts `C_{g,j}` from `u^{[g]}`: the coefficient of `T^{-(5g-1-j)}`
/// divided by `(5g-3-j)(5g-5-j)`. Any other exponent in `u^{[g]}` is an error.
pub fn coeffs_c(g: usize) -> Result<GenusCoeffs> {
    if g < 2 {
        return Err(Error::domain(format!("C_(g,j) needs g >= 2, got {g}")));
    }
    if let Some(Some(c)) = coeffs_cache().lock().unwrap().get(g) {
        return Ok(c.clone());
    }
    let u = u_from_tilde(g);
    let gi = g as i64;
    let lo = -(5 * gi - 1);
    let hi = -(4 * gi - 1);
    if let Some((e, _)) = u.terms().find(|(e, _)| *e < lo || *e > hi) {
        return Err(Error::Consistency(format!(
            "u^[{g}] has a term T^{e} outside T^{lo}..T^{hi}"
        )));
    }
    let mut c = Vec::with_capacity(g + 1);
    for j in 0..=gi {
        let coeff = u.coeff(-(5 * gi - 1 - j));
        if coeff.is_zero() {
            return Err(Error::Consistency(format!(
                "u^[{g}] is missing T^{}",
                -(5 * gi - 1 - j)
            )));
        }
        c.push(coeff / int((5 * gi - 3 - j) * (5 * gi - 5 - j)));
    }
    let out = GenusCoeffs { g, c };
    let mut cache = coeffs_cache().lock().unwrap();
    if cache.len() <= g {
        cache.resize(g + 1, None);
    }
    cache[g] = Some(out.clone());
    Ok(out)
}

/// Kazarian's recursion for `c_{g,j} = C_{g,j} (5g-5-j)(5g-3-j)`,
/// i.e. the coefficient of `T^{-(5g-1-j)}` in `u^{[g]}`.
///
/// The displayed factor `(g+1-k)` is read as `(g+1-j)`. Seeding with the
/// genus-0 row `c_{0,0} = -1` (the `-T` in `u^{[0]} = 1 - T`) lets the
/// recursion produce `c_{1,0} = 1/12`, `c_{1,1} = 1/24` itself.
pub fn kazarian_c(g: usize) -> Result<Vec<BigRat>> {
    if g < 1 {
        return Err(Error::domain("kazarian_c needs g >= 1"));
    }
    static ROWS: OnceLock<Mutex<Vec<Vec<BigRat>>>> = OnceLock::new();
    let mut rows = ROWS
        .get_or_init(|| Mutex::new(vec![vec![rat(-1, 1)]]))
        .lock()
        .unwrap();
    let at = |rows: &Vec<Vec<BigRat>>, g: usize, j: usize| -> BigRat {
        rows.get(g)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    };
    while rows.len() <= g {
        let h = rows.len();
        let hi = h as i64;
        let mut row: Vec<BigRat> = Vec::with_capacity(h + 1);
        for j in 0..=h {
            let ji = j as i64;
            let mut v = BigRat::zero();
            if j > 0 {
                v += rat(hi + 1 - ji, 5 * hi - 2 - ji) * &row[j - 1];
            }
            v += rat((5 * hi - 6 - ji) * (5 * hi - 4 - ji), 12) * at(&rows, h - 1, j);
            let mut conv = BigRat::zero();
            for g1 in 1..h {
                for j1 in 0..=j {
                    conv += at(&rows, g1, j1) * at(&rows, h - g1, j - j1);
                }
            }
            v += conv * rat(1, 2);
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows[g].clone())
}

/// `a_{g,n}` from genus data only: `d^n H_g/dx^n` at `x = 0`.
pub fn agn_from_series(g: usize, n: usize) -> BigRat {
    match g {
        0 if n >= 3 => double_factorial(2 * n as i64 - 7),
        0 => BigRat::zero(),
        1 if n == 0 => BigRat::zero(),
        1 => {
            let first = pow2(n as i64 - 1) * int(factorial(n - 1));
            (first + double_factorial(2 * n as i64 - 3)) * rat(1, 24)
        }
        _ => {
            let c = coeffs_c(g).expect("g >= 2");
            let mut acc = BigRat::zero();
            for (j, cj) in c.c.iter().enumerate() {
                acc += cj * pochhammer(&rat((5 * g - 5 - j) as i64, 2), n);
            }
            acc * pow2(n as i64)
        }
    }
}

/// Closed forms of `H_0`, `H_1`, `H_2`.
pub fn closed_h(g: usize) -> Result<GenusBlock> {
    match g {
        0 => Ok(GenusBlock::pure(LaurentT::from_terms([
            (0, rat(1, 40)),
            (2, rat(-1, 12)),
            (4, rat(1, 8)),
            (5, rat(-1, 15)),
        ]))),
        1 => Ok(GenusBlock {
            log_coeff: rat(1, 24),
            laurent: LaurentT::from_terms([(0, rat(1, 24)), (1, rat(-1, 24))]),
        }),
        2 => Ok(GenusBlock::pure(LaurentT::from_terms([
            (-5, rat(7, 1440)),
            (-4, rat(5, 1152)),
            (-3, rat(7, 5760)),
        ]))),
        _ => Err(Error::domain(format!(
            "closed form known only for g <= 2, got {g}"
        ))),
    }
}

/// `H_g` for any genus: closed forms for `g <= 1`, `C_{g,j}` data otherwise.
pub fn genus_block(g: usize) -> GenusBlock {
    match g {
        0 | 1 => closed_h(g).expect("g <= 1"),
        _ => GenusBlock::pure(coeffs_c(g).expect("g >= 2").free_energy()),
    }
}

/// Left-hand side of the genus-`g` equation
/// `x H_g'' + (2g - 3/2) H_g' - 1/4 sum H_{g1}'' H_{g2}'' - 1/24 H_{g-1}''''`.
pub fn genus_ode_residual(g: usize) -> LaurentT {
    let first: Vec<LaurentT> = (0..=g).map(|h| genus_block(h).derivative()).collect();
    let second: Vec<LaurentT> = first.iter().map(LaurentT::dt).collect();
    let mut out = &LaurentT::x() * &second[g];
    out = &out + &first[g].scale(&rat(4 * g as i64 - 3, 2));
    let mut quad = LaurentT::zero();
    for g1 in 0..=g {
        quad = &quad + &(&second[g1] * &second[g - g1]);
    }
    out = &out - &quad.scale(&rat(1, 4));
    if g >= 1 {
        out = &out - &laurent_dt(&first[g - 1], 3).scale(&rat(1, 24));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_coefficients() {
        let c = coeffs_c(2).unwrap();
        assert_eq!(c.c, vec![rat(7, 1440), rat(5, 1152), rat(7, 5760)]);
        let sum = c.c.iter().fold(BigRat::zero(), |a, b| a + b);
        assert_eq!(sum, rat(1, 96));
    }

    #[test]
    fn genus_three_leading() {
        // 24^-3 * 19600 / ((15-3)(15-5))
        let expected = rat(19600, 24 * 24 * 24 * 12 * 10);
        assert_eq!(coeffs_c(3).unwrap().c[0], expected);
    }

    #[test]
    fn kazarian_seeds_and_genus_two() {
        assert_eq!(kazarian_c(1).unwrap(), vec![rat(1, 12), rat(1, 24)]);
        assert_eq!(kazarian_c(2).unwrap()[0], rat(49, 288));
        assert!(kazarian_c(0).is_err());
    }

    #[test]
    fn series_spot_values() {
        assert_eq!(agn_from_series(2, 1), rat(29, 640));
        assert_eq!(agn_from_series(0, 6), rat(15, 1));
        assert_eq!(agn_from_series(1, 3), rat(11, 24));
        assert_eq!(agn_from_series(1, 0), rat(0, 1));
        assert_eq!(agn_from_series(0, 2), rat(0, 1));
    }

    #[test]
    fn closed_forms_match_genus_data() {
        assert_eq!(closed_h(2).unwrap(), genus_block(2));
        assert!(closed_h(3).is_err());
        assert_eq!(closed_h(1).unwrap().log_coeff, rat(1, 24));
        assert!(closed_h(0).unwrap().log_coeff.is_zero());
    }

    #[test]
    fn closed_forms_reproduce_derivatives() {
        for g in 0..=2 {
            let h = closed_h(g).unwrap();
            for n in 0..=8 {
                assert_eq!(h.derivative_at_zero(n), agn_from_series(g, n), "({g},{n})");
            }
        }
    }

    #[test]
    fn genus_ode_holds() {
        for g in 0..=10 {
            assert!(genus_ode_residual(g).is_zero(), "g = {g}");
        }
    }
}
