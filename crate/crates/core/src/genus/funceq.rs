use std::fmt;

use num_traits::Zero;

use crate::agn::{build_table, AgnTable, Method};
use crate::exact::{binomial, factorial, int, pow2, rat, BigRat, GaussianRat};

/// Truncated series `sum c[a][b] x^a eps^b` with Gaussian-rational
/// coefficients, `a < x_len`, `b < eps_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: Vec<Vec<GaussianRat>>,
    x_len: usize,
    eps_len: usize,
}

impl BiSeries {
    pub fn zero(x_len: usize, eps_len: usize) -> Self {
        Self {
            coeffs: vec![vec![GaussianRat::zero(); eps_len]; x_len],
            x_len,
            eps_len,
        }
    }

    pub fn truncation(&self) -> (usize, usize) {
        (self.x_len, self.eps_len)
    }

    pub fn coeff(&self, a: usize, b: usize) -> &GaussianRat {
        &self.coeffs[a][b]
    }

    pub fn add_to(&mut self, a: usize, b: usize, v: &GaussianRat) {
        if a < self.x_len && b < self.eps_len {
            self.coeffs[a][b] = &self.coeffs[a][b] + v;
        }
    }

    fn map(
        &self,
        f: impl Fn(usize, usize, &GaussianRat) -> Option<(usize, usize, GaussianRat)>,
    ) -> Self {
        let mut out = Self::zero(self.x_len, self.eps_len);
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((a2, b2, v)) = f(a, b, c) {
                    out.add_to(a2, b2, &v);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        self.map(|a, b, c| Some((a, b, c.scale(s))))
    }

    /// `d/dx`; the top `x` coefficient becomes unknown and is dropped.
    pub fn dx(&self) -> Self {
        self.map(|a, b, c| (a > 0).then(|| (a - 1, b, c.scale(&int(a as i64)))))
    }

    pub fn dx_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.dx())
    }

    /// `x d/dx`
    pub fn x_dx(&self) -> Self {
        self.map(|a, b, c| Some((a, b, c.scale(&int(a as i64)))))
    }

    /// `eps d/deps`
    pub fn eps_deps(&self) -> Self {
        self.map(|a, b, c| Some((a, b, c.scale(&int(b as i64)))))
    }

    /// Multiplies by `eps^k`.
    pub fn eps_shift(&self, k: usize) -> Self {
        self.map(|a, b, c| Some((a, b + k, c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, row) in other.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out.add_to(a, b, c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.x_len, self.eps_len);
        for (a1, row1) in self.coeffs.iter().enumerate() {
            for (b1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (a2, row2) in other.coeffs.iter().enumerate().take(self.x_len - a1) {
                    for (b2, c2) in row2.iter().enumerate().take(self.eps_len - b1) {
                        if !c2.is_zero() {
                            out.add_to(a1 + a2, b1 + b2, &(c1 * c2));
                        }
                    }
                }
            }
        }
        out
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Self {
        self.map(|a, b, c| Some((a, b, c.conj())))
    }

    /// Builds `F(x, eps) = sum_{g,n} eps^{2g} a_{g,n} (x + s*i*eps/2)^n / n!`,
    /// with `s = +1`, `-1` or `0` (no shift), i.e. `eps^2 H(x + s*i*eps/2, eps)`.
    pub fn from_agn(
        agn: impl Fn(usize, usize) -> BigRat,
        gmax: usize,
        x_len: usize,
        eps_len: usize,
        shift_sign: i64,
    ) -> Self {
        let mut out = Self::zero(x_len, eps_len);
        for g in 0..=gmax {
            if 2 * g >= eps_len {
                break;
            }
            for n in 0..x_len + eps_len {
                let a = agn(g, n);
                if a.is_zero() {
                    continue;
                }
                let base = a / int(factorial(n));
                let kmax = if shift_sign == 0 { 0 } else { n };
                for k in 0..=kmax {
                    let (xa, eb) = (n - k, 2 * g + k);
                    if xa >= x_len || eb >= eps_len {
                        continue;
                    }
                    // C(n,k) (s i / 2)^k
                    let sign = if shift_sign < 0 && k % 2 == 1 { -1 } else { 1 };
                    let w = &base * int(binomial(n, k)) * pow2(-(k as i64)) * int(sign);
                    out.add_to(xa, eb, &GaussianRat::i_pow(k).scale(&w));
                }
            }
        }
        out
    }
}

/// Which identity a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    /// `[dx(H+ - H-)]^2 + dx^2(H+ + H-) = 2x/eps^2`
    Quadratic,
    /// `(eps d_eps + x dx/2 - eps^2 dx^3/24)(H+ - H-) + eps^2/12 [dx(H+ - H-)]^3 = 0`
    Cubic,
    /// `eps d_eps dx H + x dx^2 H + dx H/2 - eps^2/4 (dx^2 H)^2 - eps^2/24 dx^4 H = 0`
    Unshifted,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Quadratic => "quadratic",
            Equation::Cubic => "cubic",
            Equation::Unshifted => "unshifted",
        })
    }
}

/// A nonzero coefficient of `x^x_pow eps^eps_pow` on the left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub equation: Equation,
    pub x_pow: usize,
    pub eps_pow: i64,
    pub value: GaussianRat,
}

#[derive(Clone, Debug)]
pub struct FuncEqReport {
    pub pass: bool,
    /// Number of coefficients checked per equation.
    pub checked: usize,
    pub residuals: Vec<Residual>,
}

/// Checks the three functional equations on `a_{g,n}` from the direct recursion.
pub fn verify_functional_eqs(nx: usize, gmax: usize) -> crate::Result<FuncEqReport> {
    let table = build_table(gmax, nx + 2 * gmax + 2, Method::Direct)?;
    verify_functional_eqs_on(&table, nx, gmax)
}

/// Checks the equations on the given table.
///
/// With `F = eps^2 H`, the equations are multiplied through by `eps^4`,
/// `eps^4` and `eps^2` so every series starts at `eps^0`. A coefficient
/// `x^a eps^b` of the scaled left-hand sides depends only on `a_{g,n}` with
/// `2g <= b` and `n <= a + b + 1`, so the window `a <= nx`, `b <= 2 gmax + 1`
/// is exact once the table holds `n <= nx + 2 gmax + 2`.
pub fn verify_functional_eqs_on(
    table: &AgnTable,
    nx: usize,
    gmax: usize,
) -> crate::Result<FuncEqReport> {
    if nx < 1 || gmax < 1 {
        return Err(crate::Error::domain("need nx >= 1 and gmax >= 1"));
    }
    let eps_len = 2 * gmax + 2;
    let x_len = nx + eps_len + 1;
    let nmax = nx + 2 * gmax + 2;
    for g in 0..=gmax {
        for n in 0..=nmax {
            if table.get(g, n).is_none() {
                return Err(crate::Error::domain(format!("table lacks a_({g},{n})")));
            }
        }
    }
    let lookup = |g: usize, n: usize| table.get(g, n).cloned().unwrap_or_else(BigRat::zero);

    let fp = BiSeries::from_agn(lookup, gmax, x_len, eps_len, 1);
    let fm = BiSeries::from_agn(lookup, gmax, x_len, eps_len, -1);
    let f0 = BiSeries::from_agn(lookup, gmax, x_len, eps_len, 0);
    let diff = fp.sub(&fm);
    let dd = diff.dx();

    // eps^4 * quadratic: [dx D]^2 + eps^2 dx^2 (F+ + F-) - 2 x eps^2
    let mut quad = dd.mul(&dd).add(&fp.add(&fm).dx_n(2).eps_shift(2));
    quad.add_to(1, 2, &GaussianRat::real(rat(-2, 1)));

    // eps^4 * cubic: eps^2 (eps d_eps D - 2D + x dx D / 2) - eps^4 dx^3 D / 24 + (dx D)^3 / 12
    let cubic = diff
        .eps_deps()
        .sub(&diff.scale(&rat(2, 1)))
        .add(&diff.x_dx().scale(&rat(1, 2)))
        .eps_shift(2)
        .sub(&diff.dx_n(3).scale(&rat(1, 24)).eps_shift(4))
        .add(&dd.mul(&dd).mul(&dd).scale(&rat(1, 12)));

    // eps^2 * unshifted: (eps d_eps - 2) dx F + x dx^2 F + dx F / 2 - (dx^2 F)^2 / 4 - eps^2 dx^4 F / 24
    let d1 = f0.dx();
    let d2 = d1.dx();
    let unshifted = d1
        .eps_deps()
        .sub(&d1.scale(&rat(3, 2)))
        .add(&d1.x_dx())
        .sub(&d2.mul(&d2).scale(&rat(1, 4)))
        .sub(&d1.dx_n(3).scale(&rat(1, 24)).eps_shift(2));

    let mut residuals = Vec::new();
    let mut checked = 0;
    for (eq, series, scale) in [
        (Equation::Quadratic, &quad, 4),
        (Equation::Cubic, &cubic, 4),
        (Equation::Unshifted, &unshifted, 2),
    ] {
        checked = 0;
        for a in 0..=nx {
            for b in 0..=2 * gmax + 1 {
                checked += 1;
                let v = series.coeff(a, b);
                if !v.is_zero() {
                    residuals.push(Residual {
                        equation: eq,
                        x_pow: a,
                        eps_pow: b as i64 - scale,
                        value: v.clone(),
                    });
                }
            }
        }
    }
    Ok(FuncEqReport {
        pass: residuals.is_empty(),
        checked,
        residuals,
    })
}
