use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::estimate::{estimate_c, estimate_m};
use super::fit::AsymFit;
use super::poly::{paper_c, paper_m};
use crate::error::{Error, Result};
use crate::exact::BigFloat;

/// Largest genus used by default.
pub const DEFAULT_GMAX: usize = 60;
/// Default truncation order of the fits.
pub const DEFAULT_ORDER: usize = 5;
/// Number of published coefficients per expansion.
pub const PUBLISHED_TERMS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Normalized volumes, coefficients `m_k(n)`.
    Volume,
    /// Area Siegel–Veech constants, coefficients `C_k(n)`.
    SiegelVeech,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Volume => "vol",
            Target::SiegelVeech => "sv",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vol" | "volume" => Ok(Target::Volume),
            "sv" => Ok(Target::SiegelVeech),
            other => Err(Error::domain(format!("unknown target `{other}`"))),
        }
    }
}

/// Acceptance rule for one coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
    /// Same sign, within a factor of ten, and the error bar reaches the reference.
    Qualitative,
}

impl Tolerance {
    /// Schedule calibrated for `gmax = 60`, `K = 5`, 320 bits.
    pub fn for_order(k: usize) -> Self {
        match k {
            0 => Tolerance::Absolute(1e-8),
            1 => Tolerance::Relative(1e-5),
            2 => Tolerance::Relative(1e-3),
            _ => Tolerance::Qualitative,
        }
    }

    pub fn check(&self, estimate: &BigFloat, error: &BigFloat, reference: &BigFloat) -> bool {
        let diff = (estimate - reference).abs();
        match *self {
            Tolerance::Absolute(t) => diff.to_f64() < t,
            Tolerance::Relative(t) => diff.to_f64() < t * reference.abs().to_f64(),
            Tolerance::Qualitative => {
                let (e, r) = (estimate.to_f64(), reference.to_f64());
                let same_sign = e.signum() == r.signum() && e != 0.0;
                let magnitude = same_sign && (e / r).abs().log10().abs() <= 1.0;
                magnitude && diff <= *error
            }
        }
    }

    /// Loosened rule for short windows.
    fn widened(self, error: &BigFloat) -> Self {
        let e = 10.0 * error.to_f64();
        match self {
            Tolerance::Absolute(t) => Tolerance::Absolute(t.max(e)),
            Tolerance::Relative(t) => Tolerance::Relative(t.max(1e-2)),
            Tolerance::Qualitative => Tolerance::Qualitative,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Absolute(t) => write!(f, "abs<{t:.1e}"),
            Tolerance::Relative(t) => write!(f, "rel<{t:.1e}"),
            Tolerance::Qualitative => f.write_str("sign+magnitude+overlap"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub n: usize,
    pub k: usize,
    pub estimate: BigFloat,
    pub error: BigFloat,
    pub paper: BigFloat,
    /// `|estimate - paper| / |paper|`.
    pub relative_deviation: f64,
    pub tolerance: Tolerance,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub target: Target,
    pub gmax: usize,
    pub order: usize,
    /// Tolerances were loosened because the window is shorter than calibrated.
    pub widened: bool,
    pub rows: Vec<ReportRow>,
}

impl CompareReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn rows_for(
    target: Target,
    n: usize,
    fit: &AsymFit,
    widened: bool,
    precision: u32,
) -> Result<Vec<ReportRow>> {
    let terms = PUBLISHED_TERMS.min(fit.k + 1);
    (0..terms)
        .map(|k| {
            let paper = match target {
                Target::Volume => paper_m(k, n, precision)?,
                Target::SiegelVeech => paper_c(k, n, precision)?,
            };
            let estimate = fit.coefficients[k].clone();
            let error = fit.error_estimates[k].clone();
            let mut tolerance = Tolerance::for_order(k);
            if widened {
                tolerance = tolerance.widened(&error);
            }
            let diff = (&estimate - &paper).abs().to_f64();
            Ok(ReportRow {
                n,
                k,
                pass: tolerance.check(&estimate, &error, &paper),
                relative_deviation: diff / paper.abs().to_f64(),
                estimate,
                error,
                paper,
                tolerance,
            })
        })
        .collect()
}

/// Fits every `n` concurrently and compares with the published polynomials.
pub fn compare_report(
    ns: &[usize],
    target: Target,
    gmax: usize,
    order: usize,
    precision: u32,
) -> Result<CompareReport> {
    let mut report = CompareReport {
        target,
        gmax,
        order,
        widened: gmax < DEFAULT_GMAX,
        rows: Vec::new(),
    };
    if ns.is_empty() {
        return Ok(report);
    }
    if gmax >= 2 {
        crate::genus::coeffs_c(gmax)?;
    }
    let fits = ns
        .par_iter()
        .map(|&n| {
            let fit = match target {
                Target::Volume => estimate_m(n, gmax, order, precision)?,
                Target::SiegelVeech => estimate_c(n, gmax, order, precision)?,
            };
            Ok((n, fit))
        })
        .collect::<Result<Vec<_>>>()?;
    report.widened |= fits.iter().any(|(_, f)| f.degraded);
    for (n, fit) in &fits {
        report
            .rows
            .extend(rows_for(target, *n, fit, report.widened, precision)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list() {
        let r = compare_report(&[], Target::Volume, 60, 5, 320).unwrap();
        assert!(r.rows.is_empty());
        assert!(r.pass());
    }

    #[test]
    fn short_window_is_flagged() {
        let r = compare_report(&[0], Target::Volume, 20, 5, 320).unwrap();
        assert!(r.widened);
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows[0].pass);
    }

    #[test]
    fn tolerance_rules() {
        let f = |v: f64| BigFloat::from_rat(&crate::exact::BigRat::from_float(v).unwrap(), 128);
        assert!(Tolerance::Absolute(1e-3).check(&f(1.0005), &f(0.0), &f(1.0)));
        assert!(!Tolerance::Relative(1e-4).check(&f(1.0005), &f(0.0), &f(1.0)));
        assert!(Tolerance::Qualitative.check(&f(0.5), &f(0.6), &f(1.0)));
        assert!(!Tolerance::Qualitative.check(&f(-0.5), &f(2.0), &f(1.0)));
        assert!(!Tolerance::Qualitative.check(&f(0.5), &f(0.1), &f(1.0)));
    }

    #[test]
    fn targets_parse() {
        assert_eq!("vol".parse::<Target>().unwrap(), Target::Volume);
        assert_eq!("sv".parse::<Target>().unwrap(), Target::SiegelVeech);
        assert!("x".parse::<Target>().is_err());
    }
}
