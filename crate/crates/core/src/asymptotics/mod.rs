//! Large-genus expansions: exact samples, windowed extrapolation in `1/g`,
//! and comparison with the published coefficient polynomials.

mod estimate;
mod fit;
mod poly;
mod report;

pub use estimate::{estimate_c, estimate_m, normalize_vol};
pub use fit::{richardson_fit, AsymFit, WINDOW_SHIFT};
pub use poly::{m_constant, paper_c, paper_c_poly, paper_m, paper_m_poly, MPoly};
pub use report::{
    compare_report, CompareReport, ReportRow, Target, Tolerance, DEFAULT_GMAX, DEFAULT_ORDER,
    PUBLISHED_TERMS,
};
