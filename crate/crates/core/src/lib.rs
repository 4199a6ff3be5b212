//! Exact computation of Masur–Veech volumes of the principal strata of
//! quadratic differentials `Q_{g,n}`, their area Siegel–Veech constants,
//! and numerical large-genus asymptotics.
//!
//! ```
//! use mvlab::{agn, volume, Method};
//!
//! assert_eq!(agn(2, 1, Method::Direct).unwrap().to_string(), "29/640");
//! assert_eq!(volume(1, 1).unwrap().to_string(), "2/3*pi^2");
//! ```

pub mod agn;
pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod genus;
pub mod volumes;

pub use agn::{
    a_alt, a_direct, agn, build_table, check_reference, load_table, parse_table, save_table,
    AgnTable, Method,
};
pub use asymptotics::{
    compare_report, estimate_c, estimate_m, normalize_vol, richardson_fit, AsymFit, MPoly, Target,
};
pub use error::{Error, Result};
pub use exact::{BigFloat, BigRat, GaussianRat, GenusBlock, LaurentT};
pub use genus::{
    coeffs_c, tilde_u, u_direct, u_from_tilde, verify_functional_eqs, BiSeries, GenusCoeffs,
};
pub use volumes::{kappa, sv_constant, volume, PiScaled};
