//! Genus-by-genus Laurent data in `T = sqrt(1 - 2x)`.
//!
//! Two independent recursions produce `u^{[g]}` (the genus-`g` part of
//! `eps^2 d^2H/dx^2`): one through the ILW variable `u~` and a Bernoulli-weighted
//! change of variables, one directly in `u`. The coefficients `C_{g,j}` of
//! `H_g = sum_j C_{g,j} T^{-(5g-5-j)}` follow, and with them every `a_{g,n}`.

mod coeffs;
mod funceq;
mod ilw;

pub use coeffs::{
    agn_from_series, closed_h, coeffs_c, genus_block, genus_ode_residual, kazarian_c, GenusCoeffs,
};
pub use funceq::{
    verify_functional_eqs, verify_functional_eqs_on, BiSeries, Equation, FuncEqReport, Residual,
};
pub use ilw::{tilde_u, u_direct, u_from_tilde};
