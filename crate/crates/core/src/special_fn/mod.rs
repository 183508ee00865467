//! Gamma, zeta, polylogarithm, Gauss hypergeometric function, the shifted
//! hypergeometric `L_{a,c}`, and the closed-form certification constants
//! for polylogarithm and hypergeometric harmonic maps.

mod certify;
mod gamma;
mod hypergeom;
mod polylog;
mod zeta;

pub use certify::{certify_hypergeom_map, certify_polylog_map};
pub(crate) use gamma::gamma_real;
pub use gamma::{gamma, ln_gamma, pochhammer};
pub use hypergeom::{
    gauss_value, hyp2f1, hyp2f1_derivative, hypergeom_constant_m, l_derivative, l_euler, l_function, l_prime_at_one,
    l_series,
};
pub use polylog::{polylog, polylog_integral, polylog_series};
pub use zeta::zeta;

use crate::gen_func::GenFuncError;
use crate::harmonic_map::HarmonicError;
use crate::measure::MeasureError;
use thiserror::Error;

/// Hard cap on series length.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFnError {
    #[error("{function} is not defined at {argument}")]
    Domain { function: &'static str, argument: f64 },
    #[error("{function}: |z| = {modulus} is outside the series disk |z| <= 1 - 1e-9")]
    OutsideDisk { function: &'static str, modulus: f64 },
    #[error("lower parameter {0} is a non-positive integer")]
    ParameterPole(f64),
    #[error("series not converged after {terms} terms (last term {last_term:e})")]
    Inconclusive { terms: usize, last_term: f64 },
    #[error(transparent)]
    GenFunc(#[from] GenFuncError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// Stopping rule for power series: stop once the estimated tail is below
/// `tol * (1 + |partial sum|)`, or give up after `max_terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-15,
            max_terms: MAX_SERIES_TERMS,
        }
    }
}

/// Series are summed only on `|z| ≤ 1 - SERIES_MARGIN`.
pub const SERIES_MARGIN: f64 = 1e-9;
