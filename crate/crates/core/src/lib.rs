//! Completely monotone sequences, their generating functions, and harmonic
//! maps `h + c·conj(g)` built from them.
//!
//! The modules build on each other: [`moment_seq`] works with finite
//! sequence prefixes, [`measure`] holds representing measures on [0, 1],
//! [`gen_func`] evaluates `∫ dμ(t)/(1 - tz)` and its shift, [`harmonic_map`]
//! combines two shifted functions into a harmonic map and certifies
//! quasiconformality, and [`special_fn`] supplies polylogarithms, zeta,
//! gamma and hypergeometric functions.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < y)` deliberately rejects NaN

pub mod cli;
pub mod gen_func;
pub mod grid;
pub mod harmonic_map;
pub mod json;
pub mod measure;
pub mod moment_seq;
pub mod quad;
pub mod special_fn;

pub use gen_func::{check_t_membership, ExtendedReal, GenFuncError, ShiftedTFunction, TFunction};
pub use grid::{GridSpec, RectGrid};
pub use harmonic_map::{HarmonicError, HarmonicMap, QcCertificate, Verdict};
pub use measure::{Atom, DensityFamily, Measure, MeasureError};
pub use moment_seq::{leibniz_difference, CmVerdict, MomentSequence, SequenceError};
pub use num_complex::Complex64;
