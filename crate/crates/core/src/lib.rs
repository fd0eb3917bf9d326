//! Exact cross-correlation spectra of m-sequences and their decimations.
//!
//! Every character sum is evaluated in the cyclotomic integers `Z[zeta_p]`
//! ([`cyclo::CycInt`]), so no equality decision ever depends on floating point.
//! The crate is organised bottom-up:
//!
//! * [`field`]: GF(p^n) with log tables, traces, dual bases and the cubic tower
//!   over GF(3^r).
//! * [`cyclo`]: exact arithmetic in `Z[zeta_p]`.
//! * [`characters`]: additive characters, quadratic Gauss sums and quadratic
//!   character sums.
//! * [`spectrum`]: Weil sums `S_d(z)`, full spectra (naive and fast transform),
//!   m-sequences, power moments and the `b3` solution count.
//! * [`ternary`] and [`binary`]: the two decimation families and their
//!   verifiers.
//! * [`battery`]: the full verification battery used by the CLI `suite`.

pub mod characters;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod spectrum;
pub mod ternary;
pub mod binary;
pub mod battery;

pub use error::{Error, Result};
