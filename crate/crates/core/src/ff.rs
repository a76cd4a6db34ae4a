//! Quadratic function fields over F_q(t): finite-field and polynomial
//! arithmetic, hyperelliptic Jacobians in Mumford form with Cantor
//! addition, zeta-based class numbers, ℓ-part structure, and the
//! exhaustive census of class-group statistics.

pub mod census;
pub mod curve;
pub mod field;
pub mod poly;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FfError {
    #[error("q = {0} is not an odd prime power")]
    BadFieldSize(u64),
    #[error("parameters out of the supported range: {0}")]
    Budget(String),
    #[error("invalid Mumford divisor: {0}")]
    BadDivisor(String),
    #[error("zeta functional-equation check failed for curve {0}")]
    ZetaSymmetry(String),
    #[error("Sylow subgroup failed to saturate after {0} rounds")]
    SylowSaturation(u32),
    #[error("census aborted: {0} of {1} curves failed")]
    CensusFailures(usize, usize),
}
