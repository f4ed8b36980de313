//! High-precision residual checks of the differential-equation claims.

mod functions;
mod jet;
mod real;
mod sweep;

pub use functions::{
    evi_residual, h0_jet, h_nm, hbar_1m, log_derivative, magnitude, poly_jet, pvi_params, pvi_residual, q_m_parts,
    specialize, t_bridge, u_stack, BValues, BetaSign, Bridge, DerivStack, EviForm, H0Form, PVIParams, QIndexing,
    QParse, QmParts,
};
pub use jet::{Jet, ORDER};
pub use real::{log10_abs, to_decimal, Prec};
pub use sweep::{
    default_grid, fd_cross_check, h1m_exact_residual, log_u_path, poly_path, precision_gain, resolve_indexing,
    residual_at, sweep, CheckId, CheckParams, NumericConfig, NumericReport, PviTuple,
};
