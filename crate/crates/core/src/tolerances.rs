//! Tolerance classes shared by tests, reports and the command-line front end.
//!
//! | Class | Value | Used for |
//! |-------|-------|----------|
//! | exact algebra | 1e-12 | closed-form identities and oracle agreement |
//! | bivector identity | 1e-13 | the two-beable product rule |
//! | solver residual | 1e-10 | Hardy constraint residual norm |
//! | solver prediction | 1e-8 | predictions computed from solved angles |
//! | statistical | 5σ | Monte Carlo means |

/// Closed-form identities and model-vs-oracle agreement.
pub const IDENTITY: f64 = 1e-12;

/// The two-beable product rule in Cl(3,0).
pub const BIVECTOR_IDENTITY: f64 = 1e-13;

/// Acceptance threshold on the Hardy residual norm.
pub const SOLVER_RESIDUAL: f64 = 1e-10;

/// Predictions that pass through solved Hardy angles.
pub const SOLVER_PREDICTION: f64 = 1e-8;

/// Statistical bound in units of the standard error.
pub const SIGMA_BOUND: f64 = 5.0;

/// Admissible deviation of a user-supplied unit vector from norm 1.
pub const UNIT_INPUT: f64 = 1e-9;

/// Below this |a×b| the normalized axis of a pair is undefined.
pub const PARALLEL_AXIS: f64 = 1e-12;

/// Below this |sin| a cotangent or ratio constraint is treated as a pole.
pub const POLE: f64 = 1e-12;

/// Tsirelson bound 2√2.
pub const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;
