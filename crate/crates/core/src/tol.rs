//! Centralized numerical tolerances.
//!
//! Every threshold used by the engines and the validation harness lives
//! here, with a note on where it comes from. Tests assert against these
//! constants rather than ad-hoc literals.

/// Permutation-symmetry deviation above which tensor input is rejected
/// rather than silently averaged.
pub const SYMMETRY_INPUT_TOL: f64 = 1e-9;

/// Symmetry deviation allowed on tensors produced by internal operations
/// (pure f64 rounding).
pub const SYMMETRY_OUTPUT_TOL: f64 = 1e-12;

/// Probability weights may undershoot zero by this much before being an
/// error; anything in `[-WEIGHT_CLAMP, 0)` is clamped to exactly 0.
pub const WEIGHT_CLAMP: f64 = 1e-12;

/// Total-mass deviation allowed for a probability measure.
pub const PROB_MASS_TOL: f64 = 1e-10;

/// A point on the unit simplex may be off by this much in any coordinate
/// or in total mass before simulators reject it.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Rate-matrix rows must sum to zero within this bound.
pub const ROW_SUM_TOL: f64 = 1e-10;

/// Uniformization truncates once the Poisson tail falls below this.
pub const POISSON_TAIL: f64 = 1e-12;

/// Two-sided max-principle monitor for the PIDE solver: excursions beyond
/// `[min g, max g]` by more than this abort the solve.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-6;

/// Weights above this belong to the numerical support of a maximizer.
pub const SUPPORT_TOL: f64 = 1e-7;

/// First- and second-order optimality residuals below this pass.
pub const KKT_TOL: f64 = 1e-6;

/// Positive-maximum-principle bound: `Lp(nu*) <= PMP_TOL` for admissible
/// specifications at a numerically found maximizer.
pub const PMP_TOL: f64 = 1e-8;

/// Monte Carlo agreement threshold in standard errors.
pub const Z_SCORE_LIMIT: f64 = 3.0;

/// Default cap on the flattened dual state space (size^k).
pub const DEFAULT_STATE_CAP: u128 = 10_000_000;

/// Default maximum supported dual degree.
pub const MAX_DEGREE: usize = 4;
