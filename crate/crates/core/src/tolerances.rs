//! Numerical tolerances shared across the crate.

/// Slack allowed on `|φ(e^{iθ})| ≤ 1` when certifying a self-map.
pub const TOL_SELFMAP: f64 = 1e-10;

/// Roots closer than this are merged into one root with summed multiplicity.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Roots with `|z| ≥ 1 - EPS_EXCLUSION` are treated as boundary points and dropped.
pub const EPS_EXCLUSION: f64 = 1e-9;

/// Radius around `φ(0)` where the counting function is reported as undefined.
pub const TOL_BASE: f64 = 1e-9;

/// Default residual target `|φ(z) - w|` for refined preimages.
pub const TOL_ROOT: f64 = 1e-12;

/// Bisection tolerance on boundary angles.
pub const TOL_THETA: f64 = 1e-12;

/// Multiplicative slack on inequality checks to absorb quadrature noise.
pub const TOL_INEQ: f64 = 1e-3;

/// Default relative tolerance for area and boundary quadrature.
pub const TOL_QUAD: f64 = 1e-6;

/// Largest admissible cleared-polynomial degree.
pub const MAX_DEGREE: usize = 64;

/// Default Monte Carlo seed.
pub const DEFAULT_SEED: u64 = 0x5EED;
