use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the closed disk where the map is defined.
    #[error("point {re}{im:+}i with modulus {modulus} lies outside the closed unit disk")]
    Domain { re: f64, im: f64, modulus: f64 },

    /// `φ(z) - w` vanishes identically (constant map equal to the target).
    #[error("cleared polynomial is identically zero: the map is constant and equal to the target")]
    Degenerate,

    #[error("root refinement stagnated: residual {residual:e} exceeds {tolerance:e}")]
    Solver { residual: f64, tolerance: f64 },

    /// The counting function is undefined at `φ(0)`.
    #[error("target {re}{im:+}i is within {tolerance:e} of the base point φ(0)")]
    BasePoint { re: f64, im: f64, tolerance: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exponent fit failed: {0}")]
    Fit(String),

    /// The maximal function vanishes, so a ratio property holds vacuously.
    #[error("maximal counting function vanishes at t = {t}")]
    ZeroMaximal { t: f64 },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("symbol failed self-map validation: max boundary modulus {max_boundary_modulus}")]
    NotSelfMap { max_boundary_modulus: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
