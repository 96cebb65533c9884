use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {field} must be positive and finite (got {value})")]
    Config { field: &'static str, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported derivative order {0} (at most 2)")]
    DerivativeOrder(u8),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("singular linear system (determinant {det:e})")]
    Degenerate { det: f64 },

    #[error("degenerate background: a^2 + (c+d)^2 must be nonzero")]
    DegenerateBackground,

    #[error("|y| = {y:e} lies outside the narrow region |y| <= {limit:e}")]
    OutOfRegion { y: f64, limit: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("refinement did not converge: {0}")]
    NoConvergence(String),

    #[error("finite-difference stencil leaves the fluid domain at ({x}, {y})")]
    Stencil { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
