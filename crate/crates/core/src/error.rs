use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFnError {
    #[error("asymptotic Laguerre formula requires x < 0, got {x}")]
    AsymptoticDomain { x: f64 },
    #[error("asymptotic Laguerre formula requires n >= 1")]
    AsymptoticOrder,
    #[error("quadrature rule needs at least one node")]
    EmptyRule,
    #[error("Newton iteration for a {nodes}-point rule did not converge")]
    NoConvergence { nodes: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyGaussError {
    #[error(
        "quadratic exponent coefficient {quad} is not positive: function is not square integrable"
    )]
    NotSquareIntegrable { quad: f64 },
    #[error("combined quadratic coefficient {a} is not positive: integral does not converge")]
    NotIntegrable { a: f64 },
    #[error("cannot add functions with different Gaussian exponents")]
    ExponentMismatch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("parameter {name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("omega must be positive, got {0}")]
    NonPositiveOmega(f64),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("omega = {omega} must exceed 2 lambda = {two_lambda}")]
    Unbounded { omega: f64, two_lambda: f64 },
    #[error("{0}")]
    Normalization(#[from] PolyGaussError),
    #[error("convergence constant {name} must be strictly positive, got {value}")]
    NonPositiveConstant { name: &'static str, value: f64 },
}
