//! Error types shared across the crate.

use thiserror::Error;

/// Numeric-kernel failures.
#[derive(Debug, Clone, Error)]
pub enum KernelError {
    /// A required solve hit the condition gate: the evaluation point left the
    /// computational domain of analyticity.
    #[error("outside the analytic domain (condition estimate {cond:.3e})")]
    OutsideAnalyticDomain { cond: f64 },
    #[error("singular matrix in solve")]
    Singular,
}

/// Structure-constant layer failures.
#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure error [{residual}]: |{value:.3e}| exceeds {tol:.3e}")]
    Structure {
        residual: String,
        value: f64,
        tol: f64,
    },
    #[error("setup flagged bidynamical but {0}")]
    NotBidynamical(String),
    #[error("quasi-bialgebra axioms fail [{residual}]: |{value:.3e}| exceeds {tol:.3e}")]
    Axiom {
        residual: String,
        value: f64,
        tol: f64,
    },
    #[error("lagrangian splitting invalid: {0}")]
    Split(String),
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
}

/// Engine-level failures (evaluation of l-matrices and the duality pipeline).
#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element violates the vertex-algebra constraint: residual {0:.3e}")]
    Membership(f64),
    #[error("{0}")]
    Unsupported(String),
}
