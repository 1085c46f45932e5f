use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("rank {k} out of range for a matrix of order {n}")]
    RankOutOfRange { k: usize, n: usize },

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    Indefinite(f64),

    #[error("matrix is not positive definite (smallest eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("matrix is not a strict contraction (norm {0:.3e})")]
    NotContraction(f64),

    #[error("invalid canonical summand: {0}")]
    InvalidSummand(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("no feasible bracketing of the targets")]
    BracketingInfeasible,

    #[error("subset enumeration of {0} hulls exceeds the guard")]
    GuardExceeded(u128),

    #[error("Hamiltonian has eigenvalues on the imaginary axis")]
    ImaginaryAxis,

    #[error("isometry search failed, best residual {residual:.3e}")]
    SearchFailed { residual: f64 },

    #[error("certificate check failed: {0}")]
    Certificate(String),
}

impl Error {
    /// True when the failure is numerical (convergence, residual) rather
    /// than caused by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::Singular
                | Error::ImaginaryAxis
                | Error::SearchFailed { .. }
                | Error::Certificate(_)
                | Error::BracketingInfeasible
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
