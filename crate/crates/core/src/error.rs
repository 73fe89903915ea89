use thiserror::Error;

/// Failure modes of the library, grouped by how a caller is expected to react.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Result (or an intermediate) not representable in the scalar type.
    #[error("range error in {op}: {detail}")]
    Range { op: &'static str, detail: String },

    /// A series failed to meet its stopping rule within the allowed number of terms.
    #[error("{op} did not converge after {terms} terms (partial sum {partial_re:e}{partial_im:+e}i)")]
    Convergence {
        op: &'static str,
        terms: usize,
        partial_re: f64,
        partial_im: f64,
    },

    /// Configuration class the solvers do not handle (complex coefficients, overdamped, ...).
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A construction degenerated (vanishing width, zero Wronskian, ...).
    #[error("singular {what}: {detail}")]
    Singular { what: &'static str, detail: String },

    /// Adaptive quadrature could not reach its tolerance.
    #[error("quadrature failed: {0}")]
    Integration(String),

    /// Two sampled grids that must share a lattice do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Invalid or inconsistent user configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Reading or writing a file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn range(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn singular(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Singular {
            what,
            detail: detail.into(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Range { .. } => "range",
            Error::Convergence { .. } => "convergence",
            Error::Unsupported(_) => "unsupported",
            Error::Singular { .. } => "singular",
            Error::Integration(_) => "integration",
            Error::GridMismatch(_) => "grid",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status used by the command-line front end.
    ///
    /// Convergence and quadrature failures map to 3, i/o failures to 1,
    /// everything else to 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } | Error::Integration(_) => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let conv = Error::Convergence {
            op: "hyp1f2",
            terms: 10,
            partial_re: 1.0,
            partial_im: 0.0,
        };
        assert_eq!(conv.exit_code(), 3);
        assert_eq!(Error::Integration("x".into()).exit_code(), 3);
        assert_eq!(Error::Config("x".into()).exit_code(), 2);
        assert_eq!(Error::domain("f", "x").exit_code(), 2);
        assert_eq!(Error::Io("x".into()).exit_code(), 1);
        assert_eq!(conv.kind(), "convergence");
    }
}
