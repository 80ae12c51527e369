use thiserror::Error;

use qsdisc_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("invalid --eval point: {0}")]
    EvalPoint(String),
    #[error("{0}")]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for unusable input, 1 for unmet preconditions.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::EvalPoint(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NotQuasiSymmetric { .. }
                | CoreError::NotCalabiYau(_)
                | CoreError::PoleOrZero(_)
                | CoreError::UnmatchedNormal(_) => 1,
                _ => 2,
            },
        }
    }

    pub fn guidance(&self) -> Option<&'static str> {
        match self {
            CliError::Core(CoreError::NotQuasiSymmetric { .. }) => Some(
                "circuit enumeration and both arrangements are only defined for quasi-symmetric weights; `check` and `horn` still apply",
            ),
            CliError::Core(CoreError::NotCalabiYau(_)) => {
                Some("the Horn map is only well defined when the weights sum to zero")
            }
            CliError::Core(CoreError::PoleOrZero(_)) => {
                Some("choose an evaluation point off every line's hyperplane")
            }
            _ => None,
        }
    }
}
