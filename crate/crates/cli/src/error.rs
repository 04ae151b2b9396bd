use ksnake_core::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 usage, 3 resource budget, 4 internal invariant, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e.root_cause() {
                Error::Budget { .. } | Error::SizeGuard { .. } => 3,
                Error::Invariant(_) => 4,
                Error::Io(_) => 1,
                Error::InvalidParameter(_)
                | Error::InvalidLaw(_)
                | Error::Adequacy { .. }
                | Error::Parse(_)
                | Error::Trial { .. } => 2,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_see_through_trial_wrappers() {
        let wrap = |e| {
            CliError::Core(Error::Trial {
                index: 3,
                source: Box::new(e),
            })
        };
        assert_eq!(wrap(Error::Budget { budget: 5 }).exit_code(), 3);
        assert_eq!(wrap(Error::Invariant("odd return".into())).exit_code(), 4);
        assert_eq!(CliError::Core(Error::Invariant("x".into())).exit_code(), 4);
        assert_eq!(CliError::Core(Error::invalid("x")).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
