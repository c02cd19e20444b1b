use mapgerm_core::{FamilyError, GermError, InvariantError, SpecError};

/// A failed command with its exit code: 1 for usage and parse errors,
/// 2 for mathematical rejection.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Rejected(String),
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }

    pub fn rejected(msg: impl Into<String>) -> Self {
        Failure::Rejected(msg.into())
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Rejected(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Rejected(m) => m,
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        match e {
            GermError::Corank2 | GermError::NormalizationUnavailable | GermError::Pole { .. } => {
                Failure::rejected(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Germ(g) => g.into(),
            e => Failure::rejected(e.to_string()),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Germ(g) => g.into(),
            FamilyError::Invariant(i) => i.into(),
            e => Failure::rejected(e.to_string()),
        }
    }
}
