use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument identifier {0:?}")]
    InvalidId(String),

    #[error("argument {0} declared twice")]
    DuplicateArgument(String),

    #[error("attack ({0},{1}) declared twice")]
    DuplicateAttack(String, String),

    #[error("unknown argument {0}")]
    UnknownArgument(String),

    #[error("framework has {count} arguments, limit is {max}")]
    TooManyArguments { count: usize, max: usize },

    #[error("argument set does not belong to this framework")]
    ForeignSet,

    #[error("mapping is not a bijection: {0}")]
    NotBijective(String),

    #[error("argument {0} appears in both frameworks")]
    IdCollision(String),

    #[error("argument {0} is already in the coalition")]
    MemberOfCoalition(String),

    #[error("{0}")]
    InvalidScores(String),

    #[error("{0}")]
    InvalidRequest(String),

    #[error("computation budget exceeded during {stage}")]
    BudgetExceeded { stage: &'static str },
}
