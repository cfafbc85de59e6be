use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no Frobenius coordinates for the empty partition")]
    NoFrobeniusCoordinates,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("degree must be >= 2 (got {0})")]
    DegreeTooSmall(u32),
    #[error("polynomial part beyond constant unsupported")]
    ImproperRationalFunction,
    #[error("oracle search space too large (degree {degree}, {branch_points} branch points)")]
    OracleTooLarge { degree: u32, branch_points: u32 },
    #[error("closed-form coefficient at k = {k} is not an integer")]
    NonIntegerCoefficient { k: i64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
