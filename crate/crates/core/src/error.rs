use alloc::string::String;

use crate::protocol::Stage;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown environment `{0}`")]
    NotFound(String),
    #[error("operation requires stage {expected:?}, session is in {actual:?}")]
    StageViolation { expected: Stage, actual: Stage },
    #[error("invalid turn budget: {0}")]
    InvalidBudget(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("malformed data: {0}")]
    Data(String),
}
