use thiserror::Error;

use crate::numerics::TimeModel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `+inf` and `-inf` were added together. The solver never does this on
    /// valid input, so hitting it means a caller broke an invariant.
    #[error("indeterminate sum: -inf + inf")]
    IndeterminateSum,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("value `{value}` is not admitted by the {model} time model")]
    ModelMismatch { value: String, model: TimeModel },

    #[error("unknown action `{0}`")]
    UnknownAction(String),

    #[error("constraint relates action `{0}` to itself")]
    SelfConstraint(String),

    #[error("action `{0}` is declared more than once")]
    DuplicateAction(String),

    #[error("action names must be nonempty")]
    EmptyActionName,

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("time for action `{action}` must be finite and nonnegative, got `{value}`")]
    InvalidTime { action: String, value: String },

    #[error("bound -inf on ({from},{to}) cannot be an edge of the constraint graph")]
    NegInfEntry { from: String, to: String },

    #[error("the timely constraint is unsatisfiable")]
    Unsatisfiable,

    #[error("canonical entry ({from},{to}) is +inf; request an unbounded witness instead")]
    InfiniteEntry { from: String, to: String },

    #[error("canonical entry ({from},{to}) is finite ({value}); request a tight witness instead")]
    FiniteEntry {
        from: String,
        to: String,
        value: String,
    },

    #[error("a witness needs two distinct actions, got `{0}` twice")]
    SameAction(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),
}
