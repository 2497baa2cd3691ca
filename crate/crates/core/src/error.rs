use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("probability {0} is outside (0, 1)")]
    ProbabilityOutOfRange(f64),

    #[error("mixing weight {0} is outside [0, 1]")]
    MixingWeightOutOfRange(f64),

    #[error("empirical sample is empty")]
    EmptySample,

    #[error("mixture needs at least one component")]
    EmptyMixture,

    #[error("{what} requires a finite moment of order {order}")]
    InfiniteMoment { what: &'static str, order: u32 },

    #[error("integral diverged or failed to produce a finite value: {0}")]
    Divergent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sign pattern violated: {0}")]
    SignPattern(String),
}
