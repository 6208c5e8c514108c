//! Crate-wide error type.

/// Errors raised by instance construction, policy/attacker contracts, bound
/// evaluators and experiment configuration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid bandit instance: {0}")]
    InvalidInstance(String),

    #[error("arm {arm} out of range 1..={arm_count}")]
    ArmOutOfRange { arm: usize, arm_count: usize },

    #[error("{op} requires every arm to have been pulled at least once")]
    NotInitialized { op: &'static str },

    #[error("{op} is only defined after the warm-up phase (round {round} <= {warmup})")]
    PreWarmup {
        op: &'static str,
        round: u64,
        warmup: u64,
    },

    #[error("delta = {delta} violates the requirement {requirement}")]
    InvalidDelta {
        delta: f64,
        requirement: &'static str,
    },

    #[error("pull count must be at least 1")]
    ZeroPullCount,

    #[error("target arm is the worst arm (gap {gap}); the cost bound does not apply")]
    TargetIsWorst { gap: f64 },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("bound precondition violated: {0}")]
    BoundPrecondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
