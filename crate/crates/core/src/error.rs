use thiserror::Error;

use crate::family::DerivedSequence;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse ordinal `{input}`: {reason}")]
    OrdinalParse { input: String, reason: String },
    #[error("ordinal nesting depth {depth} exceeds the supported maximum of {max}")]
    DepthExceeded { depth: usize, max: usize },
    #[error("{0} is not divisible by w on the left")]
    NotDivisible(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("malformed descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("result is not representable as a set descriptor: {0}")]
    UnrepresentableResult(String),
    #[error("points of a Cantor atom are not addressable")]
    CantorPoint,

    #[error("invalid domain model: {0}")]
    InvalidDomain(String),
    #[error("operands belong to different domain models")]
    MixedModels,

    #[error("equivalent Jaffard conditions disagree: {0}")]
    ConditionDisagreement(String),
    #[error("every member of the family is already a Jaffard overring")]
    AlreadyJaffard,
    #[error("family is not pre-Jaffard ({0} failed)")]
    NotPreJaffard(String),
    #[error("step budget of {budget} exceeded after {} listed stages", partial.steps.len())]
    StepBudgetExceeded {
        budget: usize,
        partial: Box<DerivedSequence>,
    },
    #[error("part {0} is not compact")]
    NotCompactPart(usize),
    #[error("parts {0} and {1} overlap")]
    OverlappingParts(usize, usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("enumeration mismatch: {0}")]
    EnumerationMismatch(String),
    #[error("family is not stable-preserving: {0}")]
    NotStablePreserving(String),

    #[error("invalid job spec: {0}")]
    InvalidSpec(String),
}
