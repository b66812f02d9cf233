//! Error types shared across the crate.

use thiserror::Error;

use crate::sut::{ResourceConfig, SensitivityVector};

#[derive(Debug, Error)]
pub enum SutError {
    #[error("sensitivity components must lie in [0, 1], got {0}")]
    InvalidSensitivity(SensitivityVector),
    #[error("sensitivity vector must have at least one nonzero component")]
    ZeroSensitivity,
    #[error("resource components must be strictly positive, got {0:?}")]
    InvalidResources(ResourceConfig),
    #[error("requirement and nominal response times must be positive (rt_requirement_ms={rt_requirement_ms}, nominal_rt_ms={nominal_rt_ms})")]
    InvalidRequirement {
        rt_requirement_ms: f64,
        nominal_rt_ms: f64,
    },
    #[error("SUT must start healthy: nominal_rt_ms={nominal_rt_ms} is not below rt_requirement_ms={rt_requirement_ms}")]
    UnhealthyStart {
        rt_requirement_ms: f64,
        nominal_rt_ms: f64,
    },
    #[error("breaking multiplier must exceed 1, got {0}")]
    InvalidBreakingMultiplier(f64),
    #[error("catalog has no programs after filtering")]
    EmptyCatalog,
    #[error("duplicate program name in catalog: {0}")]
    DuplicateProgram(String),
    #[error("malformed catalog record at line {line}: {content:?}")]
    MalformedCatalogLine { line: usize, content: String },
    #[error("failed to read catalog file {0}: {1}")]
    Io(String, #[source] std::io::Error),
}

#[derive(Debug, Error, PartialEq)]
pub enum FuzzyError {
    #[error("normalization requires strictly positive inputs, got {0}")]
    NonPositiveInput(f64),
    #[error("no rule fired: every support degree is zero")]
    DegenerateInput,
    #[error("invalid membership breakpoints: {0}")]
    InvalidBreakpoints(String),
    #[error("failed to read membership config: {0}")]
    Config(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum ActionError {
    #[error("action {action:?} is inapplicable at {current:?} (floor {floor:?})")]
    Inapplicable {
        action: crate::action::Action,
        current: ResourceConfig,
        floor: ResourceConfig,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum AgentError {
    #[error("cannot select an action from an empty applicable set")]
    EmptyActionSet,
}

#[derive(Debug, Error)]
pub enum PolicyIoError {
    #[error("policy file I/O failed at {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("malformed policy file: {0}")]
    Malformed(String),
}
