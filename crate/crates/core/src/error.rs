use serde::Serialize;
use thiserror::Error;

/// Every failure the engine reports. Guard rejections name the guard that fired.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "details", rename_all = "snake_case")]
pub enum GwError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch {
        #[serde(serialize_with = "crate::serde_big::display")]
        expected: usize,
        #[serde(serialize_with = "crate::serde_big::display")]
        actual: usize,
    },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("element not in group: {0}")]
    NotAMember(String),

    #[error("{value} is not prime")]
    NotPrime {
        #[serde(serialize_with = "crate::serde_big::display")]
        value: u64,
    },

    #[error("group is not in regular action: {0}")]
    NotRegular(String),

    #[error("missing wreath metadata: {0}")]
    NotAWreath(String),

    #[error("guard `{guard}` exceeded: required {required}, limit {limit}")]
    GuardExceeded {
        guard: &'static str,
        required: String,
        limit: String,
    },

    #[error("enumeration guard violated: |G| = {order} exceeds oracle bound {oracle_bound} and m = {m} exceeds low-index bound {low_index_bound}")]
    EnumerationGuard {
        order: String,
        #[serde(serialize_with = "crate::serde_big::display")]
        oracle_bound: u64,
        #[serde(serialize_with = "crate::serde_big::display")]
        m: usize,
        #[serde(serialize_with = "crate::serde_big::display")]
        low_index_bound: usize,
    },

    #[error("parse error at line {line}, column {column}: {message} (expected one of: {})", expected.join(", "))]
    Parse {
        #[serde(serialize_with = "crate::serde_big::display")]
        line: usize,
        #[serde(serialize_with = "crate::serde_big::display")]
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero is excluded: {0}")]
    ZeroElement(String),

    #[error("hensel lifting failed: {0}")]
    HenselPrecondition(String),

    #[error("no representative for residue class {missing} (canonical power-free form)")]
    MissingClass { missing: String },

    #[error("representatives {first} and {second} are equivalent modulo n-th powers for n = {n}")]
    EquivalentRepresentatives {
        first: String,
        second: String,
        #[serde(serialize_with = "crate::serde_big::display")]
        n: u64,
    },

    #[error("factor {index} ({description}) is not perfect")]
    NotPerfect {
        #[serde(serialize_with = "crate::serde_big::display")]
        index: usize,
        description: String,
    },
}

pub type Result<T> = std::result::Result<T, GwError>;
