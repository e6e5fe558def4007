use thiserror::Error;

/// Domain errors surfaced by the library operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no probability data supplied for regulation {0}")]
    MissingTable(String),
    #[error("probability table for {context} sums to {sum}, expected 1")]
    InvalidMass { context: String, sum: f64 },
    #[error("l-game carries no punishment model")]
    Unpunished,
    #[error("rule {rule} is not a member of regulation {regulation}")]
    RuleNotInRegulation { rule: String, regulation: String },
    #[error("probability models are defined over different regulations")]
    RegulationMismatch,
    #[error("absolute continuity violated: event {event} has q = 0 but p = {p}")]
    AbsoluteContinuityViolated { event: String, p: f64 },
    #[error("l-games are defined under different laws")]
    LawMismatch,
    #[error("{extended} is not {base} extended by rule {rule}")]
    NotAnExtension {
        base: String,
        extended: String,
        rule: String,
    },
    #[error("law has {rules} rules, exceeding the cap of {cap}")]
    LawTooLarge { rules: usize, cap: usize },
    #[error("source regulation {from} is not a subset of target {to}")]
    NotMonotone { from: String, to: String },
    #[error("player {0} has an empty maximal set")]
    EmptyMaximalSet(String),
    #[error("invalid law: {0}")]
    InvalidLaw(String),
    #[error("invalid preorder: {0}")]
    InvalidPreorder(String),
    #[error("config parse error: {0}")]
    ParseError(String),
    #[error("config validation error at {path}: {message}")]
    ValidationError { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
