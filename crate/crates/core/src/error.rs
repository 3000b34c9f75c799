use thiserror::Error;

/// Errors surfaced by the synthesis toolkit.
///
/// Precondition violations on low-level truth-table operations (variable
/// index out of range, mismatched variable counts) panic instead; these
/// variants cover data-dependent failures a caller is expected to handle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("function would need {requested} variables, more than the supported {cap}")]
    TooManyVars { requested: usize, cap: usize },

    #[error(
        "mode specs do not line up: mode 1 has {inputs1} inputs / {outputs1} outputs, \
         mode 2 has {inputs2} inputs / {outputs2} outputs"
    )]
    ModeArityMismatch {
        inputs1: usize,
        outputs1: usize,
        inputs2: usize,
        outputs2: usize,
    },

    #[error("netlist has {expected} inputs but {got} values were supplied")]
    InputCountMismatch { expected: usize, got: usize },

    #[error("malformed netlist: {0}")]
    MalformedNetlist(String),

    #[error("malformed specification: {0}")]
    MalformedSpec(String),

    #[error("PLA parse error at line {line}: {msg}")]
    Pla { line: usize, msg: String },

    #[error("netlist JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("resource cap exceeded: more than {limit} {resource}")]
    ResourceCap { resource: &'static str, limit: usize },

    #[error("rewrite rule not applicable: {0}")]
    RuleNotApplicable(String),
}
