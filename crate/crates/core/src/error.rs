use thiserror::Error;

use crate::render::TargetId;

/// Errors raised while constructing or validating the program tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("type mismatch in `{op}`: {detail}")]
    TypeMismatch { op: String, detail: String },
    #[error("assignment to constant state variable `{0}`")]
    ConstAssignment(String),
    #[error("conditional needs at least one branch")]
    EmptyConditional,
    #[error("duplicate parameter `{0}`")]
    DuplicateParam(String),
    #[error("duplicate method `{0}`")]
    DuplicateMethod(String),
    #[error("duplicate module `{0}`")]
    DuplicateModule(String),
    #[error("more than one main method in program (`{0}`)")]
    MultipleMain(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("observer list used before initObserverList in the same scope")]
    ObserverNotInitialized,
    #[error("duplicate state label `{0}`")]
    DuplicateStateLabel(String),
    #[error("call to `{name}` does not match its signature: {detail}")]
    SignatureMismatch { name: String, detail: String },
    #[error("documentation names unknown parameter `{0}`")]
    UnknownParamDoc(String),
    #[error("auxiliary file {0} requested more than once")]
    DuplicateAuxFile(String),
    #[error("invalid in/out specification: {0}")]
    InvalidInOut(String),
    #[error("method `{method}` declares containing class `{declared}` but is placed in `{class}`")]
    ForeignMethod {
        method: String,
        declared: String,
        class: String,
    },
}

impl BuildError {
    pub(crate) fn mismatch(op: impl Into<String>, detail: impl Into<String>) -> Self {
        BuildError::TypeMismatch {
            op: op.into(),
            detail: detail.into(),
        }
    }
}

/// Errors raised by the renderers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("{target} cannot render {construct} (module `{module}`, method `{method}`)")]
    UnsupportedConstruct {
        target: TargetId,
        module: String,
        method: String,
        construct: String,
    },
    #[error("{0} build rules need a main module but the program has none")]
    NoMainModule(TargetId),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}
