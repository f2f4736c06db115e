use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word literal: {0}")]
    WordSyntax(String),

    #[error("line {line}: {message}")]
    GraphSyntax { line: usize, message: String },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("state {state} lacks its self-loop on {letter:?}")]
    SelfLoopLaw { state: usize, letter: char },

    #[error("{value} is not MacNeille-closed (closure is {closure})")]
    NotClosed { value: String, closure: String },

    #[error(
        "not an isometric subgraph: d({x},{y}) is {sub} in the subgraph but {host} in the host"
    )]
    NotIsometric {
        x: String,
        y: String,
        sub: String,
        host: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid distance matrix: {0}")]
    Matrix(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
