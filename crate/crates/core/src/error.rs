use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(u32),
    #[error("vertex `{id}` redeclared with color `{new}` (was `{old}`)")]
    ColorConflict { id: String, old: String, new: String },
    #[error("token `{0}` contains a reserved character")]
    ReservedCharacter(String),
    #[error("vertex `{0}` is mapped twice")]
    NonFunctional(String),
    #[error("malformed map `{0}`")]
    MalformedMap(String),
    #[error("constraint network: {0}")]
    Network(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    Malformed(String),
    DuplicateVertex(String),
    UndeclaredEndpoint(String),
    Reserved(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::MissingHeader => "expected `structure <name>` header".into(),
        ParseErrorKind::DuplicateHeader => "second `structure` header".into(),
        ParseErrorKind::Malformed(l) => format!("malformed line `{l}`"),
        ParseErrorKind::DuplicateVertex(v) => format!("duplicate vertex id `{v}`"),
        ParseErrorKind::UndeclaredEndpoint(v) => format!("edge endpoint `{v}` is not declared"),
        ParseErrorKind::Reserved(t) => format!("token `{t}` contains a reserved character"),
    }
}
