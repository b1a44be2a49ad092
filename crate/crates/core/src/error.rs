use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed locus header: {msg}")]
    Locus { line: usize, msg: String },

    #[error("no folio metadata for: {}", .0.join(", "))]
    MissingFolios(Vec<String>),

    #[error("invalid UTF-8 at byte offset {0}")]
    Decode(usize),

    #[error("folio metadata line {line}: {msg}")]
    Metadata { line: usize, msg: String },

    #[error("rule file line {line}: {msg}")]
    RuleFile { line: usize, msg: String },

    #[error("invalid rule set: {0}")]
    RuleSet(String),

    #[error("long table line {line}: {msg}")]
    Table { line: usize, msg: String },

    #[error("cannot build a character stream from an empty table")]
    EmptyStream,

    #[error("character stream has {0} symbols, at least 2 are required")]
    StreamTooShort(usize),

    #[error("malformed character stream: {0}")]
    Stream(String),

    #[error("word {0:?} contains the boundary symbol '#'")]
    BoundaryInWord(String),

    #[error("window size {window} exceeds document word count {words}")]
    WindowTooLarge { window: usize, words: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
