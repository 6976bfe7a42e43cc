use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed record at {path}:{line}: {msg}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("duplicate id `{id}` with conflicting titles: `{first}` vs `{second}`")]
    ConflictingDuplicate {
        id: String,
        first: String,
        second: String,
    },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("empty graph")]
    EmptyGraph,

    #[error("modularity is undefined on a graph without edges")]
    NoEdges,

    #[error("graph needs at least {needed} edges, has {found}")]
    TooFewEdges { needed: usize, found: usize },

    #[error("partition does not cover node `{0}`")]
    PartitionGap(String),

    #[error("bootstrap needs at least 2 repetitions, got {0}")]
    TooFewRepetitions(usize),

    #[error("provider failed for every queried key ({failures} failures, first: {first})")]
    ProviderTotalFailure { failures: usize, first: String },

    #[error("empty vocabulary")]
    EmptyVocabulary,

    #[error("no reference carries both an abstract and matched vocabulary terms")]
    EmptyMembership,

    #[error("induced citation subgraph over membership rows is empty")]
    EmptyInducedSubgraph,

    #[error("config error: {0}")]
    Config(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
