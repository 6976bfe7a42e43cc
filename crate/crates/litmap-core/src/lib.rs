//! Bibliometric corpus analysis: reverse citation crawling, citation and
//! semantic network construction, Louvain community detection, and
//! interdisciplinarity measures coupling the two layers.

pub mod citnet;
pub mod compare;
pub mod corpus;
pub mod crawl;
pub mod error;
pub mod graphml;
pub mod interdisc;
pub mod keywords;
pub mod lang;
pub mod louvain;
pub(crate) mod par;
pub mod pipeline;
pub mod report;
pub mod seed;
pub mod semnet;
pub mod stem;
pub mod stopwords;
pub mod synth;
pub mod text;

pub use error::{Error, Result};

pub use par::with_parallelism;
