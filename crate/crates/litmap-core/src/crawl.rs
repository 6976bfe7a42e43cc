//! Depth-limited reverse citation expansion behind pluggable providers.
//!
//! The shipped provider reads fixtures from disk: `citing/<key>.jsonl` holds
//! one record per work citing `key`, `meta/<key>.json` holds abstract and
//! language metadata. Live HTTP adapters can implement the same traits but
//! are not bundled.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, JsonRecord, MergeOutcome};
use crate::error::{Error, Result};
use crate::lang::detect_language;
use crate::par;

/// Provider failure for a single key. Non-fatal: recorded in the crawl
/// report and the crawl continues.
#[derive(Debug, Clone)]
pub struct ProviderError(pub String);

impl fmt::Display for ProviderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ProviderError {}

/// Capability descriptor for a provider.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ProviderCaps {
    pub max_page_size: Option<usize>,
    /// Suggested maximum queries per second, for rate-limited adapters.
    pub rate_limit_hint: Option<f64>,
}

/// Source of "who cites this work" records.
pub trait CitationProvider: Sync {
    /// Works citing `key`. Stable and possibly empty; an error is recorded
    /// and skips only this key.
    fn citing(&self, key: &str) -> std::result::Result<Vec<JsonRecord>, ProviderError>;

    fn capabilities(&self) -> ProviderCaps {
        ProviderCaps::default()
    }
}

/// Abstract/language metadata record, at most one per key.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MetaRecord {
    #[serde(rename = "abstract", default, skip_serializing_if = "Option::is_none")]
    pub abstract_text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang: Option<String>,
}

/// Source of per-reference metadata.
pub trait MetadataProvider: Sync {
    fn metadata(&self, key: &str) -> std::result::Result<Option<MetaRecord>, ProviderError>;

    fn capabilities(&self) -> ProviderCaps {
        ProviderCaps::default()
    }
}

/// Provider that knows nothing. Useful for tests and citation-only runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct EmptyProvider;

impl CitationProvider for EmptyProvider {
    fn citing(&self, _key: &str) -> std::result::Result<Vec<JsonRecord>, ProviderError> {
        Ok(Vec::new())
    }
}

impl MetadataProvider for EmptyProvider {
    fn metadata(&self, _key: &str) -> std::result::Result<Option<MetaRecord>, ProviderError> {
        Ok(None)
    }
}

/// File-backed provider rooted at a fixtures directory.
#[derive(Debug, Clone)]
pub struct FixtureProvider {
    root: PathBuf,
}

impl FixtureProvider {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        FixtureProvider { root: root.into() }
    }

    /// Keys become file names; anything outside `[A-Za-z0-9._-]` maps to `_`.
    pub fn sanitize_key(key: &str) -> String {
        key.chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                    c
                } else {
                    '_'
                }
            })
            .collect()
    }

    fn citing_path(&self, key: &str) -> PathBuf {
        self.root.join("citing").join(format!("{}.jsonl", Self::sanitize_key(key)))
    }

    fn meta_path(&self, key: &str) -> PathBuf {
        self.root.join("meta").join(format!("{}.json", Self::sanitize_key(key)))
    }
}

impl CitationProvider for FixtureProvider {
    fn citing(&self, key: &str) -> std::result::Result<Vec<JsonRecord>, ProviderError> {
        let path = self.citing_path(key);
        let file = match std::fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(ProviderError(format!("{}: {e}", path.display()))),
        };
        let mut records = Vec::new();
        for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| ProviderError(format!("{}: {e}", path.display())))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: JsonRecord = serde_json::from_str(&line).map_err(|e| {
                ProviderError(format!("{}:{}: {e}", path.display(), idx + 1))
            })?;
            records.push(record);
        }
        Ok(records)
    }
}

impl MetadataProvider for FixtureProvider {
    fn metadata(&self, key: &str) -> std::result::Result<Option<MetaRecord>, ProviderError> {
        let path = self.meta_path(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(ProviderError(format!("{}: {e}", path.display()))),
        };
        let record: MetaRecord = serde_json::from_str(&text)
            .map_err(|e| ProviderError(format!("{}: {e}", path.display())))?;
        Ok(Some(record))
    }
}

/// What a crawl or enrichment pass did.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CrawlReport {
    /// Records fetched per depth; index d counts records entering at depth d.
    pub fetched_per_depth: Vec<usize>,
    /// Records merged into already-known references.
    pub dedup_merges: usize,
    /// Per-key provider failures (key, message).
    pub provider_errors: Vec<(String, String)>,
    /// Fraction of references carrying an abstract after the pass.
    pub abstract_coverage: f64,
}

/// Breadth-first reverse citation expansion: all works citing depth-d
/// members enter at depth d+1, up to `max_depth`. Merging follows corpus
/// rules (id, then normalized title key); discovered citation links point
/// citing -> cited. Queries within one depth may run in parallel; merges
/// apply in deterministic key order.
pub fn expand_citations<P: CitationProvider>(
    seed: &Corpus,
    max_depth: u8,
    provider: &P,
) -> Result<(Corpus, CrawlReport)> {
    let mut corpus = seed.clone();
    let mut report = CrawlReport {
        fetched_per_depth: vec![0; usize::from(max_depth) + 1],
        ..CrawlReport::default()
    };
    let mut queries_attempted = 0usize;
    let mut first_error: Option<String> = None;

    for depth in 0..max_depth {
        let frontier: Vec<String> = corpus
            .iter()
            .filter(|r| r.depth == depth)
            .map(|r| r.id.clone())
            .collect();
        if frontier.is_empty() {
            break;
        }
        queries_attempted += frontier.len();
        let results = par::map_collect(&frontier, |key| (key.clone(), provider.citing(key)));
        for (key, result) in results {
            match result {
                Ok(records) => {
                    for record in records {
                        report.fetched_per_depth[usize::from(depth) + 1] += 1;
                        let mut citing = record.into_reference(false, depth + 1);
                        if !citing.cited_ids.contains(&key) && citing.id != key {
                            citing.cited_ids.push(key.clone());
                        }
                        match corpus.upsert(citing)? {
                            MergeOutcome::Inserted => {}
                            MergeOutcome::Merged => report.dedup_merges += 1,
                        }
                    }
                }
                Err(e) => {
                    if first_error.is_none() {
                        first_error = Some(e.to_string());
                    }
                    report.provider_errors.push((key, e.to_string()));
                }
            }
        }
    }

    if queries_attempted > 0 && report.provider_errors.len() == queries_attempted {
        return Err(Error::ProviderTotalFailure {
            failures: report.provider_errors.len(),
            first: first_error.unwrap_or_default(),
        });
    }
    report.abstract_coverage = coverage(&corpus);
    Ok((corpus, report))
}

/// Attach abstracts and languages from a metadata provider. Existing values
/// are never overwritten. After enrichment, references holding an abstract
/// but no language get one from trigram detection ("und" when inconclusive).
pub fn enrich_abstracts<P: MetadataProvider>(
    corpus: &Corpus,
    provider: &P,
) -> Result<(Corpus, CrawlReport)> {
    let mut enriched = corpus.clone();
    let mut report = CrawlReport::default();

    let wanted: Vec<String> = enriched
        .iter()
        .filter(|r| r.abstract_text.is_none() || r.language.is_none())
        .map(|r| r.id.clone())
        .collect();
    let results = par::map_collect(&wanted, |key| (key.clone(), provider.metadata(key)));
    let mut fetched: BTreeMap<String, MetaRecord> = BTreeMap::new();
    for (key, result) in results {
        match result {
            Ok(Some(meta)) => {
                fetched.insert(key, meta);
            }
            Ok(None) => {}
            Err(e) => report.provider_errors.push((key, e.to_string())),
        }
    }
    for (key, meta) in fetched {
        let r = enriched.get_mut(&key).expect("queried ids exist");
        if r.abstract_text.is_none() {
            r.abstract_text = meta.abstract_text;
        }
        if r.language.is_none() {
            r.language = meta.lang;
        }
    }

    // Language detection pass for abstract-bearing references without a tag.
    let undetected: Vec<String> = enriched
        .iter()
        .filter(|r| r.abstract_text.is_some() && r.language.is_none())
        .map(|r| r.id.clone())
        .collect();
    let detected = par::map_collect(&undetected, |id| {
        let text = enriched.get(id).and_then(|r| r.abstract_text.as_deref()).unwrap_or("");
        detect_language(text).unwrap_or("und").to_string()
    });
    for (id, lang) in undetected.iter().zip(detected) {
        enriched.get_mut(id).expect("id exists").language = Some(lang);
    }

    report.abstract_coverage = coverage(&enriched);
    Ok((enriched, report))
}

fn coverage(corpus: &Corpus) -> f64 {
    if corpus.is_empty() {
        return 0.0;
    }
    let with = corpus.iter().filter(|r| r.abstract_text.is_some()).count();
    with as f64 / corpus.len() as f64
}
