//! Canonical data model for references, citation links and corpora, plus
//! file ingestion, persistence and descriptive statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::normalize_title;

/// One scholarly work.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub id: String,
    pub title: String,
    /// Deterministic dedup key derived from the title.
    pub normalized_key: String,
    pub year: Option<i32>,
    /// ISO-639-1 code, or "und" when detection gave up.
    pub language: Option<String>,
    pub abstract_text: Option<String>,
    /// Outgoing citation targets. Never contains duplicates or the
    /// reference's own id.
    pub cited_ids: Vec<String>,
    /// Member of the initial seed corpus.
    pub seed_flag: bool,
    /// Crawl level: 0 for seeds, up to the crawl depth.
    pub depth: u8,
}

impl Reference {
    pub fn new(id: impl Into<String>, title: impl Into<String>) -> Self {
        let id = id.into();
        let title = title.into();
        let normalized_key = normalize_title(&title);
        Reference {
            id,
            title,
            normalized_key,
            year: None,
            language: None,
            abstract_text: None,
            cited_ids: Vec::new(),
            seed_flag: false,
            depth: 0,
        }
    }

    /// Set outgoing citations, dropping duplicates (first occurrence kept)
    /// and self-citations.
    pub fn with_cites<I, S>(mut self, cites: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.set_cites(cites.into_iter().map(Into::into).collect());
        self
    }

    fn set_cites(&mut self, cites: Vec<String>) {
        let mut seen = BTreeSet::new();
        self.cited_ids = cites
            .into_iter()
            .filter(|c| c != &self.id && seen.insert(c.clone()))
            .collect();
    }
}

/// On-disk JSONL record. Field names are part of the file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonRecord {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang: Option<String>,
    #[serde(rename = "abstract", default, skip_serializing_if = "Option::is_none")]
    pub abstract_text: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cites: Vec<String>,
}

impl JsonRecord {
    pub fn into_reference(self, seed_flag: bool, depth: u8) -> Reference {
        let mut r = Reference::new(self.id, self.title);
        r.year = self.year;
        r.language = self.lang;
        r.abstract_text = self.abstract_text;
        r.seed_flag = seed_flag;
        r.depth = depth;
        r.set_cites(self.cites);
        r
    }

    pub fn from_reference(r: &Reference) -> Self {
        JsonRecord {
            id: r.id.clone(),
            title: r.title.clone(),
            year: r.year,
            lang: r.language.clone(),
            abstract_text: r.abstract_text.clone(),
            cites: r.cited_ids.clone(),
        }
    }
}

/// Supported corpus file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    Jsonl,
    CsvPair,
}

/// What happened when a record was merged into a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOutcome {
    Inserted,
    /// Merged into an existing reference (same id or same normalized key).
    Merged,
}

/// Id-indexed collection of references.
///
/// Immutable once assembled; two references never share an id or a non-empty
/// normalized key. Citations to ids that were merged away resolve through an
/// alias table; citations to ids never collected are dangling and excluded
/// from graphs.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    refs: BTreeMap<String, Reference>,
    key_index: HashMap<String, String>,
    alias: HashMap<String, String>,
    pub provenance: String,
}

impl Corpus {
    pub fn new(provenance: impl Into<String>) -> Self {
        Corpus {
            provenance: provenance.into(),
            ..Corpus::default()
        }
    }

    pub fn len(&self) -> usize {
        self.refs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.refs.is_empty()
    }

    /// References in id order.
    pub fn iter(&self) -> impl Iterator<Item = &Reference> {
        self.refs.values()
    }

    pub fn get(&self, id: &str) -> Option<&Reference> {
        self.refs.get(id)
    }

    pub fn get_mut(&mut self, id: &str) -> Option<&mut Reference> {
        self.refs.get_mut(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.refs.contains_key(id)
    }

    /// Canonical id for `id`, following the merge alias table.
    pub fn canonical_id<'a>(&'a self, id: &'a str) -> &'a str {
        self.alias.get(id).map(String::as_str).unwrap_or(id)
    }

    /// Resolve an id (possibly merged away) to its reference.
    pub fn resolve(&self, id: &str) -> Option<&Reference> {
        self.refs.get(self.canonical_id(id))
    }

    /// Merge a reference into the corpus.
    ///
    /// A record with a known id merges field-wise into the existing entry
    /// (conflicting titles are an error). A new id whose normalized key
    /// matches an existing reference merges into it and the new id becomes
    /// an alias. Otherwise the reference is inserted.
    pub fn upsert(&mut self, reference: Reference) -> Result<MergeOutcome> {
        let canonical = self.canonical_id(&reference.id).to_string();
        if let Some(existing) = self.refs.get_mut(&canonical) {
            if existing.title != reference.title
                && existing.normalized_key != reference.normalized_key
            {
                return Err(Error::ConflictingDuplicate {
                    id: reference.id,
                    first: existing.title.clone(),
                    second: reference.title,
                });
            }
            merge_into(existing, reference);
            return Ok(MergeOutcome::Merged);
        }
        if !reference.normalized_key.is_empty() {
            if let Some(target) = self.key_index.get(&reference.normalized_key).cloned() {
                self.alias.insert(reference.id.clone(), target.clone());
                let existing = self.refs.get_mut(&target).expect("key index consistent");
                merge_into(existing, reference);
                return Ok(MergeOutcome::Merged);
            }
            self.key_index
                .insert(reference.normalized_key.clone(), reference.id.clone());
        }
        self.refs.insert(reference.id.clone(), reference);
        Ok(MergeOutcome::Inserted)
    }

    /// Resolved citation links (citing, cited), both canonical ids, in
    /// deterministic order. Dangling and self links are excluded.
    pub fn citation_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for r in self.refs.values() {
            let mut targets = BTreeSet::new();
            for cited in &r.cited_ids {
                let canonical = self.canonical_id(cited);
                if canonical != r.id && self.refs.contains_key(canonical) {
                    targets.insert(canonical.to_string());
                }
            }
            for t in targets {
                pairs.push((r.id.clone(), t));
            }
        }
        pairs
    }

    /// Number of citation entries pointing at ids absent from the corpus.
    pub fn dangling_link_count(&self) -> usize {
        self.refs
            .values()
            .flat_map(|r| r.cited_ids.iter())
            .filter(|cited| !self.refs.contains_key(self.canonical_id(cited)))
            .count()
    }

    /// Descriptive statistics over the resolved corpus.
    pub fn stats(&self) -> Result<CorpusStats> {
        if self.refs.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let v = self.refs.len();
        let e = self.citation_pairs().len();
        let with_abstract = self.refs.values().filter(|r| r.abstract_text.is_some()).count();
        let mut lang_counts: BTreeMap<String, usize> = BTreeMap::new();
        for r in self.refs.values() {
            if let Some(lang) = &r.language {
                *lang_counts.entry(lang.clone()).or_insert(0) += 1;
            }
        }
        let known: usize = lang_counts.values().sum();
        let language_shares = lang_counts
            .into_iter()
            .map(|(lang, n)| (lang, n as f64 / known as f64))
            .collect();
        let average_in_degree = e as f64 / v as f64;
        let directed_density = if v >= 2 {
            e as f64 / (v as f64 * (v as f64 - 1.0))
        } else {
            0.0
        };
        Ok(CorpusStats {
            n_references: v,
            n_citation_links: e,
            n_dangling_links: self.dangling_link_count(),
            abstract_coverage: with_abstract as f64 / v as f64,
            language_shares,
            average_degree: 2.0 * average_in_degree,
            average_in_degree,
            directed_density,
        })
    }
}

fn merge_into(existing: &mut Reference, incoming: Reference) {
    if existing.year.is_none() {
        existing.year = incoming.year;
    }
    if existing.language.is_none() {
        existing.language = incoming.language;
    }
    if existing.abstract_text.is_none() {
        existing.abstract_text = incoming.abstract_text;
    }
    existing.seed_flag |= incoming.seed_flag;
    existing.depth = existing.depth.min(incoming.depth);
    let own_id = existing.id.clone();
    for cited in incoming.cited_ids {
        if cited != own_id && !existing.cited_ids.contains(&cited) {
            existing.cited_ids.push(cited);
        }
    }
}

/// Descriptive statistics of a corpus on its resolved links.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_references: usize,
    pub n_citation_links: usize,
    pub n_dangling_links: usize,
    pub abstract_coverage: f64,
    /// Shares over references with a known language; sums to 1 when any.
    pub language_shares: BTreeMap<String, f64>,
    /// 2E/V.
    pub average_degree: f64,
    /// E/V, exactly half the average degree.
    pub average_in_degree: f64,
    /// E/(V(V-1)); 0 for a single-node corpus.
    pub directed_density: f64,
}

/// Read a corpus from disk. Every ingested reference is a seed at depth 0.
pub fn ingest_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    match format {
        CorpusFormat::Jsonl => ingest_jsonl(path),
        CorpusFormat::CsvPair => ingest_csv_pair(path),
    }
}

fn ingest_jsonl(path: &Path) -> Result<Corpus> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut corpus = Corpus::new(format!("jsonl:{}", path.display()));
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonRecord =
            serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: e.to_string(),
            })?;
        if record.id.is_empty() {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: "empty id".into(),
            });
        }
        corpus.upsert(record.into_reference(true, 0))?;
    }
    Ok(corpus)
}

/// CSV pair layout: `<dir>/nodes.csv` with header `id,title,year,lang` and
/// `<dir>/edges.csv` with header `source,target`. Edge sources must exist.
fn ingest_csv_pair(dir: &Path) -> Result<Corpus> {
    let nodes_path = dir.join("nodes.csv");
    let edges_path = dir.join("edges.csv");
    let mut corpus = Corpus::new(format!("csv-pair:{}", dir.display()));

    let mut nodes = csv::Reader::from_path(&nodes_path)
        .map_err(|e| csv_error(&nodes_path, 0, e))?;
    for (idx, row) in nodes.deserialize::<CsvNode>().enumerate() {
        let row = row.map_err(|e| csv_error(&nodes_path, idx + 2, e))?;
        if row.id.is_empty() {
            return Err(Error::MalformedRecord {
                path: nodes_path.clone(),
                line: idx + 2,
                msg: "empty id".into(),
            });
        }
        let mut r = Reference::new(row.id, row.title);
        r.year = row.year;
        r.language = row.lang.filter(|l| !l.is_empty());
        r.seed_flag = true;
        corpus.upsert(r)?;
    }

    let mut edges = csv::Reader::from_path(&edges_path)
        .map_err(|e| csv_error(&edges_path, 0, e))?;
    for (idx, row) in edges.deserialize::<CsvEdge>().enumerate() {
        let row = row.map_err(|e| csv_error(&edges_path, idx + 2, e))?;
        let source = corpus.canonical_id(&row.source).to_string();
        let Some(source_ref) = corpus.get_mut(&source) else {
            return Err(Error::MalformedRecord {
                path: edges_path.clone(),
                line: idx + 2,
                msg: format!("unknown source id `{}`", row.source),
            });
        };
        if row.target != source && !source_ref.cited_ids.contains(&row.target) {
            source_ref.cited_ids.push(row.target);
        }
    }
    Ok(corpus)
}

fn csv_error(path: &Path, line: usize, e: csv::Error) -> Error {
    Error::MalformedRecord {
        path: path.to_path_buf(),
        line,
        msg: e.to_string(),
    }
}

#[derive(Debug, Deserialize)]
struct CsvNode {
    id: String,
    title: String,
    year: Option<i32>,
    lang: Option<String>,
}

#[derive(Debug, Deserialize)]
struct CsvEdge {
    source: String,
    target: String,
}

/// Write a corpus back to disk in the given format.
pub fn export_corpus(corpus: &Corpus, path: &Path, format: CorpusFormat) -> Result<()> {
    match format {
        CorpusFormat::Jsonl => export_jsonl(corpus, path),
        CorpusFormat::CsvPair => export_csv_pair(corpus, path),
    }
}

fn export_jsonl(corpus: &Corpus, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(path).map_err(|e| Error::io(path, e))?,
    );
    for r in corpus.iter() {
        let record = JsonRecord::from_reference(r);
        let line = serde_json::to_string(&record).expect("record serializes");
        writeln!(out, "{line}").map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

fn export_csv_pair(corpus: &Corpus, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let nodes_path = dir.join("nodes.csv");
    let mut nodes = csv::Writer::from_path(&nodes_path).map_err(|e| csv_error(&nodes_path, 0, e))?;
    nodes
        .write_record(["id", "title", "year", "lang"])
        .map_err(|e| csv_error(&nodes_path, 0, e))?;
    for r in corpus.iter() {
        nodes
            .write_record([
                r.id.as_str(),
                r.title.as_str(),
                &r.year.map(|y| y.to_string()).unwrap_or_default(),
                r.language.as_deref().unwrap_or(""),
            ])
            .map_err(|e| csv_error(&nodes_path, 0, e))?;
    }
    nodes.flush().map_err(|e| Error::io(&nodes_path, e))?;

    let edges_path = dir.join("edges.csv");
    let mut edges = csv::Writer::from_path(&edges_path).map_err(|e| csv_error(&edges_path, 0, e))?;
    edges
        .write_record(["source", "target"])
        .map_err(|e| csv_error(&edges_path, 0, e))?;
    for r in corpus.iter() {
        for cited in &r.cited_ids {
            edges
                .write_record([r.id.as_str(), cited.as_str()])
                .map_err(|e| csv_error(&edges_path, 0, e))?;
        }
    }
    edges.flush().map_err(|e| Error::io(&edges_path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_jsonl(lines: &[&str]) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        std::fs::write(&path, lines.join("\n")).unwrap();
        (dir, path)
    }

    #[test]
    fn ingest_three_records_no_citations() {
        let (_d, path) = write_jsonl(&[
            r#"{"id":"a","title":"Alpha"}"#,
            r#"{"id":"b","title":"Beta"}"#,
            r#"{"id":"c","title":"Gamma"}"#,
        ]);
        let corpus = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.citation_pairs().len(), 0);
    }

    #[test]
    fn ingest_chain() {
        let (_d, path) = write_jsonl(&[
            r#"{"id":"a","title":"Alpha","cites":["b"]}"#,
            r#"{"id":"b","title":"Beta","cites":["c"]}"#,
            r#"{"id":"c","title":"Gamma"}"#,
        ]);
        let corpus = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.citation_pairs().len(), 2);
    }

    #[test]
    fn merges_by_normalized_key() {
        let (_d, path) = write_jsonl(&[
            r#"{"id":"x1","title":"Land-Use Transport  Interaction","cites":["a"]}"#,
            r#"{"id":"x2","title":"Land Use Transport Interaction","cites":["b"]}"#,
            r#"{"id":"a","title":"Alpha"}"#,
            r#"{"id":"b","title":"Beta"}"#,
        ]);
        let corpus = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), 3);
        let merged = corpus.get("x1").unwrap();
        assert_eq!(merged.normalized_key, "landusetransportinteraction");
        assert_eq!(merged.cited_ids, vec!["a".to_string(), "b".to_string()]);
        // the merged-away id resolves to the canonical reference
        assert_eq!(corpus.resolve("x2").unwrap().id, "x1");
    }

    #[test]
    fn conflicting_titles_for_same_id_error() {
        let (_d, path) = write_jsonl(&[
            r#"{"id":"a","title":"First title"}"#,
            r#"{"id":"a","title":"Completely different"}"#,
        ]);
        let err = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap_err();
        match err {
            Error::ConflictingDuplicate { id, first, second } => {
                assert_eq!(id, "a");
                assert_eq!(first, "First title");
                assert_eq!(second, "Completely different");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn malformed_record_names_line() {
        let (_d, path) = write_jsonl(&[r#"{"id":"a","title":"Alpha"}"#, "{not json"]);
        let err = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap_err();
        match err {
            Error::MalformedRecord { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn duplicate_and_self_citations_dropped_at_construction() {
        let r = Reference::new("a", "Alpha").with_cites(["b", "b", "a", "c"]);
        assert_eq!(r.cited_ids, vec!["b".to_string(), "c".to_string()]);
    }

    #[test]
    fn dangling_targets_counted_and_excluded() {
        let mut corpus = Corpus::new("test");
        corpus
            .upsert(Reference::new("a", "Alpha").with_cites(["b", "ghost"]))
            .unwrap();
        corpus.upsert(Reference::new("b", "Beta")).unwrap();
        assert_eq!(corpus.citation_pairs(), vec![("a".into(), "b".into())]);
        assert_eq!(corpus.dangling_link_count(), 1);
        assert_eq!(corpus.stats().unwrap().n_citation_links, 1);
    }

    #[test]
    fn stats_large_sparse_corpus() {
        let mut corpus = Corpus::new("synthetic");
        let v = 9462usize;
        for i in 0..v {
            corpus.upsert(Reference::new(format!("r{i}"), format!("Title {i}"))).unwrap();
        }
        // Ring of v links plus extra forward links up to E = 12004.
        let e_target = 12004usize;
        let mut added = 0usize;
        'outer: for stride in 1..v {
            for i in 0..v {
                if added == e_target {
                    break 'outer;
                }
                let target = format!("r{}", (i + stride) % v);
                let id = format!("r{i}");
                let r = corpus.get_mut(&id).unwrap();
                r.cited_ids.push(target);
                added += 1;
            }
        }
        let stats = corpus.stats().unwrap();
        assert_eq!(stats.n_references, 9462);
        assert_eq!(stats.n_citation_links, 12004);
        assert!((stats.average_degree - 2.537).abs() < 1e-3);
        assert!((stats.average_in_degree - 1.2687).abs() < 1e-3);
        assert!((stats.average_degree - 2.0 * stats.average_in_degree).abs() < 1e-15);

        let graph = crate::citnet::build_graph(&corpus).unwrap();
        assert_eq!(graph.n_nodes(), 9462);
        assert_eq!(graph.n_edges(), 12004);
    }

    #[test]
    fn stats_single_reference() {
        let mut corpus = Corpus::new("t");
        corpus.upsert(Reference::new("a", "Alpha")).unwrap();
        let stats = corpus.stats().unwrap();
        assert_eq!(stats.average_degree, 0.0);
        assert_eq!(stats.directed_density, 0.0);
    }

    #[test]
    fn stats_chain_density() {
        let mut corpus = Corpus::new("t");
        corpus.upsert(Reference::new("a", "Alpha").with_cites(["b"])).unwrap();
        corpus.upsert(Reference::new("b", "Beta").with_cites(["c"])).unwrap();
        corpus.upsert(Reference::new("c", "Gamma")).unwrap();
        let stats = corpus.stats().unwrap();
        assert!((stats.directed_density - 2.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_stats_error() {
        let corpus = Corpus::new("t");
        assert!(matches!(corpus.stats(), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn language_shares_sum_to_one() {
        let mut corpus = Corpus::new("t");
        for (id, lang) in [("a", Some("en")), ("b", Some("en")), ("c", Some("fr")), ("d", None)] {
            let mut r = Reference::new(id, format!("Title {id}"));
            r.language = lang.map(str::to_string);
            corpus.upsert(r).unwrap();
        }
        let stats = corpus.stats().unwrap();
        let total: f64 = stats.language_shares.values().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((stats.language_shares["en"] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn jsonl_round_trip() {
        let (_d, path) = write_jsonl(&[
            r#"{"id":"a","title":"Alpha","year":2004,"lang":"en","abstract":"Some text.","cites":["b","c"]}"#,
            r#"{"id":"b","title":"Beta","cites":["missing"]}"#,
            r#"{"id":"c","title":"Gamma"}"#,
        ]);
        let corpus = ingest_corpus(&path, CorpusFormat::Jsonl).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out.jsonl");
        export_corpus(&corpus, &out, CorpusFormat::Jsonl).unwrap();
        let again = ingest_corpus(&out, CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), again.len());
        for (a, b) in corpus.iter().zip(again.iter()) {
            assert_eq!(a, b);
        }
        assert_eq!(corpus.citation_pairs(), again.citation_pairs());
    }

    #[test]
    fn csv_pair_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("nodes.csv"),
            "id,title,year,lang\na,Alpha,2001,en\nb,Beta,,\n",
        )
        .unwrap();
        std::fs::write(dir.path().join("edges.csv"), "source,target\na,b\n").unwrap();
        let corpus = ingest_corpus(dir.path(), CorpusFormat::CsvPair).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.citation_pairs(), vec![("a".into(), "b".into())]);
        assert_eq!(corpus.get("a").unwrap().year, Some(2001));

        let out = tempfile::tempdir().unwrap();
        export_corpus(&corpus, out.path(), CorpusFormat::CsvPair).unwrap();
        let again = ingest_corpus(out.path(), CorpusFormat::CsvPair).unwrap();
        assert_eq!(again.len(), 2);
        assert_eq!(corpus.citation_pairs(), again.citation_pairs());
    }

    #[test]
    fn csv_pair_unknown_source_errors() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("nodes.csv"), "id,title,year,lang\na,Alpha,,\n").unwrap();
        std::fs::write(dir.path().join("edges.csv"), "source,target\nzz,a\n").unwrap();
        let err = ingest_corpus(dir.path(), CorpusFormat::CsvPair).unwrap_err();
        assert!(matches!(err, Error::MalformedRecord { line: 2, .. }));
    }

    #[test]
    fn empty_titles_never_merge_with_each_other() {
        let mut corpus = Corpus::new("t");
        corpus.upsert(Reference::new("a", "")).unwrap();
        corpus.upsert(Reference::new("b", "")).unwrap();
        assert_eq!(corpus.len(), 2);
    }
}
