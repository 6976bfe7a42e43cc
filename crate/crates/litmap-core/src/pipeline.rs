//! End-to-end pipeline: config file, staged execution, exports and the
//! final report. Every random stage draws its seed from the config's root
//! seed, so identical configs produce byte-identical outputs.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::citnet::{
    bootstrap_modularity, build_graph, directed_modularity, filter_min_degree, iterate_core,
    louvain_citation, modularity_citation, weak_components, CitationGraph,
};
use crate::corpus::{export_corpus, ingest_corpus, Corpus, CorpusFormat};
use crate::crawl::{enrich_abstracts, expand_citations, CrawlReport, EmptyProvider, FixtureProvider};
use crate::error::{Error, Result};
use crate::graphml::{write_graph_csv, write_graphml, ExportGraph};
use crate::interdisc::{
    citation_proximity, classification_correlation, interdisciplinarity_index, membership_matrix,
    overlapping_modularity, semantic_distance_matrix, semantic_proximity, MembershipMatrix,
    ProximityMatrix,
};
use crate::keywords::{
    build_cooccurrence, extract_doc_terms, relevance_scores, select_top_k, TermVocabulary,
};
use crate::louvain::Partition;
use crate::report::{
    citation_community_table, semantic_community_table, AnalysisReport, CitationSection,
    InterdiscSection, KeywordSection, RunMetadata, SemanticSection, SweepSummary,
};
use crate::seed::stage_seed;
use crate::semnet::{
    build_semantic_graph, cluster_semantic, filter_graph, select_compromise, sensitivity_sweep,
    sweep_pareto_front, FilterOrder, FilterParams, SweepResult, OBJECTIVE_NAMES,
};
use crate::stem::StemProfile;
use crate::stopwords::Stopwords;

/// Citation/metadata source selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProviderKind {
    Fixture,
    /// Placeholder for live adapters; not bundled in this build.
    Http,
}

/// Flat run configuration. Loaded from a TOML file of plain keys; relative
/// paths resolve against the config file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub seed_corpus: PathBuf,
    pub format: CorpusFormat,
    pub provider: ProviderKind,
    pub fixtures_dir: Option<PathBuf>,
    /// Crawl depth, 0..=2. 0 skips crawling.
    pub depth: u8,
    /// Worker bound for parallel sections; 0 uses the default pool.
    pub parallelism: usize,
    /// Queries per second hint for live adapters; ignored by fixtures.
    pub rate_limit: f64,
    pub min_degree: usize,
    pub iterate_core: bool,
    pub resolution: f64,
    pub k_w: usize,
    pub min_df: u32,
    pub max_ngram: usize,
    pub subsumption: bool,
    pub stopwords_dir: Option<PathBuf>,
    /// Fixed filter parameters, used when no grids are given.
    pub theta_w: u32,
    pub k_max: usize,
    /// Sweep grids "start:end[:step]", inclusive. Both present = sweep mode.
    pub theta_grid: Option<String>,
    pub kmax_grid: Option<String>,
    pub filter_order: FilterOrder,
    pub bootstrap_reps: usize,
    pub swaps_per_edge: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed_corpus: PathBuf::from("seed.jsonl"),
            format: CorpusFormat::Jsonl,
            provider: ProviderKind::Fixture,
            fixtures_dir: None,
            depth: 2,
            parallelism: 0,
            rate_limit: 0.0,
            min_degree: 2,
            iterate_core: false,
            resolution: 1.0,
            k_w: 10_000,
            min_df: 2,
            max_ngram: 3,
            subsumption: false,
            stopwords_dir: None,
            theta_w: 10,
            k_max: 500,
            theta_grid: None,
            kmax_grid: None,
            filter_order: FilterOrder::HubsFirst,
            bootstrap_reps: 100,
            swaps_per_edge: 10,
            seed: 42,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl PipelineConfig {
    /// Parse a TOML config file and resolve its relative paths.
    pub fn load(path: &Path) -> Result<PipelineConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config: PipelineConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.seed_corpus = resolve(base, &config.seed_corpus);
        config.fixtures_dir = config.fixtures_dir.map(|p| resolve(base, &p));
        config.stopwords_dir = config.stopwords_dir.map(|p| resolve(base, &p));
        config.out_dir = resolve(base, &config.out_dir);
        Ok(config)
    }

    /// Check ranges and referenced paths.
    pub fn validate(&self) -> Result<()> {
        if !self.seed_corpus.exists() {
            return Err(Error::Config(format!(
                "seed_corpus does not exist: {}",
                self.seed_corpus.display()
            )));
        }
        if self.provider == ProviderKind::Http {
            return Err(Error::Config(
                "the http provider is not bundled in this build; use provider = \"fixture\"".into(),
            ));
        }
        if self.depth > 2 {
            return Err(Error::Config("depth must be 0, 1 or 2".into()));
        }
        if self.depth >= 1 && self.fixtures_dir.is_none() {
            return Err(Error::Config(
                "crawling (depth >= 1) needs fixtures_dir for the fixture provider".into(),
            ));
        }
        if let Some(dir) = &self.fixtures_dir {
            if !dir.exists() {
                return Err(Error::Config(format!(
                    "fixtures_dir does not exist: {}",
                    dir.display()
                )));
            }
        }
        if let Some(dir) = &self.stopwords_dir {
            if !dir.exists() {
                return Err(Error::Config(format!(
                    "stopwords_dir does not exist: {}",
                    dir.display()
                )));
            }
        }
        if !(1..=3).contains(&self.max_ngram) {
            return Err(Error::Config("max_ngram must be 1, 2 or 3".into()));
        }
        if self.k_w == 0 {
            return Err(Error::Config("k_w must be at least 1".into()));
        }
        if self.bootstrap_reps < 2 {
            return Err(Error::Config("bootstrap_reps must be at least 2".into()));
        }
        if self.theta_grid.is_some() != self.kmax_grid.is_some() {
            return Err(Error::Config(
                "theta_grid and kmax_grid must be given together".into(),
            ));
        }
        if let Some(g) = &self.theta_grid {
            parse_grid(g)?;
        }
        if let Some(g) = &self.kmax_grid {
            parse_grid(g)?;
        }
        if self.resolution <= 0.0 {
            return Err(Error::Config("resolution must be positive".into()));
        }
        Ok(())
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Parse "start:end[:step]" into an inclusive ascending range.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<u64> {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("bad grid component `{s}` in `{spec}`")))
    };
    let (start, end, step) = match parts.as_slice() {
        [start, end] => (parse(start)?, parse(end)?, 1),
        [start, end, step] => (parse(start)?, parse(end)?, parse(step)?),
        _ => {
            return Err(Error::Config(format!(
                "grid `{spec}` must be start:end[:step]"
            )))
        }
    };
    if step == 0 || end < start {
        return Err(Error::Config(format!("grid `{spec}` is empty or descending")));
    }
    Ok((start..=end).step_by(step as usize).collect())
}

/// Writes outputs as `<name>.partial` and renames them on success, so an
/// aborted run leaves only `.partial` files behind.
pub struct Exporter {
    out_dir: PathBuf,
    written: Vec<(PathBuf, PathBuf)>,
}

impl Exporter {
    pub fn new(out_dir: &Path) -> Result<Exporter> {
        std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        Ok(Exporter {
            out_dir: out_dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    /// Path to write `name` to (the .partial staging path).
    pub fn stage(&mut self, name: &str) -> PathBuf {
        let final_path = self.out_dir.join(name);
        let partial = self.out_dir.join(format!("{name}.partial"));
        self.written.push((partial.clone(), final_path));
        partial
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.stage(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
    }

    /// Rename every staged file to its final name.
    pub fn finalize(self) -> Result<()> {
        for (partial, final_path) in self.written {
            if partial.exists() {
                std::fs::rename(&partial, &final_path).map_err(|e| Error::io(&final_path, e))?;
            }
        }
        Ok(())
    }
}

/// Everything a run produces, for callers that want more than the report.
pub struct PipelineRun {
    pub report: AnalysisReport,
    pub corpus: Corpus,
    pub citation_graph: Option<CitationGraph>,
    pub citation_partition: Option<Partition>,
    pub vocabulary: Option<TermVocabulary>,
    pub semantic_graph: Option<crate::semnet::SemanticGraph>,
    pub semantic_partition: Option<Partition>,
    pub membership: Option<MembershipMatrix>,
}

/// Run the full pipeline and write all exports under `config.out_dir`.
pub fn run_pipeline(config: &PipelineConfig) -> Result<AnalysisReport> {
    crate::par::with_parallelism(
        (config.parallelism > 0).then_some(config.parallelism),
        || run_pipeline_inner(config).map(|run| run.report),
    )
}

/// Like [`run_pipeline`] but returns intermediate artifacts as well.
pub fn run_pipeline_full(config: &PipelineConfig) -> Result<PipelineRun> {
    crate::par::with_parallelism(
        (config.parallelism > 0).then_some(config.parallelism),
        || run_pipeline_inner(config),
    )
}

// The stage! macro wraps each body in an immediately-invoked closure so `?`
// aborts the stage, not the function.
#[allow(clippy::redundant_closure_call)]
fn run_pipeline_inner(config: &PipelineConfig) -> Result<PipelineRun> {
    config.validate().map_err(|e| e.in_stage("config"))?;
    let mut exporter = Exporter::new(&config.out_dir)?;
    let mut timings: Vec<(&'static str, f64)> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();

    macro_rules! stage {
        ($name:literal, $body:expr) => {{
            let started = Instant::now();
            let result = (|| $body)().map_err(|e: Error| e.in_stage($name));
            timings.push(($name, started.elapsed().as_secs_f64()));
            result?
        }};
    }

    // Ingest.
    let seed_corpus: Corpus =
        stage!("ingest", ingest_corpus(&config.seed_corpus, config.format));

    // Crawl.
    let (corpus, crawl_report): (Corpus, Option<CrawlReport>) = stage!("crawl", {
        if config.depth >= 1 {
            let provider = FixtureProvider::new(
                config.fixtures_dir.as_ref().expect("validated").clone(),
            );
            let (corpus, report) = expand_citations(&seed_corpus, config.depth, &provider)?;
            Ok((corpus, Some(report)))
        } else {
            Ok((seed_corpus, None))
        }
    });

    // Enrich abstracts and detect languages.
    let (corpus, enrich_report): (Corpus, CrawlReport) = stage!("enrich", {
        match &config.fixtures_dir {
            Some(dir) => enrich_abstracts(&corpus, &FixtureProvider::new(dir.clone())),
            None => enrich_abstracts(&corpus, &EmptyProvider),
        }
    });
    let crawl_section = match crawl_report {
        Some(mut r) => {
            r.abstract_coverage = enrich_report.abstract_coverage;
            r.provider_errors.extend(enrich_report.provider_errors.clone());
            Some(r)
        }
        None => None,
    };

    let corpus_stats = stage!("stats", corpus.stats());
    stage!("export-corpus", {
        let path = exporter.stage("corpus.jsonl");
        export_corpus(&corpus, &path, CorpusFormat::Jsonl)
    });

    // Citation layer.
    struct CitationArtifacts {
        section: CitationSection,
        filtered: CitationGraph,
        partition: Partition,
    }
    let citation: CitationArtifacts = stage!("citation", {
        let graph = build_graph(&corpus)?;
        let components = weak_components(&graph);
        let filtered = if config.iterate_core {
            iterate_core(&graph, config.min_degree)
        } else {
            filter_min_degree(&graph, config.min_degree)
        };
        if filtered.n_edges() == 0 {
            return Err(Error::NoEdges);
        }
        let partition = louvain_citation(
            &filtered,
            stage_seed(config.seed, "citation-louvain"),
            config.resolution,
        )?;
        let q_undirected = modularity_citation(&filtered, &partition)?;
        let q_directed = directed_modularity(&filtered, &partition)?;
        let null_model = bootstrap_modularity(
            &filtered,
            &partition,
            config.bootstrap_reps,
            config.swaps_per_edge,
            stage_seed(config.seed, "citation-null"),
        )?;
        let communities = citation_community_table(&filtered, &partition);
        let export = ExportGraph::from_citation(&filtered, Some(&partition), |id| {
            corpus.get(id).map(|r| r.title.clone()).unwrap_or_else(|| id.to_string())
        });
        write_graphml(&export, &exporter.stage("citation.graphml"))?;
        let nodes_path = exporter.stage("citation_nodes.csv");
        let edges_path = exporter.stage("citation_edges.csv");
        write_graph_csv(&export, &nodes_path, &edges_path)?;
        Ok(CitationArtifacts {
            section: CitationSection {
                n_nodes: graph.n_nodes(),
                n_edges: graph.n_edges(),
                self_citations_dropped: graph.self_citations_dropped,
                n_weak_components: components.len(),
                largest_component: components.first().map_or(0, Vec::len),
                filtered_nodes: filtered.n_nodes(),
                filtered_edges: filtered.n_edges(),
                n_communities: partition.n_communities(),
                modularity_undirected: q_undirected,
                modularity_directed: q_directed,
                null_model,
                communities,
            },
            filtered,
            partition,
        })
    });

    // Keyword extraction.
    struct KeywordArtifacts {
        section: KeywordSection,
        doc_terms: Vec<(String, BTreeMap<String, u32>)>,
        vocabulary: TermVocabulary,
        matrix: crate::keywords::CooccurrenceMatrix,
    }
    let keywords: Option<KeywordArtifacts> = stage!("keywords", {
        let docs: Vec<(String, String)> = corpus
            .iter()
            .filter_map(|r| {
                r.abstract_text
                    .as_ref()
                    .map(|a| (r.language.clone().unwrap_or_else(|| "und".into()), a.clone()))
            })
            .collect();
        if docs.is_empty() {
            skipped.push("keywords: no abstracts in corpus".into());
            return Ok(None);
        }
        let ids: Vec<String> = corpus
            .iter()
            .filter(|r| r.abstract_text.is_some())
            .map(|r| r.id.clone())
            .collect();
        let stopwords = match &config.stopwords_dir {
            Some(dir) => Stopwords::with_overrides(dir)?,
            None => Stopwords::builtin(),
        };
        let language_fallbacks = docs
            .iter()
            .filter(|(lang, _)| StemProfile::for_language(lang).is_none())
            .count();
        let term_maps = extract_doc_terms(&docs, config.max_ngram, &stopwords);
        let doc_terms: Vec<(String, BTreeMap<String, u32>)> =
            ids.into_iter().zip(term_maps).collect();
        let matrix = build_cooccurrence(
            &doc_terms.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>(),
            config.min_df,
        );
        let scores = relevance_scores(&matrix);
        let vocabulary = select_top_k(&matrix, &scores, config.k_w, config.subsumption);
        let path = exporter.stage("vocabulary.csv");
        write_vocabulary_csv(&vocabulary, &path)?;
        Ok(Some(KeywordArtifacts {
            section: KeywordSection {
                n_documents: doc_terms.len(),
                n_candidates: matrix.n_terms(),
                vocabulary_size: vocabulary.len(),
                truncated: vocabulary.truncated,
                language_fallbacks,
            },
            doc_terms,
            vocabulary,
            matrix,
        }))
    });

    // Semantic layer (with optional sweep).
    struct SemanticArtifacts {
        section: SemanticSection,
        sweep: Option<SweepSummary>,
        graph: crate::semnet::SemanticGraph,
        partition: Partition,
    }
    let semantic: Option<SemanticArtifacts> = stage!("semantic", {
        let Some(kw) = &keywords else {
            skipped.push("semantic: keyword stage skipped".into());
            return Ok(None);
        };
        if kw.vocabulary.is_empty() {
            skipped.push("semantic: empty vocabulary".into());
            return Ok(None);
        }
        let raw = build_semantic_graph(&kw.matrix, &kw.vocabulary)?;
        let (params, sweep_summary) = match (&config.theta_grid, &config.kmax_grid) {
            (Some(tg), Some(kg)) => {
                let theta_grid: Vec<u32> =
                    parse_grid(tg)?.into_iter().map(|v| v as u32).collect();
                let kmax_grid: Vec<usize> =
                    parse_grid(kg)?.into_iter().map(|v| v as usize).collect();
                let sweep = sensitivity_sweep(
                    &raw,
                    &theta_grid,
                    &kmax_grid,
                    config.filter_order,
                    config.resolution,
                    stage_seed(config.seed, "semantic-sweep"),
                );
                let path = exporter.stage("sweep.csv");
                write_sweep_csv(&sweep, &path)?;
                let front = sweep_pareto_front(&sweep, &[0, 3]);
                let selected = select_compromise(&sweep, &front, &[0, 3]);
                let summary = SweepSummary {
                    grid_points: sweep.rows.len(),
                    defined_points: sweep.defined().len(),
                    front_size: front.len(),
                    selected,
                };
                match selected {
                    Some(p) => (p, Some(summary)),
                    None => {
                        skipped.push("semantic: sweep produced no usable grid point".into());
                        return Ok(None);
                    }
                }
            }
            _ => (
                FilterParams {
                    theta_w: config.theta_w,
                    k_max: config.k_max,
                },
                None,
            ),
        };
        let filtered = filter_graph(&raw, params, config.filter_order);
        if filtered.n_nodes() == 0 {
            skipped.push(format!(
                "semantic: filtering at theta_w={} k_max={} emptied the graph",
                params.theta_w, params.k_max
            ));
            return Ok(None);
        }
        let (partition, modularity) = cluster_semantic(
            &filtered,
            stage_seed(config.seed, "semantic-louvain"),
            config.resolution,
        )?;
        let occurrences: BTreeMap<String, u64> = {
            let mut occ: BTreeMap<String, u64> = BTreeMap::new();
            for (_, counts) in &kw.doc_terms {
                for (term, &c) in counts {
                    if partition.community_of(term).is_some() {
                        *occ.entry(term.clone()).or_insert(0) += u64::from(c);
                    }
                }
            }
            occ
        };
        let communities = semantic_community_table(&filtered, &partition, &occurrences);
        let export = ExportGraph::from_semantic(&filtered, Some(&partition));
        write_graphml(&export, &exporter.stage("semantic.graphml"))?;
        let nodes_path = exporter.stage("semantic_nodes.csv");
        let edges_path = exporter.stage("semantic_edges.csv");
        write_graph_csv(&export, &nodes_path, &edges_path)?;
        Ok(Some(SemanticArtifacts {
            section: SemanticSection {
                params,
                params_from_sweep: sweep_summary.is_some(),
                raw_nodes: raw.n_nodes(),
                raw_edges: raw.n_edges(),
                n_nodes: filtered.n_nodes(),
                n_edges: filtered.n_edges(),
                n_communities: partition.n_communities(),
                modularity,
                communities,
            },
            sweep: sweep_summary,
            graph: filtered,
            partition,
        }))
    });

    // Interdisciplinarity coupling.
    let interdisc: Option<(InterdiscSection, MembershipMatrix)> = stage!("interdisc", {
        let (Some(kw), Some(sem)) = (&keywords, &semantic) else {
            skipped.push("interdisciplinarity: semantic layer unavailable".into());
            return Ok(None);
        };
        let membership = membership_matrix(&kw.doc_terms, &sem.partition);
        if membership.n_rows() < 2 {
            skipped.push("interdisciplinarity: fewer than 2 references with matched terms".into());
            return Ok(None);
        }
        let index = interdisciplinarity_index(&membership);
        write_interdisc_csv(
            &membership,
            &index,
            &citation.partition,
            &exporter.stage("interdisc.csv"),
        )?;
        write_membership_csv(&membership, &exporter.stage("membership.csv"))?;

        let cit_prox = citation_proximity(&citation.filtered, &citation.partition)?;
        write_proximity_csv(&cit_prox, &exporter.stage("proximity_citation.csv"))?;
        let distances = semantic_distance_matrix(&membership);
        let sem_prox = semantic_proximity(&distances, &membership, &citation.partition);
        write_proximity_csv(&sem_prox, &exporter.stage("proximity_semantic.csv"))?;

        let correlation = classification_correlation(
            &membership,
            &citation.partition,
            config.bootstrap_reps,
            stage_seed(config.seed, "correlation-null"),
        )?;
        write_correlation_csv(&correlation.matrix, &exporter.stage("correlation.csv"))?;

        let overlap = overlapping_modularity(
            &citation.filtered,
            &membership,
            config.bootstrap_reps,
            stage_seed(config.seed, "overlap-null"),
        )?;
        // Ceiling: crisp citation memberships evaluated the same way.
        let crisp_rows: Vec<(String, Vec<f64>)> = membership
            .ids()
            .iter()
            .filter_map(|id| {
                citation.partition.community_of(id).map(|c| {
                    let mut row = vec![0.0; citation.partition.n_communities()];
                    row[c] = 1.0;
                    (id.clone(), row)
                })
            })
            .collect();
        let overlap_ceiling = if crisp_rows.is_empty() {
            f64::NAN
        } else {
            let crisp = MembershipMatrix::from_rows(
                crisp_rows.iter().map(|(id, _)| id.clone()).collect(),
                crisp_rows.into_iter().map(|(_, r)| r).collect(),
                citation.partition.n_communities(),
            );
            overlapping_modularity(&citation.filtered, &crisp, 2, 0)?.q_ov
        };

        let n = index.len() as f64;
        let section = InterdiscSection {
            n_references: membership.n_rows(),
            excluded_references: membership.excluded,
            n_classes: membership.n_classes(),
            index_mean: index.iter().sum::<f64>() / n,
            index_min: index.iter().copied().fold(f64::INFINITY, f64::min),
            index_max: index.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            correlation,
            overlap,
            overlap_ceiling,
        };
        Ok(Some((section, membership)))
    });

    let (interdisc_section, membership) = match interdisc {
        Some((s, m)) => (Some(s), Some(m)),
        None => (None, None),
    };

    let report = AnalysisReport {
        corpus: corpus_stats,
        crawl: crawl_section,
        citation: Some(citation.section),
        keywords: keywords.as_ref().map(|k| k.section.clone()),
        sweep: semantic.as_ref().and_then(|s| s.sweep.clone()),
        semantic: semantic.as_ref().map(|s| s.section.clone()),
        interdisciplinarity: interdisc_section,
        skipped,
        run: RunMetadata {
            root_seed: config.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    };
    exporter.write_text("report.json", &report.to_json())?;
    exporter.finalize()?;

    // Wall-clock sidecar, deliberately outside the deterministic output set.
    let timing_path = config.out_dir.join("timings.txt");
    let mut timing_file =
        std::fs::File::create(&timing_path).map_err(|e| Error::io(&timing_path, e))?;
    for (name, secs) in &timings {
        writeln!(timing_file, "{name}\t{secs:.3}s").map_err(|e| Error::io(&timing_path, e))?;
    }

    let (semantic_graph, semantic_partition) = match semantic {
        Some(s) => (Some(s.graph), Some(s.partition)),
        None => (None, None),
    };
    Ok(PipelineRun {
        report,
        corpus,
        citation_graph: Some(citation.filtered),
        citation_partition: Some(citation.partition),
        vocabulary: keywords.map(|k| k.vocabulary),
        semantic_graph,
        semantic_partition,
        membership,
    })
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::MalformedRecord {
        path: path.to_path_buf(),
        line: 0,
        msg: e.to_string(),
    }
}

/// vocabulary.csv: term,df,score,rank.
pub fn write_vocabulary_csv(vocab: &TermVocabulary, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(["term", "df", "score", "rank"]).map_err(|e| csv_err(path, e))?;
    for (rank, entry) in vocab.entries.iter().enumerate() {
        w.write_record([
            entry.term.as_str(),
            &entry.df.to_string(),
            &entry.score.to_string(),
            &(rank + 1).to_string(),
        ])
        .map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// sweep.csv: parameters, six raw objectives, six normalized columns.
pub fn write_sweep_csv(sweep: &SweepResult, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut header = vec!["theta_w".to_string(), "k_max".to_string()];
    header.extend(OBJECTIVE_NAMES.iter().map(|n| n.to_string()));
    header.extend(OBJECTIVE_NAMES.iter().map(|n| format!("{n}_norm")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for row in &sweep.rows {
        let mut record = vec![row.params.theta_w.to_string(), row.params.k_max.to_string()];
        match (row.objectives, row.normalized) {
            (Some(obj), Some(norm)) => {
                record.extend(obj.iter().map(|v| v.to_string()));
                record.extend(norm.iter().map(|v| v.to_string()));
            }
            _ => record.extend(std::iter::repeat_n(String::new(), 12)),
        }
        w.write_record(&record).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// interdisc.csv: id, citation community (empty when the reference is not in
/// the filtered graph), interdisciplinarity index.
fn write_interdisc_csv(
    membership: &MembershipMatrix,
    index: &[f64],
    citation_partition: &Partition,
    path: &Path,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(["id", "community", "interdisciplinarity"])
        .map_err(|e| csv_err(path, e))?;
    for (id, &i) in membership.ids().iter().zip(index) {
        let community = citation_partition
            .community_of(id)
            .map(|c| c.to_string())
            .unwrap_or_default();
        w.write_record([id.as_str(), &community, &i.to_string()])
            .map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// membership.csv: id then one probability column per semantic class.
fn write_membership_csv(membership: &MembershipMatrix, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut header = vec!["id".to_string()];
    header.extend((0..membership.n_classes()).map(|j| format!("class_{j}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for (i, id) in membership.ids().iter().enumerate() {
        let mut record = vec![id.clone()];
        record.extend(membership.row(i).iter().map(|v| v.to_string()));
        w.write_record(&record).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_proximity_csv(matrix: &ProximityMatrix, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut header = vec!["community".to_string()];
    header.extend(matrix.communities.iter().map(|c| format!("c{c}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for (c, row) in matrix.communities.iter().zip(&matrix.values) {
        let mut record = vec![c.to_string()];
        record.extend(row.iter().map(|v| {
            if v.is_nan() {
                String::new()
            } else {
                v.to_string()
            }
        }));
        w.write_record(&record).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_correlation_csv(matrix: &[Vec<Option<f64>>], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    let n_classes = matrix.first().map_or(0, Vec::len);
    let mut header = vec!["citation_community".to_string()];
    header.extend((0..n_classes).map(|j| format!("class_{j}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for (c, row) in matrix.iter().enumerate() {
        let mut record = vec![c.to_string()];
        record.extend(row.iter().map(|v| v.map(|x| x.to_string()).unwrap_or_default()));
        w.write_record(&record).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
