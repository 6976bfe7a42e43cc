//! Analysis report: community tables for both layers and the JSON report
//! emitted at the end of a pipeline run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::citnet::{BootstrapResult, CitationGraph};
use crate::corpus::CorpusStats;
use crate::crawl::CrawlReport;
use crate::interdisc::{CorrelationResult, OverlapResult};
use crate::louvain::Partition;
use crate::semnet::{FilterParams, SemanticGraph};

/// One citation community: size, node share, top members by in-degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CitationCommunityRow {
    pub community: usize,
    pub size: usize,
    pub share: f64,
    /// Up to three (reference id, in-degree) pairs, highest in-degree first.
    pub top_in_degree: Vec<(String, usize)>,
}

/// Table of citation communities, largest first; shares sum to 1.
pub fn citation_community_table(g: &CitationGraph, p: &Partition) -> Vec<CitationCommunityRow> {
    let total: usize = p.sizes().iter().sum();
    (0..p.n_communities())
        .map(|c| {
            let mut members: Vec<(String, usize)> = p
                .members(c)
                .filter_map(|id| g.index_of(id).map(|i| (id.to_string(), g.in_degree(i))))
                .collect();
            members.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            members.truncate(3);
            CitationCommunityRow {
                community: c,
                size: p.sizes()[c],
                share: p.sizes()[c] as f64 / total as f64,
                top_in_degree: members,
            }
        })
        .collect()
}

/// One semantic community: term count, share of keyword occurrence mass,
/// top terms by degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemanticCommunityRow {
    pub community: usize,
    pub size: usize,
    pub share: f64,
    /// Share of total keyword occurrences carried by this community's terms.
    pub weight_share: f64,
    /// Up to three representative terms, highest degree first.
    pub keywords: Vec<String>,
}

/// Table of semantic communities, largest first. `occurrences` maps each
/// clustered term to its total occurrence count over the corpus.
pub fn semantic_community_table(
    g: &SemanticGraph,
    p: &Partition,
    occurrences: &BTreeMap<String, u64>,
) -> Vec<SemanticCommunityRow> {
    let total_terms: usize = p.sizes().iter().sum();
    let total_mass: u64 = (0..p.n_communities())
        .flat_map(|c| p.members(c))
        .map(|t| occurrences.get(t).copied().unwrap_or(0))
        .sum();
    (0..p.n_communities())
        .map(|c| {
            let mass: u64 = p
                .members(c)
                .map(|t| occurrences.get(t).copied().unwrap_or(0))
                .sum();
            let mut terms: Vec<(String, usize)> = p
                .members(c)
                .filter_map(|t| g.index_of(t).map(|i| (t.to_string(), g.degree(i))))
                .collect();
            terms.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            terms.truncate(3);
            SemanticCommunityRow {
                community: c,
                size: p.sizes()[c],
                share: p.sizes()[c] as f64 / total_terms as f64,
                weight_share: if total_mass > 0 {
                    mass as f64 / total_mass as f64
                } else {
                    0.0
                },
                keywords: terms.into_iter().map(|(t, _)| t).collect(),
            }
        })
        .collect()
}

/// Citation layer section of the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CitationSection {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub self_citations_dropped: usize,
    pub n_weak_components: usize,
    pub largest_component: usize,
    pub filtered_nodes: usize,
    pub filtered_edges: usize,
    pub n_communities: usize,
    pub modularity_undirected: f64,
    pub modularity_directed: f64,
    pub null_model: BootstrapResult,
    pub communities: Vec<CitationCommunityRow>,
}

/// Keyword extraction section.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeywordSection {
    pub n_documents: usize,
    pub n_candidates: usize,
    pub vocabulary_size: usize,
    pub truncated: bool,
    /// Documents whose language had no stemming profile (English fallback).
    pub language_fallbacks: usize,
}

/// Semantic layer section.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemanticSection {
    pub params: FilterParams,
    pub params_from_sweep: bool,
    pub raw_nodes: usize,
    pub raw_edges: usize,
    pub n_nodes: usize,
    pub n_edges: usize,
    pub n_communities: usize,
    pub modularity: f64,
    pub communities: Vec<SemanticCommunityRow>,
}

/// Sweep summary (full table goes to CSV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub grid_points: usize,
    pub defined_points: usize,
    pub front_size: usize,
    pub selected: Option<FilterParams>,
}

/// Interdisciplinarity section.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterdiscSection {
    pub n_references: usize,
    pub excluded_references: usize,
    pub n_classes: usize,
    pub index_mean: f64,
    pub index_min: f64,
    pub index_max: f64,
    pub correlation: CorrelationResult,
    pub overlap: OverlapResult,
    /// Multi-class modularity of the crisp citation classification on the
    /// same induced subgraph: the ceiling Q_ov is compared against.
    pub overlap_ceiling: f64,
}

/// Machine-readable end-of-run report. Serialization round-trips; sections
/// are `None` when their stage was skipped (reasons listed in `skipped`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub corpus: CorpusStats,
    pub crawl: Option<CrawlReport>,
    pub citation: Option<CitationSection>,
    pub keywords: Option<KeywordSection>,
    pub sweep: Option<SweepSummary>,
    pub semantic: Option<SemanticSection>,
    pub interdisciplinarity: Option<InterdiscSection>,
    pub skipped: Vec<String>,
    pub run: RunMetadata,
}

/// Reproducibility metadata. Wall-clock timings go to a sidecar log so the
/// report itself is byte-stable across identical runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMetadata {
    pub root_seed: u64,
    pub version: String,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<AnalysisReport> {
        serde_json::from_str(text)
    }
}
