//! Seeded generators for synthetic evaluation data: planted-partition
//! digraphs for community-detection checks and a two-field demo corpus with
//! crawl fixtures for end-to-end runs. Everything is a pure function of its
//! seed.

use std::collections::BTreeMap;
use std::path::Path;

use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::citnet::CitationGraph;
use crate::error::{Error, Result};

/// Directed planted-partition graph: `blocks` blocks of `per_block` nodes,
/// ordered pair (i, j) gets an edge with probability `p_in` inside a block
/// and `p_out` across. Returns the graph and the planted block labels.
pub fn planted_block_digraph(
    blocks: usize,
    per_block: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (CitationGraph, Vec<usize>) {
    let n = blocks * per_block;
    let labels: Vec<usize> = (0..n).map(|i| i / per_block).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = if labels[i] == labels[j] { p_in } else { p_out };
            if rng.random_range(0.0..1.0) < p {
                edges.push((i, j));
            }
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("n{i:04}")).collect();
    (CitationGraph::from_index_edges(ids, &edges), labels)
}

/// Random simple digraph on `n` nodes with independent edge probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> CitationGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_range(0.0..1.0) < p {
                edges.push((i, j));
            }
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("n{i:04}")).collect();
    CitationGraph::from_index_edges(ids, &edges)
}

const FIELD_WORDS: [&[&str]; 2] = [
    &[
        "zoning", "housing", "density", "corridor", "transit", "ridership", "parcel", "sprawl",
        "walkability", "affordability", "commuting", "pedestrian", "cycling", "busway", "railway",
        "station", "neighborhood", "amenity", "dwelling", "tenure", "suburb", "downtown",
        "greenbelt", "streetscape", "sidewalk", "crosswalk", "plaza", "brownfield", "infill",
        "parkland", "municipality", "ordinance", "masterplan", "easement", "frontage", "curbside",
        "wayfinding", "placemaking", "annexation", "viewshed",
    ],
    &[
        "percolation", "topology", "centrality", "degree", "scaling", "exponent", "lattice",
        "robustness", "cascade", "epidemic", "diffusion", "spectrum", "eigenvalue", "entropy",
        "criticality", "motif", "assortativity", "betweenness", "adjacency", "laplacian",
        "subgraph", "clique", "triad", "threshold", "universality", "fractal", "avalanche",
        "synchronization", "oscillator", "percolating", "rewiring", "hubness", "spanning",
        "giant", "annealed", "quenched", "ensemble", "hamiltonian", "renormalization", "spin",
    ],
];

const SHARED_WORDS: &[&str] = &[
    "dataset", "evidence", "sample", "survey", "region", "comparison", "pattern", "framework",
    "estimate", "variance", "baseline", "indicator", "observation", "catalogue", "archive",
    "measurement",
];

/// Ground truth bundled with a generated corpus.
#[derive(Debug, Clone)]
pub struct SyntheticTruth {
    /// Reference id -> planted field (0 or 1).
    pub field_of: BTreeMap<String, usize>,
    /// Field-exclusive stems -> field.
    pub stem_field: BTreeMap<String, usize>,
    pub n_references: usize,
}

struct RefSpec {
    id: String,
    field: usize,
    title: String,
    year: i32,
    cites: Vec<usize>,
    abstract_text: String,
    has_meta: bool,
}

/// Generate the demo corpus: `n_refs` references split over two topical
/// fields with distinct vocabularies, citation structure concentrated
/// within fields, and crawl fixtures laid out for the fixture provider.
///
/// Writes under `out_dir`:
///   seed.jsonl                 the six depth-0 references
///   fixtures/citing/<id>.jsonl reverse citation fixtures
///   fixtures/meta/<id>.json    abstracts and languages
///   truth/fields.csv           planted field per reference
///   truth/stems.csv            field-exclusive stems
///   litmap.toml                a ready-to-run config
pub fn generate_synthetic_corpus(out_dir: &Path, n_refs: usize, seed: u64) -> Result<SyntheticTruth> {
    assert!(n_refs >= 20 && n_refs.is_multiple_of(2), "n_refs must be even and >= 20");
    let per_field = n_refs / 2;
    let seeds_per_field = 3usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Field phrasebooks: multi-word topical phrases reused across abstracts
    // so that field terms co-occur consistently.
    let mut phrasebooks: Vec<Vec<String>> = Vec::new();
    for words in FIELD_WORDS {
        let mut phrases = Vec::new();
        for _ in 0..36 {
            let len = rng.random_range(1..=3);
            let mut parts = Vec::with_capacity(len);
            for _ in 0..len {
                parts.push(words[rng.random_range(0..words.len())]);
            }
            parts.dedup();
            phrases.push(parts.join(" "));
        }
        phrasebooks.push(phrases);
    }
    let shared_phrases: Vec<String> = (0..12)
        .map(|_| {
            let len = rng.random_range(1..=2);
            let mut parts = Vec::with_capacity(len);
            for _ in 0..len {
                parts.push(SHARED_WORDS[rng.random_range(0..SHARED_WORDS.len())]);
            }
            parts.dedup();
            parts.join(" ")
        })
        .collect();

    // Interleave fields in creation order so "earlier" sampling stays fair.
    let mut specs: Vec<RefSpec> = Vec::with_capacity(n_refs);
    let mut field_members: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    for idx in 0..n_refs {
        let field = idx % 2;
        let within = idx / 2;
        let id = format!("f{field}r{within:03}");
        let words = FIELD_WORDS[field];
        let title = format!(
            "{} {} and {} ({id})",
            capitalize(words[rng.random_range(0..words.len())]),
            words[rng.random_range(0..words.len())],
            words[rng.random_range(0..words.len())],
        );
        let abstract_text = synth_abstract(&mut rng, &phrasebooks[field], &shared_phrases);
        specs.push(RefSpec {
            id,
            field,
            title,
            year: 1995 + (within as i32 % 28),
            cites: Vec::new(),
            abstract_text,
            has_meta: rng.random_range(0.0..1.0) < 0.95,
        });
        field_members[field].push(idx);
    }

    // Citation structure: each non-seed cites 4..=8 earlier works, almost
    // always in its own field, with popularity biased toward the field's
    // early (hub) references. Every reference keeps a path of length <= 2
    // to a seed so a depth-2 crawl collects the whole corpus.
    #[allow(clippy::needless_range_loop)]
    for idx in 0..n_refs {
        let field = specs[idx].field;
        let within = idx / 2;
        if within < seeds_per_field {
            continue;
        }
        let n_cites = rng.random_range(4..=8usize);
        let mut targets: Vec<usize> = Vec::new();

        // Guaranteed crawlable anchor: seeds for the first wave, any
        // early-wave member afterwards.
        let anchor_pool: Vec<usize> = if within < per_field / 3 {
            field_members[field][..seeds_per_field].to_vec()
        } else {
            field_members[field][..per_field / 3].to_vec()
        };
        targets.push(anchor_pool[rng.random_range(0..anchor_pool.len())]);

        let mut attempts = 0;
        while targets.len() < n_cites && attempts < 60 {
            attempts += 1;
            let cross = rng.random_range(0.0..1.0) < 0.03;
            let pool_field = if cross { 1 - field } else { field };
            let earlier: Vec<usize> = field_members[pool_field]
                .iter()
                .copied()
                .filter(|&t| t < idx)
                .collect();
            if earlier.is_empty() {
                continue;
            }
            // Zipf-ish popularity: weight 1/(rank+1)^0.9 toward early refs.
            let weights: Vec<f64> = (0..earlier.len())
                .map(|r| 1.0 / ((r + 1) as f64).powf(0.9))
                .collect();
            let dist = WeightedIndex::new(&weights).expect("positive weights");
            let t = earlier[dist.sample(&mut rng)];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        specs[idx].cites = targets;
    }

    // Materialize files.
    let fixtures = out_dir.join("fixtures");
    let citing_dir = fixtures.join("citing");
    let meta_dir = fixtures.join("meta");
    let truth_dir = out_dir.join("truth");
    for dir in [&citing_dir, &meta_dir, &truth_dir] {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let record_json = |s: &RefSpec| -> String {
        let cites: Vec<String> = s.cites.iter().map(|&t| specs[t].id.clone()).collect();
        serde_json::to_string(&crate::corpus::JsonRecord {
            id: s.id.clone(),
            title: s.title.clone(),
            year: Some(s.year),
            lang: None,
            abstract_text: None,
            cites,
        })
        .expect("record serializes")
    };

    // seed.jsonl: the six seeds.
    let seed_path = out_dir.join("seed.jsonl");
    let seed_lines: Vec<String> = specs
        .iter()
        .filter(|s| s.id.ends_with("r000") || s.id.ends_with("r001") || s.id.ends_with("r002"))
        .map(record_json)
        .collect();
    std::fs::write(&seed_path, seed_lines.join("\n") + "\n").map_err(|e| Error::io(&seed_path, e))?;

    // citing/<id>.jsonl: records of the works citing <id>.
    let mut citers: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (idx, spec) in specs.iter().enumerate() {
        for &t in &spec.cites {
            citers.entry(specs[t].id.as_str()).or_default().push(idx);
        }
    }
    for (cited_id, citing_idxs) in &citers {
        let lines: Vec<String> = citing_idxs.iter().map(|&i| record_json(&specs[i])).collect();
        let path = citing_dir.join(format!("{cited_id}.jsonl"));
        std::fs::write(&path, lines.join("\n") + "\n").map_err(|e| Error::io(&path, e))?;
    }

    // meta/<id>.json: abstracts.
    for spec in &specs {
        if !spec.has_meta {
            continue;
        }
        let meta = crate::crawl::MetaRecord {
            abstract_text: Some(spec.abstract_text.clone()),
            lang: Some("en".to_string()),
        };
        let path = meta_dir.join(format!("{}.json", spec.id));
        std::fs::write(&path, serde_json::to_string(&meta).expect("meta serializes"))
            .map_err(|e| Error::io(&path, e))?;
    }

    // Ground truth tables.
    let fields_csv: String = std::iter::once("id,field".to_string())
        .chain(specs.iter().map(|s| format!("{},{}", s.id, s.field)))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let fields_path = truth_dir.join("fields.csv");
    std::fs::write(&fields_path, fields_csv).map_err(|e| Error::io(&fields_path, e))?;

    let mut stem_field: BTreeMap<String, usize> = BTreeMap::new();
    for (field, words) in FIELD_WORDS.iter().enumerate() {
        for w in *words {
            stem_field.insert(crate::stem::porter(w), field);
        }
    }
    // Drop stems that collide across fields or with the shared pool.
    let shared_stems: Vec<String> = SHARED_WORDS.iter().map(|w| crate::stem::porter(w)).collect();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (field, words) in FIELD_WORDS.iter().enumerate() {
        for w in *words {
            let s = crate::stem::porter(w);
            if let Some(&other) = seen.get(&s) {
                if other != field {
                    stem_field.remove(&s);
                }
            }
            seen.insert(s, field);
        }
    }
    for s in shared_stems {
        stem_field.remove(&s);
    }
    let stems_csv: String = std::iter::once("stem,field".to_string())
        .chain(stem_field.iter().map(|(s, f)| format!("{s},{f}")))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let stems_path = truth_dir.join("stems.csv");
    std::fs::write(&stems_path, stems_csv).map_err(|e| Error::io(&stems_path, e))?;

    // Ready-to-run config (paths relative to the config file).
    let config_path = out_dir.join("litmap.toml");
    let config = r#"seed_corpus = "seed.jsonl"
format = "jsonl"
provider = "fixture"
fixtures_dir = "fixtures"
depth = 2
min_degree = 2
resolution = 1.0
k_w = 1000
min_df = 2
max_ngram = 3
theta_grid = "1:3"
kmax_grid = "100:300:100"
bootstrap_reps = 100
swaps_per_edge = 10
seed = 42
out_dir = "out"
"#;
    std::fs::write(&config_path, config).map_err(|e| Error::io(&config_path, e))?;

    Ok(SyntheticTruth {
        field_of: specs.iter().map(|s| (s.id.clone(), s.field)).collect(),
        stem_field,
        n_references: n_refs,
    })
}

fn synth_abstract(rng: &mut ChaCha8Rng, own: &[String], shared: &[String]) -> String {
    let n_phrases = rng.random_range(8..=13usize);
    let mut parts: Vec<&str> = Vec::with_capacity(n_phrases);
    for _ in 0..n_phrases {
        let pool = if rng.random_range(0.0..1.0) < 0.82 { own } else { shared };
        parts.push(&pool[rng.random_range(0..pool.len())]);
    }
    let mut text = String::from("This paper examines ");
    for (i, p) in parts.iter().enumerate() {
        match i {
            0 => text.push_str(p),
            _ if i % 4 == 3 => {
                text.push_str(". It considers ");
                text.push_str(p);
            }
            _ => {
                text.push_str(", ");
                text.push_str(p);
            }
        }
    }
    text.push('.');
    text
}

fn capitalize(w: &str) -> String {
    let mut chars = w.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ingest_corpus, CorpusFormat};
    use crate::crawl::{expand_citations, FixtureProvider};

    #[test]
    fn planted_graph_shape() {
        let (g, labels) = planted_block_digraph(4, 25, 0.3, 0.01, 42);
        assert_eq!(g.n_nodes(), 100);
        assert_eq!(labels.iter().filter(|&&l| l == 0).count(), 25);
        // Expected intra edges 4*25*24*0.3 = 720, cross 75; allow slack.
        assert!(g.n_edges() > 600 && g.n_edges() < 1000, "E = {}", g.n_edges());
    }

    #[test]
    fn generators_deterministic() {
        let (g1, _) = planted_block_digraph(2, 10, 0.4, 0.05, 7);
        let (g2, _) = planted_block_digraph(2, 10, 0.4, 0.05, 7);
        assert_eq!(g1.edges(), g2.edges());
        let r1 = random_digraph(12, 0.2, 3);
        let r2 = random_digraph(12, 0.2, 3);
        assert_eq!(r1.edges(), r2.edges());
    }

    #[test]
    fn synthetic_corpus_crawls_complete() {
        let dir = tempfile::tempdir().unwrap();
        let truth = generate_synthetic_corpus(dir.path(), 60, 5).unwrap();
        assert_eq!(truth.n_references, 60);
        let seeds = ingest_corpus(&dir.path().join("seed.jsonl"), CorpusFormat::Jsonl).unwrap();
        assert_eq!(seeds.len(), 6);
        let provider = FixtureProvider::new(dir.path().join("fixtures"));
        let (corpus, _) = expand_citations(&seeds, 2, &provider).unwrap();
        assert_eq!(corpus.len(), 60, "depth-2 crawl must reach every reference");
        assert!(corpus.iter().all(|r| r.depth <= 2));
    }

    #[test]
    fn vocabularies_are_field_exclusive() {
        let dir = tempfile::tempdir().unwrap();
        let truth = generate_synthetic_corpus(dir.path(), 40, 9).unwrap();
        assert!(truth.stem_field.len() > 60);
        let f0 = truth.stem_field.values().filter(|&&f| f == 0).count();
        let f1 = truth.stem_field.values().filter(|&&f| f == 1).count();
        assert!(f0 > 25 && f1 > 25);
    }
}
