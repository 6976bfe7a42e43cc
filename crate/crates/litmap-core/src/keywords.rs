//! Keyword extraction: abstracts become stemmed multi-stems (n-grams of up
//! to three stems), scored by how far their co-occurrence profile deviates
//! from uniform, with the top-K_W kept as the semantic vocabulary.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::par;
use crate::stem::{stem, StemProfile};
use crate::stopwords::Stopwords;

/// A tokenized document: runs of consecutive content stems. Segment
/// boundaries fall at removed stopwords and at clause punctuation, so no
/// n-gram spans either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDoc {
    pub segments: Vec<Vec<String>>,
}

impl TokenizedDoc {
    /// All stems in order, ignoring boundaries.
    pub fn stems(&self) -> impl Iterator<Item = &str> {
        self.segments.iter().flatten().map(String::as_str)
    }
}

fn is_boundary_punct(c: char) -> bool {
    matches!(c, '.' | ';' | ':' | '!' | '?' | ',' | '(' | ')' | '[' | ']')
}

/// Lowercase, split into tokens on everything that is not alphanumeric or an
/// intra-word hyphen, drop the language's stopwords and stem what remains.
/// Hyphenated compounds are stemmed part-wise ("activity-based" keeps its
/// hyphen). Unknown language codes fall back to the English profile; callers
/// use [`crate::stem::StemProfile::for_language`] to detect the fallback.
pub fn tokenize_and_stem(text: &str, lang: &str, stopwords: &Stopwords) -> TokenizedDoc {
    let profile = StemProfile::for_language(lang).unwrap_or(StemProfile::English);
    let stopword_lang = if StemProfile::for_language(lang).is_some() || lang == "de" {
        lang
    } else {
        "en"
    };

    let mut segments: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut token = String::new();

    let flush_token = |token: &mut String, current: &mut Vec<String>, segments: &mut Vec<Vec<String>>| {
        if token.is_empty() {
            return;
        }
        let raw = std::mem::take(token);
        let trimmed = raw.trim_matches('-');
        if trimmed.is_empty() {
            return;
        }
        if stopwords.is_stopword(stopword_lang, trimmed) {
            // Stopword removal breaks n-gram adjacency.
            if !current.is_empty() {
                segments.push(std::mem::take(current));
            }
            return;
        }
        let stemmed: Vec<String> = trimmed
            .split('-')
            .filter(|p| !p.is_empty())
            .map(|p| stem(p, profile))
            .collect();
        if !stemmed.is_empty() {
            current.push(stemmed.join("-"));
        }
    };

    for c in text.chars() {
        if c.is_alphanumeric() {
            token.extend(c.to_lowercase());
        } else if c == '-' {
            if !token.is_empty() {
                token.push('-');
            }
        } else {
            flush_token(&mut token, &mut current, &mut segments);
            if is_boundary_punct(c) && !current.is_empty() {
                segments.push(std::mem::take(&mut current));
            }
        }
    }
    flush_token(&mut token, &mut current, &mut segments);
    if !current.is_empty() {
        segments.push(current);
    }
    TokenizedDoc { segments }
}

/// Multi-stems of length 1..=max_len with per-document occurrence counts.
/// No n-gram crosses a segment boundary. Stems join with single spaces.
pub fn extract_ngrams(doc: &TokenizedDoc, max_len: usize) -> BTreeMap<String, u32> {
    assert!((1..=3).contains(&max_len), "max_len must be 1..=3");
    let mut counts: BTreeMap<String, u32> = BTreeMap::new();
    for segment in &doc.segments {
        for start in 0..segment.len() {
            let mut term = String::new();
            for len in 1..=max_len {
                let end = start + len;
                if end > segment.len() {
                    break;
                }
                if len > 1 {
                    term.push(' ');
                }
                term.push_str(&segment[end - 1]);
                *counts.entry(term.clone()).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Tokenize and count multi-stems for a batch of documents in parallel.
/// `docs` are (language, text) pairs; output order follows input order.
pub fn extract_doc_terms(
    docs: &[(String, String)],
    max_len: usize,
    stopwords: &Stopwords,
) -> Vec<BTreeMap<String, u32>> {
    par::map_collect(docs, |(lang, text)| {
        extract_ngrams(&tokenize_and_stem(text, lang, stopwords), max_len)
    })
}

/// Symmetric document-level co-occurrence counts over candidate terms.
/// The diagonal holds document frequencies; a pair counts once per document.
#[derive(Debug, Clone)]
pub struct CooccurrenceMatrix {
    terms: Vec<String>,
    index: HashMap<String, u32>,
    rows: Vec<BTreeMap<u32, u32>>,
    df: Vec<u32>,
    pub n_docs: usize,
}

impl CooccurrenceMatrix {
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, i: u32) -> &str {
        &self.terms[i as usize]
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    pub fn df(&self, i: u32) -> u32 {
        self.df[i as usize]
    }

    /// C(t, t'): document frequency on the diagonal, joint document counts
    /// off it.
    pub fn count(&self, i: u32, j: u32) -> u32 {
        if i == j {
            self.df[i as usize]
        } else {
            self.rows[i as usize].get(&j).copied().unwrap_or(0)
        }
    }

    /// Off-diagonal nonzero entries of row `i`, ascending by partner index.
    pub fn partners(&self, i: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.rows[i as usize].iter().map(|(&j, &c)| (j, c))
    }
}

/// Build the co-occurrence matrix over terms present in at least `min_df`
/// documents. Input maps are per-document occurrence counts; co-occurrence
/// uses presence only.
pub fn build_cooccurrence(docs: &[BTreeMap<String, u32>], min_df: u32) -> CooccurrenceMatrix {
    let mut df_all: BTreeMap<&str, u32> = BTreeMap::new();
    for doc in docs {
        for term in doc.keys() {
            *df_all.entry(term).or_insert(0) += 1;
        }
    }
    let terms: Vec<String> = df_all
        .iter()
        .filter(|&(_, &df)| df >= min_df)
        .map(|(t, _)| t.to_string())
        .collect();
    let index: HashMap<String, u32> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();
    let df: Vec<u32> = terms.iter().map(|t| df_all[t.as_str()]).collect();
    let mut rows: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); terms.len()];
    for doc in docs {
        let present: Vec<u32> = doc.keys().filter_map(|t| index.get(t).copied()).collect();
        for (a, &i) in present.iter().enumerate() {
            for &j in &present[a + 1..] {
                *rows[i as usize].entry(j).or_insert(0) += 1;
                *rows[j as usize].entry(i).or_insert(0) += 1;
            }
        }
    }
    CooccurrenceMatrix {
        terms,
        index,
        rows,
        df,
        n_docs: docs.len(),
    }
}

/// Relevance of each term as concentration of its co-occurrence profile:
/// df(t) * (1 - H(p)/ln n_t) over the n_t nonzero partners. Uniform profiles
/// score exactly 0; a single partner is maximal concentration and scores
/// df(t); isolated terms score 0.
pub fn relevance_scores(matrix: &CooccurrenceMatrix) -> Vec<f64> {
    (0..matrix.n_terms() as u32)
        .map(|i| {
            let counts: Vec<u32> = matrix.partners(i).map(|(_, c)| c).collect();
            let df = f64::from(matrix.df(i));
            match counts.len() {
                0 => 0.0,
                1 => df,
                n => {
                    if counts.iter().all(|&c| c == counts[0]) {
                        return 0.0;
                    }
                    let total: f64 = counts.iter().map(|&c| f64::from(c)).sum();
                    let h: f64 = counts
                        .iter()
                        .map(|&c| {
                            let p = f64::from(c) / total;
                            -p * p.ln()
                        })
                        .sum();
                    (df * (1.0 - h / (n as f64).ln())).clamp(0.0, df)
                }
            }
        })
        .collect()
}

/// One selected vocabulary term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermEntry {
    pub term: String,
    pub df: u32,
    pub score: f64,
}

/// The selected vocabulary, sorted by decreasing relevance (ties by higher
/// document frequency, then lexicographic).
#[derive(Debug, Clone)]
pub struct TermVocabulary {
    pub entries: Vec<TermEntry>,
    pub k_w: usize,
    /// Fewer candidates than K_W were available.
    pub truncated: bool,
}

impl TermVocabulary {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.term.as_str())
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.iter().any(|e| e.term == term)
    }
}

/// Select the top `k_w` terms by relevance. With `subsumption` on, a shorter
/// term contiguously contained in a longer selected term is dropped when the
/// longer term keeps at least 90% of its document frequency.
pub fn select_top_k(matrix: &CooccurrenceMatrix, scores: &[f64], k_w: usize, subsumption: bool) -> TermVocabulary {
    assert!(k_w >= 1, "k_w must be at least 1");
    assert_eq!(scores.len(), matrix.n_terms());
    let mut ranked: Vec<TermEntry> = (0..matrix.n_terms() as u32)
        .map(|i| TermEntry {
            term: matrix.term(i).to_string(),
            df: matrix.df(i),
            score: scores[i as usize],
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| b.df.cmp(&a.df))
            .then_with(|| a.term.cmp(&b.term))
    });
    let truncated = ranked.len() < k_w;
    ranked.truncate(k_w);

    if subsumption {
        let selected_df: HashMap<&str, u32> =
            ranked.iter().map(|e| (e.term.as_str(), e.df)).collect();
        let mut dropped: Vec<String> = Vec::new();
        for entry in &ranked {
            let tokens: Vec<&str> = entry.term.split(' ').collect();
            if tokens.len() < 2 {
                continue;
            }
            // Contiguous strict sub-n-grams of this term.
            for len in 1..tokens.len() {
                for start in 0..=(tokens.len() - len) {
                    let sub = tokens[start..start + len].join(" ");
                    if let Some(&sub_df) = selected_df.get(sub.as_str()) {
                        // Docs holding the longer term always hold the sub-term,
                        // so overlap = df(longer)/df(shorter).
                        if f64::from(entry.df) >= 0.9 * f64::from(sub_df) {
                            dropped.push(sub);
                        }
                    }
                }
            }
        }
        if !dropped.is_empty() {
            let dropped: std::collections::HashSet<String> = dropped.into_iter().collect();
            ranked.retain(|e| !dropped.contains(&e.term));
        }
    }

    TermVocabulary {
        entries: ranked,
        k_w,
        truncated,
    }
}
