//! Coupling of the citation and semantic layers: per-reference membership
//! over semantic classes, the interdisciplinarity index, proximity matrices
//! between citation communities, classification correlation, and the
//! multi-class (overlapping) modularity, each with shuffle-based null models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::citnet::CitationGraph;
use crate::error::{Error, Result};
use crate::louvain::Partition;
use crate::par;
use crate::seed::derive_seed;

/// Per-reference probability vector over semantic classes: p_ij is the share
/// of reference i's matched keyword occurrences classified in class j.
#[derive(Debug, Clone)]
pub struct MembershipMatrix {
    ids: Vec<String>,
    rows: Vec<Vec<f64>>,
    n_classes: usize,
    /// References with an abstract but no matched vocabulary term.
    pub excluded: usize,
}

impl MembershipMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Build directly from rows (tests, shuffled nulls). Rows must each sum
    /// to 1.
    pub fn from_rows(ids: Vec<String>, rows: Vec<Vec<f64>>, n_classes: usize) -> MembershipMatrix {
        assert_eq!(ids.len(), rows.len());
        MembershipMatrix {
            ids,
            rows,
            n_classes,
            excluded: 0,
        }
    }
}

/// Build the membership matrix from per-document term occurrence counts and
/// the semantic partition. Documents are (reference id, term counts) pairs;
/// only terms covered by the partition contribute. Documents with no matched
/// term are excluded and counted.
pub fn membership_matrix(
    doc_terms: &[(String, BTreeMap<String, u32>)],
    semantic_partition: &Partition,
) -> MembershipMatrix {
    let n_classes = semantic_partition.n_communities();
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut excluded = 0usize;
    for (id, counts) in doc_terms {
        let mut row = vec![0.0; n_classes];
        let mut total = 0u64;
        for (term, &count) in counts {
            if let Some(class) = semantic_partition.community_of(term) {
                row[class] += f64::from(count);
                total += u64::from(count);
            }
        }
        if total == 0 {
            excluded += 1;
            continue;
        }
        for v in &mut row {
            *v /= total as f64;
        }
        ids.push(id.clone());
        rows.push(row);
    }
    MembershipMatrix {
        ids,
        rows,
        n_classes,
        excluded,
    }
}

/// I_i = 1 - sum_j p_ij^2, one value per membership row. 0 for one-hot rows,
/// at most 1 - 1/J.
pub fn interdisciplinarity_index(p: &MembershipMatrix) -> Vec<f64> {
    p.rows
        .iter()
        .map(|row| 1.0 - row.iter().map(|x| x * x).sum::<f64>())
        .collect()
}

/// Square matrix over citation communities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProximityMatrix {
    pub kind: ProximityKind,
    /// Community ids 0..k, row and column labels.
    pub communities: Vec<usize>,
    pub values: Vec<Vec<f64>>,
    /// Communities with no defined row (no outgoing citations, or no
    /// abstract-bearing members).
    pub flagged: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProximityKind {
    Citation,
    Semantic,
}

/// Citation proximity c_kk' = (citations from community k to k') / (all
/// citations out of k). Rows with outgoing citations sum to 1; communities
/// without any outgoing citation yield a zero row and are flagged.
pub fn citation_proximity(g: &CitationGraph, p: &Partition) -> Result<ProximityMatrix> {
    let k = p.n_communities();
    let labels: Vec<usize> = (0..g.n_nodes())
        .map(|i| {
            p.community_of(g.id(i))
                .ok_or_else(|| Error::PartitionGap(g.id(i).to_string()))
        })
        .collect::<Result<_>>()?;
    let mut flows = vec![vec![0.0f64; k]; k];
    for (u, v) in g.edges() {
        flows[labels[u]][labels[v]] += 1.0;
    }
    let mut flagged = Vec::new();
    for (c, row) in flows.iter_mut().enumerate() {
        let total: f64 = row.iter().sum();
        if total > 0.0 {
            for x in row.iter_mut() {
                *x /= total;
            }
        } else {
            flagged.push(c);
        }
    }
    Ok(ProximityMatrix {
        kind: ProximityKind::Citation,
        communities: (0..k).collect(),
        values: flows,
        flagged,
    })
}

/// Distance matrix between references in membership space:
/// d(i, i') = sqrt(1/2 sum_j (p_ij - p_i'j)^2), in [0, 1]. Rows computed in
/// parallel.
pub fn semantic_distance_matrix(p: &MembershipMatrix) -> Vec<Vec<f64>> {
    let n = p.n_rows();
    par::map_indices(n, |i| {
        let mut row = vec![0.0; n];
        for (i2, slot) in row.iter_mut().enumerate() {
            if i2 != i {
                let d2: f64 = p.rows[i]
                    .iter()
                    .zip(&p.rows[i2])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                *slot = (0.5 * d2).sqrt();
            }
        }
        row
    })
}

/// Semantic proximity s_kk' = mean pairwise membership distance between the
/// abstract-bearing members of citation communities k and k'. The diagonal
/// averages over distinct unordered pairs (self-pairs excluded). Lower
/// values mean semantically closer. Communities without members in `p` (or
/// singletons, on the diagonal) are flagged and carry NaN.
pub fn semantic_proximity(
    distances: &[Vec<f64>],
    p: &MembershipMatrix,
    citation_partition: &Partition,
) -> ProximityMatrix {
    let k = citation_partition.n_communities();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (row, id) in p.ids.iter().enumerate() {
        if let Some(c) = citation_partition.community_of(id) {
            members[c].push(row);
        }
    }
    let mut values = vec![vec![f64::NAN; k]; k];
    let mut flagged: Vec<usize> = (0..k).filter(|&c| members[c].is_empty()).collect();
    for a in 0..k {
        for b in 0..k {
            if members[a].is_empty() || members[b].is_empty() {
                continue;
            }
            if a == b {
                let m = &members[a];
                if m.len() < 2 {
                    if !flagged.contains(&a) {
                        flagged.push(a);
                    }
                    continue;
                }
                let mut sum = 0.0;
                for (x, &i) in m.iter().enumerate() {
                    for &j in &m[x + 1..] {
                        sum += distances[i][j];
                    }
                }
                values[a][a] = sum / (m.len() * (m.len() - 1) / 2) as f64;
            } else {
                let mut sum = 0.0;
                for &i in &members[a] {
                    for &j in &members[b] {
                        sum += distances[i][j];
                    }
                }
                values[a][b] = sum / (members[a].len() * members[b].len()) as f64;
            }
        }
    }
    flagged.sort_unstable();
    ProximityMatrix {
        kind: ProximityKind::Semantic,
        communities: (0..k).collect(),
        values,
        flagged,
    }
}

/// Summary statistics of a correlation matrix.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CorrStats {
    pub min: f64,
    pub max: f64,
    pub mean_abs: f64,
}

/// Mean and standard deviation of a null statistic over shuffles.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NullStat {
    pub mean: f64,
    pub sd: f64,
}

/// Correlation between the crisp citation classification and the semantic
/// membership matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationResult {
    /// Pearson correlations, citation communities x semantic classes. `None`
    /// marks zero-variance columns.
    pub matrix: Vec<Vec<Option<f64>>>,
    pub stats: CorrStats,
    pub null_min: NullStat,
    pub null_max: NullStat,
    pub null_mean_abs: NullStat,
    pub n_undefined: usize,
    pub n_references: usize,
}

/// Correlation matrix between the one-hot citation classification P_C and
/// the membership matrix P, column against column, over references present
/// in both. The null shuffles P's rows across references `reps` times.
pub fn classification_correlation(
    p: &MembershipMatrix,
    citation_partition: &Partition,
    reps: usize,
    seed: u64,
) -> Result<CorrelationResult> {
    let mut rows: Vec<usize> = Vec::new();
    let mut cit_labels: Vec<usize> = Vec::new();
    for (row, id) in p.ids.iter().enumerate() {
        if let Some(c) = citation_partition.community_of(id) {
            rows.push(row);
            cit_labels.push(c);
        }
    }
    if rows.len() < 2 {
        return Err(Error::EmptyMembership);
    }
    let k = citation_partition.n_communities();
    let j = p.n_classes;
    let membership: Vec<&[f64]> = rows.iter().map(|&r| p.rows[r].as_slice()).collect();

    let matrix = correlation_matrix(&cit_labels, k, &membership, j);
    let stats = corr_stats(&matrix);
    let n_undefined = matrix
        .iter()
        .flatten()
        .filter(|c| c.is_none())
        .count();

    let null_samples: Vec<CorrStats> = par::map_indices(reps, |rep| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, rep as u64));
        let mut shuffled: Vec<&[f64]> = membership.clone();
        shuffled.shuffle(&mut rng);
        corr_stats(&correlation_matrix(&cit_labels, k, &shuffled, j))
    });
    Ok(CorrelationResult {
        matrix,
        stats,
        null_min: null_stat(&null_samples, |s| s.min),
        null_max: null_stat(&null_samples, |s| s.max),
        null_mean_abs: null_stat(&null_samples, |s| s.mean_abs),
        n_undefined,
        n_references: rows.len(),
    })
}

fn correlation_matrix(
    cit_labels: &[usize],
    k: usize,
    membership: &[&[f64]],
    j: usize,
) -> Vec<Vec<Option<f64>>> {
    let n = cit_labels.len();
    let mut matrix = vec![vec![None; j]; k];
    for (ck, row) in matrix.iter_mut().enumerate() {
        let x: Vec<f64> = cit_labels.iter().map(|&c| f64::from(u8::from(c == ck))).collect();
        for (cj, slot) in row.iter_mut().enumerate() {
            let y: Vec<f64> = membership.iter().map(|r| r[cj]).collect();
            *slot = pearson(&x, &y, n);
        }
    }
    matrix
}

fn pearson(x: &[f64], y: &[f64], n: usize) -> Option<f64> {
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

fn corr_stats(matrix: &[Vec<Option<f64>>]) -> CorrStats {
    let defined: Vec<f64> = matrix.iter().flatten().filter_map(|&c| c).collect();
    if defined.is_empty() {
        return CorrStats { min: f64::NAN, max: f64::NAN, mean_abs: f64::NAN };
    }
    CorrStats {
        min: defined.iter().copied().fold(f64::INFINITY, f64::min),
        max: defined.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_abs: defined.iter().map(|c| c.abs()).sum::<f64>() / defined.len() as f64,
    }
}

fn null_stat(samples: &[CorrStats], pick: impl Fn(&CorrStats) -> f64) -> NullStat {
    let values: Vec<f64> = samples.iter().map(&pick).filter(|v| v.is_finite()).collect();
    if values.len() < 2 {
        return NullStat { mean: f64::NAN, sd: f64::NAN };
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (values.len() as f64 - 1.0);
    NullStat { mean, sd: var.sqrt() }
}

/// Multi-class modularity and its row-shuffle null.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlapResult {
    pub q_ov: f64,
    pub null: NullStat,
    pub n_nodes: usize,
    pub n_edges: usize,
}

/// Multi-class (overlapping) modularity of the membership matrix on the
/// citation graph, restricted to the induced subgraph over references with
/// membership rows:
///
/// Q_ov = (1/E) sum_c [ sum_{(i,j) in E} p_ic p_jc
///                      - (sum_i k_i^out p_ic)(sum_j k_j^in p_jc)/E ]
///
/// With crisp one-hot rows this reduces to directed modularity. The null
/// shuffles membership rows across the induced nodes `reps` times.
pub fn overlapping_modularity(
    g: &CitationGraph,
    p: &MembershipMatrix,
    reps: usize,
    seed: u64,
) -> Result<OverlapResult> {
    let row_of: std::collections::HashMap<&str, usize> = p
        .ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let keep: Vec<usize> = (0..g.n_nodes())
        .filter(|&i| row_of.contains_key(g.id(i)))
        .collect();
    if keep.is_empty() {
        return Err(Error::EmptyInducedSubgraph);
    }
    let sub = g.induced_subgraph(&keep);
    if sub.n_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let rows: Vec<&[f64]> = (0..sub.n_nodes())
        .map(|i| p.rows[row_of[sub.id(i)]].as_slice())
        .collect();
    let q_ov = q_overlap(&sub, &rows, p.n_classes);

    let null_samples: Vec<f64> = par::map_indices(reps, |rep| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, rep as u64));
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut rng);
        q_overlap(&sub, &shuffled, p.n_classes)
    });
    let null = if null_samples.len() >= 2 {
        let mean = null_samples.iter().sum::<f64>() / null_samples.len() as f64;
        let var = null_samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (null_samples.len() as f64 - 1.0);
        NullStat { mean, sd: var.sqrt() }
    } else {
        NullStat { mean: f64::NAN, sd: f64::NAN }
    };
    Ok(OverlapResult {
        q_ov,
        null,
        n_nodes: sub.n_nodes(),
        n_edges: sub.n_edges(),
    })
}

fn q_overlap(g: &CitationGraph, rows: &[&[f64]], n_classes: usize) -> f64 {
    let e = g.n_edges() as f64;
    let mut edge_term = 0.0;
    for (u, v) in g.edges() {
        edge_term += rows[u]
            .iter()
            .zip(rows[v])
            .map(|(a, b)| a * b)
            .sum::<f64>();
    }
    let mut s_out = vec![0.0; n_classes];
    let mut s_in = vec![0.0; n_classes];
    for (i, row) in rows.iter().enumerate() {
        let k_out = g.out_degree(i) as f64;
        let k_in = g.in_degree(i) as f64;
        for (c, &pic) in row.iter().enumerate() {
            s_out[c] += k_out * pic;
            s_in[c] += k_in * pic;
        }
    }
    let expected: f64 = s_out.iter().zip(&s_in).map(|(o, i)| o * i).sum::<f64>() / e;
    (edge_term - expected) / e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::citnet::directed_modularity;
    use crate::louvain::Layer;
    use proptest::prelude::*;

    fn partition(ids: &[&str], labels: &[usize], layer: Layer) -> Partition {
        Partition::from_labels(layer, ids.iter().map(|s| s.to_string()).collect(), labels.to_vec())
    }

    fn doc(id: &str, terms: &[(&str, u32)]) -> (String, BTreeMap<String, u32>) {
        (id.to_string(), terms.iter().map(|&(t, c)| (t.to_string(), c)).collect())
    }

    #[test]
    fn membership_proportions() {
        // Terms a1, a2 in class 0; b in class 1 (class ids follow size order:
        // the 2-member community becomes class 0).
        let sem = partition(&["a1", "a2", "b"], &[0, 0, 1], Layer::Semantic);
        let docs = vec![doc("r1", &[("a1", 1), ("a2", 1), ("b", 1)])];
        let p = membership_matrix(&docs, &sem);
        assert_eq!(p.n_rows(), 1);
        let row = p.row(0);
        assert!((row[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((row[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn membership_one_hot_and_exclusions() {
        let sem = partition(&["a", "b"], &[0, 1], Layer::Semantic);
        let docs = vec![
            doc("r1", &[("a", 4)]),
            doc("r2", &[("zz", 1)]),
        ];
        let p = membership_matrix(&docs, &sem);
        assert_eq!(p.n_rows(), 1);
        assert_eq!(p.row(0), &[1.0, 0.0]);
        assert_eq!(p.excluded, 1);
    }

    #[test]
    fn interdisc_index_values() {
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.25, 0.25, 0.25, 0.25],
                vec![0.5, 0.3, 0.2, 0.0],
            ],
            4,
        );
        let idx = interdisciplinarity_index(&p);
        assert!(idx[0].abs() < 1e-12);
        assert!((idx[1] - 0.75).abs() < 1e-12);
        assert!((idx[2] - 0.62).abs() < 1e-12);
    }

    #[test]
    fn citation_proximity_counts_edges() {
        // communities {a, b} and {c}; edges a->c, b->c, a->b
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "c"), ("b", "c"), ("a", "b")],
        );
        let p = partition(&["a", "b", "c"], &[0, 0, 1], Layer::Citation);
        let prox = citation_proximity(&g, &p).unwrap();
        assert!((prox.values[0][1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((prox.values[0][0] - 1.0 / 3.0).abs() < 1e-12);
        // community 1 has no outgoing citations
        assert_eq!(prox.flagged, vec![1]);
        assert_eq!(prox.values[1], vec![0.0, 0.0]);
    }

    #[test]
    fn citation_proximity_single_community() {
        let g = CitationGraph::from_edges(vec!["a".into(), "b".into()], &[("a", "b")]);
        let p = partition(&["a", "b"], &[0, 0], Layer::Citation);
        let prox = citation_proximity(&g, &p).unwrap();
        assert!((prox.values[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn citation_proximity_no_cross_edges() {
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("c", "d")],
        );
        let p = partition(&["a", "b", "c", "d"], &[0, 0, 1, 1], Layer::Citation);
        let prox = citation_proximity(&g, &p).unwrap();
        assert!((prox.values[0][0] - 1.0).abs() < 1e-12);
        assert!((prox.values[1][1] - 1.0).abs() < 1e-12);
        assert_eq!(prox.values[0][1], 0.0);
    }

    #[test]
    fn distance_matrix_values() {
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                vec![1.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.5, 0.5],
            ],
            2,
        );
        let d = semantic_distance_matrix(&p);
        assert_eq!(d[0][1], 0.0);
        assert!((d[0][2] - 1.0).abs() < 1e-12);
        assert!((d[0][3] - 0.5).abs() < 1e-12);
        assert_eq!(d[2][0], d[0][2]);
        assert_eq!(d[1][1], 0.0);
    }

    #[test]
    fn semantic_proximity_identical_and_disjoint() {
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                vec![1.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, 1.0],
            ],
            2,
        );
        let d = semantic_distance_matrix(&p);
        let cit = partition(&["a", "b", "c", "d"], &[0, 0, 1, 1], Layer::Citation);
        let prox = semantic_proximity(&d, &p, &cit);
        // within-community rows identical -> diagonal 0
        assert_eq!(prox.values[0][0], 0.0);
        assert_eq!(prox.values[1][1], 0.0);
        // cross pairs are one-hot on different classes -> distance 1
        assert!((prox.values[0][1] - 1.0).abs() < 1e-12);
        assert!(prox.flagged.is_empty());
    }

    #[test]
    fn semantic_proximity_hand_computed_pairs() {
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![1.0, 0.0],
                vec![0.5, 0.5],
                vec![0.0, 1.0],
            ],
            2,
        );
        let d = semantic_distance_matrix(&p);
        let cit = partition(&["a", "b", "c"], &[0, 0, 1], Layer::Citation);
        let prox = semantic_proximity(&d, &p, &cit);
        // diagonal of community 0: single pair (a, b) -> 0.5
        assert!((prox.values[0][0] - 0.5).abs() < 1e-12);
        // cross: mean of d(a,c)=1 and d(b,c)=0.5
        assert!((prox.values[0][1] - 0.75).abs() < 1e-12);
        // community 1 is a singleton: diagonal flagged
        assert!(prox.values[1][1].is_nan());
        assert_eq!(prox.flagged, vec![1]);
        // symmetry of the defined off-diagonal
        assert!((prox.values[1][0] - prox.values[0][1]).abs() < 1e-12);
    }

    #[test]
    fn correlation_crisp_alignment() {
        // P identical to the one-hot citation classification.
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                vec![1.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, 1.0],
            ],
            2,
        );
        let cit = partition(&["a", "b", "c", "d"], &[0, 0, 1, 1], Layer::Citation);
        let result = classification_correlation(&p, &cit, 10, 5).unwrap();
        assert!((result.matrix[0][0].unwrap() - 1.0).abs() < 1e-12);
        assert!((result.matrix[0][1].unwrap() + 1.0).abs() < 1e-12);
        assert!((result.matrix[1][1].unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(result.n_references, 4);
    }

    #[test]
    fn correlation_zero_variance_column_undefined() {
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into()],
            vec![vec![0.5, 0.5], vec![0.5, 0.5]],
            2,
        );
        let cit = partition(&["a", "b"], &[0, 1], Layer::Citation);
        let result = classification_correlation(&p, &cit, 5, 5).unwrap();
        assert!(result.matrix.iter().flatten().all(Option::is_none));
        assert_eq!(result.n_undefined, 4);
    }

    #[test]
    fn correlation_null_is_self_consistent() {
        // P shuffled against P_C: observed mean |corr| should sit within
        // 3 sd of its own shuffle null.
        let n = 60usize;
        let ids: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for _ in 0..n {
            let a: f64 = rand::Rng::random_range(&mut rng, 0.0..1.0);
            rows.push(vec![a, 1.0 - a]);
        }
        rows.shuffle(&mut rng);
        let p = MembershipMatrix::from_rows(ids.clone(), rows, 2);
        let labels: Vec<usize> = (0..n).map(|i| i % 3).collect();
        let cit = Partition::from_labels(Layer::Citation, ids, labels);
        let result = classification_correlation(&p, &cit, 100, 23).unwrap();
        let z = (result.stats.mean_abs - result.null_mean_abs.mean).abs()
            / result.null_mean_abs.sd;
        assert!(z < 3.0, "z = {z}");
    }

    #[test]
    fn overlap_reduces_to_directed_modularity_for_crisp_rows() {
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "a")],
        );
        let labels = vec![0usize, 0, 1, 1];
        let p_rows: Vec<Vec<f64>> = labels
            .iter()
            .map(|&l| {
                let mut row = vec![0.0; 2];
                row[l] = 1.0;
                row
            })
            .collect();
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            p_rows,
            2,
        );
        let crisp = partition(&["a", "b", "c", "d"], &labels, Layer::Citation);
        let q_ov = overlapping_modularity(&g, &p, 2, 3).unwrap().q_ov;
        let q_d = directed_modularity(&g, &crisp).unwrap();
        assert!((q_ov - q_d).abs() < 1e-12);
    }

    #[test]
    fn overlap_uniform_rows_zero() {
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        );
        let j = 3;
        let rows = vec![vec![1.0 / j as f64; j]; 3];
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into()],
            rows,
            j,
        );
        let q_ov = overlapping_modularity(&g, &p, 2, 3).unwrap().q_ov;
        assert!(q_ov.abs() < 1e-12, "q_ov = {q_ov}");
    }

    #[test]
    fn overlap_restricts_to_membership_rows() {
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into(), "zz".into()],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("zz", "a")],
        );
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            2,
        );
        let result = overlapping_modularity(&g, &p, 2, 3).unwrap();
        assert_eq!(result.n_nodes, 3);
        assert_eq!(result.n_edges, 3);
    }

    #[test]
    fn overlap_empty_induced_graph_errors() {
        let g = CitationGraph::from_edges(vec!["x".into(), "y".into()], &[("x", "y")]);
        let p = MembershipMatrix::from_rows(vec!["a".into()], vec![vec![1.0]], 1);
        assert!(matches!(
            overlapping_modularity(&g, &p, 2, 3),
            Err(Error::EmptyInducedSubgraph)
        ));
    }

    #[test]
    fn bootstrap_determinism() {
        let g = CitationGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
        );
        let p = MembershipMatrix::from_rows(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                vec![0.9, 0.1],
                vec![0.8, 0.2],
                vec![0.1, 0.9],
                vec![0.2, 0.8],
            ],
            2,
        );
        let r1 = overlapping_modularity(&g, &p, 25, 9).unwrap();
        let r2 = overlapping_modularity(&g, &p, 25, 9).unwrap();
        assert_eq!(r1.q_ov, r2.q_ov);
        assert_eq!(r1.null.mean, r2.null.mean);
        assert_eq!(r1.null.sd, r2.null.sd);
    }

    fn random_membership(n: usize, j: usize, seed: u64) -> MembershipMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ids: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let raw: Vec<f64> =
                    (0..j).map(|_| rand::Rng::random_range(&mut rng, 0.01..1.0)).collect();
                let total: f64 = raw.iter().sum();
                raw.into_iter().map(|x| x / total).collect()
            })
            .collect();
        MembershipMatrix::from_rows(ids, rows, j)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// I_i is permutation invariant, bounded by 1 - 1/J, zero iff one-hot.
        #[test]
        fn index_invariants(seed in 0u64..5000, n in 2usize..12, j in 2usize..6) {
            let p = random_membership(n, j, seed);
            let idx = interdisciplinarity_index(&p);
            for (row, &i) in p.rows().iter().zip(&idx) {
                prop_assert!(i >= -1e-12 && i <= 1.0 - 1.0 / j as f64 + 1e-12);
                let mut permuted = row.clone();
                permuted.reverse();
                let pi = 1.0 - permuted.iter().map(|x| x * x).sum::<f64>();
                prop_assert!((pi - i).abs() < 1e-12);
            }
        }

        /// D is a metric: symmetric, zero diagonal, triangle inequality.
        #[test]
        fn distance_metric_axioms(seed in 0u64..5000, n in 2usize..8, j in 2usize..5) {
            let p = random_membership(n, j, seed);
            let d = semantic_distance_matrix(&p);
            for i in 0..n {
                prop_assert_eq!(d[i][i], 0.0);
                for k in 0..n {
                    prop_assert!((d[i][k] - d[k][i]).abs() < 1e-12);
                    prop_assert!(d[i][k] >= 0.0 && d[i][k] <= 1.0 + 1e-12);
                    for l in 0..n {
                        prop_assert!(d[i][l] <= d[i][k] + d[k][l] + 1e-9);
                    }
                }
            }
        }
    }
}
