//! Weighted term co-occurrence network: construction from the co-occurrence
//! matrix, hub/weight filtering, clustering, and the filter-parameter
//! sensitivity sweep with Pareto-front compromise selection.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::keywords::{CooccurrenceMatrix, TermVocabulary};
use crate::louvain::{louvain_labels, modularity_undirected, Layer, Partition, UndirectedView};
use crate::par;
use crate::seed::derive_seed;

/// Undirected graph over vocabulary terms, weighted by document-level
/// co-occurrence counts. No self-loops.
#[derive(Debug, Clone)]
pub struct SemanticGraph {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeMap<usize, u32>>,
    n_edges: usize,
}

impl SemanticGraph {
    fn from_adj(terms: Vec<String>, adj: Vec<BTreeMap<usize, u32>>) -> SemanticGraph {
        let n_edges = adj.iter().map(BTreeMap::len).sum::<usize>() / 2;
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        SemanticGraph {
            terms,
            index,
            adj,
            n_edges,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.terms.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn term(&self, i: usize) -> &str {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Sum of incident edge weights.
    pub fn strength(&self, i: usize) -> u64 {
        self.adj[i].values().map(|&w| u64::from(w)).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.adj[i].iter().map(|(&j, &w)| (j, w))
    }

    /// Undirected weighted edges, each once (u < v), deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::with_capacity(self.n_edges);
        for (u, row) in self.adj.iter().enumerate() {
            for (&v, &w) in row {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn undirected_view(&self) -> UndirectedView {
        let edges: Vec<(usize, usize, f64)> = self
            .edges()
            .into_iter()
            .map(|(u, v, w)| (u, v, f64::from(w)))
            .collect();
        UndirectedView::from_edges(self.n_nodes(), &edges)
    }

    /// Undirected density 2E/(V(V-1)); 0 below two nodes.
    pub fn density(&self) -> f64 {
        let v = self.n_nodes() as f64;
        if self.n_nodes() < 2 {
            return 0.0;
        }
        2.0 * self.n_edges as f64 / (v * (v - 1.0))
    }

    /// Connected components (weak, the graph is undirected), sorted by
    /// decreasing size.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_nodes();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for (v, _) in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
        components
    }
}

/// Build the semantic graph over the selected vocabulary: one edge per
/// off-diagonal nonzero co-occurrence pair within the vocabulary.
pub fn build_semantic_graph(
    matrix: &CooccurrenceMatrix,
    vocab: &TermVocabulary,
) -> Result<SemanticGraph> {
    if vocab.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let terms: Vec<String> = vocab.terms().map(str::to_string).collect();
    let matrix_index: Vec<Option<u32>> = terms.iter().map(|t| matrix.index_of(t)).collect();
    let node_of_matrix: HashMap<u32, usize> = matrix_index
        .iter()
        .enumerate()
        .filter_map(|(node, &mi)| mi.map(|mi| (mi, node)))
        .collect();
    let mut adj: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); terms.len()];
    for (u, &mi) in matrix_index.iter().enumerate() {
        let Some(mi) = mi else { continue };
        for (mj, w) in matrix.partners(mi) {
            if let Some(&v) = node_of_matrix.get(&mj) {
                if u != v {
                    adj[u].insert(v, w);
                }
            }
        }
    }
    Ok(SemanticGraph::from_adj(terms, adj))
}

/// Filter parameters: minimal edge weight and maximal node degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterParams {
    pub theta_w: u32,
    pub k_max: usize,
}

/// Which filter applies first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterOrder {
    /// Drop hubs above k_max (degree on the raw graph), then light edges,
    /// then isolated nodes.
    #[default]
    HubsFirst,
    /// Drop light edges first; hub degrees are then measured on the
    /// edge-filtered graph.
    EdgesFirst,
}

/// Apply the hub / edge-weight / isolate filters in the given order.
pub fn filter_graph(g: &SemanticGraph, params: FilterParams, order: FilterOrder) -> SemanticGraph {
    match order {
        FilterOrder::HubsFirst => {
            let keep: Vec<bool> = (0..g.n_nodes()).map(|i| g.degree(i) <= params.k_max).collect();
            rebuild(g, &keep, params.theta_w)
        }
        FilterOrder::EdgesFirst => {
            let all = vec![true; g.n_nodes()];
            let edge_filtered = rebuild_keep_isolates(g, &all, params.theta_w);
            let keep: Vec<bool> = (0..edge_filtered.n_nodes())
                .map(|i| edge_filtered.degree(i) <= params.k_max)
                .collect();
            rebuild(&edge_filtered, &keep, 0)
        }
    }
}

fn rebuild(g: &SemanticGraph, keep: &[bool], theta_w: u32) -> SemanticGraph {
    let filtered = rebuild_keep_isolates(g, keep, theta_w);
    let non_isolated: Vec<bool> = (0..filtered.n_nodes()).map(|i| filtered.degree(i) > 0).collect();
    rebuild_keep_isolates(&filtered, &non_isolated, 0)
}

fn rebuild_keep_isolates(g: &SemanticGraph, keep: &[bool], theta_w: u32) -> SemanticGraph {
    let kept: Vec<usize> = (0..g.n_nodes()).filter(|&i| keep[i]).collect();
    let remap: HashMap<usize, usize> = kept.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let terms: Vec<String> = kept.iter().map(|&i| g.terms[i].clone()).collect();
    let mut adj: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); kept.len()];
    for &u in &kept {
        for (v, w) in g.neighbors(u) {
            if w >= theta_w {
                if let Some(&nv) = remap.get(&v) {
                    adj[remap[&u]].insert(nv, w);
                }
            }
        }
    }
    SemanticGraph::from_adj(terms, adj)
}

/// Weighted Louvain over the semantic graph at the given resolution;
/// returns the partition and its standard (resolution 1) modularity.
pub fn cluster_semantic(g: &SemanticGraph, seed: u64, resolution: f64) -> Result<(Partition, f64)> {
    if g.n_nodes() == 0 {
        return Err(Error::EmptyGraph);
    }
    let view = g.undirected_view();
    let labels = louvain_labels(&view, seed, resolution);
    let q = modularity_undirected(&view, &labels, 1.0);
    let partition = Partition::from_labels(Layer::Semantic, g.terms().to_vec(), labels);
    Ok((partition, q))
}

/// The six sweep objectives, in column order.
pub const OBJECTIVE_NAMES: [&str; 6] = [
    "modularity",
    "n_communities",
    "n_components",
    "n_vertices",
    "density",
    "balance",
];

/// One grid point of the sensitivity sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub params: FilterParams,
    /// Raw objective values; `None` when the filtered graph came up empty.
    pub objectives: Option<[f64; 6]>,
    /// Min-max normalized objectives over the grid's defined rows.
    pub normalized: Option<[f64; 6]>,
}

/// Full sweep table, rows in grid order (theta outer, k_max inner).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Indices of rows with defined objectives.
    pub fn defined(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].objectives.is_some()).collect()
    }
}

/// Evaluate the filter grid: for every (theta_w, k_max) pair, filter,
/// cluster, and record the six objectives; normalize each objective to
/// [0, 1] over the grid (a constant objective normalizes to 1). Grid points
/// run in parallel with seeds derived per point.
pub fn sensitivity_sweep(
    g: &SemanticGraph,
    theta_grid: &[u32],
    kmax_grid: &[usize],
    order: FilterOrder,
    resolution: f64,
    seed: u64,
) -> SweepResult {
    let grid: Vec<FilterParams> = theta_grid
        .iter()
        .flat_map(|&theta_w| kmax_grid.iter().map(move |&k_max| FilterParams { theta_w, k_max }))
        .collect();
    let mut rows: Vec<SweepRow> = par::map_indices(grid.len(), |i| {
        let params = grid[i];
        let filtered = filter_graph(g, params, order);
        let objectives = if filtered.n_nodes() == 0 {
            None
        } else {
            let (partition, q) =
                cluster_semantic(&filtered, derive_seed(seed, i as u64), resolution)
                    .expect("non-empty filtered graph clusters");
            let sizes = partition.sizes();
            let total: f64 = sizes.iter().map(|&s| s as f64).sum();
            let herfindahl: f64 = sizes
                .iter()
                .map(|&s| {
                    let share = s as f64 / total;
                    share * share
                })
                .sum();
            Some([
                q,
                partition.n_communities() as f64,
                filtered.components().len() as f64,
                filtered.n_nodes() as f64,
                filtered.density(),
                1.0 - herfindahl,
            ])
        };
        SweepRow {
            params,
            objectives,
            normalized: None,
        }
    });

    for obj in 0..6 {
        let values: Vec<f64> = rows
            .iter()
            .filter_map(|r| r.objectives.map(|o| o[obj]))
            .collect();
        if values.is_empty() {
            continue;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for row in &mut rows {
            if let Some(o) = row.objectives {
                let norm = row.normalized.get_or_insert([0.0; 6]);
                norm[obj] = if (max - min).abs() < 1e-15 {
                    1.0
                } else {
                    (o[obj] - min) / (max - min)
                };
            }
        }
    }
    SweepResult { rows }
}

/// Indices of the non-dominated points under weak dominance maximization:
/// a point is removed only if another is >= in every objective and > in at
/// least one. Duplicated points all stay on the front.
pub fn pareto_front_indices(points: &[Vec<f64>]) -> Vec<usize> {
    let dominates = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
    };
    (0..points.len())
        .filter(|&i| !points.iter().any(|other| dominates(other, &points[i])))
        .collect()
}

/// Pareto front of a sweep over the given objective columns (default
/// modularity and vertex count); returns row indices.
pub fn sweep_pareto_front(sweep: &SweepResult, objective_cols: &[usize]) -> Vec<usize> {
    let defined = sweep.defined();
    let points: Vec<Vec<f64>> = defined
        .iter()
        .map(|&i| {
            let o = sweep.rows[i].objectives.expect("defined row");
            objective_cols.iter().map(|&c| o[c]).collect()
        })
        .collect();
    pareto_front_indices(&points)
        .into_iter()
        .map(|k| defined[k])
        .collect()
}

/// Compromise point: the front member minimizing Euclidean distance to the
/// ideal point (1, ..., 1) in normalized objective space; ties resolve to
/// the larger filtered vertex count.
pub fn select_compromise(
    sweep: &SweepResult,
    front: &[usize],
    objective_cols: &[usize],
) -> Option<FilterParams> {
    let mut best: Option<(f64, f64, FilterParams)> = None;
    for &i in front {
        let row = &sweep.rows[i];
        let (Some(norm), Some(obj)) = (row.normalized, row.objectives) else {
            continue;
        };
        let dist2: f64 = objective_cols
            .iter()
            .map(|&c| (1.0 - norm[c]) * (1.0 - norm[c]))
            .sum();
        let n_vertices = obj[3];
        let better = match best {
            None => true,
            Some((best_dist, best_v, _)) => {
                dist2 < best_dist - 1e-12
                    || ((dist2 - best_dist).abs() <= 1e-12 && n_vertices > best_v)
            }
        };
        if better {
            best = Some((dist2, n_vertices, row.params));
        }
    }
    best.map(|(_, _, p)| p)
}
