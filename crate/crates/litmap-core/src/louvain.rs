//! Louvain community detection on weighted undirected graphs, plus the
//! partition type shared by the citation and semantic layers.
//!
//! Directed graphs are symmetrized (weights summed) before optimization.
//! Everything is deterministic for a fixed seed: node visiting order comes
//! from a seeded shuffle and modularity-gain ties break toward the lowest
//! candidate community id.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Which network layer a partition describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Citation,
    Semantic,
}

/// Hard community assignment over named nodes. Community ids are contiguous
/// from 0 and ordered by decreasing size (ties by first member).
#[derive(Debug, Clone)]
pub struct Partition {
    pub layer: Layer,
    ids: Vec<String>,
    labels: Vec<usize>,
    index: HashMap<String, usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// Build from raw labels aligned with `ids`; labels are compacted to
    /// contiguous ids ordered by decreasing community size.
    pub fn from_labels(layer: Layer, ids: Vec<String>, raw: Vec<usize>) -> Partition {
        assert_eq!(ids.len(), raw.len(), "labels must align with ids");
        let mut first_member: HashMap<usize, usize> = HashMap::new();
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for (i, &label) in raw.iter().enumerate() {
            first_member.entry(label).or_insert(i);
            *counts.entry(label).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = counts.keys().copied().collect();
        order.sort_by(|a, b| {
            counts[b]
                .cmp(&counts[a])
                .then_with(|| first_member[a].cmp(&first_member[b]))
        });
        let relabel: HashMap<usize, usize> =
            order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let labels: Vec<usize> = raw.iter().map(|l| relabel[l]).collect();
        let mut sizes = vec![0usize; order.len()];
        for &l in &labels {
            sizes[l] += 1;
        }
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        Partition {
            layer,
            ids,
            labels,
            index,
            sizes,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn n_communities(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn community_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).map(|&i| self.labels[i])
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Members of community `c`, in node order.
    pub fn members(&self, c: usize) -> impl Iterator<Item = &str> {
        self.ids
            .iter()
            .zip(&self.labels)
            .filter_map(move |(id, &l)| (l == c).then_some(id.as_str()))
    }
}

/// Weighted undirected graph in the form Louvain and modularity work on.
/// Self-loop entries hold the full diagonal value A(i,i) (twice the loop
/// weight), so degree(i) = sum of the row including the diagonal and
/// `two_m` = sum over the whole adjacency matrix.
#[derive(Debug, Clone)]
pub struct UndirectedView {
    n: usize,
    adj: Vec<Vec<(usize, f64)>>,
    self_weight: Vec<f64>,
    degree: Vec<f64>,
    two_m: f64,
}

impl UndirectedView {
    /// Build from undirected edges (u < v or u > v, each edge once);
    /// parallel entries are weight-summed. Self entries (u == v) contribute
    /// 2w to the diagonal.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> UndirectedView {
        let mut maps: Vec<HashMap<usize, f64>> = vec![HashMap::new(); n];
        let mut self_weight = vec![0.0; n];
        for &(u, v, w) in edges {
            if u == v {
                self_weight[u] += 2.0 * w;
            } else {
                *maps[u].entry(v).or_insert(0.0) += w;
                *maps[v].entry(u).or_insert(0.0) += w;
            }
        }
        let mut adj = Vec::with_capacity(n);
        let mut degree = vec![0.0; n];
        let mut two_m = 0.0;
        for (i, map) in maps.into_iter().enumerate() {
            let mut row: Vec<(usize, f64)> = map.into_iter().collect();
            row.sort_unstable_by_key(|&(j, _)| j);
            let row_sum: f64 = row.iter().map(|&(_, w)| w).sum();
            degree[i] = row_sum + self_weight[i];
            two_m += degree[i];
            adj.push(row);
        }
        UndirectedView {
            n,
            adj,
            self_weight,
            degree,
            two_m,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn two_m(&self) -> f64 {
        self.two_m
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degree[i]
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }
}

/// Weighted Newman modularity of `labels` on `view`:
/// Q = sum_c [ S_in(c)/2m - gamma (S_tot(c)/2m)^2 ] with S_in the full
/// intra-community adjacency mass (diagonal included).
pub fn modularity_undirected(view: &UndirectedView, labels: &[usize], resolution: f64) -> f64 {
    assert_eq!(labels.len(), view.n, "labels must cover the graph");
    if view.two_m <= 0.0 {
        return 0.0;
    }
    let n_comms = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut s_in = vec![0.0; n_comms];
    let mut s_tot = vec![0.0; n_comms];
    for i in 0..view.n {
        let c = labels[i];
        s_tot[c] += view.degree[i];
        s_in[c] += view.self_weight[i];
        for &(j, w) in &view.adj[i] {
            if labels[j] == c {
                s_in[c] += w;
            }
        }
    }
    let two_m = view.two_m;
    let mut q = 0.0;
    for c in 0..n_comms {
        q += s_in[c] / two_m - resolution * (s_tot[c] / two_m) * (s_tot[c] / two_m);
    }
    q
}

const MIN_GAIN: f64 = 1e-9;
const TIE_EPS: f64 = 1e-12;

/// Louvain on a weighted undirected view. Returns raw labels aligned with
/// node indices. Hierarchical passes continue while a level improves
/// modularity by more than 1e-9.
pub fn louvain_labels(view: &UndirectedView, seed: u64, resolution: f64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: Vec<usize> = (0..view.n).collect();
    let mut level = Level::from_view(view);
    let mut current_q = modularity_core(&level, &membership_identity(level.n), resolution);
    loop {
        let mut labels: Vec<usize> = (0..level.n).collect();
        let moved = local_moves(&level, &mut labels, resolution, &mut rng);
        if !moved {
            break;
        }
        let compact = compact_labels(&labels);
        let new_q = modularity_core(&level, &compact, resolution);
        // Fold this level's assignment into the full-graph membership.
        for m in membership.iter_mut() {
            *m = compact[*m];
        }
        if new_q - current_q <= MIN_GAIN {
            break;
        }
        current_q = new_q;
        level = level.aggregate(&compact);
    }
    membership
}

struct Level {
    n: usize,
    adj: Vec<Vec<(usize, f64)>>,
    self_weight: Vec<f64>,
    degree: Vec<f64>,
    two_m: f64,
}

fn membership_identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl Level {
    fn from_view(view: &UndirectedView) -> Level {
        Level {
            n: view.n,
            adj: view.adj.clone(),
            self_weight: view.self_weight.clone(),
            degree: view.degree.clone(),
            two_m: view.two_m,
        }
    }

    fn aggregate(&self, labels: &[usize]) -> Level {
        let n_comms = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut maps: Vec<HashMap<usize, f64>> = vec![HashMap::new(); n_comms];
        let mut self_weight = vec![0.0; n_comms];
        for i in 0..self.n {
            let ci = labels[i];
            self_weight[ci] += self.self_weight[i];
            for &(j, w) in &self.adj[i] {
                let cj = labels[j];
                if ci == cj {
                    // each undirected edge visited from both ends
                    self_weight[ci] += w;
                } else {
                    *maps[ci].entry(cj).or_insert(0.0) += w;
                }
            }
        }
        let mut adj = Vec::with_capacity(n_comms);
        let mut degree = vec![0.0; n_comms];
        for (c, map) in maps.into_iter().enumerate() {
            let mut row: Vec<(usize, f64)> = map.into_iter().collect();
            row.sort_unstable_by_key(|&(j, _)| j);
            degree[c] = row.iter().map(|&(_, w)| w).sum::<f64>() + self_weight[c];
            adj.push(row);
        }
        Level {
            n: n_comms,
            adj,
            self_weight,
            degree,
            two_m: self.two_m,
        }
    }
}

fn modularity_core(level: &Level, labels: &[usize], resolution: f64) -> f64 {
    if level.two_m <= 0.0 {
        return 0.0;
    }
    let n_comms = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut s_in = vec![0.0; n_comms];
    let mut s_tot = vec![0.0; n_comms];
    for i in 0..level.n {
        let c = labels[i];
        s_tot[c] += level.degree[i];
        s_in[c] += level.self_weight[i];
        for &(j, w) in &level.adj[i] {
            if labels[j] == c {
                s_in[c] += w;
            }
        }
    }
    (0..n_comms)
        .map(|c| s_in[c] / level.two_m - resolution * (s_tot[c] / level.two_m).powi(2))
        .sum()
}

fn compact_labels(labels: &[usize]) -> Vec<usize> {
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    let mut next = 0usize;
    labels
        .iter()
        .map(|&l| {
            *relabel.entry(l).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

/// One level of greedy node moves. Returns whether any node moved.
fn local_moves(level: &Level, labels: &mut [usize], resolution: f64, rng: &mut ChaCha8Rng) -> bool {
    let two_m = level.two_m;
    if two_m <= 0.0 {
        return false;
    }
    let mut comm_degree: Vec<f64> = vec![0.0; level.n];
    for i in 0..level.n {
        comm_degree[labels[i]] += level.degree[i];
    }
    let mut order: Vec<usize> = (0..level.n).collect();
    order.shuffle(rng);

    let mut any_moved = false;
    loop {
        let mut moves = 0usize;
        for &node in &order {
            let current = labels[node];
            let k_i = level.degree[node];
            comm_degree[current] -= k_i;

            // Weights from `node` to each neighboring community.
            let mut weights: HashMap<usize, f64> = HashMap::new();
            for &(j, w) in &level.adj[node] {
                *weights.entry(labels[j]).or_insert(0.0) += w;
            }
            let w_current = weights.get(&current).copied().unwrap_or(0.0);
            let removal_cost =
                -w_current / two_m + resolution * comm_degree[current] * k_i / (two_m * two_m);

            let mut best_comm = current;
            let mut best_gain = 0.0;
            // Ascending candidate order + strict improvement threshold means
            // equal-gain ties resolve to the lowest community id.
            let mut candidates: Vec<usize> = weights.keys().copied().collect();
            candidates.sort_unstable();
            for cand in candidates {
                if cand == current {
                    continue;
                }
                let w_cand = weights[&cand];
                let gain = removal_cost + w_cand / two_m
                    - resolution * comm_degree[cand] * k_i / (two_m * two_m);
                if gain > best_gain + TIE_EPS {
                    best_gain = gain;
                    best_comm = cand;
                }
            }

            comm_degree[best_comm] += k_i;
            if best_comm != current {
                labels[node] = best_comm;
                moves += 1;
                any_moved = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    any_moved
}
