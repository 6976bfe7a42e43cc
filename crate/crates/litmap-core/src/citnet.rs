//! Directed citation graph: construction from a corpus, weak components,
//! degree filtering, community detection, directed modularity and the
//! degree-preserving rewiring null model.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::louvain::{louvain_labels, modularity_undirected, Layer, Partition, UndirectedView};
use crate::par;
use crate::seed::derive_seed;

/// Simple directed graph over reference ids (no self-loops, no parallel
/// edges).
#[derive(Debug, Clone)]
pub struct CitationGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    n_edges: usize,
    /// Self-citations dropped while building.
    pub self_citations_dropped: usize,
}

impl CitationGraph {
    /// Build from node ids and directed (citing, cited) index pairs.
    /// Self-loops are dropped and counted; parallel edges collapse.
    pub fn from_index_edges(ids: Vec<String>, edges: &[(usize, usize)]) -> CitationGraph {
        let n = ids.len();
        let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(edges.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut dropped = 0usize;
        for &(u, v) in edges {
            if u == v {
                dropped += 1;
                continue;
            }
            if seen.insert((u, v)) {
                out_adj[u].push(v);
                in_adj[v].push(u);
            }
        }
        for row in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            row.sort_unstable();
        }
        let n_edges = seen.len();
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        CitationGraph {
            ids,
            index,
            out_adj,
            in_adj,
            n_edges,
            self_citations_dropped: dropped,
        }
    }

    /// Build from named edges; node set is `ids`.
    pub fn from_edges<S: AsRef<str>>(ids: Vec<String>, edges: &[(S, S)]) -> CitationGraph {
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let index_edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|(u, v)| (index[u.as_ref()], index[v.as_ref()]))
            .collect();
        CitationGraph::from_index_edges(ids, &index_edges)
    }

    pub fn n_nodes(&self) -> usize {
        self.ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out_adj[i].len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.in_adj[i].len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.out_degree(i) + self.in_degree(i)
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out_adj[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        &self.in_adj[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Directed edges as index pairs, in deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_edges);
        for (u, row) in self.out_adj.iter().enumerate() {
            for &v in row {
                out.push((u, v));
            }
        }
        out
    }

    /// Symmetrized weight-summed undirected view (A_uv + A_vu).
    pub fn undirected_view(&self) -> UndirectedView {
        let edges: Vec<(usize, usize, f64)> =
            self.edges().into_iter().map(|(u, v)| (u, v, 1.0)).collect();
        UndirectedView::from_edges(self.n_nodes(), &edges)
    }

    /// Induced subgraph on `keep` (indices into this graph). Node order of
    /// the result follows `keep`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> CitationGraph {
        let remap: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let ids: Vec<String> = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let mut edges = Vec::new();
        for &u in keep {
            for &v in &self.out_adj[u] {
                if let (Some(&nu), Some(&nv)) = (remap.get(&u), remap.get(&v)) {
                    edges.push((nu, nv));
                }
            }
        }
        CitationGraph::from_index_edges(ids, &edges)
    }
}

/// Build the citation graph of a corpus: every reference is a node, resolved
/// citation links are edges.
pub fn build_graph(corpus: &Corpus) -> Result<CitationGraph> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let ids: Vec<String> = corpus.iter().map(|r| r.id.clone()).collect();
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let edges: Vec<(usize, usize)> = corpus
        .citation_pairs()
        .into_iter()
        .map(|(u, v)| (index[u.as_str()], index[v.as_str()]))
        .collect();
    Ok(CitationGraph::from_index_edges(ids, &edges))
}

/// Weakly connected components, sorted by decreasing size (ties by smallest
/// member index). Each component lists node indices in ascending order.
pub fn weak_components(g: &CitationGraph) -> Vec<Vec<usize>> {
    let n = g.n_nodes();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    for c in &mut components {
        c.sort_unstable();
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    components
}

/// One-pass removal of nodes with total degree below `k`; returns the
/// induced subgraph (not iterated to a k-core).
pub fn filter_min_degree(g: &CitationGraph, k: usize) -> CitationGraph {
    let keep: Vec<usize> = (0..g.n_nodes()).filter(|&i| g.degree(i) >= k).collect();
    g.induced_subgraph(&keep)
}

/// Iterated variant: re-applies the degree filter until stable (k-core).
pub fn iterate_core(g: &CitationGraph, k: usize) -> CitationGraph {
    let mut current = filter_min_degree(g, k);
    loop {
        let next = filter_min_degree(&current, k);
        if next.n_nodes() == current.n_nodes() {
            return current;
        }
        current = next;
    }
}

/// Louvain on the symmetrized undirected view of a directed graph.
pub fn louvain_citation(g: &CitationGraph, seed: u64, resolution: f64) -> Result<Partition> {
    if g.n_nodes() == 0 {
        return Err(Error::EmptyGraph);
    }
    let view = g.undirected_view();
    let labels = louvain_labels(&view, seed, resolution);
    Ok(Partition::from_labels(Layer::Citation, g.ids().to_vec(), labels))
}

/// Undirected modularity of a partition on the symmetrized view.
pub fn modularity_citation(g: &CitationGraph, p: &Partition) -> Result<f64> {
    let labels = partition_labels(g, p)?;
    Ok(modularity_undirected(&g.undirected_view(), &labels, 1.0))
}

/// Directed modularity
/// Q_d = (1/E) sum_ij [A_ij - k_i^out k_j^in / E] delta(c_i, c_j).
pub fn directed_modularity(g: &CitationGraph, p: &Partition) -> Result<f64> {
    let e = g.n_edges() as f64;
    if g.n_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let labels = partition_labels(g, p)?;
    let n_comms = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut intra = 0usize;
    for (u, v) in g.edges() {
        if labels[u] == labels[v] {
            intra += 1;
        }
    }
    let mut k_out = vec![0.0; n_comms];
    let mut k_in = vec![0.0; n_comms];
    for i in 0..g.n_nodes() {
        k_out[labels[i]] += g.out_degree(i) as f64;
        k_in[labels[i]] += g.in_degree(i) as f64;
    }
    let expected: f64 = (0..n_comms).map(|c| k_out[c] * k_in[c]).sum::<f64>() / (e * e);
    Ok(intra as f64 / e - expected)
}

fn partition_labels(g: &CitationGraph, p: &Partition) -> Result<Vec<usize>> {
    (0..g.n_nodes())
        .map(|i| {
            p.community_of(g.id(i))
                .ok_or_else(|| Error::PartitionGap(g.id(i).to_string()))
        })
        .collect()
}

/// Outcome of a rewiring pass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RewireStats {
    pub attempted: usize,
    pub accepted: usize,
    /// Set when fewer than 1% of attempted swaps were accepted.
    pub low_acceptance: bool,
}

/// Degree-preserving randomization by directed double-edge swaps:
/// (a->b, c->d) becomes (a->d, c->b) when that creates no self-loop or
/// parallel edge. In- and out-degree sequences are preserved exactly.
pub fn rewire_null(
    g: &CitationGraph,
    swaps_per_edge: usize,
    seed: u64,
) -> Result<(CitationGraph, RewireStats)> {
    let e = g.n_edges();
    if e < 2 {
        return Err(Error::TooFewEdges { needed: 2, found: e });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.edges();
    let mut edge_set: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let attempts = swaps_per_edge * e;
    let mut accepted = 0usize;
    for _ in 0..attempts {
        let i = rng.random_range(0..e);
        let j = rng.random_range(0..e);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        if a == d || c == b {
            continue;
        }
        if edge_set.contains(&(a, d)) || edge_set.contains(&(c, b)) {
            continue;
        }
        edge_set.remove(&(a, b));
        edge_set.remove(&(c, d));
        edge_set.insert((a, d));
        edge_set.insert((c, b));
        edges[i] = (a, d);
        edges[j] = (c, b);
        accepted += 1;
    }
    let stats = RewireStats {
        attempted: attempts,
        accepted,
        low_acceptance: accepted * 100 < attempts,
    };
    Ok((CitationGraph::from_index_edges(g.ids().to_vec(), &edges), stats))
}

/// Null-model statistics for a fixed partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub mean: f64,
    pub sd: f64,
    pub n_reps: usize,
    /// Any repetition reported a low swap acceptance rate.
    pub low_acceptance: bool,
}

/// Evaluate `directed_modularity` of the fixed partition `p` on `n_reps`
/// independently rewired copies of `g`. Repetition seeds derive from `seed`
/// and the repetition index, so results do not depend on scheduling.
pub fn bootstrap_modularity(
    g: &CitationGraph,
    p: &Partition,
    n_reps: usize,
    swaps_per_edge: usize,
    seed: u64,
) -> Result<BootstrapResult> {
    if n_reps < 2 {
        return Err(Error::TooFewRepetitions(n_reps));
    }
    partition_labels(g, p)?;
    let samples: Vec<Result<(f64, bool)>> = par::map_indices(n_reps, |rep| {
        let (rewired, stats) = rewire_null(g, swaps_per_edge, derive_seed(seed, rep as u64))?;
        let q = directed_modularity(&rewired, p)?;
        Ok((q, stats.low_acceptance))
    });
    let mut values = Vec::with_capacity(n_reps);
    let mut low_acceptance = false;
    for s in samples {
        let (q, low) = s?;
        values.push(q);
        low_acceptance |= low;
    }
    let mean = values.iter().sum::<f64>() / n_reps as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n_reps as f64 - 1.0);
    Ok(BootstrapResult {
        mean,
        sd: var.sqrt(),
        n_reps,
        low_acceptance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Corpus, Reference};

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn chain_corpus() -> Corpus {
        let mut c = Corpus::new("t");
        c.upsert(Reference::new("a", "Alpha").with_cites(["b"])).unwrap();
        c.upsert(Reference::new("b", "Beta").with_cites(["c"])).unwrap();
        c.upsert(Reference::new("c", "Gamma")).unwrap();
        c
    }

    #[test]
    fn build_chain() {
        let g = build_graph(&chain_corpus()).unwrap();
        assert_eq!(g.n_nodes(), 3);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.self_citations_dropped, 0);
    }

    #[test]
    fn build_empty_corpus_errors() {
        assert!(matches!(build_graph(&Corpus::new("t")), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn duplicate_cited_id_single_edge() {
        let g = CitationGraph::from_edges(ids(&["a", "b"]), &[("a", "b"), ("a", "b")]);
        assert_eq!(g.n_edges(), 1);
    }

    #[test]
    fn self_loop_dropped_and_counted() {
        let g = CitationGraph::from_edges(ids(&["a", "b"]), &[("a", "a"), ("a", "b")]);
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.self_citations_dropped, 1);
    }

    #[test]
    fn weak_components_two_pairs() {
        let g = CitationGraph::from_edges(ids(&["a", "b", "c", "d"]), &[("a", "b"), ("c", "d")]);
        let comps = weak_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 2);
        assert_eq!(comps[1].len(), 2);
    }

    #[test]
    fn weak_components_chain_single() {
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c", "d", "e"]),
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        );
        assert_eq!(weak_components(&g).len(), 1);
    }

    #[test]
    fn weak_components_triangles_and_isolate() {
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c", "d", "e", "f", "g"]),
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "a"),
                ("d", "e"),
                ("e", "f"),
                ("f", "d"),
            ],
        );
        let sizes: Vec<usize> = weak_components(&g).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 3, 1]);
    }

    #[test]
    fn min_degree_filter_star() {
        let g = CitationGraph::from_edges(
            ids(&["hub", "l1", "l2", "l3"]),
            &[("l1", "hub"), ("l2", "hub"), ("hub", "l3")],
        );
        let filtered = filter_min_degree(&g, 2);
        assert_eq!(filtered.n_nodes(), 1);
        assert_eq!(filtered.n_edges(), 0);
        assert_eq!(filtered.id(0), "hub");
    }

    #[test]
    fn min_degree_zero_is_identity() {
        let g = CitationGraph::from_edges(ids(&["a", "b", "c"]), &[("a", "b")]);
        let filtered = filter_min_degree(&g, 0);
        assert_eq!(filtered.n_nodes(), 3);
        assert_eq!(filtered.n_edges(), 1);
    }

    #[test]
    fn min_degree_triangle_unchanged() {
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c"]),
            &[("a", "b"), ("b", "c"), ("c", "a")],
        );
        let filtered = filter_min_degree(&g, 2);
        assert_eq!(filtered.n_nodes(), 3);
        assert_eq!(filtered.n_edges(), 3);
    }

    #[test]
    fn iterated_core_peels_chains() {
        // a -> b -> c -> d plus a triangle; the chain unravels under k=2.
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c", "x", "y", "z"]),
            &[("a", "b"), ("b", "c"), ("c", "x"), ("x", "y"), ("y", "z"), ("z", "x")],
        );
        let one_pass = filter_min_degree(&g, 2);
        assert_eq!(one_pass.n_nodes(), 5); // only `a` drops on the first pass
        let core = iterate_core(&g, 2);
        assert_eq!(core.n_nodes(), 3);
    }

    fn directed_two_cycles_bridge() -> (CitationGraph, Partition) {
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c", "d", "e", "f"]),
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "a"),
                ("d", "e"),
                ("e", "f"),
                ("f", "d"),
                ("c", "d"),
            ],
        );
        let p = Partition::from_labels(
            Layer::Citation,
            g.ids().to_vec(),
            vec![0, 0, 0, 1, 1, 1],
        );
        (g, p)
    }

    /// Dense-matrix double-sum oracle for Q_d.
    fn directed_modularity_oracle(g: &CitationGraph, labels: &[usize]) -> f64 {
        let n = g.n_nodes();
        let e = g.n_edges() as f64;
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] != labels[j] {
                    continue;
                }
                let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                q += a - g.out_degree(i) as f64 * g.in_degree(j) as f64 / e;
            }
        }
        q / e
    }

    #[test]
    fn directed_modularity_two_cycles() {
        let (g, p) = directed_two_cycles_bridge();
        let q = directed_modularity(&g, &p).unwrap();
        let labels: Vec<usize> = g.ids().iter().map(|id| p.community_of(id).unwrap()).collect();
        let oracle = directed_modularity_oracle(&g, &labels);
        assert!((q - oracle).abs() < 1e-12);
        // 6/7 intra minus (4*3 + 3*4)/49 expected
        assert!((q - 18.0 / 49.0).abs() < 1e-12, "q = {q}");
    }

    #[test]
    fn directed_modularity_single_community_zero() {
        let (g, _) = directed_two_cycles_bridge();
        let p = Partition::from_labels(Layer::Citation, g.ids().to_vec(), vec![0; 6]);
        // One community: intra = E/E = 1, expected = (sum kout)(sum kin)/E^2 = 1.
        let q = directed_modularity(&g, &p).unwrap();
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn directed_modularity_singletons_nonpositive() {
        let (g, _) = directed_two_cycles_bridge();
        let p = Partition::from_labels(Layer::Citation, g.ids().to_vec(), (0..6).collect());
        let q = directed_modularity(&g, &p).unwrap();
        let expected = -(0..6)
            .map(|i| g.out_degree(i) as f64 * g.in_degree(i) as f64)
            .sum::<f64>()
            / 49.0;
        assert!((q - expected).abs() < 1e-12);
        assert!(q <= 0.0);
    }

    #[test]
    fn directed_modularity_no_edges_errors() {
        let g = CitationGraph::from_edges(ids(&["a", "b"]), &[] as &[(&str, &str)]);
        let p = Partition::from_labels(Layer::Citation, g.ids().to_vec(), vec![0, 1]);
        assert!(matches!(directed_modularity(&g, &p), Err(Error::NoEdges)));
    }

    #[test]
    fn partition_gap_errors() {
        let g = CitationGraph::from_edges(ids(&["a", "b"]), &[("a", "b")]);
        let p = Partition::from_labels(Layer::Citation, vec!["a".into()], vec![0]);
        assert!(matches!(directed_modularity(&g, &p), Err(Error::PartitionGap(_))));
    }

    #[test]
    fn rewire_preserves_degree_sequences() {
        let mut edges = Vec::new();
        for i in 0..20 {
            edges.push((format!("n{i}"), format!("n{}", (i + 1) % 20)));
            edges.push((format!("n{i}"), format!("n{}", (i + 7) % 20)));
        }
        let named: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = CitationGraph::from_edges((0..20).map(|i| format!("n{i}")).collect(), &named);
        let (rewired, stats) = rewire_null(&g, 10, 99).unwrap();
        assert_eq!(rewired.n_nodes(), g.n_nodes());
        assert_eq!(rewired.n_edges(), g.n_edges());
        for i in 0..g.n_nodes() {
            assert_eq!(rewired.out_degree(i), g.out_degree(i));
            assert_eq!(rewired.in_degree(i), g.in_degree(i));
        }
        assert!(stats.accepted > 0);
    }

    #[test]
    fn rewire_two_disjoint_edges_swaps() {
        let g = CitationGraph::from_edges(ids(&["a", "b", "c", "d"]), &[("a", "b"), ("c", "d")]);
        // The only legal swap is (a->d, c->b); any accepted swap must yield it.
        let (rewired, stats) = rewire_null(&g, 50, 3).unwrap();
        if stats.accepted % 2 == 1 {
            assert!(rewired.has_edge(0, 3));
            assert!(rewired.has_edge(2, 1));
        } else {
            assert!(rewired.has_edge(0, 1));
            assert!(rewired.has_edge(2, 3));
        }
    }

    #[test]
    fn rewire_deterministic() {
        let (g, _) = directed_two_cycles_bridge();
        let (r1, _) = rewire_null(&g, 10, 5).unwrap();
        let (r2, _) = rewire_null(&g, 10, 5).unwrap();
        assert_eq!(r1.edges(), r2.edges());
    }

    #[test]
    fn rewire_single_edge_errors() {
        let g = CitationGraph::from_edges(ids(&["a", "b"]), &[("a", "b")]);
        assert!(matches!(rewire_null(&g, 10, 1), Err(Error::TooFewEdges { .. })));
    }

    #[test]
    fn bootstrap_deterministic_and_reports_spread() {
        let (g, p) = directed_two_cycles_bridge();
        let r1 = bootstrap_modularity(&g, &p, 2, 10, 7).unwrap();
        let r2 = bootstrap_modularity(&g, &p, 2, 10, 7).unwrap();
        assert_eq!(r1.mean, r2.mean);
        assert_eq!(r1.sd, r2.sd);
        assert!(matches!(
            bootstrap_modularity(&g, &p, 1, 10, 7),
            Err(Error::TooFewRepetitions(1))
        ));
    }

    #[test]
    fn louvain_on_two_cliques() {
        let g = CitationGraph::from_edges(
            ids(&["a", "b", "c", "d", "e", "f"]),
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "a"),
                ("d", "e"),
                ("e", "f"),
                ("f", "d"),
                ("c", "d"),
            ],
        );
        let p = louvain_citation(&g, 42, 1.0).unwrap();
        assert_eq!(p.n_communities(), 2);
        assert_eq!(p.community_of("a"), p.community_of("b"));
        assert_eq!(p.community_of("d"), p.community_of("f"));
        assert_ne!(p.community_of("a"), p.community_of("d"));
    }
}
