//! GraphML and CSV graph exports. Node attributes: id, label, community;
//! edge attribute: weight. Layout and rendering stay external.

use std::io::Write;
use std::path::Path;

use crate::citnet::CitationGraph;
use crate::error::{Error, Result};
use crate::louvain::Partition;
use crate::semnet::SemanticGraph;

/// A graph flattened for export.
#[derive(Debug, Clone)]
pub struct ExportGraph {
    pub directed: bool,
    /// (id, label, community) per node.
    pub nodes: Vec<(String, String, Option<usize>)>,
    /// (source index, target index, weight).
    pub edges: Vec<(usize, usize, f64)>,
}

impl ExportGraph {
    /// Citation layer: labels are reference titles when available.
    pub fn from_citation(
        g: &CitationGraph,
        partition: Option<&Partition>,
        label_of: impl Fn(&str) -> String,
    ) -> ExportGraph {
        let nodes = g
            .ids()
            .iter()
            .map(|id| {
                (
                    id.clone(),
                    label_of(id),
                    partition.and_then(|p| p.community_of(id)),
                )
            })
            .collect();
        let edges = g.edges().into_iter().map(|(u, v)| (u, v, 1.0)).collect();
        ExportGraph {
            directed: true,
            nodes,
            edges,
        }
    }

    /// Semantic layer: terms label themselves, weights are co-occurrence
    /// counts.
    pub fn from_semantic(g: &SemanticGraph, partition: Option<&Partition>) -> ExportGraph {
        let nodes = g
            .terms()
            .iter()
            .map(|t| {
                (
                    t.clone(),
                    t.clone(),
                    partition.and_then(|p| p.community_of(t)),
                )
            })
            .collect();
        let edges = g
            .edges()
            .into_iter()
            .map(|(u, v, w)| (u, v, f64::from(w)))
            .collect();
        ExportGraph {
            directed: false,
            nodes,
            edges,
        }
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Write GraphML. Empty graphs produce a valid document with no nodes.
pub fn write_graphml(graph: &ExportGraph, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    let io_err = |e: std::io::Error| Error::io(path, e);

    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).map_err(io_err)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )
    .map_err(io_err)?;
    writeln!(w, r#"  <key id="d_id" for="node" attr.name="id" attr.type="string"/>"#).map_err(io_err)?;
    writeln!(w, r#"  <key id="d_label" for="node" attr.name="label" attr.type="string"/>"#).map_err(io_err)?;
    writeln!(w, r#"  <key id="d_comm" for="node" attr.name="community" attr.type="long"/>"#).map_err(io_err)?;
    writeln!(w, r#"  <key id="d_weight" for="edge" attr.name="weight" attr.type="double"/>"#).map_err(io_err)?;
    writeln!(
        w,
        r#"  <graph id="G" edgedefault="{}">"#,
        if graph.directed { "directed" } else { "undirected" }
    )
    .map_err(io_err)?;
    for (i, (id, label, community)) in graph.nodes.iter().enumerate() {
        writeln!(w, r#"    <node id="n{i}">"#).map_err(io_err)?;
        writeln!(w, r#"      <data key="d_id">{}</data>"#, xml_escape(id)).map_err(io_err)?;
        writeln!(w, r#"      <data key="d_label">{}</data>"#, xml_escape(label)).map_err(io_err)?;
        if let Some(c) = community {
            writeln!(w, r#"      <data key="d_comm">{c}</data>"#).map_err(io_err)?;
        }
        writeln!(w, r#"    </node>"#).map_err(io_err)?;
    }
    for (k, (u, v, weight)) in graph.edges.iter().enumerate() {
        writeln!(
            w,
            r#"    <edge id="e{k}" source="n{u}" target="n{v}"><data key="d_weight">{weight}</data></edge>"#
        )
        .map_err(io_err)?;
    }
    writeln!(w, r#"  </graph>"#).map_err(io_err)?;
    writeln!(w, r#"</graphml>"#).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// Write the node and edge CSV tables to the given paths.
pub fn write_graph_csv(graph: &ExportGraph, nodes_path: &Path, edges_path: &Path) -> Result<()> {
    let csv_err = |path: &Path, e: csv::Error| Error::MalformedRecord {
        path: path.to_path_buf(),
        line: 0,
        msg: e.to_string(),
    };

    let mut nodes = csv::Writer::from_path(nodes_path).map_err(|e| csv_err(nodes_path, e))?;
    nodes
        .write_record(["id", "label", "community"])
        .map_err(|e| csv_err(nodes_path, e))?;
    for (id, label, community) in &graph.nodes {
        nodes
            .write_record([
                id.as_str(),
                label.as_str(),
                &community.map(|c| c.to_string()).unwrap_or_default(),
            ])
            .map_err(|e| csv_err(nodes_path, e))?;
    }
    nodes.flush().map_err(|e| Error::io(nodes_path, e))?;

    let mut edges = csv::Writer::from_path(edges_path).map_err(|e| csv_err(edges_path, e))?;
    edges
        .write_record(["source", "target", "weight"])
        .map_err(|e| csv_err(edges_path, e))?;
    for &(u, v, w) in &graph.edges {
        edges
            .write_record([
                graph.nodes[u].0.as_str(),
                graph.nodes[v].0.as_str(),
                &w.to_string(),
            ])
            .map_err(|e| csv_err(edges_path, e))?;
    }
    edges.flush().map_err(|e| Error::io(edges_path, e))
}
