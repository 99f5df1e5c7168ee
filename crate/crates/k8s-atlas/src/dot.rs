//! Deterministic Graphviz DOT serialization.
//!
//! Output properties that tests rely on:
//! - byte-identical output for identical graphs, regardless of input order
//!   (everything is emitted from sorted structures; cluster ids are content
//!   hashes, not counters);
//! - every identifier is quoted; cluster subgraph names start `cluster_`;
//! - edge style keywords are emitted unquoted (`style=dashed`) so the three
//!   relation categories are greppable.

use sha2::{Digest, Sha256};

use crate::cluster::{Border, ClusterNode, ClusterTree};
use crate::config::{ArrowDirection, VisualConfig};
use crate::graph::{Edge, ResourceGraph};
use crate::icons;
use crate::registry::Registry;
use crate::resource::{classify_kind, ResourceId};
use crate::warnings::Warnings;

/// A complete DOT source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotDocument {
    pub text: String,
}

/// Escape a string for use inside a quoted DOT identifier or attribute.
pub fn escape_dot_string(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

fn escape_html(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn node_dot_id(id: &ResourceId) -> String {
    format!(
        "{}/{}/{}/{}",
        id.kind,
        id.api_version,
        id.namespace.as_deref().unwrap_or(""),
        id.name
    )
}

fn cluster_dot_id(path: &str) -> String {
    let digest = Sha256::digest(path.as_bytes());
    digest[..6].iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialize graph plus cluster tree into DOT.
pub fn emit_dot(
    graph: &ResourceGraph,
    tree: &ClusterTree,
    config: &VisualConfig,
    registry: &Registry,
    warnings: &mut Warnings,
) -> DotDocument {
    let mut out = String::new();
    out.push_str("digraph \"k8s-atlas\" {\n");
    if !graph.nodes.is_empty() {
        out.push_str(
            "  graph [fontname=\"Helvetica\", pad=\"0.4\", nodesep=\"0.5\", ranksep=\"0.7\"];\n",
        );
        out.push_str("  node [shape=none, fontname=\"Helvetica\", fontsize=11, margin=0];\n");
        out.push_str("  edge [fontname=\"Helvetica\", fontsize=9];\n");

        let mut ctx = Emit {
            out: &mut out,
            config,
            registry,
        };
        for id in &tree.loose {
            ctx.node_statement(id, 1, warnings);
        }
        for cluster in &tree.clusters {
            ctx.cluster(cluster, "", 1, warnings);
        }
        for edge in &graph.edges {
            ctx.edge_statement(edge, 1);
        }
    }
    out.push_str("}\n");
    DotDocument { text: out }
}

struct Emit<'a> {
    out: &'a mut String,
    config: &'a VisualConfig,
    registry: &'a Registry,
}

impl Emit<'_> {
    fn indent(&mut self, depth: usize) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
    }

    fn cluster(
        &mut self,
        node: &ClusterNode,
        parent_path: &str,
        depth: usize,
        warnings: &mut Warnings,
    ) {
        let path = format!("{parent_path}/{:?}:{}", node.level, node.key);
        self.indent(depth);
        self.out.push_str(&format!(
            "subgraph \"cluster_{}\" {{\n",
            cluster_dot_id(&path)
        ));
        self.indent(depth + 1);
        self.out
            .push_str(&format!("label=\"{}\";\n", escape_dot_string(&node.title)));
        if let Some(bg) = &node.style.bgcolor {
            self.indent(depth + 1);
            self.out
                .push_str(&format!("bgcolor=\"{}\";\n", escape_dot_string(bg)));
        }
        self.indent(depth + 1);
        match node.style.border {
            Border::Dashed => self.out.push_str("style=dashed;\n"),
            Border::Solid => self.out.push_str("style=solid;\n"),
        }
        for child in &node.children {
            self.cluster(child, &path, depth + 1, warnings);
        }
        for member in &node.members {
            self.node_statement(member, depth + 1, warnings);
        }
        self.indent(depth);
        self.out.push_str("}\n");
    }

    fn node_statement(&mut self, id: &ResourceId, depth: usize, warnings: &mut Warnings) {
        let descriptor = classify_kind(
            &id.kind,
            &id.api_version,
            self.registry,
            self.config,
            warnings,
        );
        let src = icons::dot_src(&descriptor.icon);
        self.indent(depth);
        self.out.push_str(&format!(
            "\"{}\" [label=<<TABLE BORDER=\"0\" CELLBORDER=\"0\" CELLSPACING=\"0\" CELLPADDING=\"1\"><TR><TD><IMG SRC=\"{}\"/></TD></TR><TR><TD><FONT POINT-SIZE=\"8\" COLOR=\"#555555\">{}</FONT></TD></TR><TR><TD>{}</TD></TR></TABLE>>];\n",
            escape_dot_string(&node_dot_id(id)),
            src,
            escape_html(&descriptor.alias),
            escape_html(&id.name),
        ));
    }

    fn edge_statement(&mut self, edge: &Edge, depth: usize) {
        // direction=up renders the arrow pointing upward: the statement is
        // emitted with swapped endpoints and dir=back, which flips both the
        // rank order and the arrowhead.
        let (tail, head) = match edge.attrs.direction {
            ArrowDirection::Down => (&edge.source, &edge.target),
            ArrowDirection::Up => (&edge.target, &edge.source),
        };
        self.indent(depth);
        self.out.push_str(&format!(
            "\"{}\" -> \"{}\" [color=\"{}\", style={}",
            escape_dot_string(&node_dot_id(tail)),
            escape_dot_string(&node_dot_id(head)),
            escape_dot_string(&edge.attrs.color),
            edge.attrs.style,
        ));
        if let Some(xlabel) = &edge.attrs.xlabel {
            self.out
                .push_str(&format!(", xlabel=\"{}\"", escape_dot_string(xlabel)));
        }
        if edge.attrs.direction == ArrowDirection::Up {
            self.out.push_str(", dir=back");
        }
        self.out.push_str("];\n");
    }
}
