//! End-to-end orchestration used by the CLIs and embedders: acquire inputs,
//! split and parse documents, build the graph, assign clusters, emit DOT,
//! and render the requested output format.

use std::path::{Path, PathBuf};

use serde_yaml::Value;

use crate::cluster::{assign_clusters, ClusterTree};
use crate::config::VisualConfig;
use crate::dot::{emit_dot, DotDocument};
use crate::error::{Error, Result};
use crate::graph::{build_graph, ResourceGraph};
use crate::icons;
use crate::registry::Registry;
use crate::render::{infer_format, render, RenderFormat};
use crate::resource::{parse_resource, Resource};
use crate::source::{acquire, flatten_lists, split_documents, SourceKind, SourceSpec};
use crate::warnings::Warnings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verbosity {
    Quiet,
    #[default]
    Normal,
    Verbose,
}

#[derive(Debug, Clone)]
pub struct InvocationOptions {
    pub inputs: Vec<SourceSpec>,
    /// Output path; `-` writes DOT to stdout.
    pub output: PathBuf,
    pub config_paths: Vec<PathBuf>,
    pub cluster_frame: bool,
    pub verbosity: Verbosity,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub nodes: usize,
    pub edges: usize,
}

/// Acquire every input and parse it into resources, preserving source
/// order. Documents that are not mappings (comment-only documents from
/// `helm template`, stray scalars) are skipped with a warning.
pub fn collect_resources(
    inputs: &[SourceSpec],
    config: &VisualConfig,
    registry: &Registry,
    warnings: &mut Warnings,
) -> Result<Vec<Resource>> {
    let mut resources = Vec::new();
    for source in inputs {
        let stream = acquire(source)?;
        for raw in split_documents(&stream, source)? {
            let value: Value =
                serde_yaml::from_str(&raw.text).map_err(|e| Error::yaml(source.describe(), &e))?;
            if !value.is_mapping() {
                warnings.push(format!(
                    "{}: document #{} is not a mapping, skipped",
                    source.describe(),
                    raw.index_in_stream
                ));
                continue;
            }
            for doc in flatten_lists(value)? {
                if !doc.is_mapping() {
                    warnings.push(format!(
                        "{}: list item is not a mapping, skipped",
                        source.describe()
                    ));
                    continue;
                }
                resources.push(parse_resource(&doc, registry, config, source, warnings)?);
            }
        }
    }
    Ok(resources)
}

/// Graph + cluster tree for a set of resources.
pub fn assemble(
    resources: &[Resource],
    config: &VisualConfig,
    registry: &Registry,
    top_level: bool,
    warnings: &mut Warnings,
) -> (ResourceGraph, ClusterTree) {
    let graph = build_graph(resources, config, registry, warnings);
    let tree = assign_clusters(&graph, config, top_level);
    (graph, tree)
}

/// One-call convenience: parse a manifest stream and emit its DOT text.
pub fn dot_from_yaml(
    yaml: &str,
    config: &VisualConfig,
    warnings: &mut Warnings,
) -> Result<DotDocument> {
    let registry = Registry::builtin();
    let origin = SourceSpec::stdin();
    let mut resources = Vec::new();
    for raw in split_documents(yaml, &origin)? {
        let value: Value =
            serde_yaml::from_str(&raw.text).map_err(|e| Error::yaml(origin.describe(), &e))?;
        if !value.is_mapping() {
            warnings.push(format!(
                "stdin: document #{} is not a mapping, skipped",
                raw.index_in_stream
            ));
            continue;
        }
        for doc in flatten_lists(value)? {
            if doc.is_mapping() {
                resources.push(parse_resource(&doc, &registry, config, &origin, warnings)?);
            }
        }
    }
    let (graph, tree) = assemble(&resources, config, &registry, false, warnings);
    Ok(emit_dot(&graph, &tree, config, &registry, warnings))
}

/// Run the whole pipeline for one invocation.
pub fn run(options: &InvocationOptions, warnings: &mut Warnings) -> Result<RunReport> {
    let registry = Registry::builtin();
    let config = VisualConfig::load(&options.config_paths, warnings)?;
    let resources = collect_resources(&options.inputs, &config, &registry, warnings)?;

    // The cluster frame wraps live-cluster dumps automatically; manifests
    // get it only on request.
    let top_level = options.cluster_frame
        || options
            .inputs
            .iter()
            .any(|s| s.kind == SourceKind::LiveCluster);

    let (graph, tree) = assemble(&resources, &config, &registry, top_level, warnings);
    let doc = emit_dot(&graph, &tree, &config, &registry, warnings);
    let report = RunReport {
        nodes: graph.node_count(),
        edges: graph.edges.len(),
    };

    if options.output == Path::new("-") {
        // stdout carries nothing but DOT bytes
        use std::io::Write;
        std::io::stdout()
            .write_all(doc.text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e))?;
        return Ok(report);
    }

    let format = infer_format(&options.output)?;
    let manifest = icons::manifest(&graph, &config, &registry, warnings);
    match format {
        RenderFormat::Dot => {
            render(&doc, format, &options.output, None)?;
            // Ship the referenced icons next to the DOT so `dot` runs on it
            // as-is from that directory.
            let beside = options
                .output
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or_else(|| Path::new("."));
            icons::materialize(&manifest, beside, warnings)?;
        }
        _ => {
            let staging = tempfile::tempdir().map_err(|e| Error::io("<tempdir>", e))?;
            icons::materialize(&manifest, staging.path(), warnings)?;
            render(&doc, format, &options.output, Some(staging.path()))?;
        }
    }
    Ok(report)
}

/// Derive the default output stem for a chart reference: the last path
/// segment, without a trailing `/` or `.tgz` suffix.
pub fn chart_basename(chart_ref: &str) -> String {
    let trimmed = chart_ref.trim_end_matches('/');
    let last = trimmed.rsplit('/').next().unwrap_or(trimmed);
    let last = last.strip_suffix(".tgz").unwrap_or(last);
    if last.is_empty() {
        "chart".to_string()
    } else {
        last.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_basename_variants() {
        assert_eq!(chart_basename("./fixtures/mini-chart"), "mini-chart");
        assert_eq!(chart_basename("oci://registry.example/charts/foo"), "foo");
        assert_eq!(chart_basename("cert-manager/cert-manager"), "cert-manager");
        assert_eq!(chart_basename("bundle.tgz"), "bundle");
        assert_eq!(chart_basename("dir/"), "dir");
    }

    #[test]
    fn non_mapping_documents_are_skipped_with_warning() {
        let mut warnings = Warnings::new();
        let doc = dot_from_yaml(
            "just a scalar\n---\napiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n",
            &VisualConfig::builtin(),
            &mut warnings,
        )
        .unwrap();
        assert!(warnings.mention("not a mapping"));
        assert!(doc.text.contains("<TD>a</TD>"));
    }

    #[test]
    fn dot_output_writes_icons_beside_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("cm.yaml");
        std::fs::write(
            &input,
            "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n",
        )
        .unwrap();
        let output = dir.path().join("out.dot");
        let mut warnings = Warnings::new();
        let report = run(
            &InvocationOptions {
                inputs: vec![SourceSpec::file(input.to_string_lossy())],
                output: output.clone(),
                config_paths: vec![],
                cluster_frame: false,
                verbosity: Verbosity::Normal,
            },
            &mut warnings,
        )
        .unwrap();
        assert_eq!(report.nodes, 1);
        assert!(output.is_file());
        assert!(dir.path().join("icons/cm.png").is_file());
    }

    #[test]
    fn unknown_output_extension_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("cm.yaml");
        std::fs::write(
            &input,
            "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n",
        )
        .unwrap();
        let mut warnings = Warnings::new();
        let err = run(
            &InvocationOptions {
                inputs: vec![SourceSpec::file(input.to_string_lossy())],
                output: dir.path().join("out.bmp"),
                config_paths: vec![],
                cluster_frame: false,
                verbosity: Verbosity::Normal,
            },
            &mut warnings,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownFormat { .. }));
    }
}
