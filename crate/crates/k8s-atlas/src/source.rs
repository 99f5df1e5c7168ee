//! Input acquisition: reading manifest text from files, stdin, or the
//! external tools (`helm`, `kustomize`, `helmfile`, `kubectl`), and splitting
//! the resulting streams into individual YAML documents.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::Command;

use serde::Deserialize;
use serde_yaml::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    File,
    Stdin,
    HelmChart,
    Kustomization,
    Helmfile,
    LiveCluster,
}

/// One input to a run: a file, stdin, or an external-tool invocation whose
/// stdout yields Kubernetes manifests.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpec {
    pub kind: SourceKind,
    /// Path, chart reference, directory, or namespace. Empty only for stdin.
    pub locator: String,
}

impl SourceSpec {
    pub fn file(path: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::File,
            locator: path.into(),
        }
    }

    pub fn stdin() -> Self {
        SourceSpec {
            kind: SourceKind::Stdin,
            locator: String::new(),
        }
    }

    pub fn helm_chart(chart_ref: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::HelmChart,
            locator: chart_ref.into(),
        }
    }

    pub fn kustomization(dir: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::Kustomization,
            locator: dir.into(),
        }
    }

    pub fn helmfile(path: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::Helmfile,
            locator: path.into(),
        }
    }

    /// Live cluster dump of one namespace via `kubectl get all`.
    pub fn live_cluster(namespace: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::LiveCluster,
            locator: namespace.into(),
        }
    }

    /// Human-readable origin used in diagnostics.
    pub fn describe(&self) -> String {
        match self.kind {
            SourceKind::File => format!("file {}", self.locator),
            SourceKind::Stdin => "stdin".to_string(),
            SourceKind::HelmChart => format!("helm chart {}", self.locator),
            SourceKind::Kustomization => format!("kustomization {}", self.locator),
            SourceKind::Helmfile => format!("helmfile {}", self.locator),
            SourceKind::LiveCluster => format!("live cluster namespace {}", self.locator),
        }
    }
}

/// A single YAML document cut out of an input stream.
#[derive(Debug, Clone)]
pub struct RawDocument {
    pub text: String,
    pub origin: SourceSpec,
    /// Position among the surviving (non-empty) documents of the stream.
    pub index_in_stream: usize,
}

/// Expand CLI input arguments into sources: `-` is stdin, a directory is
/// expanded to its `*.yaml`/`*.yml` files in lexicographic order, anything
/// else is taken as a file path.
pub fn expand_inputs(args: &[String]) -> Result<Vec<SourceSpec>> {
    let mut sources = Vec::new();
    for arg in args {
        if arg == "-" {
            sources.push(SourceSpec::stdin());
            continue;
        }
        let path = Path::new(arg);
        if path.is_dir() {
            let mut files: Vec<String> = fs::read_dir(path)
                .map_err(|e| Error::io(path, e))?
                .filter_map(|entry| entry.ok())
                .map(|entry| entry.path())
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("yaml") | Some("yml")
                    )
                })
                .map(|p| p.to_string_lossy().into_owned())
                .collect();
            files.sort();
            sources.extend(files.into_iter().map(SourceSpec::file));
        } else {
            sources.push(SourceSpec::file(arg.clone()));
        }
    }
    Ok(sources)
}

/// Fetch the raw manifest text for one source. This step never interprets
/// YAML; it only reads bytes from a file, stdin, or a subprocess.
pub fn acquire(source: &SourceSpec) -> Result<String> {
    match source.kind {
        SourceKind::File => {
            fs::read_to_string(&source.locator).map_err(|e| Error::io(source.locator.clone(), e))
        }
        SourceKind::Stdin => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::io("<stdin>", e))?;
            Ok(buf)
        }
        SourceKind::HelmChart => run_capture("helm", &["template", &source.locator]),
        SourceKind::Kustomization => run_capture("kustomize", &["build", &source.locator]),
        SourceKind::Helmfile => run_capture("helmfile", &["-f", &source.locator, "template"]),
        SourceKind::LiveCluster => run_capture(
            "kubectl",
            &["get", "all", "-n", &source.locator, "-o", "yaml"],
        ),
    }
}

fn run_capture(binary: &str, args: &[&str]) -> Result<String> {
    let output = Command::new(binary).args(args).output().map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingBinary {
                binary: binary.to_string(),
            }
        } else {
            Error::io(binary, e)
        }
    })?;
    if !output.status.success() {
        return Err(Error::SubprocessFailed {
            command: format!("{} {}", binary, args.join(" ")),
            status: output.status,
            stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        });
    }
    Ok(String::from_utf8_lossy(&output.stdout).into_owned())
}

/// Parse a multi-document stream into one value per non-empty document.
/// Empty documents (whitespace or comments only) are dropped.
pub fn split_values(stream: &str, origin: &SourceSpec) -> Result<Vec<Value>> {
    let mut values = Vec::new();
    for doc in serde_yaml::Deserializer::from_str(stream) {
        let value = Value::deserialize(doc).map_err(|e| Error::yaml(origin.describe(), &e))?;
        if !matches!(value, Value::Null) {
            values.push(value);
        }
    }
    Ok(values)
}

/// Split a stream into [`RawDocument`]s. The text of each document is the
/// canonical serialization of its value, so concatenating the results with
/// `---` separators round-trips at the value level.
pub fn split_documents(stream: &str, origin: &SourceSpec) -> Result<Vec<RawDocument>> {
    let values = split_values(stream, origin)?;
    let mut docs = Vec::with_capacity(values.len());
    for (index, value) in values.into_iter().enumerate() {
        let text = serde_yaml::to_string(&value).map_err(|e| Error::yaml(origin.describe(), &e))?;
        docs.push(RawDocument {
            text,
            origin: origin.clone(),
            index_in_stream: index,
        });
    }
    Ok(docs)
}

/// Unwrap `kind: List` wrappers (as produced by `kubectl get ... -o yaml`),
/// recursively. Non-list documents come back as a singleton.
pub fn flatten_lists(doc: Value) -> Result<Vec<Value>> {
    let is_list = doc
        .get("kind")
        .and_then(Value::as_str)
        .map(|k| k == "List")
        .unwrap_or(false);
    if !is_list {
        return Ok(vec![doc]);
    }
    let name = doc
        .get("metadata")
        .and_then(|m| m.get("name"))
        .and_then(Value::as_str)
        .unwrap_or("<unnamed>")
        .to_string();
    match doc.get("items") {
        Some(Value::Sequence(items)) => {
            let mut flat = Vec::with_capacity(items.len());
            for item in items.clone() {
                flat.extend(flatten_lists(item)?);
            }
            Ok(flat)
        }
        _ => Err(Error::MalformedList { origin: name }),
    }
}
