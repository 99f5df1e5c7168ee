//! k8s-atlas turns Kubernetes declarative configuration — manifests, Helm
//! chart renderings, kustomization output, live-cluster dumps — into
//! architecture diagrams. It builds a typed resource graph (reference,
//! selector, and owner edges), nests the nodes in namespace- and
//! label-driven clusters, and emits deterministic Graphviz DOT; final
//! rendering to PNG/SVG/PDF/... is delegated to the external `dot` engine.
//!
//! The `kube-diagrams` and `helm-diagrams` binaries wrap this library; see
//! the guide under `book/` for a walkthrough.
//!
//! ```
//! use k8s_atlas::{VisualConfig, Warnings};
//!
//! let manifest = "
//! apiVersion: v1
//! kind: Service
//! metadata: {name: wordpress}
//! spec:
//!   selector: {app: wordpress}
//! ";
//! let mut warnings = Warnings::new();
//! let doc = k8s_atlas::dot_from_yaml(manifest, &VisualConfig::builtin(), &mut warnings).unwrap();
//! assert!(doc.text.starts_with("digraph"));
//! ```

pub mod cluster;
pub mod config;
pub mod dot;
pub mod error;
pub mod graph;
pub mod icons;
pub mod pipeline;
pub mod registry;
pub mod render;
pub mod resource;
pub mod selector;
pub mod source;
pub mod warnings;

pub use cluster::{assign_clusters, render_title, ClusterLevel, ClusterNode, ClusterTree};
pub use config::{ClusterRule, EdgeAttrs, EdgeRule, LineStyle, NodeMapping, VisualConfig};
pub use dot::{emit_dot, escape_dot_string, DotDocument};
pub use error::{Error, Result};
pub use graph::{build_graph, resolve_field_path, Edge, EdgeKind, NodeRecord, ResourceGraph};
pub use pipeline::{dot_from_yaml, InvocationOptions, RunReport, Verbosity};
pub use registry::{IconRef, KindDescriptor, Registry, Scope};
pub use render::{infer_format, render, RenderFormat};
pub use resource::{classify_kind, parse_resource, Resource, ResourceId};
pub use selector::{matches_selector, LabelSelector, SelectorOperator, SelectorRequirement};
pub use source::{
    acquire, expand_inputs, flatten_lists, split_documents, RawDocument, SourceKind, SourceSpec,
};
pub use warnings::Warnings;

// mdbook cannot run the guide's code blocks against this crate, so the
// chapters are included here as doc-tests; `cargo test --doc` keeps the
// book and the API in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/getting-started.md")]
    pub mod getting_started {}
    #[doc = include_str!("../../../book/src/input-sources.md")]
    pub mod input_sources {}
    #[doc = include_str!("../../../book/src/visual-model.md")]
    pub mod visual_model {}
    #[doc = include_str!("../../../book/src/relationships.md")]
    pub mod relationships {}
    #[doc = include_str!("../../../book/src/clustering.md")]
    pub mod clustering {}
    #[doc = include_str!("../../../book/src/configuration.md")]
    pub mod configuration {}
    #[doc = include_str!("../../../book/src/rendering.md")]
    pub mod rendering {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
