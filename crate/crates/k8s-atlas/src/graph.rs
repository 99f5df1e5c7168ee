//! Construction of the resource graph: one node per resource (plus
//! synthesized placeholders for referenced-but-undeclared targets) and
//! typed edges for the three relation categories.

use std::collections::{BTreeMap, HashSet};

use serde_yaml::Value;

use crate::config::{EdgeAttrs, EdgeRule, LineStyle, TypedRefRule, VisualConfig};
use crate::registry::{KindDescriptor, Registry, Scope};
use crate::resource::{classify_kind, Resource, ResourceId};
use crate::selector::{matches_selector, LabelSelector};
use crate::warnings::Warnings;

/// The three relation categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Explicit object reference (solid).
    Reference,
    /// Label-based selector (dashed).
    Selector,
    /// Owner/controller relation (dotted).
    Owner,
}

impl EdgeKind {
    pub fn default_style(self) -> LineStyle {
        match self {
            EdgeKind::Reference => LineStyle::Solid,
            EdgeKind::Selector => LineStyle::Dashed,
            EdgeKind::Owner => LineStyle::Dotted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: ResourceId,
    pub target: ResourceId,
    pub kind: EdgeKind,
    pub attrs: EdgeAttrs,
}

/// A graph node: either a declared resource or a placeholder synthesized
/// for a referenced name that no manifest declares.
#[derive(Debug, Clone)]
pub enum NodeRecord {
    Declared(Resource),
    Placeholder {
        id: ResourceId,
        descriptor: KindDescriptor,
    },
}

impl NodeRecord {
    pub fn id(&self) -> &ResourceId {
        match self {
            NodeRecord::Declared(r) => &r.id,
            NodeRecord::Placeholder { id, .. } => id,
        }
    }

    pub fn labels(&self) -> Option<&BTreeMap<String, String>> {
        match self {
            NodeRecord::Declared(r) => Some(&r.labels),
            NodeRecord::Placeholder { .. } => None,
        }
    }

    pub fn is_placeholder(&self) -> bool {
        matches!(self, NodeRecord::Placeholder { .. })
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResourceGraph {
    pub nodes: BTreeMap<ResourceId, NodeRecord>,
    pub edges: Vec<Edge>,
}

impl ResourceGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, id: &ResourceId) -> bool {
        self.nodes.contains_key(id)
    }

    /// Edges of one kind, for assertions and summaries.
    pub fn edges_of(&self, kind: EdgeKind) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.kind == kind)
    }
}

/// Walk a dot-separated path into a body tree and collect the string values
/// reached. `*` fans out over sequence elements; missing segments yield no
/// values; non-string terminals are skipped with a warning.
pub fn resolve_field_path(body: &Value, path: &str, warnings: &mut Warnings) -> Vec<String> {
    let mut out = Vec::new();
    for value in path_values(body, path) {
        match value {
            Value::String(s) => out.push(s.clone()),
            other => warnings.push(format!(
                "field path {path}: expected a string, found {}",
                type_name(other)
            )),
        }
    }
    out
}

fn type_name(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Sequence(_) => "a sequence",
        Value::Mapping(_) => "a mapping",
        Value::Tagged(_) => "a tagged value",
    }
}

fn path_values<'v>(body: &'v Value, path: &str) -> Vec<&'v Value> {
    let mut current = vec![body];
    for segment in path.split('.') {
        let mut next = Vec::new();
        for value in current {
            if segment == "*" {
                if let Value::Sequence(items) = value {
                    next.extend(items.iter());
                }
            } else if let Some(found) = value.get(segment) {
                next.push(found);
            }
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    current
}

const TEMPLATE_WORKLOADS: &[&str] = &[
    "Deployment",
    "StatefulSet",
    "DaemonSet",
    "Job",
    "ReplicaSet",
    "ReplicationController",
];

/// Pod template embedded in a workload, if any.
fn pod_template(resource: &Resource) -> Option<&Value> {
    if TEMPLATE_WORKLOADS.contains(&resource.id.kind.as_str()) {
        resource.body.get("spec")?.get("template")
    } else if resource.id.kind == "CronJob" {
        resource
            .body
            .get("spec")?
            .get("jobTemplate")?
            .get("spec")?
            .get("template")
    } else {
        None
    }
}

fn pod_template_labels(resource: &Resource) -> Option<BTreeMap<String, String>> {
    let template = pod_template(resource)?;
    let labels = template.get("metadata")?.get("labels")?;
    let map = labels.as_mapping()?;
    let mut out = BTreeMap::new();
    for (k, v) in map {
        if let (Some(key), Some(value)) = (k.as_str(), v.as_str()) {
            out.insert(key.to_string(), value.to_string());
        }
    }
    Some(out)
}

/// Build the full graph. Stages run in a fixed order: node insertion with
/// deduplication, created-node synthesis, reference inference, selector
/// inference, owner inference. The edge list is sorted for determinism.
pub fn build_graph(
    resources: &[Resource],
    config: &VisualConfig,
    registry: &Registry,
    warnings: &mut Warnings,
) -> ResourceGraph {
    let mut builder = Builder {
        graph: ResourceGraph::default(),
        seen_edges: HashSet::new(),
        config,
        registry,
    };

    let mut declared = Vec::new();
    for resource in resources {
        if builder.graph.nodes.contains_key(&resource.id) {
            warnings.push(format!(
                "duplicate manifest for {}: keeping the first",
                resource.id
            ));
            continue;
        }
        builder
            .graph
            .nodes
            .insert(resource.id.clone(), NodeRecord::Declared(resource.clone()));
        declared.push(resource.clone());
    }

    for resource in &declared {
        builder.synthesize_created_nodes(resource, warnings);
    }
    for resource in &declared {
        builder.infer_reference_edges(resource, warnings);
    }
    builder.infer_selector_edges(&declared, warnings);
    for resource in &declared {
        builder.infer_owner_edges(resource, warnings);
    }

    let mut graph = builder.graph;
    graph.edges.sort();
    graph
}

struct Builder<'a> {
    graph: ResourceGraph,
    seen_edges: HashSet<(ResourceId, ResourceId, EdgeKind, Option<String>)>,
    config: &'a VisualConfig,
    registry: &'a Registry,
}

impl Builder<'_> {
    fn synthesize_created_nodes(&mut self, resource: &Resource, warnings: &mut Warnings) {
        let Some(mapping) = self
            .config
            .mapping_for(&resource.id.kind, &resource.id.api_version)
        else {
            return;
        };
        for rule in mapping.created_nodes.clone() {
            for name in resolve_field_path(&resource.body, &rule.field_path, warnings) {
                self.resolve_target(
                    &rule.target_kind,
                    &rule.target_api_version,
                    &name,
                    resource.id.namespace.as_deref(),
                    warnings,
                );
            }
        }
    }

    fn infer_reference_edges(&mut self, resource: &Resource, warnings: &mut Warnings) {
        let mapping = self
            .config
            .mapping_for(&resource.id.kind, &resource.id.api_version);
        if let Some(mapping) = mapping {
            let rules = mapping.edges.clone();
            self.apply_edge_rules(resource, &resource.body.clone(), &rules, warnings);
        }

        // Workloads additionally apply the Pod rules against their embedded
        // template, attributing the edges to the workload node.
        if let Some(template) = pod_template(resource).cloned() {
            if let Some(pod_mapping) = self.config.mapping_for("Pod", "v1") {
                let rules = pod_mapping.edges.clone();
                self.apply_edge_rules(resource, &template, &rules, warnings);
            }
        }

        if let Some(descriptor) = self
            .registry
            .lookup(&resource.id.kind, &resource.id.api_version)
        {
            for rule in descriptor.builtin_edge_rules.clone() {
                self.apply_typed_ref_rule(resource, &rule, warnings);
            }
        }
    }

    fn apply_edge_rules(
        &mut self,
        resource: &Resource,
        body: &Value,
        rules: &[EdgeRule],
        warnings: &mut Warnings,
    ) {
        for rule in rules {
            for name in resolve_field_path(body, &rule.field_path, warnings) {
                let target = self.resolve_target(
                    &rule.target_kind,
                    &rule.target_api_version,
                    &name,
                    resource.id.namespace.as_deref(),
                    warnings,
                );
                self.push_edge(
                    resource.id.clone(),
                    target,
                    EdgeKind::Reference,
                    rule.attrs.clone(),
                    warnings,
                );
            }
        }
    }

    fn apply_typed_ref_rule(
        &mut self,
        resource: &Resource,
        rule: &TypedRefRule,
        warnings: &mut Warnings,
    ) {
        let objects: Vec<Value> = path_values(&resource.body, &rule.object_path)
            .into_iter()
            .cloned()
            .collect();
        for object in objects {
            let Some(name) = object.get("name").and_then(Value::as_str) else {
                continue;
            };
            let kind = object
                .get("kind")
                .and_then(Value::as_str)
                .map(str::to_string)
                .or_else(|| rule.default_kind.clone());
            let Some(kind) = kind else {
                warnings.push(format!(
                    "{}: reference at {} has no kind, skipped",
                    resource.id, rule.object_path
                ));
                continue;
            };
            let api_version = object
                .get("apiVersion")
                .and_then(Value::as_str)
                .unwrap_or("v1");
            // An explicit namespace on the reference object wins over the
            // source namespace (e.g. ClusterRoleBinding subjects).
            let namespace = object
                .get("namespace")
                .and_then(Value::as_str)
                .map(str::to_string)
                .or_else(|| resource.id.namespace.clone());
            let target =
                self.resolve_target(&kind, api_version, name, namespace.as_deref(), warnings);
            self.push_edge(
                resource.id.clone(),
                target,
                EdgeKind::Reference,
                rule.attrs.clone(),
                warnings,
            );
        }
    }

    fn infer_selector_edges(&mut self, declared: &[Resource], warnings: &mut Warnings) {
        for resource in declared {
            let selector = match resource.id.kind.as_str() {
                "Service" => resource
                    .body
                    .get("spec")
                    .and_then(|s| s.get("selector"))
                    .and_then(LabelSelector::from_match_labels),
                "NetworkPolicy" => resource
                    .body
                    .get("spec")
                    .and_then(|s| s.get("podSelector"))
                    .and_then(LabelSelector::from_value),
                "PodDisruptionBudget" => resource
                    .body
                    .get("spec")
                    .and_then(|s| s.get("selector"))
                    .and_then(LabelSelector::from_value),
                _ => None,
            };
            let Some(selector) = selector else { continue };

            let mut matched = 0usize;
            for candidate in declared {
                if candidate.id == resource.id || candidate.id.namespace != resource.id.namespace {
                    continue;
                }
                let target_labels = if candidate.id.kind == "Pod" {
                    Some(candidate.labels.clone())
                } else {
                    pod_template_labels(candidate)
                };
                let Some(target_labels) = target_labels else {
                    continue;
                };
                if matches_selector(&selector, &target_labels) {
                    matched += 1;
                    self.push_edge(
                        resource.id.clone(),
                        candidate.id.clone(),
                        EdgeKind::Selector,
                        EdgeAttrs::with_style(LineStyle::Dashed),
                        warnings,
                    );
                }
            }
            if matched == 0 {
                warnings.push(format!("{}: selector matches nothing", resource.id));
            }
        }
    }

    fn infer_owner_edges(&mut self, resource: &Resource, warnings: &mut Warnings) {
        for owner in resource.owner_refs.clone() {
            let owner_id = self.resolve_target(
                &owner.kind,
                &owner.api_version,
                &owner.name,
                resource.id.namespace.as_deref(),
                warnings,
            );
            self.push_edge(
                owner_id,
                resource.id.clone(),
                EdgeKind::Owner,
                EdgeAttrs::with_style(LineStyle::Dotted),
                warnings,
            );
        }
    }

    /// Find the node a (kind, name) reference points at, respecting scope:
    /// namespaced targets resolve within the given namespace, cluster-scoped
    /// targets resolve globally. Unknown targets become placeholder nodes.
    fn resolve_target(
        &mut self,
        kind: &str,
        api_version: &str,
        name: &str,
        source_namespace: Option<&str>,
        warnings: &mut Warnings,
    ) -> ResourceId {
        let descriptor = classify_kind(kind, api_version, self.registry, self.config, warnings);
        let namespace = match descriptor.scope {
            Scope::Cluster => None,
            Scope::Namespaced => Some(source_namespace.unwrap_or("default").to_string()),
        };

        let mut candidates = self.graph.nodes.keys().filter(|id| {
            id.kind == kind && id.name == name && id.namespace.as_deref() == namespace.as_deref()
        });
        if let Some(found) = candidates.next() {
            let found = found.clone();
            if candidates.next().is_some() {
                warnings.push(format!(
                    "ambiguous reference to {kind} {name}: multiple API versions declared"
                ));
            }
            return found;
        }

        let id = ResourceId {
            kind: kind.to_string(),
            api_version: api_version.to_string(),
            namespace,
            name: name.to_string(),
        };
        self.graph.nodes.insert(
            id.clone(),
            NodeRecord::Placeholder {
                id: id.clone(),
                descriptor,
            },
        );
        id
    }

    fn push_edge(
        &mut self,
        source: ResourceId,
        target: ResourceId,
        kind: EdgeKind,
        attrs: EdgeAttrs,
        warnings: &mut Warnings,
    ) {
        if source == target {
            warnings.push(format!("{source}: self-reference kept as a loop edge"));
        }
        let key = (source.clone(), target.clone(), kind, attrs.xlabel.clone());
        if !self.seen_edges.insert(key) {
            return;
        }
        self.graph.edges.push(Edge {
            source,
            target,
            kind,
            attrs,
        });
    }
}
