//! The declarative visual-mapping configuration.
//!
//! A config file is YAML with two top-level sections:
//!
//! ```yaml
//! clusters:            # label-driven grouping rules, outermost first
//!   - label: app
//!     title: "Application: {}"
//!     bgcolor: "#ECE8F6"
//! nodes:               # per-kind mappings, keyed "Kind/apiVersion"
//!   Certificate/cert-manager.io/v1:
//!     scope: Namespaced
//!     custom_icon: certificate.png
//!     nodes:           # resources this kind creates dynamically
//!       spec.secretName: {kind: Secret, apiVersion: v1}
//!     edges:           # reference fields drawn as edges
//!       spec.issuerRef.name:
//!         kind: Issuer
//!         apiVersion: cert-manager.io/v1
//!         graph_attr: {color: black, style: solid, direction: up}
//! ```
//!
//! The same schema backs the built-in mappings (embedded at compile time)
//! and user files given with `--config`; user entries replace built-in
//! entries wholesale per kind key.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde_yaml::{Mapping, Value};

use crate::error::{Error, Result};
use crate::registry::Scope;
use crate::warnings::Warnings;

/// One label-driven grouping level, e.g. everything sharing `app: wordpress`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRule {
    /// Label key whose value names the cluster.
    pub label: String,
    /// Cluster title with a single `{}` placeholder for the label value.
    pub title_template: String,
    pub bgcolor: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

impl fmt::Display for LineStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineStyle::Solid => "solid",
            LineStyle::Dashed => "dashed",
            LineStyle::Dotted => "dotted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ArrowDirection {
    #[default]
    Down,
    /// Draw the arrow pointing upward (the DOT statement is emitted
    /// reversed); the logical source/target in the graph is unchanged.
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeAttrs {
    pub color: String,
    pub style: LineStyle,
    pub xlabel: Option<String>,
    pub direction: ArrowDirection,
}

impl Default for EdgeAttrs {
    fn default() -> Self {
        EdgeAttrs {
            color: "black".to_string(),
            style: LineStyle::Solid,
            xlabel: None,
            direction: ArrowDirection::Down,
        }
    }
}

impl EdgeAttrs {
    pub fn with_style(style: LineStyle) -> Self {
        EdgeAttrs {
            style,
            ..EdgeAttrs::default()
        }
    }
}

/// A reference field drawn as an edge to a fixed target kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRule {
    /// Dot-separated path into the resource body; `*` fans out over
    /// sequence elements. The values reached are target resource names.
    pub field_path: String,
    pub target_kind: String,
    pub target_api_version: String,
    pub attrs: EdgeAttrs,
}

/// A field naming a resource that the owning kind creates dynamically;
/// the named resource is synthesized as a graph node if not declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreatedNodeRule {
    pub field_path: String,
    pub target_kind: String,
    pub target_api_version: String,
}

/// A reference whose target kind is carried by the reference object itself
/// (`roleRef`, `subjects`, `scaleTargetRef`, ...). Not expressible in the
/// YAML schema; used only by built-in kind descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedRefRule {
    /// Path to the reference object(s); `*` fans out over sequences.
    /// Each object is read for `kind`, `name`, `apiVersion`, `namespace`.
    pub object_path: String,
    /// Target kind assumed when the object carries no `kind` field.
    pub default_kind: Option<String>,
    pub attrs: EdgeAttrs,
}

impl TypedRefRule {
    pub fn new(object_path: &str) -> Self {
        TypedRefRule {
            object_path: object_path.to_string(),
            default_kind: None,
            attrs: EdgeAttrs::default(),
        }
    }
}

/// Everything the config knows about one kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeMapping {
    /// "Kind/apiVersion", e.g. "Pod/v1" or "Issuer/cert-manager.io/v1".
    pub kind_key: String,
    pub scope: Option<Scope>,
    pub custom_icon: Option<PathBuf>,
    pub created_nodes: Vec<CreatedNodeRule>,
    pub edges: Vec<EdgeRule>,
}

/// Merged view of all cluster rules and node mappings driving a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VisualConfig {
    pub cluster_rules: Vec<ClusterRule>,
    pub node_mappings: BTreeMap<String, NodeMapping>,
}

const BUILTIN_CONFIG: &str = include_str!("../assets/builtin.yaml");

impl VisualConfig {
    pub fn empty() -> Self {
        VisualConfig::default()
    }

    /// The embedded default mappings for the standard resource kinds.
    pub fn builtin() -> Self {
        let mut warnings = Warnings::new();
        let config = VisualConfig::parse(BUILTIN_CONFIG, &mut warnings)
            .expect("embedded builtin.yaml must parse");
        assert!(
            warnings.is_empty(),
            "embedded builtin.yaml must parse cleanly"
        );
        config
    }

    /// Parse one config document. Unknown keys warn; wrong shapes under the
    /// known keys (`clusters`, `nodes`) are errors carrying the YAML path.
    pub fn parse(text: &str, warnings: &mut Warnings) -> Result<Self> {
        let value: Value =
            serde_yaml::from_str(text).map_err(|e| Error::yaml("config".to_string(), &e))?;
        let mapping = match value {
            Value::Null => return Ok(VisualConfig::empty()),
            Value::Mapping(m) => m,
            other => {
                return Err(schema(
                    "$",
                    format!("expected a mapping, got {}", kind_of(&other)),
                ))
            }
        };

        let mut config = VisualConfig::empty();
        for (key, val) in &mapping {
            match key.as_str() {
                Some("clusters") => config.cluster_rules = parse_cluster_rules(val, warnings)?,
                Some("nodes") => config.node_mappings = parse_node_mappings(val, warnings)?,
                Some(other) => warnings.push(format!("config: unknown top-level key `{other}`")),
                None => warnings.push("config: ignoring non-string top-level key".to_string()),
            }
        }
        Ok(config)
    }

    /// Load and merge config files over the built-in defaults. Later files
    /// win. Relative `custom_icon` paths resolve against each file's
    /// directory.
    pub fn load(paths: &[PathBuf], warnings: &mut Warnings) -> Result<Self> {
        let mut merged = VisualConfig::builtin();
        for path in paths {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let mut user = VisualConfig::parse(&text, warnings)?;
            if let Some(dir) = path.parent() {
                user.resolve_icon_paths(dir);
            }
            merged = merged.merge(&user);
        }
        Ok(merged)
    }

    /// Overlay `user` onto `self`: node mappings are replaced wholesale per
    /// kind key; user cluster rules nest inside (after) the existing ones.
    pub fn merge(&self, user: &VisualConfig) -> VisualConfig {
        let mut node_mappings = self.node_mappings.clone();
        for (key, mapping) in &user.node_mappings {
            node_mappings.insert(key.clone(), mapping.clone());
        }
        let mut cluster_rules: Vec<ClusterRule> = self
            .cluster_rules
            .iter()
            .filter(|rule| !user.cluster_rules.iter().any(|u| u.label == rule.label))
            .cloned()
            .collect();
        cluster_rules.extend(user.cluster_rules.iter().cloned());
        VisualConfig {
            cluster_rules,
            node_mappings,
        }
    }

    /// Node mapping for a concrete kind, by exact "Kind/apiVersion" key.
    pub fn mapping_for(&self, kind: &str, api_version: &str) -> Option<&NodeMapping> {
        self.node_mappings.get(&format!("{kind}/{api_version}"))
    }

    /// Serialize back to the documented YAML shape.
    pub fn to_yaml(&self) -> String {
        let mut root = Mapping::new();
        if !self.cluster_rules.is_empty() {
            let clusters: Vec<Value> = self
                .cluster_rules
                .iter()
                .map(|rule| {
                    let mut m = Mapping::new();
                    m.insert(str_val("label"), str_val(&rule.label));
                    m.insert(str_val("title"), str_val(&rule.title_template));
                    if let Some(bg) = &rule.bgcolor {
                        m.insert(str_val("bgcolor"), str_val(bg));
                    }
                    Value::Mapping(m)
                })
                .collect();
            root.insert(str_val("clusters"), Value::Sequence(clusters));
        }
        if !self.node_mappings.is_empty() {
            let mut nodes = Mapping::new();
            for (key, mapping) in &self.node_mappings {
                nodes.insert(str_val(key), node_mapping_to_value(mapping));
            }
            root.insert(str_val("nodes"), Value::Mapping(nodes));
        }
        serde_yaml::to_string(&Value::Mapping(root)).expect("config serialization")
    }

    fn resolve_icon_paths(&mut self, base: &Path) {
        for mapping in self.node_mappings.values_mut() {
            if let Some(icon) = &mapping.custom_icon {
                if icon.is_relative() {
                    mapping.custom_icon = Some(base.join(icon));
                }
            }
        }
    }
}

fn str_val(s: &str) -> Value {
    Value::String(s.to_string())
}

fn node_mapping_to_value(mapping: &NodeMapping) -> Value {
    let mut m = Mapping::new();
    if let Some(scope) = mapping.scope {
        m.insert(str_val("scope"), str_val(scope.as_str()));
    }
    if let Some(icon) = &mapping.custom_icon {
        m.insert(str_val("custom_icon"), str_val(&icon.to_string_lossy()));
    }
    if !mapping.created_nodes.is_empty() {
        let mut nodes = Mapping::new();
        for rule in &mapping.created_nodes {
            let mut entry = Mapping::new();
            entry.insert(str_val("kind"), str_val(&rule.target_kind));
            entry.insert(str_val("apiVersion"), str_val(&rule.target_api_version));
            nodes.insert(str_val(&rule.field_path), Value::Mapping(entry));
        }
        m.insert(str_val("nodes"), Value::Mapping(nodes));
    }
    if !mapping.edges.is_empty() {
        let mut edges = Mapping::new();
        for rule in &mapping.edges {
            let mut entry = Mapping::new();
            entry.insert(str_val("kind"), str_val(&rule.target_kind));
            entry.insert(str_val("apiVersion"), str_val(&rule.target_api_version));
            let mut attrs = Mapping::new();
            attrs.insert(str_val("color"), str_val(&rule.attrs.color));
            attrs.insert(str_val("style"), str_val(&rule.attrs.style.to_string()));
            if let Some(xlabel) = &rule.attrs.xlabel {
                attrs.insert(str_val("xlabel"), str_val(xlabel));
            }
            if rule.attrs.direction == ArrowDirection::Up {
                attrs.insert(str_val("direction"), str_val("up"));
            }
            entry.insert(str_val("graph_attr"), Value::Mapping(attrs));
            edges.insert(str_val(&rule.field_path), Value::Mapping(entry));
        }
        m.insert(str_val("edges"), Value::Mapping(edges));
    }
    Value::Mapping(m)
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::ConfigSchema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn kind_of(value: &Value) -> &'static str {
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

fn expect_string(value: &Value, path: &str) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(schema(
            path,
            format!("expected a string, got {}", kind_of(other)),
        )),
    }
}

fn expect_mapping<'v>(value: &'v Value, path: &str) -> Result<&'v Mapping> {
    match value {
        Value::Mapping(m) => Ok(m),
        other => Err(schema(
            path,
            format!("expected a mapping, got {}", kind_of(other)),
        )),
    }
}

fn validate_field_path(path_str: &str, at: &str) -> Result<()> {
    if path_str.is_empty() || path_str.split('.').any(|seg| seg.is_empty()) {
        return Err(schema(at, format!("malformed field path `{path_str}`")));
    }
    Ok(())
}

fn validate_color(color: &str, at: &str) -> Result<()> {
    // Hex colors are checked; named colors pass through to DOT untouched.
    if let Some(hex) = color.strip_prefix('#') {
        if hex.len() != 6 || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(schema(at, format!("`{color}` is not a #RRGGBB color")));
        }
    }
    Ok(())
}

fn parse_cluster_rules(value: &Value, warnings: &mut Warnings) -> Result<Vec<ClusterRule>> {
    let seq = match value {
        Value::Sequence(seq) => seq,
        other => {
            return Err(schema(
                "clusters",
                format!("expected a sequence, got {}", kind_of(other)),
            ))
        }
    };
    let mut rules = Vec::with_capacity(seq.len());
    for (i, item) in seq.iter().enumerate() {
        let at = format!("clusters[{i}]");
        let m = expect_mapping(item, &at)?;
        let mut label = None;
        let mut title = None;
        let mut bgcolor = None;
        for (k, v) in m {
            match k.as_str() {
                Some("label") => label = Some(expect_string(v, &format!("{at}.label"))?),
                Some("title") => title = Some(expect_string(v, &format!("{at}.title"))?),
                Some("bgcolor") => bgcolor = Some(expect_string(v, &format!("{at}.bgcolor"))?),
                Some(other) => warnings.push(format!("config: unknown key `{at}.{other}`")),
                None => warnings.push(format!("config: ignoring non-string key in {at}")),
            }
        }
        let label = label.ok_or_else(|| schema(&at, "missing `label`"))?;
        let title_template = title.unwrap_or_else(|| "{}".to_string());
        if title_template.matches("{}").count() != 1 {
            return Err(schema(
                &format!("{at}.title"),
                "title must contain exactly one `{}` placeholder",
            ));
        }
        if let Some(bg) = &bgcolor {
            validate_color(bg, &format!("{at}.bgcolor"))?;
        }
        if rules.iter().any(|r: &ClusterRule| r.label == label) {
            return Err(schema(&at, format!("duplicate cluster label `{label}`")));
        }
        rules.push(ClusterRule {
            label,
            title_template,
            bgcolor,
        });
    }
    Ok(rules)
}

fn parse_node_mappings(
    value: &Value,
    warnings: &mut Warnings,
) -> Result<BTreeMap<String, NodeMapping>> {
    let m = expect_mapping(value, "nodes")?;
    let mut mappings = BTreeMap::new();
    for (key, val) in m {
        let kind_key = expect_string(key, "nodes")?;
        let at = format!("nodes.{kind_key}");
        match kind_key.split_once('/') {
            Some((kind, api)) if !kind.is_empty() && !api.is_empty() => {}
            _ => {
                return Err(schema(
                    &at,
                    "node mapping keys must look like `Kind/apiVersion`",
                ))
            }
        }
        let mapping = parse_node_mapping(&kind_key, val, &at, warnings)?;
        mappings.insert(kind_key, mapping);
    }
    Ok(mappings)
}

fn parse_node_mapping(
    kind_key: &str,
    value: &Value,
    at: &str,
    warnings: &mut Warnings,
) -> Result<NodeMapping> {
    let m = expect_mapping(value, at)?;
    let mut mapping = NodeMapping {
        kind_key: kind_key.to_string(),
        ..NodeMapping::default()
    };
    let mut raw_edges: Option<&Mapping> = None;
    for (k, v) in m {
        match k.as_str() {
            Some("scope") => {
                let s = expect_string(v, &format!("{at}.scope"))?;
                mapping.scope = Some(match s.as_str() {
                    "Namespaced" => Scope::Namespaced,
                    "Cluster" => Scope::Cluster,
                    other => {
                        return Err(schema(
                            &format!("{at}.scope"),
                            format!("`{other}` is not `Namespaced` or `Cluster`"),
                        ))
                    }
                });
            }
            Some("custom_icon") => {
                mapping.custom_icon = Some(PathBuf::from(expect_string(
                    v,
                    &format!("{at}.custom_icon"),
                )?));
            }
            Some("nodes") => {
                let nodes = expect_mapping(v, &format!("{at}.nodes"))?;
                for (fp, spec) in nodes {
                    let field_path = expect_string(fp, &format!("{at}.nodes"))?;
                    let rule_at = format!("{at}.nodes.{field_path}");
                    validate_field_path(&field_path, &rule_at)?;
                    let spec = expect_mapping(spec, &rule_at)?;
                    let mut kind = None;
                    let mut api = None;
                    for (sk, sv) in spec {
                        match sk.as_str() {
                            Some("kind") => {
                                kind = Some(expect_string(sv, &format!("{rule_at}.kind"))?)
                            }
                            Some("apiVersion") => {
                                api = Some(expect_string(sv, &format!("{rule_at}.apiVersion"))?)
                            }
                            Some(other) => {
                                warnings.push(format!("config: unknown key `{rule_at}.{other}`"))
                            }
                            None => warnings
                                .push(format!("config: ignoring non-string key in {rule_at}")),
                        }
                    }
                    mapping.created_nodes.push(CreatedNodeRule {
                        field_path,
                        target_kind: kind.ok_or_else(|| schema(&rule_at, "missing `kind`"))?,
                        target_api_version: api.unwrap_or_else(|| "v1".to_string()),
                    });
                }
            }
            Some("edges") => raw_edges = Some(expect_mapping(v, &format!("{at}.edges"))?),
            Some(other) => warnings.push(format!("config: unknown key `{at}.{other}`")),
            None => warnings.push(format!("config: ignoring non-string key in {at}")),
        }
    }
    // Edges are resolved after created-node rules so an edge on the same
    // field path may omit kind/apiVersion and inherit the created target.
    if let Some(edges) = raw_edges {
        for (fp, spec) in edges {
            let field_path = expect_string(fp, &format!("{at}.edges"))?;
            let rule_at = format!("{at}.edges.{field_path}");
            validate_field_path(&field_path, &rule_at)?;
            let rule = parse_edge_rule(
                &field_path,
                spec,
                &rule_at,
                &mapping.created_nodes,
                warnings,
            )?;
            mapping.edges.push(rule);
        }
    }
    Ok(mapping)
}

fn parse_edge_rule(
    field_path: &str,
    value: &Value,
    at: &str,
    created: &[CreatedNodeRule],
    warnings: &mut Warnings,
) -> Result<EdgeRule> {
    let m = expect_mapping(value, at)?;
    let mut kind = None;
    let mut api = None;
    let mut attrs = EdgeAttrs::default();
    for (k, v) in m {
        match k.as_str() {
            Some("kind") => kind = Some(expect_string(v, &format!("{at}.kind"))?),
            Some("apiVersion") => api = Some(expect_string(v, &format!("{at}.apiVersion"))?),
            Some("graph_attr") => {
                let ga = expect_mapping(v, &format!("{at}.graph_attr"))?;
                for (ak, av) in ga {
                    match ak.as_str() {
                        Some("color") => {
                            attrs.color = expect_string(av, &format!("{at}.graph_attr.color"))?;
                            validate_color(&attrs.color, &format!("{at}.graph_attr.color"))?;
                        }
                        Some("style") => {
                            let s = expect_string(av, &format!("{at}.graph_attr.style"))?;
                            attrs.style = match s.as_str() {
                                "solid" => LineStyle::Solid,
                                "dashed" => LineStyle::Dashed,
                                "dotted" => LineStyle::Dotted,
                                other => {
                                    return Err(schema(
                                        &format!("{at}.graph_attr.style"),
                                        format!("`{other}` is not solid/dashed/dotted"),
                                    ))
                                }
                            };
                        }
                        Some("xlabel") => {
                            attrs.xlabel =
                                Some(expect_string(av, &format!("{at}.graph_attr.xlabel"))?)
                        }
                        Some("direction") => {
                            let d = expect_string(av, &format!("{at}.graph_attr.direction"))?;
                            attrs.direction = match d.as_str() {
                                "up" => ArrowDirection::Up,
                                "down" => ArrowDirection::Down,
                                other => {
                                    return Err(schema(
                                        &format!("{at}.graph_attr.direction"),
                                        format!("`{other}` is not up/down"),
                                    ))
                                }
                            };
                        }
                        Some(other) => {
                            warnings.push(format!("config: unknown key `{at}.graph_attr.{other}`"))
                        }
                        None => warnings.push(format!(
                            "config: ignoring non-string key in {at}.graph_attr"
                        )),
                    }
                }
            }
            Some(other) => warnings.push(format!("config: unknown key `{at}.{other}`")),
            None => warnings.push(format!("config: ignoring non-string key in {at}")),
        }
    }
    let (target_kind, target_api_version) = match kind {
        Some(kind) => (kind.clone(), api.unwrap_or_else(|| "v1".to_string())),
        None => {
            // No explicit target: inherit from the created-node rule that
            // shares this field path.
            match created.iter().find(|c| c.field_path == field_path) {
                Some(c) => (c.target_kind.clone(), c.target_api_version.clone()),
                None => {
                    return Err(schema(
                        at,
                        "missing `kind` and no created-node rule shares this field path",
                    ))
                }
            }
        }
    };
    Ok(EdgeRule {
        field_path: field_path.to_string(),
        target_kind,
        target_api_version,
        attrs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const APP_CLUSTER_SNIPPET: &str = r##"clusters:
  - label: app
    title: "Application: {}"
    bgcolor: "#ECE8F6"
"##;

    const CERT_MANAGER_CONFIG: &str = r#"nodes:
  Issuer/cert-manager.io/v1:
    scope: Namespaced
    custom_icon: issuer.png
  Certificate/cert-manager.io/v1:
    scope: Namespaced
    custom_icon: certificate.png
    nodes:
      spec.secretName:
        kind: Secret
        apiVersion: v1
    edges:
      spec.issuerRef.name:
        kind: Issuer
        apiVersion: cert-manager.io/v1
        graph_attr:
          color: black
          style: solid
          direction: up
      spec.secretName:
        graph_attr:
          xlabel: create
          color: black
          style: dotted
"#;

    #[test]
    fn parses_app_cluster_snippet() {
        let mut w = Warnings::new();
        let config = VisualConfig::parse(APP_CLUSTER_SNIPPET, &mut w).unwrap();
        assert!(w.is_empty());
        assert_eq!(
            config.cluster_rules,
            vec![ClusterRule {
                label: "app".to_string(),
                title_template: "Application: {}".to_string(),
                bgcolor: Some("#ECE8F6".to_string()),
            }]
        );
    }

    #[test]
    fn parses_cert_manager_config() {
        let mut w = Warnings::new();
        let config = VisualConfig::parse(CERT_MANAGER_CONFIG, &mut w).unwrap();
        assert!(w.is_empty(), "{:?}", w.iter().collect::<Vec<_>>());
        assert_eq!(config.node_mappings.len(), 2);

        let issuer = &config.node_mappings["Issuer/cert-manager.io/v1"];
        assert_eq!(issuer.scope, Some(Scope::Namespaced));
        assert_eq!(issuer.custom_icon.as_deref(), Some(Path::new("issuer.png")));

        let cert = &config.node_mappings["Certificate/cert-manager.io/v1"];
        assert_eq!(
            cert.created_nodes,
            vec![CreatedNodeRule {
                field_path: "spec.secretName".to_string(),
                target_kind: "Secret".to_string(),
                target_api_version: "v1".to_string(),
            }]
        );
        assert_eq!(cert.edges.len(), 2);
        let issuer_edge = &cert.edges[0];
        assert_eq!(issuer_edge.field_path, "spec.issuerRef.name");
        assert_eq!(issuer_edge.target_kind, "Issuer");
        assert_eq!(issuer_edge.attrs.style, LineStyle::Solid);
        assert_eq!(issuer_edge.attrs.direction, ArrowDirection::Up);
        // The secretName edge has no explicit kind; it inherits the created
        // Secret target.
        let secret_edge = &cert.edges[1];
        assert_eq!(secret_edge.target_kind, "Secret");
        assert_eq!(secret_edge.attrs.style, LineStyle::Dotted);
        assert_eq!(secret_edge.attrs.xlabel.as_deref(), Some("create"));
    }

    #[test]
    fn empty_document_is_empty_config() {
        let mut w = Warnings::new();
        let config = VisualConfig::parse("", &mut w).unwrap();
        assert_eq!(config, VisualConfig::empty());
    }

    #[test]
    fn unknown_top_level_key_warns() {
        let mut w = Warnings::new();
        VisualConfig::parse("stuff: 1\n", &mut w).unwrap();
        assert!(w.mention("unknown top-level key `stuff`"));
    }

    #[test]
    fn wrong_shape_is_schema_error_with_path() {
        let mut w = Warnings::new();
        let err = VisualConfig::parse("clusters: 12\n", &mut w).unwrap_err();
        assert!(matches!(err, Error::ConfigSchema { ref path, .. } if path == "clusters"));

        let err = VisualConfig::parse("nodes:\n  NoSlashKey: {}\n", &mut w).unwrap_err();
        assert!(err.to_string().contains("Kind/apiVersion"), "{err}");
    }

    #[test]
    fn bad_title_template_rejected() {
        let mut w = Warnings::new();
        let err = VisualConfig::parse(
            "clusters:\n- label: app\n  title: \"no placeholder\"\n",
            &mut w,
        )
        .unwrap_err();
        assert!(err.to_string().contains("placeholder"), "{err}");
    }

    #[test]
    fn bad_hex_color_rejected_named_color_passes() {
        let mut w = Warnings::new();
        let err = VisualConfig::parse("clusters:\n- label: app\n  bgcolor: \"#12345\"\n", &mut w)
            .unwrap_err();
        assert!(err.to_string().contains("#RRGGBB"), "{err}");

        let ok =
            VisualConfig::parse("clusters:\n- label: app\n  bgcolor: lavender\n", &mut w).unwrap();
        assert_eq!(ok.cluster_rules[0].bgcolor.as_deref(), Some("lavender"));
    }

    #[test]
    fn merge_identity_and_replacement() {
        let builtin = VisualConfig::builtin();
        assert_eq!(builtin.merge(&VisualConfig::empty()), builtin);

        let mut w = Warnings::new();
        let user = VisualConfig::parse(
            "nodes:\n  Pod/v1:\n    edges:\n      spec.nodeName: {kind: Node, apiVersion: v1}\n",
            &mut w,
        )
        .unwrap();
        let merged = builtin.merge(&user);
        // wholesale replacement: only the user's single edge rule remains
        assert_eq!(merged.node_mappings["Pod/v1"].edges.len(), 1);
        assert_eq!(merged.node_mappings["Pod/v1"].edges[0].target_kind, "Node");
    }

    #[test]
    fn merge_unions_disjoint_keys() {
        // three-key fixture checked by exhaustive key comparison
        fn cfg(keys: &[&str]) -> VisualConfig {
            let mut c = VisualConfig::empty();
            for k in keys {
                c.node_mappings.insert(
                    k.to_string(),
                    NodeMapping {
                        kind_key: k.to_string(),
                        ..NodeMapping::default()
                    },
                );
            }
            c
        }
        let a = cfg(&["A/v1", "B/v1"]);
        let b = cfg(&["C/example.com/v1"]);
        let merged = a.merge(&b);
        let keys: Vec<&str> = merged.node_mappings.keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["A/v1", "B/v1", "C/example.com/v1"]);
    }

    #[test]
    fn builtin_config_parses_and_covers_pod_rules() {
        let builtin = VisualConfig::builtin();
        let pod = &builtin.node_mappings["Pod/v1"];
        let paths: Vec<&str> = pod.edges.iter().map(|e| e.field_path.as_str()).collect();
        assert!(paths.contains(&"spec.volumes.*.configMap.name"));
        assert!(paths.contains(&"spec.volumes.*.secret.secretName"));
        assert!(paths.contains(&"spec.volumes.*.persistentVolumeClaim.claimName"));
        assert!(paths.contains(&"spec.serviceAccountName"));
        assert!(paths.contains(&"spec.containers.*.env.*.valueFrom.secretKeyRef.name"));
    }

    fn arb_config() -> impl Strategy<Value = VisualConfig> {
        let rule = (
            "[a-z]{1,8}",
            "[A-Za-z ]{0,10}",
            proptest::option::of("#[0-9A-F]{6}"),
        )
            .prop_map(|(label, prefix, bgcolor)| ClusterRule {
                label,
                title_template: format!("{prefix}{{}}"),
                bgcolor,
            });
        let edge = ("[a-z]{1,6}(\\.[a-z*]{1,6}){0,3}", "[A-Z][a-z]{1,8}").prop_map(
            |(field_path, kind)| EdgeRule {
                field_path,
                target_kind: kind,
                target_api_version: "v1".to_string(),
                attrs: EdgeAttrs::default(),
            },
        );
        let mapping =
            ("[A-Z][a-z]{1,8}", prop::collection::vec(edge, 0..3)).prop_map(|(kind, edges)| {
                let kind_key = format!("{kind}/example.com/v1");
                NodeMapping {
                    kind_key,
                    scope: Some(Scope::Namespaced),
                    custom_icon: None,
                    created_nodes: vec![],
                    edges,
                }
            });
        (
            prop::collection::vec(rule, 0..3),
            prop::collection::vec(mapping, 0..3),
        )
            .prop_map(|(mut rules, mappings)| {
                rules.dedup_by(|a, b| a.label == b.label);
                let mut unique = Vec::new();
                for r in rules {
                    if !unique.iter().any(|u: &ClusterRule| u.label == r.label) {
                        unique.push(r);
                    }
                }
                VisualConfig {
                    cluster_rules: unique,
                    node_mappings: mappings
                        .into_iter()
                        .map(|m| (m.kind_key.clone(), m))
                        .collect(),
                }
            })
    }

    proptest! {
        #[test]
        fn yaml_round_trip_is_identity(config in arb_config()) {
            let mut w = Warnings::new();
            let reparsed = VisualConfig::parse(&config.to_yaml(), &mut w).unwrap();
            prop_assert_eq!(reparsed, config);
        }

        #[test]
        fn merge_is_associative_on_node_mappings(
            a in arb_config(), b in arb_config(), c in arb_config()
        ) {
            let left = a.merge(&b).merge(&c);
            let right = a.merge(&b.merge(&c));
            prop_assert_eq!(left.node_mappings, right.node_mappings);
        }
    }
}
