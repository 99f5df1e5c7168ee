//! Typed resource records parsed from raw YAML documents.

use std::collections::BTreeMap;
use std::fmt;

use serde_yaml::Value;

use crate::config::VisualConfig;
use crate::error::{Error, Result};
use crate::registry::{IconRef, KindDescriptor, Registry, Scope};
use crate::source::SourceSpec;
use crate::warnings::Warnings;

/// Deduplication identity of a resource: two documents with equal ids are
/// the same node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResourceId {
    pub kind: String,
    pub api_version: String,
    /// Present exactly for namespaced kinds.
    pub namespace: Option<String>,
    pub name: String,
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.namespace {
            Some(ns) => write!(f, "{} {}/{}", self.kind, ns, self.name),
            None => write!(f, "{} {}", self.kind, self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwnerRef {
    pub kind: String,
    pub api_version: String,
    pub name: String,
    pub uid: Option<String>,
}

/// One parsed Kubernetes object.
#[derive(Debug, Clone)]
pub struct Resource {
    pub id: ResourceId,
    pub labels: BTreeMap<String, String>,
    pub owner_refs: Vec<OwnerRef>,
    /// The full parsed document; reference rules walk into this.
    pub body: Value,
    pub origin: SourceSpec,
}

/// Resolve the effective descriptor for a kind.
///
/// Lookup order: user/builtin config node mappings (exact "Kind/apiVersion"
/// key), then the built-in registry, then a fallback descriptor with the
/// generic icon. Only the fallback warns; it is never an error.
pub fn classify_kind(
    kind: &str,
    api_version: &str,
    registry: &Registry,
    config: &VisualConfig,
    warnings: &mut Warnings,
) -> KindDescriptor {
    let mapping = config.mapping_for(kind, api_version);
    let registered = registry.lookup(kind, api_version);

    if mapping.is_none() && registered.is_none() {
        warnings.push(format!(
            "unknown kind {kind}/{api_version}: using generic icon and Namespaced scope"
        ));
    }

    let scope = mapping
        .and_then(|m| m.scope)
        .or_else(|| registered.map(|d| d.scope))
        .unwrap_or(Scope::Namespaced);
    let alias = registered
        .map(|d| d.alias.clone())
        .unwrap_or_else(|| kind.to_lowercase());
    let icon = match mapping.and_then(|m| m.custom_icon.clone()) {
        Some(path) => IconRef::File(path),
        None => match registered {
            Some(d) => d.icon.clone(),
            None => IconRef::Generic,
        },
    };
    KindDescriptor {
        kind_key: format!("{kind}/{api_version}"),
        scope,
        alias,
        icon,
        builtin_edge_rules: registered
            .map(|d| d.builtin_edge_rules.clone())
            .unwrap_or_default(),
    }
}

/// Parse one document into a [`Resource`].
///
/// Namespace resolution: namespaced kinds default to "default" when
/// `metadata.namespace` is absent; cluster-scoped kinds never carry a
/// namespace, even if the manifest has a spurious one.
pub fn parse_resource(
    doc: &Value,
    registry: &Registry,
    config: &VisualConfig,
    origin: &SourceSpec,
    warnings: &mut Warnings,
) -> Result<Resource> {
    let origin_desc = origin.describe();
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or(Error::MissingIdentity {
            field: "kind",
            origin: origin_desc.clone(),
        })?
        .to_string();
    let api_version = doc
        .get("apiVersion")
        .and_then(Value::as_str)
        .ok_or(Error::MissingIdentity {
            field: "apiVersion",
            origin: origin_desc.clone(),
        })?
        .to_string();
    let metadata = doc.get("metadata");
    let name = metadata
        .and_then(|m| m.get("name"))
        .and_then(Value::as_str)
        .ok_or(Error::MissingIdentity {
            field: "metadata.name",
            origin: origin_desc.clone(),
        })?
        .to_string();

    let descriptor = classify_kind(&kind, &api_version, registry, config, warnings);
    let namespace = match descriptor.scope {
        Scope::Cluster => None,
        Scope::Namespaced => Some(
            metadata
                .and_then(|m| m.get("namespace"))
                .and_then(Value::as_str)
                .unwrap_or("default")
                .to_string(),
        ),
    };

    let labels = parse_labels(metadata, &kind, &name, warnings);
    let owner_refs = parse_owner_refs(metadata);

    Ok(Resource {
        id: ResourceId {
            kind,
            api_version,
            namespace,
            name,
        },
        labels,
        owner_refs,
        body: doc.clone(),
        origin: origin.clone(),
    })
}

fn parse_labels(
    metadata: Option<&Value>,
    kind: &str,
    name: &str,
    warnings: &mut Warnings,
) -> BTreeMap<String, String> {
    let mut labels = BTreeMap::new();
    let Some(Value::Mapping(map)) = metadata.and_then(|m| m.get("labels")) else {
        return labels;
    };
    for (k, v) in map {
        let Some(key) = k.as_str() else { continue };
        match v {
            Value::String(s) => {
                labels.insert(key.to_string(), s.clone());
            }
            Value::Number(n) => {
                labels.insert(key.to_string(), n.to_string());
            }
            Value::Bool(b) => {
                labels.insert(key.to_string(), b.to_string());
            }
            _ => warnings.push(format!(
                "{kind} {name}: label {key} has a non-scalar value, ignored"
            )),
        }
    }
    labels
}

fn parse_owner_refs(metadata: Option<&Value>) -> Vec<OwnerRef> {
    let Some(Value::Sequence(refs)) = metadata.and_then(|m| m.get("ownerReferences")) else {
        return Vec::new();
    };
    refs.iter()
        .filter_map(|r| {
            let kind = r.get("kind")?.as_str()?.to_string();
            let name = r.get("name")?.as_str()?.to_string();
            Some(OwnerRef {
                kind,
                api_version: r
                    .get("apiVersion")
                    .and_then(Value::as_str)
                    .unwrap_or("v1")
                    .to_string(),
                name,
                uid: r.get("uid").and_then(Value::as_str).map(str::to_string),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(yaml: &str) -> Result<Resource> {
        let doc: Value = serde_yaml::from_str(yaml).unwrap();
        let mut warnings = Warnings::new();
        parse_resource(
            &doc,
            &Registry::builtin(),
            &VisualConfig::empty(),
            &SourceSpec::stdin(),
            &mut warnings,
        )
    }

    #[test]
    fn namespaced_kind_defaults_to_default_namespace() {
        let r =
            parse("apiVersion: apps/v1\nkind: Deployment\nmetadata: {name: wordpress}\n").unwrap();
        assert_eq!(r.id.namespace.as_deref(), Some("default"));
    }

    #[test]
    fn cluster_scoped_kind_drops_spurious_namespace() {
        let r = parse(
            "apiVersion: v1\nkind: PersistentVolume\nmetadata: {name: pv1, namespace: oops}\n",
        )
        .unwrap();
        assert_eq!(r.id.namespace, None);
    }

    #[test]
    fn issuer_from_custom_config_is_namespaced() {
        let doc: Value = serde_yaml::from_str(
            "apiVersion: cert-manager.io/v1\nkind: Issuer\nmetadata:\n  name: selfsigned-issuer\nspec:\n  selfSigned: {}\n",
        )
        .unwrap();
        let mut warnings = Warnings::new();
        let config = VisualConfig::parse(
            "nodes:\n  Issuer/cert-manager.io/v1:\n    scope: Namespaced\n    custom_icon: issuer.png\n",
            &mut warnings,
        )
        .unwrap();
        let r = parse_resource(
            &doc,
            &Registry::builtin(),
            &config,
            &SourceSpec::stdin(),
            &mut warnings,
        )
        .unwrap();
        assert_eq!(
            r.id,
            ResourceId {
                kind: "Issuer".to_string(),
                api_version: "cert-manager.io/v1".to_string(),
                namespace: Some("default".to_string()),
                name: "selfsigned-issuer".to_string(),
            }
        );
        assert!(warnings.is_empty(), "configured kinds must not warn");
    }

    #[test]
    fn missing_name_is_an_identity_error() {
        let err = parse("apiVersion: v1\nkind: Pod\nmetadata: {labels: {a: b}}\n").unwrap_err();
        assert!(matches!(
            err,
            Error::MissingIdentity {
                field: "metadata.name",
                ..
            }
        ));
    }

    #[test]
    fn unknown_kind_falls_back_with_warning() {
        let mut warnings = Warnings::new();
        let d = classify_kind(
            "FooBar",
            "example.com/v1",
            &Registry::builtin(),
            &VisualConfig::empty(),
            &mut warnings,
        );
        assert_eq!(d.alias, "foobar");
        assert_eq!(d.scope, Scope::Namespaced);
        assert_eq!(d.icon, IconRef::Generic);
        assert!(warnings.mention("unknown kind FooBar/example.com/v1"));
    }

    #[test]
    fn custom_config_icon_wins_over_registry() {
        let mut warnings = Warnings::new();
        let config = VisualConfig::parse(
            "nodes:\n  Certificate/cert-manager.io/v1:\n    scope: Namespaced\n    custom_icon: certificate.png\n",
            &mut warnings,
        )
        .unwrap();
        let d = classify_kind(
            "Certificate",
            "cert-manager.io/v1",
            &Registry::builtin(),
            &config,
            &mut warnings,
        );
        assert_eq!(
            d.icon,
            IconRef::File(std::path::PathBuf::from("certificate.png"))
        );
    }

    #[test]
    fn owner_refs_mirror_metadata() {
        let r = parse(
            "apiVersion: v1\nkind: Pod\nmetadata:\n  name: p\n  ownerReferences:\n  - apiVersion: batch/v1\n    kind: Job\n    name: pi\n    uid: abc-123\n",
        )
        .unwrap();
        assert_eq!(
            r.owner_refs,
            vec![OwnerRef {
                kind: "Job".to_string(),
                api_version: "batch/v1".to_string(),
                name: "pi".to_string(),
                uid: Some("abc-123".to_string()),
            }]
        );
    }
}
