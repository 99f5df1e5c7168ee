//! The registry of known resource kinds: scope, short alias, icon, and the
//! built-in reference rules that cannot be expressed in the config schema.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::config::TypedRefRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    Namespaced,
    Cluster,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Namespaced => "Namespaced",
            Scope::Cluster => "Cluster",
        }
    }
}

/// Which icon a node carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IconRef {
    /// One of the bundled icons, keyed by kind alias.
    Bundled(String),
    /// A user-supplied icon file (from `custom_icon` in a config).
    File(PathBuf),
    /// The generic unknown-kind icon.
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindDescriptor {
    /// "Kind" for version-agnostic built-ins, "Kind/apiVersion" otherwise.
    pub kind_key: String,
    pub scope: Scope,
    pub alias: String,
    pub icon: IconRef,
    /// References whose target kind is read from the reference object.
    pub builtin_edge_rules: Vec<TypedRefRule>,
}

pub struct Registry {
    entries: Vec<KindDescriptor>,
    by_key: BTreeMap<String, usize>,
}

// (kind, scope, alias) for every built-in kind. Entries are registered
// version-agnostically: the visual identity of a kind does not change
// across API version churn.
const BUILTIN_KINDS: &[(&str, Scope, &str)] = &[
    // workloads
    ("Pod", Scope::Namespaced, "pod"),
    ("Deployment", Scope::Namespaced, "deploy"),
    ("StatefulSet", Scope::Namespaced, "sts"),
    ("DaemonSet", Scope::Namespaced, "ds"),
    ("Job", Scope::Namespaced, "job"),
    ("CronJob", Scope::Namespaced, "cj"),
    ("ReplicationController", Scope::Namespaced, "rc"),
    ("ReplicaSet", Scope::Namespaced, "rs"),
    ("PodTemplate", Scope::Namespaced, "pt"),
    // configuration
    ("ConfigMap", Scope::Namespaced, "cm"),
    ("Secret", Scope::Namespaced, "secret"),
    // scaling
    ("HorizontalPodAutoscaler", Scope::Namespaced, "hpa"),
    ("VerticalPodAutoscaler", Scope::Namespaced, "vpa"),
    // policies
    ("LimitRange", Scope::Namespaced, "limits"),
    ("PodDisruptionBudget", Scope::Namespaced, "pdb"),
    ("PodSecurityPolicy", Scope::Cluster, "psp"),
    ("ResourceQuota", Scope::Namespaced, "quota"),
    // network
    ("Service", Scope::Namespaced, "svc"),
    ("Endpoints", Scope::Namespaced, "ep"),
    ("EndpointSlice", Scope::Namespaced, "eps"),
    ("Ingress", Scope::Namespaced, "ing"),
    ("IngressClass", Scope::Cluster, "ic"),
    ("NetworkPolicy", Scope::Namespaced, "netpol"),
    ("NetworkAttachmentDefinition", Scope::Namespaced, "nad"),
    // storage
    ("PersistentVolume", Scope::Cluster, "pv"),
    ("PersistentVolumeClaim", Scope::Namespaced, "pvc"),
    ("StorageClass", Scope::Cluster, "sc"),
    ("VolumeAttachment", Scope::Cluster, "va"),
    ("CSINode", Scope::Cluster, "csin"),
    ("CSIDriver", Scope::Cluster, "csid"),
    ("CSIStorageCapacity", Scope::Namespaced, "csisc"),
    // RBAC
    ("ServiceAccount", Scope::Namespaced, "sa"),
    ("Role", Scope::Namespaced, "role"),
    ("RoleBinding", Scope::Namespaced, "rb"),
    ("ClusterRole", Scope::Cluster, "c.role"),
    ("ClusterRoleBinding", Scope::Cluster, "crb"),
    ("User", Scope::Cluster, "user"),
    ("Group", Scope::Cluster, "group"),
    // control plane
    ("Node", Scope::Cluster, "node"),
    ("Namespace", Scope::Cluster, "ns"),
    ("PriorityClass", Scope::Cluster, "pc"),
    ("RuntimeClass", Scope::Cluster, "rtc"),
    ("APIService", Scope::Cluster, "apisvc"),
    ("Lease", Scope::Namespaced, "lease"),
    // API extension machinery
    ("CustomResourceDefinition", Scope::Cluster, "crd"),
    ("ValidatingWebhookConfiguration", Scope::Cluster, "vwc"),
    ("MutatingWebhookConfiguration", Scope::Cluster, "mwc"),
];

impl Registry {
    /// The built-in registry covering the standard resource kinds.
    pub fn builtin() -> Registry {
        let mut entries = Vec::with_capacity(BUILTIN_KINDS.len());
        for (kind, scope, alias) in BUILTIN_KINDS {
            entries.push(KindDescriptor {
                kind_key: (*kind).to_string(),
                scope: *scope,
                alias: (*alias).to_string(),
                icon: IconRef::Bundled((*alias).to_string()),
                builtin_edge_rules: typed_ref_rules(kind),
            });
        }
        let by_key = entries
            .iter()
            .enumerate()
            .map(|(i, d)| (d.kind_key.clone(), i))
            .collect();
        Registry { entries, by_key }
    }

    /// Exact "Kind/apiVersion" match first, then the version-agnostic kind.
    pub fn lookup(&self, kind: &str, api_version: &str) -> Option<&KindDescriptor> {
        self.by_key
            .get(&format!("{kind}/{api_version}"))
            .or_else(|| self.by_key.get(kind))
            .map(|&i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &KindDescriptor> {
        self.entries.iter()
    }
}

fn typed_ref_rules(kind: &str) -> Vec<TypedRefRule> {
    match kind {
        "HorizontalPodAutoscaler" => vec![TypedRefRule::new("spec.scaleTargetRef")],
        "VerticalPodAutoscaler" => vec![TypedRefRule::new("spec.targetRef")],
        "RoleBinding" | "ClusterRoleBinding" => vec![
            TypedRefRule {
                object_path: "roleRef".to_string(),
                default_kind: Some("Role".to_string()),
                attrs: Default::default(),
            },
            TypedRefRule {
                object_path: "subjects.*".to_string(),
                default_kind: Some("ServiceAccount".to_string()),
                attrs: Default::default(),
            },
        ],
        _ => Vec::new(),
    }
}
