//! Assignment of graph nodes to nested visual clusters.
//!
//! The hierarchy is: Kubernetes cluster ⊃ namespace ⊃ instance ⊃ Helm chart
//! ⊃ application ⊃ component, with user-defined label clusters nested
//! innermost. Levels whose driving label is absent are skipped, so no empty
//! containers appear.

use crate::config::{ClusterRule, VisualConfig};
use crate::graph::ResourceGraph;
use crate::resource::ResourceId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClusterLevel {
    K8sCluster,
    Namespace,
    Instance,
    HelmChart,
    Application,
    Component,
    /// User-defined level; the index is the rule's position in the merged
    /// config, so later rules nest deeper.
    Custom(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Border {
    Solid,
    Dashed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterStyle {
    pub bgcolor: Option<String>,
    pub border: Border,
}

#[derive(Debug, Clone)]
pub struct ClusterNode {
    pub level: ClusterLevel,
    /// Namespace name or label value identifying this cluster among its
    /// siblings.
    pub key: String,
    pub title: String,
    pub style: ClusterStyle,
    pub children: Vec<ClusterNode>,
    pub members: Vec<ResourceId>,
}

impl ClusterNode {
    fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ClusterNode::depth)
            .max()
            .unwrap_or(0)
    }

    fn sort_recursively(&mut self) {
        self.members.sort();
        self.children
            .sort_by(|a, b| (a.level, &a.key).cmp(&(b.level, &b.key)));
        for child in &mut self.children {
            child.sort_recursively();
        }
    }

    fn collect_members<'n>(&'n self, out: &mut Vec<&'n ResourceId>) {
        out.extend(self.members.iter());
        for child in &self.children {
            child.collect_members(out);
        }
    }
}

/// The full nesting, plus nodes that sit outside every cluster.
#[derive(Debug, Clone, Default)]
pub struct ClusterTree {
    pub clusters: Vec<ClusterNode>,
    pub loose: Vec<ResourceId>,
}

impl ClusterTree {
    /// Maximum nesting depth (a lone namespace cluster has depth 1).
    pub fn depth(&self) -> usize {
        self.clusters
            .iter()
            .map(ClusterNode::depth)
            .max()
            .unwrap_or(0)
    }

    /// Every member across the whole tree, including loose nodes.
    pub fn all_members(&self) -> Vec<&ResourceId> {
        let mut out: Vec<&ResourceId> = self.loose.iter().collect();
        for cluster in &self.clusters {
            cluster.collect_members(&mut out);
        }
        out
    }

    /// Depth-first search for the cluster whose members contain `id`.
    pub fn cluster_of(&self, id: &ResourceId) -> Option<&ClusterNode> {
        fn walk<'t>(node: &'t ClusterNode, id: &ResourceId) -> Option<&'t ClusterNode> {
            if node.members.contains(id) {
                return Some(node);
            }
            node.children.iter().find_map(|c| walk(c, id))
        }
        self.clusters.iter().find_map(|c| walk(c, id))
    }
}

/// Substitute the label value into a cluster rule's title template.
pub fn render_title(rule: &ClusterRule, label_value: &str) -> String {
    rule.title_template.replacen("{}", label_value, 1)
}

const K8S_CLUSTER_BG: &str = "#E3F2FD";
const INSTANCE_BG: &str = "#FFF3E0";
const CHART_BG: &str = "#E8F5E9";
const APPLICATION_BG: &str = "#EDE7F6";
const COMPONENT_BG: &str = "#E0F7FA";

struct PathSeg {
    level: ClusterLevel,
    key: String,
    title: String,
    style: ClusterStyle,
}

fn level_seg(level: ClusterLevel, value: &str) -> PathSeg {
    let bgcolor = match level {
        ClusterLevel::Instance => INSTANCE_BG,
        ClusterLevel::HelmChart => CHART_BG,
        ClusterLevel::Application => APPLICATION_BG,
        ClusterLevel::Component => COMPONENT_BG,
        _ => unreachable!("level_seg is only used for label-driven levels"),
    };
    PathSeg {
        level,
        key: value.to_string(),
        title: value.to_string(),
        style: ClusterStyle {
            bgcolor: Some(bgcolor.to_string()),
            border: Border::Solid,
        },
    }
}

/// Assign every graph node to its deepest cluster. With `top_level` the
/// whole diagram is wrapped in one Kubernetes-cluster container.
pub fn assign_clusters(
    graph: &ResourceGraph,
    config: &VisualConfig,
    top_level: bool,
) -> ClusterTree {
    // A label key claimed by a user rule stops driving its built-in level;
    // the user rule takes the key over (title, color, nesting position).
    let claimed: Vec<&str> = config
        .cluster_rules
        .iter()
        .map(|r| r.label.as_str())
        .collect();
    let unclaimed =
        |key: &'static str| -> Option<&'static str> { (!claimed.contains(&key)).then_some(key) };

    let mut tree = ClusterTree::default();
    for record in graph.nodes.values() {
        let id = record.id();
        let mut path: Vec<PathSeg> = Vec::new();

        let namespace_key = if id.kind == "Namespace" {
            // A Namespace resource is the cluster it names.
            Some(id.name.clone())
        } else {
            id.namespace.clone()
        };
        if let Some(ns) = &namespace_key {
            path.push(PathSeg {
                level: ClusterLevel::Namespace,
                key: ns.clone(),
                title: ns.clone(),
                style: ClusterStyle {
                    bgcolor: None,
                    border: Border::Dashed,
                },
            });

            if id.kind != "Namespace" {
                let labels = record.labels();
                let label = |key: Option<&str>| -> Option<String> {
                    labels.and_then(|l| key.and_then(|k| l.get(k).cloned()))
                };
                if let Some(value) = label(unclaimed("app.kubernetes.io/instance")) {
                    path.push(level_seg(ClusterLevel::Instance, &value));
                }
                if let Some(value) = label(unclaimed("helm.sh/chart")) {
                    path.push(level_seg(ClusterLevel::HelmChart, &value));
                }
                if let Some(value) =
                    label(unclaimed("app.kubernetes.io/name")).or_else(|| label(unclaimed("app")))
                {
                    path.push(level_seg(ClusterLevel::Application, &value));
                }
                if let Some(value) = label(unclaimed("app.kubernetes.io/component"))
                    .or_else(|| label(unclaimed("tier")))
                {
                    path.push(level_seg(ClusterLevel::Component, &value));
                }
                for (i, rule) in config.cluster_rules.iter().enumerate() {
                    if let Some(value) = labels.and_then(|l| l.get(&rule.label)) {
                        path.push(PathSeg {
                            level: ClusterLevel::Custom(i),
                            key: value.clone(),
                            title: render_title(rule, value),
                            style: ClusterStyle {
                                bgcolor: rule.bgcolor.clone(),
                                border: Border::Solid,
                            },
                        });
                    }
                }
            }
        }

        insert(&mut tree.clusters, &mut tree.loose, &path, id.clone());
    }

    if top_level {
        let mut root = ClusterNode {
            level: ClusterLevel::K8sCluster,
            key: String::new(),
            title: "Kubernetes cluster".to_string(),
            style: ClusterStyle {
                bgcolor: Some(K8S_CLUSTER_BG.to_string()),
                border: Border::Solid,
            },
            children: std::mem::take(&mut tree.clusters),
            members: std::mem::take(&mut tree.loose),
        };
        root.sort_recursively();
        tree.clusters = vec![root];
    } else {
        for cluster in &mut tree.clusters {
            cluster.sort_recursively();
        }
        tree.clusters
            .sort_by(|a, b| (a.level, &a.key).cmp(&(b.level, &b.key)));
        tree.loose.sort();
    }
    tree
}

fn insert(
    children: &mut Vec<ClusterNode>,
    members: &mut Vec<ResourceId>,
    path: &[PathSeg],
    id: ResourceId,
) {
    let Some(seg) = path.first() else {
        members.push(id);
        return;
    };
    let node = match children
        .iter_mut()
        .find(|c| c.level == seg.level && c.key == seg.key)
    {
        Some(existing) => existing,
        None => {
            children.push(ClusterNode {
                level: seg.level,
                key: seg.key.clone(),
                title: seg.title.clone(),
                style: seg.style.clone(),
                children: Vec::new(),
                members: Vec::new(),
            });
            children.last_mut().expect("just pushed")
        }
    };
    let (child_children, child_members) = (&mut node.children, &mut node.members);
    insert(child_children, child_members, &path[1..], id);
}
