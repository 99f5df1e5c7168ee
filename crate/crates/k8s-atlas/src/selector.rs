//! Label selector evaluation (`matchLabels` plus `matchExpressions`).

use std::collections::BTreeMap;

use serde_yaml::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectorOperator {
    In,
    NotIn,
    Exists,
    DoesNotExist,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorRequirement {
    pub key: String,
    pub operator: SelectorOperator,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelSelector {
    pub match_labels: BTreeMap<String, String>,
    pub match_expressions: Vec<SelectorRequirement>,
}

impl LabelSelector {
    pub fn is_empty(&self) -> bool {
        self.match_labels.is_empty() && self.match_expressions.is_empty()
    }

    /// Parse the full selector shape: `{matchLabels: ..., matchExpressions: ...}`.
    /// Returns `None` when the value is not a mapping.
    pub fn from_value(value: &Value) -> Option<LabelSelector> {
        let map = value.as_mapping()?;
        let mut selector = LabelSelector::default();
        if let Some(labels) = map.get(Value::from("matchLabels")) {
            selector.match_labels = scalar_map(labels);
        }
        if let Some(Value::Sequence(exprs)) = map.get(Value::from("matchExpressions")) {
            for expr in exprs {
                let key = expr.get("key")?.as_str()?.to_string();
                let operator = match expr.get("operator")?.as_str()? {
                    "In" => SelectorOperator::In,
                    "NotIn" => SelectorOperator::NotIn,
                    "Exists" => SelectorOperator::Exists,
                    "DoesNotExist" => SelectorOperator::DoesNotExist,
                    _ => return None,
                };
                let values = match expr.get("values") {
                    Some(Value::Sequence(vs)) => vs
                        .iter()
                        .filter_map(|v| v.as_str().map(str::to_string))
                        .collect(),
                    _ => Vec::new(),
                };
                selector.match_expressions.push(SelectorRequirement {
                    key,
                    operator,
                    values,
                });
            }
        }
        Some(selector)
    }

    /// Parse a bare label map (the `spec.selector` of a Service).
    pub fn from_match_labels(value: &Value) -> Option<LabelSelector> {
        value.as_mapping()?;
        Some(LabelSelector {
            match_labels: scalar_map(value),
            match_expressions: Vec::new(),
        })
    }
}

fn scalar_map(value: &Value) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let Value::Mapping(map) = value {
        for (k, v) in map {
            let Some(key) = k.as_str() else { continue };
            let val = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                _ => continue,
            };
            out.insert(key.to_string(), val);
        }
    }
    out
}

/// Evaluate a selector against a label set.
///
/// All `matchLabels` pairs and all `matchExpressions` must hold. An empty
/// selector matches nothing: drawing an edge to every pod in the namespace
/// would be diagram noise, so this deliberately diverges from the API
/// server's empty-selector-matches-all rule.
pub fn matches_selector(selector: &LabelSelector, labels: &BTreeMap<String, String>) -> bool {
    if selector.is_empty() {
        return false;
    }
    for (key, value) in &selector.match_labels {
        if labels.get(key) != Some(value) {
            return false;
        }
    }
    for expr in &selector.match_expressions {
        let current = labels.get(&expr.key);
        let ok = match expr.operator {
            SelectorOperator::In => current.is_some_and(|v| expr.values.contains(v)),
            SelectorOperator::NotIn => current.is_none_or(|v| !expr.values.contains(v)),
            SelectorOperator::Exists => current.is_some(),
            SelectorOperator::DoesNotExist => current.is_none(),
        };
        if !ok {
            return false;
        }
    }
    true
}
