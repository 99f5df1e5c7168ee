use std::collections::HashSet;

/// Ordered, deduplicated collector for non-fatal diagnostics.
///
/// Pipeline stages push messages here instead of printing; the CLIs flush
/// the collected entries to stderr so stdout stays clean for diagram bytes.
#[derive(Debug, Default)]
pub struct Warnings {
    entries: Vec<String>,
    seen: HashSet<String>,
}

impl Warnings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a warning. Exact duplicates are dropped so repeated lookups of
    /// the same unknown kind do not flood the output.
    pub fn push(&mut self, message: impl Into<String>) {
        let message = message.into();
        if self.seen.insert(message.clone()) {
            self.entries.push(message);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True if any recorded message contains the given needle.
    pub fn mention(&self, needle: &str) -> bool {
        self.entries.iter().any(|m| m.contains(needle))
    }
}
