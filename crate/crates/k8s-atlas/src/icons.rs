//! Bundled icon assets and icon staging.
//!
//! Emitted DOT references icons by the relative path `icons/<file>.png`;
//! before rendering, the pipeline materializes the referenced files into an
//! `icons/` directory next to the DOT (or in a staging directory used as
//! the layout engine's working directory). Keeping the DOT paths relative
//! and content-independent keeps the DOT output byte-stable.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::config::VisualConfig;
use crate::error::{Error, Result};
use crate::graph::ResourceGraph;
use crate::registry::{IconRef, Registry};
use crate::resource::classify_kind;
use crate::warnings::Warnings;

macro_rules! bundled {
    ($($alias:literal),* $(,)?) => {
        &[ $( ($alias, include_bytes!(concat!("../assets/icons/", $alias, ".png")) as &[u8]) ),* ]
    };
}

/// Alias-keyed PNG assets compiled into the binary.
pub static BUNDLED_ICONS: &[(&str, &[u8])] = bundled![
    "apisvc", "c.role", "cj", "cm", "crb", "crd", "csid", "csin", "csisc", "deploy", "ds", "ep",
    "eps", "group", "hpa", "ic", "ing", "job", "lease", "limits", "mwc", "nad", "netpol", "node",
    "ns", "pc", "pdb", "pod", "psp", "pt", "pv", "pvc", "quota", "rb", "rc", "role", "rs", "rtc",
    "sa", "sc", "secret", "sts", "svc", "unknown", "user", "va", "vpa", "vwc",
];

pub fn bundled_bytes(alias: &str) -> Option<&'static [u8]> {
    BUNDLED_ICONS
        .iter()
        .find(|(name, _)| *name == alias)
        .map(|(_, bytes)| *bytes)
}

const GENERIC: &str = "unknown";

/// File name (inside `icons/`) for an icon reference.
pub fn file_name(icon: &IconRef) -> String {
    match icon {
        IconRef::Bundled(alias) if bundled_bytes(alias).is_some() => format!("{alias}.png"),
        IconRef::Bundled(_) | IconRef::Generic => format!("{GENERIC}.png"),
        IconRef::File(path) => path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| format!("{GENERIC}.png")),
    }
}

/// The relative path written into DOT `IMG SRC` attributes.
pub fn dot_src(icon: &IconRef) -> String {
    format!("icons/{}", file_name(icon))
}

/// Where an icon file's bytes come from when staged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IconSource {
    Embedded(&'static [u8]),
    File(PathBuf),
}

/// Collect every icon file the graph's nodes reference, keyed by file name.
pub fn manifest(
    graph: &ResourceGraph,
    config: &VisualConfig,
    registry: &Registry,
    warnings: &mut Warnings,
) -> BTreeMap<String, IconSource> {
    let mut out = BTreeMap::new();
    for record in graph.nodes.values() {
        let id = record.id();
        let descriptor = classify_kind(&id.kind, &id.api_version, registry, config, warnings);
        let name = file_name(&descriptor.icon);
        let source = match &descriptor.icon {
            IconRef::File(path) => IconSource::File(path.clone()),
            IconRef::Bundled(alias) => match bundled_bytes(alias) {
                Some(bytes) => IconSource::Embedded(bytes),
                None => IconSource::Embedded(bundled_bytes(GENERIC).expect("generic icon")),
            },
            IconRef::Generic => IconSource::Embedded(bundled_bytes(GENERIC).expect("generic icon")),
        };
        if let Some(existing) = out.get(&name) {
            if existing != &source {
                warnings.push(format!(
                    "icon file name collision on {name}: keeping the first source"
                ));
            }
            continue;
        }
        out.insert(name, source);
    }
    out
}

/// Write the referenced icons into `<dir>/icons/`. A missing custom icon
/// file degrades to the generic icon with a warning.
pub fn materialize(
    manifest: &BTreeMap<String, IconSource>,
    dir: &Path,
    warnings: &mut Warnings,
) -> Result<()> {
    if manifest.is_empty() {
        return Ok(());
    }
    let icon_dir = dir.join("icons");
    std::fs::create_dir_all(&icon_dir).map_err(|e| Error::io(&icon_dir, e))?;
    for (name, source) in manifest {
        let dest = icon_dir.join(name);
        match source {
            IconSource::Embedded(bytes) => {
                std::fs::write(&dest, bytes).map_err(|e| Error::io(&dest, e))?;
            }
            IconSource::File(path) => match std::fs::read(path) {
                Ok(bytes) => {
                    std::fs::write(&dest, bytes).map_err(|e| Error::io(&dest, e))?;
                }
                Err(_) => {
                    warnings.push(format!(
                        "icon {} not found: substituting the generic icon",
                        path.display()
                    ));
                    let generic = bundled_bytes(GENERIC).expect("generic icon");
                    std::fs::write(&dest, generic).map_err(|e| Error::io(&dest, e))?;
                }
            },
        }
    }
    Ok(())
}
