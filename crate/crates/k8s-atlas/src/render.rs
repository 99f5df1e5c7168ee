//! Invocation of the external layout engine.
//!
//! The engine binary defaults to `dot` and can be overridden through the
//! `K8S_ATLAS_DOT` environment variable (any program speaking the
//! `<engine> -T<format>` stdin/stdout contract works, e.g. `fdp`).

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use crate::dot::DotDocument;
use crate::error::{Error, Result};

pub const ENGINE_ENV: &str = "K8S_ATLAS_DOT";
const SUPPORTED: &str = "png, jpg, jpeg, gif, tif, tiff, svg, pdf, dot, gv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RenderFormat {
    Png,
    Jpg,
    Gif,
    Tiff,
    Svg,
    Pdf,
    /// Written verbatim; never spawns the engine.
    Dot,
}

impl RenderFormat {
    pub const ALL: [RenderFormat; 7] = [
        RenderFormat::Png,
        RenderFormat::Jpg,
        RenderFormat::Gif,
        RenderFormat::Tiff,
        RenderFormat::Svg,
        RenderFormat::Pdf,
        RenderFormat::Dot,
    ];

    /// The `-T` argument understood by the engine.
    pub fn engine_arg(self) -> &'static str {
        match self {
            RenderFormat::Png => "png",
            RenderFormat::Jpg => "jpg",
            RenderFormat::Gif => "gif",
            RenderFormat::Tiff => "tiff",
            RenderFormat::Svg => "svg",
            RenderFormat::Pdf => "pdf",
            RenderFormat::Dot => "dot",
        }
    }
}

/// Map an output path's extension to a format. `.jpeg` folds into JPG and
/// `.gv` into DOT; matching is case-insensitive.
pub fn infer_format(path: &Path) -> Result<RenderFormat> {
    let extension = path
        .extension()
        .map(|e| e.to_string_lossy().to_lowercase())
        .unwrap_or_default();
    match extension.as_str() {
        "png" => Ok(RenderFormat::Png),
        "jpg" | "jpeg" => Ok(RenderFormat::Jpg),
        "gif" => Ok(RenderFormat::Gif),
        "tif" | "tiff" => Ok(RenderFormat::Tiff),
        "svg" => Ok(RenderFormat::Svg),
        "pdf" => Ok(RenderFormat::Pdf),
        "dot" | "gv" => Ok(RenderFormat::Dot),
        _ => Err(Error::UnknownFormat {
            extension,
            supported: SUPPORTED,
        }),
    }
}

/// The configured engine binary name.
pub fn engine_binary() -> String {
    std::env::var(ENGINE_ENV).unwrap_or_else(|_| "dot".to_string())
}

/// Whether the configured engine can be found on PATH (or is a direct path).
pub fn engine_available() -> bool {
    let engine = engine_binary();
    let candidate = Path::new(&engine);
    if candidate.components().count() > 1 {
        return candidate.is_file();
    }
    std::env::var_os("PATH")
        .map(|paths| std::env::split_paths(&paths).any(|dir| dir.join(&engine).is_file()))
        .unwrap_or(false)
}

/// Render a DOT document to `output`. DOT output is a verbatim write; all
/// other formats run the engine with the document on stdin, capturing the
/// produced bytes. `workdir`, when given, becomes the engine's working
/// directory so the relative `icons/` paths inside the DOT resolve.
pub fn render(
    doc: &DotDocument,
    format: RenderFormat,
    output: &Path,
    workdir: Option<&Path>,
) -> Result<()> {
    if format == RenderFormat::Dot {
        return std::fs::write(output, &doc.text).map_err(|e| Error::io(output, e));
    }
    render_with_engine(&engine_binary(), doc, format, output, workdir)
}

/// As [`render`], with an explicit engine binary.
pub fn render_with_engine(
    engine: &str,
    doc: &DotDocument,
    format: RenderFormat,
    output: &Path,
    workdir: Option<&Path>,
) -> Result<()> {
    let mut command = Command::new(engine);
    command
        .arg(format!("-T{}", format.engine_arg()))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if let Some(dir) = workdir {
        command.current_dir(dir);
    }
    let mut child = command.spawn().map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingBinary {
                binary: engine.to_string(),
            }
        } else {
            Error::io(engine, e)
        }
    })?;
    // EPIPE here means the engine exited early; the status check below
    // turns that into a RenderFailed with its stderr.
    if let Err(e) = child
        .stdin
        .take()
        .expect("stdin was piped")
        .write_all(doc.text.as_bytes())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(Error::io("<engine stdin>", e));
        }
    }
    let out = child.wait_with_output().map_err(|e| Error::io(engine, e))?;
    if !out.status.success() {
        return Err(Error::RenderFailed {
            engine: engine.to_string(),
            status: out.status,
            stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        });
    }
    std::fs::write(output, &out.stdout).map_err(|e| Error::io(output, e))
}
