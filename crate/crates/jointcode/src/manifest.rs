//! Extension manifests: a `base=<path>` line followed by one
//! `component=<path>` line per base column. Relative paths resolve
//! against the manifest's directory. Blank lines and `#` comments are
//! skipped.

use std::path::{Path, PathBuf};

use jointcode_core::extension::ExtensionSpec;
use jointcode_core::TriMatrix;

use crate::format::{parse_tri, ParseError};
use crate::LoadError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub base: PathBuf,
    pub components: Vec<PathBuf>,
}

pub fn parse_manifest(text: &str, dir: &Path) -> Result<Manifest, ParseError> {
    let mut base = None;
    let mut components = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| ParseError {
            line: i + 1,
            column: 1,
            message: msg.to_string(),
        };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key=path`"))?;
        let path = dir.join(value.trim());
        match key.trim() {
            "base" if base.is_none() && components.is_empty() => base = Some(path),
            "base" => return Err(err("`base=` must appear once, before any component")),
            "component" if base.is_some() => components.push(path),
            "component" => return Err(err("`component=` before `base=`")),
            other => return Err(err(&format!("unknown key {other:?}"))),
        }
    }
    let base = base.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing `base=` line".to_string(),
    })?;
    Ok(Manifest { base, components })
}

pub fn read_tri(path: &Path) -> Result<TriMatrix, LoadError> {
    let text = crate::read_text(path)?;
    parse_tri(&text).map_err(|e| LoadError::Parse { path: path.to_path_buf(), error: e })
}

/// Reads a manifest and every matrix it names.
pub fn load_extension(path: &Path) -> Result<ExtensionSpec, LoadError> {
    let text = crate::read_text(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let manifest = parse_manifest(&text, dir).map_err(|e| LoadError::Parse { path: path.to_path_buf(), error: e })?;
    let base = read_tri(&manifest.base)?;
    let components = manifest
        .components
        .iter()
        .map(|p| read_tri(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExtensionSpec::new(base, components)?)
}
