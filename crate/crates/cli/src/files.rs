//! Loading module files and writing outputs atomically.

use std::io::Write;
use std::path::Path;

use qeag_core::io::{ModuleFile, SubmoduleFile};
use qeag_core::rep::{RModule, RqModule};
use qeag_core::ModuleRep;

use crate::{CliError, CliResult};

pub enum Loaded {
    A(ModuleRep),
    R(RModule),
    Rq(RqModule),
}

/// Reads a module file of any kind; files with an `algebra` field hold
/// R- or R_q-modules.
pub fn load(path: &Path) -> CliResult<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::File(path.into(), e.to_string()))?;
    let wrap = |e: qeag_core::Error| CliError::File(path.into(), e.to_string());
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::File(path.into(), format!("malformed JSON: {e}")))?;
    if value.get("algebra").is_some() {
        let file = SubmoduleFile::parse(&text).map_err(wrap)?;
        match file.algebra {
            qeag_core::io::Subalgebra::R => Ok(Loaded::R(file.to_r().map_err(wrap)?)),
            qeag_core::io::Subalgebra::Rq => Ok(Loaded::Rq(file.to_rq().map_err(wrap)?)),
        }
    } else {
        let file = ModuleFile::parse(&text).map_err(wrap)?;
        Ok(Loaded::A(file.to_module().map_err(wrap)?))
    }
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let err = |e: std::io::Error| CliError::File(path.into(), e.to_string());
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}
