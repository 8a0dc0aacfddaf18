//! Library side of the `oogen` command: loading inputs, writing rendered
//! trees to disk, and checking that every target behaves the same.

pub mod toolchain;
pub mod verify;

use std::path::{Path, PathBuf};

use oogen_core::gallery::{self, Example};
use oogen_core::ir::{AuxFileSpec, Package};
use oogen_core::json::{self, DecodeError};
use oogen_core::{FileSet, RenderError, TargetId};
use thiserror::Error;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_DECODE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_COMPILE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown example `{0}` (try `oogen examples`)")]
    UnknownExample(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Decode(#[from] DecodeError),
    #[error("{0}")]
    Render(#[from] RenderError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownExample(_) | CliError::Read { .. } | CliError::Decode(_) => EXIT_DECODE,
            CliError::Render(_) => EXIT_UNSUPPORTED,
            CliError::Write { .. } => EXIT_MISMATCH,
        }
    }
}

/// A package plus the command line and input it should be run with.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub package: Package,
    pub args: Vec<String>,
    pub stdin: String,
}

/// Resolves `example:NAME` to a gallery program, anything else to a JSON file.
pub fn load_input(input: &str) -> Result<Loaded, CliError> {
    if let Some(name) = input.strip_prefix("example:") {
        let Example {
            package, args, stdin, ..
        } = gallery::example(name).ok_or_else(|| CliError::UnknownExample(name.to_string()))?;
        return Ok(Loaded { package, args, stdin });
    }
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Read {
        path: input.into(),
        source,
    })?;
    Ok(Loaded {
        package: json::decode(&text)?,
        args: Vec::new(),
        stdin: String::new(),
    })
}

/// Adds the requested auxiliary files unless the package already asks for them.
pub fn with_aux(mut pkg: Package, makefile: bool, doc: bool) -> Package {
    if makefile || doc {
        let mut found = false;
        for a in &mut pkg.aux {
            if let AuxFileSpec::Makefile { with_doc_rule } = a {
                found = true;
                *with_doc_rule |= doc;
            }
        }
        if !found {
            pkg.aux.insert(0, AuxFileSpec::Makefile { with_doc_rule: doc });
        }
    }
    if doc && !pkg.aux.contains(&AuxFileSpec::DoxygenConfig) {
        pkg.aux.push(AuxFileSpec::DoxygenConfig);
    }
    pkg
}

/// Writes `files` under `dir` and returns the written paths.
pub fn write_files(dir: &Path, files: &FileSet) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for f in &files.files {
        let path = dir.join(&f.path);
        std::fs::write(&path, &f.text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}

/// Renders every target into `out/<target>/`.
pub fn render_to_dir(pkg: &Package, targets: &[TargetId], out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for &t in targets {
        let files = oogen_core::render_target(pkg, t)?;
        written.extend(write_files(&out.join(t.name()), &files)?);
    }
    Ok(written)
}
