//! Rendering a package to source files for one target.

mod clike;
mod context;
mod cpp;
mod csharp;
mod expr;
mod java;
mod managed;
mod python;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::auxfiles;
use crate::error::RenderError;
use crate::ir::*;
use crate::layout::finish_file;

pub use context::ProgramIndex;
pub use cpp::CppBackend;
pub use csharp::CSharpBackend;
pub use java::JavaBackend;
pub use python::PythonBackend;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetId {
    Python,
    Java,
    CSharp,
    Cpp,
}

impl TargetId {
    pub const ALL: [TargetId; 4] = [TargetId::Python, TargetId::Java, TargetId::CSharp, TargetId::Cpp];

    /// Directory and command-line name.
    pub fn name(self) -> &'static str {
        match self {
            TargetId::Python => "python",
            TargetId::Java => "java",
            TargetId::CSharp => "csharp",
            TargetId::Cpp => "cpp",
        }
    }

    pub fn source_extension(self) -> &'static str {
        match self {
            TargetId::Python => "py",
            TargetId::Java => "java",
            TargetId::CSharp => "cs",
            TargetId::Cpp => "cpp",
        }
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetId::Python => "Python",
            TargetId::Java => "Java",
            TargetId::CSharp => "C#",
            TargetId::Cpp => "C++",
        })
    }
}

impl FromStr for TargetId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "python" | "py" => Ok(TargetId::Python),
            "java" => Ok(TargetId::Java),
            "csharp" | "cs" | "c#" => Ok(TargetId::CSharp),
            "cpp" | "c++" => Ok(TargetId::Cpp),
            other => Err(format!(
                "unknown target `{other}` (expected python, java, csharp or cpp)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FileType {
    Source,
    Header,
    Combined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedFile {
    pub path: String,
    pub file_type: FileType,
    pub text: String,
}

impl RenderedFile {
    pub(crate) fn new(path: impl Into<String>, file_type: FileType, text: &str) -> RenderedFile {
        RenderedFile {
            path: path.into(),
            file_type,
            text: finish_file(text),
        }
    }
}

/// Rendered output for one target, in module order with sources before headers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileSet {
    pub files: Vec<RenderedFile>,
}

impl FileSet {
    pub fn get(&self, path: &str) -> Option<&RenderedFile> {
        self.files.iter().find(|f| f.path == path)
    }

    pub fn paths(&self) -> Vec<&str> {
        self.files.iter().map(|f| f.path.as_str()).collect()
    }

    pub fn of_type(&self, file_type: FileType) -> impl Iterator<Item = &RenderedFile> {
        self.files.iter().filter(move |f| f.file_type == file_type)
    }
}

/// A target renderer: maps one module to its files.
pub trait Backend {
    fn target(&self) -> TargetId;

    /// Renders a module; returns no files when every file would be empty.
    fn render_module(&self, module: &Module, index: &ProgramIndex) -> Result<Vec<RenderedFile>, RenderError>;
}

pub fn backend_for(target: TargetId) -> Box<dyn Backend + Send + Sync> {
    match target {
        TargetId::Python => Box::new(PythonBackend),
        TargetId::Java => Box::new(JavaBackend),
        TargetId::CSharp => Box::new(CSharpBackend),
        TargetId::Cpp => Box::new(CppBackend),
    }
}

/// Renders every nonempty module, then the requested auxiliary files.
pub fn assemble_package(pkg: &Package, backend: &dyn Backend) -> Result<FileSet, RenderError> {
    let index = ProgramIndex::new(&pkg.program);
    let mut files = FileSet::default();
    for m in pkg.program.modules.iter().filter(|m| !m.is_empty()) {
        files.files.extend(backend.render_module(m, &index)?);
    }
    let mut aux = Vec::new();
    for spec in &pkg.aux {
        aux.push(match spec {
            AuxFileSpec::Makefile { with_doc_rule } => {
                auxfiles::render_makefile(pkg, backend.target(), *with_doc_rule, &files)?
            }
            AuxFileSpec::DoxygenConfig => auxfiles::render_dox_config(pkg),
        });
    }
    files.files.extend(aux);
    Ok(files)
}

pub fn render_target(pkg: &Package, target: TargetId) -> Result<FileSet, RenderError> {
    assemble_package(pkg, backend_for(target).as_ref())
}

/// Renders all requested targets.
pub fn render_all(pkg: &Package, targets: &[TargetId]) -> Result<HashMap<TargetId, FileSet>, RenderError> {
    targets.iter().map(|t| Ok((*t, render_target(pkg, *t)?))).collect()
}

/// Renders one expression outside any program, as it would appear in the
/// body of a free function.
pub fn render_expression(e: &Expr, target: TargetId) -> Result<String, RenderError> {
    let index = ProgramIndex::default();
    let mut cx = context::Cx::new(target, &index, "Expr");
    let r = match target {
        TargetId::Python => expr::render_expr(&PythonBackend, e, &mut cx),
        TargetId::Java => expr::render_expr(&JavaBackend, e, &mut cx),
        TargetId::CSharp => expr::render_expr(&CSharpBackend, e, &mut cx),
        TargetId::Cpp => expr::render_expr(&CppBackend, e, &mut cx),
    }?;
    Ok(r.text)
}
