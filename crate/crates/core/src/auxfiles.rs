//! Build and documentation files that accompany the generated code.

use crate::error::RenderError;
use crate::ir::*;
use crate::layout::Doc;
use crate::render::{FileSet, FileType, RenderedFile, TargetId};

pub const MAKEFILE: &str = "Makefile";
pub const DOX_CONFIG: &str = "doxConfig";

/// A Doxygen comment for a function, class or module. Only `params` (the
/// parameter names the target actually renders) get `\param` lines.
pub fn render_doc_comment(doc: &DocSpec, target: TargetId, params: &[String]) -> Result<Doc, RenderError> {
    let mut lines = vec![format!("\\brief {}", doc.description)];
    for (name, desc) in &doc.param_descs {
        if params.iter().any(|p| p == name) {
            lines.push(format!("\\param {name} {desc}"));
        }
    }
    if let Some(r) = &doc.return_desc {
        lines.push(format!("\\return {r}"));
    }
    let mut out = Doc::empty();
    if target == TargetId::Python {
        for (n, l) in lines.iter().enumerate() {
            out.push(if n == 0 { format!("## {l}") } else { format!("#  {l}") });
        }
    } else {
        out.push("/**");
        for l in &lines {
            out.push(format!(" * {l}"));
        }
        out.push(" */");
    }
    Ok(out)
}

fn main_module(pkg: &Package, target: TargetId) -> Result<&Module, RenderError> {
    pkg.program.main_module().ok_or(RenderError::NoMainModule(target))
}

/// A Makefile with `build` (compiled targets), `run` and optionally `doc` rules.
/// Compile commands list only source files; headers are never passed to the compiler.
pub fn render_makefile(
    pkg: &Package,
    target: TargetId,
    with_doc_rule: bool,
    files: &FileSet,
) -> Result<RenderedFile, RenderError> {
    let sources: Vec<&str> = files
        .files
        .iter()
        .filter(|f| matches!(f.file_type, FileType::Source | FileType::Combined))
        .map(|f| f.path.as_str())
        .collect();
    let srcs = sources.join(" ");
    let mut lines: Vec<String> = Vec::new();
    let mut phony = vec![];
    match target {
        TargetId::Python => {
            lines.push("PYTHON ?= python3".into());
            if let Some(m) = pkg.program.main_module() {
                lines.push(String::new());
                lines.push("run:".into());
                lines.push(format!("\t$(PYTHON) {}.py $(RUNARGS)", m.name));
                phony.push("run");
            }
        }
        TargetId::Java => {
            let m = main_module(pkg, target)?;
            lines.extend([
                "JAVAC ?= javac".into(),
                "JAVA ?= java".into(),
                String::new(),
                format!("build: {}.class", m.name),
                String::new(),
                format!("{}.class: {srcs}", m.name),
                format!("\t$(JAVAC) {srcs}"),
                String::new(),
                "run: build".into(),
                format!("\t$(JAVA) {} $(RUNARGS)", m.name),
            ]);
            phony.extend(["build", "run"]);
        }
        TargetId::CSharp => {
            let m = main_module(pkg, target)?;
            let exe = format!("{}.exe", m.name);
            lines.extend([
                "CSC ?= mcs".into(),
                "MONO ?= mono".into(),
                String::new(),
                format!("build: {exe}"),
                String::new(),
                format!("{exe}: {srcs}"),
                format!("\t$(CSC) -out:{exe} {srcs}"),
                String::new(),
                "run: build".into(),
                format!("\t$(MONO) {exe} $(RUNARGS)"),
            ]);
            phony.extend(["build", "run"]);
        }
        TargetId::Cpp => {
            main_module(pkg, target)?;
            let bin = &pkg.program.name;
            lines.extend([
                "CXX ?= g++".into(),
                "CXXFLAGS ?= -std=c++11".into(),
                String::new(),
                format!("build: {bin}"),
                String::new(),
                format!("{bin}: {srcs}"),
                format!("\t$(CXX) $(CXXFLAGS) -o {bin} {srcs}"),
                String::new(),
                "run: build".into(),
                format!("\t./{bin} $(RUNARGS)"),
            ]);
            phony.extend(["build", "run"]);
        }
    }
    if with_doc_rule {
        lines.push(String::new());
        lines.push(format!("doc: {DOX_CONFIG}"));
        lines.push(format!("\tdoxygen {DOX_CONFIG}"));
        phony.push("doc");
    }
    if !phony.is_empty() {
        lines.push(String::new());
        lines.push(format!(".PHONY: {}", phony.join(" ")));
    }
    Ok(RenderedFile::new(MAKEFILE, FileType::Combined, &lines.join("\n")))
}

/// Doxygen configuration documenting the generated files in place.
pub fn render_dox_config(pkg: &Package) -> RenderedFile {
    let settings = [
        ("PROJECT_NAME", format!("\"{}\"", pkg.program.name)),
        ("OUTPUT_DIRECTORY", "doxygen".into()),
        ("INPUT", ".".into()),
        ("RECURSIVE", "NO".into()),
        ("EXTRACT_ALL", "YES".into()),
        ("EXTRACT_PRIVATE", "YES".into()),
        ("EXTRACT_STATIC", "YES".into()),
        ("GENERATE_LATEX", "NO".into()),
        ("QUIET", "YES".into()),
    ];
    let mut text = String::new();
    for (k, v) in settings {
        text.push_str(&format!("{k:<22} = {v}\n"));
    }
    RenderedFile::new(DOX_CONFIG, FileType::Combined, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> DocSpec {
        DocSpec {
            description: "Applies a discount".into(),
            param_descs: vec![("price".into(), "Price".into()), ("gone".into(), "Missing".into())],
            return_desc: Some("Updated values".into()),
        }
    }

    #[test]
    fn block_comment() {
        let d = render_doc_comment(&spec(), TargetId::Java, &["price".into()]).unwrap();
        assert_eq!(
            d.render(),
            "/**\n * \\brief Applies a discount\n * \\param price Price\n * \\return Updated values\n */"
        );
    }

    #[test]
    fn hash_comment() {
        let d = render_doc_comment(&spec(), TargetId::Python, &["price".into()]).unwrap();
        assert_eq!(
            d.render(),
            "## \\brief Applies a discount\n#  \\param price Price\n#  \\return Updated values"
        );
    }
}
