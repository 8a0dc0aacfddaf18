use std::collections::{BTreeSet, HashMap};

use crate::error::RenderError;
use crate::ir::*;

use super::TargetId;

/// Where each function and class lives, and the in/out signatures.
#[derive(Debug, Default)]
pub struct ProgramIndex {
    functions: HashMap<String, String>,
    classes: HashMap<String, String>,
    in_outs: HashMap<String, InOutSpec>,
    modules: Vec<String>,
}

impl ProgramIndex {
    pub fn new(program: &Program) -> ProgramIndex {
        let mut ix = ProgramIndex::default();
        for m in &program.modules {
            ix.modules.push(m.name.clone());
            for f in m.functions.iter().filter(|f| !f.is_main) {
                ix.functions.insert(f.name.clone(), m.name.clone());
                if let Some(spec) = f.in_out() {
                    ix.in_outs.insert(f.name.clone(), spec.clone());
                }
            }
            for c in &m.classes {
                ix.classes.insert(c.name.clone(), m.name.clone());
                for f in &c.methods {
                    if let Some(spec) = f.in_out() {
                        ix.in_outs.entry(f.name.clone()).or_insert_with(|| spec.clone());
                    }
                }
            }
        }
        ix
    }

    pub fn function_module(&self, name: &str) -> Option<&str> {
        self.functions.get(name).map(String::as_str)
    }

    pub fn class_module(&self, name: &str) -> Option<&str> {
        self.classes.get(name).map(String::as_str)
    }

    /// Names a module of the program rather than an external library.
    pub fn is_module(&self, name: &str) -> bool {
        self.modules.iter().any(|m| m == name)
    }

    pub fn in_out(&self, name: &str) -> Option<&InOutSpec> {
        self.in_outs.get(name)
    }
}

/// Per-module rendering state.
pub(crate) struct Cx<'a> {
    pub target: TargetId,
    pub index: &'a ProgramIndex,
    pub module: String,
    pub method: String,
    pub in_main: bool,
    /// Library imports, emitted first.
    pub std_imports: BTreeSet<String>,
    /// Imports of other modules in the program.
    pub local_imports: BTreeSet<String>,
    /// C++ forEach loop variables currently in scope (they are iterators).
    pub iterators: Vec<String>,
    pub list_depth: usize,
    /// Set when a method reads standard input through a shared reader.
    pub uses_stdin_reader: bool,
    counters: HashMap<&'static str, usize>,
}

impl<'a> Cx<'a> {
    pub fn new(target: TargetId, index: &'a ProgramIndex, module: &str) -> Cx<'a> {
        Cx {
            target,
            index,
            module: module.to_string(),
            method: String::new(),
            in_main: false,
            std_imports: BTreeSet::new(),
            local_imports: BTreeSet::new(),
            iterators: Vec::new(),
            list_depth: 0,
            uses_stdin_reader: false,
            counters: HashMap::new(),
        }
    }

    pub fn enter_method(&mut self, m: &Method) {
        self.method = m.name.clone();
        self.in_main = m.is_main;
        self.counters.clear();
        self.iterators.clear();
        self.list_depth = 0;
    }

    pub fn import(&mut self, line: impl Into<String>) {
        self.std_imports.insert(line.into());
    }

    pub fn import_local(&mut self, line: impl Into<String>) {
        self.local_imports.insert(line.into());
    }

    /// `base` on first use within a method, then `base2`, `base3`, ...
    pub fn fresh(&mut self, base: &'static str) -> String {
        let n = self.counters.entry(base).or_insert(0);
        *n += 1;
        if *n == 1 {
            base.to_string()
        } else {
            format!("{base}{n}")
        }
    }

    pub fn unsupported(&self, construct: impl Into<String>) -> RenderError {
        RenderError::UnsupportedConstruct {
            target: self.target,
            module: self.module.clone(),
            method: self.method.clone(),
            construct: construct.into(),
        }
    }

    pub fn is_iterator(&self, v: &Variable) -> bool {
        v.form == VarForm::Plain && self.iterators.contains(&v.name)
    }

    /// Import lines: library imports, a blank line, then program modules.
    pub fn import_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.std_imports.iter().cloned().collect();
        out.sort_by(|a, b| a.trim_end_matches(';').cmp(b.trim_end_matches(';')));
        if !out.is_empty() && !self.local_imports.is_empty() {
            out.push(String::new());
        }
        out.extend(self.local_imports.iter().cloned());
        out
    }
}
