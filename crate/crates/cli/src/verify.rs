//! Runs rendered programs with the local toolchains and compares their output
//! with each other and with the reference interpreter.

use std::fmt::Write as _;
use std::sync::LazyLock;

use oogen_core::ir::Package;
use oogen_core::{interp, FileSet, FileType, TargetId};
use regex::{Captures, Regex};

use crate::toolchain;
use crate::{write_files, CliError, EXIT_COMPILE, EXIT_MISMATCH};

static TOKEN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"[A-Za-z0-9_.+\-]+").expect("valid pattern"));

/// Puts program output in a target-neutral form: line endings and trailing
/// whitespace removed, `True`/`False` lowercased, and every decimal or
/// exponent literal rewritten in shortest round-trip form (so `30.0`, `30`
/// and `3e+01` all read `30`).
pub fn normalize(out: &str) -> String {
    let mut lines: Vec<String> = out
        .replace("\r\n", "\n")
        .lines()
        .map(|l| TOKEN.replace_all(l.trim_end(), normalize_token).into_owned())
        .collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    lines.join("\n")
}

fn normalize_token(c: &Captures) -> String {
    let t = &c[0];
    match t {
        "True" => return "true".into(),
        "False" => return "false".into(),
        _ => {}
    }
    let digits = t.trim_start_matches(['-', '+']);
    let numeric_start = digits.starts_with(|ch: char| ch.is_ascii_digit())
        || (digits.starts_with('.') && digits[1..].starts_with(|ch: char| ch.is_ascii_digit()));
    if numeric_start && t.contains(['.', 'e', 'E']) {
        if let Ok(f) = t.parse::<f64>() {
            return if f == 0.0 { "0".into() } else { f.to_string() };
        }
    }
    t.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Skipped(String),
    CompileFailed(String),
    Ran {
        success: bool,
        stdout: String,
        stderr: String,
    },
}

#[derive(Debug, Clone)]
pub struct TargetReport {
    pub target: TargetId,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct Report {
    /// Normalized reference output, or why the interpreter could not run it.
    pub reference: Result<String, String>,
    pub targets: Vec<TargetReport>,
    pub diffs: Vec<String>,
}

impl Report {
    pub fn compile_failed(&self) -> bool {
        self.targets
            .iter()
            .any(|t| matches!(t.outcome, Outcome::CompileFailed(_)))
    }

    pub fn agreed(&self) -> bool {
        self.diffs.is_empty() && !self.compile_failed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.compile_failed() {
            EXIT_COMPILE
        } else if !self.diffs.is_empty() {
            EXIT_MISMATCH
        } else {
            0
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        match &self.reference {
            Ok(_) => s.push_str("reference: ran\n"),
            Err(e) => {
                let _ = writeln!(s, "reference: unavailable ({e})");
            }
        }
        for t in &self.targets {
            let status = match &t.outcome {
                Outcome::Skipped(why) => format!("skipped ({why})"),
                Outcome::CompileFailed(out) => format!("compile failed\n{}", indent(out)),
                Outcome::Ran { success: true, .. } => "ran".into(),
                Outcome::Ran { stderr, .. } => format!("exited with an error\n{}", indent(stderr)),
            };
            let _ = writeln!(s, "{}: {status}", t.target.name());
        }
        for d in &self.diffs {
            s.push_str(d);
            s.push('\n');
        }
        let verdict = if self.agreed() {
            "all executed targets agree"
        } else {
            "targets disagree"
        };
        s.push_str(verdict);
        s.push('\n');
        s
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}

fn diff(a_name: &str, a: &str, b_name: &str, b: &str) -> Option<String> {
    if a == b {
        return None;
    }
    let (al, bl): (Vec<&str>, Vec<&str>) = (a.lines().collect(), b.lines().collect());
    let mut s = format!("{a_name} and {b_name} differ:");
    let mut shown = 0;
    for i in 0..al.len().max(bl.len()) {
        let (x, y) = (al.get(i).copied(), bl.get(i).copied());
        if x != y {
            let _ = write!(
                s,
                "\n  line {}: {a_name} {:?} / {b_name} {:?}",
                i + 1,
                x.unwrap_or("<missing>"),
                y.unwrap_or("<missing>")
            );
            shown += 1;
            if shown == 10 {
                s.push_str("\n  ...");
                break;
            }
        }
    }
    Some(s)
}

fn run_one(pkg: &Package, target: TargetId, files: &FileSet, args: &[String], stdin: &str) -> Outcome {
    let Some(tool) = toolchain::discover(target) else {
        return Outcome::Skipped("toolchain not found".into());
    };
    let Some(main) = pkg.program.main_module() else {
        return Outcome::Skipped("program has no main module".into());
    };
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return Outcome::Skipped(format!("no scratch directory: {e}")),
    };
    if let Err(e) = write_files(dir.path(), files) {
        return Outcome::Skipped(e.to_string());
    }
    let sources: Vec<String> = files
        .files
        .iter()
        .filter(|f| f.file_type != FileType::Header && f.path.ends_with(target.source_extension()))
        .map(|f| f.path.clone())
        .collect();
    match tool.build(dir.path(), &sources, &main.name) {
        Ok(Some(c)) if !c.success => return Outcome::CompileFailed(format!("{}{}", c.stdout, c.stderr)),
        Ok(_) => {}
        Err(e) => return Outcome::CompileFailed(e.to_string()),
    }
    match tool.execute(dir.path(), &main.name, args, stdin) {
        Ok(c) => Outcome::Ran {
            success: c.success,
            stdout: c.stdout,
            stderr: c.stderr,
        },
        Err(e) => Outcome::Ran {
            success: false,
            stdout: String::new(),
            stderr: e.to_string(),
        },
    }
}

/// Verifies already-rendered file sets; targets run concurrently, each in its
/// own scratch directory.
pub fn verify_rendered(pkg: &Package, rendered: &[(TargetId, FileSet)], args: &[String], stdin: &str) -> Report {
    let reference = interp::run(pkg, args, stdin)
        .map(|out| normalize(&out))
        .map_err(|e| e.to_string());
    let targets: Vec<TargetReport> = std::thread::scope(|s| {
        let handles: Vec<_> = rendered
            .iter()
            .map(|(t, files)| (t, s.spawn(move || run_one(pkg, *t, files, args, stdin))))
            .collect();
        handles
            .into_iter()
            .map(|(t, h)| TargetReport {
                target: *t,
                outcome: h
                    .join()
                    .unwrap_or_else(|_| Outcome::Skipped("verification thread panicked".into())),
            })
            .collect()
    });
    let mut diffs = Vec::new();
    let mut executed: Vec<(String, String)> = Vec::new();
    if let Ok(r) = &reference {
        executed.push(("reference".into(), r.clone()));
    }
    for t in &targets {
        if let Outcome::Ran { success, stdout, .. } = &t.outcome {
            if !success {
                diffs.push(format!("{} exited with an error", t.target.name()));
            }
            executed.push((t.target.name().into(), normalize(stdout)));
        }
    }
    if let Some((first_name, first)) = executed.first() {
        for (name, out) in &executed[1..] {
            diffs.extend(diff(first_name, first, name, out));
        }
    }
    Report {
        reference,
        targets,
        diffs,
    }
}

pub fn verify(pkg: &Package, targets: &[TargetId], args: &[String], stdin: &str) -> Result<Report, CliError> {
    let mut rendered = Vec::new();
    for &t in targets {
        rendered.push((t, oogen_core::render_target(pkg, t)?));
    }
    Ok(verify_rendered(pkg, &rendered, args, stdin))
}
