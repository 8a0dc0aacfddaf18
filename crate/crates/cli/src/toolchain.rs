//! Finding and driving the compilers and interpreters for each target.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::Duration;

use oogen_core::TargetId;
use wait_timeout::ChildExt;

pub const RUN_TIMEOUT: Duration = Duration::from_secs(30);

/// Environment variables that override toolchain discovery.
pub const OVERRIDES: &[(&str, &str)] = &[
    ("OOGEN_PYTHON", "Python interpreter (default: python3, python)"),
    ("OOGEN_JAVAC", "Java compiler (default: javac)"),
    ("OOGEN_JAVA", "Java launcher (default: java)"),
    ("OOGEN_CSC", "C# compiler (default: mcs, csc)"),
    ("OOGEN_MONO", "CLI runtime for C# executables (default: mono)"),
    ("OOGEN_CXX", "C++ compiler (default: g++, clang++)"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Toolchain {
    Python { python: PathBuf },
    Java { javac: PathBuf, java: PathBuf },
    CSharp { csc: PathBuf, mono: PathBuf },
    Cpp { cxx: PathBuf },
}

fn probe(var: &str, names: &[&str]) -> Option<PathBuf> {
    if let Ok(v) = std::env::var(var) {
        if v.is_empty() {
            return None;
        }
        return which::which(&v).ok();
    }
    names.iter().find_map(|n| which::which(n).ok())
}

/// The toolchain for `target`, or `None` when it is not installed.
pub fn discover(target: TargetId) -> Option<Toolchain> {
    match target {
        TargetId::Python => Some(Toolchain::Python {
            python: probe("OOGEN_PYTHON", &["python3", "python"])?,
        }),
        TargetId::Java => Some(Toolchain::Java {
            javac: probe("OOGEN_JAVAC", &["javac"])?,
            java: probe("OOGEN_JAVA", &["java"])?,
        }),
        TargetId::CSharp => Some(Toolchain::CSharp {
            csc: probe("OOGEN_CSC", &["mcs", "csc"])?,
            mono: probe("OOGEN_MONO", &["mono"])?,
        }),
        TargetId::Cpp => Some(Toolchain::Cpp {
            cxx: probe("OOGEN_CXX", &["g++", "clang++"])?,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Captured {
    pub success: bool,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_command(mut cmd: Command, stdin: &str) -> std::io::Result<Captured> {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    if let Some(mut input) = child.stdin.take() {
        // A program that never reads its input closes the pipe early.
        let _ = input.write_all(stdin.as_bytes());
    }
    let stdout = child.stdout.take();
    let stderr = child.stderr.take();
    let read_out = std::thread::spawn(move || read_all(stdout));
    let read_err = std::thread::spawn(move || read_all(stderr));
    let status = match child.wait_timeout(RUN_TIMEOUT)? {
        Some(s) => s,
        None => {
            child.kill()?;
            child.wait()?;
            return Ok(Captured {
                success: false,
                stdout: read_out.join().unwrap_or_default(),
                stderr: format!("timed out after {}s", RUN_TIMEOUT.as_secs()),
            });
        }
    };
    Ok(Captured {
        success: status.success(),
        stdout: read_out.join().unwrap_or_default(),
        stderr: read_err.join().unwrap_or_default(),
    })
}

fn read_all(pipe: Option<impl std::io::Read>) -> String {
    let mut buf = Vec::new();
    if let Some(mut p) = pipe {
        let _ = p.read_to_end(&mut buf);
    }
    String::from_utf8_lossy(&buf).into_owned()
}

impl Toolchain {
    /// Compiles the files in `dir` where the target needs it. `sources` are
    /// the file names passed to the compiler.
    pub fn build(&self, dir: &Path, sources: &[String], main_module: &str) -> std::io::Result<Option<Captured>> {
        let mut cmd = match self {
            Toolchain::Python { .. } => return Ok(None),
            Toolchain::Java { javac, .. } => {
                let mut c = Command::new(javac);
                c.args(sources);
                c
            }
            Toolchain::CSharp { csc, .. } => {
                let mut c = Command::new(csc);
                c.arg(format!("-out:{main_module}.exe")).args(sources);
                c
            }
            Toolchain::Cpp { cxx } => {
                let mut c = Command::new(cxx);
                c.args(["-std=c++11", "-o", "prog"]).args(sources);
                c
            }
        };
        cmd.current_dir(dir);
        run_command(cmd, "").map(Some)
    }

    pub fn execute(&self, dir: &Path, main_module: &str, args: &[String], stdin: &str) -> std::io::Result<Captured> {
        let mut cmd = match self {
            Toolchain::Python { python } => {
                let mut c = Command::new(python);
                c.arg(format!("{main_module}.py"));
                c
            }
            Toolchain::Java { java, .. } => {
                let mut c = Command::new(java);
                c.args(["-cp", ".", main_module]);
                c
            }
            Toolchain::CSharp { mono, .. } => {
                let mut c = Command::new(mono);
                c.arg(format!("{main_module}.exe"));
                c
            }
            Toolchain::Cpp { .. } => Command::new(dir.join("prog")),
        };
        cmd.args(args).current_dir(dir);
        run_command(cmd, stdin)
    }
}
