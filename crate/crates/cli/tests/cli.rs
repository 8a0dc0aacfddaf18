use std::path::Path;
use std::process::{Command, Output};

use oogen_cli::toolchain;
use oogen_cli::verify::{normalize, verify_rendered, Outcome};
use oogen_core::gallery;
use oogen_core::{render_target, TargetId};
use proptest::prelude::*;

fn oogen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oogen"))
        .args(args)
        .output()
        .expect("run oogen")
}

fn oogen_without_toolchains(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_oogen"));
    for (var, _) in toolchain::OVERRIDES {
        cmd.env(var, "");
    }
    cmd.args(args).output().expect("run oogen")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn listing(dir: &Path) -> Vec<String> {
    let mut out = Vec::new();
    for target in std::fs::read_dir(dir).unwrap() {
        let target = target.unwrap().path();
        for f in std::fs::read_dir(&target).unwrap() {
            let f = f.unwrap().path();
            out.push(f.strip_prefix(dir).unwrap().display().to_string());
        }
    }
    out.sort();
    out
}

#[test]
fn render_writes_every_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = oogen(&[
        "render",
        "--input",
        "example:addFunction",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        listing(dir.path()),
        [
            "cpp/AddFunction.cpp",
            "cpp/Calc.cpp",
            "cpp/Calc.hpp",
            "csharp/AddFunction.cs",
            "csharp/Calc.cs",
            "java/AddFunction.java",
            "java/Calc.java",
            "python/AddFunction.py",
            "python/Calc.py",
        ]
    );
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn pattern_test_is_five_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = oogen(&[
        "render",
        "--input",
        "example:patternTest",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        listing(dir.path()),
        [
            "cpp/PatternTest.cpp",
            "cpp/PatternTest.hpp",
            "csharp/PatternTest.cs",
            "java/PatternTest.java",
            "python/PatternTest.py",
        ]
    );
}

#[test]
fn makefile_and_doc_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = oogen(&[
        "render",
        "--input",
        "example:helloWorld",
        "--target",
        "cpp",
        "--makefile",
        "--doc",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        listing(dir.path()),
        ["cpp/HelloWorld.cpp", "cpp/Makefile", "cpp/doxConfig"]
    );
    let makefile = std::fs::read_to_string(dir.path().join("cpp/Makefile")).unwrap();
    assert!(makefile.contains("\ndoc:"));
}

#[test]
fn render_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = oogen(&[
            "render",
            "--input",
            "example:patternTest",
            "--makefile",
            "--doc",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    for f in listing(a.path()) {
        assert_eq!(
            std::fs::read(a.path().join(&f)).unwrap(),
            std::fs::read(b.path().join(&f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"version\": 1, \"program\": ").unwrap();
    let out = oogen(&[
        "render",
        "--input",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let missing = oogen(&[
        "render",
        "--input",
        "/nonexistent/pkg.json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn emitted_json_renders_like_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = oogen(&["examples", "--emit", "applyDiscount"]);
    assert!(emitted.status.success());
    let path = dir.path().join("pkg.json");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let (from_json, from_name) = (dir.path().join("a"), dir.path().join("b"));
    assert!(oogen(&[
        "render",
        "--input",
        path.to_str().unwrap(),
        "--out",
        from_json.to_str().unwrap()
    ])
    .status
    .success());
    assert!(oogen(&[
        "render",
        "--input",
        "example:applyDiscount",
        "--out",
        from_name.to_str().unwrap()
    ])
    .status
    .success());
    assert_eq!(listing(&from_json), listing(&from_name));
    for f in listing(&from_json) {
        assert_eq!(
            std::fs::read(from_json.join(&f)).unwrap(),
            std::fs::read(from_name.join(&f)).unwrap()
        );
    }
}

#[test]
fn examples_lists_the_gallery() {
    let out = oogen(&["examples"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().collect::<Vec<_>>(), gallery::NAMES);
    let unknown = oogen(&["examples", "--emit", "noSuchThing"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn unknown_target_is_a_usage_error() {
    let out = oogen(&[
        "render",
        "--input",
        "example:helloWorld",
        "--target",
        "cobol",
        "--out",
        "/tmp/x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_without_toolchains_skips_cleanly() {
    let out = oogen_without_toolchains(&["verify", "--input", "example:argsEcho"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("reference: ran"));
    for t in TargetId::ALL {
        assert!(text.contains(&format!("{}: skipped", t.name())), "{text}");
    }
}

#[test]
fn corrupted_output_is_a_mismatch() {
    if toolchain::discover(TargetId::Python).is_none() {
        eprintln!("python not found; skipping");
        return;
    }
    let ex = gallery::example("helloWorld").unwrap();
    let mut files = render_target(&ex.package, TargetId::Python).unwrap();
    let f = &mut files.files[0];
    assert!(f.text.contains("Hello, "));
    f.text = f.text.replace("Hello, ", "Goodbye, ");
    let report = verify_rendered(&ex.package, &[(TargetId::Python, files)], &ex.args, &ex.stdin);
    assert!(!report.agreed());
    assert_eq!(report.exit_code(), 1);
    assert!(
        report.render().contains("reference and python differ"),
        "{}",
        report.render()
    );
}

#[test]
fn broken_source_is_a_compile_failure() {
    if toolchain::discover(TargetId::Cpp).is_none() {
        eprintln!("no C++ compiler; skipping");
        return;
    }
    let ex = gallery::example("addFunction").unwrap();
    let mut files = render_target(&ex.package, TargetId::Cpp).unwrap();
    let f = files.files.iter_mut().find(|f| f.path == "Calc.cpp").unwrap();
    f.text = f.text.replacen("return", "retrun", 1);
    let report = verify_rendered(&ex.package, &[(TargetId::Cpp, files)], &ex.args, &ex.stdin);
    assert!(matches!(report.targets[0].outcome, Outcome::CompileFailed(_)));
    assert_eq!(report.exit_code(), 4);
}

proptest! {
    #[test]
    fn normalize_is_idempotent(s in "[ -~\n\r]{0,60}") {
        let once = normalize(&s);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn float_spellings_agree(n in -100_000i64..100_000) {
        prop_assert_eq!(normalize(&format!("{n}.0")), normalize(&n.to_string()));
    }
}
