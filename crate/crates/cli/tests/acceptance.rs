//! One line per acceptance criterion: `[PASS]` or `[FAIL]`, with detail.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use oogen_cli::toolchain::{self, Toolchain};
use oogen_cli::verify::{self, normalize, Outcome};
use oogen_core::build::*;
use oogen_core::gallery;
use oogen_core::interp;
use oogen_core::ir::*;
use oogen_core::json;
use oogen_core::patterns::*;
use oogen_core::{render_expression, render_target, FileSet, FileType, TargetId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Verdict = Result<String, String>;
type Check = (&'static str, Option<Duration>, fn() -> Verdict);

fn main() {
    let checks: Vec<Check> = vec![
        ("AC1 golden listings", Some(Duration::from_secs(1)), golden_listings),
        ("AC2 file structure", None, file_structure),
        ("AC3 parenthesization", Some(Duration::from_secs(30)), parenthesization),
        ("AC4 pattern semantics", None, pattern_semantics),
        ("AC5 JSON round trip", None, json_round_trip),
        ("AC6 documentation", None, documentation),
        (
            "AC7 cross-language equivalence",
            Some(Duration::from_secs(120)),
            equivalence,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in checks {
        let start = Instant::now();
        let mut result = check();
        let took = start.elapsed();
        if let (Ok(msg), Some(limit)) = (&result, limit) {
            if took > limit {
                result = Err(format!("{msg}; took {took:.2?}, limit {limit:?}"));
            }
        }
        match result {
            Ok(msg) => println!("[PASS] {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn example(name: &str) -> gallery::Example {
    gallery::example(name).expect("gallery example")
}

fn render(pkg: &Package, t: TargetId) -> Result<FileSet, String> {
    render_target(pkg, t).map_err(|e| e.to_string())
}

fn file_text<'a>(files: &'a FileSet, path: &str) -> Result<&'a str, String> {
    files
        .get(path)
        .map(|f| f.text.as_str())
        .ok_or_else(|| format!("no file {path} (have {:?})", files.paths()))
}

// ---------------------------------------------------------------------------
// AC1

const GOLDEN_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

/// Joins lines broken by a trailing backslash, dropping the continuation's indent.
fn join_breaks(text: &str) -> String {
    let mut out = String::new();
    let mut lines = text.lines();
    while let Some(line) = lines.next() {
        let mut line = line.to_string();
        while let Some(stripped) = line.strip_suffix('\\') {
            let next = lines.next().unwrap_or("");
            line = format!("{stripped}{}", next.trim_start());
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Finds `fragment` as a run of whole lines in `text`, allowing the whole
/// run to be indented uniformly.
fn contains_fragment(text: &str, fragment: &str) -> bool {
    let hay: Vec<&str> = text.lines().collect();
    let frag: Vec<&str> = fragment.lines().collect();
    if frag.len() == 1 {
        return text.contains(frag[0]);
    }
    (0..hay.len()).any(|i| {
        let indent = hay[i].len() - hay[i].trim_start().len();
        let pad = &hay[i][..indent];
        frag.iter().enumerate().all(|(j, f)| match hay.get(i + j) {
            Some(h) if f.is_empty() => h.is_empty(),
            Some(h) => h.strip_prefix(pad) == Some(*f),
            None => false,
        })
    })
}

fn foreach_fixture() -> Package {
    let ages = list_var("ages", Type::Int).unwrap();
    let age = var("age", Type::Int).unwrap();
    let main = main_function(body_statements(vec![
        var_dec_def(&ages, list_lit(Type::Int, vec![lit_int(30), lit_int(40)]).unwrap()).unwrap(),
        for_each(&age, value_of(&ages), one_liner(print_ln(value_of(&age)))).unwrap(),
    ]))
    .unwrap();
    package(
        prog(
            "forEachDemo",
            vec![build_module("ForEachDemo", &[], vec![main], vec![]).unwrap()],
        )
        .unwrap(),
        vec![],
    )
    .unwrap()
}

fn sine_fixture() -> Package {
    let foo = var("foo", Type::Float).unwrap();
    let main = main_function(body_statements(vec![
        var_dec_def(&foo, lit_float(0.5)).unwrap(),
        print_ln(math_fn(MathFn::Sin, value_of(&foo)).unwrap()),
    ]))
    .unwrap();
    package(
        prog(
            "sineDemo",
            vec![build_module("SineDemo", &[], vec![main], vec![]).unwrap()],
        )
        .unwrap(),
        vec![],
    )
    .unwrap()
}

fn golden_listings() -> Verdict {
    let foreach = foreach_fixture();
    let sine = sine_fixture();
    let slice = example("sliceDemo").package;
    let list_print = example("listPrintDemo").package;
    let discount = example("applyDiscount").package;
    let foo = example("fooClassGetSet").package;
    let args = example("argsEcho").package;
    // (golden file, package, target, rendered file)
    let cases: Vec<(&str, &Package, TargetId, &str)> = vec![
        ("foreach.py", &foreach, TargetId::Python, "ForEachDemo.py"),
        ("foreach.java", &foreach, TargetId::Java, "ForEachDemo.java"),
        ("foreach.cs", &foreach, TargetId::CSharp, "ForEachDemo.cs"),
        ("foreach.cpp", &foreach, TargetId::Cpp, "ForEachDemo.cpp"),
        ("slice.py", &slice, TargetId::Python, "SliceDemo.py"),
        ("slice.java", &slice, TargetId::Java, "SliceDemo.java"),
        ("list_print.cpp", &list_print, TargetId::Cpp, "ListPrintDemo.cpp"),
        ("apply_discount.py", &discount, TargetId::Python, "ApplyDiscount.py"),
        ("apply_discount.java", &discount, TargetId::Java, "ApplyDiscount.java"),
        ("apply_discount.cs", &discount, TargetId::CSharp, "ApplyDiscount.cs"),
        ("apply_discount.cpp", &discount, TargetId::Cpp, "ApplyDiscount.cpp"),
        ("set_foo.py", &foo, TargetId::Python, "FooClassGetSet.py"),
        ("set_foo.java", &foo, TargetId::Java, "FooClassGetSet.java"),
        ("set_foo.cs", &foo, TargetId::CSharp, "FooClassGetSet.cs"),
        ("set_foo.cpp", &foo, TargetId::Cpp, "FooClassGetSet.cpp"),
        ("sine.py", &sine, TargetId::Python, "SineDemo.py"),
        ("sine.java", &sine, TargetId::Java, "SineDemo.java"),
        ("sine.cs", &sine, TargetId::CSharp, "SineDemo.cs"),
        ("sine.cpp", &sine, TargetId::Cpp, "SineDemo.cpp"),
        ("args.py", &args, TargetId::Python, "ArgsEcho.py"),
    ];
    let mut failures = Vec::new();
    for (golden, pkg, target, path) in &cases {
        let raw = std::fs::read_to_string(Path::new(GOLDEN_DIR).join(format!("{golden}.txt")))
            .map_err(|e| format!("{golden}: {e}"))?;
        let mut fragment = join_breaks(&raw);
        if golden.ends_with(".java") && fragment.ends_with("  }\n}\n") {
            // The listings close the method at the class's indentation and
            // then close the class; only the method is compared.
            fragment.truncate(fragment.len() - "  }\n}\n".len());
            fragment.push_str("}\n");
        }
        if *golden == "list_print.cpp" {
            // That listing is typeset with two-space indentation.
            fragment = fragment
                .lines()
                .map(|l| {
                    let n = l.len() - l.trim_start().len();
                    format!("{}{}\n", " ".repeat(n * 2), l.trim_start())
                })
                .collect();
        }
        let files = render(pkg, *target)?;
        let text = file_text(&files, path)?;
        if !contains_fragment(text, &fragment) {
            failures.push(format!(
                "{golden} not found in {path}:\n{fragment}\n--- rendered ---\n{text}"
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} listings matched", cases.len()))
    } else {
        Err(failures.join("\n"))
    }
}

// ---------------------------------------------------------------------------
// AC2

fn file_structure() -> Verdict {
    let hello = example("helloWorld").package;
    let cpp = render(&hello, TargetId::Cpp)?;
    if cpp.paths() != ["HelloWorld.cpp"] {
        return Err(format!("main-only module gave C++ files {:?}", cpp.paths()));
    }
    if cpp.of_type(FileType::Header).count() != 0 {
        return Err("main-only module produced a header".into());
    }

    let mut with_empty = hello.clone();
    with_empty
        .program
        .modules
        .push(build_module("Empty", &[], vec![], vec![]).map_err(|e| e.to_string())?);
    for t in TargetId::ALL {
        let files = render(&with_empty, t)?;
        if files.paths().iter().any(|p| p.starts_with("Empty.")) {
            return Err(format!("empty module produced a {t} file: {:?}", files.paths()));
        }
        let plain = render(&hello, t)?;
        if files.paths() != plain.paths() {
            return Err(format!("empty module changed {t} file list"));
        }
    }

    let foo = render(&example("fooClassGetSet").package, TargetId::Cpp)?;
    let mut types: Vec<(&str, FileType)> = foo.files.iter().map(|f| (f.path.as_str(), f.file_type)).collect();
    types.sort_by_key(|(p, _)| *p);
    if types
        != [
            ("FooClassGetSet.cpp", FileType::Source),
            ("FooClassGetSet.hpp", FileType::Header),
        ]
    {
        return Err(format!("module with a class gave {types:?}"));
    }
    Ok("main-only C++ module has no header; empty modules emit nothing in 4 targets".into())
}

// ---------------------------------------------------------------------------
// AC3

#[derive(Debug, Clone, PartialEq)]
enum Tree {
    Leaf(String),
    Num(i64),
    Neg(Box<Tree>),
    Bin(char, Box<Tree>, Box<Tree>),
}

fn to_expr(t: &Tree) -> Expr {
    match t {
        Tree::Leaf(n) => value_of(&var(n, Type::Int).unwrap()),
        Tree::Num(i) => lit_int(*i),
        Tree::Neg(x) => apply_unary(UnaryOp::Negate, to_expr(x)).unwrap(),
        Tree::Bin(op, l, r) => {
            let op = match op {
                '+' => BinaryOp::Add,
                '-' => BinaryOp::Sub,
                '*' => BinaryOp::Mul,
                '^' => BinaryOp::Pow,
                _ => unreachable!(),
            };
            apply_binary(op, to_expr(l), to_expr(r)).unwrap()
        }
    }
}

/// All trees with exactly `n` operators; leaves are numbered left to right.
fn trees(n: usize, next_leaf: &mut usize) -> Vec<Tree> {
    fn shapes(n: usize) -> Vec<Tree> {
        if n == 0 {
            return vec![Tree::Leaf(String::new())];
        }
        let mut out = Vec::new();
        for left in 0..n {
            for l in shapes(left) {
                for r in shapes(n - 1 - left) {
                    for op in ['+', '-', '*'] {
                        out.push(Tree::Bin(op, Box::new(l.clone()), Box::new(r.clone())));
                    }
                }
            }
        }
        out
    }
    fn number(t: &mut Tree, k: &mut usize) {
        match t {
            Tree::Leaf(name) => {
                *name = format!("x{k}");
                *k += 1;
            }
            Tree::Bin(_, l, r) => {
                number(l, k);
                number(r, k);
            }
            _ => {}
        }
    }
    let mut all = shapes(n);
    for t in &mut all {
        let mut k = 0;
        number(t, &mut k);
        *next_leaf = (*next_leaf).max(k);
    }
    all
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Num(i64),
    Op(&'static str),
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| "bad number")?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Id(cs[start..i].iter().collect()));
        } else {
            i += 1;
            out.push(match c {
                '(' => Tok::Open,
                ')' => Tok::Close,
                '+' => Tok::Op("+"),
                '-' => Tok::Op("-"),
                '*' if cs.get(i) == Some(&'*') => {
                    i += 1;
                    Tok::Op("**")
                }
                '*' => Tok::Op("*"),
                _ => return Err(format!("unexpected `{c}`")),
            });
        }
    }
    Ok(out)
}

/// Operator-precedence parser for `+ - * **`, unary minus and parentheses,
/// using the usual C and Python rules: `**` binds tighter than a unary minus
/// on its left and is right-associative.
struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn parse(s: &str) -> Result<Tree, String> {
        let mut p = Parser { toks: lex(s)?, pos: 0 };
        let t = p.expr(0)?;
        if p.pos != p.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(t)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self, min: u8) -> Result<Tree, String> {
        let mut lhs = self.unary()?;
        loop {
            let (op, prec, right) = match self.peek() {
                Some(Tok::Op("+")) => ('+', 1, false),
                Some(Tok::Op("-")) => ('-', 1, false),
                Some(Tok::Op("*")) => ('*', 2, false),
                _ => break,
            };
            if prec < min {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(if right { prec } else { prec + 1 })?;
            lhs = Tree::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Tree, String> {
        if self.peek() == Some(&Tok::Op("-")) {
            self.pos += 1;
            let x = self.unary()?;
            return Ok(match x {
                Tree::Num(n) => Tree::Num(-n),
                x => Tree::Neg(Box::new(x)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Tree, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op("**")) {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Tree::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Tree, String> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Id(n)) => Ok(Tree::Leaf(n)),
            Some(Tok::Num(n)) => Ok(Tree::Num(n)),
            Some(Tok::Open) => {
                let e = self.expr(0)?;
                if self.toks.get(self.pos) != Some(&Tok::Close) {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err("expected an operand".into()),
        }
    }
}

fn paren_pairs(s: &str) -> Vec<(usize, usize)> {
    let mut stack = Vec::new();
    let mut pairs = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => stack.push(i),
            ')' => pairs.push((stack.pop().expect("balanced"), i)),
            _ => {}
        }
    }
    pairs
}

fn eval_tree(t: &Tree) -> Option<i128> {
    match t {
        Tree::Num(n) => Some(*n as i128),
        Tree::Leaf(_) => None,
        Tree::Neg(x) => eval_tree(x).map(|v| -v),
        Tree::Bin(op, l, r) => {
            let (a, b) = (eval_tree(l)?, eval_tree(r)?);
            let v = match op {
                '+' => a.checked_add(b)?,
                '-' => a.checked_sub(b)?,
                '*' => a.checked_mul(b)?,
                '^' => {
                    let e = u32::try_from(b).ok().filter(|e| *e <= 40)?;
                    a.checked_pow(e)?
                }
                _ => unreachable!(),
            };
            (v.abs() < 1_000_000_000_000_000).then_some(v)
        }
    }
}

fn random_tree(rng: &mut StdRng, depth: u32) -> Tree {
    if depth == 0 || rng.gen_bool(0.25) {
        let n = rng.gen_range(0..10);
        return if rng.gen_bool(0.2) { Tree::Num(-n) } else { Tree::Num(n) };
    }
    match rng.gen_range(0..6) {
        0 => Tree::Neg(Box::new(random_tree(rng, depth - 1))),
        k => {
            let op = ['+', '-', '*', '^', '+'][k - 1];
            Tree::Bin(
                op,
                Box::new(random_tree(rng, depth - 1)),
                Box::new(random_tree(rng, depth - 1)),
            )
        }
    }
}

fn parenthesization() -> Verdict {
    let mut checked = 0usize;
    for n in 0..=4 {
        let mut k = 0;
        for tree in trees(n, &mut k) {
            let e = to_expr(&tree);
            for t in TargetId::ALL {
                let text = render_expression(&e, t).map_err(|e| e.to_string())?;
                let parsed = Parser::parse(&text).map_err(|m| format!("{t} `{text}`: {m}"))?;
                if parsed != tree {
                    return Err(format!("{t} `{text}` reads as a different tree"));
                }
                for (open, close) in paren_pairs(&text) {
                    let mut without = text.clone();
                    without.remove(close);
                    without.remove(open);
                    if Parser::parse(&without).ok() == Some(tree.clone()) {
                        return Err(format!("{t} `{text}`: parentheses at {open} are redundant"));
                    }
                }
                checked += 1;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut cases = Vec::new();
    while cases.len() < 1000 {
        let tree = random_tree(&mut rng, 5);
        if let Some(v) = eval_tree(&tree) {
            let text = render_expression(&to_expr(&tree), TargetId::Python).map_err(|e| e.to_string())?;
            cases.push((tree, text, v));
        }
    }
    let how = match toolchain::discover(TargetId::Python) {
        Some(Toolchain::Python { python }) => {
            let script: String = cases.iter().map(|(_, text, _)| format!("print({text})\n")).collect();
            let out = Command::new(python)
                .args(["-c", &script])
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(String::from_utf8_lossy(&out.stderr).into_owned());
            }
            let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
            let values: Vec<&str> = stdout.lines().collect();
            for ((tree, text, v), got) in cases.iter().zip(&values) {
                if *got != v.to_string() {
                    return Err(format!("python evaluates `{text}` to {got}, expected {v} for {tree:?}"));
                }
            }
            if values.len() != cases.len() {
                return Err("python printed the wrong number of lines".into());
            }
            "evaluated by python3"
        }
        _ => {
            for (tree, text, v) in &cases {
                let parsed = Parser::parse(text)?;
                if eval_tree(&parsed) != Some(*v) {
                    return Err(format!("`{text}` reads differently from {tree:?}"));
                }
            }
            "python3 not found, checked with the reference parser"
        }
    };
    Ok(format!(
        "{checked} exhaustive renderings minimal and faithful; 1000 random Python expressions {how}"
    ))
}

// ---------------------------------------------------------------------------
// AC4

fn run_python(pkg: &Package, args: &[String], stdin: &str) -> Option<Result<String, String>> {
    let Some(Toolchain::Python { python }) = toolchain::discover(TargetId::Python) else {
        return None;
    };
    let files = match render(pkg, TargetId::Python) {
        Ok(f) => f,
        Err(e) => return Some(Err(e)),
    };
    let dir = tempfile::tempdir().ok()?;
    oogen_cli::write_files(dir.path(), &files).ok()?;
    let main = pkg.program.main_module()?;
    let mut cmd = Command::new(python);
    cmd.arg(format!("{}.py", main.name)).args(args).current_dir(dir.path());
    Some(match toolchain::run_command(cmd, stdin) {
        Ok(c) if c.success => Ok(c.stdout),
        Ok(c) => Err(c.stderr),
        Err(e) => Err(e.to_string()),
    })
}

/// Output from the interpreter and, when available, the rendered Python.
fn outputs(pkg: &Package) -> Result<Vec<(&'static str, String)>, String> {
    let mut out = vec![("interpreter", interp::run(pkg, &[], "").map_err(|e| e.to_string())?)];
    if let Some(py) = run_python(pkg, &[], "") {
        out.push(("python", py?));
    }
    Ok(out)
}

fn observer_count(pkg: &Package) -> usize {
    let main = pkg.program.main_module().and_then(Module::main_function).expect("main");
    main.body
        .statements()
        .map(|s| match s {
            Statement::Pattern(PatternStmt::InitObserverList { values, .. }) => values.len(),
            Statement::Pattern(PatternStmt::AddObserver(_)) => 1,
            _ => 0,
        })
        .sum()
}

fn pattern_semantics() -> Verdict {
    let mut runs = 0;
    for (who, out) in outputs(&example("applyDiscount").package)? {
        if normalize(&out) != "15\ntrue" {
            return Err(format!("{who}: applyDiscount printed {out:?}"));
        }
        runs += 1;
    }

    let pattern = example("patternTest").package;
    let expected_notes = observer_count(&pattern);
    for (who, out) in outputs(&pattern)? {
        let lines: Vec<&str> = out.lines().collect();
        if lines.first() != Some(&"On") {
            return Err(format!("{who}: state check printed {:?}", lines.first()));
        }
        let notes = lines.iter().filter(|l| **l == "notified").count();
        if notes != expected_notes {
            return Err(format!(
                "{who}: {notes} observers notified, list holds {expected_notes}"
            ));
        }
    }
    let unknown = gallery::pattern_test("Broken").map_err(|e| e.to_string())?;
    for (who, out) in outputs(&unknown)? {
        if out.lines().next() != Some("Neither") {
            return Err(format!("{who}: unknown state printed {out:?}"));
        }
    }

    for t in TargetId::ALL {
        let files = render(&pattern, t)?;
        for f in &files.files {
            if f.text.contains(gallery::STRATEGY_UNCHOSEN_TEXT) {
                return Err(format!("{t} {} contains code from an unchosen strategy", f.path));
            }
        }
    }
    let strategies = strategy_fixture()?;
    for t in TargetId::ALL {
        let files = render(&strategies, t)?;
        for f in &files.files {
            for token in ["tripled", "squared", "Tripling", "Squaring"] {
                if f.text.contains(token) {
                    return Err(format!("{t} {} contains `{token}` from an unchosen strategy", f.path));
                }
            }
            if f.file_type == FileType::Source && !f.text.contains("doubled") {
                return Err(format!("{t} {} lacks the chosen strategy", f.path));
            }
        }
    }
    let with_python = if runs > 1 {
        "interpreter and python3"
    } else {
        "interpreter only"
    };
    Ok(format!(
        "discount, state, fallback and {expected_notes}-observer checks hold ({with_python}); no unchosen strategy tokens in 4 targets"
    ))
}

fn strategy_fixture() -> Result<Package, String> {
    let n = var("n", Type::Int).map_err(|e| e.to_string())?;
    let local = |name: &str, factor: i64, msg: &str| -> Result<Body, String> {
        let v = var(name, Type::Int).map_err(|e| e.to_string())?;
        let product = apply_binary(BinaryOp::Mul, value_of(&n), lit_int(factor)).map_err(|e| e.to_string())?;
        Ok(body_statements(vec![
            var_dec_def(&v, product).map_err(|e| e.to_string())?,
            print_str_ln(msg),
            print_ln(value_of(&v)),
        ]))
    };
    let chosen = run_strategy(
        "double",
        vec![
            ("triple", local("tripled", 3, "Tripling")?),
            ("double", local("doubled", 2, "Doubling")?),
            ("square", local("squared", 0, "Squaring")?),
        ],
        None,
    )
    .map_err(|e| e.to_string())?;
    let mut stmts = vec![var_dec_def(&n, lit_int(7)).map_err(|e| e.to_string())?];
    stmts.extend(chosen.0);
    let main = main_function(body_statements(stmts)).map_err(|e| e.to_string())?;
    let m = build_module("Strategies", &[], vec![main], vec![]).map_err(|e| e.to_string())?;
    package(prog("strategies", vec![m]).map_err(|e| e.to_string())?, vec![]).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// AC5

fn json_round_trip() -> Verdict {
    for ex in gallery::all() {
        let text = json::encode(&ex.package);
        let back = json::decode(&text).map_err(|e| format!("{}: {e}", ex.name))?;
        if back != ex.package {
            return Err(format!("{}: decoded package differs", ex.name));
        }
        if json::encode(&back) != text {
            return Err(format!("{}: re-encoding differs", ex.name));
        }
    }
    Ok(format!("{} gallery packages", gallery::NAMES.len()))
}

// ---------------------------------------------------------------------------
// AC6

fn doc_block_above<'a>(text: &'a str, signature_start: &str) -> Result<Vec<&'a str>, String> {
    let lines: Vec<&str> = text.lines().collect();
    let at = lines
        .iter()
        .position(|l| l.trim_start().starts_with(signature_start))
        .ok_or_else(|| format!("no `{signature_start}`"))?;
    let mut block = Vec::new();
    for l in lines[..at].iter().rev() {
        let t = l.trim_start();
        if t.starts_with("/**") || t.starts_with('*') {
            block.push(t);
            if t.starts_with("/**") {
                break;
            }
        } else {
            break;
        }
    }
    block.reverse();
    Ok(block)
}

fn documentation() -> Verdict {
    let pkg = example("applyDiscount").package;
    for (t, path, sig) in [
        (
            TargetId::Java,
            "ApplyDiscount.java",
            "public static Object[] applyDiscount(",
        ),
        (
            TargetId::CSharp,
            "ApplyDiscount.cs",
            "public static void applyDiscount(",
        ),
        (TargetId::Cpp, "ApplyDiscount.hpp", "void applyDiscount("),
    ] {
        let files = render(&pkg, t)?;
        let block = doc_block_above(file_text(&files, path)?, sig)?;
        let params = block.iter().filter(|l| l.starts_with("* \\param ")).count();
        let returns = block.iter().filter(|l| l.starts_with("* \\return ")).count();
        if params != 2 || returns != 1 {
            return Err(format!(
                "{t}: {params} \\param and {returns} \\return lines in {block:?}"
            ));
        }
        let makefile = file_text(&files, "Makefile")?;
        if !makefile.lines().any(|l| l.starts_with("doc:")) || !makefile.contains("\n\tdoxygen ") {
            return Err(format!("{t}: Makefile has no doc rule"));
        }
    }
    Ok("2 \\param + 1 \\return in Java, C# and C++; Makefile doc rule present".into())
}

// ---------------------------------------------------------------------------
// AC7

fn equivalence() -> Verdict {
    let mut ran: std::collections::BTreeSet<&str> = Default::default();
    let mut skipped: std::collections::BTreeSet<&str> = Default::default();
    for ex in gallery::all() {
        let report = verify::verify(&ex.package, &TargetId::ALL, &ex.args, &ex.stdin).map_err(|e| e.to_string())?;
        if !report.agreed() {
            return Err(format!("{}:\n{}", ex.name, report.render()));
        }
        for t in &report.targets {
            match t.outcome {
                Outcome::Ran { .. } => ran.insert(t.target.name()),
                _ => skipped.insert(t.target.name()),
            };
        }
    }
    let mut msg = if ran.is_empty() {
        "no toolchains found, all targets skipped".to_string()
    } else {
        format!("9 programs agree across reference + {:?}", ran)
    };
    if !skipped.is_empty() {
        msg.push_str(&format!("; skipped {:?} (toolchain not found)", skipped));
    }
    match which_doxygen() {
        Some(doxygen) => {
            let files = render(&example("applyDiscount").package, TargetId::Cpp)?;
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            oogen_cli::write_files(dir.path(), &files).map_err(|e| e.to_string())?;
            let out = Command::new(doxygen)
                .arg("doxConfig")
                .current_dir(dir.path())
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "doxygen rejected doxConfig: {}",
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            msg.push_str("; doxygen accepted doxConfig");
        }
        None => msg.push_str("; doxygen not found, config check skipped"),
    }
    Ok(msg)
}

fn which_doxygen() -> Option<std::path::PathBuf> {
    Command::new("doxygen")
        .arg("--version")
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|_| "doxygen".into())
}
