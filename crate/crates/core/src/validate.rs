//! Build-time checks over whole trees.
//!
//! The builders call these as trees are assembled; [`check_package`] re-runs
//! everything for trees that arrive from JSON.

use std::collections::{HashMap, HashSet};

use crate::build::{assignable, check_ident};
use crate::error::BuildError;
use crate::ir::*;

type Result<T> = std::result::Result<T, BuildError>;

/// Visits every statement reachable from `body`, outer statements first.
pub fn walk_body<'a>(body: &'a Body, f: &mut impl FnMut(&'a Statement)) {
    for s in body.statements() {
        walk_statement(s, f);
    }
}

pub fn walk_statement<'a>(s: &'a Statement, f: &mut impl FnMut(&'a Statement)) {
    f(s);
    for b in nested_bodies(s) {
        walk_body(b, f);
    }
    if let Statement::For { init, update, .. } = s {
        walk_statement(init, f);
        walk_statement(update, f);
    }
}

pub fn nested_bodies(s: &Statement) -> Vec<&Body> {
    match s {
        Statement::If { branches, else_body } => branches.iter().map(|(_, b)| b).chain(else_body.iter()).collect(),
        Statement::Switch { cases, default, .. } => {
            cases.iter().map(|(_, b)| b).chain(std::iter::once(default)).collect()
        }
        Statement::For { body, .. }
        | Statement::ForRange { body, .. }
        | Statement::ForEach { body, .. }
        | Statement::While { body, .. } => vec![body],
        Statement::TryCatch { try_body, catch_body } => vec![try_body, catch_body],
        Statement::Pattern(PatternStmt::CheckState { cases, fallback, .. }) => {
            cases.iter().map(|(_, b)| b).chain(std::iter::once(fallback)).collect()
        }
        _ => vec![],
    }
}

/// Arity, observer-ordering and state-label checks for a method body.
pub fn check_body(body: &Body) -> Result<()> {
    let mut err = None;
    walk_body(body, &mut |s| {
        if err.is_none() {
            err = check_arity(s).err();
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    check_observers(body, false)
}

fn check_arity(s: &Statement) -> Result<()> {
    match s {
        Statement::Assign(mode, v, e) => {
            let needs_value = !matches!(mode, AssignMode::Inc | AssignMode::Dec);
            if needs_value != e.is_some() {
                return Err(BuildError::mismatch(
                    "assign",
                    format!("{mode:?} on `{}` has the wrong number of values", v.name),
                ));
            }
            Ok(())
        }
        Statement::If { branches, .. } if branches.is_empty() => Err(BuildError::EmptyConditional),
        Statement::Switch { cases, .. } if cases.is_empty() => Err(BuildError::EmptyConditional),
        Statement::Pattern(PatternStmt::CheckState { cases, .. }) => {
            let mut seen = HashSet::new();
            for (label, _) in cases {
                if !seen.insert(label.as_str()) {
                    return Err(BuildError::DuplicateStateLabel(label.clone()));
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Observer statements must follow an `initObserverList` in the same or an
/// enclosing scope.
fn check_observers(body: &Body, mut initialised: bool) -> Result<()> {
    for s in body.statements() {
        match s {
            Statement::Pattern(PatternStmt::InitObserverList { .. }) => initialised = true,
            Statement::Pattern(PatternStmt::AddObserver(_) | PatternStmt::NotifyObservers { .. }) if !initialised => {
                return Err(BuildError::ObserverNotInitialized)
            }
            _ => {}
        }
        for b in nested_bodies(s) {
            check_observers(b, initialised)?;
        }
    }
    Ok(())
}

/// Constant state variables may not be assigned inside their class.
pub fn check_class(class: &ClassDecl) -> Result<()> {
    let consts: HashSet<&str> = class
        .state_vars
        .iter()
        .filter(|sv| sv.is_const)
        .map(|sv| sv.variable.name.as_str())
        .collect();
    if consts.is_empty() {
        return Ok(());
    }
    let targets_const = |v: &Variable| {
        consts.contains(v.name.as_str())
            && match &v.form {
                VarForm::SelfMember => true,
                VarForm::ClassMember(c) => *c == class.name,
                _ => false,
            }
    };
    for m in &class.methods {
        let mut hit = None;
        walk_body(&m.body, &mut |s| {
            if let Statement::Assign(_, v, _) = s {
                if hit.is_none() && targets_const(v) {
                    hit = Some(v.name.clone());
                }
            }
        });
        if let Some(name) = hit {
            return Err(BuildError::ConstAssignment(name));
        }
    }
    Ok(())
}

fn all_methods(program: &Program) -> impl Iterator<Item = &Method> {
    program.modules.iter().flat_map(|m| {
        m.functions
            .iter()
            .chain(m.classes.iter().flat_map(|c| c.methods.iter()))
    })
}

pub fn check_program(program: &Program) -> Result<()> {
    let mut names = HashSet::new();
    for m in &program.modules {
        check_ident(&m.name)?;
        if !names.insert(m.name.as_str()) {
            return Err(BuildError::DuplicateModule(m.name.clone()));
        }
    }
    let mut main_seen = None;
    for m in &program.modules {
        let has_main = m.functions.iter().any(|f| f.is_main);
        if has_main != m.is_main_module {
            return Err(BuildError::mismatch(
                "buildModule",
                format!("module `{}` main flag disagrees with its functions", m.name),
            ));
        }
        for f in m.functions.iter().filter(|f| f.is_main) {
            if main_seen.replace(f.name.clone()).is_some() {
                return Err(BuildError::MultipleMain(m.name.clone()));
            }
        }
        for c in &m.classes {
            check_class(c)?;
            if c.methods.iter().any(|f| f.is_main) {
                return Err(BuildError::MultipleMain(c.name.clone()));
            }
        }
    }
    for m in all_methods(program) {
        check_body(&m.body)?;
    }
    check_in_out_calls(program)
}

fn check_in_out_calls(program: &Program) -> Result<()> {
    let specs: HashMap<&str, &InOutSpec> = all_methods(program)
        .filter_map(|m| m.in_out().map(|s| (m.name.as_str(), s)))
        .collect();
    let mut result = Ok(());
    for m in all_methods(program) {
        walk_body(&m.body, &mut |s| {
            if result.is_err() {
                return;
            }
            if let Statement::Pattern(PatternStmt::InOutCall {
                name,
                ins,
                outs,
                inouts,
            }) = s
            {
                result = match specs.get(name.as_str()) {
                    None => Err(BuildError::SignatureMismatch {
                        name: name.clone(),
                        detail: "no in/out function with this name".into(),
                    }),
                    Some(spec) => check_call_against(name, spec, ins, outs, inouts),
                };
            }
        });
    }
    result
}

pub(crate) fn check_call_against(
    name: &str,
    spec: &InOutSpec,
    ins: &[Expr],
    outs: &[Variable],
    inouts: &[Variable],
) -> Result<()> {
    let mismatch = |detail: String| BuildError::SignatureMismatch {
        name: name.to_string(),
        detail,
    };
    if ins.len() != spec.ins.len() || outs.len() != spec.outs.len() || inouts.len() != spec.inouts.len() {
        return Err(mismatch(format!(
            "expected {}/{}/{} in/out/in-out arguments, got {}/{}/{}",
            spec.ins.len(),
            spec.outs.len(),
            spec.inouts.len(),
            ins.len(),
            outs.len(),
            inouts.len()
        )));
    }
    for (arg, p) in ins.iter().zip(&spec.ins) {
        if !assignable(&p.ty, &arg.ty) {
            return Err(mismatch(format!("input `{}` given {}", p.name, arg.ty.describe())));
        }
    }
    for (arg, p) in outs.iter().zip(&spec.outs).chain(inouts.iter().zip(&spec.inouts)) {
        if arg.ty != p.ty {
            return Err(mismatch(format!(
                "`{}: {}` bound to `{}: {}`",
                p.name,
                p.ty.describe(),
                arg.name,
                arg.ty.describe()
            )));
        }
    }
    Ok(())
}

pub fn check_package(pkg: &Package) -> Result<()> {
    check_program(&pkg.program)?;
    let makefiles = pkg
        .aux
        .iter()
        .filter(|a| matches!(a, AuxFileSpec::Makefile { .. }))
        .count();
    let doxygen = pkg
        .aux
        .iter()
        .filter(|a| matches!(a, AuxFileSpec::DoxygenConfig))
        .count();
    if makefiles > 1 {
        return Err(BuildError::DuplicateAuxFile("Makefile".into()));
    }
    if doxygen > 1 {
        return Err(BuildError::DuplicateAuxFile("doxConfig".into()));
    }
    Ok(())
}
