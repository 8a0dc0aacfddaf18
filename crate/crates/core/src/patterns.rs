//! High-level constructs whose rendering differs per target: library math,
//! command-line arguments, the list API, printing and reading, in/out
//! procedures, accessors, and the Strategy, Observer and State patterns.
//!
//! Observer and State statements lower to ordinary statements through
//! [`lower_generic`]; the rest are rendered directly by each backend.

use std::collections::HashSet;

use crate::build::*;
use crate::error::BuildError;
use crate::ir::*;

type Result<T> = std::result::Result<T, BuildError>;

/// The observer list has one fixed name in every target.
pub const OBSERVER_LIST: &str = "observerList";
/// Loop variable used when notifying observers.
pub const OBSERVER_ITEM: &str = "observer";

// ---------------------------------------------------------------------------
// Library functions

pub fn math_fn(f: MathFn, arg: Expr) -> Result<Expr> {
    if !arg.ty.is_numeric() {
        return Err(BuildError::mismatch(
            format!("{f:?}").to_lowercase(),
            format!("argument has type {}", arg.ty.describe()),
        ));
    }
    let ty = if f == MathFn::Abs { arg.ty.clone() } else { Type::Float };
    Ok(Expr {
        ty,
        node: ExprNode::Math(f, Box::new(arg)),
    })
}

// ---------------------------------------------------------------------------
// Command-line arguments

pub fn args_list() -> Expr {
    Expr {
        ty: Type::list(Type::String),
        node: ExprNode::ArgsList,
    }
}

fn require_int(op: &str, e: &Expr) -> Result<()> {
    if e.ty == Type::Int {
        Ok(())
    } else {
        Err(BuildError::mismatch(op, format!("index has type {}", e.ty.describe())))
    }
}

/// The `i`th user argument; index 0 is the first argument after the program name.
pub fn arg_at(i: Expr) -> Result<Expr> {
    require_int("argAt", &i)?;
    Ok(Expr {
        ty: Type::String,
        node: ExprNode::ArgAt(Box::new(i)),
    })
}

pub fn arg_exists(i: Expr) -> Result<Expr> {
    require_int("argExists", &i)?;
    Ok(Expr {
        ty: Type::Bool,
        node: ExprNode::ArgExists(Box::new(i)),
    })
}

// ---------------------------------------------------------------------------
// Lists

fn elem_of<'a>(op: &str, list: &'a Expr) -> Result<&'a Type> {
    list.ty
        .element()
        .ok_or_else(|| BuildError::mismatch(op, format!("expected a list, got {}", list.ty.describe())))
}

pub fn list_lit(elem: Type, values: Vec<Expr>) -> Result<Expr> {
    for v in &values {
        if v.ty != elem {
            return Err(BuildError::mismatch(
                "litList",
                format!("element of type {} in list of {}", v.ty.describe(), elem.describe()),
            ));
        }
    }
    Ok(Expr {
        ty: Type::list(elem),
        node: ExprNode::ListLit(values),
    })
}

pub fn list_access(list: Expr, index: Expr) -> Result<Expr> {
    let elem = elem_of("listAccess", &list)?.clone();
    require_int("listAccess", &index)?;
    Ok(Expr {
        ty: elem,
        node: ExprNode::ListAccess(Box::new(list), Box::new(index)),
    })
}

/// Same as [`list_access`].
pub fn at(list: Expr, index: Expr) -> Result<Expr> {
    list_access(list, index)
}

pub fn list_set(list: Expr, index: Expr, value: Expr) -> Result<Statement> {
    let elem = elem_of("listSet", &list)?;
    require_int("listSet", &index)?;
    if !assignable(elem, &value.ty) {
        return Err(BuildError::mismatch(
            "listSet",
            format!("storing {} in list of {}", value.ty.describe(), elem.describe()),
        ));
    }
    Ok(Statement::ListSet(list, index, value))
}

pub fn list_size(list: Expr) -> Result<Expr> {
    elem_of("listSize", &list)?;
    Ok(Expr {
        ty: Type::Int,
        node: ExprNode::ListSize(Box::new(list)),
    })
}

pub fn list_append(list: Expr, value: Expr) -> Result<Expr> {
    let elem = elem_of("listAppend", &list)?;
    if !assignable(elem, &value.ty) {
        return Err(BuildError::mismatch(
            "listAppend",
            format!("appending {} to list of {}", value.ty.describe(), elem.describe()),
        ));
    }
    Ok(Expr {
        ty: Type::Void,
        node: ExprNode::ListAppend(Box::new(list), Box::new(value)),
    })
}

pub fn list_index_exists(list: Expr, index: Expr) -> Result<Expr> {
    elem_of("listIndexExists", &list)?;
    require_int("listIndexExists", &index)?;
    Ok(Expr {
        ty: Type::Bool,
        node: ExprNode::ListIndexExists(Box::new(list), Box::new(index)),
    })
}

pub fn index_of(list: Expr, value: Expr) -> Result<Expr> {
    let elem = elem_of("indexOf", &list)?;
    if *elem != value.ty {
        return Err(BuildError::mismatch(
            "indexOf",
            format!("searching for {} in list of {}", value.ty.describe(), elem.describe()),
        ));
    }
    Ok(Expr {
        ty: Type::Int,
        node: ExprNode::IndexOf(Box::new(list), Box::new(value)),
    })
}

/// `target = source[start:end:step]`; missing bounds default to the start,
/// the end and 1. The end bound is exclusive.
pub fn list_slice(
    target: &Variable,
    source: Expr,
    start: Option<Expr>,
    end: Option<Expr>,
    step: Option<Expr>,
) -> Result<Statement> {
    if target.ty.element().is_none() || target.ty != source.ty {
        return Err(BuildError::mismatch(
            "listSlice",
            format!(
                "slicing {} into `{}: {}`",
                source.ty.describe(),
                target.name,
                target.ty.describe()
            ),
        ));
    }
    for e in [&start, &end, &step].into_iter().flatten() {
        require_int("listSlice", e)?;
    }
    Ok(Statement::ListSlice {
        target: target.clone(),
        source,
        start,
        end,
        step,
    })
}

// ---------------------------------------------------------------------------
// Printing and reading

pub fn print(e: Expr) -> Statement {
    Statement::Print(PrintKind::Print, e)
}

pub fn print_ln(e: Expr) -> Statement {
    Statement::Print(PrintKind::PrintLn, e)
}

pub fn print_str(s: &str) -> Statement {
    print(lit_string(s))
}

pub fn print_str_ln(s: &str) -> Statement {
    print_ln(lit_string(s))
}

pub fn read_line(v: &Variable) -> Result<Statement> {
    if v.ty != Type::String {
        return Err(BuildError::mismatch(
            "readLine",
            format!("`{}` is {}", v.name, v.ty.describe()),
        ));
    }
    Ok(Statement::Pattern(PatternStmt::ReadLine(v.clone())))
}

pub fn read_int(v: &Variable) -> Result<Statement> {
    if v.ty != Type::Int {
        return Err(BuildError::mismatch(
            "readInt",
            format!("`{}` is {}", v.name, v.ty.describe()),
        ));
    }
    Ok(Statement::Pattern(PatternStmt::ReadInt(v.clone())))
}

/// The element-by-element loop that prints a list as `[a, b, c]` in targets
/// without a native list printer. `depth` numbers the loop counter so nested
/// list prints do not clash.
pub fn list_print_loop(list: &Expr, kind: PrintKind, depth: usize) -> Result<Vec<Statement>> {
    elem_of("printLn", list)?;
    let counter = var(&format!("list_i{depth}"), Type::Int)?;
    let size = list_size(list.clone())?;
    let last = apply_binary(BinaryOp::Sub, size.clone(), lit_int(1))?;
    let loop_body = body_statements(vec![
        print(list_access(list.clone(), value_of(&counter))?),
        print_str(", "),
    ]);
    let for_stmt = for_loop(
        var_dec_def(&counter, lit_int(0))?,
        apply_binary(BinaryOp::Lt, value_of(&counter), last.clone())?,
        increment(&counter)?,
        loop_body,
    )?;
    let guard = if_no_else(vec![(
        apply_binary(BinaryOp::Gt, size, lit_int(0))?,
        one_liner(print(list_access(list.clone(), last)?)),
    )])?;
    Ok(vec![
        print_str("["),
        for_stmt,
        guard,
        Statement::Print(kind, lit_string("]")),
    ])
}

// ---------------------------------------------------------------------------
// In/out procedures

/// A procedure with input, output and input-output parameters. Parameters
/// are ordered in-outs, then inputs, then outputs.
pub fn in_out_func(
    name: &str,
    scope: Scope,
    binding: Binding,
    ins: &[Variable],
    outs: &[Variable],
    inouts: &[Variable],
    body: Body,
) -> Result<Method> {
    in_out_method(name, None, scope, binding, ins, outs, inouts, body)
}

#[allow(clippy::too_many_arguments)]
pub fn in_out_method(
    name: &str,
    class: Option<&str>,
    scope: Scope,
    binding: Binding,
    ins: &[Variable],
    outs: &[Variable],
    inouts: &[Variable],
    body: Body,
) -> Result<Method> {
    if outs.is_empty() && inouts.is_empty() {
        return Err(BuildError::InvalidInOut(format!("`{name}` has no outputs")));
    }
    let mut seen = HashSet::new();
    for v in ins.iter().chain(outs).chain(inouts) {
        if !seen.insert(v.name.as_str()) {
            return Err(BuildError::InvalidInOut(format!(
                "`{}` appears in more than one parameter list of `{name}`",
                v.name
            )));
        }
    }
    let params = inouts
        .iter()
        .map(pointer_param)
        .chain(ins.iter().map(param))
        .chain(outs.iter().map(pointer_param))
        .collect();
    let plain = |vs: &[Variable]| vs.iter().map(Variable::as_plain).collect::<Vec<_>>();
    let spec = InOutSpec {
        ins: plain(ins),
        outs: plain(outs),
        inouts: plain(inouts),
    };
    mk_method(
        name,
        class,
        scope,
        binding,
        Type::Void,
        params,
        body,
        MethodKind::InOut(spec),
    )
}

pub fn in_out_call(name: &str, ins: Vec<Expr>, outs: &[Variable], inouts: &[Variable]) -> Result<Statement> {
    check_ident(name)?;
    Ok(Statement::Pattern(PatternStmt::InOutCall {
        name: name.to_string(),
        ins,
        outs: outs.to_vec(),
        inouts: inouts.to_vec(),
    }))
}

/// Checks a call site against the procedure it targets.
pub fn check_in_out_call(target: &Method, call: &Statement) -> Result<()> {
    let spec = target.in_out().ok_or_else(|| BuildError::SignatureMismatch {
        name: target.name.clone(),
        detail: "not an in/out function".into(),
    })?;
    match call {
        Statement::Pattern(PatternStmt::InOutCall {
            name,
            ins,
            outs,
            inouts,
        }) if *name == target.name => crate::validate::check_call_against(name, spec, ins, outs, inouts),
        _ => Err(BuildError::SignatureMismatch {
            name: target.name.clone(),
            detail: "statement is not a call to this function".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Getters and setters

fn accessor_name(prefix: &str, var_name: &str) -> String {
    let mut chars = var_name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => format!("{prefix}{}{}", c.to_ascii_uppercase(), chars.as_str()),
        // Names not starting with a lowercase letter keep their spelling behind
        // an underscore so `foo` and `Foo` get distinct accessors.
        _ => format!("{prefix}_{var_name}"),
    }
}

pub fn getter_name(v: &Variable) -> String {
    accessor_name("get", &v.name)
}

pub fn setter_name(v: &Variable) -> String {
    accessor_name("set", &v.name)
}

pub fn get_method(class: &str, v: &Variable) -> Result<Method> {
    pub_method(
        &getter_name(v),
        class,
        v.ty.clone(),
        vec![],
        one_liner(return_state(value_of(&v.as_self_member()))),
    )
}

pub fn set_method(class: &str, v: &Variable) -> Result<Method> {
    let arg = v.as_plain();
    pub_method(
        &setter_name(v),
        class,
        Type::Void,
        vec![param(&arg)],
        one_liner(assign(&v.as_self_member(), value_of(&arg))?),
    )
}

pub fn get(object: Expr, v: &Variable) -> Result<Expr> {
    obj_method_call(object, &getter_name(v), v.ty.clone(), vec![])
}

pub fn set(object: Expr, v: &Variable, value: Expr) -> Result<Statement> {
    if !assignable(&v.ty, &value.ty) {
        return Err(BuildError::mismatch(
            "set",
            format!("`{}: {}` set to {}", v.name, v.ty.describe(), value.ty.describe()),
        ));
    }
    Ok(value_stmt(obj_method_call(
        object,
        &setter_name(v),
        Type::Void,
        vec![value],
    )?))
}

// ---------------------------------------------------------------------------
// Strategy

/// Selects a strategy at generation time: only the chosen body is emitted,
/// followed by the optional result assignment.
pub fn run_strategy(chosen: &str, table: Vec<(&str, Body)>, result: Option<(&Variable, Expr)>) -> Result<Block> {
    let chosen_body = table
        .into_iter()
        .find(|(name, _)| *name == chosen)
        .map(|(_, b)| b)
        .ok_or_else(|| BuildError::UnknownStrategy(chosen.to_string()))?;
    let mut stmts: Vec<Statement> = chosen_body.0.into_iter().flat_map(|b| b.0).collect();
    if let Some((v, value)) = result {
        stmts.push(assign(v, value)?);
    }
    Ok(block(stmts))
}

// ---------------------------------------------------------------------------
// Observer

pub fn observer_list_var(elem: &Type) -> Variable {
    Variable {
        name: OBSERVER_LIST.to_string(),
        ty: Type::list(elem.clone()),
        binding: Binding::Dynamic,
        form: VarForm::Plain,
    }
}

pub fn init_observer_list(elem: Type, values: Vec<Expr>) -> Result<Statement> {
    for v in &values {
        if v.ty != elem {
            return Err(BuildError::mismatch(
                "initObserverList",
                format!("observer of type {} in list of {}", v.ty.describe(), elem.describe()),
            ));
        }
    }
    Ok(Statement::Pattern(PatternStmt::InitObserverList { elem, values }))
}

pub fn add_observer(value: Expr) -> Statement {
    Statement::Pattern(PatternStmt::AddObserver(value))
}

pub fn notify_observers(method: &str, elem: Type) -> Result<Statement> {
    check_ident(method)?;
    Ok(Statement::Pattern(PatternStmt::NotifyObservers {
        method: method.to_string(),
        elem,
    }))
}

// ---------------------------------------------------------------------------
// State

pub fn init_state(name: &str, label: &str) -> Result<Statement> {
    check_ident(name)?;
    Ok(Statement::Pattern(PatternStmt::InitState {
        name: name.to_string(),
        label: label.to_string(),
    }))
}

pub fn change_state(name: &str, label: &str) -> Result<Statement> {
    check_ident(name)?;
    Ok(Statement::Pattern(PatternStmt::ChangeState {
        name: name.to_string(),
        label: label.to_string(),
    }))
}

/// Runs the body whose label matches the current state, else the fallback.
pub fn check_state(name: &str, cases: Vec<(&str, Body)>, fallback: Body) -> Result<Statement> {
    check_ident(name)?;
    let mut seen = HashSet::new();
    for (label, _) in &cases {
        if !seen.insert(*label) {
            return Err(BuildError::DuplicateStateLabel(label.to_string()));
        }
    }
    Ok(Statement::Pattern(PatternStmt::CheckState {
        name: name.to_string(),
        cases: cases.into_iter().map(|(l, b)| (l.to_string(), b)).collect(),
        fallback,
    }))
}

fn state_var_named(name: &str) -> Variable {
    Variable {
        name: name.to_string(),
        ty: Type::String,
        binding: Binding::Dynamic,
        form: VarForm::Plain,
    }
}

/// Lowers Observer and State statements to ordinary statements. Returns
/// `None` for patterns that backends render directly.
pub fn lower_generic(p: &PatternStmt) -> Option<Statement> {
    Some(match p {
        PatternStmt::InitObserverList { elem, values } => Statement::VarDecDef(
            observer_list_var(elem),
            Expr {
                ty: Type::list(elem.clone()),
                node: ExprNode::ListLit(values.clone()),
            },
        ),
        PatternStmt::AddObserver(value) => {
            let list = value_of(&observer_list_var(&value.ty));
            Statement::Expr(Expr {
                ty: Type::Void,
                node: ExprNode::ListAppend(Box::new(list), Box::new(value.clone())),
            })
        }
        PatternStmt::NotifyObservers { method, elem } => {
            let item = Variable {
                name: OBSERVER_ITEM.to_string(),
                ty: elem.clone(),
                binding: Binding::Dynamic,
                form: VarForm::Plain,
            };
            let notify = Expr {
                ty: Type::Void,
                node: ExprNode::Call(CallSpec {
                    form: CallForm::Method(Box::new(value_of(&item))),
                    name: method.clone(),
                    args: vec![],
                }),
            };
            Statement::ForEach {
                var: item,
                list: value_of(&observer_list_var(elem)),
                body: one_liner(Statement::Expr(notify)),
            }
        }
        PatternStmt::InitState { name, label } => Statement::VarDecDef(state_var_named(name), lit_string(label)),
        PatternStmt::ChangeState { name, label } => {
            Statement::Assign(AssignMode::Set, state_var_named(name), Some(lit_string(label)))
        }
        PatternStmt::CheckState { name, cases, fallback } => Statement::Switch {
            scrutinee: value_of(&state_var_named(name)),
            cases: cases
                .iter()
                .map(|(l, b)| (Literal::String(l.clone()), b.clone()))
                .collect(),
            default: fallback.clone(),
        },
        PatternStmt::ReadLine(_) | PatternStmt::ReadInt(_) | PatternStmt::InOutCall { .. } => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn math_typing() {
        let foo = var("foo", Type::Float).unwrap();
        assert_eq!(math_fn(MathFn::Sin, value_of(&foo)).unwrap().ty, Type::Float);
        assert_eq!(math_fn(MathFn::Abs, lit_int(-2)).unwrap().ty, Type::Int);
        assert!(math_fn(MathFn::Sin, lit_string("x")).is_err());
    }

    #[test]
    fn list_api_typing() {
        let ages = list_var("ages", Type::Int).unwrap();
        assert_eq!(list_access(value_of(&ages), lit_int(1)).unwrap().ty, Type::Int);
        assert!(list_access(value_of(&ages), lit_string("1")).is_err());
        assert!(list_access(lit_int(3), lit_int(1)).is_err());
        assert!(list_append(value_of(&ages), lit_string("x")).is_err());
        assert!(list_set(value_of(&ages), lit_int(0), lit_int(1)).is_ok());
        assert_eq!(index_of(value_of(&ages), lit_int(3)).unwrap().ty, Type::Int);
        assert_eq!(list_lit(Type::Int, vec![]).unwrap().ty, Type::list(Type::Int));
        assert!(list_lit(Type::Int, vec![lit_float(1.0)]).is_err());
    }

    #[test]
    fn slice_typing() {
        let ages = list_var("ages", Type::Float).unwrap();
        let some = list_var("someAges", Type::Float).unwrap();
        let ints = list_var("ints", Type::Int).unwrap();
        assert!(list_slice(&some, value_of(&ages), Some(lit_int(1)), Some(lit_int(3)), None).is_ok());
        assert!(list_slice(&ints, value_of(&ages), None, None, None).is_err());
    }

    #[test]
    fn strategy_selects_only_the_chosen_body() {
        let a = one_liner(print_str_ln("A"));
        let b = one_liner(print_str_ln("B"));
        let chosen = run_strategy("a", vec![("a", a.clone()), ("b", b.clone())], None).unwrap();
        assert_eq!(chosen, block(vec![print_str_ln("A")]));

        let r = var("r", Type::Int).unwrap();
        let with_result = run_strategy("a", vec![("a", a.clone()), ("b", b.clone())], Some((&r, lit_int(1)))).unwrap();
        assert_eq!(with_result.0.len(), 2);
        assert_eq!(with_result.0[1], assign(&r, lit_int(1)).unwrap());

        assert_eq!(
            run_strategy("c", vec![("a", a), ("b", b)], None),
            Err(BuildError::UnknownStrategy("c".into()))
        );
    }

    #[test]
    fn observer_order_is_checked() {
        let obs = obj("Observer").unwrap();
        let o = var("o", obs.clone()).unwrap();
        let early = main_function(body_statements(vec![add_observer(value_of(&o))]));
        assert_eq!(early, Err(BuildError::ObserverNotInitialized));
        let early_notify = main_function(body_statements(vec![notify_observers("f", obs.clone()).unwrap()]));
        assert_eq!(early_notify, Err(BuildError::ObserverNotInitialized));

        let ok = main_function(body(vec![
            block(vec![init_observer_list(obs.clone(), vec![]).unwrap()]),
            block(vec![
                add_observer(value_of(&o)),
                while_loop(lit_true(), one_liner(notify_observers("f", obs.clone()).unwrap())).unwrap(),
            ]),
        ]));
        assert!(ok.is_ok());

        // Initialising inside a nested scope does not cover the outer one.
        let nested = main_function(body_statements(vec![
            while_loop(lit_true(), one_liner(init_observer_list(obs.clone(), vec![]).unwrap())).unwrap(),
            add_observer(value_of(&o)),
        ]));
        assert_eq!(nested, Err(BuildError::ObserverNotInitialized));
    }

    #[test]
    fn state_labels_are_unique() {
        let dup = check_state(
            "fsm",
            vec![("On", Body::default()), ("On", Body::default())],
            Body::default(),
        );
        assert_eq!(dup, Err(BuildError::DuplicateStateLabel("On".into())));
    }

    #[test]
    fn in_out_parameter_order() {
        let price = var("price", Type::Int).unwrap();
        let discount = var("discount", Type::Int).unwrap();
        let affordable = var("isAffordable", Type::Bool).unwrap();
        let f = in_out_func(
            "applyDiscount",
            Scope::Public,
            Binding::Static,
            std::slice::from_ref(&discount),
            std::slice::from_ref(&affordable),
            std::slice::from_ref(&price),
            Body::default(),
        )
        .unwrap();
        let names: Vec<_> = f.params.iter().map(|p| p.variable.name.as_str()).collect();
        assert_eq!(names, ["price", "discount", "isAffordable"]);
        assert!(in_out_func(
            "g",
            Scope::Public,
            Binding::Static,
            std::slice::from_ref(&price),
            &[],
            &[],
            Body::default()
        )
        .is_err());
        assert!(in_out_func(
            "g",
            Scope::Public,
            Binding::Static,
            std::slice::from_ref(&price),
            std::slice::from_ref(&price),
            &[],
            Body::default()
        )
        .is_err());

        let good = in_out_call(
            "applyDiscount",
            vec![value_of(&discount)],
            std::slice::from_ref(&affordable),
            std::slice::from_ref(&price),
        )
        .unwrap();
        assert!(check_in_out_call(&f, &good).is_ok());
        let bad = in_out_call("applyDiscount", vec![], &[affordable], &[price]).unwrap();
        assert!(matches!(
            check_in_out_call(&f, &bad),
            Err(BuildError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn accessor_names() {
        let x = var("x", Type::Int).unwrap();
        assert_eq!(getter_name(&x), "getX");
        assert_eq!(setter_name(&x), "setX");
        let foo = var("foo", Type::Int).unwrap();
        let m = set_method("FooClass", &foo).unwrap();
        assert_eq!(m.name, "setFoo");
        assert_eq!(m.containing_class.as_deref(), Some("FooClass"));
    }

    proptest! {
        #[test]
        fn accessor_names_are_injective(a in "[A-Za-z_][A-Za-z0-9_]{0,6}", b in "[A-Za-z_][A-Za-z0-9_]{0,6}") {
            prop_assume!(a != b);
            let va = var(&a, Type::Int).unwrap();
            let vb = var(&b, Type::Int).unwrap();
            prop_assert_ne!(getter_name(&va), getter_name(&vb));
            prop_assert_ne!(setter_name(&va), setter_name(&vb));
        }
    }
}
