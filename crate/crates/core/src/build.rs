//! Smart constructors for the program tree.
//!
//! Builders are pure: the same arguments always produce structurally equal
//! trees. Type and arity rules are checked here, at construction time.

use std::collections::HashSet;

use crate::error::BuildError;
use crate::ir::*;
use crate::validate;

type Result<T> = std::result::Result<T, BuildError>;

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_ident(name: &str) -> Result<()> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(BuildError::InvalidIdentifier(name.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Types and variables

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Bool,
    Int,
    Float,
    Char,
    String,
    InFile,
    OutFile,
    Void,
    List,
    Object,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypePayload {
    Element(Type),
    ClassName(String),
}

/// Builds a type from its kind; lists need an element type and objects a class name.
pub fn type_of(kind: TypeKind, payload: Option<TypePayload>) -> Result<Type> {
    let bad = |what: &str| BuildError::mismatch("typeOf", what.to_string());
    Ok(match (kind, payload) {
        (TypeKind::List, Some(TypePayload::Element(e))) => Type::list(e),
        (TypeKind::List, _) => return Err(bad("list needs an element type")),
        (TypeKind::Object, Some(TypePayload::ClassName(c))) => return obj(&c),
        (TypeKind::Object, _) => return Err(bad("object needs a class name")),
        (_, Some(_)) => return Err(bad("only list and object types carry a payload")),
        (TypeKind::Bool, None) => Type::Bool,
        (TypeKind::Int, None) => Type::Int,
        (TypeKind::Float, None) => Type::Float,
        (TypeKind::Char, None) => Type::Char,
        (TypeKind::String, None) => Type::String,
        (TypeKind::InFile, None) => Type::InFile,
        (TypeKind::OutFile, None) => Type::OutFile,
        (TypeKind::Void, None) => Type::Void,
    })
}

pub fn obj(class: &str) -> Result<Type> {
    check_ident(class)?;
    Ok(Type::Object(class.to_string()))
}

/// Creates a variable with dynamic binding.
pub fn mk_var(form: VarForm, name: &str, ty: Type) -> Result<Variable> {
    check_ident(name)?;
    match &form {
        VarForm::External(lib) => check_ident(lib)?,
        VarForm::ClassMember(class) => check_ident(class)?,
        _ => {}
    }
    Ok(Variable {
        name: name.to_string(),
        ty,
        binding: Binding::Dynamic,
        form,
    })
}

pub fn var(name: &str, ty: Type) -> Result<Variable> {
    mk_var(VarForm::Plain, name, ty)
}

pub fn list_var(name: &str, elem: Type) -> Result<Variable> {
    var(name, Type::list(elem))
}

pub fn ext_var(lib: &str, name: &str, ty: Type) -> Result<Variable> {
    mk_var(VarForm::External(lib.to_string()), name, ty)
}

pub fn class_var(class: &str, name: &str, ty: Type) -> Result<Variable> {
    let mut v = mk_var(VarForm::ClassMember(class.to_string()), name, ty)?;
    v.binding = Binding::Static;
    Ok(v)
}

pub fn obj_var(owner: &Variable, name: &str, ty: Type) -> Result<Variable> {
    mk_var(VarForm::ObjectMember(Box::new(owner.clone())), name, ty)
}

/// A member of the object whose class is being defined (`self.x`, `this.x`).
pub fn self_var(name: &str, ty: Type) -> Result<Variable> {
    mk_var(VarForm::SelfMember, name, ty)
}

impl Variable {
    /// The same name and type, qualified as a member of `self`.
    pub fn as_self_member(&self) -> Variable {
        Variable {
            form: VarForm::SelfMember,
            binding: Binding::Dynamic,
            ..self.clone()
        }
    }

    pub fn as_plain(&self) -> Variable {
        Variable {
            form: VarForm::Plain,
            binding: Binding::Dynamic,
            ..self.clone()
        }
    }
}

// ---------------------------------------------------------------------------
// Values

pub fn lit(l: Literal) -> Expr {
    Expr {
        ty: l.ty(),
        node: ExprNode::Lit(l),
    }
}

pub fn lit_int(i: i64) -> Expr {
    lit(Literal::Int(i))
}

pub fn lit_float(f: f64) -> Expr {
    lit(Literal::Float(f))
}

pub fn lit_bool(b: bool) -> Expr {
    lit(Literal::Bool(b))
}

pub fn lit_true() -> Expr {
    lit_bool(true)
}

pub fn lit_false() -> Expr {
    lit_bool(false)
}

pub fn lit_char(c: char) -> Expr {
    lit(Literal::Char(c))
}

pub fn lit_string(s: &str) -> Expr {
    lit(Literal::String(s.to_string()))
}

pub fn value_of(v: &Variable) -> Expr {
    Expr {
        ty: v.ty.clone(),
        node: ExprNode::ValueOf(v.clone()),
    }
}

fn numeric_join(a: &Type, b: &Type) -> Type {
    if *a == Type::Int && *b == Type::Int {
        Type::Int
    } else {
        Type::Float
    }
}

pub fn apply_unary(op: UnaryOp, e: Expr) -> Result<Expr> {
    let token = op.spec().token;
    let ty = match op {
        UnaryOp::Not if e.ty == Type::Bool => Type::Bool,
        UnaryOp::Negate | UnaryOp::Abs if e.ty.is_numeric() => e.ty.clone(),
        UnaryOp::Sqrt if e.ty.is_numeric() => Type::Float,
        _ => {
            return Err(BuildError::mismatch(
                token,
                format!("operand has type {}", e.ty.describe()),
            ))
        }
    };
    Ok(Expr {
        ty,
        node: ExprNode::Unary(op, Box::new(e)),
    })
}

pub fn apply_binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Result<Expr> {
    let (l, r) = (&lhs.ty, &rhs.ty);
    let ok_ty = match op {
        BinaryOp::And | BinaryOp::Or => (*l == Type::Bool && *r == Type::Bool).then_some(Type::Bool),
        BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
            (l.is_numeric() && r.is_numeric()).then_some(Type::Bool)
        }
        BinaryOp::Eq | BinaryOp::Ne => (l == r || (l.is_numeric() && r.is_numeric())).then_some(Type::Bool),
        BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div => {
            (l.is_numeric() && r.is_numeric()).then(|| numeric_join(l, r))
        }
        BinaryOp::Pow => (l.is_numeric() && r.is_numeric()).then_some(Type::Float),
    };
    match ok_ty {
        Some(ty) => Ok(Expr {
            ty,
            node: ExprNode::Binary(op, Box::new(lhs), Box::new(rhs)),
        }),
        None => Err(BuildError::mismatch(
            op.spec().token,
            format!("operands have types {} and {}", l.describe(), r.describe()),
        )),
    }
}

/// Whether a value of type `value` may be stored in a slot of type `slot`.
pub fn assignable(slot: &Type, value: &Type) -> bool {
    slot == value || (*slot == Type::Float && *value == Type::Int)
}

pub fn inline_if(cond: Expr, then: Expr, otherwise: Expr) -> Result<Expr> {
    if cond.ty != Type::Bool {
        return Err(BuildError::mismatch(
            "inlineIf",
            format!("condition has type {}", cond.ty.describe()),
        ));
    }
    if then.ty != otherwise.ty {
        return Err(BuildError::mismatch(
            "inlineIf",
            format!(
                "branches have types {} and {}",
                then.ty.describe(),
                otherwise.ty.describe()
            ),
        ));
    }
    Ok(Expr {
        ty: then.ty.clone(),
        node: ExprNode::InlineIf(Box::new(cond), Box::new(then), Box::new(otherwise)),
    })
}

/// A call node; `ret` is the callee's declared return type.
pub fn call(spec: CallSpec, ret: Type) -> Result<Expr> {
    check_ident(&spec.name)?;
    if spec.form == CallForm::Constructor && ret != Type::Object(spec.name.clone()) {
        return Err(BuildError::mismatch(
            "newObj",
            format!(
                "constructor `{}` must produce obj({}), not {}",
                spec.name,
                spec.name,
                ret.describe()
            ),
        ));
    }
    Ok(Expr {
        ty: ret,
        node: ExprNode::Call(spec),
    })
}

pub fn func_app(name: &str, ret: Type, args: Vec<Expr>) -> Result<Expr> {
    call(
        CallSpec {
            form: CallForm::Function,
            name: name.to_string(),
            args,
        },
        ret,
    )
}

pub fn ext_func_app(lib: &str, name: &str, ret: Type, args: Vec<Expr>) -> Result<Expr> {
    check_ident(lib)?;
    call(
        CallSpec {
            form: CallForm::External(lib.to_string()),
            name: name.to_string(),
            args,
        },
        ret,
    )
}

pub fn new_obj(class: &str, args: Vec<Expr>) -> Result<Expr> {
    call(
        CallSpec {
            form: CallForm::Constructor,
            name: class.to_string(),
            args,
        },
        obj(class)?,
    )
}

pub fn obj_method_call(receiver: Expr, name: &str, ret: Type, args: Vec<Expr>) -> Result<Expr> {
    if !matches!(receiver.ty, Type::Object(_)) {
        return Err(BuildError::mismatch(
            "objMethodCall",
            format!("receiver has type {}", receiver.ty.describe()),
        ));
    }
    call(
        CallSpec {
            form: CallForm::Method(Box::new(receiver)),
            name: name.to_string(),
            args,
        },
        ret,
    )
}

pub fn self_func_app(name: &str, ret: Type, args: Vec<Expr>) -> Result<Expr> {
    call(
        CallSpec {
            form: CallForm::SelfMethod,
            name: name.to_string(),
            args,
        },
        ret,
    )
}

// ---------------------------------------------------------------------------
// Statements

pub fn var_dec(v: &Variable) -> Statement {
    Statement::VarDec(v.clone())
}

pub fn var_dec_def(v: &Variable, e: Expr) -> Result<Statement> {
    if !assignable(&v.ty, &e.ty) {
        return Err(BuildError::mismatch(
            "varDecDef",
            format!("`{}: {}` initialised with {}", v.name, v.ty.describe(), e.ty.describe()),
        ));
    }
    Ok(Statement::VarDecDef(v.clone(), e))
}

/// The general assignment builder covering `&=`, `&+=`, `&-=`, `&++` and `&~-`.
pub fn mk_assign(mode: AssignMode, v: &Variable, e: Option<Expr>) -> Result<Statement> {
    let op = match mode {
        AssignMode::Set => "&=",
        AssignMode::AddEq => "&+=",
        AssignMode::SubEq => "&-=",
        AssignMode::Inc => "&++",
        AssignMode::Dec => "&~-",
    };
    match (mode, &e) {
        (AssignMode::Inc | AssignMode::Dec, None) => {
            if !v.ty.is_numeric() {
                return Err(BuildError::mismatch(op, format!("`{}` is {}", v.name, v.ty.describe())));
            }
        }
        (AssignMode::Inc | AssignMode::Dec, Some(_)) => {
            return Err(BuildError::mismatch(op, "increment takes no value"))
        }
        (_, None) => return Err(BuildError::mismatch(op, "assignment needs a value")),
        (AssignMode::Set, Some(e)) => {
            if !assignable(&v.ty, &e.ty) {
                return Err(BuildError::mismatch(
                    op,
                    format!("`{}: {}` assigned {}", v.name, v.ty.describe(), e.ty.describe()),
                ));
            }
        }
        (_, Some(e)) => {
            if !(v.ty.is_numeric() && e.ty.is_numeric() && assignable(&v.ty, &e.ty)) {
                return Err(BuildError::mismatch(
                    op,
                    format!("`{}: {}` updated with {}", v.name, v.ty.describe(), e.ty.describe()),
                ));
            }
        }
    }
    Ok(Statement::Assign(mode, v.clone(), e))
}

pub fn assign(v: &Variable, e: Expr) -> Result<Statement> {
    mk_assign(AssignMode::Set, v, Some(e))
}

pub fn add_assign(v: &Variable, e: Expr) -> Result<Statement> {
    mk_assign(AssignMode::AddEq, v, Some(e))
}

pub fn sub_assign(v: &Variable, e: Expr) -> Result<Statement> {
    mk_assign(AssignMode::SubEq, v, Some(e))
}

pub fn increment(v: &Variable) -> Result<Statement> {
    mk_assign(AssignMode::Inc, v, None)
}

pub fn decrement(v: &Variable) -> Result<Statement> {
    mk_assign(AssignMode::Dec, v, None)
}

pub fn return_state(e: Expr) -> Statement {
    Statement::Return(e)
}

pub fn throw(message: &str) -> Statement {
    Statement::Throw(message.to_string())
}

pub fn free(v: &Variable) -> Statement {
    Statement::Free(v.clone())
}

pub fn comment(text: &str) -> Statement {
    Statement::Comment(text.to_string())
}

pub fn break_stmt() -> Statement {
    Statement::Break
}

pub fn continue_stmt() -> Statement {
    Statement::Continue
}

/// Evaluates a value for its effect (a call whose result is discarded).
pub fn value_stmt(e: Expr) -> Statement {
    Statement::Expr(e)
}

fn require_bool(op: &str, e: &Expr) -> Result<()> {
    if e.ty == Type::Bool {
        Ok(())
    } else {
        Err(BuildError::mismatch(
            op,
            format!("condition has type {}", e.ty.describe()),
        ))
    }
}

pub fn if_cond(branches: Vec<(Expr, Body)>, else_body: Body) -> Result<Statement> {
    mk_if(branches, Some(else_body))
}

pub fn if_no_else(branches: Vec<(Expr, Body)>) -> Result<Statement> {
    mk_if(branches, None)
}

fn mk_if(branches: Vec<(Expr, Body)>, else_body: Option<Body>) -> Result<Statement> {
    if branches.is_empty() {
        return Err(BuildError::EmptyConditional);
    }
    for (c, _) in &branches {
        require_bool("ifCond", c)?;
    }
    Ok(Statement::If { branches, else_body })
}

pub fn switch(scrutinee: Expr, cases: Vec<(Literal, Body)>, default: Body) -> Result<Statement> {
    if cases.is_empty() {
        return Err(BuildError::EmptyConditional);
    }
    for (l, _) in &cases {
        if l.ty() != scrutinee.ty {
            return Err(BuildError::mismatch(
                "switch",
                format!(
                    "case of type {} against scrutinee of type {}",
                    l.ty().describe(),
                    scrutinee.ty.describe()
                ),
            ));
        }
    }
    Ok(Statement::Switch {
        scrutinee,
        cases,
        default,
    })
}

pub fn for_loop(init: Statement, cond: Expr, update: Statement, body: Body) -> Result<Statement> {
    require_bool("for", &cond)?;
    Ok(Statement::For {
        init: Box::new(init),
        cond,
        update: Box::new(update),
        body,
    })
}

/// Counts from `start` to `end` inclusive in increments of `step`.
pub fn for_range(v: &Variable, start: Expr, end: Expr, step: Expr, body: Body) -> Result<Statement> {
    for e in [&start, &end, &step] {
        if e.ty != Type::Int {
            return Err(BuildError::mismatch(
                "forRange",
                format!("bound has type {}", e.ty.describe()),
            ));
        }
    }
    if v.ty != Type::Int {
        return Err(BuildError::mismatch(
            "forRange",
            format!("loop variable `{}` is {}", v.name, v.ty.describe()),
        ));
    }
    Ok(Statement::ForRange {
        var: v.clone(),
        start,
        end,
        step,
        body,
    })
}

pub fn for_each(v: &Variable, list: Expr, body: Body) -> Result<Statement> {
    match list.ty.element() {
        Some(elem) if *elem == v.ty => Ok(Statement::ForEach {
            var: v.clone(),
            list,
            body,
        }),
        _ => Err(BuildError::mismatch(
            "forEach",
            format!(
                "`{}: {}` iterating over {}",
                v.name,
                v.ty.describe(),
                list.ty.describe()
            ),
        )),
    }
}

pub fn while_loop(cond: Expr, body: Body) -> Result<Statement> {
    require_bool("while", &cond)?;
    Ok(Statement::While { cond, body })
}

pub fn try_catch(try_body: Body, catch_body: Body) -> Statement {
    Statement::TryCatch { try_body, catch_body }
}

// ---------------------------------------------------------------------------
// Blocks and bodies

pub fn block(stmts: Vec<Statement>) -> Block {
    Block(stmts)
}

pub fn body(blocks: Vec<Block>) -> Body {
    Body(blocks)
}

pub fn body_statements(stmts: Vec<Statement>) -> Body {
    body(vec![block(stmts)])
}

pub fn one_liner(stmt: Statement) -> Body {
    body_statements(vec![stmt])
}

// ---------------------------------------------------------------------------
// Functions, methods, classes

pub fn param(v: &Variable) -> Param {
    Param {
        variable: v.as_plain(),
        by_reference: false,
    }
}

pub fn pointer_param(v: &Variable) -> Param {
    Param {
        variable: v.as_plain(),
        by_reference: true,
    }
}

fn check_params(params: &[Param]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in params {
        check_ident(&p.variable.name)?;
        if !seen.insert(p.variable.name.as_str()) {
            return Err(BuildError::DuplicateParam(p.variable.name.clone()));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn mk_method(
    name: &str,
    class: Option<&str>,
    scope: Scope,
    binding: Binding,
    return_type: Type,
    params: Vec<Param>,
    body: Body,
    kind: MethodKind,
) -> Result<Method> {
    check_ident(name)?;
    if let Some(c) = class {
        check_ident(c)?;
    }
    check_params(&params)?;
    validate::check_body(&body)?;
    Ok(Method {
        name: name.to_string(),
        scope,
        binding,
        return_type,
        params,
        body,
        containing_class: class.map(str::to_string),
        is_main: false,
        kind,
        doc: None,
    })
}

/// A free function.
pub fn function(
    name: &str,
    scope: Scope,
    binding: Binding,
    return_type: Type,
    params: Vec<Param>,
    body: Body,
) -> Result<Method> {
    mk_method(name, None, scope, binding, return_type, params, body, MethodKind::Plain)
}

pub fn method(
    name: &str,
    class: &str,
    scope: Scope,
    binding: Binding,
    return_type: Type,
    params: Vec<Param>,
    body: Body,
) -> Result<Method> {
    mk_method(
        name,
        Some(class),
        scope,
        binding,
        return_type,
        params,
        body,
        MethodKind::Plain,
    )
}

pub fn pub_method(name: &str, class: &str, return_type: Type, params: Vec<Param>, body: Body) -> Result<Method> {
    method(name, class, Scope::Public, Binding::Dynamic, return_type, params, body)
}

pub fn priv_method(name: &str, class: &str, return_type: Type, params: Vec<Param>, body: Body) -> Result<Method> {
    method(name, class, Scope::Private, Binding::Dynamic, return_type, params, body)
}

pub fn constructor(class: &str, params: Vec<Param>, body: Body) -> Result<Method> {
    mk_method(
        class,
        Some(class),
        Scope::Public,
        Binding::Dynamic,
        obj(class)?,
        params,
        body,
        MethodKind::Constructor,
    )
}

pub fn main_function(body: Body) -> Result<Method> {
    let mut m = mk_method(
        "main",
        None,
        Scope::Public,
        Binding::Static,
        Type::Void,
        vec![],
        body,
        MethodKind::Plain,
    )?;
    m.is_main = true;
    Ok(m)
}

fn mk_doc(description: &str, param_descs: &[(&str, &str)], return_desc: Option<&str>) -> DocSpec {
    DocSpec {
        description: description.to_string(),
        param_descs: param_descs
            .iter()
            .map(|(n, d)| (n.to_string(), d.to_string()))
            .collect(),
        return_desc: return_desc.map(str::to_string),
    }
}

/// Attaches a documentation comment; every described parameter must exist.
pub fn doc_func(
    description: &str,
    param_descs: &[(&str, &str)],
    return_desc: Option<&str>,
    mut m: Method,
) -> Result<Method> {
    for (name, _) in param_descs {
        if !m.params.iter().any(|p| p.variable.name == *name) {
            return Err(BuildError::UnknownParamDoc(name.to_string()));
        }
    }
    m.doc = Some(mk_doc(description, param_descs, return_desc));
    Ok(m)
}

pub fn state_var(scope: Scope, binding: Binding, v: &Variable) -> StateVar {
    StateVar {
        scope,
        binding,
        is_const: false,
        variable: Variable {
            binding,
            ..v.as_plain()
        },
        init: None,
    }
}

pub fn priv_mvar(v: &Variable) -> StateVar {
    state_var(Scope::Private, Binding::Dynamic, v)
}

pub fn pub_mvar(v: &Variable) -> StateVar {
    state_var(Scope::Public, Binding::Dynamic, v)
}

pub fn pub_gvar(v: &Variable) -> StateVar {
    state_var(Scope::Public, Binding::Static, v)
}

/// A constant state variable; constants are class-level and always initialised.
pub fn const_var(scope: Scope, v: &Variable, value: Expr) -> Result<StateVar> {
    let mut sv = state_var(scope, Binding::Static, v);
    sv.is_const = true;
    sv.with_init(value)
}

impl StateVar {
    pub fn with_init(mut self, value: Expr) -> Result<StateVar> {
        if !assignable(&self.variable.ty, &value.ty) {
            return Err(BuildError::mismatch(
                "stateVar",
                format!(
                    "`{}: {}` initialised with {}",
                    self.variable.name,
                    self.variable.ty.describe(),
                    value.ty.describe()
                ),
            ));
        }
        self.init = Some(value);
        Ok(self)
    }
}

pub fn build_class(
    name: &str,
    parent: Option<&str>,
    scope: Scope,
    state_vars: Vec<StateVar>,
    methods: Vec<Method>,
) -> Result<ClassDecl> {
    check_ident(name)?;
    if let Some(p) = parent {
        check_ident(p)?;
    }
    let mut seen = HashSet::new();
    let mut placed = Vec::with_capacity(methods.len());
    for mut m in methods {
        if !seen.insert(m.name.clone()) {
            return Err(BuildError::DuplicateMethod(m.name));
        }
        match &m.containing_class {
            Some(c) if c != name => {
                return Err(BuildError::ForeignMethod {
                    method: m.name.clone(),
                    declared: c.clone(),
                    class: name.to_string(),
                })
            }
            _ => m.containing_class = Some(name.to_string()),
        }
        placed.push(m);
    }
    let class = ClassDecl {
        name: name.to_string(),
        parent: parent.map(str::to_string),
        scope,
        state_vars,
        methods: placed,
        doc: None,
    };
    validate::check_class(&class)?;
    Ok(class)
}

pub fn pub_class(
    name: &str,
    parent: Option<&str>,
    state_vars: Vec<StateVar>,
    methods: Vec<Method>,
) -> Result<ClassDecl> {
    build_class(name, parent, Scope::Public, state_vars, methods)
}

pub fn priv_class(
    name: &str,
    parent: Option<&str>,
    state_vars: Vec<StateVar>,
    methods: Vec<Method>,
) -> Result<ClassDecl> {
    build_class(name, parent, Scope::Private, state_vars, methods)
}

pub fn doc_class(description: &str, mut c: ClassDecl) -> ClassDecl {
    c.doc = Some(mk_doc(description, &[], None));
    c
}

// ---------------------------------------------------------------------------
// Modules, programs, packages

pub fn build_module(name: &str, imports: &[&str], functions: Vec<Method>, classes: Vec<ClassDecl>) -> Result<Module> {
    check_ident(name)?;
    let mut seen = HashSet::new();
    for f in &functions {
        if !seen.insert(f.name.as_str()) {
            return Err(BuildError::DuplicateMethod(f.name.clone()));
        }
    }
    let mains = functions.iter().filter(|f| f.is_main).count();
    if mains > 1 {
        return Err(BuildError::MultipleMain(name.to_string()));
    }
    Ok(Module {
        name: name.to_string(),
        imports: imports.iter().map(|s| s.to_string()).collect(),
        is_main_module: mains == 1,
        functions,
        classes,
        doc: None,
    })
}

pub fn doc_mod(description: &str, mut m: Module) -> Module {
    m.doc = Some(mk_doc(description, &[], None));
    m
}

pub fn prog(name: &str, modules: Vec<Module>) -> Result<Program> {
    check_ident(name)?;
    let program = Program {
        name: name.to_string(),
        modules,
    };
    validate::check_program(&program)?;
    Ok(program)
}

pub fn package(program: Program, aux: Vec<AuxFileSpec>) -> Result<Package> {
    let pkg = Package { program, aux };
    validate::check_package(&pkg)?;
    Ok(pkg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_of_examples() {
        assert_eq!(type_of(TypeKind::Int, None).unwrap(), Type::Int);
        assert_eq!(
            type_of(TypeKind::List, Some(TypePayload::Element(Type::Int))).unwrap(),
            Type::list(Type::Int)
        );
        assert_eq!(
            type_of(TypeKind::Object, Some(TypePayload::ClassName(String::new()))),
            Err(BuildError::InvalidIdentifier(String::new()))
        );
        assert!(type_of(TypeKind::List, None).is_err());
    }

    #[test]
    fn variables() {
        let ages = var("ages", Type::list(Type::Int)).unwrap();
        assert_eq!(ages.binding, Binding::Dynamic);
        assert_eq!(ages.form, VarForm::Plain);
        assert_eq!(
            var("1bad", Type::Int),
            Err(BuildError::InvalidIdentifier("1bad".into()))
        );
        assert!(var("", Type::Int).is_err());
        assert!(var("_ok9", Type::Int).is_ok());
        let foo = self_var("foo", Type::Int).unwrap();
        assert_eq!(foo.form, VarForm::SelfMember);
        assert_eq!(value_of(&ages).precedence(), ATOMIC_PREC);
    }

    #[test]
    fn operator_typing() {
        let num1 = var("num1", Type::Int).unwrap();
        let num2 = var("num2", Type::Int).unwrap();
        let sum = apply_binary(BinaryOp::Add, value_of(&num1), value_of(&num2)).unwrap();
        assert_eq!(sum.ty, Type::Int);
        assert_eq!(sum.precedence(), 6);

        let price = var("price", Type::Int).unwrap();
        let cmp = apply_binary(BinaryOp::Lt, value_of(&price), lit_float(20.0)).unwrap();
        assert_eq!(cmp.ty, Type::Bool);

        let err = apply_binary(BinaryOp::And, lit_int(1), lit_true()).unwrap_err();
        assert!(matches!(err, BuildError::TypeMismatch { ref op, .. } if op == "?&&"));
        assert!(apply_unary(UnaryOp::Not, lit_int(0)).is_err());
        assert_eq!(apply_unary(UnaryOp::Sqrt, lit_int(4)).unwrap().ty, Type::Float);
        assert_eq!(
            apply_binary(BinaryOp::Mul, lit_int(2), lit_float(1.5)).unwrap().ty,
            Type::Float
        );
    }

    #[test]
    fn inline_if_typing() {
        assert_eq!(inline_if(lit_true(), lit_int(1), lit_int(2)).unwrap().ty, Type::Int);
        assert!(inline_if(lit_int(0), lit_int(1), lit_int(2)).is_err());
        assert!(inline_if(lit_true(), lit_int(1), lit_string("x")).is_err());
    }

    #[test]
    fn calls() {
        let ctor = new_obj("Observer", vec![]).unwrap();
        assert_eq!(ctor.ty, Type::Object("Observer".into()));
        let f = func_app("f", Type::Void, vec![]).unwrap();
        assert_eq!(f.precedence(), ATOMIC_PREC);
        let bad = call(
            CallSpec {
                form: CallForm::Constructor,
                name: "A".into(),
                args: vec![],
            },
            Type::Int,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn assignment_rules() {
        let a = var("a", Type::Int).unwrap();
        assert!(assign(&a, lit_int(5)).is_ok());
        assert!(assign(&a, lit_string("no")).is_err());
        let s = var("s", Type::String).unwrap();
        assert!(increment(&s).is_err());
        assert!(mk_assign(AssignMode::Inc, &a, Some(lit_int(1))).is_err());
        assert!(mk_assign(AssignMode::AddEq, &a, None).is_err());
    }

    #[test]
    fn body_shortcuts() {
        let s = return_state(lit_int(1));
        assert_eq!(one_liner(s.clone()), body(vec![block(vec![s.clone()])]));
        assert_eq!(
            body_statements(vec![s.clone(), s.clone()]),
            body(vec![block(vec![s.clone(), s])])
        );
        assert!(body(vec![]).is_empty());
    }

    #[test]
    fn conditionals() {
        assert_eq!(if_no_else(vec![]), Err(BuildError::EmptyConditional));
        let x = var("x", Type::Int).unwrap();
        assert!(switch(
            value_of(&x),
            vec![(Literal::String("a".into()), Body::default())],
            Body::default()
        )
        .is_err());
        assert!(if_cond(vec![(lit_int(1), Body::default())], Body::default()).is_err());
    }

    #[test]
    fn loops() {
        let age = var("age", Type::Int).unwrap();
        let ages = list_var("ages", Type::Int).unwrap();
        assert!(for_each(&age, value_of(&ages), Body::default()).is_ok());
        let name = var("name", Type::String).unwrap();
        assert!(for_each(&name, value_of(&ages), Body::default()).is_err());
        assert!(while_loop(lit_int(1), Body::default()).is_err());
        assert!(for_range(&age, lit_int(0), lit_int(9), lit_int(1), Body::default()).is_ok());
    }

    #[test]
    fn functions_and_classes() {
        let x = var("x", Type::Int).unwrap();
        let dup = function(
            "f",
            Scope::Public,
            Binding::Static,
            Type::Void,
            vec![param(&x), param(&x)],
            Body::default(),
        );
        assert_eq!(dup, Err(BuildError::DuplicateParam("x".into())));

        let m1 = pub_method("m", "C", Type::Void, vec![], Body::default()).unwrap();
        let m2 = pub_method("m", "C", Type::Void, vec![], Body::default()).unwrap();
        assert_eq!(
            pub_class("C", None, vec![], vec![m1.clone(), m2]),
            Err(BuildError::DuplicateMethod("m".into()))
        );
        let c = pub_class("C", None, vec![], vec![m1]).unwrap();
        assert_eq!(c.parent, None);
        assert_eq!(c.methods[0].containing_class.as_deref(), Some("C"));
    }

    #[test]
    fn const_assignment_rejected() {
        let limit = var("limit", Type::Int).unwrap();
        let cv = const_var(Scope::Public, &limit, lit_int(3)).unwrap();
        let setter = pub_method(
            "bump",
            "C",
            Type::Void,
            vec![],
            one_liner(assign(&limit.as_self_member(), lit_int(4)).unwrap()),
        )
        .unwrap();
        assert_eq!(
            pub_class("C", None, vec![cv], vec![setter]),
            Err(BuildError::ConstAssignment("limit".into()))
        );
    }

    #[test]
    fn modules_and_programs() {
        let main = main_function(Body::default()).unwrap();
        let m = build_module("Main", &[], vec![main.clone()], vec![]).unwrap();
        assert!(m.is_main_module);
        let empty = build_module("Empty", &[], vec![], vec![]).unwrap();
        assert!(!empty.is_main_module);
        assert!(empty.is_empty());
        assert_eq!(
            prog("p", vec![empty.clone(), empty.clone()]),
            Err(BuildError::DuplicateModule("Empty".into()))
        );
        let m2 = build_module("Other", &[], vec![main], vec![]).unwrap();
        assert!(matches!(prog("p", vec![m, m2]), Err(BuildError::MultipleMain(_))));
    }

    #[test]
    fn doc_func_validates_names() {
        let price = var("price", Type::Int).unwrap();
        let f = function(
            "f",
            Scope::Public,
            Binding::Static,
            Type::Void,
            vec![param(&price)],
            Body::default(),
        )
        .unwrap();
        assert_eq!(
            doc_func("d", &[("pric", "typo")], None, f.clone()),
            Err(BuildError::UnknownParamDoc("pric".into()))
        );
        let documented = doc_func("d", &[("price", "p")], Some("nothing"), f).unwrap();
        assert_eq!(documented.doc.unwrap().param_descs.len(), 1);
    }
}
