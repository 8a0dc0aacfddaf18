use crate::auxfiles::render_doc_comment;
use crate::error::RenderError;
use crate::ir::*;
use crate::layout::{blank_separated, render_body, Doc, Side};
use crate::patterns::lower_generic;

use super::clike::{in_out_call_text, switch_as_if, update_text};
use super::context::{Cx, ProgramIndex};
use super::expr::{escape, join, plus_one, render_expr, Dialect, Res, R};
use super::{Backend, FileType, RenderedFile, TargetId};

#[derive(Debug, Clone, Copy, Default)]
pub struct PythonBackend;

fn is_unary_like(e: &Expr) -> bool {
    match &e.node {
        ExprNode::Unary(..) => true,
        ExprNode::Lit(Literal::Int(i)) => *i < 0,
        ExprNode::Lit(Literal::Float(f)) => f.is_sign_negative(),
        _ => false,
    }
}

fn is_comparison(e: &Expr) -> bool {
    matches!(&e.node, ExprNode::Binary(op, _, _) if op.is_comparison())
}

impl Dialect for PythonBackend {
    fn target(&self) -> TargetId {
        TargetId::Python
    }

    fn type_name(&self, ty: &Type, _cx: &mut Cx) -> String {
        match ty {
            Type::Bool => "bool".into(),
            Type::Int => "int".into(),
            Type::Float => "float".into(),
            Type::Char | Type::String => "str".into(),
            Type::List(_) => "list".into(),
            Type::Object(c) => c.clone(),
            Type::Void => "None".into(),
            Type::InFile | Type::OutFile => "file".into(),
        }
    }

    fn bool_lit(&self, b: bool) -> &'static str {
        if b {
            "True"
        } else {
            "False"
        }
    }

    fn self_member(&self, name: &str) -> String {
        format!("self.{name}")
    }

    fn self_call(&self, name: &str, args: &str) -> String {
        format!("self.{name}({args})")
    }

    fn use_class(&self, class: &str, cx: &mut Cx) {
        if let Some(m) = cx.index.class_module(class) {
            if m != cx.module {
                let line = format!("from {m} import {class}");
                cx.import_local(line);
            }
        }
    }

    fn use_library(&self, lib: &str, cx: &mut Cx) {
        cx.import(format!("import {lib}"));
    }

    fn not_op(&self) -> &'static str {
        "not"
    }

    fn binary_token(&self, op: BinaryOp, lhs: &Type, rhs: &Type) -> &'static str {
        match op {
            BinaryOp::And => "and",
            BinaryOp::Or => "or",
            BinaryOp::Div if *lhs == Type::Int && *rhs == Type::Int => "//",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "**",
        }
    }

    fn force_parens(&self, parent: BinaryOp, side: Side, child: &Expr) -> bool {
        let not_child = matches!(child.node, ExprNode::Unary(UnaryOp::Not, _));
        (not_child && !matches!(parent, BinaryOp::And | BinaryOp::Or))
            || (parent == BinaryOp::Pow && side == Side::Left && is_unary_like(child))
            || (parent.is_comparison() && is_comparison(child))
    }

    fn inline_if(&self, c: &R, t: &R, f: &R) -> R {
        R::new(
            format!(
                "{} if {} else {}",
                t.above(INLINE_IF_PREC),
                c.above(INLINE_IF_PREC),
                f.above(INLINE_IF_PREC)
            ),
            INLINE_IF_PREC,
        )
    }

    fn math(&self, f: MathFn, _arg_ty: &Type, arg: &str, cx: &mut Cx) -> R {
        let name = match f {
            MathFn::Abs => return R::atom(format!("abs({arg})")),
            MathFn::Sin => "sin",
            MathFn::Cos => "cos",
            MathFn::Tan => "tan",
            MathFn::Floor => "floor",
            MathFn::Ceil => "ceil",
            MathFn::Exp => "exp",
            MathFn::Log => "log",
            MathFn::Sqrt => "sqrt",
        };
        cx.import("import math");
        R::atom(format!("math.{name}({arg})"))
    }

    fn constructor(&self, class: &str, args: &str, cx: &mut Cx) -> R {
        self.use_class(class, cx);
        R::atom(format!("{class}({args})"))
    }

    fn function_call(&self, name: &str, args: &str, cx: &mut Cx) -> R {
        if let Some(m) = cx.index.function_module(name) {
            if m != cx.module {
                let line = format!("from {m} import {name}");
                cx.import_local(line);
            }
        }
        R::atom(format!("{name}({args})"))
    }

    fn args_list(&self, cx: &mut Cx) -> Res<R> {
        cx.import("import sys");
        Ok(R::atom("sys.argv[1:]"))
    }

    fn arg_at(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        cx.import("import sys");
        Ok(R::atom(format!("sys.argv[{}]", plus_one(i, r).text)))
    }

    fn arg_exists(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        cx.import("import sys");
        Ok(R::new(format!("len(sys.argv) > {}", plus_one(i, r).above(5)), 5))
    }

    fn list_lit(&self, _elem: &Type, items: &[String], _cx: &mut Cx) -> R {
        R::atom(format!("[{}]", join(items)))
    }

    fn list_access(&self, l: &R, i: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}[{}]", l.receiver(), i.text))
    }

    fn list_size(&self, l: &R, _cx: &mut Cx) -> R {
        R::atom(format!("len({})", l.text))
    }

    fn list_append(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.append({})", l.receiver(), v.text))
    }

    fn index_of(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.index({})", l.receiver(), v.text))
    }
}

fn expr(e: &Expr, cx: &mut Cx) -> Res<R> {
    render_expr(&PythonBackend, e, cx)
}

fn suite(b: &Body, cx: &mut Cx) -> Res<Doc> {
    let d = py_body(b, cx)?;
    Ok(if d.is_empty() { Doc::text("pass") } else { d }.indent())
}

fn py_body(b: &Body, cx: &mut Cx) -> Res<Doc> {
    render_body(b, |s| py_stmt(s, cx))
}

fn headed(header: String, b: &Body, cx: &mut Cx) -> Res<Doc> {
    Ok(Doc::text(header).append(suite(b, cx)?))
}

fn default_value(ty: &Type) -> &'static str {
    match ty {
        Type::Bool => "False",
        Type::Int => "0",
        Type::Float => "0.0",
        Type::Char => "'\\0'",
        Type::String => "\"\"",
        Type::List(_) => "[]",
        _ => "None",
    }
}

fn py_stmt(s: &Statement, cx: &mut Cx) -> Res<Doc> {
    let d = &PythonBackend;
    Ok(match s {
        Statement::VarDec(_) => Doc::empty(),
        Statement::VarDecDef(v, e) => Doc::text(format!("{} = {}", d.var_ref(v, cx)?, expr(e, cx)?.text)),
        Statement::Assign(mode, v, e) => {
            let target = d.var_ref(v, cx)?;
            Doc::text(match (mode, e) {
                (AssignMode::Set, Some(e)) => format!("{target} = {}", expr(e, cx)?.text),
                (AssignMode::AddEq, Some(e)) => update_text(&target, "+", &expr(e, cx)?),
                (AssignMode::SubEq, Some(e)) => update_text(&target, "-", &expr(e, cx)?),
                (AssignMode::Inc, _) => format!("{target} = {target} + 1"),
                (AssignMode::Dec, _) => format!("{target} = {target} - 1"),
                (_, None) => return Err(cx.unsupported("assignment without a value")),
            })
        }
        Statement::ListSet(l, i, v) => {
            let (l, i, v) = (expr(l, cx)?, expr(i, cx)?, expr(v, cx)?);
            Doc::text(format!("{}[{}] = {}", l.receiver(), i.text, v.text))
        }
        Statement::Return(e) => Doc::text(format!("return {}", expr(e, cx)?.text)),
        Statement::Throw(msg) => Doc::text(format!("raise Exception({})", escape(msg, '"'))),
        Statement::Free(v) => Doc::text(format!("del {}", d.var_ref(v, cx)?)),
        Statement::Comment(c) => Doc::vcat(c.lines().map(|l| Doc::text(format!("# {l}").trim_end()))),
        Statement::Break => Doc::text("break"),
        Statement::Continue => Doc::text("continue"),
        Statement::Expr(e) => Doc::text(expr(e, cx)?.text),
        Statement::If { branches, else_body } => {
            let mut out = Doc::empty();
            for (n, (cond, b)) in branches.iter().enumerate() {
                let kw = if n == 0 { "if" } else { "elif" };
                let c = expr(cond, cx)?.text;
                out.extend(headed(format!("{kw} {c}:"), b, cx)?);
            }
            if let Some(b) = else_body {
                out.extend(headed("else:".into(), b, cx)?);
            }
            out
        }
        Statement::Switch {
            scrutinee,
            cases,
            default,
        } => py_stmt(&switch_as_if(scrutinee, cases, default), cx)?,
        Statement::For {
            init,
            cond,
            update,
            body,
        } => {
            let mut out = py_stmt(init, cx)?;
            let c = expr(cond, cx)?.text;
            let mut inner = py_body(body, cx)?;
            inner.extend(py_stmt(update, cx)?);
            out.push(format!("while {c}:"));
            out.extend(inner.indent());
            out
        }
        Statement::ForRange {
            var,
            start,
            end,
            step,
            body,
        } => {
            let s = expr(start, cx)?.text;
            let e_r = expr(end, cx)?;
            let negative = matches!(step.node, ExprNode::Lit(Literal::Int(k)) if k < 0);
            let stop = if negative {
                match &end.node {
                    ExprNode::Lit(Literal::Int(k)) => (k - 1).to_string(),
                    _ => format!(
                        "{} - 1",
                        if e_r.prec < 6 {
                            format!("({})", e_r.text)
                        } else {
                            e_r.text
                        }
                    ),
                }
            } else {
                plus_one(end, &e_r).text
            };
            let range = match &step.node {
                ExprNode::Lit(Literal::Int(1)) => format!("range({s}, {stop})"),
                _ => format!("range({s}, {stop}, {})", expr(step, cx)?.text),
            };
            headed(format!("for {} in {range}:", d.var_ref(var, cx)?), body, cx)?
        }
        Statement::ForEach { var, list, body } => {
            let l = expr(list, cx)?.text;
            headed(format!("for {} in {l}:", var.name), body, cx)?
        }
        Statement::While { cond, body } => {
            let c = expr(cond, cx)?.text;
            headed(format!("while {c}:"), body, cx)?
        }
        Statement::TryCatch { try_body, catch_body } => {
            let mut out = headed("try:".into(), try_body, cx)?;
            out.extend(headed("except Exception:".into(), catch_body, cx)?);
            out
        }
        Statement::ListSlice {
            target,
            source,
            start,
            end,
            step,
        } => {
            let src = expr(source, cx)?.receiver();
            let mut bound = |b: &Option<Expr>| -> Res<String> {
                Ok(match b {
                    Some(e) => expr(e, cx)?.text,
                    None => String::new(),
                })
            };
            let (a, b, c) = (bound(start)?, bound(end)?, bound(step)?);
            Doc::text(format!("{} = {src}[{a}:{b}:{c}]", d.var_ref(target, cx)?))
        }
        Statement::Print(kind, e) => {
            let v = expr(e, cx)?.text;
            Doc::text(match kind {
                PrintKind::PrintLn => format!("print({v})"),
                PrintKind::Print => format!("print({v}, end=\"\")"),
            })
        }
        Statement::Pattern(p) => match p {
            PatternStmt::ReadLine(v) => Doc::text(format!("{} = input()", d.var_ref(v, cx)?)),
            PatternStmt::ReadInt(v) => Doc::text(format!("{} = int(input())", d.var_ref(v, cx)?)),
            PatternStmt::InOutCall {
                name,
                ins,
                outs,
                inouts,
            } => {
                let call = in_out_call_text(d, name, ins, outs, inouts, cx)?;
                let args: Vec<String> = call
                    .inouts
                    .iter()
                    .map(|(v, _)| v.clone())
                    .chain(call.ins.iter().cloned())
                    .collect();
                let targets: Vec<String> = call.inouts.iter().chain(&call.outs).map(|(v, _)| v.clone()).collect();
                Doc::text(format!("{} = {}({})", join(&targets), call.callee, join(&args)))
            }
            other => match lower_generic(other) {
                Some(s) => py_stmt(&s, cx)?,
                None => return Err(cx.unsupported("pattern statement")),
            },
        },
    })
}

fn doc_for(m: &Method) -> Res<Doc> {
    match &m.doc {
        Some(doc) => render_doc_comment(doc, TargetId::Python, &rendered_params(m)),
        None => Ok(Doc::empty()),
    }
}

fn rendered_params(m: &Method) -> Vec<String> {
    let outs: Vec<&str> = m
        .in_out()
        .map(|s| s.outs.iter().map(|v| v.name.as_str()).collect())
        .unwrap_or_default();
    m.params
        .iter()
        .map(|p| p.variable.name.clone())
        .filter(|n| !outs.contains(&n.as_str()))
        .collect()
}

fn function(m: &Method, class: Option<&ClassDecl>, cx: &mut Cx) -> Res<Doc> {
    cx.enter_method(m);
    let mut params = rendered_params(m);
    let is_static = m.binding == Binding::Static;
    let in_class = class.is_some();
    if in_class && !is_static {
        params.insert(0, "self".into());
    }
    let name = if m.kind == MethodKind::Constructor {
        "__init__"
    } else {
        m.name.as_str()
    };
    let mut parts = Vec::new();
    if let (Some(c), MethodKind::Constructor) = (class, &m.kind) {
        parts.push(instance_inits(c, cx)?);
    }
    parts.push(py_body(&m.body, cx)?);
    if let Some(spec) = m.in_out() {
        let outs: Vec<String> = spec.inouts.iter().chain(&spec.outs).map(|v| v.name.clone()).collect();
        parts.push(Doc::text(format!("return {}", join(&outs))));
    }
    let inner = blank_separated(parts);
    let inner = if inner.is_empty() { Doc::text("pass") } else { inner };
    let mut out = doc_for(m)?;
    if in_class && is_static {
        out.push("@staticmethod");
    }
    out.push(format!("def {name}({}):", join(&params)));
    out.extend(inner.indent());
    Ok(out)
}

fn instance_inits(c: &ClassDecl, cx: &mut Cx) -> Res<Doc> {
    let mut out = Doc::empty();
    for sv in c.state_vars.iter().filter(|sv| sv.binding == Binding::Dynamic) {
        let v = match &sv.init {
            Some(e) => expr(e, cx)?.text,
            None => default_value(&sv.variable.ty).to_string(),
        };
        out.push(format!("self.{} = {v}", sv.variable.name));
    }
    Ok(out)
}

fn class(c: &ClassDecl, cx: &mut Cx) -> Res<Doc> {
    cx.method.clear();
    let mut statics = Doc::empty();
    for sv in c.state_vars.iter().filter(|sv| sv.binding == Binding::Static) {
        let v = match &sv.init {
            Some(e) => expr(e, cx)?.text,
            None => default_value(&sv.variable.ty).to_string(),
        };
        statics.push(format!("{} = {v}", sv.variable.name));
    }
    let mut parts = vec![statics];
    let has_ctor = c.methods.iter().any(|m| m.kind == MethodKind::Constructor);
    let inits = instance_inits(c, cx)?;
    if !has_ctor && !inits.is_empty() {
        parts.push(Doc::text("def __init__(self):").append(inits.indent()));
    }
    for m in &c.methods {
        parts.push(function(m, Some(c), cx)?);
    }
    let inner = blank_separated(parts);
    let inner = if inner.is_empty() { Doc::text("pass") } else { inner };
    let header = match &c.parent {
        Some(p) => {
            PythonBackend.use_class(p, cx);
            format!("class {}({p}):", c.name)
        }
        None => format!("class {}:", c.name),
    };
    let mut out = match &c.doc {
        Some(d) => render_doc_comment(d, TargetId::Python, &[])?,
        None => Doc::empty(),
    };
    out.push(header);
    out.extend(inner.indent());
    Ok(out)
}

impl Backend for PythonBackend {
    fn target(&self) -> TargetId {
        TargetId::Python
    }

    fn render_module(&self, module: &Module, index: &ProgramIndex) -> Result<Vec<RenderedFile>, RenderError> {
        let mut cx = Cx::new(TargetId::Python, index, &module.name);
        let mut parts = Vec::new();
        for c in &module.classes {
            parts.push(class(c, &mut cx)?);
        }
        for f in module.functions.iter().filter(|f| !f.is_main) {
            parts.push(function(f, None, &mut cx)?);
        }
        if let Some(main) = module.main_function() {
            cx.enter_method(main);
            let doc = match &main.doc {
                Some(d) => render_doc_comment(d, TargetId::Python, &[])?,
                None => Doc::empty(),
            };
            parts.push(doc.append(py_body(&main.body, &mut cx)?));
        }
        for i in module.imports.iter().filter(|i| !index.is_module(i)) {
            cx.import(format!("import {i}"));
        }
        let header = match &module.doc {
            Some(d) => render_doc_comment(d, TargetId::Python, &[])?,
            None => Doc::empty(),
        };
        let imports = Doc::vcat(cx.import_lines().into_iter().map(Doc::text));
        let text = blank_separated([header, imports].into_iter().chain(parts)).render();
        Ok(vec![RenderedFile::new(
            format!("{}.py", module.name),
            FileType::Combined,
            &text,
        )])
    }
}
