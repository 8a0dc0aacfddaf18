//! Statement rendering shared by Java, C# and C++.

use crate::ir::*;
use crate::layout::{render_body, Doc};
use crate::patterns::{list_print_loop, lower_generic};

use super::context::Cx;
use super::expr::{render_expr, render_lit, Dialect, Res, R};

/// Statement-level hooks of the brace-and-semicolon targets.
pub(crate) trait CLike: Dialect {
    fn decl(&self, v: &Variable, cx: &mut Cx) -> String {
        format!("{} {}", self.type_name(&v.ty, cx), v.name)
    }

    /// Whether printing a list needs the element-by-element loop.
    fn loops_to_print_lists(&self) -> bool;

    fn print_stmt(&self, kind: PrintKind, e: &Expr, r: &R, cx: &mut Cx) -> String;

    /// Header line (without the brace) and whether the loop variable is an iterator.
    fn for_each_header(&self, var: &Variable, list: &Expr, l: &R, cx: &mut Cx) -> (String, bool);

    fn throw_stmt(&self, msg: &str, cx: &mut Cx) -> String;

    fn catch_line(&self) -> &'static str;

    fn free_stmt(&self, _v: &str) -> Option<String> {
        None
    }

    fn list_set(&self, l: &R, i: &R, v: &R) -> String;

    fn native_switch(&self, ty: &Type) -> bool {
        matches!(ty, Type::Int | Type::Char | Type::String)
    }

    /// Declaration of an empty list with the given name.
    fn empty_list_decl(&self, elem: &Type, name: &str, cx: &mut Cx) -> String;

    fn read_line(&self, target: &str, cx: &mut Cx) -> String;

    fn read_int(&self, target: &str, cx: &mut Cx) -> String;

    fn in_out_call(&self, call: &InOutCallText, cx: &mut Cx) -> Doc;
}

/// A rendered in/out call site.
pub(crate) struct InOutCallText {
    pub callee: String,
    pub ins: Vec<String>,
    pub outs: Vec<(String, Type)>,
    pub inouts: Vec<(String, Type)>,
}

pub(crate) fn braced(header: impl Into<String>, inner: Doc) -> Doc {
    let mut d = Doc::text(format!("{} {{", header.into()));
    d.extend(inner.indent());
    d.push("}");
    d
}

pub(crate) fn c_body<D: CLike + ?Sized>(d: &D, b: &Body, cx: &mut Cx) -> Res<Doc> {
    render_body(b, |s| c_stmt(d, s, cx))
}

fn expr<D: CLike + ?Sized>(d: &D, e: &Expr, cx: &mut Cx) -> Res<R> {
    render_expr(d, e, cx)
}

/// A statement rendered on one line without its terminating `;`.
fn inline_stmt<D: CLike + ?Sized>(d: &D, s: &Statement, cx: &mut Cx) -> Res<String> {
    let doc = c_stmt(d, s, cx)?;
    let text = doc.render();
    Ok(text.trim_end_matches(';').to_string())
}

/// `x = x + e`, with `e` parenthesised as a right operand.
pub(crate) fn update_text(target: &str, op: &str, r: &R) -> String {
    let rhs = if r.prec <= 6 {
        format!("({})", r.text)
    } else {
        r.text.clone()
    };
    format!("{target} = {target} {op} {rhs}")
}

/// Builds the if-chain equivalent of a switch.
pub(crate) fn switch_as_if(scrutinee: &Expr, cases: &[(Literal, Body)], default: &Body) -> Statement {
    let branches = cases
        .iter()
        .map(|(l, b)| {
            let cond = Expr {
                ty: Type::Bool,
                node: ExprNode::Binary(
                    BinaryOp::Eq,
                    Box::new(scrutinee.clone()),
                    Box::new(Expr {
                        ty: l.ty(),
                        node: ExprNode::Lit(l.clone()),
                    }),
                ),
            };
            (cond, b.clone())
        })
        .collect();
    Statement::If {
        branches,
        else_body: (!default.is_empty()).then(|| default.clone()),
    }
}

pub(crate) fn c_stmt<D: CLike + ?Sized>(d: &D, s: &Statement, cx: &mut Cx) -> Res<Doc> {
    Ok(match s {
        Statement::VarDec(v) => Doc::text(format!("{};", d.decl(v, cx))),
        Statement::VarDecDef(v, e) => {
            let r = expr(d, e, cx)?;
            Doc::text(format!("{} = {};", d.decl(v, cx), r.text))
        }
        Statement::Assign(mode, v, e) => {
            let target = d.var_ref(v, cx)?;
            let line = match (mode, e) {
                (AssignMode::Set, Some(e)) => format!("{target} = {}", expr(d, e, cx)?.text),
                (AssignMode::AddEq, Some(e)) => update_text(&target, "+", &expr(d, e, cx)?),
                (AssignMode::SubEq, Some(e)) => update_text(&target, "-", &expr(d, e, cx)?),
                (AssignMode::Inc, _) => format!("{target}++"),
                (AssignMode::Dec, _) => format!("{target}--"),
                (_, None) => return Err(cx.unsupported("assignment without a value")),
            };
            Doc::text(format!("{line};"))
        }
        Statement::ListSet(l, i, v) => {
            let (l, i, v) = (expr(d, l, cx)?, expr(d, i, cx)?, expr(d, v, cx)?);
            Doc::text(format!("{};", d.list_set(&l, &i, &v)))
        }
        Statement::Return(e) => Doc::text(format!("return {};", expr(d, e, cx)?.text)),
        Statement::Throw(msg) => Doc::text(d.throw_stmt(msg, cx)),
        Statement::Free(v) => {
            let name = d.var_ref(v, cx)?;
            d.free_stmt(&name).map(Doc::text).unwrap_or_default()
        }
        Statement::Comment(c) => Doc::vcat(c.lines().map(|l| Doc::text(format!("// {l}").trim_end()))),
        Statement::Break => Doc::text("break;"),
        Statement::Continue => Doc::text("continue;"),
        Statement::Expr(e) => Doc::text(format!("{};", expr(d, e, cx)?.text)),
        Statement::If { branches, else_body } => {
            let mut out = Doc::empty();
            for (n, (cond, b)) in branches.iter().enumerate() {
                let c = expr(d, cond, cx)?.text;
                let inner = c_body(d, b, cx)?.indent();
                if n == 0 {
                    out.push(format!("if ({c}) {{"));
                } else {
                    out.push(format!("}} else if ({c}) {{"));
                }
                out.extend(inner);
            }
            if let Some(b) = else_body {
                out.push("} else {");
                out.extend(c_body(d, b, cx)?.indent());
            }
            out.push("}");
            out
        }
        Statement::Switch {
            scrutinee,
            cases,
            default,
        } => {
            if !d.native_switch(&scrutinee.ty) {
                return c_stmt(d, &switch_as_if(scrutinee, cases, default), cx);
            }
            let s = expr(d, scrutinee, cx)?.text;
            let mut inner = Doc::empty();
            for (lit, b) in cases {
                let l = render_lit(d, lit).text;
                inner.push(format!("case {l}:"));
                let mut case_body = c_body(d, b, cx)?;
                case_body.push("break;");
                inner.extend(case_body.indent());
            }
            inner.push("default:");
            let mut default_body = c_body(d, default, cx)?;
            default_body.push("break;");
            inner.extend(default_body.indent());
            braced(format!("switch ({s})"), inner)
        }
        Statement::For {
            init,
            cond,
            update,
            body,
        } => {
            let i = inline_stmt(d, init, cx)?;
            let c = expr(d, cond, cx)?.text;
            let u = inline_stmt(d, update, cx)?;
            braced(format!("for ({i}; {c}; {u})"), c_body(d, body, cx)?)
        }
        Statement::ForRange {
            var,
            start,
            end,
            step,
            body,
        } => {
            let name = d.var_ref(var, cx)?;
            let s = expr(d, start, cx)?.text;
            let e = expr(d, end, cx)?.text;
            let (cmp, update) = match &step.node {
                ExprNode::Lit(Literal::Int(1)) => ("<=", format!("{name}++")),
                ExprNode::Lit(Literal::Int(-1)) => (">=", format!("{name}--")),
                ExprNode::Lit(Literal::Int(k)) if *k < 0 => (">=", format!("{name} = {name} - {}", -k)),
                _ => ("<=", update_text(&name, "+", &expr(d, step, cx)?)),
            };
            let decl = d.decl(var, cx);
            braced(
                format!("for ({decl} = {s}; {name} {cmp} {e}; {update})"),
                c_body(d, body, cx)?,
            )
        }
        Statement::ForEach { var, list, body } => {
            let l = expr(d, list, cx)?;
            let (header, iterator) = d.for_each_header(var, list, &l, cx);
            if iterator {
                cx.iterators.push(var.name.clone());
            }
            let inner = c_body(d, body, cx);
            if iterator {
                cx.iterators.pop();
            }
            braced(header, inner?)
        }
        Statement::While { cond, body } => {
            let c = expr(d, cond, cx)?.text;
            braced(format!("while ({c})"), c_body(d, body, cx)?)
        }
        Statement::TryCatch { try_body, catch_body } => {
            let mut out = Doc::text("try {");
            out.extend(c_body(d, try_body, cx)?.indent());
            out.push(d.catch_line());
            out.extend(c_body(d, catch_body, cx)?.indent());
            out.push("}");
            out
        }
        Statement::ListSlice {
            target,
            source,
            start,
            end,
            step,
        } => slice(d, target, source, start.as_ref(), end.as_ref(), step.as_ref(), cx)?,
        Statement::Print(kind, e) => {
            if d.loops_to_print_lists() && e.ty.element().is_some() {
                cx.list_depth += 1;
                let lowered = list_print_loop(e, *kind, cx.list_depth)
                    .map_err(|err| cx.unsupported(format!("list print: {err}")));
                let out = lowered.and_then(|stmts| {
                    let mut doc = Doc::empty();
                    for st in &stmts {
                        doc.extend(c_stmt(d, st, cx)?);
                    }
                    Ok(doc)
                });
                cx.list_depth -= 1;
                out?
            } else {
                let r = expr(d, e, cx)?;
                Doc::text(d.print_stmt(*kind, e, &r, cx))
            }
        }
        Statement::Pattern(p) => pattern(d, p, cx)?,
    })
}

#[allow(clippy::too_many_arguments)]
fn slice<D: CLike + ?Sized>(
    d: &D,
    target: &Variable,
    source: &Expr,
    start: Option<&Expr>,
    end: Option<&Expr>,
    step: Option<&Expr>,
    cx: &mut Cx,
) -> Res<Doc> {
    let elem = target.ty.element().cloned().unwrap_or(Type::Int);
    let temp = cx.fresh("temp");
    let counter = format!("i_{temp}");
    let src = expr(d, source, cx)?;
    let s = match start {
        Some(e) => expr(d, e, cx)?.text,
        None => "0".into(),
    };
    let e = match end {
        Some(e) => expr(d, e, cx)?.text,
        None => d.list_size(&src, cx).text,
    };
    let update = match step {
        None
        | Some(Expr {
            node: ExprNode::Lit(Literal::Int(1)),
            ..
        }) => format!("{counter}++"),
        Some(st) => update_text(&counter, "+", &expr(d, st, cx)?),
    };
    let access = d.list_access(&src, &R::atom(counter.clone()), cx);
    let append = d.list_append(&R::atom(temp.clone()), &access, cx);
    let mut out = Doc::text(format!("{};", d.empty_list_decl(&elem, &temp, cx)));
    out.extend(braced(
        format!("for (int {counter} = {s}; {counter} < {e}; {update})"),
        Doc::text(format!("{};", append.text)),
    ));
    out.push(format!("{} = {temp};", d.var_ref(target, cx)?));
    Ok(out)
}

fn pattern<D: CLike + ?Sized>(d: &D, p: &PatternStmt, cx: &mut Cx) -> Res<Doc> {
    Ok(match p {
        PatternStmt::ReadLine(v) => {
            let t = d.var_ref(v, cx)?;
            Doc::text(d.read_line(&t, cx))
        }
        PatternStmt::ReadInt(v) => {
            let t = d.var_ref(v, cx)?;
            Doc::text(d.read_int(&t, cx))
        }
        PatternStmt::InOutCall {
            name,
            ins,
            outs,
            inouts,
        } => {
            let call = in_out_call_text(d, name, ins, outs, inouts, cx)?;
            d.in_out_call(&call, cx)
        }
        other => match lower_generic(other) {
            Some(s) => c_stmt(d, &s, cx)?,
            None => return Err(cx.unsupported("pattern statement")),
        },
    })
}

pub(crate) fn in_out_call_text<D: Dialect + ?Sized>(
    d: &D,
    name: &str,
    ins: &[Expr],
    outs: &[Variable],
    inouts: &[Variable],
    cx: &mut Cx,
) -> Res<InOutCallText> {
    let vars = |vs: &[Variable], cx: &mut Cx| -> Res<Vec<(String, Type)>> {
        vs.iter().map(|v| Ok((d.var_ref(v, cx)?, v.ty.clone()))).collect()
    };
    let ins = ins
        .iter()
        .map(|e| Ok(render_expr(d, e, cx)?.text))
        .collect::<Res<Vec<_>>>()?;
    // The qualified callee, as the target spells a call with no arguments.
    let callee = d.function_call(name, "", cx).text;
    let callee = callee.trim_end_matches("()").to_string();
    Ok(InOutCallText {
        callee,
        ins,
        outs: vars(outs, cx)?,
        inouts: vars(inouts, cx)?,
    })
}
