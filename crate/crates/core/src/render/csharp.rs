use crate::error::RenderError;
use crate::ir::*;
use crate::layout::Doc;

use super::clike::{CLike, InOutCallText};
use super::context::{Cx, ProgramIndex};
use super::expr::{escape, join, Dialect, Res, R};
use super::managed::{render_managed_module, Managed};
use super::{Backend, RenderedFile, TargetId};

#[derive(Debug, Clone, Copy, Default)]
pub struct CSharpBackend;

impl Backend for CSharpBackend {
    fn target(&self) -> TargetId {
        TargetId::CSharp
    }

    fn render_module(&self, module: &Module, index: &ProgramIndex) -> Result<Vec<RenderedFile>, RenderError> {
        render_managed_module(self, module, index)
    }
}

const SYSTEM: &str = "using System;";
const GENERIC: &str = "using System.Collections.Generic;";

fn outside_main(cx: &Cx) -> Option<RenderError> {
    (!cx.in_main).then(|| cx.unsupported("command-line arguments outside main"))
}

impl Dialect for CSharpBackend {
    fn target(&self) -> TargetId {
        TargetId::CSharp
    }

    fn type_name(&self, ty: &Type, cx: &mut Cx) -> String {
        match ty {
            Type::Bool => {
                cx.import(SYSTEM);
                "Boolean".into()
            }
            Type::Int => "int".into(),
            Type::Float => "double".into(),
            Type::Char => "char".into(),
            Type::String => "string".into(),
            Type::Void => "void".into(),
            Type::InFile => {
                cx.import("using System.IO;");
                "StreamReader".into()
            }
            Type::OutFile => {
                cx.import("using System.IO;");
                "StreamWriter".into()
            }
            Type::List(e) => {
                cx.import(GENERIC);
                format!("List<{}>", self.type_name(e, cx))
            }
            Type::Object(c) => c.clone(),
        }
    }

    fn self_member(&self, name: &str) -> String {
        format!("this.{name}")
    }

    fn self_call(&self, name: &str, args: &str) -> String {
        format!("{name}({args})")
    }

    fn binary_special(&self, op: BinaryOp, _lhs: &Expr, l: &R, _rhs: &Expr, r: &R, cx: &mut Cx) -> Option<R> {
        (op == BinaryOp::Pow).then(|| {
            cx.import(SYSTEM);
            R::atom(format!("Math.Pow({}, {})", l.text, r.text))
        })
    }

    fn math(&self, f: MathFn, _arg_ty: &Type, arg: &str, cx: &mut Cx) -> R {
        cx.import(SYSTEM);
        let name = match f {
            MathFn::Sin => "Sin",
            MathFn::Cos => "Cos",
            MathFn::Tan => "Tan",
            MathFn::Floor => "Floor",
            MathFn::Ceil => "Ceiling",
            MathFn::Exp => "Exp",
            MathFn::Log => "Log",
            MathFn::Sqrt => "Sqrt",
            MathFn::Abs => "Abs",
        };
        R::atom(format!("Math.{name}({arg})"))
    }

    fn constructor(&self, class: &str, args: &str, _cx: &mut Cx) -> R {
        R::atom(format!("new {class}({args})"))
    }

    fn function_call(&self, name: &str, args: &str, cx: &mut Cx) -> R {
        match cx.index.function_module(name) {
            Some(m) if m != cx.module => R::atom(format!("{m}.{name}({args})")),
            _ => R::atom(format!("{name}({args})")),
        }
    }

    fn args_list(&self, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        cx.import(GENERIC);
        Ok(R::atom("new List<string>(args)"))
    }

    fn arg_at(&self, _i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        Ok(R::atom(format!("args[{}]", r.text)))
    }

    fn arg_exists(&self, _i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        Ok(R::new(format!("args.Length > {}", r.above(5)), 5))
    }

    fn list_lit(&self, elem: &Type, items: &[String], cx: &mut Cx) -> R {
        let ty = self.type_name(&Type::list(elem.clone()), cx);
        if items.is_empty() {
            R::atom(format!("new {ty}()"))
        } else {
            R::atom(format!("new {ty} {{{}}}", join(items)))
        }
    }

    fn list_access(&self, l: &R, i: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}[{}]", l.receiver(), i.text))
    }

    fn list_size(&self, l: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.Count", l.receiver()))
    }

    fn list_append(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.Add({})", l.receiver(), v.text))
    }

    fn index_of(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.IndexOf({})", l.receiver(), v.text))
    }
}

impl CLike for CSharpBackend {
    fn loops_to_print_lists(&self) -> bool {
        true
    }

    fn print_stmt(&self, kind: PrintKind, _e: &Expr, r: &R, cx: &mut Cx) -> String {
        cx.import(SYSTEM);
        let f = match kind {
            PrintKind::Print => "Write",
            PrintKind::PrintLn => "WriteLine",
        };
        format!("Console.{f}({});", r.text)
    }

    fn for_each_header(&self, var: &Variable, _list: &Expr, l: &R, cx: &mut Cx) -> (String, bool) {
        let ty = self.type_name(&var.ty, cx);
        (format!("foreach ({ty} {} in {})", var.name, l.text), false)
    }

    fn throw_stmt(&self, msg: &str, cx: &mut Cx) -> String {
        cx.import(SYSTEM);
        format!("throw new Exception({});", escape(msg, '"'))
    }

    fn catch_line(&self) -> &'static str {
        "} catch (Exception) {"
    }

    fn list_set(&self, l: &R, i: &R, v: &R) -> String {
        format!("{}[{}] = {}", l.receiver(), i.text, v.text)
    }

    fn empty_list_decl(&self, elem: &Type, name: &str, cx: &mut Cx) -> String {
        let ty = self.type_name(&Type::list(elem.clone()), cx);
        format!("{ty} {name} = new {ty}(0)")
    }

    fn read_line(&self, target: &str, cx: &mut Cx) -> String {
        cx.import(SYSTEM);
        format!("{target} = Console.ReadLine();")
    }

    fn read_int(&self, target: &str, cx: &mut Cx) -> String {
        cx.import(SYSTEM);
        format!("{target} = Int32.Parse(Console.ReadLine());")
    }

    fn in_out_call(&self, call: &InOutCallText, _cx: &mut Cx) -> Doc {
        let args: Vec<String> = call
            .inouts
            .iter()
            .map(|(v, _)| format!("ref {v}"))
            .chain(call.ins.iter().cloned())
            .chain(call.outs.iter().map(|(v, _)| format!("out {v}")))
            .collect();
        Doc::text(format!("{}({});", call.callee, join(&args)))
    }
}

impl Managed for CSharpBackend {
    fn method_header(&self, m: &Method, static_: bool, cx: &mut Cx) -> String {
        let spec = m.in_out();
        let params: Vec<String> = m
            .params
            .iter()
            .map(|p| {
                let v = &p.variable;
                let modifier = match spec {
                    Some(s) if s.outs.iter().any(|o| o.name == v.name) => "out ",
                    _ if p.by_reference => "ref ",
                    _ => "",
                };
                format!("{modifier}{} {}", self.type_name(&v.ty, cx), v.name)
            })
            .collect();
        let scope = self.scope_word(m.scope);
        if m.kind == MethodKind::Constructor {
            return format!("{scope} {}({})", m.name, join(&params));
        }
        let ret = self.type_name(&m.return_type, cx);
        let st = if static_ { " static" } else { "" };
        format!("{scope}{st} {ret} {}({})", m.name, join(&params))
    }

    fn main_header(&self) -> &'static str {
        "static void Main(string[] args)"
    }

    fn class_header(&self, name: &str, parent: Option<&str>, public: bool) -> String {
        let vis = if public { "public " } else { "" };
        match parent {
            Some(p) => format!("{vis}class {name} : {p}"),
            None => format!("{vis}class {name}"),
        }
    }

    fn field(&self, sv: &StateVar, init: Option<String>, cx: &mut Cx) -> String {
        let mut s = self.scope_word(sv.scope).to_string();
        let simple = matches!(
            sv.variable.ty,
            Type::Bool | Type::Int | Type::Float | Type::Char | Type::String
        );
        match (sv.is_const, sv.binding) {
            (true, Binding::Static) if simple => s.push_str(" const"),
            (true, Binding::Static) => s.push_str(" static readonly"),
            (true, Binding::Dynamic) => s.push_str(" readonly"),
            (false, Binding::Static) => s.push_str(" static"),
            (false, Binding::Dynamic) => {}
        }
        let ty = self.type_name(&sv.variable.ty, cx);
        match init {
            Some(v) => format!("{s} {ty} {} = {v};", sv.variable.name),
            None => format!("{s} {ty} {};", sv.variable.name),
        }
    }

    fn user_import(&self, name: &str) -> String {
        format!("using {name};")
    }
}
