use crate::error::RenderError;
use crate::ir::*;
use crate::layout::{blank_separated, Doc};

use super::clike::{CLike, InOutCallText};
use super::context::{Cx, ProgramIndex};
use super::expr::{join, Dialect, Res, R};
use super::managed::{render_managed_module, Managed};
use super::{Backend, RenderedFile, TargetId};

#[derive(Debug, Clone, Copy, Default)]
pub struct JavaBackend;

impl Backend for JavaBackend {
    fn target(&self) -> TargetId {
        TargetId::Java
    }

    fn render_module(&self, module: &Module, index: &ProgramIndex) -> Result<Vec<RenderedFile>, RenderError> {
        render_managed_module(self, module, index)
    }
}

fn boxed(ty: &Type, cx: &mut Cx) -> String {
    match ty {
        Type::Bool => "Boolean".into(),
        Type::Int => "Integer".into(),
        Type::Float => "Double".into(),
        Type::Char => "Character".into(),
        other => JavaBackend.type_name(other, cx),
    }
}

fn list_type(elem: &Type, cx: &mut Cx) -> String {
    cx.import("import java.util.ArrayList;");
    format!("ArrayList<{}>", boxed(elem, cx))
}

fn outputs(spec: &InOutSpec) -> Vec<&Variable> {
    spec.inouts.iter().chain(&spec.outs).collect()
}

fn is_out(m: &Method, name: &str) -> bool {
    m.in_out().is_some_and(|s| s.outs.iter().any(|v| v.name == name))
}

impl Dialect for JavaBackend {
    fn target(&self) -> TargetId {
        TargetId::Java
    }

    fn type_name(&self, ty: &Type, cx: &mut Cx) -> String {
        match ty {
            Type::Bool => "Boolean".into(),
            Type::Int => "int".into(),
            Type::Float => "double".into(),
            Type::Char => "char".into(),
            Type::String => "String".into(),
            Type::Void => "void".into(),
            Type::InFile => {
                cx.import("import java.util.Scanner;");
                "Scanner".into()
            }
            Type::OutFile => {
                cx.import("import java.io.PrintWriter;");
                "PrintWriter".into()
            }
            Type::List(e) => list_type(e, cx),
            Type::Object(c) => c.clone(),
        }
    }

    fn self_member(&self, name: &str) -> String {
        format!("this.{name}")
    }

    fn self_call(&self, name: &str, args: &str) -> String {
        format!("{name}({args})")
    }

    fn binary_special(&self, op: BinaryOp, lhs: &Expr, l: &R, rhs: &Expr, r: &R, _cx: &mut Cx) -> Option<R> {
        match op {
            BinaryOp::Pow => Some(R::atom(format!("Math.pow({}, {})", l.text, r.text))),
            BinaryOp::Eq if lhs.ty == Type::String && rhs.ty == Type::String => {
                Some(R::atom(format!("{}.equals({})", l.receiver(), r.text)))
            }
            BinaryOp::Ne if lhs.ty == Type::String && rhs.ty == Type::String => {
                Some(R::new(format!("!{}.equals({})", l.receiver(), r.text), UNARY_PREC))
            }
            _ => None,
        }
    }

    fn math(&self, f: MathFn, _arg_ty: &Type, arg: &str, _cx: &mut Cx) -> R {
        let name = match f {
            MathFn::Sin => "sin",
            MathFn::Cos => "cos",
            MathFn::Tan => "tan",
            MathFn::Floor => "floor",
            MathFn::Ceil => "ceil",
            MathFn::Exp => "exp",
            MathFn::Log => "log",
            MathFn::Sqrt => "sqrt",
            MathFn::Abs => "abs",
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
        if !cx.in_main {
            return Err(cx.unsupported("command-line arguments outside main"));
        }
        cx.import("import java.util.ArrayList;");
        cx.import("import java.util.Arrays;");
        Ok(R::atom("new ArrayList<String>(Arrays.asList(args))"))
    }

    fn arg_at(&self, _i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if !cx.in_main {
            return Err(cx.unsupported("command-line arguments outside main"));
        }
        Ok(R::atom(format!("args[{}]", r.text)))
    }

    fn arg_exists(&self, _i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if !cx.in_main {
            return Err(cx.unsupported("command-line arguments outside main"));
        }
        Ok(R::new(format!("args.length > {}", r.above(5)), 5))
    }

    fn list_lit(&self, elem: &Type, items: &[String], cx: &mut Cx) -> R {
        let ty = list_type(elem, cx);
        if items.is_empty() {
            R::atom(format!("new {ty}()"))
        } else {
            cx.import("import java.util.Arrays;");
            R::atom(format!("new {ty}(Arrays.asList({}))", join(items)))
        }
    }

    fn list_access(&self, l: &R, i: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.get({})", l.receiver(), i.text))
    }

    fn list_size(&self, l: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.size()", l.receiver()))
    }

    fn list_append(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.add({})", l.receiver(), v.text))
    }

    fn index_of(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.indexOf({})", l.receiver(), v.text))
    }
}

impl CLike for JavaBackend {
    fn loops_to_print_lists(&self) -> bool {
        false
    }

    fn print_stmt(&self, kind: PrintKind, _e: &Expr, r: &R, _cx: &mut Cx) -> String {
        let f = match kind {
            PrintKind::Print => "print",
            PrintKind::PrintLn => "println",
        };
        format!("System.out.{f}({});", r.text)
    }

    fn for_each_header(&self, var: &Variable, _list: &Expr, l: &R, cx: &mut Cx) -> (String, bool) {
        let ty = self.type_name(&var.ty, cx);
        (format!("for ({ty} {} : {})", var.name, l.text), false)
    }

    fn throw_stmt(&self, msg: &str, _cx: &mut Cx) -> String {
        format!("throw new Exception({});", super::expr::escape(msg, '"'))
    }

    fn catch_line(&self) -> &'static str {
        "} catch (Exception exc) {"
    }

    fn list_set(&self, l: &R, i: &R, v: &R) -> String {
        format!("{}.set({}, {})", l.receiver(), i.text, v.text)
    }

    fn empty_list_decl(&self, elem: &Type, name: &str, cx: &mut Cx) -> String {
        let ty = list_type(elem, cx);
        format!("{ty} {name} = new {ty}(0)")
    }

    fn read_line(&self, target: &str, cx: &mut Cx) -> String {
        cx.uses_stdin_reader = true;
        format!("{target} = scanner.nextLine();")
    }

    fn read_int(&self, target: &str, cx: &mut Cx) -> String {
        cx.uses_stdin_reader = true;
        format!("{target} = Integer.parseInt(scanner.nextLine().trim());")
    }

    fn in_out_call(&self, call: &InOutCallText, cx: &mut Cx) -> Doc {
        let args: Vec<String> = call
            .inouts
            .iter()
            .map(|(v, _)| v.clone())
            .chain(call.ins.iter().cloned())
            .collect();
        let invocation = format!("{}({})", call.callee, join(&args));
        let outs: Vec<&(String, Type)> = call.inouts.iter().chain(&call.outs).collect();
        if let [(v, _)] = outs.as_slice() {
            return Doc::text(format!("{v} = {invocation};"));
        }
        let arr = cx.fresh("outputs");
        let mut d = Doc::text(format!("Object[] {arr} = {invocation};"));
        for (k, (v, ty)) in outs.iter().enumerate() {
            let t = self.type_name(ty, cx);
            d.push(format!("{v} = ({t})({arr}[{k}]);"));
        }
        d
    }
}

impl Managed for JavaBackend {
    fn method_header(&self, m: &Method, static_: bool, cx: &mut Cx) -> String {
        let params: Vec<String> = m
            .params
            .iter()
            .filter(|p| !is_out(m, &p.variable.name))
            .map(|p| format!("{} {}", self.type_name(&p.variable.ty, cx), p.variable.name))
            .collect();
        let scope = self.scope_word(m.scope);
        if m.kind == MethodKind::Constructor {
            return format!("{scope} {}({}) throws Exception", m.name, join(&params));
        }
        let ret = match &m.kind {
            MethodKind::InOut(spec) => match outputs(spec).as_slice() {
                [single] => self.type_name(&single.ty, cx),
                _ => "Object[]".into(),
            },
            _ => self.type_name(&m.return_type, cx),
        };
        let st = if static_ { " static" } else { "" };
        format!("{scope}{st} {ret} {}({}) throws Exception", m.name, join(&params))
    }

    fn main_header(&self) -> &'static str {
        "public static void main(String[] args) throws Exception"
    }

    fn class_header(&self, name: &str, parent: Option<&str>, public: bool) -> String {
        let vis = if public { "public " } else { "" };
        match parent {
            Some(p) => format!("{vis}class {name} extends {p}"),
            None => format!("{vis}class {name}"),
        }
    }

    fn field(&self, sv: &StateVar, init: Option<String>, cx: &mut Cx) -> String {
        let mut s = self.scope_word(sv.scope).to_string();
        if sv.binding == Binding::Static {
            s.push_str(" static");
        }
        if sv.is_const {
            s.push_str(" final");
        }
        let ty = self.type_name(&sv.variable.ty, cx);
        match init {
            Some(v) => format!("{s} {ty} {} = {v};", sv.variable.name),
            None => format!("{s} {ty} {};", sv.variable.name),
        }
    }

    fn in_out_body(&self, spec: &InOutSpec, body: Doc, cx: &mut Cx) -> Doc {
        let decls = Doc::vcat(
            spec.outs
                .iter()
                .map(|v| Doc::text(format!("{} {};", self.type_name(&v.ty, cx), v.name))),
        );
        let outs = outputs(spec);
        let ret = match outs.as_slice() {
            [single] => Doc::text(format!("return {};", single.name)),
            _ => {
                let arr = cx.fresh("outputs");
                let mut d = Doc::text(format!("Object[] {arr} = new Object[{}];", outs.len()));
                for (k, v) in outs.iter().enumerate() {
                    d.push(format!("{arr}[{k}] = {};", v.name));
                }
                d.push(format!("return {arr};"));
                d
            }
        };
        blank_separated([decls, body, ret])
    }

    fn user_import(&self, name: &str) -> String {
        format!("import {name};")
    }

    fn support_fields(&self, cx: &mut Cx) -> Vec<String> {
        if std::mem::take(&mut cx.uses_stdin_reader) {
            cx.import("import java.util.Scanner;");
            vec!["private static Scanner scanner = new Scanner(System.in);".into()]
        } else {
            vec![]
        }
    }

    fn rendered_params(&self, m: &Method) -> Vec<String> {
        m.params
            .iter()
            .filter(|p| !is_out(m, &p.variable.name))
            .map(|p| p.variable.name.clone())
            .collect()
    }
}
