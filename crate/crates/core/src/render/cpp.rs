//! C++: a header with class declarations and prototypes, and a source file
//! with the definitions.

use crate::auxfiles::render_doc_comment;
use crate::error::RenderError;
use crate::ir::*;
use crate::layout::{blank_separated, Doc};

use super::clike::{braced, c_body, CLike, InOutCallText};
use super::context::{Cx, ProgramIndex};
use super::expr::{default_var_ref, escape, join, render_expr, Dialect, Res, R};
use super::{Backend, FileType, RenderedFile, TargetId};

#[derive(Debug, Clone, Copy, Default)]
pub struct CppBackend;

fn sys(cx: &mut Cx, header: &str) {
    cx.import(format!("#include <{header}>"));
}

fn local_include(module: &str) -> String {
    format!("#include \"{module}.hpp\"")
}

fn outside_main(cx: &Cx) -> Option<RenderError> {
    (!cx.in_main).then(|| cx.unsupported("command-line arguments outside main"))
}

impl CppBackend {
    fn is_iterator_expr(&self, e: &Expr, cx: &Cx) -> bool {
        matches!(&e.node, ExprNode::ValueOf(v) if cx.is_iterator(v))
    }

    fn params(&self, m: &Method, cx: &mut Cx) -> String {
        let ps: Vec<String> = m
            .params
            .iter()
            .map(|p| {
                let amp = if p.by_reference { "&" } else { "" };
                format!("{} {amp}{}", self.type_name(&p.variable.ty, cx), p.variable.name)
            })
            .collect();
        join(&ps)
    }

    /// Declaration inside a class body or a free prototype.
    fn prototype(&self, m: &Method, in_class: bool, cx: &mut Cx) -> String {
        let params = self.params(m, cx);
        if m.kind == MethodKind::Constructor {
            return format!("{}({params});", m.name);
        }
        let st = if in_class && m.binding == Binding::Static {
            "static "
        } else {
            ""
        };
        let ret = self.type_name(&m.return_type, cx);
        format!("{st}{ret} {}({params});", m.name)
    }

    fn definition(&self, m: &Method, class: Option<&str>, cx: &mut Cx) -> Res<Doc> {
        cx.enter_method(m);
        if m.is_main {
            let body = c_body(self, &m.body, cx)?;
            let body = blank_separated([body, Doc::text("return 0;")]);
            return Ok(braced("int main(int argc, const char *argv[])", body));
        }
        let params = self.params(m, cx);
        let qual = class.map(|c| format!("{c}::")).unwrap_or_default();
        let header = if m.kind == MethodKind::Constructor {
            format!("{qual}{}({params})", m.name)
        } else {
            let ret = self.type_name(&m.return_type, cx);
            format!("{ret} {qual}{}({params})", m.name)
        };
        Ok(braced(header, c_body(self, &m.body, cx)?))
    }

    fn doc(&self, m: &Method) -> Res<Doc> {
        match &m.doc {
            Some(d) => {
                let names: Vec<String> = m.params.iter().map(|p| p.variable.name.clone()).collect();
                render_doc_comment(d, TargetId::Cpp, &names)
            }
            None => Ok(Doc::empty()),
        }
    }

    fn default_value(&self, ty: &Type) -> Option<&'static str> {
        match ty {
            Type::Bool => Some("false"),
            Type::Int => Some("0"),
            Type::Float => Some("0.0"),
            Type::Char => Some("'\\0'"),
            _ => None,
        }
    }

    /// Member declaration in the header, and an out-of-class definition for statics.
    fn member(&self, class: &str, sv: &StateVar, cx: &mut Cx) -> Res<(String, Option<String>)> {
        cx.method.clear();
        let ty = self.type_name(&sv.variable.ty, cx);
        let name = &sv.variable.name;
        let init = match &sv.init {
            Some(e) => Some(render_expr(self, e, cx)?.text),
            None => self.default_value(&sv.variable.ty).map(str::to_string),
        };
        let konst = if sv.is_const { "const " } else { "" };
        Ok(match sv.binding {
            Binding::Static => {
                let def = match &init {
                    Some(v) => format!("{konst}{ty} {class}::{name} = {v};"),
                    None => format!("{konst}{ty} {class}::{name};"),
                };
                (format!("static {konst}{ty} {name};"), Some(def))
            }
            Binding::Dynamic => match init {
                Some(v) => (format!("{konst}{ty} {name} = {v};"), None),
                None => (format!("{konst}{ty} {name};"), None),
            },
        })
    }

    fn class_decl(&self, c: &ClassDecl, cx: &mut Cx) -> Res<(Doc, Vec<String>)> {
        let mut statics = Vec::new();
        let mut sections = Vec::new();
        for scope in [Scope::Public, Scope::Private] {
            let mut vars = Doc::empty();
            for sv in c.state_vars.iter().filter(|sv| sv.scope == scope) {
                let (decl, def) = self.member(&c.name, sv, cx)?;
                vars.push(decl);
                statics.extend(def);
            }
            let mut methods = Vec::new();
            for m in c.methods.iter().filter(|m| m.scope == scope) {
                methods.push(self.doc(m)?.append(Doc::text(self.prototype(m, true, cx))));
            }
            let inner = blank_separated(std::iter::once(vars).chain(methods));
            if !inner.is_empty() {
                let label = match scope {
                    Scope::Public => "public:",
                    Scope::Private => "private:",
                };
                sections.push(Doc::text(label).append(inner.indent()));
            }
        }
        let header = match &c.parent {
            Some(p) => {
                self.use_class(p, cx);
                format!("class {} : public {p} {{", c.name)
            }
            None => format!("class {} {{", c.name),
        };
        let doc = match &c.doc {
            Some(d) => render_doc_comment(d, TargetId::Cpp, &[])?,
            None => Doc::empty(),
        };
        let mut out = doc;
        out.push(header);
        out.extend(blank_separated(sections));
        out.push("};");
        Ok((out, statics))
    }
}

impl Backend for CppBackend {
    fn target(&self) -> TargetId {
        TargetId::Cpp
    }

    fn render_module(&self, module: &Module, index: &ProgramIndex) -> Result<Vec<RenderedFile>, RenderError> {
        // Header: class declarations and prototypes of free functions.
        let mut hcx = Cx::new(TargetId::Cpp, index, &module.name);
        let mut class_docs = Vec::new();
        let mut statics = Vec::new();
        for c in &module.classes {
            let (d, s) = self.class_decl(c, &mut hcx)?;
            class_docs.push(d);
            statics.extend(s);
        }
        let mut protos = Doc::empty();
        for f in module.functions.iter().filter(|f| !f.is_main) {
            let d = self.doc(f)?;
            if !d.is_empty() && !protos.is_empty() {
                protos.push("");
            }
            protos.extend(d);
            protos.push(self.prototype(f, false, &mut hcx));
        }
        let header_body = blank_separated(class_docs.into_iter().chain([protos]));

        // Source: definitions.
        let mut scx = Cx::new(TargetId::Cpp, index, &module.name);
        let mut defs = vec![Doc::vcat(statics.into_iter().map(Doc::text))];
        for c in &module.classes {
            for m in &c.methods {
                defs.push(self.definition(m, Some(&c.name), &mut scx)?);
            }
        }
        for f in module.functions.iter().filter(|f| !f.is_main) {
            defs.push(self.definition(f, None, &mut scx)?);
        }
        if let Some(main) = module.main_function() {
            let d = match &main.doc {
                Some(doc) => render_doc_comment(doc, TargetId::Cpp, &[])?,
                None => Doc::empty(),
            };
            defs.push(d.append(self.definition(main, None, &mut scx)?));
        }
        let source_body = blank_separated(defs);

        let has_header = !header_body.is_empty();
        let module_doc = match &module.doc {
            Some(d) => render_doc_comment(d, TargetId::Cpp, &[])?,
            None => Doc::empty(),
        };
        for i in module.imports.iter().filter(|i| !index.is_module(i)) {
            hcx.import(format!("#include <{i}>"));
        }

        let mut files = Vec::new();
        if !source_body.is_empty() {
            if has_header {
                scx.import_local(local_include(&module.name));
            }
            let includes = Doc::vcat(scx.import_lines().into_iter().map(Doc::text));
            let doc = if has_header { Doc::empty() } else { module_doc.clone() };
            let text = blank_separated([doc, includes, source_body]).render();
            files.push(RenderedFile::new(
                format!("{}.cpp", module.name),
                FileType::Source,
                &text,
            ));
        }
        if has_header {
            let guard = format!("{}_HPP", module.name.to_ascii_uppercase());
            let includes = Doc::vcat(hcx.import_lines().into_iter().map(Doc::text));
            let open = Doc::text(format!("#ifndef {guard}\n#define {guard}"));
            let text = blank_separated([module_doc, open, includes, header_body, Doc::text("#endif")]).render();
            files.push(RenderedFile::new(
                format!("{}.hpp", module.name),
                FileType::Header,
                &text,
            ));
        }
        Ok(files)
    }
}

impl Dialect for CppBackend {
    fn target(&self) -> TargetId {
        TargetId::Cpp
    }

    fn type_name(&self, ty: &Type, cx: &mut Cx) -> String {
        match ty {
            Type::Bool => "bool".into(),
            Type::Int => "int".into(),
            Type::Float => "double".into(),
            Type::Char => "char".into(),
            Type::String => {
                sys(cx, "string");
                "std::string".into()
            }
            Type::Void => "void".into(),
            Type::InFile => {
                sys(cx, "fstream");
                "std::ifstream".into()
            }
            Type::OutFile => {
                sys(cx, "fstream");
                "std::ofstream".into()
            }
            Type::List(e) => {
                sys(cx, "vector");
                format!("std::vector<{}>", self.type_name(e, cx))
            }
            Type::Object(c) => {
                self.use_class(c, cx);
                c.clone()
            }
        }
    }

    fn self_member(&self, name: &str) -> String {
        format!("this->{name}")
    }

    fn self_call(&self, name: &str, args: &str) -> String {
        format!("{name}({args})")
    }

    fn scope_sep(&self) -> &'static str {
        "::"
    }

    fn use_class(&self, class: &str, cx: &mut Cx) {
        if let Some(m) = cx.index.class_module(class) {
            let line = local_include(m);
            cx.import_local(line);
        }
    }

    fn binary_special(&self, op: BinaryOp, _lhs: &Expr, l: &R, _rhs: &Expr, r: &R, cx: &mut Cx) -> Option<R> {
        (op == BinaryOp::Pow).then(|| {
            sys(cx, "math.h");
            R::atom(format!("pow({}, {})", l.text, r.text))
        })
    }

    fn math(&self, f: MathFn, arg_ty: &Type, arg: &str, cx: &mut Cx) -> R {
        let name = match f {
            MathFn::Sin => "sin",
            MathFn::Cos => "cos",
            MathFn::Tan => "tan",
            MathFn::Floor => "floor",
            MathFn::Ceil => "ceil",
            MathFn::Exp => "exp",
            MathFn::Log => "log",
            MathFn::Sqrt => "sqrt",
            MathFn::Abs if *arg_ty == Type::Int => {
                sys(cx, "stdlib.h");
                return R::atom(format!("abs({arg})"));
            }
            MathFn::Abs => "fabs",
        };
        sys(cx, "math.h");
        R::atom(format!("{name}({arg})"))
    }

    fn constructor(&self, class: &str, args: &str, cx: &mut Cx) -> R {
        self.use_class(class, cx);
        R::atom(format!("{class}({args})"))
    }

    fn function_call(&self, name: &str, args: &str, cx: &mut Cx) -> R {
        if let Some(m) = cx.index.function_module(name) {
            if m != cx.module {
                let line = local_include(m);
                cx.import_local(line);
            }
        }
        R::atom(format!("{name}({args})"))
    }

    fn method_call(&self, recv: &Expr, r: &R, name: &str, args: &str, cx: &mut Cx) -> R {
        if let ExprNode::ValueOf(v) = &recv.node {
            if cx.is_iterator(v) {
                return R::atom(format!("{}->{name}({args})", v.name));
            }
        }
        R::atom(format!("{}.{name}({args})", r.receiver()))
    }

    fn var_ref(&self, v: &Variable, cx: &mut Cx) -> Res<String> {
        match &v.form {
            VarForm::Plain if cx.is_iterator(v) => Ok(format!("(*{})", v.name)),
            VarForm::ObjectMember(owner) if cx.is_iterator(owner) => Ok(format!("{}->{}", owner.name, v.name)),
            VarForm::ObjectMember(owner) => Ok(format!("{}.{}", self.var_ref(owner, cx)?, v.name)),
            _ => default_var_ref(self, v, cx),
        }
    }

    fn args_list(&self, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        sys(cx, "vector");
        sys(cx, "string");
        Ok(R::atom("std::vector<std::string>(argv + 1, argv + argc)"))
    }

    fn arg_at(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        sys(cx, "string");
        Ok(R::atom(format!(
            "std::string(argv[{}])",
            super::expr::plus_one(i, r).text
        )))
    }

    fn arg_exists(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R> {
        if let Some(e) = outside_main(cx) {
            return Err(e);
        }
        Ok(R::new(format!("argc > {}", super::expr::plus_one(i, r).above(5)), 5))
    }

    fn list_lit(&self, elem: &Type, items: &[String], cx: &mut Cx) -> R {
        let ty = self.type_name(&Type::list(elem.clone()), cx);
        if items.is_empty() {
            R::atom(format!("{ty}()"))
        } else {
            R::atom(format!("{ty} {{{}}}", join(items)))
        }
    }

    fn list_access(&self, l: &R, i: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.at({})", l.receiver(), i.text))
    }

    fn list_size(&self, l: &R, _cx: &mut Cx) -> R {
        R::new(format!("(int)({}.size())", l.receiver()), UNARY_PREC)
    }

    fn list_append(&self, l: &R, v: &R, _cx: &mut Cx) -> R {
        R::atom(format!("{}.push_back({})", l.receiver(), v.text))
    }

    fn index_of(&self, l: &R, v: &R, cx: &mut Cx) -> R {
        sys(cx, "algorithm");
        let l = l.receiver();
        R::new(
            format!("std::find({l}.begin(), {l}.end(), {}) - {l}.begin()", v.text),
            6,
        )
    }
}

impl CLike for CppBackend {
    fn loops_to_print_lists(&self) -> bool {
        true
    }

    fn print_stmt(&self, kind: PrintKind, e: &Expr, r: &R, cx: &mut Cx) -> String {
        sys(cx, "iostream");
        let value = r.above(5);
        let value = if e.ty == Type::Bool {
            format!("std::boolalpha << {value}")
        } else {
            value
        };
        match kind {
            PrintKind::Print => format!("std::cout << {value};"),
            PrintKind::PrintLn => format!("std::cout << {value} << std::endl;"),
        }
    }

    fn for_each_header(&self, var: &Variable, list: &Expr, l: &R, cx: &mut Cx) -> (String, bool) {
        if matches!(list.node, ExprNode::ValueOf(_)) && !self.is_iterator_expr(list, cx) {
            let ty = self.type_name(&list.ty, cx);
            let n = &var.name;
            let l = &l.text;
            (
                format!("for ({ty}::iterator {n} = {l}.begin(); {n} != {l}.end(); {n}++)"),
                true,
            )
        } else {
            let ty = self.type_name(&var.ty, cx);
            (format!("for ({ty} {} : {})", var.name, l.text), false)
        }
    }

    fn throw_stmt(&self, msg: &str, cx: &mut Cx) -> String {
        sys(cx, "stdexcept");
        format!("throw std::runtime_error({});", escape(msg, '"'))
    }

    fn catch_line(&self) -> &'static str {
        "} catch (...) {"
    }

    fn list_set(&self, l: &R, i: &R, v: &R) -> String {
        format!("{}.at({}) = {}", l.receiver(), i.text, v.text)
    }

    fn native_switch(&self, ty: &Type) -> bool {
        matches!(ty, Type::Int | Type::Char)
    }

    fn empty_list_decl(&self, elem: &Type, name: &str, cx: &mut Cx) -> String {
        let ty = self.type_name(&Type::list(elem.clone()), cx);
        format!("{ty} {name}(0)")
    }

    fn read_line(&self, target: &str, cx: &mut Cx) -> String {
        sys(cx, "iostream");
        sys(cx, "string");
        format!("std::getline(std::cin, {target});")
    }

    fn read_int(&self, target: &str, cx: &mut Cx) -> String {
        sys(cx, "iostream");
        sys(cx, "limits");
        format!("std::cin >> {target};\nstd::cin.ignore(std::numeric_limits<std::streamsize>::max(), '\\n');")
    }

    fn in_out_call(&self, call: &InOutCallText, _cx: &mut Cx) -> Doc {
        let args: Vec<String> = call
            .inouts
            .iter()
            .map(|(v, _)| v.clone())
            .chain(call.ins.iter().cloned())
            .chain(call.outs.iter().map(|(v, _)| v.clone()))
            .collect();
        Doc::text(format!("{}({});", call.callee, join(&args)))
    }
}
