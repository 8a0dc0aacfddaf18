//! Module layout shared by Java and C#: every function lives in a class, and
//! free functions go into a class named after the module.

use crate::auxfiles::render_doc_comment;
use crate::error::RenderError;
use crate::ir::*;
use crate::layout::{blank_separated, Doc};

use super::clike::{braced, c_body, CLike};
use super::context::{Cx, ProgramIndex};
use super::expr::{render_expr, Res};
use super::{FileType, RenderedFile};

pub(crate) trait Managed: CLike {
    /// Signature line for a non-main method, without the opening brace.
    fn method_header(&self, m: &Method, static_: bool, cx: &mut Cx) -> String;

    fn main_header(&self) -> &'static str;

    fn class_header(&self, name: &str, parent: Option<&str>, public: bool) -> String;

    fn field(&self, sv: &StateVar, init: Option<String>, cx: &mut Cx) -> String;

    /// Wraps an in/out procedure body (Java returns the outputs as values).
    fn in_out_body(&self, _spec: &InOutSpec, body: Doc, _cx: &mut Cx) -> Doc {
        body
    }

    fn user_import(&self, name: &str) -> String;

    /// Static fields the class needs because of constructs used in its methods.
    fn support_fields(&self, _cx: &mut Cx) -> Vec<String> {
        Vec::new()
    }

    fn scope_word(&self, s: Scope) -> &'static str {
        match s {
            Scope::Public => "public",
            Scope::Private => "private",
        }
    }

    /// Parameter names as they appear in the rendered signature.
    fn rendered_params(&self, m: &Method) -> Vec<String> {
        m.params.iter().map(|p| p.variable.name.clone()).collect()
    }
}

fn doc_for<D: Managed + ?Sized>(d: &D, m: &Method) -> Result<Doc, RenderError> {
    match &m.doc {
        Some(doc) => render_doc_comment(doc, d.target(), &d.rendered_params(m)),
        None => Ok(Doc::empty()),
    }
}

fn render_method<D: Managed + ?Sized>(d: &D, m: &Method, static_: bool, cx: &mut Cx) -> Res<Doc> {
    cx.enter_method(m);
    let header = if m.is_main {
        d.main_header().to_string()
    } else {
        d.method_header(m, static_, cx)
    };
    let mut body = c_body(d, &m.body, cx)?;
    if let Some(spec) = m.in_out() {
        body = d.in_out_body(spec, body, cx);
    }
    Ok(doc_for(d, m)?.append(braced(header, body)))
}

fn render_fields<D: Managed + ?Sized>(d: &D, c: &ClassDecl, cx: &mut Cx) -> Res<Doc> {
    let mut out = Doc::empty();
    cx.method.clear();
    for sv in &c.state_vars {
        let init = match &sv.init {
            Some(e) => Some(render_expr(d, e, cx)?.text),
            None => None,
        };
        out.push(d.field(sv, init, cx));
    }
    Ok(out)
}

fn render_class<D: Managed + ?Sized>(
    d: &D,
    name: &str,
    parent: Option<&str>,
    public: bool,
    class: Option<&ClassDecl>,
    functions: &[&Method],
    cx: &mut Cx,
) -> Res<Doc> {
    let mut parts = Vec::new();
    let mut fields = match class {
        Some(c) => render_fields(d, c, cx)?,
        None => Doc::empty(),
    };
    if let Some(c) = class {
        for m in &c.methods {
            parts.push(render_method(d, m, m.binding == Binding::Static, cx)?);
        }
    }
    for f in functions.iter().filter(|f| !f.is_main) {
        parts.push(render_method(d, f, true, cx)?);
    }
    for f in functions.iter().filter(|f| f.is_main) {
        parts.push(render_method(d, f, true, cx)?);
    }
    for extra in d.support_fields(cx) {
        fields.push(extra);
    }
    let inner = blank_separated(std::iter::once(fields).chain(parts));
    let doc = match class.and_then(|c| c.doc.as_ref()) {
        Some(doc) => render_doc_comment(doc, d.target(), &[])?,
        None => Doc::empty(),
    };
    Ok(doc.append(braced(d.class_header(name, parent, public), inner)))
}

pub(crate) fn render_managed_module<D: Managed + ?Sized>(
    d: &D,
    module: &Module,
    index: &ProgramIndex,
) -> Result<Vec<RenderedFile>, RenderError> {
    let mut cx = Cx::new(d.target(), index, &module.name);
    let functions: Vec<&Method> = module.functions.iter().collect();
    let merged = module.classes.iter().any(|c| c.name == module.name);
    let mut classes = Vec::new();
    for c in &module.classes {
        let own = c.name == module.name;
        let public = own || (d.target() != super::TargetId::Java && c.scope == Scope::Public);
        let fns: &[&Method] = if own { &functions } else { &[] };
        classes.push(render_class(
            d,
            &c.name,
            c.parent.as_deref(),
            public,
            Some(c),
            fns,
            &mut cx,
        )?);
    }
    if !merged && !functions.is_empty() {
        classes.push(render_class(d, &module.name, None, true, None, &functions, &mut cx)?);
    }
    for i in module.imports.iter().filter(|i| !index.is_module(i)) {
        cx.import(d.user_import(i));
    }
    let header = match &module.doc {
        Some(doc) => render_doc_comment(doc, d.target(), &[])?,
        None => Doc::empty(),
    };
    let imports = Doc::vcat(cx.import_lines().into_iter().map(Doc::text));
    let text = blank_separated([header, imports].into_iter().chain(classes)).render();
    let path = format!("{}.{}", module.name, d.target().source_extension());
    Ok(vec![RenderedFile::new(path, FileType::Combined, &text)])
}
