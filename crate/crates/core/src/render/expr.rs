//! Expression rendering shared by all targets. Target differences live in
//! [`Dialect`] hooks; precedence handling is common.

use crate::error::RenderError;
use crate::ir::*;
use crate::layout::{needs_parens, Side};

use super::context::Cx;
use super::TargetId;

pub(crate) type Res<T> = Result<T, RenderError>;

/// Rendered expression text and the precedence of its outermost construct.
#[derive(Debug, Clone)]
pub(crate) struct R {
    pub text: String,
    pub prec: u8,
}

impl R {
    pub fn new(text: impl Into<String>, prec: u8) -> R {
        R {
            text: text.into(),
            prec,
        }
    }

    pub fn atom(text: impl Into<String>) -> R {
        R::new(text, ATOMIC_PREC)
    }

    /// Text usable as a receiver of `.`/`->` or an operand of a postfix form.
    pub fn receiver(&self) -> String {
        if self.prec < ATOMIC_PREC {
            format!("({})", self.text)
        } else {
            self.text.clone()
        }
    }

    /// Text parenthesised when it binds no tighter than `prec`.
    pub fn above(&self, prec: u8) -> String {
        if self.prec <= prec {
            format!("({})", self.text)
        } else {
            self.text.clone()
        }
    }
}

pub(crate) fn escape(s: &str, quote: char) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push(quote);
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '\0' => out.push_str("\\0"),
            c if c == quote => {
                out.push('\\');
                out.push(c);
            }
            c => out.push(c),
        }
    }
    out.push(quote);
    out
}

/// Float literals always keep a decimal point or exponent.
pub(crate) fn float_text(f: f64) -> String {
    let s = format!("{f:?}");
    if s.contains(['.', 'e', 'E']) || !f.is_finite() {
        s
    } else {
        format!("{s}.0")
    }
}

pub(crate) fn join(items: &[String]) -> String {
    items.join(", ")
}

/// Target-specific leaves of expression rendering.
pub(crate) trait Dialect {
    fn target(&self) -> TargetId;

    fn type_name(&self, ty: &Type, cx: &mut Cx) -> String;

    fn bool_lit(&self, b: bool) -> &'static str {
        if b {
            "true"
        } else {
            "false"
        }
    }

    fn char_lit(&self, c: char) -> String {
        escape(&c.to_string(), '\'')
    }

    fn self_member(&self, name: &str) -> String;

    fn self_call(&self, name: &str, args: &str) -> String;

    /// Separator between a class or library name and a member.
    fn scope_sep(&self) -> &'static str {
        "."
    }

    /// Records whatever import is needed to name `class` from the current module.
    fn use_class(&self, _class: &str, _cx: &mut Cx) {}

    fn use_library(&self, _lib: &str, _cx: &mut Cx) {}

    fn not_op(&self) -> &'static str {
        "!"
    }

    fn binary_token(&self, op: BinaryOp, _lhs: &Type, _rhs: &Type) -> &'static str {
        match op {
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
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

    /// A replacement rendering for a binary node, given its rendered operands.
    fn binary_special(&self, _op: BinaryOp, _lhs: &Expr, _l: &R, _rhs: &Expr, _r: &R, _cx: &mut Cx) -> Option<R> {
        None
    }

    /// Extra parenthesisation rules beyond precedence.
    fn force_parens(&self, _parent: BinaryOp, _side: Side, _child: &Expr) -> bool {
        false
    }

    fn inline_if(&self, c: &R, t: &R, f: &R) -> R {
        R::new(
            format!(
                "{} ? {} : {}",
                c.above(INLINE_IF_PREC),
                t.above(INLINE_IF_PREC),
                f.above(INLINE_IF_PREC)
            ),
            INLINE_IF_PREC,
        )
    }

    fn math(&self, f: MathFn, arg_ty: &Type, arg: &str, cx: &mut Cx) -> R;

    fn constructor(&self, class: &str, args: &str, cx: &mut Cx) -> R;

    fn function_call(&self, name: &str, args: &str, cx: &mut Cx) -> R;

    fn method_call(&self, recv: &Expr, r: &R, name: &str, args: &str, _cx: &mut Cx) -> R {
        let _ = recv;
        R::atom(format!("{}.{name}({args})", r.receiver()))
    }

    fn var_ref(&self, v: &Variable, cx: &mut Cx) -> Res<String> {
        default_var_ref(self, v, cx)
    }

    fn args_list(&self, cx: &mut Cx) -> Res<R>;
    fn arg_at(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R>;
    fn arg_exists(&self, i: &Expr, r: &R, cx: &mut Cx) -> Res<R>;

    fn list_lit(&self, elem: &Type, items: &[String], cx: &mut Cx) -> R;
    fn list_access(&self, l: &R, i: &R, cx: &mut Cx) -> R;
    fn list_size(&self, l: &R, cx: &mut Cx) -> R;
    fn list_append(&self, l: &R, v: &R, cx: &mut Cx) -> R;
    fn index_of(&self, l: &R, v: &R, cx: &mut Cx) -> R;

    fn list_index_exists(&self, l: &R, i: &R, cx: &mut Cx) -> R {
        let size = self.list_size(l, cx);
        R::new(format!("{} > {}", size.above(4), i.above(5)), 5)
    }
}

pub(crate) fn default_var_ref<D: Dialect + ?Sized>(d: &D, v: &Variable, cx: &mut Cx) -> Res<String> {
    Ok(match &v.form {
        VarForm::Plain => v.name.clone(),
        VarForm::External(lib) => {
            d.use_library(lib, cx);
            format!("{lib}{}{}", d.scope_sep(), v.name)
        }
        VarForm::ClassMember(class) => {
            d.use_class(class, cx);
            format!("{class}{}{}", d.scope_sep(), v.name)
        }
        VarForm::ObjectMember(owner) => format!("{}.{}", d.var_ref(owner, cx)?, v.name),
        VarForm::SelfMember => d.self_member(&v.name),
    })
}

fn is_negation(e: &Expr) -> bool {
    match &e.node {
        ExprNode::Unary(UnaryOp::Negate, _) => true,
        ExprNode::Lit(Literal::Int(i)) => *i < 0,
        ExprNode::Lit(Literal::Float(f)) => f.is_sign_negative(),
        _ => false,
    }
}

pub(crate) fn render_args<D: Dialect + ?Sized>(d: &D, args: &[Expr], cx: &mut Cx) -> Res<String> {
    let parts = args
        .iter()
        .map(|a| Ok(render_expr(d, a, cx)?.text))
        .collect::<Res<Vec<_>>>()?;
    Ok(join(&parts))
}

fn render_lit_int(i: i64) -> R {
    R::new(i.to_string(), if i < 0 { UNARY_PREC } else { ATOMIC_PREC })
}

pub(crate) fn render_lit<D: Dialect + ?Sized>(d: &D, l: &Literal) -> R {
    match l {
        Literal::Bool(b) => R::atom(d.bool_lit(*b)),
        Literal::Int(i) => render_lit_int(*i),
        Literal::Float(f) => R::new(
            float_text(*f),
            if f.is_sign_negative() { UNARY_PREC } else { ATOMIC_PREC },
        ),
        Literal::Char(c) => R::atom(d.char_lit(*c)),
        Literal::String(s) => R::atom(escape(s, '"')),
    }
}

pub(crate) fn render_expr<D: Dialect + ?Sized>(d: &D, e: &Expr, cx: &mut Cx) -> Res<R> {
    Ok(match &e.node {
        ExprNode::Lit(l) => render_lit(d, l),
        ExprNode::ValueOf(v) => R::atom(d.var_ref(v, cx)?),
        ExprNode::Unary(op, x) => render_unary(d, *op, x, cx)?,
        ExprNode::Binary(op, l, r) => render_binary(d, *op, l, r, cx)?,
        ExprNode::InlineIf(c, t, f) => {
            let (c, t, f) = (render_expr(d, c, cx)?, render_expr(d, t, cx)?, render_expr(d, f, cx)?);
            d.inline_if(&c, &t, &f)
        }
        ExprNode::Call(spec) => render_call(d, spec, cx)?,
        ExprNode::ArgsList => d.args_list(cx)?,
        ExprNode::ArgAt(i) => {
            let r = render_expr(d, i, cx)?;
            d.arg_at(i, &r, cx)?
        }
        ExprNode::ArgExists(i) => {
            let r = render_expr(d, i, cx)?;
            d.arg_exists(i, &r, cx)?
        }
        ExprNode::Math(f, x) => {
            let r = render_expr(d, x, cx)?;
            d.math(*f, &x.ty, &r.text, cx)
        }
        ExprNode::ListLit(items) => {
            let elem = e.ty.element().cloned().unwrap_or(Type::Int);
            let parts = items
                .iter()
                .map(|a| Ok(render_expr(d, a, cx)?.text))
                .collect::<Res<Vec<_>>>()?;
            d.list_lit(&elem, &parts, cx)
        }
        ExprNode::ListAccess(l, i) => {
            let (l, i) = (render_expr(d, l, cx)?, render_expr(d, i, cx)?);
            d.list_access(&l, &i, cx)
        }
        ExprNode::ListSize(l) => {
            let l = render_expr(d, l, cx)?;
            d.list_size(&l, cx)
        }
        ExprNode::ListAppend(l, v) => {
            let (l, v) = (render_expr(d, l, cx)?, render_expr(d, v, cx)?);
            d.list_append(&l, &v, cx)
        }
        ExprNode::ListIndexExists(l, i) => {
            let (l, i) = (render_expr(d, l, cx)?, render_expr(d, i, cx)?);
            d.list_index_exists(&l, &i, cx)
        }
        ExprNode::IndexOf(l, v) => {
            let (l, v) = (render_expr(d, l, cx)?, render_expr(d, v, cx)?);
            d.index_of(&l, &v, cx)
        }
    })
}

fn render_unary<D: Dialect + ?Sized>(d: &D, op: UnaryOp, x: &Expr, cx: &mut Cx) -> Res<R> {
    let r = render_expr(d, x, cx)?;
    Ok(match op {
        UnaryOp::Sqrt => d.math(MathFn::Sqrt, &x.ty, &r.text, cx),
        UnaryOp::Abs => d.math(MathFn::Abs, &x.ty, &r.text, cx),
        UnaryOp::Negate => {
            let inner = if r.prec < UNARY_PREC || is_negation(x) {
                format!("({})", r.text)
            } else {
                r.text
            };
            R::new(format!("-{inner}"), UNARY_PREC)
        }
        UnaryOp::Not => {
            let inner = if r.prec < UNARY_PREC {
                format!("({})", r.text)
            } else {
                r.text
            };
            let not = d.not_op();
            let sep = if not.ends_with(|c: char| c.is_alphabetic()) {
                " "
            } else {
                ""
            };
            R::new(format!("{not}{sep}{inner}"), UNARY_PREC)
        }
    })
}

fn operand(d: &(impl Dialect + ?Sized), op: BinaryOp, side: Side, child: &Expr, r: &R) -> String {
    let spec = op.spec();
    if needs_parens(spec.precedence, spec.assoc, side, r.prec) || d.force_parens(op, side, child) {
        format!("({})", r.text)
    } else {
        r.text.clone()
    }
}

fn render_binary<D: Dialect + ?Sized>(d: &D, op: BinaryOp, lhs: &Expr, rhs: &Expr, cx: &mut Cx) -> Res<R> {
    let l = render_expr(d, lhs, cx)?;
    let r = render_expr(d, rhs, cx)?;
    if let Some(special) = d.binary_special(op, lhs, &l, rhs, &r, cx) {
        return Ok(special);
    }
    let token = d.binary_token(op, &lhs.ty, &rhs.ty);
    Ok(R::new(
        format!(
            "{} {token} {}",
            operand(d, op, Side::Left, lhs, &l),
            operand(d, op, Side::Right, rhs, &r)
        ),
        op.spec().precedence,
    ))
}

fn render_call<D: Dialect + ?Sized>(d: &D, spec: &CallSpec, cx: &mut Cx) -> Res<R> {
    let args = render_args(d, &spec.args, cx)?;
    Ok(match &spec.form {
        CallForm::Function => d.function_call(&spec.name, &args, cx),
        CallForm::External(lib) => {
            d.use_library(lib, cx);
            R::atom(format!("{lib}{}{}({args})", d.scope_sep(), spec.name))
        }
        CallForm::Constructor => d.constructor(&spec.name, &args, cx),
        CallForm::Method(recv) => {
            let r = render_expr(d, recv, cx)?;
            d.method_call(recv, &r, &spec.name, &args, cx)
        }
        CallForm::SelfMethod => R::atom(d.self_call(&spec.name, &args)),
    })
}

/// `e + 1`, folded when `e` is an integer literal.
pub(crate) fn plus_one(e: &Expr, r: &R) -> R {
    match &e.node {
        ExprNode::Lit(Literal::Int(i)) => render_lit_int(i + 1),
        _ => R::new(
            format!(
                "{} + 1",
                if r.prec < 6 {
                    format!("({})", r.text)
                } else {
                    r.text.clone()
                }
            ),
            6,
        ),
    }
}
