//! JSON interchange for packages.
//!
//! Expressions are encoded as `{"op": .., "type": .., "args": [..]}` plus
//! op-specific fields. Decoding rebuilds every node through the smart
//! constructors, so a decoded package satisfies the same typing rules as a
//! built one.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::build::*;
use crate::error::BuildError;
use crate::ir::*;
use crate::patterns;
use crate::validate::{check_package, walk_body};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("malformed package JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported package version {0} (expected {FORMAT_VERSION})")]
    Version(u64),
    #[error("invalid program: {0}")]
    Build(#[from] BuildError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExprRepr {
    op: String,
    #[serde(rename = "type")]
    ty: Type,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    operator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<Literal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    var: Option<Variable>,
    #[serde(default, rename = "fn", skip_serializing_if = "Option::is_none")]
    func: Option<MathFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    call: Option<CallSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    args: Vec<Expr>,
}

impl ExprRepr {
    fn new(op: &str, ty: &Type) -> ExprRepr {
        ExprRepr {
            op: op.to_string(),
            ty: ty.clone(),
            operator: None,
            value: None,
            var: None,
            func: None,
            call: None,
            args: Vec::new(),
        }
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let ty = &self.ty;
        let with_args = |op: &str, args: Vec<&Expr>| ExprRepr {
            args: args.into_iter().cloned().collect(),
            ..ExprRepr::new(op, ty)
        };
        let repr = match &self.node {
            ExprNode::Lit(l) => ExprRepr {
                value: Some(l.clone()),
                ..ExprRepr::new("lit", ty)
            },
            ExprNode::ValueOf(v) => ExprRepr {
                var: Some(v.clone()),
                ..ExprRepr::new("var", ty)
            },
            ExprNode::Unary(op, x) => ExprRepr {
                operator: Some(op.spec().token.to_string()),
                ..with_args("unary", vec![x])
            },
            ExprNode::Binary(op, l, r) => ExprRepr {
                operator: Some(op.spec().token.to_string()),
                ..with_args("binary", vec![l, r])
            },
            ExprNode::InlineIf(c, t, f) => with_args("inline_if", vec![c, t, f]),
            ExprNode::Call(spec) => ExprRepr {
                call: Some(spec.clone()),
                ..ExprRepr::new("call", ty)
            },
            ExprNode::ArgsList => ExprRepr::new("args_list", ty),
            ExprNode::ArgAt(i) => with_args("arg_at", vec![i]),
            ExprNode::ArgExists(i) => with_args("arg_exists", vec![i]),
            ExprNode::Math(f, x) => ExprRepr {
                func: Some(*f),
                ..with_args("math", vec![x])
            },
            ExprNode::ListLit(items) => with_args("list", items.iter().collect()),
            ExprNode::ListAccess(l, i) => with_args("list_access", vec![l, i]),
            ExprNode::ListSize(l) => with_args("list_size", vec![l]),
            ExprNode::ListAppend(l, v) => with_args("list_append", vec![l, v]),
            ExprNode::ListIndexExists(l, i) => with_args("list_index_exists", vec![l, i]),
            ExprNode::IndexOf(l, v) => with_args("index_of", vec![l, v]),
        };
        repr.serialize(s)
    }
}

fn rebuild(r: ExprRepr) -> Result<Expr, String> {
    let declared = r.ty.clone();
    let n = r.args.len();
    let mut args = r.args.into_iter();
    let mut arg = || args.next().ok_or_else(|| "missing argument".to_string());
    let need = |k: usize| {
        if n == k {
            Ok(())
        } else {
            Err(format!("`{}` takes {k} argument(s), got {n}", r.op))
        }
    };
    let b = |res: Result<Expr, BuildError>| res.map_err(|e| e.to_string());
    let e = match r.op.as_str() {
        "lit" => {
            need(0)?;
            lit(r.value.ok_or("`lit` needs a value")?)
        }
        "var" => {
            need(0)?;
            value_of(&r.var.ok_or("`var` needs a variable")?)
        }
        "unary" => {
            need(1)?;
            let token = r.operator.ok_or("`unary` needs an operator")?;
            let op = UnaryOp::from_token(&token).ok_or_else(|| format!("unknown unary operator `{token}`"))?;
            b(apply_unary(op, arg()?))?
        }
        "binary" => {
            need(2)?;
            let token = r.operator.ok_or("`binary` needs an operator")?;
            let op = BinaryOp::from_token(&token).ok_or_else(|| format!("unknown binary operator `{token}`"))?;
            let (l, rhs) = (arg()?, arg()?);
            b(apply_binary(op, l, rhs))?
        }
        "inline_if" => {
            need(3)?;
            let (c, t, f) = (arg()?, arg()?, arg()?);
            b(inline_if(c, t, f))?
        }
        "call" => {
            need(0)?;
            let spec = r.call.ok_or("`call` needs a call")?;
            if let CallForm::Method(recv) = &spec.form {
                if !matches!(recv.ty, Type::Object(_)) {
                    return Err("method receiver must be an object".into());
                }
            }
            b(call(spec, declared.clone()))?
        }
        "args_list" => {
            need(0)?;
            patterns::args_list()
        }
        "arg_at" => {
            need(1)?;
            b(patterns::arg_at(arg()?))?
        }
        "arg_exists" => {
            need(1)?;
            b(patterns::arg_exists(arg()?))?
        }
        "math" => {
            need(1)?;
            b(patterns::math_fn(r.func.ok_or("`math` needs a function")?, arg()?))?
        }
        "list" => {
            let elem = declared.element().cloned().ok_or("`list` must have a list type")?;
            b(patterns::list_lit(elem, args.collect()))?
        }
        "list_access" => {
            need(2)?;
            let (l, i) = (arg()?, arg()?);
            b(patterns::list_access(l, i))?
        }
        "list_size" => {
            need(1)?;
            b(patterns::list_size(arg()?))?
        }
        "list_append" => {
            need(2)?;
            let (l, v) = (arg()?, arg()?);
            b(patterns::list_append(l, v))?
        }
        "list_index_exists" => {
            need(2)?;
            let (l, i) = (arg()?, arg()?);
            b(patterns::list_index_exists(l, i))?
        }
        "index_of" => {
            need(2)?;
            let (l, v) = (arg()?, arg()?);
            b(patterns::index_of(l, v))?
        }
        other => return Err(format!("unknown expression op `{other}`")),
    };
    if e.ty != declared {
        return Err(format!(
            "`{}` declared as {} but has type {}",
            r.op,
            declared.describe(),
            e.ty.describe()
        ));
    }
    Ok(e)
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(d)?;
        rebuild(repr).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackageRepr {
    version: u64,
    program: Program,
    #[serde(default)]
    aux: Vec<AuxFileSpec>,
}

pub fn encode(pkg: &Package) -> String {
    let repr = PackageRepr {
        version: FORMAT_VERSION,
        program: pkg.program.clone(),
        aux: pkg.aux.clone(),
    };
    serde_json::to_string_pretty(&repr).expect("package trees always serialise")
}

pub fn decode(text: &str) -> Result<Package, DecodeError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("version").and_then(serde_json::Value::as_u64) {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(DecodeError::Version(v)),
        None => return Err(DecodeError::Json(serde_json::Error::custom("missing `version`"))),
    }
    let repr: PackageRepr = serde_json::from_value(value)?;
    let pkg = Package {
        program: repr.program,
        aux: repr.aux,
    };
    check_statement_types(&pkg)?;
    check_package(&pkg)?;
    Ok(pkg)
}

fn require(op: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), BuildError> {
    if ok {
        Ok(())
    } else {
        Err(BuildError::TypeMismatch {
            op: op.into(),
            detail: detail(),
        })
    }
}

/// Re-runs the statement builders' typing rules over every method body.
fn check_statement_types(pkg: &Package) -> Result<(), BuildError> {
    let mut result = Ok(());
    let methods = pkg.program.modules.iter().flat_map(|m| {
        m.functions
            .iter()
            .chain(m.classes.iter().flat_map(|c| c.methods.iter()))
    });
    for m in methods {
        walk_body(&m.body, &mut |s| {
            if result.is_ok() {
                result = check_statement(s);
            }
        });
        result.clone()?;
    }
    for c in pkg.program.modules.iter().flat_map(|m| m.classes.iter()) {
        for sv in &c.state_vars {
            if let Some(init) = &sv.init {
                require("stateVar", assignable(&sv.variable.ty, &init.ty), || {
                    format!("`{}` initialised with {}", sv.variable.name, init.ty.describe())
                })?;
            }
        }
    }
    result
}

fn check_statement(s: &Statement) -> Result<(), BuildError> {
    let bool_cond = |op: &str, e: &Expr| {
        require(op, e.ty == Type::Bool, || {
            format!("condition has type {}", e.ty.describe())
        })
    };
    match s {
        Statement::VarDecDef(v, e) => var_dec_def(v, e.clone()).map(|_| ()),
        Statement::Assign(mode, v, e) => mk_assign(*mode, v, e.clone()).map(|_| ()),
        Statement::ListSet(l, i, v) => patterns::list_set(l.clone(), i.clone(), v.clone()).map(|_| ()),
        Statement::If { branches, .. } => branches.iter().try_for_each(|(c, _)| bool_cond("ifCond", c)),
        Statement::Switch {
            scrutinee,
            cases,
            default,
        } => switch(scrutinee.clone(), cases.clone(), default.clone()).map(|_| ()),
        Statement::For { cond, .. } => bool_cond("for", cond),
        Statement::While { cond, .. } => bool_cond("while", cond),
        Statement::ForRange {
            var, start, end, step, ..
        } => for_range(var, start.clone(), end.clone(), step.clone(), Body::default()).map(|_| ()),
        Statement::ForEach { var, list, .. } => for_each(var, list.clone(), Body::default()).map(|_| ()),
        Statement::ListSlice {
            target,
            source,
            start,
            end,
            step,
        } => patterns::list_slice(target, source.clone(), start.clone(), end.clone(), step.clone()).map(|_| ()),
        Statement::Pattern(PatternStmt::ReadLine(v)) => patterns::read_line(v).map(|_| ()),
        Statement::Pattern(PatternStmt::ReadInt(v)) => patterns::read_int(v).map(|_| ()),
        Statement::Pattern(PatternStmt::InitObserverList { elem, values }) => {
            patterns::init_observer_list(elem.clone(), values.clone()).map(|_| ())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Package {
        let x = var("x", Type::Int).unwrap();
        let main = main_function(body_statements(vec![
            var_dec_def(&x, apply_binary(BinaryOp::Add, lit_int(1), lit_int(2)).unwrap()).unwrap(),
            patterns::print_ln(value_of(&x)),
        ]))
        .unwrap();
        let m = build_module("Main", &[], vec![main], vec![]).unwrap();
        package(
            prog("sample", vec![m]).unwrap(),
            vec![AuxFileSpec::Makefile { with_doc_rule: true }],
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let pkg = sample();
        let text = encode(&pkg);
        assert_eq!(decode(&text).unwrap(), pkg);
    }

    #[test]
    fn expression_shape() {
        let e = apply_binary(BinaryOp::Add, lit_int(1), lit_int(2)).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["op"], "binary");
        assert_eq!(v["operator"], "#+");
        assert_eq!(v["type"], "int");
        assert_eq!(v["args"][0]["value"]["int"], 1);
    }

    #[test]
    fn rejects_bad_input() {
        let text = encode(&sample());
        let wrong_version = text.replacen("\"version\": 1", "\"version\": 7", 1);
        assert!(matches!(decode(&wrong_version), Err(DecodeError::Version(7))));
        let unknown_op = text.replacen("\"binary\"", "\"ternary\"", 1);
        assert!(matches!(decode(&unknown_op), Err(DecodeError::Json(_))));
        let ill_typed = text.replacen("\"#+\"", "\"?&&\"", 1);
        assert!(decode(&ill_typed).is_err());
        assert!(decode("{").is_err());
    }
}
