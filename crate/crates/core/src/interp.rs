//! A direct evaluator for program trees, used as the behavioural reference
//! the rendered targets are compared against.
//!
//! Integers are 64-bit with division truncating toward zero. Lists have value
//! semantics; objects are shared references.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::ir::*;
use crate::patterns::OBSERVER_LIST;

const MAX_STEPS: u64 = 5_000_000;
const MAX_DEPTH: usize = 500;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpError {
    #[error("program has no main function")]
    NoMain,
    #[error("uncaught exception: {0}")]
    Thrown(String),
    #[error("runtime error: {0}")]
    Runtime(String),
    #[error("cannot evaluate {0}")]
    Unsupported(String),
    #[error("step limit exceeded")]
    StepLimit,
}

type Res<T> = Result<T, InterpError>;

fn rt<T>(msg: impl Into<String>) -> Res<T> {
    Err(InterpError::Runtime(msg.into()))
}

#[derive(Debug)]
struct Object {
    class: String,
    fields: HashMap<String, Value>,
}

#[derive(Debug, Clone)]
enum Value {
    Unset,
    Void,
    Bool(bool),
    Int(i64),
    Float(f64),
    Char(char),
    Str(String),
    List(Vec<Value>),
    Obj(Rc<RefCell<Object>>),
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        use Value::*;
        match (self, other) {
            (Bool(a), Bool(b)) => a == b,
            (Int(a), Int(b)) => a == b,
            (Float(a), Float(b)) => a == b,
            (Int(a), Float(b)) | (Float(b), Int(a)) => (*a as f64) == *b,
            (Char(a), Char(b)) => a == b,
            (Str(a), Str(b)) => a == b,
            (List(a), List(b)) => a == b,
            (Obj(a), Obj(b)) => Rc::ptr_eq(a, b),
            _ => false,
        }
    }
}

fn format_float(f: f64) -> String {
    let s = format!("{f:?}");
    if s.contains(['.', 'e', 'n', 'i']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn display(v: &Value) -> Res<String> {
    Ok(match v {
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) => format_float(*f),
        Value::Char(c) => c.to_string(),
        Value::Str(s) => s.clone(),
        Value::List(items) => {
            let parts: Res<Vec<String>> = items.iter().map(display).collect();
            format!("[{}]", parts?.join(", "))
        }
        Value::Obj(_) => return Err(InterpError::Unsupported("printing an object".into())),
        Value::Unset | Value::Void => return rt("printing a value that does not exist"),
    })
}

fn default_for(ty: &Type) -> Value {
    match ty {
        Type::Bool => Value::Bool(false),
        Type::Int => Value::Int(0),
        Type::Float => Value::Float(0.0),
        Type::Char => Value::Char('\0'),
        Type::String => Value::Str(String::new()),
        Type::List(_) => Value::List(Vec::new()),
        _ => Value::Unset,
    }
}

fn literal(l: &Literal) -> Value {
    match l {
        Literal::Bool(b) => Value::Bool(*b),
        Literal::Int(i) => Value::Int(*i),
        Literal::Float(f) => Value::Float(*f),
        Literal::Char(c) => Value::Char(*c),
        Literal::String(s) => Value::Str(s.clone()),
    }
}

enum Flow {
    Normal,
    Break,
    Continue,
    Return(Value),
}

struct Frame {
    scopes: Vec<HashMap<String, Value>>,
    this: Option<Rc<RefCell<Object>>>,
    class: Option<String>,
}

impl Frame {
    fn new(this: Option<Rc<RefCell<Object>>>, class: Option<String>) -> Frame {
        Frame {
            scopes: vec![HashMap::new()],
            this,
            class,
        }
    }

    fn slot(&mut self, name: &str) -> Option<&mut Value> {
        self.scopes.iter_mut().rev().find_map(|s| s.get_mut(name))
    }

    fn declare(&mut self, name: &str, v: Value) {
        self.scopes
            .last_mut()
            .expect("frame has a scope")
            .insert(name.to_string(), v);
    }
}

struct Machine<'p> {
    functions: HashMap<&'p str, &'p Method>,
    classes: HashMap<&'p str, &'p ClassDecl>,
    statics: HashMap<(String, String), Value>,
    args: Vec<String>,
    stdin: std::vec::IntoIter<String>,
    out: String,
    frames: Vec<Frame>,
    steps: u64,
}

/// Runs the program's main function and returns everything it printed.
pub fn run(pkg: &Package, args: &[String], stdin: &str) -> Result<String, InterpError> {
    let program = &pkg.program;
    let main = program
        .main_module()
        .and_then(Module::main_function)
        .ok_or(InterpError::NoMain)?;
    let mut m = Machine {
        functions: HashMap::new(),
        classes: HashMap::new(),
        statics: HashMap::new(),
        args: args.to_vec(),
        stdin: stdin.lines().map(str::to_string).collect::<Vec<_>>().into_iter(),
        out: String::new(),
        frames: Vec::new(),
        steps: 0,
    };
    for module in &program.modules {
        for f in module.functions.iter().filter(|f| !f.is_main) {
            m.functions.insert(&f.name, f);
        }
        for c in &module.classes {
            m.classes.insert(&c.name, c);
        }
    }
    m.frames.push(Frame::new(None, None));
    for module in &program.modules {
        for c in &module.classes {
            for sv in c.state_vars.iter().filter(|sv| sv.binding == Binding::Static) {
                let v = match &sv.init {
                    Some(e) => m.eval(e)?,
                    None => default_for(&sv.variable.ty),
                };
                m.statics.insert((c.name.clone(), sv.variable.name.clone()), v);
            }
        }
    }
    m.frames.clear();
    m.invoke(main, None, vec![])?;
    Ok(m.out)
}

impl<'p> Machine<'p> {
    fn frame(&mut self) -> &mut Frame {
        self.frames.last_mut().expect("a frame is active")
    }

    fn tick(&mut self) -> Res<()> {
        self.steps += 1;
        if self.steps > MAX_STEPS {
            Err(InterpError::StepLimit)
        } else {
            Ok(())
        }
    }

    fn class(&self, name: &str) -> Res<&'p ClassDecl> {
        match self.classes.get(name) {
            Some(c) => Ok(c),
            None => Err(InterpError::Unsupported(format!("external class `{name}`"))),
        }
    }

    fn find_method(&self, class: &str, name: &str) -> Res<(&'p Method, String)> {
        let mut current = Some(class.to_string());
        while let Some(c) = current {
            let decl = self.class(&c)?;
            if let Some(m) = decl
                .methods
                .iter()
                .find(|m| m.name == name && m.kind != MethodKind::Constructor)
            {
                return Ok((m, c));
            }
            current = decl.parent.clone();
        }
        rt(format!("no method `{name}` on `{class}`"))
    }

    fn static_owner(&self, class: &str, name: &str) -> Res<(String, String)> {
        let mut current = Some(class.to_string());
        while let Some(c) = current {
            let key = (c.clone(), name.to_string());
            if self.statics.contains_key(&key) {
                return Ok(key);
            }
            current = self.class(&c)?.parent.clone();
        }
        rt(format!("no static `{name}` on `{class}`"))
    }

    fn invoke(&mut self, m: &'p Method, this: Option<(Rc<RefCell<Object>>, String)>, args: Vec<Value>) -> Res<Value> {
        if self.frames.len() >= MAX_DEPTH {
            return rt("call depth exceeded");
        }
        if args.len() != m.params.len() {
            return rt(format!(
                "`{}` takes {} arguments, got {}",
                m.name,
                m.params.len(),
                args.len()
            ));
        }
        let (obj, class) = match this {
            Some((o, c)) => (Some(o), Some(c)),
            None => (None, m.containing_class.clone()),
        };
        let mut frame = Frame::new(obj, class);
        for (p, a) in m.params.iter().zip(args) {
            frame.declare(&p.variable.name, a);
        }
        self.frames.push(frame);
        let flow = self.exec_body(&m.body);
        let frame = self.frames.pop().expect("pushed above");
        let ret = match flow? {
            Flow::Return(v) => v,
            _ => Value::Void,
        };
        if let Some(spec) = m.in_out() {
            // Hand the outputs back in inouts-then-outs order as a list.
            let mut frame = frame;
            let mut outs = Vec::new();
            for v in spec.inouts.iter().chain(&spec.outs) {
                outs.push(frame.slot(&v.name).cloned().unwrap_or(Value::Unset));
            }
            return Ok(Value::List(outs));
        }
        Ok(ret)
    }

    fn exec_body(&mut self, body: &'p Body) -> Res<Flow> {
        self.frame().scopes.push(HashMap::new());
        let mut result = Ok(Flow::Normal);
        for s in body.statements() {
            match self.exec(s) {
                Ok(Flow::Normal) => {}
                other => {
                    result = other;
                    break;
                }
            }
        }
        self.frame().scopes.pop();
        result
    }

    fn exec(&mut self, s: &'p Statement) -> Res<Flow> {
        self.tick()?;
        match s {
            Statement::VarDec(v) => {
                self.frame().declare(&v.name, Value::Unset);
            }
            Statement::VarDecDef(v, e) => {
                let val = self.eval(e)?;
                let val = self.coerce(&v.ty, val);
                self.frame().declare(&v.name, val);
            }
            Statement::Assign(mode, v, e) => {
                let rhs = match e {
                    Some(e) => Some(self.eval(e)?),
                    None => None,
                };
                let mut current = || self.read_var(v);
                let new = match (mode, rhs) {
                    (AssignMode::Set, Some(r)) => r,
                    (AssignMode::AddEq, Some(r)) => arith(BinaryOp::Add, current()?, r)?,
                    (AssignMode::SubEq, Some(r)) => arith(BinaryOp::Sub, current()?, r)?,
                    (AssignMode::Inc, _) => arith(BinaryOp::Add, current()?, Value::Int(1))?,
                    (AssignMode::Dec, _) => arith(BinaryOp::Sub, current()?, Value::Int(1))?,
                    _ => return rt("assignment without a value"),
                };
                let new = self.coerce(&v.ty, new);
                self.write_var(v, new)?;
            }
            Statement::ListSet(l, i, v) => {
                let i = self.eval_int(i)?;
                let v = self.eval(v)?;
                self.with_list(l, |items| {
                    let slot = index(items.len(), i).and_then(|k| items.get_mut(k));
                    match slot {
                        Some(s) => {
                            *s = v;
                            Ok(())
                        }
                        None => rt(format!("index {i} out of range")),
                    }
                })?;
            }
            Statement::Return(e) => return Ok(Flow::Return(self.eval(e)?)),
            Statement::Throw(msg) => return Err(InterpError::Thrown(msg.clone())),
            Statement::Free(v) => {
                for scope in self.frame().scopes.iter_mut().rev() {
                    if scope.remove(&v.name).is_some() {
                        break;
                    }
                }
            }
            Statement::Comment(_) => {}
            Statement::Break => return Ok(Flow::Break),
            Statement::Continue => return Ok(Flow::Continue),
            Statement::Expr(e) => {
                self.eval(e)?;
            }
            Statement::If { branches, else_body } => {
                for (c, b) in branches {
                    if self.eval_bool(c)? {
                        return self.exec_body(b);
                    }
                }
                if let Some(b) = else_body {
                    return self.exec_body(b);
                }
            }
            Statement::Switch {
                scrutinee,
                cases,
                default,
            } => {
                let v = self.eval(scrutinee)?;
                let chosen = cases.iter().find(|(l, _)| literal(l) == v).map(|(_, b)| b);
                let flow = self.exec_body(chosen.unwrap_or(default))?;
                // `break` leaves the switch, not the enclosing loop.
                return Ok(match flow {
                    Flow::Break => Flow::Normal,
                    f => f,
                });
            }
            Statement::For {
                init,
                cond,
                update,
                body,
            } => {
                self.frame().scopes.push(HashMap::new());
                let r = self.run_for(init, cond, update, body);
                self.frame().scopes.pop();
                return r;
            }
            Statement::ForRange {
                var,
                start,
                end,
                step,
                body,
            } => {
                let (mut i, end, step) = (self.eval_int(start)?, self.eval_int(end)?, self.eval_int(step)?);
                if step == 0 {
                    return rt("forRange with a zero step");
                }
                while (step > 0 && i <= end) || (step < 0 && i >= end) {
                    self.frame()
                        .scopes
                        .push(HashMap::from([(var.name.clone(), Value::Int(i))]));
                    let flow = self.exec_body(body);
                    self.frame().scopes.pop();
                    match flow? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                    i += step;
                }
            }
            Statement::ForEach { var, list, body } => {
                let Value::List(items) = self.eval(list)? else {
                    return rt("forEach over a non-list");
                };
                for item in items {
                    if let Some(f) = self.loop_iteration(&var.name, item, body)? {
                        return Ok(f);
                    }
                }
            }
            Statement::While { cond, body } => {
                while self.eval_bool(cond)? {
                    match self.exec_body(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                }
            }
            Statement::TryCatch { try_body, catch_body } => match self.exec_body(try_body) {
                Err(InterpError::Thrown(_) | InterpError::Runtime(_)) => return self.exec_body(catch_body),
                other => return other,
            },
            Statement::ListSlice {
                target,
                source,
                start,
                end,
                step,
            } => {
                let Value::List(items) = self.eval(source)? else {
                    return rt("slicing a non-list");
                };
                let opt = |m: &mut Self, e: &'p Option<Expr>| -> Res<Option<i64>> {
                    e.as_ref().map(|e| m.eval_int(e)).transpose()
                };
                let (a, b, k) = (opt(self, start)?, opt(self, end)?, opt(self, step)?.unwrap_or(1));
                let sliced = slice(&items, a, b, k)?;
                self.write_var(target, Value::List(sliced))?;
            }
            Statement::Print(kind, e) => {
                let v = self.eval(e)?;
                let text = display(&v)?;
                self.out.push_str(&text);
                if *kind == PrintKind::PrintLn {
                    self.out.push('\n');
                }
            }
            Statement::Pattern(p) => return self.exec_pattern(p),
        }
        Ok(Flow::Normal)
    }

    fn loop_iteration(&mut self, name: &str, item: Value, body: &'p Body) -> Res<Option<Flow>> {
        self.frame().scopes.push(HashMap::from([(name.to_string(), item)]));
        let flow = self.exec_body(body);
        self.frame().scopes.pop();
        Ok(match flow? {
            Flow::Return(v) => Some(Flow::Return(v)),
            Flow::Break => Some(Flow::Normal),
            _ => None,
        })
    }

    fn run_for(&mut self, init: &'p Statement, cond: &'p Expr, update: &'p Statement, body: &'p Body) -> Res<Flow> {
        self.exec(init)?;
        while self.eval_bool(cond)? {
            match self.exec_body(body)? {
                Flow::Break => break,
                Flow::Return(v) => return Ok(Flow::Return(v)),
                _ => {}
            }
            self.exec(update)?;
        }
        Ok(Flow::Normal)
    }

    fn exec_pattern(&mut self, p: &'p PatternStmt) -> Res<Flow> {
        match p {
            PatternStmt::ReadLine(v) => {
                let line = self
                    .stdin
                    .next()
                    .ok_or_else(|| InterpError::Runtime("end of input".into()))?;
                self.write_var(v, Value::Str(line))?;
            }
            PatternStmt::ReadInt(v) => {
                let line = self
                    .stdin
                    .next()
                    .ok_or_else(|| InterpError::Runtime("end of input".into()))?;
                let n = line
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| InterpError::Runtime(format!("`{line}` is not an integer")))?;
                self.write_var(v, Value::Int(n))?;
            }
            PatternStmt::InOutCall {
                name,
                ins,
                outs,
                inouts,
            } => {
                let mut args = Vec::new();
                for v in inouts {
                    args.push(self.read_var(v)?);
                }
                for e in ins {
                    args.push(self.eval(e)?);
                }
                args.extend(outs.iter().map(|_| Value::Unset));
                let Value::List(results) = self.call_named(name, args)? else {
                    return rt(format!("`{name}` is not an in/out procedure"));
                };
                for (v, r) in inouts.iter().chain(outs).zip(results) {
                    self.write_var(v, r)?;
                }
            }
            PatternStmt::InitObserverList { values, .. } => {
                let items = values.iter().map(|e| self.eval(e)).collect::<Res<Vec<_>>>()?;
                self.frame().declare(OBSERVER_LIST, Value::List(items));
            }
            PatternStmt::AddObserver(e) => {
                let v = self.eval(e)?;
                match self.frame().slot(OBSERVER_LIST) {
                    Some(Value::List(items)) => items.push(v),
                    _ => return rt("no observer list in scope"),
                }
            }
            PatternStmt::NotifyObservers { method, .. } => {
                let items = match self.frame().slot(OBSERVER_LIST) {
                    Some(Value::List(items)) => items.clone(),
                    _ => return rt("no observer list in scope"),
                };
                for item in items {
                    self.call_method(item, method, vec![])?;
                }
            }
            PatternStmt::InitState { name, label } => {
                self.frame().declare(name, Value::Str(label.clone()));
            }
            PatternStmt::ChangeState { name, label } => match self.frame().slot(name) {
                Some(slot) => *slot = Value::Str(label.clone()),
                None => return rt(format!("state `{name}` not initialised")),
            },
            PatternStmt::CheckState { name, cases, fallback } => {
                let current = match self.frame().slot(name) {
                    Some(Value::Str(s)) => s.clone(),
                    _ => return rt(format!("state `{name}` not initialised")),
                };
                let body = cases
                    .iter()
                    .find(|(l, _)| *l == current)
                    .map(|(_, b)| b)
                    .unwrap_or(fallback);
                return self.exec_body(body);
            }
        }
        Ok(Flow::Normal)
    }

    fn coerce(&self, ty: &Type, v: Value) -> Value {
        match (ty, v) {
            (Type::Float, Value::Int(i)) => Value::Float(i as f64),
            (_, v) => v,
        }
    }

    fn read_var(&mut self, v: &Variable) -> Res<Value> {
        let val = match &v.form {
            VarForm::Plain => self.frame().slot(&v.name).cloned(),
            VarForm::SelfMember => {
                let this = self.frame().this.clone();
                match this {
                    Some(o) => o.borrow().fields.get(&v.name).cloned(),
                    None => {
                        let class = self
                            .frame()
                            .class
                            .clone()
                            .ok_or_else(|| InterpError::Runtime("no enclosing class".into()))?;
                        let key = self.static_owner(&class, &v.name)?;
                        self.statics.get(&key).cloned()
                    }
                }
            }
            VarForm::ObjectMember(owner) => match self.read_var(owner)? {
                Value::Obj(o) => o.borrow().fields.get(&v.name).cloned(),
                _ => return rt(format!("`{}` is not an object", owner.name)),
            },
            VarForm::ClassMember(class) => {
                let key = self.static_owner(class, &v.name)?;
                self.statics.get(&key).cloned()
            }
            VarForm::External(lib) => {
                return Err(InterpError::Unsupported(format!(
                    "external variable `{lib}.{}`",
                    v.name
                )))
            }
        };
        match val {
            Some(Value::Unset) | None => rt(format!("`{}` read before it was set", v.name)),
            Some(x) => Ok(x),
        }
    }

    fn write_var(&mut self, v: &Variable, val: Value) -> Res<()> {
        match &v.form {
            VarForm::Plain => match self.frame().slot(&v.name) {
                Some(slot) => *slot = val,
                None => self.frame().declare(&v.name, val),
            },
            VarForm::SelfMember => {
                let this = self.frame().this.clone();
                match this {
                    Some(o) => {
                        o.borrow_mut().fields.insert(v.name.clone(), val);
                    }
                    None => {
                        let class = self
                            .frame()
                            .class
                            .clone()
                            .ok_or_else(|| InterpError::Runtime("no enclosing class".into()))?;
                        let key = self.static_owner(&class, &v.name)?;
                        self.statics.insert(key, val);
                    }
                }
            }
            VarForm::ObjectMember(owner) => match self.read_var(owner)? {
                Value::Obj(o) => {
                    o.borrow_mut().fields.insert(v.name.clone(), val);
                }
                _ => return rt(format!("`{}` is not an object", owner.name)),
            },
            VarForm::ClassMember(class) => {
                let key = self.static_owner(class, &v.name)?;
                self.statics.insert(key, val);
            }
            VarForm::External(lib) => {
                return Err(InterpError::Unsupported(format!(
                    "external variable `{lib}.{}`",
                    v.name
                )))
            }
        }
        Ok(())
    }

    /// Applies `f` to the list stored in the variable `list` reads from.
    fn with_list<T>(&mut self, list: &'p Expr, f: impl FnOnce(&mut Vec<Value>) -> Res<T>) -> Res<T> {
        let ExprNode::ValueOf(v) = &list.node else {
            return Err(InterpError::Unsupported(
                "mutating a list that is not a variable".into(),
            ));
        };
        let Value::List(mut items) = self.read_var(v)? else {
            return rt(format!("`{}` is not a list", v.name));
        };
        let r = f(&mut items)?;
        self.write_var(v, Value::List(items))?;
        Ok(r)
    }

    fn eval_bool(&mut self, e: &'p Expr) -> Res<bool> {
        match self.eval(e)? {
            Value::Bool(b) => Ok(b),
            _ => rt("expected a boolean"),
        }
    }

    fn eval_int(&mut self, e: &'p Expr) -> Res<i64> {
        match self.eval(e)? {
            Value::Int(i) => Ok(i),
            _ => rt("expected an integer"),
        }
    }

    fn eval_list(&mut self, e: &'p Expr) -> Res<Vec<Value>> {
        match self.eval(e)? {
            Value::List(items) => Ok(items),
            _ => rt("expected a list"),
        }
    }

    fn eval(&mut self, e: &'p Expr) -> Res<Value> {
        self.tick()?;
        Ok(match &e.node {
            ExprNode::Lit(l) => literal(l),
            ExprNode::ValueOf(v) => self.read_var(v)?,
            ExprNode::Unary(op, x) => {
                let v = self.eval(x)?;
                match (op, v) {
                    (UnaryOp::Not, Value::Bool(b)) => Value::Bool(!b),
                    (UnaryOp::Negate, Value::Int(i)) => Value::Int(i.checked_neg().ok_or_else(overflow)?),
                    (UnaryOp::Negate, Value::Float(f)) => Value::Float(-f),
                    (UnaryOp::Abs, Value::Int(i)) => Value::Int(i.checked_abs().ok_or_else(overflow)?),
                    (UnaryOp::Abs, Value::Float(f)) => Value::Float(f.abs()),
                    (UnaryOp::Sqrt, v) => Value::Float(as_float(&v)?.sqrt()),
                    _ => return rt("bad unary operand"),
                }
            }
            ExprNode::Binary(BinaryOp::And, l, r) => Value::Bool(self.eval_bool(l)? && self.eval_bool(r)?),
            ExprNode::Binary(BinaryOp::Or, l, r) => Value::Bool(self.eval_bool(l)? || self.eval_bool(r)?),
            ExprNode::Binary(op, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                if op.is_comparison() {
                    compare(*op, &a, &b)?
                } else {
                    arith(*op, a, b)?
                }
            }
            ExprNode::InlineIf(c, t, f) => {
                if self.eval_bool(c)? {
                    self.eval(t)?
                } else {
                    self.eval(f)?
                }
            }
            ExprNode::Call(spec) => self.eval_call(spec)?,
            ExprNode::ArgsList => Value::List(self.args.iter().cloned().map(Value::Str).collect()),
            ExprNode::ArgAt(i) => {
                let i = self.eval_int(i)?;
                match index(self.args.len(), i).and_then(|k| self.args.get(k)) {
                    Some(a) => Value::Str(a.clone()),
                    None => return rt(format!("no argument {i}")),
                }
            }
            ExprNode::ArgExists(i) => {
                let i = self.eval_int(i)?;
                Value::Bool(i >= 0 && (i as usize) < self.args.len())
            }
            ExprNode::Math(f, x) => {
                let v = self.eval(x)?;
                if let (MathFn::Abs, Value::Int(i)) = (f, &v) {
                    return Ok(Value::Int(i.checked_abs().ok_or_else(overflow)?));
                }
                let x = as_float(&v)?;
                Value::Float(match f {
                    MathFn::Sin => x.sin(),
                    MathFn::Cos => x.cos(),
                    MathFn::Tan => x.tan(),
                    MathFn::Floor => x.floor(),
                    MathFn::Ceil => x.ceil(),
                    MathFn::Exp => x.exp(),
                    MathFn::Log => x.ln(),
                    MathFn::Sqrt => x.sqrt(),
                    MathFn::Abs => x.abs(),
                })
            }
            ExprNode::ListLit(items) => {
                let elem = e.ty.element().cloned().unwrap_or(Type::Void);
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    let v = self.eval(item)?;
                    out.push(self.coerce(&elem, v));
                }
                Value::List(out)
            }
            ExprNode::ListAccess(l, i) => {
                let items = self.eval_list(l)?;
                let i = self.eval_int(i)?;
                match index(items.len(), i).and_then(|k| items.get(k)) {
                    Some(v) => v.clone(),
                    None => return rt(format!("index {i} out of range")),
                }
            }
            ExprNode::ListSize(l) => Value::Int(self.eval_list(l)?.len() as i64),
            ExprNode::ListAppend(l, v) => {
                let v = self.eval(v)?;
                let elem = l.ty.element().cloned().unwrap_or(Type::Void);
                let v = self.coerce(&elem, v);
                self.with_list(l, |items| {
                    items.push(v);
                    Ok(())
                })?;
                Value::Void
            }
            ExprNode::ListIndexExists(l, i) => {
                let n = self.eval_list(l)?.len();
                let i = self.eval_int(i)?;
                Value::Bool(i >= 0 && (i as usize) < n)
            }
            ExprNode::IndexOf(l, v) => {
                let items = self.eval_list(l)?;
                let v = self.eval(v)?;
                Value::Int(items.iter().position(|x| *x == v).map_or(-1, |k| k as i64))
            }
        })
    }

    fn eval_call(&mut self, spec: &'p CallSpec) -> Res<Value> {
        let mut args = Vec::with_capacity(spec.args.len());
        for a in &spec.args {
            args.push(self.eval(a)?);
        }
        match &spec.form {
            CallForm::Function => self.call_named(&spec.name, args),
            CallForm::SelfMethod => self.call_named(&spec.name, args),
            CallForm::External(lib) => Err(InterpError::Unsupported(format!(
                "external function `{lib}.{}`",
                spec.name
            ))),
            CallForm::Constructor => self.construct(&spec.name, args),
            CallForm::Method(recv) => {
                let r = self.eval(recv)?;
                self.call_method(r, &spec.name, args)
            }
        }
    }

    /// Resolves a bare call: a method of the current class first, then a
    /// free function.
    fn call_named(&mut self, name: &str, args: Vec<Value>) -> Res<Value> {
        let frame = self.frame();
        let (this, class) = (frame.this.clone(), frame.class.clone());
        if let Some(class) = class {
            if let Ok((m, owner)) = self.find_method(&class, name) {
                return match (this, m.binding) {
                    (Some(o), Binding::Dynamic) => self.invoke(m, Some((o, owner)), args),
                    _ => self.invoke(m, None, args),
                };
            }
        }
        match self.functions.get(name) {
            Some(f) => self.invoke(f, None, args),
            None => Err(InterpError::Unsupported(format!("unknown function `{name}`"))),
        }
    }

    fn call_method(&mut self, receiver: Value, name: &str, args: Vec<Value>) -> Res<Value> {
        let Value::Obj(o) = receiver else {
            return rt(format!("calling `{name}` on a non-object"));
        };
        let class = o.borrow().class.clone();
        let (m, owner) = self.find_method(&class, name)?;
        self.invoke(m, Some((o, owner)), args)
    }

    fn construct(&mut self, class: &str, args: Vec<Value>) -> Res<Value> {
        let mut chain = Vec::new();
        let mut current = Some(class.to_string());
        while let Some(c) = current {
            let decl = self.class(&c)?;
            chain.push(decl);
            current = decl.parent.clone();
        }
        let obj = Rc::new(RefCell::new(Object {
            class: class.to_string(),
            fields: HashMap::new(),
        }));
        self.frames.push(Frame::new(None, Some(class.to_string())));
        let mut init = Ok(());
        'fields: for decl in chain.iter().rev() {
            for sv in decl.state_vars.iter().filter(|sv| sv.binding == Binding::Dynamic) {
                let v = match &sv.init {
                    Some(e) => match self.eval(e) {
                        Ok(v) => self.coerce(&sv.variable.ty, v),
                        Err(err) => {
                            init = Err(err);
                            break 'fields;
                        }
                    },
                    None => default_for(&sv.variable.ty),
                };
                obj.borrow_mut().fields.insert(sv.variable.name.clone(), v);
            }
        }
        self.frames.pop();
        init?;
        let ctor = chain[0].methods.iter().find(|m| m.kind == MethodKind::Constructor);
        match ctor {
            Some(m) => {
                self.invoke(m, Some((obj.clone(), class.to_string())), args)?;
            }
            None if !args.is_empty() => return rt(format!("`{class}` has no constructor taking arguments")),
            None => {}
        }
        Ok(Value::Obj(obj))
    }
}

fn overflow() -> InterpError {
    InterpError::Runtime("integer overflow".into())
}

fn index(len: usize, i: i64) -> Option<usize> {
    (i >= 0 && (i as usize) < len).then_some(i as usize)
}

fn as_float(v: &Value) -> Res<f64> {
    match v {
        Value::Int(i) => Ok(*i as f64),
        Value::Float(f) => Ok(*f),
        _ => rt("expected a number"),
    }
}

fn arith(op: BinaryOp, a: Value, b: Value) -> Res<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Int(x), Int(y)) => Int(match op {
            BinaryOp::Add => x.checked_add(y),
            BinaryOp::Sub => x.checked_sub(y),
            BinaryOp::Mul => x.checked_mul(y),
            BinaryOp::Div if y == 0 => return rt("division by zero"),
            BinaryOp::Div => x.checked_div(y),
            BinaryOp::Pow if y < 0 => return rt("negative integer exponent"),
            BinaryOp::Pow => u32::try_from(y).ok().and_then(|y| x.checked_pow(y)),
            _ => return rt("bad arithmetic operator"),
        }
        .ok_or_else(overflow)?),
        (Str(x), Str(y)) if op == BinaryOp::Add => Str(x + &y),
        (a, b) => {
            let (x, y) = (as_float(&a)?, as_float(&b)?);
            Float(match op {
                BinaryOp::Add => x + y,
                BinaryOp::Sub => x - y,
                BinaryOp::Mul => x * y,
                BinaryOp::Div => x / y,
                BinaryOp::Pow => x.powf(y),
                _ => return rt("bad arithmetic operator"),
            })
        }
    })
}

fn compare(op: BinaryOp, a: &Value, b: &Value) -> Res<Value> {
    use std::cmp::Ordering;
    let ord: Option<Ordering> = match (a, b) {
        (Value::Int(x), Value::Int(y)) => Some(x.cmp(y)),
        (Value::Str(x), Value::Str(y)) => Some(x.cmp(y)),
        (Value::Char(x), Value::Char(y)) => Some(x.cmp(y)),
        (Value::Int(_) | Value::Float(_), Value::Int(_) | Value::Float(_)) => as_float(a)?.partial_cmp(&as_float(b)?),
        _ => None,
    };
    let r = match op {
        BinaryOp::Eq => a == b,
        BinaryOp::Ne => a != b,
        _ => {
            let Some(o) = ord else {
                return rt("values are not ordered");
            };
            match op {
                BinaryOp::Lt => o.is_lt(),
                BinaryOp::Le => o.is_le(),
                BinaryOp::Gt => o.is_gt(),
                BinaryOp::Ge => o.is_ge(),
                _ => unreachable!("comparison operators only"),
            }
        }
    };
    Ok(Value::Bool(r))
}

/// `items[start:end:step]` with out-of-range bounds clamped.
fn slice(items: &[Value], start: Option<i64>, end: Option<i64>, step: i64) -> Res<Vec<Value>> {
    if step == 0 {
        return rt("slice step cannot be zero");
    }
    let len = items.len() as i64;
    let clamp = |i: i64, lo: i64, hi: i64| {
        let i = if i < 0 { i + len } else { i };
        i.clamp(lo, hi)
    };
    let mut out = Vec::new();
    if step > 0 {
        let (mut i, e) = (clamp(start.unwrap_or(0), 0, len), clamp(end.unwrap_or(len), 0, len));
        while i < e {
            out.push(items[i as usize].clone());
            i += step;
        }
    } else {
        let mut i = start.map_or(len - 1, |s| clamp(s, -1, len - 1));
        let e = end.map_or(-1, |x| clamp(x, -1, len - 1));
        while i > e {
            out.push(items[i as usize].clone());
            i += step;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slicing_matches_python() {
        let items: Vec<Value> = (0..5).map(Value::Int).collect();
        let ints = |v: Vec<Value>| {
            v.into_iter()
                .map(|x| match x {
                    Value::Int(i) => i,
                    _ => unreachable!(),
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(ints(slice(&items, Some(1), Some(3), 1).unwrap()), vec![1, 2]);
        assert_eq!(ints(slice(&items, None, None, 2).unwrap()), vec![0, 2, 4]);
        assert_eq!(ints(slice(&items, None, None, -1).unwrap()), vec![4, 3, 2, 1, 0]);
        assert_eq!(ints(slice(&items, Some(3), Some(0), -2).unwrap()), vec![3, 1]);
        assert_eq!(ints(slice(&items, Some(-2), None, 1).unwrap()), vec![3, 4]);
    }

    #[test]
    fn integer_division_truncates() {
        assert_eq!(
            arith(BinaryOp::Div, Value::Int(-7), Value::Int(2)).unwrap(),
            Value::Int(-3)
        );
        assert!(arith(BinaryOp::Div, Value::Int(1), Value::Int(0)).is_err());
    }

    #[test]
    fn floats_keep_a_fraction() {
        assert_eq!(format_float(30.0), "30.0");
        assert_eq!(format_float(0.1), "0.1");
    }
}
