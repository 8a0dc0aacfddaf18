//! The language-agnostic program tree.
//!
//! Every value here is immutable once built; the smart constructors in
//! [`crate::build`] and [`crate::patterns`] enforce the typing and arity rules.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Type {
    Bool,
    Int,
    Float,
    Char,
    String,
    InFile,
    OutFile,
    Void,
    List(Box<Type>),
    Object(String),
}

impl Type {
    pub fn list(elem: Type) -> Type {
        Type::List(Box::new(elem))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Type::Int | Type::Float)
    }

    pub fn element(&self) -> Option<&Type> {
        match self {
            Type::List(e) => Some(e),
            _ => None,
        }
    }

    /// Short human name used in error messages.
    pub fn describe(&self) -> String {
        match self {
            Type::Bool => "bool".into(),
            Type::Int => "int".into(),
            Type::Float => "float".into(),
            Type::Char => "char".into(),
            Type::String => "string".into(),
            Type::InFile => "infile".into(),
            Type::OutFile => "outfile".into(),
            Type::Void => "void".into(),
            Type::List(e) => format!("list({})", e.describe()),
            Type::Object(c) => format!("obj({c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    Static,
    Dynamic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Public,
    Private,
}

/// How a variable reference is qualified when rendered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarForm {
    Plain,
    External(String),
    ClassMember(String),
    ObjectMember(Box<Variable>),
    SelfMember,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variable {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: Type,
    pub binding: Binding,
    pub form: VarForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Literal {
    Bool(bool),
    Int(i64),
    Float(f64),
    Char(char),
    String(String),
}

impl Literal {
    pub fn ty(&self) -> Type {
        match self {
            Literal::Bool(_) => Type::Bool,
            Literal::Int(_) => Type::Int,
            Literal::Float(_) => Type::Float,
            Literal::Char(_) => Type::Char,
            Literal::String(_) => Type::String,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Unary,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixity {
    Prefix,
    Infix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assoc {
    Left,
    Right,
}

/// Static facts about an operator: catalog token, binding strength, shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    pub token: &'static str,
    pub precedence: u8,
    pub arity: Arity,
    pub fixity: Fixity,
    pub assoc: Assoc,
}

/// Precedence of literals, variable reads, calls and other atoms.
pub const ATOMIC_PREC: u8 = 10;
pub const UNARY_PREC: u8 = 9;
pub const INLINE_IF_PREC: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Not,
    Negate,
    Sqrt,
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    And,
    Or,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Not, UnaryOp::Negate, UnaryOp::Sqrt, UnaryOp::Abs];

    pub fn spec(self) -> OperatorSpec {
        let token = match self {
            UnaryOp::Not => "?!",
            UnaryOp::Negate => "#~",
            UnaryOp::Sqrt => "#/^",
            UnaryOp::Abs => "#|",
        };
        OperatorSpec {
            token,
            precedence: UNARY_PREC,
            arity: Arity::Unary,
            fixity: Fixity::Prefix,
            assoc: Assoc::Right,
        }
    }

    pub fn from_token(token: &str) -> Option<UnaryOp> {
        Self::ALL.into_iter().find(|op| op.spec().token == token)
    }
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 13] = [
        BinaryOp::And,
        BinaryOp::Or,
        BinaryOp::Lt,
        BinaryOp::Le,
        BinaryOp::Gt,
        BinaryOp::Ge,
        BinaryOp::Eq,
        BinaryOp::Ne,
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
    ];

    pub fn spec(self) -> OperatorSpec {
        let (token, precedence) = match self {
            BinaryOp::Pow => ("#^", 8),
            BinaryOp::Mul => ("#*", 7),
            BinaryOp::Div => ("#/", 7),
            BinaryOp::Add => ("#+", 6),
            BinaryOp::Sub => ("#-", 6),
            BinaryOp::Lt => ("?<", 5),
            BinaryOp::Le => ("?<=", 5),
            BinaryOp::Gt => ("?>", 5),
            BinaryOp::Ge => ("?>=", 5),
            BinaryOp::Eq => ("?==", 4),
            BinaryOp::Ne => ("?!=", 4),
            BinaryOp::And => ("?&&", 3),
            BinaryOp::Or => ("?||", 2),
        };
        OperatorSpec {
            token,
            precedence,
            arity: Arity::Binary,
            fixity: Fixity::Infix,
            assoc: if self == BinaryOp::Pow {
                Assoc::Right
            } else {
                Assoc::Left
            },
        }
    }

    pub fn from_token(token: &str) -> Option<BinaryOp> {
        Self::ALL.into_iter().find(|op| op.spec().token == token)
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge | BinaryOp::Eq | BinaryOp::Ne
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MathFn {
    Sin,
    Cos,
    Tan,
    Floor,
    Ceil,
    Exp,
    Log,
    Sqrt,
    Abs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CallForm {
    Function,
    External(String),
    Constructor,
    Method(Box<Expr>),
    SelfMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CallSpec {
    pub form: CallForm,
    pub name: String,
    pub args: Vec<Expr>,
}

/// A value node. The JSON encoding is hand-written in [`crate::json`].
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub node: ExprNode,
    pub ty: Type,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Lit(Literal),
    ValueOf(Variable),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    InlineIf(Box<Expr>, Box<Expr>, Box<Expr>),
    Call(CallSpec),
    ArgsList,
    ArgAt(Box<Expr>),
    ArgExists(Box<Expr>),
    Math(MathFn, Box<Expr>),
    ListLit(Vec<Expr>),
    ListAccess(Box<Expr>, Box<Expr>),
    ListSize(Box<Expr>),
    ListAppend(Box<Expr>, Box<Expr>),
    ListIndexExists(Box<Expr>, Box<Expr>),
    IndexOf(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Binding strength of this node in the operator table.
    pub fn precedence(&self) -> u8 {
        match &self.node {
            ExprNode::Unary(op, _) => op.spec().precedence,
            ExprNode::Binary(op, _, _) => op.spec().precedence,
            ExprNode::InlineIf(..) => INLINE_IF_PREC,
            ExprNode::Lit(Literal::Int(i)) if *i < 0 => UNARY_PREC,
            ExprNode::Lit(Literal::Float(f)) if f.is_sign_negative() => UNARY_PREC,
            _ => ATOMIC_PREC,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignMode {
    Set,
    AddEq,
    SubEq,
    Inc,
    Dec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintKind {
    Print,
    PrintLn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    VarDec(Variable),
    VarDecDef(Variable, Expr),
    Assign(AssignMode, Variable, Option<Expr>),
    ListSet(Expr, Expr, Expr),
    Return(Expr),
    Throw(String),
    Free(Variable),
    Comment(String),
    Break,
    Continue,
    Expr(Expr),
    If {
        branches: Vec<(Expr, Body)>,
        else_body: Option<Body>,
    },
    Switch {
        scrutinee: Expr,
        cases: Vec<(Literal, Body)>,
        default: Body,
    },
    For {
        init: Box<Statement>,
        cond: Expr,
        update: Box<Statement>,
        body: Body,
    },
    ForRange {
        var: Variable,
        start: Expr,
        end: Expr,
        step: Expr,
        body: Body,
    },
    ForEach {
        var: Variable,
        list: Expr,
        body: Body,
    },
    While {
        cond: Expr,
        body: Body,
    },
    TryCatch {
        try_body: Body,
        catch_body: Body,
    },
    ListSlice {
        target: Variable,
        source: Expr,
        start: Option<Expr>,
        end: Option<Expr>,
        step: Option<Expr>,
    },
    Print(PrintKind, Expr),
    Pattern(PatternStmt),
}

/// Statements whose rendering is an idiom rather than a single construct.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternStmt {
    ReadLine(Variable),
    ReadInt(Variable),
    InOutCall {
        name: String,
        ins: Vec<Expr>,
        outs: Vec<Variable>,
        inouts: Vec<Variable>,
    },
    InitObserverList {
        elem: Type,
        values: Vec<Expr>,
    },
    AddObserver(Expr),
    NotifyObservers {
        method: String,
        elem: Type,
    },
    InitState {
        name: String,
        label: String,
    },
    ChangeState {
        name: String,
        label: String,
    },
    CheckState {
        name: String,
        cases: Vec<(String, Body)>,
        fallback: Body,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block(pub Vec<Statement>);

/// A body is a list of blocks; blocks are separated by blank lines when rendered.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Body(pub Vec<Block>);

impl Body {
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|b| b.0.is_empty())
    }

    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.0.iter().flat_map(|b| b.0.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Param {
    pub variable: Variable,
    pub by_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InOutSpec {
    pub ins: Vec<Variable>,
    pub outs: Vec<Variable>,
    pub inouts: Vec<Variable>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    Plain,
    Constructor,
    InOut(InOutSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocSpec {
    pub description: String,
    pub param_descs: Vec<(String, String)>,
    pub return_desc: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Method {
    pub name: String,
    pub scope: Scope,
    pub binding: Binding,
    pub return_type: Type,
    pub params: Vec<Param>,
    pub body: Body,
    pub containing_class: Option<String>,
    pub is_main: bool,
    pub kind: MethodKind,
    pub doc: Option<DocSpec>,
}

impl Method {
    pub fn in_out(&self) -> Option<&InOutSpec> {
        match &self.kind {
            MethodKind::InOut(spec) => Some(spec),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateVar {
    pub scope: Scope,
    pub binding: Binding,
    pub is_const: bool,
    pub variable: Variable,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDecl {
    pub name: String,
    pub parent: Option<String>,
    pub scope: Scope,
    pub state_vars: Vec<StateVar>,
    pub methods: Vec<Method>,
    pub doc: Option<DocSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Module {
    pub name: String,
    pub imports: Vec<String>,
    pub functions: Vec<Method>,
    pub classes: Vec<ClassDecl>,
    pub is_main_module: bool,
    pub doc: Option<DocSpec>,
}

impl Module {
    pub fn is_empty(&self) -> bool {
        self.functions.is_empty() && self.classes.is_empty()
    }

    pub fn main_function(&self) -> Option<&Method> {
        self.functions.iter().find(|f| f.is_main)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Program {
    pub name: String,
    pub modules: Vec<Module>,
}

impl Program {
    pub fn main_module(&self) -> Option<&Module> {
        self.modules.iter().find(|m| m.is_main_module)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxFileSpec {
    Makefile { with_doc_rule: bool },
    DoxygenConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Package {
    pub program: Program,
    pub aux: Vec<AuxFileSpec>,
}
