//! Built-in example programs, each with the arguments and input it runs with.

use crate::build::*;
use crate::error::BuildError;
use crate::ir::*;
use crate::patterns::*;

type Result<T> = std::result::Result<T, BuildError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub name: &'static str,
    pub package: Package,
    pub args: Vec<String>,
    pub stdin: String,
}

pub const NAMES: [&str; 9] = [
    "helloWorld",
    "addFunction",
    "signTest",
    "sliceDemo",
    "listPrintDemo",
    "applyDiscount",
    "fooClassGetSet",
    "patternTest",
    "argsEcho",
];

pub fn example(name: &str) -> Option<Example> {
    let (package, args, stdin): (Result<Package>, &[&str], &str) = match name {
        "helloWorld" => (hello_world(), &[], "Ada\n"),
        "addFunction" => (add_function(), &[], ""),
        "signTest" => (sign_test(), &[], ""),
        "sliceDemo" => (slice_demo(), &[], ""),
        "listPrintDemo" => (list_print_demo(), &[], ""),
        "applyDiscount" => (apply_discount(), &[], ""),
        "fooClassGetSet" => (foo_class_get_set(), &[], ""),
        "patternTest" => (pattern_test("On"), &[], ""),
        "argsEcho" => (args_echo(), &["alpha", "beta"], ""),
        _ => return None,
    };
    let name = NAMES.iter().copied().find(|n| *n == name)?;
    Some(Example {
        name,
        package: package.expect("gallery programs are well formed"),
        args: args.iter().map(|s| s.to_string()).collect(),
        stdin: stdin.to_string(),
    })
}

pub fn all() -> Vec<Example> {
    NAMES
        .iter()
        .map(|n| example(n).expect("listed example exists"))
        .collect()
}

fn single_main(name: &str, module: &str, stmts: Vec<Statement>) -> Result<Package> {
    let m = build_module(module, &[], vec![main_function(body_statements(stmts))?], vec![])?;
    package(prog(name, vec![m])?, vec![])
}

fn hello_world() -> Result<Package> {
    let name = var("name", Type::String)?;
    let count = var("count", Type::Int)?;
    let m = build_module(
        "HelloWorld",
        &[],
        vec![main_function(body(vec![
            block(vec![
                print_str_ln("Hello, world!"),
                var_dec(&name),
                read_line(&name)?,
                print_str("Hello, "),
                print_ln(value_of(&name)),
            ]),
            block(vec![
                var_dec_def(&count, lit_int(3))?,
                while_loop(
                    apply_binary(BinaryOp::Gt, value_of(&count), lit_int(0))?,
                    body_statements(vec![print_ln(value_of(&count)), decrement(&count)?]),
                )?,
                print_str_ln("Liftoff"),
            ]),
        ]))?],
        vec![],
    )?;
    package(prog("helloWorld", vec![doc_mod("Greets the user", m)])?, vec![])
}

fn add_function() -> Result<Package> {
    let num1 = var("num1", Type::Int)?;
    let num2 = var("num2", Type::Int)?;
    let add = function(
        "add",
        Scope::Public,
        Binding::Static,
        Type::Int,
        vec![param(&num1), param(&num2)],
        one_liner(return_state(apply_binary(
            BinaryOp::Add,
            value_of(&num1),
            value_of(&num2),
        )?)),
    )?;
    let add = doc_func(
        "Adds two numbers",
        &[("num1", "First addend"), ("num2", "Second addend")],
        Some("The sum"),
        add,
    )?;
    let calc = doc_mod("Arithmetic helpers", build_module("Calc", &[], vec![add], vec![])?);
    let total = var("total", Type::Int)?;
    let main = main_function(body_statements(vec![
        var_dec_def(&total, func_app("add", Type::Int, vec![lit_int(3), lit_int(4)])?)?,
        print_ln(value_of(&total)),
        print_ln(func_app(
            "add",
            Type::Int,
            vec![value_of(&total), apply_unary(UnaryOp::Negate, lit_int(10))?],
        )?),
    ]))?;
    let app = build_module("AddFunction", &["Calc"], vec![main], vec![])?;
    package(prog("addFunction", vec![calc, app])?, vec![])
}

fn sign_test() -> Result<Package> {
    let foo = var("foo", Type::Int)?;
    let describe = function(
        "describeSign",
        Scope::Public,
        Binding::Static,
        Type::Void,
        vec![param(&foo)],
        one_liner(if_cond(
            vec![
                (
                    apply_binary(BinaryOp::Gt, value_of(&foo), lit_int(0))?,
                    one_liner(print_str_ln("foo is positive")),
                ),
                (
                    apply_binary(BinaryOp::Lt, value_of(&foo), lit_int(0))?,
                    one_liner(print_str_ln("foo is negative")),
                ),
            ],
            one_liner(print_str_ln("foo is zero")),
        )?),
    )?;
    let nums = list_var("nums", Type::Int)?;
    let n = var("n", Type::Int)?;
    let i = var("i", Type::Int)?;
    let main = main_function(body(vec![
        block(vec![
            var_dec_def(
                &nums,
                list_lit(
                    Type::Int,
                    vec![apply_unary(UnaryOp::Negate, lit_int(1))?, lit_int(0), lit_int(1)],
                )?,
            )?,
            for_each(
                &n,
                value_of(&nums),
                one_liner(value_stmt(func_app("describeSign", Type::Void, vec![value_of(&n)])?)),
            )?,
        ]),
        block(vec![for_range(
            &i,
            lit_int(0),
            lit_int(2),
            lit_int(1),
            one_liner(switch(
                value_of(&i),
                vec![
                    (Literal::Int(0), one_liner(print_str_ln("zero"))),
                    (Literal::Int(1), one_liner(print_str_ln("one"))),
                ],
                one_liner(print_str_ln("many")),
            )?),
        )?]),
    ]))?;
    let m = build_module("SignTest", &[], vec![describe, main], vec![])?;
    package(prog("signTest", vec![m])?, vec![])
}

fn slice_demo() -> Result<Package> {
    let ages = list_var("ages", Type::Float)?;
    let some_ages = list_var("someAges", Type::Float)?;
    let values = [10.0, 20.5, 30.0, 40.25];
    single_main(
        "sliceDemo",
        "SliceDemo",
        vec![
            var_dec_def(
                &ages,
                list_lit(Type::Float, values.iter().map(|f| lit_float(*f)).collect())?,
            )?,
            var_dec_def(&some_ages, list_lit(Type::Float, vec![])?)?,
            list_slice(&some_ages, value_of(&ages), Some(lit_int(1)), Some(lit_int(3)), None)?,
            print_ln(value_of(&some_ages)),
            print_ln(list_size(value_of(&some_ages))?),
            print_ln(list_access(value_of(&some_ages), lit_int(0))?),
        ],
    )
}

fn list_print_demo() -> Result<Package> {
    let my_name = list_var("myName", Type::Int)?;
    let empty = list_var("empty", Type::Int)?;
    let mv = || value_of(&my_name);
    single_main(
        "listPrintDemo",
        "ListPrintDemo",
        vec![
            var_dec_def(&my_name, list_lit(Type::Int, vec![lit_int(3), lit_int(1), lit_int(4)])?)?,
            print_ln(mv()),
            value_stmt(list_append(mv(), lit_int(1))?),
            list_set(mv(), lit_int(0), lit_int(9))?,
            print_ln(mv()),
            print_ln(index_of(mv(), lit_int(4))?),
            print_ln(list_index_exists(mv(), lit_int(3))?),
            print_ln(list_index_exists(mv(), lit_int(4))?),
            var_dec_def(&empty, list_lit(Type::Int, vec![])?)?,
            print_ln(value_of(&empty)),
        ],
    )
}

pub(crate) fn discount_vars() -> Result<(Variable, Variable, Variable)> {
    Ok((
        var("price", Type::Int)?,
        var("discount", Type::Int)?,
        var("isAffordable", Type::Bool)?,
    ))
}

fn apply_discount() -> Result<Package> {
    let (price, discount, is_affordable) = discount_vars()?;
    let f = in_out_func(
        "applyDiscount",
        Scope::Public,
        Binding::Static,
        std::slice::from_ref(&discount),
        std::slice::from_ref(&is_affordable),
        std::slice::from_ref(&price),
        body_statements(vec![
            sub_assign(&price, value_of(&discount))?,
            assign(
                &is_affordable,
                apply_binary(BinaryOp::Lt, value_of(&price), lit_int(20))?,
            )?,
        ]),
    )?;
    let f = doc_func(
        "Applies a discount to a price",
        &[("price", "The original price"), ("discount", "The amount taken off")],
        Some("The new price and whether it is affordable"),
        f,
    )?;
    let main = main_function(body(vec![
        block(vec![
            var_dec_def(&price, lit_int(25))?,
            var_dec_def(&discount, lit_int(10))?,
            var_dec(&is_affordable),
        ]),
        block(vec![
            in_out_call(
                "applyDiscount",
                vec![value_of(&discount)],
                std::slice::from_ref(&is_affordable),
                std::slice::from_ref(&price),
            )?,
            print_ln(value_of(&price)),
            print_ln(value_of(&is_affordable)),
        ]),
    ]))?;
    let m = build_module("ApplyDiscount", &[], vec![f, main], vec![])?;
    let m = doc_mod("Discount calculation", m);
    package(
        prog("applyDiscount", vec![m])?,
        vec![
            AuxFileSpec::Makefile { with_doc_rule: true },
            AuxFileSpec::DoxygenConfig,
        ],
    )
}

fn foo_class_get_set() -> Result<Package> {
    let foo = var("foo", Type::Int)?;
    let class = doc_class(
        "Holds a single number",
        pub_class(
            "FooClass",
            None,
            vec![priv_mvar(&foo)],
            vec![get_method("FooClass", &foo)?, set_method("FooClass", &foo)?],
        )?,
    );
    let obj_ty = obj("FooClass")?;
    let my_foo = var("myFoo", obj_ty)?;
    let main = main_function(body_statements(vec![
        var_dec_def(&my_foo, new_obj("FooClass", vec![])?)?,
        print_ln(get(value_of(&my_foo), &foo)?),
        set(value_of(&my_foo), &foo, lit_int(5))?,
        print_ln(get(value_of(&my_foo), &foo)?),
        set(
            value_of(&my_foo),
            &foo,
            apply_binary(BinaryOp::Mul, get(value_of(&my_foo), &foo)?, lit_int(3))?,
        )?,
        print_ln(get(value_of(&my_foo), &foo)?),
    ]))?;
    let m = build_module("FooClassGetSet", &[], vec![main], vec![class])?;
    package(prog("fooClassGetSet", vec![m])?, vec![])
}

pub const STATE_NAME: &str = "myFSM";
pub const STATE_LABELS: [&str; 3] = ["Off", "On", "Neither"];
pub const STRATEGY_CHOSEN: &str = "double";
pub const STRATEGY_UNCHOSEN_TEXT: &str = "Tripling";

/// The pattern demo; `next_state` is the label the machine changes to before
/// it is checked.
pub fn pattern_test(next_state: &str) -> Result<Package> {
    let [off, on, neither] = STATE_LABELS;
    let obs_ty = obj("Observer")?;
    let n = var("n", Type::Int)?;
    let obs1 = var("obs1", obs_ty.clone())?;
    let obs2 = var("obs2", obs_ty.clone())?;
    let new_obs = || new_obj("Observer", vec![]);
    let print_num = pub_method(
        "printNum",
        "Observer",
        Type::Void,
        vec![],
        one_liner(print_str_ln("notified")),
    )?;
    let observer = pub_class("Observer", None, vec![], vec![print_num])?;
    let main = main_function(body(vec![
        block(vec![
            var_dec(&n),
            init_state(STATE_NAME, off)?,
            change_state(STATE_NAME, next_state)?,
            check_state(
                STATE_NAME,
                vec![(off, one_liner(print_str_ln(off))), (on, one_liner(print_str_ln(on)))],
                one_liner(print_str_ln(neither)),
            )?,
        ]),
        block(vec![var_dec_def(&obs1, new_obs()?)?, var_dec_def(&obs2, new_obs()?)?]),
        block(vec![
            init_observer_list(obs_ty.clone(), vec![value_of(&obs1)])?,
            add_observer(value_of(&obs2)),
            notify_observers("printNum", obs_ty)?,
        ]),
        run_strategy(
            STRATEGY_CHOSEN,
            vec![
                ("double", one_liner(print_str_ln("Doubling"))),
                ("triple", one_liner(print_str_ln(STRATEGY_UNCHOSEN_TEXT))),
            ],
            Some((&n, apply_binary(BinaryOp::Mul, lit_int(21), lit_int(2))?)),
        )?,
        block(vec![print_ln(value_of(&n))]),
    ]))?;
    let m = build_module("PatternTest", &[], vec![main], vec![observer])?;
    package(prog("patternTest", vec![m])?, vec![])
}

fn args_echo() -> Result<Package> {
    let first = var("first", Type::String)?;
    single_main(
        "argsEcho",
        "ArgsEcho",
        vec![
            var_dec_def(&first, arg_at(lit_int(0))?)?,
            print_ln(value_of(&first)),
            if_cond(
                vec![(arg_exists(lit_int(1))?, one_liner(print_ln(arg_at(lit_int(1))?)))],
                one_liner(print_str_ln("no second argument")),
            )?,
            print_ln(list_size(args_list())?),
        ],
    )
}
