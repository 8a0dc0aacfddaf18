use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oogen_cli::toolchain::OVERRIDES;
use oogen_cli::{load_input, render_to_dir, verify, with_aux, CliError, Loaded, EXIT_DECODE};
use oogen_core::gallery;
use oogen_core::json;
use oogen_core::TargetId;

#[derive(Parser)]
#[command(name = "oogen", version, about = "Render one program as Python, Java, C# and C++")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A package JSON file, or example:NAME for a built-in example
    #[arg(long)]
    input: String,
    /// Target language; repeat for several (default: all)
    #[arg(long = "target", value_name = "TARGET")]
    targets: Vec<TargetId>,
    /// Also generate a Makefile
    #[arg(long)]
    makefile: bool,
    /// Also generate a Doxygen config and a `doc` Makefile rule
    #[arg(long)]
    doc: bool,
}

impl Input {
    fn targets(&self) -> Vec<TargetId> {
        if self.targets.is_empty() {
            TargetId::ALL.to_vec()
        } else {
            self.targets.clone()
        }
    }

    fn load(&self) -> Result<Loaded, CliError> {
        let mut loaded = load_input(&self.input)?;
        loaded.package = with_aux(loaded.package, self.makefile, self.doc);
        Ok(loaded)
    }
}

fn verify_help() -> String {
    let mut s = String::from("Toolchains are found on PATH; override them with:\n");
    for (var, what) in OVERRIDES {
        s.push_str(&format!("  {var:<14} {what}\n"));
    }
    s.push_str("Set a variable to the empty string to skip that toolchain.");
    s
}

#[derive(Subcommand)]
enum Command {
    /// Write the generated files to OUT/<target>/
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in examples, or print one as package JSON
    Examples {
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
    },
    /// Compile and run every available target and compare their output
    #[command(after_help = verify_help())]
    Verify {
        #[command(flatten)]
        input: Input,
        /// Command-line arguments for the program (default: the example's own)
        #[arg(long, num_args = 0.., allow_hyphen_values = true)]
        args: Option<Vec<String>>,
        /// File fed to the program's standard input
        #[arg(long)]
        stdin: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Render { input, out } => {
            let loaded = input.load()?;
            for path in render_to_dir(&loaded.package, &input.targets(), &out)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
        Command::Examples { emit: None } => {
            for name in gallery::NAMES {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Examples { emit: Some(name) } => {
            let ex = gallery::example(&name).ok_or(CliError::UnknownExample(name))?;
            println!("{}", json::encode(&ex.package));
            Ok(0)
        }
        Command::Verify { input, args, stdin } => {
            let mut loaded = input.load()?;
            if let Some(a) = args {
                loaded.args = a;
            }
            if let Some(path) = stdin {
                loaded.stdin = std::fs::read_to_string(&path).map_err(|source| CliError::Read { path, source })?;
            }
            let report = verify::verify(&loaded.package, &input.targets(), &loaded.args, &loaded.stdin)?;
            print!("{}", report.render());
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_DECODE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("oogen: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
