use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effdiag::algebra::seq_compose;
use effdiag::gen::standard_kinds;
use effdiag::lambda::{eval, eval_diagram, Fuel, Prelude, Term};
use effdiag::lawcheck::{run_law_suite, Law, LawSuiteConfig};
use effdiag::presentations::RenderFormat;
use effdiag::{Error, Execution, KindTag, MonadKind, Presentation};

#[derive(Parser)]
#[command(
    name = "effdiag",
    version,
    about = "Evaluate effectful programs into diagrams and check monad laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a program and print its monadic value.
    Eval(ProgramArgs),
    /// Evaluate a program and print it as a presentation.
    Diagram(ProgramArgs),
    /// Compose a presentation with one presentation per index.
    Compose(ComposeArgs),
    /// Run the law suite.
    Laws(LawsArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Machine,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => RenderFormat::Text,
            Format::Machine => RenderFormat::Machine,
        }
    }
}

#[derive(Args)]
struct MonadArgs {
    /// Exception labels, comma separated.
    #[arg(long, value_delimiter = ',')]
    exceptions: Option<Vec<String>>,
    /// Global-state locations, comma separated.
    #[arg(long, value_delimiter = ',')]
    locations: Option<Vec<String>>,
    /// Output alphabet, as a string of characters.
    #[arg(long)]
    alphabet: Option<String>,
}

impl MonadArgs {
    /// Builds a kind from its name; `defaults` supplies unset parameters.
    fn kind(&self, name: &str, defaults: &Defaults) -> Result<MonadKind, Error> {
        let tag = KindTag::from_name(name).ok_or_else(|| {
            Error::InvalidKind(format!(
                "unknown monad `{name}` (expected one of maybe, exception, powerset, dist, state, output)"
            ))
        })?;
        Ok(match tag {
            KindTag::Maybe => MonadKind::Maybe,
            KindTag::Powerset => MonadKind::Powerset,
            KindTag::Subdistribution => MonadKind::Subdistribution,
            KindTag::Exception => MonadKind::exception(
                self.exceptions
                    .clone()
                    .unwrap_or_else(|| defaults.exceptions()),
            )?,
            KindTag::GlobalState => MonadKind::global_state(
                self.locations
                    .clone()
                    .unwrap_or_else(|| defaults.locations()),
            )?,
            KindTag::Output => MonadKind::output(
                self.alphabet
                    .clone()
                    .unwrap_or_else(|| defaults.alphabet())
                    .chars(),
            )?,
        })
    }
}

/// Parameter defaults: wide ones for running programs, the small standard
/// instances for law checking.
enum Defaults {
    Programs,
    Laws,
}

impl Defaults {
    fn exceptions(&self) -> Vec<String> {
        match self {
            Defaults::Programs => vec!["e".into()],
            Defaults::Laws => vec!["e1".into(), "e2".into()],
        }
    }

    fn locations(&self) -> Vec<String> {
        match self {
            Defaults::Programs => vec!["l".into()],
            Defaults::Laws => vec!["l1".into(), "l2".into()],
        }
    }

    fn alphabet(&self) -> String {
        match self {
            Defaults::Programs => ('a'..='z').collect(),
            Defaults::Laws => "ab".into(),
        }
    }
}

#[derive(Args)]
struct ProgramArgs {
    /// Program text (omit when using --file).
    program: Option<String>,
    /// Read the program from a file.
    #[arg(long, conflicts_with = "program")]
    file: Option<PathBuf>,
    #[arg(short, long, default_value = "maybe")]
    monad: String,
    #[arg(short, long, default_value_t = 100)]
    fuel: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Extra `name = term` definitions, added to the standard prelude.
    #[arg(long)]
    prelude: Option<PathBuf>,
    /// Accepted for uniformity; evaluation is deterministic.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    params: MonadArgs,
}

#[derive(Args)]
struct ComposeArgs {
    /// Machine-format presentation whose effect heads the composition.
    xi: PathBuf,
    /// One machine-format presentation per index of `xi`.
    family: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct LawsArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Laws to run, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    laws: Option<Vec<String>>,
    /// Monads to check, comma separated (default: all).
    #[arg(short, long, value_delimiter = ',')]
    monads: Option<Vec<String>>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 3)]
    carrier_size: u32,
    #[arg(long, default_value_t = 3)]
    arity: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Report counterexamples as generated.
    #[arg(long)]
    no_shrink: bool,
    /// Run trials on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    params: MonadArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => 2,
            Error::Signature { .. } | Error::KindMismatch { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_program(args: &ProgramArgs) -> Result<(Term, MonadKind), Failure> {
    let src = match (&args.program, &args.file) {
        (Some(p), None) => p.clone(),
        (None, Some(f)) => read(f)?,
        _ => {
            return Err(Failure {
                code: 1,
                message: "give a program or --file".into(),
            })
        }
    };
    let mut prelude = Prelude::standard();
    if let Some(path) = &args.prelude {
        prelude.load(&read(path)?)?;
    }
    // Parse errors take precedence over bad monad parameters.
    let term = prelude.parse(src.trim()).map_err(|e| match e {
        Error::ArityMismatch { .. } => Failure {
            code: 2,
            message: e.to_string(),
        },
        other => other.into(),
    })?;
    let kind = args.params.kind(&args.monad, &Defaults::Programs)?;
    Ok((term, kind))
}

fn cmd_eval(args: &ProgramArgs) -> Result<String, Failure> {
    let (term, kind) = load_program(args)?;
    let value = eval(&term, &kind, Fuel(args.fuel))?;
    Ok(match args.format {
        Format::Text => value.to_string(),
        Format::Machine => value.to_json().to_string(),
    })
}

fn cmd_diagram(args: &ProgramArgs) -> Result<String, Failure> {
    let (term, kind) = load_program(args)?;
    Ok(eval_diagram(&term, &kind, Fuel(args.fuel))?.render(args.format.into()))
}

fn load_presentation(path: &Path) -> Result<Presentation<Term>, Failure> {
    let json: serde_json::Value = serde_json::from_str(&read(path)?).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })?;
    Presentation::from_json(&json).map_err(|e| Failure {
        code: Failure::from(e.clone()).code,
        message: format!("{}: {e}", path.display()),
    })
}

fn cmd_compose(args: &ComposeArgs) -> Result<String, Failure> {
    let xi = load_presentation(&args.xi)?;
    let family = args
        .family
        .iter()
        .map(|p| load_presentation(p))
        .collect::<Result<Vec<_>, _>>()?;
    if family.len() != xi.effect().arity() {
        return Err(Failure {
            code: 4,
            message: format!(
                "family has {} presentations, the head has arity {}",
                family.len(),
                xi.effect().arity()
            ),
        });
    }
    Ok(seq_compose(xi.effect(), &family)?.render(args.format.into()))
}

fn cmd_laws(args: &LawsArgs) -> Result<(String, bool), Failure> {
    let defaults = Defaults::Laws;
    let mut cfg = LawSuiteConfig {
        seed: args.seed,
        trials: args.trials,
        carrier_size_max: args.carrier_size,
        arity_max: args.arity,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        shrink: !args.no_shrink,
        ..LawSuiteConfig::default()
    };
    if let Some(names) = &args.laws {
        cfg.laws = names
            .iter()
            .map(|n| Law::from_name(n.trim()))
            .collect::<Result<_, _>>()?;
    }
    cfg.monads = match &args.monads {
        Some(names) => names
            .iter()
            .map(|n| args.params.kind(n.trim(), &defaults))
            .collect::<Result<_, _>>()?,
        None => standard_kinds()
            .into_iter()
            .map(|k| args.params.kind(k.tag().name(), &defaults))
            .collect::<Result<_, _>>()?,
    };
    let report = run_law_suite(&cfg)?;
    let out = match args.format {
        Format::Text => report.render_text().trim_end().to_owned(),
        Format::Machine => report.to_json().to_string(),
    };
    Ok((out, report.success()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a).map(|s| (s, true)),
        Command::Diagram(a) => cmd_diagram(a).map(|s| (s, true)),
        Command::Compose(a) => cmd_compose(a).map(|s| (s, true)),
        Command::Laws(a) => cmd_laws(a),
    };
    match result {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
