use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use schanuel_core::suites::Suite;
use schanuel_lab::commands::{cmd_check, cmd_idim, cmd_prop, cmd_resolve, cmd_schanuel, PropArgs};
use schanuel_lab::{parse_instance, Exit, InstanceFile, Outcome};

#[derive(Parser)]
#[command(
    name = "schanuel-lab",
    version,
    about = "Exact checks of injective resolutions and Schanuel-type isomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file (JSON).
    #[arg(long, value_name = "FILE")]
    instance: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, env = "SCHANUEL_LAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Print a JSON report instead of tables.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance and summarize it.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Print the canonical injective resolution of a module.
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Injective dimension of a module, or the global dimension.
    Idim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
    /// Check I ⊕ F' ≅ I' ⊕ F for two named conflations.
    Schanuel {
        #[command(flatten)]
        common: Common,
        first: String,
        second: String,
        /// Trials of the independent isomorphism search.
        #[arg(long, default_value_t = 512)]
        trials: usize,
    },
    /// Run a randomized suite.
    Prop {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Inconclusive trials tolerated before exiting with code 3.
        #[arg(long, default_value_t = 0)]
        max_inconclusive: usize,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite `{s}`; expected one of {}", names.join(", "))
    })
}

fn load(common: &Common, command: &str, required: bool) -> Result<Option<InstanceFile>, Outcome> {
    let Some(path) = &common.instance else {
        return if required { Err(Outcome::error(Exit::Parse, command, "--instance is required")) } else { Ok(None) };
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(Exit::Parse, command, format!("{}: {e}", path.display())))?;
    parse_instance(&text)
        .map(Some)
        .map_err(|e| Outcome::error(Exit::Parse, command, format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> (Outcome, bool) {
    let (common, result) = match cmd {
        Command::Check { common } => {
            let r = load(&common, "check", true).map(|i| cmd_check(&i.expect("required")));
            (common, r)
        }
        Command::Resolve { common, module, depth } => {
            let r = load(&common, "resolve", true).map(|i| cmd_resolve(&i.expect("required"), &module, depth));
            (common, r)
        }
        Command::Idim { common, module, max_depth } => {
            let r = load(&common, "idim", true).map(|i| cmd_idim(&i.expect("required"), module.as_deref(), max_depth));
            (common, r)
        }
        Command::Schanuel { common, first, second, trials } => {
            let r = load(&common, "schanuel", true)
                .map(|i| cmd_schanuel(&i.expect("required"), &first, &second, common.seed, trials));
            (common, r)
        }
        Command::Prop { common, suite, trials, max_dim, max_inconclusive } => {
            let args = PropArgs { suite, trials: trials as usize, seed: common.seed, max_dim, max_inconclusive };
            let r = load(&common, "prop", false).map(|i| cmd_prop(i.as_ref(), &args));
            (common, r)
        }
    };
    (result.unwrap_or_else(|o| o), common.json)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Exit::Parse.code()) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let (outcome, json) = run(cli.command);
    let mut stdout = std::io::stdout().lock();
    if json {
        let text = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
        let _ = writeln!(stdout, "{text}");
    } else if outcome.exit == Exit::Parse || outcome.json.get("error").is_some() {
        let _ = stdout.flush();
        eprint!("{}", outcome.human);
    } else {
        let _ = write!(stdout, "{}", outcome.human);
        let _ = writeln!(stdout, "({:.2?})", start.elapsed());
    }
    ExitCode::from(outcome.exit.code())
}
