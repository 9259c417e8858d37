mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::{Args, Parser, Subcommand, ValueEnum};
use primsync_core::aut::parse_aut;
use primsync_core::conjecture::enumerate::DEFAULT_BUDGET;
use primsync_core::conjecture::{
    enumerate_and_verify, search_counterexample, VariantSpec, VerifyConfig,
};
use primsync_core::monoid::DEFAULT_MONOID_CAP;
use primsync_core::{dot, Automaton, Error};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

const PROGRESS_EVERY: u64 = 1_000_000;

/// Synchronization and primitivity analysis of finite automata.
#[derive(Parser)]
#[command(name = "primsync", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an automaton given in .aut format ("-" reads standard input).
    Analyze {
        file: PathBuf,
        /// Print a JSON report.
        #[arg(long)]
        json: bool,
        /// Also compute the exact length of a shortest reset word.
        #[arg(long)]
        shortest: bool,
        /// Largest transition monoid to generate.
        #[arg(long, default_value_t = DEFAULT_MONOID_CAP)]
        monoid_cap: usize,
    },
    /// Check every automaton of a given size against a letter condition.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Enumerate one automaton per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, env = "PRIMSYNC_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Largest number of candidate tuples to examine.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Counterexamples listed in the report (all are counted).
        #[arg(long, default_value_t = 20)]
        max_counterexamples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Sample random automata satisfying a letter condition.
    Search {
        #[command(flatten)]
        space: SpaceArgs,
        /// Number of samples.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write a Graphviz rendering of an automaton.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum)]
        graph: GraphKind,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    states: usize,
    #[arg(long)]
    letters: usize,
    #[arg(long, value_enum)]
    variant: VariantKind,
    /// Largest letter deficiency (relaxed variant).
    #[arg(long, default_value_t = 2)]
    deficiency: usize,
    /// Largest cycle in a non-cycle component (relaxed variant).
    #[arg(long, default_value_t = 3)]
    max_cycle: usize,
}

impl SpaceArgs {
    fn variant(&self) -> VariantSpec {
        match self.variant {
            VariantKind::Weak => VariantSpec::Weak,
            VariantKind::Strong => VariantSpec::Strong,
            VariantKind::Relaxed => VariantSpec::Relaxed {
                allowed_deficiency: self.deficiency,
                max_cycle: self.max_cycle,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantKind {
    Weak,
    Strong,
    Relaxed,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Letters,
    Rystsov,
    Pair,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceExceeded { .. }
            | Error::Precondition(_)
            | Error::InvariantViolation(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(format!("standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))?
    };
    parse_aut(&text).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| input_failure(format!("standard output: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            file,
            json,
            shortest,
            monoid_cap,
        } => {
            let a = load(&file)?;
            let r = report::analyze(&a, shortest, monoid_cap)?;
            emit(&if json {
                to_json(&r)
            } else {
                report::render_analysis(&a, &r)
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            space,
            dedup,
            jobs,
            budget,
            max_counterexamples,
            json,
        } => {
            let config = VerifyConfig::new(space.states, space.letters, space.variant())
                .dedup(dedup)
                .jobs(jobs)
                .budget(budget)
                .max_counterexamples(max_counterexamples);
            let next = AtomicU64::new(PROGRESS_EVERY);
            let progress = |done: u64, total: u64| {
                let mark = next.load(Ordering::Relaxed);
                if done >= mark
                    && next
                        .compare_exchange(
                            mark,
                            (done / PROGRESS_EVERY + 1) * PROGRESS_EVERY,
                            Ordering::Relaxed,
                            Ordering::Relaxed,
                        )
                        .is_ok()
                {
                    eprintln!("progress: {done} / {total}");
                }
            };
            let r = enumerate_and_verify(&config, Some(&progress))?;
            let out = if json {
                to_json(&report::VerifyJson::new(&r))
            } else {
                report::render_verification(&r)
            };
            emit(&out)?;
            Ok(if r.holds() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        Command::Search {
            space,
            budget,
            seed,
            json,
        } => {
            let variant = space.variant();
            let found = search_counterexample(space.states, space.letters, variant, budget, seed);
            let out = if json {
                to_json(&report::SearchJson::new(
                    space.states,
                    space.letters,
                    variant,
                    budget,
                    seed,
                    found.as_ref(),
                ))
            } else {
                report::render_search(variant, budget, found.as_ref())
            };
            emit(&out)?;
            Ok(if found.is_some() {
                EXIT_COUNTEREXAMPLE
            } else {
                EXIT_OK
            })
        }
        Command::ExportDot {
            file,
            graph,
            output,
        } => {
            let a = load(&file)?;
            let text = match graph {
                GraphKind::Letters => dot::letters_dot(&a),
                GraphKind::Rystsov => dot::rystsov_dot(&a)?,
                GraphKind::Pair => dot::pair_dot(&a),
            };
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| input_failure(format!("{}: {e}", path.display())))?,
                None => emit(&text)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
