use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qautomata::alphabet::Alphabet;
use qautomata::harness::{
    build, check_wf_sweep, compile_bca, parse_params, run_report, sweep, sweep_csv, verify_file,
    CounterChoice, Machine, MachineDoc, SweepOptions, BUILDERS,
};
use qautomata::numerics::EPS_NUM;
use qautomata::qruntime::SINK;
use qautomata::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qautomata",
    version,
    about = "Build, run, sweep and verify automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Counters {
    RequireZero,
    Ignore,
    Both,
}

impl From<Counters> for CounterChoice {
    fn from(c: Counters) -> Self {
        match c {
            Counters::RequireZero => CounterChoice::RequireZero,
            Counters::Ignore => CounterChoice::Ignore,
            Counters::Both => CounterChoice::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a named machine and write its machine file.
    Build {
        /// Builder name; omit with --list.
        name: Option<String>,
        /// Parameters as key=value, e.g. N=3 t=2.
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// List the available builders.
        #[arg(long)]
        list: bool,
    },
    /// Run a machine on one input.
    Run {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, value_enum, default_value = "require-zero")]
        counter_acceptance: Counters,
        #[arg(long)]
        step_cap: Option<usize>,
    },
    /// Run a machine on every input up to a length and write CSV.
    Sweep {
        #[arg(long)]
        machine: PathBuf,
        /// Symbols to enumerate: characters, or a comma-separated list.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Language id for the member column; defaults to the file's language.
        #[arg(long)]
        language: Option<String>,
        #[arg(long, value_enum, default_value = "require-zero")]
        counter_acceptance: Counters,
        #[arg(long)]
        step_cap: Option<usize>,
        /// Allow lengths above the default limit.
        #[arg(long)]
        force: bool,
    },
    /// Verify claim files; exits 1 if any claim fails.
    Verify {
        #[arg(required = true)]
        claims: Vec<PathBuf>,
    },
    /// Check well-formedness of a quantum machine on all inputs up to a length.
    CheckWf {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = EPS_NUM)]
        tol: f64,
    },
    /// Compile a deterministic BCA into its complement-witness GFA.
    CompileBca {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_alphabet(text: &str) -> Result<Alphabet> {
    if text.contains(',') {
        Alphabet::new(text.split(',').map(str::trim))
    } else {
        Alphabet::from_chars(text)
    }
}

/// Writes `text` to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn summary(doc: &MachineDoc) -> String {
    let m = &doc.machine;
    let plural = |n: usize, noun: &str| format!("{n} {noun}{}", if n == 1 { "" } else { "s" });
    let mut line = format!(
        "{}: {}, {}",
        m.kind(),
        plural(m.state_count(), "state"),
        plural(m.transition_count(), "transition")
    );
    if let Machine::Quantum(q) = m {
        if q.states().iter().any(|s| s.name == SINK) {
            line.push_str(&format!(
                " ({} declared states plus the completion sink)",
                m.state_count() - 1
            ));
        }
    }
    if let Some(l) = doc.language {
        line.push_str(&format!("; language {l}"));
    }
    line
}

/// Returns whether the command passed.
fn execute(command: Command) -> Result<bool> {
    match command {
        Command::Build { list: true, .. } => {
            for (name, params, about) in BUILDERS {
                let params = params
                    .iter()
                    .map(|p| format!(" {p}=.."))
                    .collect::<String>();
                println!("{name}{params}\t{about}");
            }
            Ok(true)
        }
        Command::Build {
            name,
            params,
            out,
            list: false,
        } => {
            let name = name.ok_or_else(|| Error::Usage("a builder name is required".into()))?;
            let doc = build(&name, &parse_params(&params)?)?;
            emit(out.as_deref(), &doc.to_json()?)?;
            if out.is_some() {
                println!("{}", summary(&doc));
            } else {
                eprintln!("{}", summary(&doc));
            }
            Ok(true)
        }
        Command::Run {
            machine,
            input,
            counter_acceptance,
            step_cap,
        } => {
            let doc = MachineDoc::load(&machine)?;
            print!(
                "{}",
                run_report(&doc.machine, &input, counter_acceptance.into(), step_cap)?
            );
            Ok(true)
        }
        Command::Sweep {
            machine,
            alphabet,
            max_len,
            out,
            language,
            counter_acceptance,
            step_cap,
            force,
        } => {
            let doc = MachineDoc::load(&machine)?;
            let conventions = CounterChoice::from(counter_acceptance).conventions();
            let [counters] = conventions[..] else {
                return Err(Error::Usage(
                    "sweep takes a single counter-acceptance convention".into(),
                ));
            };
            let opts = SweepOptions {
                alphabet: alphabet.as_deref().map(parse_alphabet).transpose()?,
                max_len,
                language: match language {
                    Some(l) => Some(l.parse()?),
                    None => doc.language,
                },
                counters,
                step_cap,
                force,
            };
            emit(out.as_deref(), &sweep_csv(&sweep(&doc.machine, &opts)?))?;
            Ok(true)
        }
        Command::Verify { claims } => {
            let mut all = true;
            for path in claims {
                let report = verify_file(&path)?;
                println!("{report}");
                all &= report.passed();
            }
            Ok(all)
        }
        Command::CheckWf {
            machine,
            max_len,
            tol,
        } => {
            let doc = MachineDoc::load(&machine)?;
            let Machine::Quantum(spec) = &doc.machine else {
                return Err(Error::Usage(format!(
                    "check-wf needs a quantum machine, got {}",
                    doc.machine.kind()
                )));
            };
            let report = check_wf_sweep(spec, max_len, tol);
            println!("{report}");
            Ok(report.passed())
        }
        Command::CompileBca { machine, out } => {
            let doc = MachineDoc::load(&machine)?;
            let (gfa, primes) = compile_bca(&doc)?;
            emit(out.as_deref(), &gfa.to_json()?)?;
            let assignment: Vec<String> = primes
                .iter()
                .enumerate()
                .map(|(i, p)| format!("counter {} -> {p}", i + 1))
                .collect();
            let report = format!("primes: {}\n{}", assignment.join(", "), summary(&gfa));
            if out.is_some() {
                println!("{report}");
            } else {
                eprintln!("{report}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
