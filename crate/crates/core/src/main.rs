use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use subinterval::checker::check;
use subinterval::formula::{parse_formula, print_formula, VarName};
use subinterval::lang::{build_nfa, check_geometry, in_la_direct, parse_word, print_word, Geometry};
use subinterval::minsky::{parse_machine, MinskyMachine, Outcome};
use subinterval::model::{parse_model, print_model, Interval};
use subinterval::reduction::{compile, Mode};
use subinterval::sat::{encode, export_dimacs, sat_search, Pinning};
use subinterval::witness::{probe, witness_for};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "subinterval", version, about = "Sub-interval logic: checking, bounded satisfiability, machine reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a model (default: at the full interval).
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        at: Option<Vec<usize>>,
    },
    /// Search for a model with N points (up to --max-points).
    Solve {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        pin: Option<PathBuf>,
        /// Write the CNF for --points to this file.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Emit the reduction formula of a machine and its vocabulary manifest.
    Compile {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value = "repaired")]
        variant: Mode,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a machine from empty counters.
    Simulate {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Build the model witnessing a halting run.
    Witness {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every conjunct of the reduction formula on the witness model.
    Probe {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value = "repaired")]
        variant: Mode,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Membership of a word in the machine's language, and its geometry.
    LangCheck {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn machine(path: &Path) -> Result<MinskyMachine> {
    Ok(parse_machine(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn verdict(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { model, formula, at } => {
            let m = parse_model(&read(&model)?)?;
            let f = parse_formula(&read(&formula)?)?;
            let i = match at {
                Some(ab) => Interval::new(ab[0], ab[1])?,
                None => m.full(),
            };
            let value = check(&m, i, &f)?;
            println!("{value}");
            Ok(verdict(value))
        }
        Command::Solve {
            formula,
            points,
            max_points,
            pin,
            dimacs,
        } => {
            let f = parse_formula(&read(&formula)?)?;
            let pins = match pin {
                Some(p) => Pinning::parse(&read(&p)?)?,
                None => Pinning::new(),
            };
            let mut vocabulary: BTreeSet<VarName> = f.variables().into_iter().collect();
            vocabulary.extend(pins.iter().map(|(_, v, _)| v.clone()));
            let vocabulary: Vec<VarName> = vocabulary.into_iter().collect();
            if let Some(out) = dimacs {
                fs::write(&out, export_dimacs(&encode(&f, points, &pins, &vocabulary)?))?;
            }
            match sat_search(&f, points, max_points.unwrap_or(points), &pins, &vocabulary)? {
                Some((_, model)) => {
                    print!("{}", print_model(&model));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("UNSAT");
                    Ok(verdict(false))
                }
            }
        }
        Command::Compile {
            machine: path,
            variant,
            output,
        } => {
            let compiled = compile(&machine(&path)?, variant);
            fs::write(&output, print_formula(&compiled.formula) + "\n")?;
            let mut manifest = output.clone().into_os_string();
            manifest.push(".manifest");
            fs::write(&manifest, compiled.vocabulary.manifest())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { machine: path, max_steps } => {
            let run = machine(&path)?.run(max_steps);
            for c in &run.configs {
                println!("{c}");
            }
            let outcome = match run.outcome {
                Outcome::Halted => "HALTED",
                Outcome::Stuck => "STUCK",
                Outcome::Timeout => "TIMEOUT",
            };
            println!("{outcome} max-counter {}", run.max_counter());
            Ok(verdict(run.is_halted()))
        }
        Command::Witness {
            machine: path,
            n,
            max_steps,
            output,
        } => {
            let (_, w) = witness_for(&machine(&path)?, max_steps, n)?;
            fs::write(&output, print_model(&w.model))?;
            let mut word = output.clone().into_os_string();
            word.push(".word");
            fs::write(&word, print_word(&w.word))?;
            println!("n {} points {}", w.n, w.model.points());
            Ok(ExitCode::SUCCESS)
        }
        Command::Probe {
            machine: path,
            variant,
            max_steps,
            output,
        } => {
            let report = probe(&machine(&path)?, variant, max_steps)?;
            match output {
                Some(out) => fs::write(out, report.to_string())?,
                None => print!("{report}"),
            }
            Ok(verdict(report.all_pass()))
        }
        Command::LangCheck { machine: path, word, n } => {
            let m = machine(&path)?;
            let w = parse_word(&read(&word)?, &m)?;
            let direct = in_la_direct(&w, &m);
            let automaton = build_nfa(&m).accepts(&w);
            match &direct {
                Ok(()) => println!("member: yes"),
                Err(v) => println!("member: no ({v})"),
            }
            println!("automaton: {}", if automaton { "accepts" } else { "rejects" });
            let mut ok = direct.is_ok() && automaton;
            if let (Some(n), true) = (n, direct.is_ok()) {
                let geometry = check_geometry(&w, &m, Geometry::new(n))?;
                println!("geometry n={n}: {}", if geometry { "yes" } else { "no" });
                ok &= geometry;
            }
            Ok(verdict(ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
