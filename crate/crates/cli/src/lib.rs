//! Command-line front end. [`run`] does all the work and returns the exit
//! code and output, so it can be tested without spawning a process.
//!
//! Exit codes: 0 success, 1 property violated or counterexample found,
//! 2 usage or input error, 3 budget exceeded.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pebblefa::encoding::{encode_tape, format_tokens};
use pebblefa::simulation::{bounded_equiv_with_budget, RunEnd, DEFAULT_WORD_BUDGET};
use pebblefa::translations::{
    classical_to_pebble, complement_pebble_dfa, lift_complement, lift_determinization,
    pebble_to_classical, TranslationError, TranslationReport, TwoWayTransformer,
};
use pebblefa::witnesses::{
    pump_check_with_cap, unary_restriction, witness_pebble_dfa, PumpError, DEFAULT_PUMP_CAP,
};
use pebblefa::{
    is_deterministic, parse_automaton, parse_automaton_unchecked, serialize_automaton, trace,
    validate_automaton, Automaton, SimError, TapeSymbol, Trace, WordTransform,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "pebblefa",
    version,
    about = "Two-way automata with and without a pebble"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a machine on a word
    Simulate {
        file: PathBuf,
        /// Space-separated symbols; nothing means the empty word
        input: Vec<String>,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },
    /// Print the pebble-position encoding of a word
    Encode { input: Vec<String> },
    /// Apply a construction
    Translate {
        mode: Mode,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Plugin::Baseline)]
        plugin: Plugin,
        /// Write the construction report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit the witness machine for m primes
    Witness {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two machines on all words up to a length
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Feed the right machine the encoding of each word
        #[arg(long)]
        encode_right: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
    /// Check accepts(1^L) => accepts(1^(L+L!)) for a unary classical machine
    Pump {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        length: usize,
        /// Longest input to simulate, in cells
        #[arg(long, default_value_t = DEFAULT_PUMP_CAP)]
        cap: u64,
        /// First keep only plain-letter and endmarker transitions, then trim
        #[arg(long)]
        restrict: bool,
    },
    /// Size, kind, determinism and validation of a machine
    Stats { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    /// pebble machine to classical machine over the encoded alphabet
    P2c,
    /// classical machine over the encoded alphabet to pebble machine
    C2p,
    /// determinize a pebble machine through the classical detour
    DetLift,
    /// complement a pebble machine through the classical detour
    CompLift,
    /// complement a deterministic pebble machine, keeping it deterministic
    CompPdfa,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Plugin {
    Baseline,
}

struct Failure {
    code: i32,
    message: String,
}

type Outcome = Result<(i32, String), Failure>;

fn input_error(e: impl Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

impl From<TranslationError> for Failure {
    fn from(e: TranslationError) -> Self {
        let code = if matches!(e, TranslationError::BudgetExceeded { .. }) {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = if matches!(e, SimError::BudgetExceeded { .. }) {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<PumpError> for Failure {
    fn from(e: PumpError) -> Self {
        let code = match e {
            PumpError::BudgetExceeded { .. }
            | PumpError::Simulation(SimError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    exit_code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((exit_code, stdout)) => CommandResult {
            exit_code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => CommandResult {
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Simulate {
            file,
            input,
            trace,
            max_steps,
        } => simulate(&file, &input, trace, max_steps),
        Command::Encode { input } => {
            let word = parse_word(&input)?;
            let encoded = encode_tape(&word).map_err(input_error)?;
            Ok((EXIT_OK, format!("{}\n", format_tokens(encoded.tokens()))))
        }
        Command::Translate {
            mode,
            input,
            output,
            plugin: Plugin::Baseline,
            report,
        } => translate(mode, &input, &output, report.as_deref()),
        Command::Witness { m, output } => {
            if m == 0 {
                return Err(input_error("--m must be at least 1"));
            }
            let w = witness_pebble_dfa(m);
            let text = serialize_automaton(&w);
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((
                        EXIT_OK,
                        format!(
                            "wrote {}-state {} for m={m} to {}\n",
                            w.state_count(),
                            w.kind,
                            path.display()
                        ),
                    ))
                }
                None => Ok((EXIT_OK, text)),
            }
        }
        Command::Equiv {
            left,
            right,
            max_len,
            encode_right,
            budget,
        } => {
            let (l, r) = (load(&left)?, load(&right)?);
            let transform = if encode_right {
                WordTransform::Encode
            } else {
                WordTransform::Identity
            };
            match bounded_equiv_with_budget(&l, &r, max_len, transform, budget)? {
                None => Ok((
                    EXIT_OK,
                    format!("equivalent on all words up to length {max_len}\n"),
                )),
                Some(w) => Ok((
                    EXIT_VIOLATION,
                    format!("counterexample: {}\n", show_word(&w)),
                )),
            }
        }
        Command::Pump {
            automaton,
            length,
            cap,
            restrict,
        } => {
            let mut a = load(&automaton)?;
            if restrict {
                a = unary_restriction(&a)?;
            }
            if pump_check_with_cap(&a, length, cap)? {
                Ok((EXIT_OK, format!("pumping holds at L={length}\n")))
            } else {
                Ok((
                    EXIT_VIOLATION,
                    format!(
                        "pumping fails at L={length}: 1^{length} accepted, 1^(L+L!) rejected\n"
                    ),
                ))
            }
        }
        Command::Stats { file } => stats(&file),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    parse_automaton(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse_word(input: &[String]) -> Result<Vec<TapeSymbol>, Failure> {
    input
        .iter()
        .flat_map(|chunk| chunk.split_whitespace())
        .map(|t| TapeSymbol::from_token(t).map_err(input_error))
        .collect()
}

fn show_word(w: &[TapeSymbol]) -> String {
    if w.is_empty() {
        "(empty word)".into()
    } else {
        format_tokens(w)
    }
}

fn simulate(file: &Path, input: &[String], with_trace: bool, max_steps: usize) -> Outcome {
    let a = load(file)?;
    let word = parse_word(input)?;
    if !with_trace {
        let verdict = if pebblefa::accepts(&a, &word)? {
            "accept"
        } else {
            "reject"
        };
        return Ok((EXIT_OK, format!("{verdict}\n")));
    }
    let mut out = String::new();
    let t = trace(&a, &word, max_steps)?;
    match &t {
        Trace::Run {
            configurations,
            end,
            ..
        } => {
            for (i, c) in configurations.iter().enumerate() {
                out.push_str(&format!("{i}: {c}\n"));
            }
            let end = match end {
                RunEnd::Halted => "halted".to_string(),
                RunEnd::Loop { repeats } => format!("loop back to step {repeats}"),
                RunEnd::StepLimit => format!("stopped after {max_steps} steps"),
            };
            out.push_str(&format!("{end}\n"));
        }
        Trace::Layers { layers, .. } => {
            for (i, layer) in layers.iter().enumerate() {
                let items: Vec<String> = layer.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("{i}: {}\n", items.join(" ")));
            }
        }
    }
    out.push_str(if t.accepted() { "accept\n" } else { "reject\n" });
    Ok((EXIT_OK, out))
}

fn translate(mode: Mode, input: &Path, output: &Path, report_path: Option<&Path>) -> Outcome {
    let a = load(input)?;
    let (result, report): (Automaton, TranslationReport) = match mode {
        Mode::P2c => pebble_to_classical(&a)?,
        Mode::C2p => classical_to_pebble(&a)?,
        Mode::DetLift => lift_determinization(&a, &TwoWayTransformer::baseline_determinizer())?,
        Mode::CompLift => lift_complement(&a, &TwoWayTransformer::baseline_complementer())?,
        Mode::CompPdfa => {
            complement_pebble_dfa(&a, &TwoWayTransformer::baseline_dfa_complementer())?
        }
    };
    write(output, &serialize_automaton(&result))?;
    if let Some(path) = report_path {
        write(path, &report.to_json())?;
    }
    let bound = if report.bound == u64::MAX {
        "saturated".to_string()
    } else {
        report.bound.to_string()
    };
    let status = match (report.bound_satisfied, report.bound_guaranteed) {
        (true, _) => "within bound",
        (false, false) => "over target bound (not guaranteed for this transformer)",
        (false, true) => "over bound",
    };
    Ok((
        EXIT_OK,
        format!(
            "{}: {} -> {} states, bound {bound}, {status}; wrote {}\n",
            serde_json::to_value(report.construction)
                .map(|v| v.as_str().unwrap_or_default().to_string())
                .unwrap_or_default(),
            report.input_states,
            report.output_states,
            output.display()
        ),
    ))
}

fn stats(file: &Path) -> Outcome {
    let a = parse_automaton_unchecked(&read(file)?)
        .map_err(|e| input_error(format!("{}: {e}", file.display())))?;
    let violations = validate_automaton(&a);
    let mut out = format!(
        "kind: {}\nstates: {}\ntransitions: {}\nalphabet: {}\ndeterministic: {}\n",
        a.kind,
        a.state_count(),
        a.transition_count(),
        a.alphabet
            .word_symbols()
            .iter()
            .map(TapeSymbol::token)
            .collect::<Vec<_>>()
            .join(" "),
        is_deterministic(&a)
    );
    if violations.is_empty() {
        out.push_str("validation: ok\n");
        Ok((EXIT_OK, out))
    } else {
        out.push_str(&format!("validation: {} violations\n", violations.len()));
        for v in &violations {
            out.push_str(&format!("  {v}\n"));
        }
        Ok((EXIT_VIOLATION, out))
    }
}
