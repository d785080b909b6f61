//! Command-line front end. [`dispatch`] parses `argv`, runs one subcommand and
//! returns the process exit code: 0 when a result or verdict was printed, 1 for
//! usage errors, 2 for runtime errors such as exhausted budgets or malformed
//! input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::Nat;
use crate::kleene::{self, SearchMode};
use crate::np::{self, BoolExpr, Digraph};
use crate::prf::{self, Classification, DefEnv};
use crate::tau::{self, Initial};
use crate::tm::{self, Configuration, TmSpec};

type Failure = Box<dyn std::error::Error>;

#[derive(Parser, Debug)]
#[command(name = "primrec", version, about = "Turing machines, primitive recursive terms and their arithmetization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, check and evaluate recursive-function terms.
    #[command(subcommand)]
    Prf(PrfCmd),
    /// Run, trace, number and build Turing machines.
    #[command(subcommand)]
    Tm(TmCmd),
    /// The normal-form pipeline `U(μy. T(t, x̄, y))`.
    #[command(subcommand)]
    Kleene(KleeneCmd),
    /// Step counts and their bounds.
    #[command(subcommand)]
    Tau(TauCmd),
    /// Satisfiability of Boolean expressions and their Gödel numbers.
    #[command(subcommand)]
    Sat(SatCmd),
    /// Hamiltonian paths in directed graphs.
    #[command(subcommand)]
    Hampath(HampathCmd),
}

#[derive(Args, Debug)]
struct DefArgs {
    /// Definitions file loaded after the standard library, or `stdlib`.
    #[arg(long = "def", value_name = "PATH|stdlib")]
    defs: Vec<String>,
}

#[derive(Args, Debug)]
struct TermArgs {
    /// Term text, e.g. `C[add; P[2,1], P[2,2]]`.
    #[arg(long)]
    term: String,
    #[command(flatten)]
    defs: DefArgs,
}

#[derive(Subcommand, Debug)]
enum PrfCmd {
    /// Evaluate a term on arguments.
    Eval {
        #[command(flatten)]
        term: TermArgs,
        #[arg(long, num_args = 0.., value_parser = parse_nat)]
        args: Vec<Nat>,
        /// Evaluate by the literal recursion equations within this many steps.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check arities and references; prints the arity.
    Check {
        #[command(flatten)]
        term: TermArgs,
    },
    /// Print `primitive-recursive` or `mu-recursive`.
    Classify {
        #[command(flatten)]
        term: TermArgs,
    },
}

#[derive(Args, Debug)]
struct MachineArg {
    /// Machine file.
    #[arg(long)]
    machine: PathBuf,
}

#[derive(Subcommand, Debug)]
enum TmCmd {
    /// Run a machine on unary arguments.
    Run {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Vec<u64>,
        /// Step cap.
        #[arg(long, default_value_t = kleene::DEFAULT_MAX_STEPS)]
        budget: u64,
        /// Also print every configuration.
        #[arg(long)]
        trace: bool,
    },
    /// Print every configuration of a run.
    Trace {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Print the machine number, or with `--args` the number of a configuration.
    Encode {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Option<Vec<u64>>,
        /// Step whose configuration is numbered.
        #[arg(long, default_value_t = 0)]
        step: u64,
    },
    /// Decode a machine number, or a configuration number with `--config`.
    Decode {
        #[arg(long, value_parser = parse_nat)]
        gn: Nat,
        #[arg(long)]
        config: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write one of the built-in machines in the machine file format.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Arity of a projection.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Selected argument of a projection.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Number of words a copy machine copies.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Zero,
    Succ,
    Proj,
    Copy,
}

#[derive(Subcommand, Debug)]
enum KleeneCmd {
    /// Compare the pipeline `U(μy. T(t, x̄, y))` with direct simulation.
    Verify {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find the least `y` with `T(t, x̄, y)`.
    Witness {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = kleene::MIN_SAMPLES)]
        samples: usize,
        /// Search `y = 0, 1, …` literally, up to this many candidates.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compile a machine and a step bound into a primitive recursive term.
    Compile {
        #[command(flatten)]
        machine: MachineArg,
        /// Step bound, a primitive recursive term over the standard library.
        #[arg(long)]
        term: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print the symbolic bound on the least witness.
    Bound {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long)]
        term: String,
    },
}

#[derive(Subcommand, Debug)]
enum TauCmd {
    /// Count the steps of a run.
    Measure {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, num_args = 0..)]
        args: Vec<u64>,
    },
    /// Fit a linear step bound to a built-in initial machine.
    Fit {
        #[arg(long, value_enum)]
        kind: InitialKind,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Largest argument in the sweep.
        #[arg(long, default_value_t = 30)]
        sweep: u64,
    },
    /// Compare measured steps with a bound term.
    Check {
        #[command(flatten)]
        machine: MachineArg,
        #[command(flatten)]
        term: TermArgs,
        /// Largest argument; all tuples up to it are checked.
        #[arg(long, default_value_t = 10)]
        sweep: u64,
        /// Check this many random tuples instead of the full sweep.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InitialKind {
    Zero,
    Succ,
    Proj,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ExprSource {
    /// Expression text, e.g. `(e1&!e2)`.
    #[arg(long)]
    expr: Option<String>,
    /// Gödel number of an expression.
    #[arg(long, value_parser = parse_nat)]
    gn: Option<Nat>,
    /// File with one expression per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SatCmd {
    /// Print 1 and a satisfying assignment, or 0.
    Decide {
        #[command(flatten)]
        source: ExprSource,
    },
    /// Print the Gödel number of an expression.
    Encode {
        #[arg(long)]
        expr: String,
    },
    /// Print the expression with the given Gödel number.
    Decode {
        #[arg(long, value_parser = parse_nat)]
        gn: Nat,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Graph number.
    #[arg(long, value_parser = parse_nat)]
    gn: Option<Nat>,
    /// Random graph with this many nodes, drawn with `--seed`.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum HampathCmd {
    /// Print 1 and a Hamiltonian path from s to t, or 0.
    Decide {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the number of a graph.
    Encode {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse::<Nat>().map_err(|_| format!("`{s}` is not a natural number"))
}

/// Runs the command line `argv` (program name first).
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Prf(c) => prf_cmd(c, out),
        Command::Tm(c) => tm_cmd(c, out),
        Command::Kleene(c) => kleene_cmd(c, out),
        Command::Tau(c) => tau_cmd(c, out),
        Command::Sat(c) => sat_cmd(c, out),
        Command::Hampath(c) => hampath_cmd(c, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn emit_or_print(text: &str, emit: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match emit {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(())
}

fn load_env(defs: &DefArgs) -> Result<DefEnv, Failure> {
    let mut env = prf::stdlib();
    for d in &defs.defs {
        if d != "stdlib" {
            env.load(&read(Path::new(d))?)?;
        }
    }
    Ok(env)
}

fn load_machine(m: &MachineArg) -> Result<TmSpec, Failure> {
    Ok(tm::parse_machine(&read(&m.machine)?)?)
}

fn class_name(c: Classification) -> &'static str {
    match c {
        Classification::PrimitiveRecursive => "primitive-recursive",
        Classification::MuRecursive => "mu-recursive",
    }
}

fn prf_cmd(cmd: PrfCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        PrfCmd::Eval { term, args, budget } => {
            let env = load_env(&term.defs)?;
            let t = prf::parse_term(&term.term)?;
            let v = match budget {
                Some(b) => prf::eval_honest(&t, &args, &env, b)?,
                None => prf::eval_fast(&t, &args, &env)?,
            };
            writeln!(out, "{v}")?;
        }
        PrfCmd::Check { term } => {
            let env = load_env(&term.defs)?;
            let t = prf::parse_term(&term.term)?;
            writeln!(out, "arity {}", prf::arity_check(&t, &env)?)?;
        }
        PrfCmd::Classify { term } => {
            let env = load_env(&term.defs)?;
            let t = prf::parse_term(&term.term)?;
            prf::arity_check(&t, &env)?;
            writeln!(out, "{}", class_name(prf::classify(&t, &env)))?;
        }
    }
    Ok(())
}

/// One line per configuration: state, head offset and the tape with the
/// scanned cell in brackets.
fn show_config(cfg: &Configuration) -> String {
    let head = tm::offset_of(cfg.head);
    let offsets: Vec<i64> = cfg.tape.keys().map(|&k| tm::offset_of(k)).collect();
    let lo = offsets.iter().copied().chain([head]).min().unwrap_or(0);
    let hi = offsets.iter().copied().chain([head]).max().unwrap_or(0);
    let mut tape = String::new();
    for off in lo..=hi {
        let sym = match cfg.symbol_at(tm::cell_index(off)) {
            tm::BLANK => "_".to_string(),
            s => s.to_string(),
        };
        if off == head {
            tape.push_str(&format!("[{sym}]"));
        } else {
            tape.push_str(&sym);
        }
    }
    format!("state {}  head {}  tape {} @ {}", cfg.state, head, tape, lo)
}

fn tm_cmd(cmd: TmCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        TmCmd::Run {
            machine,
            args,
            budget,
            trace,
        } => {
            let spec = load_machine(&machine)?;
            let r = tm::run_traced(&spec, &args, budget, trace)?;
            for (z, cfg) in r.trace.iter().flatten().enumerate() {
                writeln!(out, "{z}  {}", show_config(cfg))?;
            }
            writeln!(out, "value {}", r.value)?;
            writeln!(out, "steps {}", r.steps)?;
        }
        TmCmd::Trace { machine, args, budget } => {
            let spec = load_machine(&machine)?;
            let start = tm::encode_args(&args)?;
            let (_, steps, trace) = tm::run_from(&spec, start, budget, true)?;
            for (z, cfg) in trace.iter().flatten().enumerate() {
                writeln!(out, "{z}  {}", show_config(cfg))?;
            }
            writeln!(out, "steps {steps}")?;
        }
        TmCmd::Encode { machine, args, step } => {
            let spec = load_machine(&machine)?;
            match args {
                None => writeln!(out, "{}", tm::godel_number(&spec))?,
                Some(xs) => {
                    let cfg = tm::configuration_at(&spec, &xs, step)?;
                    writeln!(out, "{}", tm::encode_config(&cfg))?;
                }
            }
        }
        TmCmd::Decode { gn, config, emit } => {
            if config {
                let cfg = tm::decode_config_raw(&gn)?;
                emit_or_print(&format!("{}\n", show_config(&cfg)), emit.as_deref(), out)?;
            } else {
                let spec = tm::decode_machine(&gn)?;
                emit_or_print(&tm::render_machine(&spec), emit.as_deref(), out)?;
            }
        }
        TmCmd::Build { kind, n, i, k, emit } => {
            let spec = match kind {
                Kind::Zero => tm::zero_machine(),
                Kind::Succ => tm::successor_machine(),
                Kind::Proj => {
                    if i == 0 || i > n {
                        return Err(format!("projection needs 1 ≤ i ≤ n, got n = {n}, i = {i}").into());
                    }
                    tm::projection_machine(n, i)
                }
                Kind::Copy => {
                    if k == 0 {
                        return Err("copy needs k ≥ 1".into());
                    }
                    tm::copy_machine_n(k)
                }
            };
            emit_or_print(&tm::render_machine(&spec), emit.as_deref(), out)?;
        }
    }
    Ok(())
}

fn kleene_cmd(cmd: KleeneCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        KleeneCmd::Verify { machine, args, seed } => {
            let spec = load_machine(&machine)?;
            let t = tm::godel_number(&spec);
            let direct = tm::run(&spec, &args, kleene::DEFAULT_MAX_STEPS)?;
            let mode = SearchMode::WitnessChecked {
                seed,
                samples: kleene::MIN_SAMPLES,
            };
            let w = kleene::mu_search(&t, &args, mode)?;
            let via = kleene::u_extract(&w.y)?;
            writeln!(out, "simulator {}", direct.value)?;
            writeln!(out, "pipeline {via}")?;
            writeln!(out, "agree {}", if via == direct.value { 1 } else { 0 })?;
        }
        KleeneCmd::Witness {
            machine,
            args,
            seed,
            samples,
            budget,
        } => {
            let spec = load_machine(&machine)?;
            let t = tm::godel_number(&spec);
            let mode = match budget {
                Some(budget) => SearchMode::Linear { budget },
                None => SearchMode::WitnessChecked { seed, samples },
            };
            let w = kleene::mu_search(&t, &args, mode)?;
            writeln!(out, "r {}", w.r)?;
            writeln!(out, "s {}", w.s)?;
            writeln!(out, "y {}", w.y)?;
            writeln!(out, "U {}", kleene::u_extract(&w.y)?)?;
        }
        KleeneCmd::Compile { machine, term, emit } => {
            let spec = load_machine(&machine)?;
            let bound = prf::parse_term(&term)?;
            let c = kleene::theorem1_compile(&spec, &bound)?;
            emit_or_print(&c.render(), emit.as_deref(), out)?;
            writeln!(out, "arity {}", c.arity)?;
            writeln!(out, "class {}", class_name(prf::classify(&c.term, &c.env)))?;
        }
        KleeneCmd::Bound { machine, term } => {
            let spec = load_machine(&machine)?;
            let bound = prf::parse_term(&term)?;
            let env = kleene::kleene_env(prf::arity_check(&bound, &prf::stdlib())?)?;
            let y = kleene::step_bound_to_y_bound(&bound, &spec, &env)?;
            writeln!(out, "J {}", y.j)?;
            writeln!(out, "a_bound {}", y.a_bound)?;
            writeln!(out, "b_bound {}", y.b_bound)?;
            writeln!(out, "s_bound {}", y.s_bound)?;
            writeln!(out, "Y {}", y.y)?;
        }
    }
    Ok(())
}

fn random_tuples(arity: usize, max: u64, count: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..arity).map(|_| rng.gen_range(0..=max)).collect())
        .collect()
}

fn tau_cmd(cmd: TauCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        TauCmd::Measure { machine, args } => {
            let spec = load_machine(&machine)?;
            writeln!(out, "steps {}", tau::measure_steps(&spec, &args)?)?;
        }
        TauCmd::Fit { kind, n, i, sweep } => {
            let which = match kind {
                InitialKind::Zero => Initial::Zero,
                InitialKind::Succ => Initial::Succ,
                InitialKind::Proj => {
                    if i == 0 || i > n {
                        return Err(format!("projection needs 1 ≤ i ≤ n, got n = {n}, i = {i}").into());
                    }
                    Initial::Proj { n, i }
                }
            };
            let b = tau::tau_initial(which, sweep)?;
            if let Some(f) = b.fit {
                writeln!(out, "c1 {}", f.c1)?;
                writeln!(out, "c0 {}", f.c0)?;
            }
            writeln!(out, "provenance {}", b.provenance)?;
            writeln!(out, "term {}", b.term)?;
        }
        TauCmd::Check {
            machine,
            term,
            sweep,
            samples,
            seed,
            jobs,
        } => {
            let spec = load_machine(&machine)?;
            let env = load_env(&term.defs)?;
            let bound = prf::parse_term(&term.term)?;
            let arity = prf::arity_check(&bound, &env)?;
            let tuples = match samples {
                Some(count) => random_tuples(arity, sweep, count, seed),
                None => sweep_tuples(arity, sweep),
            };
            let report = tau::check_bound_jobs(&spec, &bound, &tuples, &env, jobs)?;
            writeln!(out, "{report}")?;
        }
    }
    Ok(())
}

fn sweep_tuples(arity: usize, max: u64) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    for _ in 0..arity {
        all = all
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    all
}

fn print_sat(e: Option<&BoolExpr>, out: &mut dyn Write) -> Result<(), Failure> {
    let Some(e) = e else {
        writeln!(out, "0")?;
        return Ok(());
    };
    let (sat, witness) = np::truth_table_sat(e)?;
    writeln!(out, "{}", sat as u8)?;
    if let Some(w) = witness {
        let parts: Vec<String> = w.iter().map(|(i, b)| format!("e{i}={}", *b as u8)).collect();
        writeln!(out, "assignment {}", parts.join(" "))?;
    }
    Ok(())
}

fn sat_cmd(cmd: SatCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        SatCmd::Decide { source } => {
            if let Some(text) = source.expr {
                print_sat(Some(&np::parse_bool(&text)?), out)?;
            } else if let Some(x) = source.gn {
                let e = np::decode_gn(&x).ok();
                print_sat(e.as_ref(), out)?;
            } else if let Some(path) = source.file {
                for e in np::parse_expr_file(&read(&path)?)? {
                    let (sat, _) = np::truth_table_sat(&e)?;
                    writeln!(out, "{}  {e}", sat as u8)?;
                }
            }
        }
        SatCmd::Encode { expr } => {
            writeln!(out, "{}", np::gn(&np::parse_bool(&expr)?))?;
        }
        SatCmd::Decode { gn } => {
            writeln!(out, "{}", np::decode_gn(&gn)?)?;
        }
    }
    Ok(())
}

fn random_graph(v: usize, seed: u64) -> Result<Digraph, Failure> {
    if v == 0 {
        return Err("a graph needs at least one node".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=v {
        for w in 1..=v {
            if rng.gen_bool(0.5) {
                edges.push((u, w));
            }
        }
    }
    let (s, t) = (rng.gen_range(1..=v), rng.gen_range(1..=v));
    Ok(Digraph::new(v, edges, s, t)?)
}

fn load_graph(source: &GraphSource, seed: u64) -> Result<Option<Digraph>, Failure> {
    if let Some(path) = &source.graph {
        Ok(Some(np::parse_graph(&read(path)?)?))
    } else if let Some(x) = &source.gn {
        Ok(np::decode_graph(x).ok())
    } else {
        Ok(Some(random_graph(source.random.unwrap_or(1), seed)?))
    }
}

fn hampath_cmd(cmd: HampathCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        HampathCmd::Decide { source, seed } => {
            let Some(g) = load_graph(&source, seed)? else {
                writeln!(out, "0")?;
                return Ok(());
            };
            if source.random.is_some() {
                write!(out, "{}", np::render_graph(&g))?;
            }
            let (found, path) = np::hampath_brute(&g)?;
            writeln!(out, "{}", found as u8)?;
            if let Some(p) = path {
                let p: Vec<String> = p.iter().map(usize::to_string).collect();
                writeln!(out, "path {}", p.join(" "))?;
            }
        }
        HampathCmd::Encode { source, seed } => {
            let g = load_graph(&source, seed)?.ok_or("not a graph number")?;
            writeln!(out, "{}", np::encode_graph(&g))?;
        }
    }
    Ok(())
}
