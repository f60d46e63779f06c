//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error, 3 resource error (caps, overflow).

use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gadget;
use crate::instance::MirkinInstance;
use crate::reduction::{reduce_3sat_to_nae, reduce_nae_to_mirkin, CnfFormula, NaeFormula};
use crate::report::PropertyReport;
use crate::solver::{self, Backend, SolveOptions, Solution};
use crate::verifier;
use crate::Cost;

#[derive(Debug, Parser)]
#[command(name = "mirkin", version, about = "Exact Mirkin distance minimization and hardness reductions")]
pub struct Cli {
    /// Worker threads for the solvers.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Largest string length accepted by the brute-force backend.
    #[arg(long, global = true, default_value_t = solver::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Largest number of column types accepted by the types and ILP backends.
    #[arg(long, global = true, default_value_t = solver::DEFAULT_MAX_TYPES)]
    pub max_types: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Brute,
    Types,
    Ilp,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Brute => Backend::Brute,
            BackendArg::Types => Backend::Types,
            BackendArg::Ilp => Backend::Ilp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gadget,
    Claims,
    Backends,
    Reductions,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a .mirk instance exactly.
    Solve {
        #[arg(long, value_enum)]
        backend: BackendArg,
        #[arg(long)]
        input: String,
        /// Decision budget, overriding any 'k' line in the input.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Print the balanced pair gadget of size 2^ell.
    Gadget {
        #[arg(long)]
        ell: u32,
    },
    /// Run a reduction.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exponent for the claims suite (n' = 2^ell + 1).
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest gadget exponent for the gadget suite.
        #[arg(long, default_value_t = 6)]
        max_ell: u32,
        /// Random instances for the backends suite.
        #[arg(long, default_value_t = 500)]
        instances: usize,
    },
    /// Time a backend on random instances of growing length.
    Bench {
        #[arg(long, value_enum)]
        backend: BackendArg,
        /// Inclusive range 'A..B'.
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        /// Strings per instance.
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the linearized program in LP format.
    ExportLp {
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: String,
        #[arg(long)]
        k: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceKind {
    /// 3-CNF (p cnf) to NAE-3SAT (p nae).
    Sat2nae {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: String,
    },
    /// NAE-3SAT (p nae) to a weighted .mirk instance with budget.
    Nae2mirkin {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: String,
        /// Sidecar certificate path.
        #[arg(long)]
        cert: Option<String>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad start {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad end {b:?}"))?;
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {s}"));
    }
    Ok(a..=b)
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn write_output(path: &str, text: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    if path == "-" {
        stdout.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let _ = writeln!(stderr, "c config {cli:?}");
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let (kind, code) = match e.downcast_ref::<Error>() {
                Some(err) if err.is_resource() => (err.kind(), 3),
                Some(err) => (err.kind(), 2),
                None => ("io", 2),
            };
            let msg = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(stderr, "error {kind}: {msg}");
            code
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    let opts = SolveOptions {
        max_n: cli.max_n,
        max_types: cli.max_types,
        threads: cli.threads,
    };
    match &cli.command {
        Command::Solve { backend, input, k } => {
            let mut inst = MirkinInstance::parse(&read_input(input)?)?;
            if k.is_some() {
                inst = inst.with_budget(*k);
            }
            let text = match solver::solve::<Cost>((*backend).into(), &inst, &opts) {
                Ok(sol) => sol.render(),
                Err(Error::InfeasibleBudget { optimum, argmin, .. }) => {
                    format!("OPT {optimum}\nARG {argmin}\nDECISION NO\n")
                }
                Err(e) => return Err(e.into()),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Gadget { ell } => {
            let fam = gadget::build(*ell)?;
            for s in fam.strings() {
                writeln!(stdout, "{s}")?;
            }
            Ok(0)
        }
        Command::Reduce { kind } => match kind {
            ReduceKind::Sat2nae { input, out } => {
                let phi = CnfFormula::parse_dimacs(&read_input(input)?)?;
                let psi = reduce_3sat_to_nae(&phi)?;
                write_output(out, &psi.to_dimacs(), stdout)?;
                Ok(0)
            }
            ReduceKind::Nae2mirkin { input, out, cert } => {
                let psi = NaeFormula::parse_dimacs(&read_input(input)?)?;
                let (inst, certificate) = reduce_nae_to_mirkin(&psi)?;
                write_output(out, &inst.to_text(), stdout)?;
                if let Some(path) = cert {
                    write_output(path, &certificate.to_text(), stdout)?;
                }
                Ok(0)
            }
        },
        Command::Verify {
            suite,
            seed,
            ell,
            trials,
            max_ell,
            instances,
        } => {
            let mut reports: Vec<PropertyReport> = Vec::new();
            let all = *suite == Suite::All;
            if all || *suite == Suite::Gadget {
                reports.push(verifier::verify_gadget(*max_ell));
            }
            if all || *suite == Suite::Claims {
                reports.push(verifier::verify_claims(*ell, *trials, *seed)?);
            }
            if all || *suite == Suite::Backends {
                reports.push(verifier::verify_backends(*instances, 14, 6, *seed)?);
            }
            if all || *suite == Suite::Reductions {
                reports.push(verifier::verify_reductions(*seed)?);
            }
            let mut passed = true;
            for r in &reports {
                write!(stdout, "{r}")?;
                passed &= r.passed();
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Bench {
            backend,
            n_range,
            m,
            seed,
        } => {
            if *m == 0 {
                return Err(Error::InvalidParameter("m must be >= 1".into()).into());
            }
            writeln!(stdout, "n\tbackend\tcandidates\tnanoseconds")?;
            let backend: Backend = (*backend).into();
            for n in n_range.clone() {
                let inst = bench_instance(n, *m, seed.wrapping_add(n as u64));
                let start = Instant::now();
                let sol: Solution<Cost> = solver::solve(backend, &inst, &opts)?;
                let nanos = start.elapsed().as_nanos();
                writeln!(stdout, "{n}\t{backend}\t{}\t{nanos}", sol.candidates)?;
                stdout.flush()?;
            }
            Ok(0)
        }
        Command::ExportLp { input, out, k } => {
            let inst = MirkinInstance::parse(&read_input(input)?)?;
            let budget = k.or(inst.budget());
            let model = solver::build_ilp::<Cost>(&inst, budget)?;
            write_output(out, &solver::export_lp(&model)?, stdout)?;
            let _ = writeln!(stderr, "c binaries {}", model.variable_count());
            Ok(0)
        }
    }
}

/// `m` uniform strings of length exactly `n`, unit multiplicities.
pub fn bench_instance(n: usize, m: usize, seed: u64) -> MirkinInstance {
    use rand::Rng;
    let mut rng = verifier::rng(seed);
    let strings = (0..m).map(|_| crate::BitString::from_bits((0..n).map(|_| rng.gen_bool(0.5))));
    MirkinInstance::unweighted(strings).expect("m >= 1, n >= 1")
}
