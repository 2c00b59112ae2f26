//! `lll-shift`: thresholds, shift instances, and the LLL solvers from the
//! command line.
//!
//! Exit codes: 0 success, 1 solver failure (or violated events / untrapped
//! positions), 2 usage or malformed input, 3 internal bound violation.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde_json::{json, Value};

use lll_shift::lll::io::{assignment_from_json, assignment_to_json, instance_from_json, instance_to_json};
use lll_shift::lll::{solve_backtracking, solve_moser_tardos, BacktrackOutcome, DEFAULT_MAX_RESAMPLES};
use lll_shift::separated::{left_separated_subset, right_separated_subset};
use lll_shift::shift::config::config_from_json;
use lll_shift::shift::{
    build_instance, check_bounds, endgame_value, endgame_verdict, threshold, BoundsReport, ShiftInstance,
    ThresholdError,
};
use lll_shift::{certify, GroupContext, GroupSpec, Instance, ShiftError};

const SOLVER_FAILURE: u8 = 1;
const USAGE: u8 = 2;
const BOUND_VIOLATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lll-shift", version, about = "Local Lemma instances and trapped shift configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Threshold ℓ₀, n = |D|² ℓ₀ and f(ℓ) near ℓ₀.
    Ell0 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dsize: u32,
    },
    /// Build, check bounds, solve and verify trapping for a shift config.
    Demo {
        config: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write the instance of a shift config to OUT/instance.json.
    Build {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Solve an instance file and write OUT/solution.json.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Solver::Mt)]
        solver: Solver,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// List the events a solution violates.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Separated subset of F for D, from a JSON file {"group", "F", "D"}.
    Separate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_RESAMPLES)]
    max_resamples: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Solver {
    Mt,
    Bt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Display) -> Failure {
    Failure { code, message: message.to_string() }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LLL_SHIFT_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Ell0 { k, dsize } => cmd_ell0(k, dsize),
        Command::Demo { config, run, out } => cmd_demo(&config, &run, &out),
        Command::Build { config, out } => cmd_build(&config, &out),
        Command::Solve { instance, solver, run, out } => cmd_solve(&instance, solver, &run, &out),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Separate { input, side } => cmd_separate(&input, side),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| fail(USAGE, format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, format!("{text}\n")).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))?;
    info!("wrote {}", path.display());
    Ok(path)
}

fn threshold_failure(e: ThresholdError) -> Failure {
    match e {
        ThresholdError::Uncertified { .. } => fail(BOUND_VIOLATION, e),
        _ => fail(USAGE, e),
    }
}

fn shift_failure(e: ShiftError) -> Failure {
    match e {
        ShiftError::BoundViolation(_) | ShiftError::TrappingImplication(_) => fail(BOUND_VIOLATION, e),
        _ => fail(USAGE, e),
    }
}

fn cmd_ell0(k: u32, dsize: u32) -> Outcome {
    let t = threshold(k, dsize).map_err(threshold_failure)?;
    println!("ell0={} n={}", t.ell0, t.n);
    if t.degenerate_alphabet {
        println!("note: k = 1 is a degenerate alphabet; every event has probability 0 or 1 and f(l) = 0");
        return Ok(());
    }
    println!("{:>12}  {:>14}  verdict", "l", "f(l)");
    let lo = t.ell0.saturating_sub(3).max(1);
    for ell in lo..=t.ell0 + 3 {
        let verdict = endgame_verdict(k, dsize, ell).map_err(threshold_failure)?;
        println!("{ell:>12}  {:>14.6e}  {}", endgame_value(k, dsize, ell), verdict_name(verdict));
    }
    Ok(())
}

fn verdict_name(v: lll_shift::Verdict) -> &'static str {
    match v {
        lll_shift::Verdict::Correct => "< 1",
        lll_shift::Verdict::Incorrect => ">= 1",
        lll_shift::Verdict::Borderline => "uncertain",
    }
}

fn load_shift(config: &Path) -> Result<ShiftInstance, Failure> {
    let cfg = config_from_json(&read(config)?).map_err(|e| fail(USAGE, e))?;
    build_instance(cfg).map_err(shift_failure)
}

fn print_stats(si: &ShiftInstance, report: &BoundsReport) {
    let cfg = si.config();
    let inst = si.instance();
    println!("group: {}", serde_json::to_string(&si.ctx().spec()).expect("spec serializes"));
    println!(
        "k={} |D|={} |F|={} |L|={} events={} variables={}",
        report.k,
        report.support_size,
        cfg.translates.len(),
        report.l_size,
        report.events,
        inst.universe().len()
    );
    println!("p={} ({:.6e})", report.max_probability, certify::to_f64(inst.max_probability()));
    println!("d={} (bound {})", report.measured_degree, report.degree_bound);
    let (lo, hi) = report.lll_product;
    println!("e*p*(d+1) in [{lo:.9}, {hi:.9}]: {:?}", report.lll_verdict);
    match report.ell0 {
        Some(l0) => println!("ell0={l0} |L|>=ell0: {}", report.l_size as u64 >= l0),
        None => println!("ell0=unavailable"),
    }
}

fn warn_if_small(si: &ShiftInstance) {
    let k = si.config().k();
    let s = si.config().pattern.len() as u32;
    if let Ok(t) = threshold(k, s) {
        let f = si.config().translates.len() as u64;
        if f < t.n {
            warn!("|F| = {f} is below n = {} for k = {k}, |D| = {s}; the local lemma criterion may fail", t.n);
        }
    }
}

fn cmd_build(config: &Path, out: &Path) -> Outcome {
    let si = load_shift(config)?;
    warn_if_small(&si);
    let report = check_bounds(&si).map_err(shift_failure)?;
    print_stats(&si, &report);
    write(out, "instance.json", &instance_to_json(si.instance()))?;
    Ok(())
}

fn cmd_demo(config: &Path, run: &RunArgs, out: &Path) -> Outcome {
    let si = load_shift(config)?;
    warn_if_small(&si);
    let report = check_bounds(&si).map_err(shift_failure)?;
    print_stats(&si, &report);
    write(out, "instance.json", &instance_to_json(si.instance()))?;

    let start = Instant::now();
    let sol = si.solve(run.seed, run.max_resamples).map_err(|e| fail(SOLVER_FAILURE, e))?;
    println!("solved: resamples={} time={:.3}s", sol.resamples, start.elapsed().as_secs_f64());
    write(out, "solution.json", &assignment_to_json(si.instance().universe(), &sol.assignment))?;

    let trap = si.verify_trapping(&sol.assignment).map_err(shift_failure)?;
    let text = serde_json::to_string_pretty(&trap.to_json(si.ctx())).expect("report serializes");
    write(out, "trap_report.json", &text)?;
    let total = si.config().core_window.len();
    println!("trapped: {}/{total}", trap.trapped);
    if trap.all_trapped() {
        Ok(())
    } else {
        Err(fail(SOLVER_FAILURE, format!("{} positions are not trapped", trap.untrapped)))
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    instance_from_json(&read(path)?).map_err(|e| fail(USAGE, e))
}

fn cmd_solve(instance: &Path, solver: Solver, run: &RunArgs, out: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let start = Instant::now();
    let (assignment, resamples) = match solver {
        Solver::Mt => {
            let sol = solve_moser_tardos(&inst, run.seed, run.max_resamples).map_err(|e| fail(SOLVER_FAILURE, e))?;
            (sol.assignment, Some(sol.resamples))
        }
        Solver::Bt => match solve_backtracking(&inst).map_err(|e| fail(SOLVER_FAILURE, e))? {
            BacktrackOutcome::Solved(a) => (a, None),
            BacktrackOutcome::Unsatisfiable => return Err(fail(SOLVER_FAILURE, "instance is unsatisfiable")),
        },
    };
    let elapsed = start.elapsed().as_secs_f64();
    match resamples {
        Some(r) => println!("solver=mt seed={} resamples={r} time={elapsed:.3}s", run.seed),
        None => println!("solver=bt time={elapsed:.3}s"),
    }
    write(out, "solution.json", &assignment_to_json(inst.universe(), &assignment))?;
    Ok(())
}

fn cmd_verify(instance: &Path, solution: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let x = assignment_from_json(inst.universe(), &read(solution)?).map_err(|e| fail(USAGE, e))?;
    let violated = inst.verify_solution(&x);
    println!("violated={}", json!(violated));
    if violated.is_empty() {
        Ok(())
    } else {
        Err(fail(SOLVER_FAILURE, format!("{} of {} events violated", violated.len(), inst.len())))
    }
}

fn cmd_separate(input: &Path, side: SideArg) -> Outcome {
    let value: Value = serde_json::from_str(&read(input)?).map_err(|e| fail(USAGE, e))?;
    let field = |name: &str| value.get(name).ok_or_else(|| fail(USAGE, format!("missing field {name:?}")));
    let spec: GroupSpec = serde_json::from_value(field("group")?.clone()).map_err(|e| fail(USAGE, e))?;
    let ctx = GroupContext::from_spec(&spec).map_err(|e| fail(USAGE, e))?;
    let f = ctx.decode_set(field("F")?).map_err(|e| fail(USAGE, e))?;
    let d = ctx.decode_set(field("D")?).map_err(|e| fail(USAGE, e))?;
    let l = match side {
        SideArg::Left => left_separated_subset(&ctx, &f, &d),
        SideArg::Right => right_separated_subset(&ctx, &f, &d),
    }
    .map_err(|e| fail(USAGE, e))?;
    let bound = f.len().div_ceil(d.len() * d.len());
    if l.len() < bound {
        return Err(fail(BOUND_VIOLATION, format!("|L| = {} is below |F|/|D|^2", l.len())));
    }
    let out = json!({
        "L": l.iter().map(|e| ctx.encode(e)).collect::<Vec<_>>(),
        "size": l.len(),
        "bound": bound,
    });
    println!("{out}");
    Ok(())
}
