//! Size-ladder benchmark: one JSON record per run, then a log-log fit of
//! work counters and wall time against `n`.

use crate::opts::{rng_from, GenOpts, Problem, SolverOpts};
use crate::solve::{generate, run_case};
use crate::{CmdResult, Failure};
use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};
use sumset_core::fit::{loglog_fit, MIN_LADDER};
use sumset_core::solvers::tune_monotone_params;
use sumset_core::WorkCounter;

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub problem: &'static str,
    pub n: usize,
    pub seed: u64,
    pub params: Value,
    pub work: Option<WorkCounter>,
    pub work_total: Option<u64>,
    pub wall_ms: f64,
    pub verified: Option<bool>,
}

impl BenchRecord {
    pub fn new(
        problem: Problem,
        n: usize,
        seed: u64,
        params: Value,
        work: Option<WorkCounter>,
        wall_ms: f64,
        verified: Option<bool>,
    ) -> Self {
        BenchRecord { problem: problem.id(), n, seed, params, work, work_total: work.map(|w| w.total()), wall_ms, verified }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Comma-separated sizes; at least four distinct.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Runs per size, each on its own seed.
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also run the oracle and record the verdict.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub gen: GenOpts,
    #[command(flatten)]
    pub solver: SolverOpts,
}

/// Asymptotic exponent quoted for the problem, where there is one.
fn reference_exponent(problem: Problem, d: usize) -> Option<f64> {
    match problem {
        Problem::Brute => Some(2.0),
        Problem::Monotone => Some(tune_monotone_params(2, d).1.z),
        Problem::Minplus | Problem::MinplusDiff | Problem::Histindex => Some(tune_monotone_params(2, 2).1.z),
        _ => None,
    }
}

pub fn bench(args: BenchArgs) -> CmdResult {
    let mut distinct = args.sizes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < MIN_LADDER {
        return Err(Failure::Usage(format!(
            "ladder has {} distinct sizes, need at least {MIN_LADDER}",
            distinct.len()
        )));
    }
    let (base, mut rng) = rng_from(args.seed);
    let cluster_l = args.solver.cluster_l.or(Some(args.gen.l));
    let (mut ns, mut works, mut times) = (Vec::new(), Vec::new(), Vec::new());
    let mut all_work = true;
    let mut failed = None;
    for (i, &n) in args.sizes.iter().enumerate() {
        for r in 0..args.reps {
            let seed = base.wrapping_add(i as u64 * args.reps + r);
            let g = GenOpts { n, ..args.gen };
            let case = generate(args.problem, &g, seed)?;
            let o = run_case(args.problem, &case, &args.solver, cluster_l, args.verify, &mut rng)?;
            let verified = args.verify.then_some(o.mismatch.is_none());
            if let (Some(m), None) = (&o.mismatch, &failed) {
                failed = Some(format!("n = {n}, seed {seed}: {m}"));
            }
            let rec = BenchRecord::new(args.problem, n, seed, o.params, o.work, o.wall_ms, verified);
            println!("{}", rec.to_json());
            ns.push(n as f64);
            times.push(o.wall_ms.max(1e-6));
            match o.work {
                Some(w) => works.push(w.total().max(1) as f64),
                None => all_work = false,
            }
        }
    }
    let work_fit = if all_work { Some(loglog_fit(&ns, &works)?) } else { None };
    let time_fit = loglog_fit(&ns, &times)?;
    let summary = json!({
        "problem": args.problem.id(),
        "fit": { "work": work_fit, "time": time_fit },
        "reference_exponent": reference_exponent(args.problem, args.gen.d),
    });
    println!("{summary}");
    match failed {
        Some(m) => Err(Failure::Mismatch(m)),
        None => Ok(()),
    }
}
