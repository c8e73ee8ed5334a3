//! `solve` and `verify`, plus the per-instance runner shared with `bench`.

use crate::bench::BenchRecord;
use crate::files;
use crate::opts::{rng_from, GenOpts, Problem, SolverOpts};
use crate::{CmdResult, Failure};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;
use sumset_core::minplus::{
    hist_offline_queries, histindex_build_binary, histindex_query, minplus_bounded_differences,
    minplus_bounded_monotone, minplus_naive, MonotoneSeq,
};
use sumset_core::model::cluster::cover_intervals_1d;
use sumset_core::model::io::format_points;
use sumset_core::model::{gen_instance, ClusterDesc, GenKind, GenParams, Instance};
use sumset_core::online::HistOnline;
use sumset_core::solvers::{
    attach_witnesses, threesum_brute, threesum_clustered, threesum_fft, threesum_monotone, threesum_one_clustered,
    tune_monotone_params, SolveParams, ThreeSumResult,
};
use sumset_core::{PointSet, WorkCounter};

/// One input to a solver.
pub enum Case {
    ThreeSum { a: PointSet, b: PointSet, s: PointSet },
    Seqs { a: Vec<i64>, b: Vec<i64>, c: u64 },
    Text { text: Vec<u8>, alphabet: usize },
}

impl Case {
    pub fn size(&self) -> usize {
        match self {
            Case::ThreeSum { a, b, .. } => a.len().max(b.len()),
            Case::Seqs { a, b, .. } => a.len().max(b.len()),
            Case::Text { text, .. } => text.len(),
        }
    }
}

/// A seeded instance of the kind `problem` expects.
pub fn generate(problem: Problem, g: &GenOpts, seed: u64) -> Result<Case, Failure> {
    let p = g.params(seed);
    let inst = match problem {
        Problem::Brute | Problem::Monotone => gen_instance(GenKind::MonotoneD, &p)?,
        Problem::Fft => gen_instance(GenKind::MonotoneD, &GenParams { d: 1, ..p })?,
        Problem::Clustered | Problem::OneClustered => gen_instance(GenKind::Clustered, &p)?,
        Problem::Minplus => gen_instance(GenKind::BoundedMonotoneSeq, &p)?,
        Problem::MinplusDiff => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = g.c as i64;
            let mut walk = || {
                let mut v = vec![rng.gen_range(-c..=c)];
                for _ in 1..g.n {
                    let step = rng.gen_range(-c..=c);
                    v.push(v.last().unwrap() + step);
                }
                v
            };
            let (a, b) = (walk(), walk());
            return Ok(Case::Seqs { a, b, c: g.c });
        }
        Problem::Histindex => gen_instance(GenKind::String, &GenParams { alphabet: 2, ..p })?,
        Problem::HistOffline | Problem::HistOnline => gen_instance(GenKind::String, &p)?,
    };
    Ok(match inst {
        Instance::ThreeSum { a, b, s } => Case::ThreeSum { a, b, s },
        Instance::Sequences { a, b, c } => Case::Seqs { a, b, c },
        Instance::Text { text, alphabet } => Case::Text { text, alphabet },
    })
}

/// Cluster descriptor of a 1D set for interval length `l`.
fn desc_1d(s: &PointSet, l: u64) -> Result<ClusterDesc, Failure> {
    if s.dim() != 1 {
        return Err(Failure::Usage("clustered problems take one-dimensional sets".into()));
    }
    Ok(ClusterDesc::new(cover_intervals_1d(s.coords(), l).len().max(1), l, None)?)
}

fn universe_of(sets: [&PointSet; 3]) -> u64 {
    sets.iter().map(|s| s.universe()).max().unwrap()
}

pub fn params_json(p: &SolveParams) -> Value {
    json!({ "ell": p.ell, "alpha": p.alpha, "recurse": p.recurse, "brute_cutoff": p.brute_cutoff })
}

/// Runs a 3SUM solver; returns the result and the parameters used.
pub fn run_threesum<R: Rng>(
    problem: Problem,
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    opts: &SolverOpts,
    cluster_l: Option<u64>,
    rng: &mut R,
) -> Result<(ThreeSumResult, Value), Failure> {
    let d = a.dim();
    let cluster_l = || cluster_l.ok_or_else(|| Failure::Usage("clustered problems need --cluster-l".into()));
    Ok(match problem {
        Problem::Brute => (threesum_brute(a, b, s)?, json!({})),
        Problem::Fft => (threesum_fft(a, b, s)?, json!({})),
        Problem::Monotone => {
            let (base, _) = tune_monotone_params(universe_of([a, b, s]), d);
            let p = opts.params(base);
            (threesum_monotone(a, b, s, &p, rng)?, params_json(&p))
        }
        Problem::Clustered => {
            let l = cluster_l()?;
            let descs = [desc_1d(a, l)?, desc_1d(b, l)?, desc_1d(s, l)?];
            let p = opts.params(SolveParams::default());
            let r = threesum_clustered(a, b, s, [&descs[0], &descs[1], &descs[2]], opts.alpha, &p, rng)?;
            (r, json!({ "L": l, "K": [descs[0].k, descs[1].k, descs[2].k], "alpha": opts.alpha }))
        }
        Problem::OneClustered => {
            let l = cluster_l()?;
            let da = desc_1d(a, l)?;
            let p = opts.params(SolveParams::default());
            (threesum_one_clustered(a, b, s, &da, &p, rng)?, json!({ "L": l, "K_A": da.k }))
        }
        _ => return Err(Failure::Usage(format!("{} is not a 3SUM problem", problem.id()))),
    })
}

/// First disagreement between claimed and true hits.
fn threesum_diff(claimed: &PointSet, truth: &PointSet, a: &PointSet, b: &PointSet) -> Option<String> {
    for p in truth.iter() {
        if !claimed.contains(p) {
            let w = a.iter().find_map(|x| {
                let y: Option<Vec<u64>> = p.iter().zip(x).map(|(s, x)| s.checked_sub(*x)).collect();
                y.filter(|y| b.contains(y)).map(|y| (x.to_vec(), y))
            });
            return Some(match w {
                Some((x, y)) => format!("missing hit {p:?} = {x:?} + {y:?}"),
                None => format!("missing hit {p:?}"),
            });
        }
    }
    claimed.iter().find(|p| !truth.contains(p)).map(|p| format!("spurious hit {p:?}: no a + b equals it"))
}

fn seq_diff(got: &[i64], want: &[i64]) -> Option<String> {
    if got.len() != want.len() {
        return Some(format!("length {} but expected {}", got.len(), want.len()));
    }
    got.iter().zip(want).position(|(g, w)| g != w).map(|k| format!("s[{k}] = {} but min is {}", got[k], want[k]))
}

/// Count vectors of all substrings, including the empty one.
pub fn substring_counts(s: &[u8], alphabet: usize) -> HashSet<Vec<u64>> {
    let mut out = HashSet::new();
    for i in 0..=s.len() {
        let mut c = vec![0u64; alphabet];
        out.insert(c.clone());
        for &x in &s[i..] {
            c[x as usize] += 1;
            out.insert(c.clone());
        }
    }
    out
}

/// Every realised count vector plus as many random ones.
fn hist_queries<R: Rng>(s: &[u8], alphabet: usize, all: &HashSet<Vec<u64>>, rng: &mut R) -> Vec<Vec<u64>> {
    let mut q: Vec<Vec<u64>> = all.iter().cloned().collect();
    q.sort_unstable();
    let top = s.len() as u64 / alphabet as u64 + 2;
    for _ in 0..all.len() {
        q.push((0..alphabet).map(|_| rng.gen_range(0..=top)).collect());
    }
    q
}

fn answers_diff(queries: &[Vec<u64>], got: &[bool], all: &HashSet<Vec<u64>>) -> Option<String> {
    queries
        .iter()
        .zip(got)
        .find(|(q, &g)| g != all.contains(*q))
        .map(|(q, g)| format!("query {q:?} answered {g}, enumeration says {}", !g))
}

pub struct Outcome {
    pub work: Option<WorkCounter>,
    pub params: Value,
    pub wall_ms: f64,
    /// `Some(description)` on a mismatch with the oracle.
    pub mismatch: Option<String>,
}

/// Runs `problem` on `case`, timing the solver alone, then the oracle when
/// `check` is set.
pub fn run_case<R: Rng>(
    problem: Problem,
    case: &Case,
    opts: &SolverOpts,
    cluster_l: Option<u64>,
    check: bool,
    rng: &mut R,
) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let elapsed = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    let mut out = Outcome { work: None, params: json!({}), wall_ms: 0.0, mismatch: None };
    match (problem, case) {
        (p, Case::ThreeSum { a, b, s }) if p.is_threesum() => {
            let (r, params) = run_threesum(p, a, b, s, opts, cluster_l, rng)?;
            out.wall_ms = elapsed(start);
            out.work = Some(r.work);
            out.params = params;
            if check {
                out.mismatch = threesum_diff(&r.hits, &threesum_brute(a, b, s)?.hits, a, b);
            }
        }
        (Problem::Minplus, Case::Seqs { a, b, c }) => {
            let n = a.len().max(b.len()) as u64;
            let bound = c * n;
            let (base, _) = tune_monotone_params(bound.max(n), 2);
            let p = opts.params(base);
            let (ma, mb) = (MonotoneSeq::new(a.clone(), bound)?, MonotoneSeq::new(b.clone(), bound)?);
            let got = minplus_bounded_monotone(&ma, &mb, &p, rng)?;
            out.wall_ms = elapsed(start);
            out.params = params_json(&p);
            if check {
                out.mismatch = seq_diff(&got, &minplus_naive(a, b));
            }
        }
        (Problem::MinplusDiff, Case::Seqs { a, b, c }) => {
            let n = a.len().max(b.len()) as u64;
            let (base, _) = tune_monotone_params(((2 * c + 1) * n).max(2), 2);
            let p = opts.params(base);
            let got = minplus_bounded_differences(a, b, *c, &p, rng)?;
            out.wall_ms = elapsed(start);
            out.params = params_json(&p);
            if check {
                out.mismatch = seq_diff(&got, &minplus_naive(a, b));
            }
        }
        (Problem::Histindex, Case::Text { text, .. }) => {
            let (base, _) = tune_monotone_params(text.len() as u64 + 1, 2);
            let p = opts.params(base);
            let idx = histindex_build_binary(text, &p, rng)?;
            out.wall_ms = elapsed(start);
            out.params = params_json(&p);
            if check {
                let all = substring_counts(text, 2);
                let n = text.len() as u64;
                out.mismatch = (0..=n + 1)
                    .flat_map(|i| (0..=n + 1 - i).map(move |j| (i, j)))
                    .find(|&(i, j)| histindex_query(&idx, i, j) != all.contains(&vec![i, j]))
                    .map(|(i, j)| format!("query ({i}, {j}) answered {}", histindex_query(&idx, i, j)));
            }
        }
        (Problem::HistOffline, Case::Text { text, alphabet }) => {
            let all = substring_counts(text, *alphabet);
            let queries = hist_queries(text, *alphabet, &all, rng);
            let (base, _) = tune_monotone_params(2 * (text.len() as u64 + 1), *alphabet);
            let p = opts.params(base);
            let start = Instant::now();
            let got = hist_offline_queries(text, *alphabet, &queries, &p, rng)?;
            out.wall_ms = elapsed(start);
            out.params = params_json(&p);
            if check {
                out.mismatch = answers_diff(&queries, &got, &all);
            }
        }
        (Problem::HistOnline, Case::Text { text, alphabet }) => {
            let all = substring_counts(text, *alphabet);
            let queries = hist_queries(text, *alphabet, &all, rng);
            let start = Instant::now();
            let st = HistOnline::build(text, *alphabet, opts.delta, rng)?;
            let got = queries.iter().map(|q| st.query(q)).collect::<Result<Vec<_>, _>>()?;
            out.wall_ms = elapsed(start);
            out.work = Some(st.structure().build_work);
            out.params = json!({ "delta": opts.delta, "threshold": st.structure().threshold() });
            if check {
                out.mismatch = answers_diff(&queries, &got, &all);
            }
        }
        _ => return Err(Failure::Usage(format!("instance does not fit problem {}", problem.id()))),
    }
    Ok(out)
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub s: PathBuf,
    #[command(flatten)]
    pub solver: SolverOpts,
    /// Hits go here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write one witness pair per hit: `a | b` per line.
    #[arg(long)]
    pub witnesses: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn solve(args: SolveArgs) -> CmdResult {
    if !args.problem.is_threesum() {
        return Err(Failure::Usage(format!("solve handles 3SUM problems, not {}", args.problem.id())));
    }
    let (a, b, s) = (files::points(&args.a)?, files::points(&args.b)?, files::points(&args.s)?);
    let (seed, mut rng) = rng_from(args.seed);
    let start = Instant::now();
    let (mut r, params) = run_threesum(args.problem, &a, &b, &s, &args.solver, args.solver.cluster_l, &mut rng)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    files::emit(args.out.as_deref(), &format_points(&r.hits))?;
    if let Some(path) = &args.witnesses {
        attach_witnesses(&mut r, &a, &b);
        let mut text = String::new();
        for (x, y) in r.witnesses.iter().flatten() {
            let join = |p: &[u64]| p.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            writeln!(text, "{} | {}", join(&x.0), join(&y.0)).unwrap();
        }
        files::emit(Some(path), &text)?;
    }
    let rec = BenchRecord::new(args.problem, a.len().max(b.len()), seed, params, Some(r.work), wall_ms, None);
    eprintln!("{}", rec.to_json());
    Ok(())
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// 3SUM instance files; without them instances are generated.
    #[arg(long, requires_all = ["b", "s"])]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    #[arg(long)]
    pub s: Option<PathBuf>,
    /// Sequence files for the (min,+) problems.
    #[arg(long, requires = "seq_b")]
    pub seq_a: Option<PathBuf>,
    #[arg(long)]
    pub seq_b: Option<PathBuf>,
    /// String file for the histogram problems.
    #[arg(long)]
    pub string: Option<PathBuf>,
    /// Claimed output to check against the oracle instead of running the
    /// solver: a point file of hits, or a sequence file.
    #[arg(long)]
    pub result: Option<PathBuf>,
    /// Number of generated instances, seeded `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub gen: GenOpts,
    #[command(flatten)]
    pub solver: SolverOpts,
}

/// Checks a claimed result file against the oracle.
fn verify_result(args: &VerifyArgs, case: &Case, path: &std::path::Path) -> CmdResult {
    let mismatch = match case {
        Case::ThreeSum { a, b, s } => threesum_diff(&files::points(path)?, &threesum_brute(a, b, s)?.hits, a, b),
        Case::Seqs { a, b, .. } => seq_diff(&files::sequence(path)?.0, &minplus_naive(a, b)),
        Case::Text { .. } => {
            return Err(Failure::Usage("--result is supported for 3SUM and (min,+) problems".into()));
        }
    };
    match mismatch {
        Some(m) => Err(Failure::Mismatch(m)),
        None => {
            println!("{}", json!({ "problem": args.problem.id(), "result": path, "verified": true }));
            Ok(())
        }
    }
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let given = match (&args.a, &args.seq_a, &args.string) {
        (Some(a), _, _) => Some(Case::ThreeSum {
            a: files::points(a)?,
            b: files::points(args.b.as_ref().unwrap())?,
            s: files::points(args.s.as_ref().unwrap())?,
        }),
        (_, Some(x), _) => {
            let (a, ca) = files::sequence(x)?;
            let (b, cb) = files::sequence(args.seq_b.as_ref().unwrap())?;
            Some(Case::Seqs { a, b, c: ca.max(cb) })
        }
        (_, _, Some(p)) => {
            let (text, alphabet) = files::string(p)?;
            Some(Case::Text { text, alphabet })
        }
        _ => None,
    };
    if let Some(path) = &args.result {
        let case = given.ok_or_else(|| Failure::Usage("--result needs instance files".into()))?;
        return verify_result(&args, &case, path);
    }
    let (base, mut rng) = rng_from(args.seed);
    let cluster_l = args.solver.cluster_l.or(Some(args.gen.l));
    let cases: Box<dyn Iterator<Item = Result<(u64, Case), Failure>>> = match given {
        Some(c) => Box::new(std::iter::once(Ok((base, c)))),
        None => Box::new((0..args.seeds).map(|i| {
            let seed = base.wrapping_add(i);
            generate(args.problem, &args.gen, seed).map(|c| (seed, c))
        })),
    };
    for item in cases {
        let (seed, case) = item?;
        let o = run_case(args.problem, &case, &args.solver, cluster_l, true, &mut rng)?;
        let ok = o.mismatch.is_none();
        let rec = BenchRecord::new(args.problem, case.size(), seed, o.params, o.work, o.wall_ms, Some(ok));
        println!("{}", rec.to_json());
        if let Some(m) = o.mismatch {
            return Err(Failure::Mismatch(format!("seed {seed}: {m}")));
        }
    }
    Ok(())
}
