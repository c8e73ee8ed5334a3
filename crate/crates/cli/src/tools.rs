//! `gen`, `bsg`, `hash-family`, `hist`, `minplus`, `online` and `universe`.

use crate::files;
use crate::opts::{rng_from, GenOpts, SolverOpts, StrategyArg, VariantArg};
use crate::{CmdResult, Failure};
use clap::{Args, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use sumset_core::bsg::{bsg_cover, verify_cover};
use sumset_core::fft::hash::{
    audit_family, build_family_deterministic, build_family_randomized, DEFAULT_C, DEFAULT_LEVELS,
};
use sumset_core::minplus::{
    hist_offline_queries, histindex_build_binary, histindex_query, minplus_bounded_differences,
    minplus_bounded_monotone, MonotoneSeq,
};
use sumset_core::model::io::{format_points, format_sequence, format_string};
use sumset_core::model::{gen_instance, GenKind, GridConfig, Instance};
use sumset_core::online::{preproc_universe, preproc_universe_no_s, query_universe, OnlineParams, OnlineStruct};
use sumset_core::solvers::tune_monotone_params;
use sumset_core::{PointSet, WorkCounter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    MonotoneD,
    Clustered,
    BoundedMonotoneSeq,
    String,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[command(flatten)]
    pub gen: GenOpts,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

pub fn gen(args: GenArgs) -> CmdResult {
    let (seed, _) = rng_from(args.seed);
    let kind = match args.kind {
        KindArg::MonotoneD => GenKind::MonotoneD,
        KindArg::Clustered => GenKind::Clustered,
        KindArg::BoundedMonotoneSeq => GenKind::BoundedMonotoneSeq,
        KindArg::String => GenKind::String,
    };
    let p = args.gen.params(seed);
    let p = if kind == GenKind::Clustered { sumset_core::model::GenParams { d: 1, ..p } } else { p };
    let files: Vec<(&str, String)> = match gen_instance(kind, &p)? {
        Instance::ThreeSum { a, b, s } => {
            vec![("A.txt", format_points(&a)), ("B.txt", format_points(&b)), ("S.txt", format_points(&s))]
        }
        Instance::Sequences { a, b, c } => vec![("a.txt", format_sequence(&a, c)), ("b.txt", format_sequence(&b, c))],
        Instance::Text { text, alphabet } => vec![("string.txt", format_string(&text, alphabet))],
    };
    std::fs::create_dir_all(&args.out)?;
    for (name, text) in files {
        let path = args.out.join(name);
        files::emit(Some(&path), &text)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn values_1d(s: &PointSet, what: &str) -> Result<Vec<u64>, Failure> {
    if s.dim() != 1 {
        return Err(Failure::Usage(format!("{what} must be one-dimensional")));
    }
    Ok(s.coords().to_vec())
}

fn join(v: impl IntoIterator<Item = u64>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Args)]
pub struct BsgArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub s: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = VariantArg::Rand)]
    pub variant: VariantArg,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn bsg(args: BsgArgs) -> CmdResult {
    let a = values_1d(&files::points(&args.a)?, "A")?;
    let b = values_1d(&files::points(&args.b)?, "B")?;
    let s = values_1d(&files::points(&args.s)?, "S")?;
    let (_, mut rng) = rng_from(args.seed);
    let mut work = WorkCounter::default();
    let cover = bsg_cover(&a, &b, &s, args.alpha, args.variant.variant(), &mut rng, &mut work)?;
    let mut out = format!(
        "alpha {} k {} remainder {} pairs {}\n",
        cover.alpha,
        cover.k(),
        cover.remainder.len(),
        cover.initial_edges
    );
    for (i, bc) in cover.bicliques.iter().enumerate() {
        writeln!(out, "biclique {i}").unwrap();
        writeln!(out, "A {}", join(bc.a.iter().map(|&i| a[i as usize]))).unwrap();
        writeln!(out, "B {}", join(bc.b.iter().map(|&j| b[j as usize]))).unwrap();
        writeln!(out, "T {}", join(bc.sumset.iter().copied())).unwrap();
    }
    writeln!(out, "remainder").unwrap();
    for &(i, j) in &cover.remainder {
        writeln!(out, "{} {}", a[i as usize], b[j as usize]).unwrap();
    }
    let audit = verify_cover(&cover, &a, &b, &s);
    if audit.passed() {
        writeln!(out, "audit pass").unwrap();
    } else {
        for f in &audit.failures {
            writeln!(out, "audit fail {f:?}").unwrap();
        }
    }
    writeln!(out, "work {}", serde_json::to_string(&work).unwrap()).unwrap();
    files::emit(None, &out)?;
    match audit.failures.first() {
        Some(f) => Err(Failure::Mismatch(format!("cover audit: {f:?}"))),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Rand,
    Det,
}

#[derive(Args)]
pub struct HashFamilyArgs {
    /// Superset file (one-dimensional points).
    #[arg(long)]
    pub t: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Rand)]
    pub mode: ModeArg,
    /// Primes per function in deterministic mode.
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: usize,
    /// Prime pool constant.
    #[arg(long, default_value_t = DEFAULT_C)]
    pub constant: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn hash_family(args: HashFamilyArgs) -> CmdResult {
    let t = files::points(&args.t)?;
    let vals = values_1d(&t, "T")?;
    let universe = t.universe().max(2);
    let mut work = WorkCounter::default();
    let fam = match args.mode {
        ModeArg::Rand => {
            let (_, mut rng) = rng_from(args.seed);
            build_family_randomized(&vals, universe, args.constant, &mut rng, &mut work)?
        }
        ModeArg::Det => build_family_deterministic(&vals, universe, args.levels, args.constant, &mut work)?,
    };
    let mut out = format!("functions {} attempts {}\n", fam.len(), fam.attempts);
    for (i, f) in fam.fns.iter().enumerate() {
        writeln!(out, "f{i} primes {} range {}", join(f.primes().iter().copied()), f.range()).unwrap();
    }
    writeln!(out, "witness").unwrap();
    for (x, w) in fam.targets.iter().zip(&fam.witness) {
        writeln!(out, "{x} f{w}").unwrap();
    }
    let audit = audit_family(&fam, &vals);
    match audit {
        Ok(()) => writeln!(out, "audit pass").unwrap(),
        Err(x) => writeln!(out, "audit fail {x}").unwrap(),
    }
    files::emit(None, &out)?;
    audit.map_err(|x| Failure::Mismatch(format!("{x} collides under its witness")))
}

#[derive(Args)]
pub struct HistArgs {
    #[arg(long)]
    pub string: PathBuf,
    /// Query file: one count vector per line (`i j` for binary strings).
    /// Read from stdin when absent.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverOpts,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn hist(args: HistArgs) -> CmdResult {
    let (text, alphabet) = files::string(&args.string)?;
    let queries = files::query_lines(args.queries.as_deref())?;
    if let Some(q) = queries.iter().find(|q| q.len() != alphabet) {
        return Err(Failure::Usage(format!("query {q:?} needs {alphabet} counts")));
    }
    let (_, mut rng) = rng_from(args.seed);
    let n = text.len() as u64;
    let answers = if alphabet == 2 {
        let p = args.solver.params(tune_monotone_params(n + 1, 2).0);
        let idx = histindex_build_binary(&text, &p, &mut rng)?;
        queries.iter().map(|q| histindex_query(&idx, q[0], q[1])).collect()
    } else {
        let p = args.solver.params(tune_monotone_params(2 * (n + 1), alphabet).0);
        hist_offline_queries(&text, alphabet, &queries, &p, &mut rng)?
    };
    files::emit(None, &files::booleans(answers))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqMode {
    /// Non-decreasing values in `[0, c n)`.
    Monotone,
    /// Consecutive values differ by at most `c`.
    Differences,
}

#[derive(Args)]
pub struct MinplusArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value_t = SeqMode::Monotone)]
    pub mode: SeqMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverOpts,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn minplus(args: MinplusArgs) -> CmdResult {
    let (a, ca) = files::sequence(&args.a)?;
    let (b, cb) = files::sequence(&args.b)?;
    let c = ca.max(cb);
    let n = a.len().max(b.len()) as u64;
    let (_, mut rng) = rng_from(args.seed);
    let s = match args.mode {
        SeqMode::Monotone => {
            let bound = c * n;
            let p = args.solver.params(tune_monotone_params(bound.max(n), 2).0);
            minplus_bounded_monotone(&MonotoneSeq::new(a, bound)?, &MonotoneSeq::new(b, bound)?, &p, &mut rng)?
        }
        SeqMode::Differences => {
            let p = args.solver.params(tune_monotone_params(((2 * c + 1) * n).max(2), 2).0);
            minplus_bounded_differences(&a, &b, c, &p, &mut rng)?
        }
    };
    files::emit(args.out.as_deref(), &format_sequence(&s, c))
}

#[derive(Args)]
pub struct OnlineArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Grid side.
    #[arg(long, default_value_t = 2)]
    pub ell: u64,
    /// Popularity threshold.
    #[arg(long = "P", default_value_t = 1)]
    pub p: usize,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// One point per line; stdin when absent.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn online(args: OnlineArgs) -> CmdResult {
    let (a, b) = (files::points(&args.a)?, files::points(&args.b)?);
    if a.dim() != b.dim() {
        return Err(Failure::Usage("A and B differ in dimension".into()));
    }
    let (_, mut rng) = rng_from(args.seed);
    let universe = a.universe().max(b.universe()).max(2);
    let g = GridConfig::new(args.ell, universe, a.dim())?;
    let params = OnlineParams { threshold: args.p, alpha: args.alpha, ..OnlineParams::default() };
    let st = OnlineStruct::build(&a, &b, &g, &params, &mut rng)?;
    let queries = files::query_lines(args.queries.as_deref())?;
    let answers = queries.iter().map(|q| st.query(q)).collect::<Result<Vec<_>, _>>()?;
    files::emit(None, &files::booleans(answers))
}

#[derive(Args)]
pub struct UniverseArgs {
    #[arg(long)]
    pub a0: PathBuf,
    #[arg(long)]
    pub b0: PathBuf,
    /// Without it, `S_0` is taken to be the popular sums of `A_0 + B_0`.
    #[arg(long)]
    pub s0: Option<PathBuf>,
    /// Query triples; repeat `--a --b --s` for several.
    #[arg(long, required = true)]
    pub a: Vec<PathBuf>,
    #[arg(long, required = true)]
    pub b: Vec<PathBuf>,
    #[arg(long, required = true)]
    pub s: Vec<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Rand)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub step2: StrategyArg,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn universe(args: UniverseArgs) -> CmdResult {
    if args.a.len() != args.b.len() || args.a.len() != args.s.len() {
        return Err(Failure::Usage("--a, --b and --s must be given the same number of times".into()));
    }
    let (a0, b0) = (files::points(&args.a0)?, files::points(&args.b0)?);
    let (_, mut rng) = rng_from(args.seed);
    let variant = args.variant.variant();
    let pu = match &args.s0 {
        Some(p) => preproc_universe(&a0, &b0, &files::points(p)?, args.alpha, variant, &mut rng)?,
        None => preproc_universe_no_s(&a0, &b0, None, args.alpha, variant, &mut rng)?,
    };
    let mut out = String::new();
    for ((a, b), s) in args.a.iter().zip(&args.b).zip(&args.s) {
        let (a, b, s) = (files::points(a)?, files::points(b)?, files::points(s)?);
        let r = query_universe(&pu, &a, &b, &s, args.step2.strategy(), &mut rng)?;
        out.push_str(&format_points(&r.hits));
    }
    files::emit(None, &out)
}
