//! Flags shared between subcommands.

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumset_core::bsg::Variant;
use sumset_core::fft::Strategy;
use sumset_core::model::GenParams;
use sumset_core::solvers::SolveParams;

/// Seeded generator; a fresh seed is drawn and echoed on stderr when none
/// was given.
pub fn rng_from(seed: Option<u64>) -> (u64, ChaCha8Rng) {
    let seed = seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    });
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Det,
    Rand,
}

impl VariantArg {
    pub fn variant(self) -> Variant {
        match self {
            VariantArg::Det => Variant::Det,
            VariantArg::Rand => Variant::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Brute,
    Dense,
    Hashed,
    HashedDet,
}

impl StrategyArg {
    pub fn strategy(self) -> Strategy {
        match self {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Brute => Strategy::Brute,
            StrategyArg::Dense => Strategy::Dense,
            StrategyArg::Hashed => Strategy::Hashed,
            StrategyArg::HashedDet => Strategy::HashedDet,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    #[value(name = "3sum-brute")]
    Brute,
    #[value(name = "3sum-fft")]
    Fft,
    #[value(name = "3sum-monotone")]
    Monotone,
    #[value(name = "3sum-clustered")]
    Clustered,
    #[value(name = "3sum-one-clustered")]
    OneClustered,
    Minplus,
    MinplusDiff,
    Histindex,
    HistOffline,
    HistOnline,
}

impl Problem {
    pub fn id(self) -> &'static str {
        match self {
            Problem::Brute => "3sum-brute",
            Problem::Fft => "3sum-fft",
            Problem::Monotone => "3sum-monotone",
            Problem::Clustered => "3sum-clustered",
            Problem::OneClustered => "3sum-one-clustered",
            Problem::Minplus => "minplus",
            Problem::MinplusDiff => "minplus-diff",
            Problem::Histindex => "histindex",
            Problem::HistOffline => "hist-offline",
            Problem::HistOnline => "hist-online",
        }
    }

    pub fn is_threesum(self) -> bool {
        matches!(self, Problem::Brute | Problem::Fft | Problem::Monotone | Problem::Clustered | Problem::OneClustered)
    }
}

/// Solver knobs; unset `ell`/`alpha` fall back to each problem's tuning.
#[derive(Args, Clone, Debug)]
pub struct SolverOpts {
    /// Grid side (made even).
    #[arg(long)]
    pub ell: Option<u64>,
    /// BSG cover threshold.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Recursion depth limit for monotone 3SUM.
    #[arg(long, default_value_t = 4)]
    pub recurse: usize,
    /// Subproblems at most this side (or this many pairs squared) go brute force.
    #[arg(long, default_value_t = 32)]
    pub brute_cutoff: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Rand)]
    pub variant: VariantArg,
    /// Step-2 sumset strategy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub step2: StrategyArg,
    /// Deterministic hash families in step 2.
    #[arg(long)]
    pub deterministic: bool,
    /// Cluster length for clustered problems (interval length in 1D).
    #[arg(long = "cluster-l")]
    pub cluster_l: Option<u64>,
    /// Trade-off for online histogram structures.
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
}

/// Instance generator flags.
#[derive(Args, Clone, Copy, Debug)]
pub struct GenOpts {
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Value bound factor for sequences (values in [c n]), or step bound.
    #[arg(long, default_value_t = 2)]
    pub c: u64,
    /// Number of clusters.
    #[arg(long = "K", default_value_t = 8)]
    pub k: usize,
    /// Cluster length.
    #[arg(long = "L", default_value_t = 64)]
    pub l: u64,
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
}

impl GenOpts {
    pub fn params(&self, seed: u64) -> GenParams {
        GenParams { n: self.n, d: self.d, c: self.c, k: self.k, l: self.l, alphabet: self.alphabet, seed }
    }
}

impl SolverOpts {
    /// Applies explicit flags over `base`.
    pub fn params(&self, base: SolveParams) -> SolveParams {
        let mut ell = self.ell.unwrap_or(base.ell).max(2);
        ell += ell & 1;
        SolveParams {
            ell,
            alpha: self.alpha.unwrap_or(base.alpha),
            recurse: self.recurse,
            brute_cutoff: self.brute_cutoff,
            variant: self.variant.variant(),
            step2: self.step2.strategy(),
            deterministic: self.deterministic,
            ..base
        }
    }
}
