use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "coxdl", version, about = "Point counts, characters and identity checks for Coxeter-type Deligne–Lusztig varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Opts {
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub kappa: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub h: usize,
    /// Extension degree of the field of definition (`count`, `minor-identity`, `turnbull`, `sigma-w`).
    #[arg(long, global = true)]
    pub ext: Option<u32>,
    /// Torus characters as `theta=i:e,...` or `trivial`; repeatable.
    #[arg(long, global = true)]
    pub theta: Vec<String>,
    #[arg(long, global = true)]
    pub i0: Option<usize>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = "COXDL_CACHE")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Profile::Quick)]
    pub profile: Profile,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// #X_{h,n'}(F_{q^ext}) by enumeration.
    Count,
    /// Character table of the general-position (or given) θ.
    Chartab,
    /// Measured against predicted ⟨χ_θ, χ_θ'⟩.
    Mackey {
        /// Use every torus character instead of the general-position ones.
        #[arg(long)]
        all: bool,
    },
    /// Run one lemma check.
    Verify {
        #[arg(value_enum)]
        lemma: LemmaId,
        #[command(flatten)]
        args: LemmaArgs,
    },
    /// Howe decompositions, degrees and r_θ.
    Howe,
    /// Induced parameters σ_θ on the finite Weil group model.
    Param {
        /// ϖ-depth: ϖ has order n·m in the model.
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Value of the extension at ϖ as `e:k`, meaning ζ_e^k.
        #[arg(long, default_value = "1:0")]
        pi: String,
    },
    /// Formal degrees through the Macdonald volume.
    Degree,
    /// The acceptance matrix.
    Accept {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    NormImage,
    RhFibers,
    CurveReduction,
    MinorIdentity,
    QuotientFibers,
    Turnbull,
    SigmaW,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LemmaArgs {
    /// Extension degree (norm-image) or largest degree (rh-fibers, curve-reduction).
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long)]
    pub c: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Random samples instead of exhaustive search (minor-identity).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Extension degrees for quotient-fibers.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Vec<u32>,
    /// Run outside the lemma's hypotheses.
    #[arg(long)]
    pub force: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}
