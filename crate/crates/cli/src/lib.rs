//! Command-line front end: weight tables, improvement scans, identity checks,
//! coefficient tables, criticality decay and the Knopp chain.
//!
//! Every command produces a table (CSV or JSON) and a list of verification
//! reports. The exit status is 0 iff all reports pass, 1 on a verification
//! failure (witnesses go to stderr) and 2 on usage or input errors.

pub mod sequence_spec;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use discrete_hardy::factorization::gamma_bounds_check;
use discrete_hardy::sequences::parse_rational;
use discrete_hardy::verification::random::{random_sequences, DEFAULT_SEED};
use discrete_hardy::verification::{
    check_sequences, criticality_decay, identity_sides, improvement_claim, knopp_improvement_chain,
    pointwise_scan, Identity, Variant, VerificationReport,
};
use discrete_hardy::weights::{gupta_validity, WeightFamily};
use discrete_hardy::{FiniteSequence, PositiveSequence, PrecisionContext};
use rug::{Float, Rational};

pub use sequence_spec::{parse_sequence_spec, read_test_sequence};
pub use table::{Cell, Format, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] discrete_hardy::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn is_broken_pipe(&self) -> bool {
        let kind = match self {
            CliError::Io(e) => Some(e.kind()),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e.kind()),
                _ => None,
            },
            CliError::Json(e) => e.io_error_kind(),
            _ => None,
        };
        kind == Some(std::io::ErrorKind::BrokenPipe)
    }

    /// 1 for a factorization breakdown (a verification outcome), 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(discrete_hardy::Error::FactorizationBreakdown { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hardy-verify",
    version,
    about = "Tables and numerical checks for discrete Hardy, Copson, Rellich and Knopp inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Mantissa bits of every floating-point value.
    #[arg(long, global = true, env = "HARDY_VERIFY_PRECISION_BITS", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,

    /// Relative tolerance for identity residuals [default: 1e-30 at 256 bits, scaled with the mantissa].
    #[arg(long, global = true, env = "HARDY_VERIFY_TOLERANCE")]
    pub tolerance: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for random test sequences.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Largest index (or cutoff) to evaluate.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: Option<u64>,

    /// Boundary value λ_0 = Λ_0 (or δ_0) for the lambda and delta sequences.
    #[arg(long, global = true)]
    pub lambda0: Option<String>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct SequenceArgs {
    /// Generating sequence μ: ones, linear, pow:<r>, shifted, copson-tilde-lambda, copson-hat-lambda, file:<path>.
    #[arg(long)]
    pub mu: Option<String>,
    /// Edge sequence λ, same grammar as --mu.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Bi-Laplacian weight δ, same grammar as --mu.
    #[arg(long)]
    pub delta: Option<String>,
    /// Copson exponent c in (1, 2], e.g. 3/2.
    #[arg(long)]
    pub c: Option<String>,
    /// Order α (integer) or power-weight exponent α (rational, gupta family).
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight table. CSV columns: n, value, classical_bound, excess (= value - classical_bound).
    ///
    /// Families: hardy-classical, hardy-mu (--mu), eta (--lambda --c --mu), eta-linear,
    /// sigma (--lambda --mu), gupta (--alpha), copson-tilde, copson-hat, rellich-rho2,
    /// rellich-alpha (--alpha), sigma2 (--delta --mu).
    Weights {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Strict pointwise improvement scan. CSV columns: claim, n_min, n_max, checked, failures, min_gap_n, min_gap, verdict.
    ///
    /// Claims: hardy, eta-linear, copson-tilde, copson-hat, rellich, rellich-alpha:<k>, gupta:<alpha>.
    Scan {
        #[arg(long)]
        claim: String,
        /// First index [default: 1, or 2 for rellich].
        #[arg(long)]
        n_min: Option<u64>,
    },
    /// Identity check on random or file-provided sequences. CSV columns: sequence, support_end, lhs, rhs, residual.
    ///
    /// Identities: hardy (--lambda --c --mu), copson-tilde, copson-hat, rellich (--delta --mu), knopp-rellich (--alpha).
    Verify {
        #[arg(long)]
        identity: String,
        #[command(flatten)]
        seq: SequenceArgs,
        /// Largest index of the random supports.
        #[arg(long, default_value_t = 25)]
        support: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Test sequence A_1, A_2, ... (one `re [im]` per line, A_0 = 0) instead of random ones.
        #[arg(long)]
        sequence_file: Option<String>,
    },
    /// Remainder coefficients with their bounds. CSV columns: n, p_n_p_n1, gamma_sq, p_n_p_n1_p_n2.
    Gamma {
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Remainder sums of the cutoff test sequences. CSV columns: variant, N, remainder_sum, closed_form_bound, terminal_jump, full_sum, identity_residual.
    Criticality {
        /// tilde, hat or both.
        #[arg(long, default_value = "both")]
        variant: String,
        /// Cutoffs N [default: 4,8,16,32,64,128, or powers of two up to --n-max].
        #[arg(long, value_delimiter = ',')]
        cutoffs: Vec<u64>,
    },
    /// Knopp improvement chain. CSV columns: sequence, energy, rho_sum, classical_sum, knopp_sum, knopp_sum_unnormalized.
    Knopp {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, default_value_t = 25)]
        support: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        sequence_file: Option<String>,
    },
}

struct Ctx {
    precision: PrecisionContext,
    bits: u32,
    seed: u64,
    n_max: Option<u64>,
    lambda0: Option<Float>,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Self, CliError> {
        let mut precision = PrecisionContext::with_bits(cli.precision_bits)?;
        if let Some(t) = cli.tolerance {
            precision = precision.with_tolerance_rel(t)?;
        }
        let lambda0 = match &cli.lambda0 {
            Some(s) => Some(Float::with_val(
                cli.precision_bits,
                &parse_rational(s).map_err(usage)?,
            )),
            None => None,
        };
        Ok(Self {
            precision,
            bits: cli.precision_bits,
            seed: cli.seed,
            n_max: cli.n_max,
            lambda0,
        })
    }

    fn sequence(&self, spec: Option<&String>, default: &str) -> Result<PositiveSequence, CliError> {
        parse_sequence_spec(spec.map_or(default, String::as_str), self.bits)
    }

    /// λ or δ, carrying the `--lambda0` boundary value.
    fn edge_sequence(
        &self,
        spec: Option<&String>,
        default: &str,
    ) -> Result<PositiveSequence, CliError> {
        let s = self.sequence(spec, default)?;
        Ok(match &self.lambda0 {
            Some(v) => s.with_zero_value(v.clone())?,
            None => s,
        })
    }

    fn output(&self, command: &str, columns: Vec<&'static str>) -> Output {
        Output::new(command, columns, self.bits)
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn rational_arg(
    value: Option<&String>,
    name: &str,
    default: Option<&str>,
) -> Result<Rational, CliError> {
    let text = value
        .map(String::as_str)
        .or(default)
        .ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn order_arg(value: Option<&String>, default: u32) -> Result<u32, CliError> {
    match value {
        None => Ok(default),
        Some(s) => s.parse::<u32>().ok().filter(|&a| a > 0).ok_or_else(|| {
            CliError::Usage(format!("--alpha must be a positive integer, got {s:?}"))
        }),
    }
}

fn require<'a>(
    value: Option<&'a String>,
    name: &str,
    family: &str,
) -> Result<&'a String, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{family} requires --{name}")))
}

/// Parses and runs `args` (including the program name), writing the table to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = run(cli).and_then(|o| match o.write(cli.format, out) {
        Err(e) if e.is_broken_pipe() => Ok(o),
        Err(e) => Err(e),
        Ok(()) => Ok(o),
    });
    match result {
        Ok(o) => {
            let _ = o.write_diagnostics(err);
            if o.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Executes the command and returns its table and reports.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx::new(cli)?;
    let mut o = match &cli.command {
        Command::Weights { family, seq } => weights(&ctx, family, seq)?,
        Command::Scan { claim, n_min } => scan(&ctx, claim, *n_min)?,
        Command::Verify {
            identity,
            seq,
            support,
            count,
            sequence_file,
        } => verify(
            &ctx,
            identity,
            seq,
            *support,
            *count,
            sequence_file.as_deref(),
        )?,
        Command::Gamma { seq } => gamma(&ctx, seq)?,
        Command::Criticality { variant, cutoffs } => criticality(&ctx, variant, cutoffs)?,
        Command::Knopp {
            seq,
            support,
            count,
            sequence_file,
        } => knopp(&ctx, seq, *support, *count, sequence_file.as_deref())?,
    };
    o.param("precision_bits", ctx.bits);
    o.param("tolerance", format!("{:e}", ctx.precision.tolerance_rel()));
    if let Some(n) = ctx.n_max {
        o.param("n_max", n);
    }
    if let Some(v) = &cli.lambda0 {
        o.param("lambda0", v);
    }
    Ok(o)
}

fn weight_family(
    ctx: &Ctx,
    name: &str,
    seq: &SequenceArgs,
) -> Result<(WeightFamily, Option<WeightFamily>), CliError> {
    Ok(match name {
        "hardy-classical" => (
            WeightFamily::hardy_classical(),
            Some(WeightFamily::hardy_bound()),
        ),
        "hardy-mu" => {
            let mu = ctx.sequence(Some(require(seq.mu.as_ref(), "mu", name)?), "")?;
            (
                WeightFamily::hardy_mu(mu),
                Some(WeightFamily::hardy_bound()),
            )
        }
        "eta" => {
            let lambda =
                ctx.edge_sequence(Some(require(seq.lambda.as_ref(), "lambda", name)?), "")?;
            let c = rational_arg(seq.c.as_ref(), "c", None)?;
            discrete_hardy::operators::check_copson_exponent(&c)?;
            let mu = ctx.sequence(Some(require(seq.mu.as_ref(), "mu", name)?), "")?;
            (WeightFamily::eta(lambda, c, mu), None)
        }
        "eta-linear" => (
            WeightFamily::eta_linear(),
            Some(WeightFamily::generalized_hardy_bound()),
        ),
        "sigma" => {
            let lambda =
                ctx.edge_sequence(Some(require(seq.lambda.as_ref(), "lambda", name)?), "")?;
            let mu = ctx.sequence(Some(require(seq.mu.as_ref(), "mu", name)?), "")?;
            (WeightFamily::sigma(lambda, mu), None)
        }
        "gupta" => {
            let alpha = rational_arg(seq.alpha.as_ref(), "alpha", None)?;
            (
                WeightFamily::gupta(alpha.clone()),
                Some(WeightFamily::gupta_bound(alpha)),
            )
        }
        "copson-tilde" => (
            WeightFamily::copson_tilde(),
            Some(WeightFamily::copson_tilde_bound()),
        ),
        "copson-hat" => (
            WeightFamily::copson_hat(),
            Some(WeightFamily::copson_hat_bound()),
        ),
        "rellich-rho2" => (
            WeightFamily::rellich_rho2(),
            Some(WeightFamily::rellich_bound()),
        ),
        "rellich-alpha" => {
            let k = order_arg(seq.alpha.as_ref(), 2)?;
            (
                WeightFamily::rellich_rho_alpha(k),
                Some(WeightFamily::rellich_alpha_bound(k)),
            )
        }
        "sigma2" => {
            let delta = ctx.edge_sequence(Some(require(seq.delta.as_ref(), "delta", name)?), "")?;
            let mu = ctx.sequence(Some(require(seq.mu.as_ref(), "mu", name)?), "")?;
            (WeightFamily::sigma2(delta, mu), None)
        }
        _ => return Err(CliError::Usage(format!("unknown weight family `{name}`"))),
    })
}

fn weights(ctx: &Ctx, name: &str, seq: &SequenceArgs) -> Result<Output, CliError> {
    let (family, bound) = weight_family(ctx, name, seq)?;
    let n_max = ctx.n_max.unwrap_or(10);
    let bits = ctx.bits;
    let mut o = ctx.output("weights", vec!["n", "value", "classical_bound", "excess"]);
    o.param("family", name);
    for (k, v) in family.params() {
        o.param(k, v);
    }
    if name == "gupta" {
        let alpha = rational_arg(seq.alpha.as_ref(), "alpha", None)?;
        if !gupta_validity(&alpha) {
            let mut r = VerificationReport::new("gupta", format!("alpha={alpha}"), 0.0, bits);
            r.flag("alpha outside {0} and [1/3, 1): the improvement is not established here");
            o.reports.push(r);
        }
    }
    for n in family.n_min()..=n_max {
        let value = family.eval(n, bits)?;
        let row = match &bound {
            Some(b) => {
                let b = b.eval(n, bits)?;
                let excess = Float::with_val(bits, &value - &b);
                vec![Cell::Int(n), value.into(), b.into(), excess.into()]
            }
            None => vec![Cell::Int(n), value.into(), Cell::Empty, Cell::Empty],
        };
        o.rows.push(row);
    }
    Ok(o)
}

fn scan(ctx: &Ctx, name: &str, n_min: Option<u64>) -> Result<Output, CliError> {
    let claim = improvement_claim(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown claim `{name}`; expected one of {}",
            discrete_hardy::verification::scan::CLAIM_NAMES.join(", ")
        ))
    })?;
    let lo = n_min
        .unwrap_or(1)
        .max(claim.weight.n_min())
        .max(claim.bound.n_min());
    let hi = ctx.n_max.unwrap_or(claim.default_n_max);
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {lo}..={hi}")));
    }
    let report = pointwise_scan(&claim.weight, &claim.bound, lo..=hi, &ctx.precision)?;
    let mut o = ctx.output(
        "scan",
        vec![
            "claim",
            "n_min",
            "n_max",
            "checked",
            "failures",
            "min_gap_n",
            "min_gap",
            "verdict",
        ],
    );
    o.param("claim", name);
    let (gap_n, gap) = match &report.min_gap {
        Some(g) => (Cell::Int(g.index), Cell::Small(g.value)),
        None => (Cell::Empty, Cell::Empty),
    };
    let verdict = if report.passed() { "pass" } else { "fail" };
    o.rows.push(vec![
        Cell::Text(name.to_string()),
        Cell::Int(lo),
        Cell::Int(hi),
        Cell::Int(report.checked),
        Cell::Int(report.failures),
        gap_n,
        gap,
        Cell::Text(verdict.into()),
    ]);
    o.reports.push(report);
    Ok(o)
}

fn identity(ctx: &Ctx, name: &str, seq: &SequenceArgs) -> Result<Identity, CliError> {
    Ok(match name {
        "hardy" => {
            let c = rational_arg(seq.c.as_ref(), "c", Some("2"))?;
            discrete_hardy::operators::check_copson_exponent(&c)?;
            Identity::Hardy {
                lambda: ctx.edge_sequence(seq.lambda.as_ref(), "ones")?,
                c,
                mu: ctx.sequence(seq.mu.as_ref(), "pow:1/2")?,
            }
        }
        "copson-tilde" => Identity::CopsonTilde,
        "copson-hat" => Identity::CopsonHat,
        "rellich" => Identity::Rellich {
            delta: ctx.edge_sequence(seq.delta.as_ref(), "shifted")?,
            mu: ctx.sequence(seq.mu.as_ref(), "pow:3/2")?,
        },
        "knopp-rellich" => Identity::KnoppRellich { alpha: order_arg(seq.alpha.as_ref(), 2)? },
        _ => return Err(CliError::Usage(format!("unknown identity `{name}`; expected hardy, copson-tilde, copson-hat, rellich or knopp-rellich"))),
    })
}

/// The file sequence, or `count` seeded random ones with `prefix` boundary zeros.
fn test_sequences(
    ctx: &Ctx,
    file: Option<&str>,
    prefix: usize,
    support: usize,
    count: usize,
) -> Result<(Vec<FiniteSequence>, Option<u64>), CliError> {
    match file {
        Some(path) => {
            let a = read_test_sequence(path, ctx.bits)?;
            a.require_zero_prefix(prefix)?;
            Ok((vec![a], None))
        }
        None => {
            if support < prefix {
                return Err(CliError::Usage(format!(
                    "--support {support} leaves no free entries after {prefix} boundary zeros"
                )));
            }
            Ok((
                random_sequences(ctx.seed, count, ctx.bits, prefix, support),
                Some(ctx.seed),
            ))
        }
    }
}

fn verify(
    ctx: &Ctx,
    name: &str,
    seq: &SequenceArgs,
    support: usize,
    count: usize,
    file: Option<&str>,
) -> Result<Output, CliError> {
    let id = identity(ctx, name, seq)?;
    let (sequences, seed) = test_sequences(ctx, file, id.zero_prefix(), support, count)?;
    let max_support = sequences
        .iter()
        .map(FiniteSequence::support_end)
        .max()
        .unwrap_or(0)
        .max(support);
    let report = check_sequences(&id, &sequences, &ctx.precision, seed, max_support)?;
    let mut o = ctx.output(
        "verify",
        vec!["sequence", "support_end", "lhs", "rhs", "residual"],
    );
    o.seed = seed;
    o.param("identity", id.name());
    o.param("count", sequences.len());
    o.param("support", max_support);
    for (i, a) in sequences.iter().enumerate() {
        let (lhs, rhs) = identity_sides(&id, a, &ctx.precision)?;
        let residual =
            discrete_hardy::precision::relative_residual(&lhs, &rhs, ctx.precision.tolerance_abs());
        o.rows.push(vec![
            Cell::Int(i as u64),
            Cell::Int(a.support_end() as u64),
            lhs.into(),
            rhs.into(),
            Cell::Small(residual),
        ]);
    }
    o.reports.push(report);
    Ok(o)
}

fn gamma(ctx: &Ctx, seq: &SequenceArgs) -> Result<Output, CliError> {
    let delta = ctx.edge_sequence(seq.delta.as_ref(), "shifted")?;
    let mu = ctx.sequence(seq.mu.as_ref(), "pow:3/2")?;
    let n_max = ctx.n_max.unwrap_or(100);
    let check = gamma_bounds_check(&delta, &mu, n_max, ctx.bits)?;
    let mut o = ctx.output("gamma", vec!["n", "p_n_p_n1", "gamma_sq", "p_n_p_n1_p_n2"]);
    o.param("delta", delta.label());
    o.param("mu", mu.label());
    for r in check.rows {
        o.rows.push(vec![
            Cell::Int(r.n),
            r.lower.into(),
            r.gamma_sq.into(),
            r.upper.into(),
        ]);
    }
    o.reports.push(check.report);
    Ok(o)
}

fn criticality(ctx: &Ctx, variant: &str, cutoffs: &[u64]) -> Result<Output, CliError> {
    let variants = match variant {
        "both" => vec![Variant::Tilde, Variant::Hat],
        v => vec![v.parse::<Variant>().map_err(usage)?],
    };
    let cutoffs: Vec<u64> = if !cutoffs.is_empty() {
        cutoffs.to_vec()
    } else if let Some(n) = ctx.n_max {
        (2..=63)
            .map(|k| 1u64 << k)
            .take_while(|&c| c <= n)
            .collect()
    } else {
        vec![4, 8, 16, 32, 64, 128]
    };
    if cutoffs.is_empty() || cutoffs.iter().any(|&c| c < 2) {
        return Err(CliError::Usage("cutoffs must be at least 2".into()));
    }
    let mut o = ctx.output(
        "criticality",
        vec![
            "variant",
            "N",
            "remainder_sum",
            "closed_form_bound",
            "terminal_jump",
            "full_sum",
            "identity_residual",
        ],
    );
    o.param("variant", variant);
    o.param("cutoffs", format!("{cutoffs:?}"));
    for v in variants {
        let d = criticality_decay(v, &cutoffs, &ctx.precision)?;
        for r in d.rows {
            o.rows.push(vec![
                Cell::Text(v.name().into()),
                Cell::Int(r.cutoff),
                r.window_sum.into(),
                r.bound.into(),
                r.terminal_jump.into(),
                r.full_sum.into(),
                Cell::Small(r.identity_residual),
            ]);
        }
        o.reports.push(d.report);
    }
    Ok(o)
}

fn knopp(
    ctx: &Ctx,
    seq: &SequenceArgs,
    support: usize,
    count: usize,
    file: Option<&str>,
) -> Result<Output, CliError> {
    let alpha = order_arg(seq.alpha.as_ref(), 2)?;
    let (sequences, seed) = test_sequences(ctx, file, alpha as usize, support, count)?;
    let mut o = ctx.output(
        "knopp",
        vec![
            "sequence",
            "energy",
            "rho_sum",
            "classical_sum",
            "knopp_sum",
            "knopp_sum_unnormalized",
        ],
    );
    o.seed = seed;
    o.param("alpha", alpha);
    o.param("count", sequences.len());
    for (i, a) in sequences.iter().enumerate() {
        let chain = knopp_improvement_chain(alpha, a, &ctx.precision)?;
        let mut report = chain.report;
        report.name = format!("{} sequence {i}", report.name);
        o.rows.push(vec![
            Cell::Int(i as u64),
            chain.energy.into(),
            chain.rho_sum.into(),
            chain.classical_sum.into(),
            chain.knopp_sum.into(),
            chain.knopp_sum_unnormalized.map_or(Cell::Empty, Cell::Real),
        ]);
        o.reports.push(report);
    }
    let max_support = sequences
        .iter()
        .map(FiniteSequence::support_end)
        .max()
        .unwrap_or(0);
    o.reports.push(check_sequences(
        &Identity::KnoppRellich { alpha },
        &sequences,
        &ctx.precision,
        seed,
        max_support,
    )?);
    // One note for the conjectural orders instead of one per sequence.
    let mut seen = false;
    for r in &mut o.reports {
        if r.flags
            .iter()
            .any(|f| f == discrete_hardy::verification::knopp::CONJECTURE_FLAG)
        {
            if seen {
                r.flags.clear();
            }
            seen = true;
        }
    }
    Ok(o)
}
