mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use inducibility::bounds::{
    construction_density, limit_density_complete, lower_bound_a5, lower_bound_q4, maximize_small,
    verify_minimal_polynomial, OptimizeConfig,
};
use inducibility::count::{
    binomial, count, count_by_subsets, count_qk_complete, count_sk_complete, density, PatternSpec,
};
use inducibility::envelope::{brute_cap, brute_max, EnvelopeCache, EnvelopeTable, Mode, ENVELOPE_MAX_N};
use inducibility::{build, enumerate_trees, Arity, CanonicalTree, ConstructionParams};
use rug::{Float, Integer, Rational};
use serde_json::{json, Value};

use inducibility::count::to_decimal as decimal;
use output::{parse_n_list, render, render_record, Format};

#[derive(Parser, Debug)]
#[command(
    name = "inducibility",
    version,
    about = "Leaf-induced subtree counts, maximal pattern densities and inducibility bounds"
)]
struct Cli {
    /// Directory holding envelope cache files.
    #[arg(long, global = true, env = "INDUCIBILITY_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Decimal digits for high-precision values (at least 15).
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(15..))]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build L(1..n) and report the maximum at n.
    Envelope(EnvelopeArgs),
    /// Maximum densities for a list of n.
    Table(TableArgs),
    /// Oracle comparisons against brute force.
    Verify(VerifyArgs),
    /// Lower bounds, limits and the minimal-polynomial check.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Exact density of a pattern in a constructed tree.
    Density {
        /// E2:n, E3:n, CD:d,h, Star:k, F:n, S:n1,n2,n3,n4, W:h or T3:n1,n2.
        #[arg(long)]
        construction: ConstructionParams,
        #[arg(long, default_value = "A5")]
        pattern: PatternSpec,
    },
    /// All trees with n leaves.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// 2, 3 or any.
        #[arg(long, default_value = "2")]
        arity: Arity,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
    },
    /// Copies and density of a pattern in one tree.
    Count {
        #[arg(long, default_value = "A5")]
        pattern: PatternSpec,
        /// Tree in parentheses format.
        #[arg(long, conflicts_with = "construction", required_unless_present = "construction")]
        tree: Option<CanonicalTree>,
        #[arg(long)]
        construction: Option<ConstructionParams>,
        /// Also count by enumerating all leaf subsets.
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Args, Debug)]
struct ModeArgs {
    /// a5, q4 or gen:<tree>.
    #[arg(long, default_value = "a5")]
    mode: Mode,
    /// Lift the default size caps (a5: 300, q4: 200, general: 300).
    #[arg(long)]
    unsafe_large: bool,
}

impl ModeArgs {
    fn cap(&self) -> usize {
        if self.unsafe_large {
            return ENVELOPE_MAX_N;
        }
        match self.mode {
            Mode::Q4Ternary => 200,
            _ => 300,
        }
    }
}

#[derive(Args, Debug)]
struct EnvelopeArgs {
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long)]
    n: usize,
    /// Also print one tree attaining the maximum.
    #[arg(long)]
    witness: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// Comma-separated values and inclusive ranges a..b or a..b:step.
    #[arg(long, default_value = "5..10")]
    n_list: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Formula {
    Qk,
    Sk,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "formula")]
    mode: Option<Mode>,
    #[arg(long, default_value_t = 11)]
    max_n: usize,
    #[arg(long, requires_all = ["d", "k", "h"])]
    formula: Option<Formula>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    h: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// 5! max F by multi-start ascent and Newton polishing.
    A5Lower {
        #[arg(long, default_value_t = 1024)]
        starts: usize,
    },
    /// 4! max f, exactly.
    Q4Lower,
    /// Check the A5 lower bound against the stored degree-16 polynomial.
    VerifyMinpoly {
        #[arg(long, default_value_t = 1024)]
        starts: usize,
    },
    /// Limit densities along complete trees.
    Limits,
    /// Lower bounds together with the upper bounds from the cache.
    Summary {
        /// Restrict to one mode (a5 or q4).
        #[arg(long)]
        mode: Option<Mode>,
        /// Upper bound at this n instead of the largest cached one.
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Headline sizes of the published upper bounds.
fn headline_n(mode: &Mode) -> usize {
    match mode {
        Mode::Q4Ternary => 500,
        _ => 2000,
    }
}

fn frac(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn float_str(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

/// Float printed in plain positional notation with `places` decimals.
fn fixed(x: &Float, places: usize) -> String {
    let r = x.to_rational().expect("finite");
    decimal(&r, places as u32)
}

struct Ctx {
    cache: Option<EnvelopeCache>,
    format: Format,
    digits: u32,
}

impl Ctx {
    fn table(&self, mode: &Mode) -> EnvelopeTable {
        let t = EnvelopeTable::new(mode.clone());
        match &self.cache {
            Some(c) => t.with_cache(c.clone()),
            None => t,
        }
    }
}

/// Printed output and whether every check passed.
type Outcome = (String, bool);

fn run_envelope(ctx: &Ctx, args: &EnvelopeArgs) -> Result<Outcome> {
    let cap = args.mode.cap();
    if args.n > cap {
        bail!(
            "n = {} exceeds the cap {cap} for mode {}; pass --unsafe-large to lift it",
            args.n,
            args.mode.mode
        );
    }
    if args.n == 0 {
        bail!("n must be positive");
    }
    let mode = &args.mode.mode;
    let mut table = ctx.table(mode);
    let list = table.envelope(args.n)?.clone();
    let density = table.max_density(args.n)?;
    let mut fields = vec![
        ("mode", json!(mode.tag())),
        ("n", json!(args.n)),
        ("envelope_size", json!(list.len())),
        ("max_count", json!(list.max_primary().to_string())),
        ("density_exact", json!(frac(&density))),
        ("density_decimal", json!(decimal(&density, 6))),
    ];
    if let Some(c) = &ctx.cache {
        fields.push(("cache_file", json!(c.path(mode, args.n).display().to_string())));
    }
    if args.witness {
        let tree = table.witness(args.n, 0)?;
        let check = count(&mode.pattern_spec(), &tree)?;
        if check != list.max_primary() {
            bail!("witness tree has {check} copies, expected {}", list.max_primary());
        }
        fields.push(("witness", json!(tree.key())));
    }
    Ok((render_record(ctx.format, &fields), true))
}

fn run_table(ctx: &Ctx, args: &TableArgs) -> Result<Outcome> {
    let ns = parse_n_list(&args.n_list)?;
    let cap = args.mode.cap();
    let mode = &args.mode.mode;
    let mut table = ctx.table(mode);
    let mut rows = Vec::new();
    let mut truncated = None;
    for &n in &ns {
        if n > cap {
            truncated = Some(n);
            break;
        }
        if n == 0 {
            bail!("n must be positive");
        }
        let d = table.max_density(n)?;
        rows.push(vec![
            n.to_string(),
            table.max_count(n)?.to_string(),
            frac(&d),
            decimal(&d, 6),
        ]);
    }
    let mut out = render(
        ctx.format,
        &["n", "max_count", "density_exact", "density_decimal"],
        &rows,
    );
    if let Some(n) = truncated {
        // Stays on stdout so that a saved table carries the marker.
        out.push_str(&format!(
            "# truncated at n = {n}: cap {cap} for mode {mode}; pass --unsafe-large\n"
        ));
    }
    Ok((out, truncated.is_none()))
}

struct Checks {
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, pass: bool, what: String) {
        self.ok &= pass;
        self.lines
            .push(format!("{} {what}", if pass { "PASS" } else { "FAIL" }));
    }

    fn finish(self) -> Outcome {
        let mut s = self.lines.join("\n");
        s.push_str(&format!(
            "\n{}\n",
            if self.ok {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        ));
        (s, self.ok)
    }
}

fn run_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<Outcome> {
    let mut checks = Checks::new();
    if let Some(formula) = args.formula {
        let (d, k, h) = (args.d.unwrap(), args.k.unwrap(), args.h.unwrap());
        let tree = build(&ConstructionParams::Complete { d, h })?;
        let (pattern, closed) = match formula {
            Formula::Qk => (PatternSpec::qk(k)?, count_qk_complete(d, k, h)),
            Formula::Sk => (PatternSpec::star(k)?, count_sk_complete(d, k, h)),
        };
        let brute = count_by_subsets(pattern.tree(), &tree)?;
        let rec = count(&pattern, &tree)?;
        checks.check(
            closed == brute,
            format!("{formula:?} d={d} k={k} h={h}: closed form {closed} vs brute force {brute}"),
        );
        checks.check(
            rec == brute,
            format!("{formula:?} d={d} k={k} h={h}: recursion {rec} vs brute force {brute}"),
        );
        return Ok(checks.finish());
    }
    let mode = args.mode.clone().unwrap_or(Mode::A5Binary);
    let cap = brute_cap(mode.arity());
    if args.max_n > cap {
        bail!(
            "--max-n {} exceeds the brute-force cap {cap} for mode {mode}",
            args.max_n
        );
    }
    let mut table = ctx.table(&mode);
    for n in 1..=args.max_n {
        let env = table.max_count(n)?;
        let brute = brute_max(n, &mode)?;
        checks.check(
            env == brute,
            format!("{mode} n={n}: envelope max {env} vs brute-force max {brute}"),
        );
    }
    let pattern = mode.pattern_spec();
    let companion = pattern.companion().expect("modes have companions");
    for n in 1..=args.max_n.min(9) {
        let trees = enumerate_trees(n, mode.arity())?;
        let mut agree = true;
        for t in &trees {
            for p in [&pattern, &companion] {
                agree &= count(p, t)? == count_by_subsets(p.tree(), t)?;
            }
        }
        checks.check(
            agree,
            format!("{mode} n={n}: recursion vs subset counts on {} trees", trees.len()),
        );
    }
    Ok(checks.finish())
}

fn lower_a5_fields(ctx: &Ctx, starts: usize) -> Result<(Vec<(&'static str, Value)>, Float)> {
    let (bound, m) = lower_bound_a5(OptimizeConfig {
        starts,
        digits: ctx.digits,
    })?;
    let d = ctx.digits;
    let fields = vec![
        ("quantity", json!("A5 lower bound 5! max F")),
        ("value_decimal", json!(fixed(&bound, 12))),
        ("value_high_precision", json!(float_str(&bound, d))),
        ("max_F", json!(float_str(&m.max, d))),
        (
            "argmax",
            json!(m.argmax.iter().map(|x| float_str(x, d)).collect::<Vec<_>>()),
        ),
        (
            "mirror_argmax",
            json!(m.mirror.iter().map(|x| float_str(x, d)).collect::<Vec<_>>()),
        ),
        (
            "residuals",
            json!({ "gradient_max_abs": float_str(&m.gradient_residual, 6) }),
        ),
        ("hessian_negative_definite", json!(m.negative_definite)),
        ("starts", json!(m.starts)),
        ("starts_in_best_basin", json!(m.starts_in_basin)),
        ("digits", json!(d)),
        (
            "note",
            json!("best local maximum over the start set; global optimality is not certified"),
        ),
    ];
    Ok((fields, bound))
}

fn q4_lower_fields() -> Vec<(&'static str, Value)> {
    let (x, v) = maximize_small();
    let bound = lower_bound_q4();
    vec![
        ("quantity", json!("Q4 lower bound 4! max f")),
        ("value_exact", json!(frac(&bound))),
        ("value_decimal", json!(decimal(&bound, 12))),
        ("argmax", json!(frac(&x))),
        ("max_f", json!(frac(&v))),
        ("residuals", json!({ "derivative_at_argmax": "0" })),
    ]
}

/// Upper bound for `mode` from the cache: L(n) is read, never computed.
fn cached_upper(ctx: &Ctx, mode: &Mode, n: Option<usize>) -> Result<(usize, Rational)> {
    let cache = ctx
        .cache
        .as_ref()
        .ok_or_else(|| anyhow!("no cache directory given (--cache or INDUCIBILITY_CACHE_DIR)"))?;
    let n = match n {
        Some(n) => n,
        None => cache
            .largest_cached(mode)
            .ok_or_else(|| anyhow!("no cached envelopes for mode {mode} in {}", cache.root().display()))?,
    };
    let list = cache.load(mode, n)?.ok_or_else(|| {
        anyhow!(
            "L({n}) for mode {mode} is not cached; run `envelope --mode {} --n {n}`",
            mode.dir_name()
        )
    })?;
    let k = mode.pattern_size();
    if n < k {
        bail!("n = {n} is below the pattern size {k}");
    }
    Ok((n, Rational::from((Integer::from(list.max_primary()), binomial(n, k)))))
}

fn run_bounds(ctx: &Ctx, which: &BoundsCommand) -> Result<Outcome> {
    match which {
        BoundsCommand::A5Lower { starts } => {
            let (fields, _) = lower_a5_fields(ctx, *starts)?;
            Ok((render_record(ctx.format, &fields), true))
        }
        BoundsCommand::Q4Lower => Ok((render_record(ctx.format, &q4_lower_fields()), true)),
        BoundsCommand::VerifyMinpoly { starts } => {
            let (_, bound) = lower_a5_fields(ctx, *starts)?;
            let r = verify_minimal_polynomial(&bound)?;
            let fields = vec![
                ("candidate", json!(float_str(&bound, ctx.digits))),
                ("value_decimal", json!(fixed(&bound, 12))),
                ("residuals", json!({ "newton": float_str(&r.newton_residual, 6) })),
                ("sign_below", json!(r.sign_below)),
                ("sign_above", json!(r.sign_above)),
                ("sign_change", json!(r.sign_change)),
                ("passes", json!(r.passes)),
            ];
            Ok((render_record(ctx.format, &fields), r.passes))
        }
        BoundsCommand::Limits => {
            let mut rows = Vec::new();
            for (name, d) in [("Q4", 3), ("A5", 2)] {
                let l = limit_density_complete(name)?;
                rows.push(vec![name.to_string(), format!("CD{d}"), frac(&l), decimal(&l, 12)]);
            }
            Ok((
                render(ctx.format, &["pattern", "trees", "value_exact", "value_decimal"], &rows),
                true,
            ))
        }
        BoundsCommand::Summary { mode, n } => {
            let modes = match mode {
                Some(m @ (Mode::A5Binary | Mode::Q4Ternary)) => vec![m.clone()],
                Some(other) => bail!("summary covers a5 and q4 only, not {other}"),
                None => vec![Mode::A5Binary, Mode::Q4Ternary],
            };
            let mut rows = Vec::new();
            for m in &modes {
                let (lower_exact, lower_dec, lower_src) = match m {
                    Mode::A5Binary => {
                        let (_, b) = lower_a5_fields(ctx, 1024)?;
                        (String::new(), fixed(&b, 12), "bounds a5-lower")
                    }
                    _ => {
                        let b = lower_bound_q4();
                        (frac(&b), decimal(&b, 12), "bounds q4-lower")
                    }
                };
                let (un, upper) = cached_upper(ctx, m, *n)?;
                let note = if un < headline_n(m) {
                    format!(
                        "largest cached n is {un}; the headline bound uses n = {}",
                        headline_n(m)
                    )
                } else {
                    String::new()
                };
                rows.push(vec![
                    m.tag(),
                    "lower".into(),
                    String::new(),
                    lower_exact,
                    lower_dec,
                    lower_src.into(),
                    String::new(),
                ]);
                rows.push(vec![
                    m.tag(),
                    "upper".into(),
                    un.to_string(),
                    frac(&upper),
                    decimal(&upper, 12),
                    "envelope cache".into(),
                    note,
                ]);
            }
            let cols = ["mode", "bound", "n", "value_exact", "value_decimal", "source", "note"];
            Ok((render(ctx.format, &cols, &rows), true))
        }
    }
}

fn run_density(ctx: &Ctx, construction: &ConstructionParams, pattern: &PatternSpec) -> Result<Outcome> {
    let d = construction_density(construction, pattern)?;
    let fields = vec![
        ("construction", json!(construction.to_string())),
        ("pattern", json!(pattern.to_string())),
        ("leaves", json!(construction.leaf_count())),
        ("value_exact", json!(frac(&d))),
        ("value_decimal", json!(decimal(&d, 12))),
    ];
    Ok((render_record(ctx.format, &fields), true))
}

fn run_enumerate(ctx: &Ctx, n: usize, arity: Arity, count_only: bool) -> Result<Outcome> {
    let trees = enumerate_trees(n, arity)?;
    if count_only {
        let fields = [
            ("n", json!(n)),
            ("arity", json!(arity.to_string())),
            ("trees", json!(trees.len())),
        ];
        return Ok((render_record(ctx.format, &fields), true));
    }
    let rows: Vec<Vec<String>> = trees.iter().map(|t| vec![t.key().to_owned()]).collect();
    Ok((render(ctx.format, &["tree"], &rows), true))
}

fn run_count(
    ctx: &Ctx,
    pattern: &PatternSpec,
    tree: Option<&CanonicalTree>,
    construction: Option<&ConstructionParams>,
    brute: bool,
) -> Result<Outcome> {
    let tree = match (tree, construction) {
        (Some(t), _) => t.clone(),
        (None, Some(c)) => build(c)?,
        (None, None) => bail!("give --tree or --construction"),
    };
    let c = count(pattern, &tree)?;
    let d = density(pattern, &tree)?;
    let mut fields = vec![
        ("pattern", json!(pattern.to_string())),
        ("leaves", json!(tree.leaf_count())),
        ("count", json!(c.to_string())),
        ("density_exact", json!(frac(&d))),
        ("density_decimal", json!(decimal(&d, 12))),
    ];
    let mut ok = true;
    if brute {
        let b = count_by_subsets(pattern.tree(), &tree)?;
        ok = b == c;
        fields.push(("brute_force_count", json!(b.to_string())));
    }
    Ok((render_record(ctx.format, &fields), ok))
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(t) = cli.threads {
        inducibility::configure_threads(t as usize)?;
    }
    let cache = match &cli.cache {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
            Some(EnvelopeCache::new(dir))
        }
        None => None,
    };
    let ctx = Ctx {
        cache,
        format: cli.format,
        digits: cli.digits,
    };
    match &cli.command {
        Command::Envelope(a) => run_envelope(&ctx, a),
        Command::Table(a) => run_table(&ctx, a),
        Command::Verify(a) => run_verify(&ctx, a),
        Command::Bounds { which } => run_bounds(&ctx, which),
        Command::Density { construction, pattern } => run_density(&ctx, construction, pattern),
        Command::Enumerate { n, arity, count_only } => run_enumerate(&ctx, *n, *arity, *count_only),
        Command::Count {
            pattern,
            tree,
            construction,
            brute,
        } => run_count(&ctx, pattern, tree.as_ref(), construction.as_ref(), *brute),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
