//! `monodromy` command-line tool.

mod svg;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monodromy::certify::{default_base, lasso_avoiding, verdict_from_orders, SCHEMA_VERSION};
use monodromy::family::DEFAULT_BRANCH_TOL;
use monodromy::format::{self, parse_complex};
use monodromy::path::default_lasso_radius;
use monodromy::tracker::roots_at;
use monodromy::{
    abel_certificate_at, evaluate_tower, monodromy_report, track, track_tower, CoeffPath, Complex,
    Lasso, ParamPath, PermSet, Permutation, PolyFamily, RadicalFormula, TrackOptions,
};

const PATH_HELP: &str = "\
Paths: either --path with a JSON array of segments
  {\"type\":\"line\",\"from\":[re,im],\"to\":[re,im]}
  {\"type\":\"arc\",\"center\":[re,im],\"radius\":r,\"angle_from\":t0,\"angle_to\":t1}
(angles in radians, counterclockwise when t1 > t0; consecutive segments must join),
or a lasso: --base B --around P [--radius R] [--turns N].";

const FORMULA_HELP: &str = "\
Formulas: one level per line or ';'-separated, `zj = expr` or `zj^k = expr`,
where level j may use a0, a1, .. and z1 .. z(j-1), e.g.
  \"z1^2 = a0^2 - 4; z2^3 = (-a0 + z1)/2; z3 = z2 + 1/z2\"";

#[derive(Parser)]
#[command(name = "monodromy", version, about = "Numerical monodromy of polynomial families p_a(z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameter values where p_a has a multiple root.
    BranchPoints {
        #[command(flatten)]
        family: FamilyArg,
        /// Clustering and verification tolerance.
        #[arg(long, default_value_t = DEFAULT_BRANCH_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Continue the roots along a parameter path.
    #[command(after_help = PATH_HELP)]
    Track {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Lasso permutations around every branch point and the group they generate.
    Monodromy {
        #[command(flatten)]
        family: FamilyArg,
        /// Base point; chosen away from the branch points when omitted.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monodromy group with its commutator-closure series and verdict.
    Certify {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long, default_value_t = monodromy::certify::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate every branch of a radical formula at one parameter value.
    #[command(after_help = FORMULA_HELP)]
    RadicalEval {
        #[command(flatten)]
        formula: FormulaArgs,
        /// Value of the parameter a.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        at: String,
        /// Report how far each root of this family is from the top-level values.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Whether a closed path returns every branch of a radical formula to itself.
    #[command(after_help = format!("{FORMULA_HELP}\n\n{PATH_HELP}"))]
    Cautious {
        #[command(flatten)]
        formula: FormulaArgs,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Group generated by permutations in cycle notation.
    Perm {
        /// Number of points.
        #[arg(long)]
        degree: usize,
        /// Generator in 1-based cycle notation, e.g. "(1 2 3)(4 5)"; repeatable.
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = monodromy::certify::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct FamilyArg {
    /// Family literal in z and a, e.g. "z^5 - 5*z + a".
    #[arg(long, allow_hyphen_values = true)]
    family: String,
}

/// Either an explicit JSON path or a lasso around one point.
#[derive(Args)]
struct PathArgs {
    /// JSON array of line/arc segments, or @FILE.
    #[arg(long, conflicts_with_all = ["around", "radius", "turns"], required_unless_present = "around")]
    path: Option<String>,
    /// Lasso base point.
    #[arg(long, allow_hyphen_values = true, requires = "around")]
    base: Option<String>,
    /// Lasso target point.
    #[arg(long, allow_hyphen_values = true, requires = "base")]
    around: Option<String>,
    /// Lasso circle radius.
    #[arg(long, requires = "around")]
    radius: Option<f64>,
    /// Signed number of counterclockwise turns.
    #[arg(long, requires = "around", allow_hyphen_values = true, default_value_t = 1)]
    turns: i32,
}

#[derive(Args)]
struct FormulaArgs {
    /// Radical formula, one level per line or ';'-separated, or @FILE.
    #[arg(long, allow_hyphen_values = true)]
    formula: String,
    /// Comma-separated coefficients a0, a1, .. as expressions in a.
    #[arg(long, allow_hyphen_values = true, default_value = "a")]
    coeffs: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

/// Failure of the computation itself, reported with exit status 1.
struct DomainError(String);

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

type Outcome = Result<String, DomainError>;

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn require_format(format: Format, allowed: &[Format], flag_context: &str) {
    if !allowed.contains(&format) {
        let names: Vec<_> = allowed
            .iter()
            .map(|f| f.to_possible_value().expect("no skipped variants").get_name().to_string())
            .collect();
        usage_error(
            ErrorKind::InvalidValue,
            format!("--format for {flag_context} must be one of: {}", names.join(", ")),
        );
    }
}

/// Reads `@FILE` arguments; other values are returned unchanged.
fn literal(value: &str, flag: &str) -> String {
    match value.strip_prefix('@') {
        Some(file) => std::fs::read_to_string(file)
            .unwrap_or_else(|e| usage_error(ErrorKind::Io, format!("{flag}: cannot read {file}: {e}"))),
        None => value.to_string(),
    }
}

fn complex_arg(value: &str, flag: &str) -> Complex {
    parse_complex(value)
        .unwrap_or_else(|e| usage_error(ErrorKind::InvalidValue, format!("invalid value '{value}' for {flag}: {e}")))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn complex_list(points: &[Complex]) -> Vec<String> {
    points.iter().map(|&z| format::complex(z)).collect()
}

/// Snaps `target` onto the nearest excluded point when it is within
/// rounding distance, so a lasso given as "2" circles the branch point 2.
fn snap_to(target: Complex, excluded: &[Complex]) -> Complex {
    excluded
        .iter()
        .copied()
        .filter(|b| (b - target).norm() <= 1e-6 * target.norm().max(1.0))
        .min_by(|x, y| (x - target).norm().total_cmp(&(y - target).norm()))
        .unwrap_or(target)
}

/// The path described by `--path` or the lasso flags. `excluded` are points
/// the lasso approach detours around.
fn build_path(args: &PathArgs, excluded: &[Complex]) -> Result<ParamPath, DomainError> {
    if let Some(p) = &args.path {
        return Ok(ParamPath::from_json(&literal(p, "--path"))?);
    }
    let base = complex_arg(args.base.as_deref().expect("clap enforces --base"), "--base");
    let around = complex_arg(args.around.as_deref().expect("clap enforces --around"), "--around");
    let target = snap_to(around, excluded);
    let radius = args
        .radius
        .unwrap_or_else(|| default_lasso_radius(base, target, excluded));
    if excluded.is_empty() {
        Ok(Lasso::new(base, target, radius, args.turns).compile()?)
    } else {
        Ok(lasso_avoiding(base, target, excluded, radius, args.turns)?)
    }
}

fn parse_family(arg: &FamilyArg) -> Result<PolyFamily, DomainError> {
    Ok(PolyFamily::parse(&arg.family)?)
}

fn parse_formula(args: &FormulaArgs) -> Result<(RadicalFormula, Vec<String>), DomainError> {
    let rf = RadicalFormula::parse(&literal(&args.formula, "--formula"))?;
    let coeffs = args.coeffs.split(',').map(|s| s.trim().to_string()).collect();
    Ok((rf, coeffs))
}

fn cmd_branch_points(arg: &FamilyArg, tol: f64, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "branch-points");
    let f = parse_family(arg)?;
    let b = f.branch_points(tol)?;
    Ok(match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": f.to_string(),
            "branch_points": complex_list(&b.points),
            "degenerate_points": complex_list(&b.degenerate),
            "residual": format::real(b.residual),
        })),
        _ => {
            let mut out = String::new();
            for &p in &b.points {
                let _ = writeln!(out, "{}", format::complex(p));
            }
            for &p in &b.degenerate {
                let _ = writeln!(out, "{} degenerate", format::complex(p));
            }
            out
        }
    })
}

fn cmd_track(arg: &FamilyArg, path_args: &PathArgs, format: Format) -> Outcome {
    let f = parse_family(arg)?;
    let excluded = if path_args.path.is_some() && format != Format::Svg {
        Vec::new()
    } else {
        f.branch_points(DEFAULT_BRANCH_TOL)?.excluded()
    };
    let path = build_path(path_args, &excluded)?;
    let start = path.start().ok_or(monodromy::PathError::EmptyPath)?;
    let roots = roots_at(&f, start)?;
    let tr = track(&f, &path, &roots, &TrackOptions::default())?;
    Ok(match format {
        Format::Csv => tr.to_csv(),
        Format::Svg => svg::plot_trajectories(&tr, &path, &excluded),
        Format::Json => {
            let path_json: Value = serde_json::from_str(&path.to_json()).expect("path JSON is valid");
            pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "family": f.to_string(),
                "path": path_json,
                "start_roots": complex_list(&roots),
                "end_roots": complex_list(&tr.final_roots()),
                "permutation_cycles": tr.perm.as_ref().map(|p| p.to_string()),
                "min_separation": format::real(tr.min_separation_seen),
                "steps": tr.steps_taken,
            }))
        }
        Format::Text => {
            let mut out = String::new();
            let ends = tr.final_roots();
            for (i, (s, e)) in roots.iter().zip(&ends).enumerate() {
                let _ = writeln!(out, "root {}: {} -> {}", i + 1, format::complex(*s), format::complex(*e));
            }
            if let Some(p) = &tr.perm {
                let _ = writeln!(out, "permutation: {p}");
            }
            out
        }
    })
}

fn base_point(f: &PolyFamily, base: Option<&str>) -> Result<Complex, DomainError> {
    match base {
        Some(b) => Ok(complex_arg(b, "--base")),
        None => Ok(default_base(f)?),
    }
}

fn report_text(r: &monodromy::MonodromyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", r.family);
    let _ = writeln!(out, "base: {}", format::complex(r.base));
    for (i, z) in r.numbering.iter().enumerate() {
        let _ = writeln!(out, "root {}: {}", i + 1, format::complex(*z));
    }
    for l in &r.lassos {
        let _ = writeln!(out, "lasso around {}: {}", format::complex(l.target), l.perm);
    }
    let _ = writeln!(out, "group: order {} ({})", r.group_order(), r.group_name().as_str());
    out
}

fn cmd_monodromy(arg: &FamilyArg, base: Option<&str>, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "monodromy");
    let f = parse_family(arg)?;
    let base = base_point(&f, base)?;
    let r = monodromy_report(&f, base, &TrackOptions::default())?;
    Ok(match format {
        Format::Json => pretty(&r.to_json()),
        _ => report_text(&r),
    })
}

fn cmd_certify(arg: &FamilyArg, base: Option<&str>, max_depth: usize, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "certify");
    let f = parse_family(arg)?;
    let base = base_point(&f, base)?;
    let cert = abel_certificate_at(&f, base, max_depth, &TrackOptions::default())?;
    Ok(match format {
        Format::Json => pretty(&cert.to_json()),
        _ => {
            let mut out = report_text(&cert.report);
            let _ = writeln!(out, "closure orders: {:?}", cert.closure_orders);
            let _ = writeln!(out, "verdict: {}", cert.verdict);
            out
        }
    })
}

fn cmd_radical_eval(args: &FormulaArgs, at: &str, family: Option<&str>, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "radical-eval");
    let (rf, coeff_text) = parse_formula(args)?;
    let a = complex_arg(at, "--at");
    let coeffs = CoeffPath::parse(&coeff_text, ParamPath::stationary(a))?.coeffs_at(a)?;
    let tower = evaluate_tower(&rf, &coeffs)?;
    let root_distance = match family {
        Some(text) => {
            let f = PolyFamily::parse(text)?;
            let roots = roots_at(&f, a)?;
            let top = tower.top_values();
            Some(
                roots
                    .iter()
                    .map(|r| top.iter().map(|v| (v - r).norm()).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max),
            )
        }
        None => None,
    };
    Ok(match format {
        Format::Json => {
            let levels: Vec<Value> = rf
                .levels()
                .iter()
                .enumerate()
                .map(|(j, level)| {
                    json!({
                        "level": j + 1,
                        "k": level.k,
                        "values": complex_list(tower.values(j)),
                        "collapsed": tower.collapsed(j),
                    })
                })
                .collect();
            let mut v = json!({
                "schema_version": SCHEMA_VERSION,
                "formula": rf.to_string(),
                "a": format::complex(a),
                "coeffs": complex_list(&coeffs),
                "levels": levels,
            });
            if let Some(d) = root_distance {
                v["max_root_distance"] = json!(format::real(d));
            }
            pretty(&v)
        }
        _ => {
            let mut out = String::new();
            for j in 0..tower.depth() {
                let _ = writeln!(out, "z{}: {}", j + 1, complex_list(tower.values(j)).join(", "));
            }
            if let Some(d) = root_distance {
                let _ = writeln!(out, "max root distance: {}", format::real(d));
            }
            out
        }
    })
}

fn cmd_cautious(args: &FormulaArgs, path_args: &PathArgs, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "cautious");
    let (rf, coeff_text) = parse_formula(args)?;
    let path = build_path(path_args, &[])?;
    let cp = CoeffPath::parse(&coeff_text, path)?;
    let perms = track_tower(&rf, &cp, &TrackOptions::default())?;
    let cautious = perms.iter().all(Permutation::is_identity);
    Ok(match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "formula": rf.to_string(),
            "cautious": cautious,
            "level_permutations": perms.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for (j, p) in perms.iter().enumerate() {
                let _ = writeln!(out, "level {}: {p}", j + 1);
            }
            let _ = writeln!(out, "cautious: {cautious}");
            out
        }
    })
}

fn cmd_perm(degree: usize, generators: &[String], max_depth: usize, format: Format) -> Outcome {
    require_format(format, &[Format::Json, Format::Text], "perm");
    let gens = generators
        .iter()
        .map(|g| Permutation::parse_cycles(g, degree))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermSet::new(degree, gens.iter().cloned().chain([Permutation::identity(degree)]))?.generate()?;
    let orders = group.closure_orders(max_depth)?;
    let depth = group.derived_depth_to_trivial(max_depth)?;
    let verdict = verdict_from_orders(&orders);
    Ok(match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "degree": degree,
            "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "group_order": group.len(),
            "group_name": group.name().as_str(),
            "closure_orders": orders,
            "derived_depth": depth,
            "verdict": verdict.to_string(),
        })),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "group: order {} ({})", group.len(), group.name().as_str());
            let _ = writeln!(out, "closure orders: {orders:?}");
            let _ = writeln!(out, "verdict: {verdict}");
            out
        }
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::BranchPoints { family, tol, format } => cmd_branch_points(family, *tol, *format),
        Command::Track { family, path, format } => cmd_track(family, path, *format),
        Command::Monodromy { family, base, format } => cmd_monodromy(family, base.as_deref(), *format),
        Command::Certify {
            family,
            base,
            max_depth,
            format,
        } => cmd_certify(family, base.as_deref(), *max_depth, *format),
        Command::RadicalEval {
            formula,
            at,
            family,
            format,
        } => cmd_radical_eval(formula, at, family.as_deref(), *format),
        Command::Cautious { formula, path, format } => cmd_cautious(formula, path, *format),
        Command::Perm {
            degree,
            generators,
            max_depth,
            format,
        } => cmd_perm(*degree, generators, *max_depth, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(DomainError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
