//! The `wkam` command line.
//!
//! Exit codes: 0 success, 1 internal failure, 2 bad input, 3 failed verification.

mod output;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::barrier::{aubry, closed_form_barrier, peierls_barrier, u_minus, u_plus};
use crate::critical::{critical_value, is_dominated};
use crate::error::{Result, WkamError};
use crate::models::io::load_document;
use crate::models::{gen_constant, gen_fk, gen_random, potential_profile, AnyInstance, Claims};
use crate::oracle::verify_with;
use crate::potential::{jump_F, jump_f, mane_potential, phi_n, phi_one};
use crate::subsolution::{
    aubry_generic_subsolution, aubry_of, edge_aubry_of, max_strict_subsolution, strict_pairs, strict_subsolution,
};
use crate::tropical::{parse_rational, CostInstance, NumericMode, Scalar, ValueFunction, DEFAULT_TOLERANCE};
use output::{Item, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wkam", version, about = "Discrete weak KAM solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical constant, a minimizing cycle and the reduced cost.
    Critical(Common),
    /// Mane potential, phi_1, the jump functions F and f.
    Potential(Common),
    /// Peierls barrier h.
    Barrier(Common),
    /// Aubry set and edge Aubry set.
    Aubry(Common),
    /// Strict critical sub-solutions.
    Subsolution {
        #[command(flatten)]
        common: Common,
        /// Check strictness against the edge Aubry set; exit 3 on failure.
        #[arg(long)]
        check: bool,
        /// Comma-separated dominated function to make strict.
        #[arg(long, value_name = "V0,V1,...", allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Run every oracle check; exit 3 if any fails.
    Verify(Common),
    /// Per-point table for metric instances (CSV by default).
    Plotdata(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Instance file (JSON).
    #[arg(long = "in", value_name = "PATH", conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generator: constant:n:k, random:n:seed:lo:hi or fk:m:lambda:potential.
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    gen: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Float tolerance.
    #[arg(long, value_name = "EPS")]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Horizon N (phi_N for `potential`, the representation bound for `verify`).
    #[arg(long)]
    horizon: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exact,
    Float,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_INTERNAL
            }
        }
    }
}

struct Loaded {
    instance: AnyInstance,
    claims: Claims,
}

fn load_instance(common: &Common) -> Result<Loaded> {
    let mode_name = common.mode.map(Mode::name);
    let (instance, claims) = match (&common.input, &common.gen) {
        (Some(path), None) => {
            let doc = load_document(path)?;
            (doc.instance, doc.claims)
        }
        (None, Some(spec)) => (generate(spec, common)?, Claims::default()),
        _ => return Err(WkamError::InvalidArgument("give exactly one of --in and --gen".into())),
    };
    Ok(Loaded { instance: instance.into_mode(mode_name, common.tol)?, claims })
}

fn field<'a>(parts: &[&'a str], i: usize, spec: &str) -> Result<&'a str> {
    parts.get(i).copied().ok_or_else(|| WkamError::Parse(format!("generator spec {spec:?} is missing fields")))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| WkamError::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

fn generate(spec: &str, common: &Common) -> Result<AnyInstance> {
    let parts: Vec<&str> = spec.splitn(4, ':').collect();
    let exact_only = |inst: CostInstance<crate::tropical::Rational>| AnyInstance::Exact(inst);
    match parts[0] {
        "constant" => {
            if parts.len() != 3 {
                return Err(WkamError::Parse(format!("expected constant:n:k, got {spec:?}")));
            }
            let n = parse_usize(parts[1])?;
            Ok(exact_only(gen_constant(n, parse_rational(parts[2])?)?))
        }
        "random" => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() != 5 {
                return Err(WkamError::Parse(format!("expected random:n:seed:lo:hi, got {spec:?}")));
            }
            let n = parse_usize(parts[1])?;
            let seed = parts[2].trim().parse().map_err(|_| WkamError::Parse(format!("bad seed {:?}", parts[2])))?;
            let mode = match common.mode {
                Some(Mode::Float) => NumericMode::Float { tolerance: common.tol.unwrap_or(DEFAULT_TOLERANCE) },
                _ => NumericMode::Exact,
            };
            gen_random(n, seed, &parse_rational(parts[3])?, &parse_rational(parts[4])?, mode)
        }
        "fk" => {
            let m = parse_usize(field(&parts, 1, spec)?)?;
            let lambda = parse_rational(field(&parts, 2, spec)?)?;
            let v = potential_profile(field(&parts, 3, spec)?, m)?;
            Ok(exact_only(gen_fk(m, &lambda, &v)?))
        }
        other => Err(WkamError::Parse(format!("unknown generator {other:?}"))),
    }
}

fn execute(command: Command) -> Result<i32> {
    let (common, action) = match command {
        Command::Critical(c) => (c, Action::Critical),
        Command::Potential(c) => (c, Action::Potential),
        Command::Barrier(c) => (c, Action::Barrier),
        Command::Aubry(c) => (c, Action::Aubry),
        Command::Subsolution { common, check, u } => (common, Action::Subsolution { check, u }),
        Command::Verify(c) => (c, Action::Verify),
        Command::Plotdata(c) => (c, Action::Plotdata),
    };
    let loaded = load_instance(&common)?;
    let (out, code) = match &loaded.instance {
        AnyInstance::Exact(i) => action.run(i, &loaded.claims, &common)?,
        AnyInstance::Float(i) => action.run(i, &loaded.claims, &common)?,
    };
    let default_format = if matches!(action, Action::Plotdata) { Format::Csv } else { Format::Json };
    let text = match common.format.unwrap_or(default_format) {
        Format::Json => out.to_json()?,
        Format::Csv => out.to_csv(),
    };
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(code)
}

enum Action {
    Critical,
    Potential,
    Barrier,
    Aubry,
    Subsolution { check: bool, u: Option<String> },
    Verify,
    Plotdata,
}

impl Action {
    fn run<T: Scalar>(&self, inst: &CostInstance<T>, claims: &Claims, common: &Common) -> Result<(Output, i32)> {
        let mut out = Output::new(inst.labels().to_vec());
        out.push("n", Item::Count(inst.n()));
        out.push("mode", Item::Text(inst.mode().to_string()));
        let crit = critical_value(inst)?;
        out.push("alpha0", Item::value(&crit.alpha0));
        let mut code = EXIT_OK;
        match self {
            Action::Critical => {
                out.push("cycle", Item::Cycle(crit.witness_cycle.clone()));
                out.push("reduced", Item::ext_matrix(&crit.reduced));
            }
            Action::Potential => {
                out.push("phi", Item::ext_matrix(&mane_potential(inst, &crit)?.entries));
                out.push("phi1", Item::ext_matrix(&phi_one(inst, &crit)?.entries));
                if let Some(h) = common.horizon {
                    out.push(&format!("phi_{h}"), Item::ext_matrix(&phi_n(inst, &crit, h)?.entries));
                }
                out.push("F", Item::function(&jump_F(inst, &crit)?));
                out.push("f", Item::function(&jump_f(inst, &crit)?));
            }
            Action::Barrier => {
                let bar = peierls_barrier(inst, &crit)?;
                out.push("h", Item::ext_matrix(&bar.h.entries));
                out.push("iterations", Item::Count(bar.iterations_to_fix));
            }
            Action::Aubry => {
                let bar = peierls_barrier(inst, &crit)?;
                let a = aubry(inst, &crit, &bar)?;
                out.push("aubry", Item::Points(a.vertices.clone()));
                out.push("aubry_edges", Item::Pairs(a.edges.clone()));
                out.push("F", Item::function(&a.jumps));
            }
            Action::Subsolution { check, u } => {
                let ustar = aubry_generic_subsolution(inst, &crit)?;
                let u1 = max_strict_subsolution(inst, &crit)?;
                let strict = strict_pairs(inst, &crit, &u1)?;
                out.push("u_star", Item::function(&ustar));
                out.push("u1", Item::function(&u1));
                out.push("strict_pairs", Item::Pairs(strict.clone()));
                let mut ok = true;
                if *check {
                    let bar = peierls_barrier(inst, &crit)?;
                    let a = aubry(inst, &crit, &bar)?;
                    ok &= is_dominated(inst, &u1, &crit.alpha0)?.holds();
                    ok &= complement(inst.n(), &a.edges) == strict;
                }
                if let Some(text) = u {
                    let v = parse_function::<T>(text, inst.n())?;
                    let s = strict_subsolution(inst, &crit, &v)?;
                    let s_strict = strict_pairs(inst, &crit, &s)?;
                    let edges = edge_aubry_of(inst, &crit, &v)?;
                    out.push("u_minus", Item::function(&u_minus(inst, &crit, &v)?.value));
                    out.push("u_plus", Item::function(&u_plus(inst, &crit, &v)?.value));
                    out.push("aubry_u", Item::Points(aubry_of(inst, &crit, &v)?));
                    out.push("aubry_edges_u", Item::Pairs(edges.clone()));
                    out.push("strict_u", Item::function(&s));
                    out.push("strict_u_pairs", Item::Pairs(s_strict.clone()));
                    if *check {
                        ok &= complement(inst.n(), &edges) == s_strict;
                    }
                }
                if *check {
                    out.push("check", Item::Flag(ok));
                    if !ok {
                        code = EXIT_VERIFY;
                    }
                }
            }
            Action::Verify => {
                let mut report = verify_with(inst, claims, common.seed, 20)?;
                if let Some(h) = common.horizon {
                    // the report carries the default N = 6; rerun that one check at the requested horizon
                    let ctx = crate::oracle::Context::new(inst, common.seed, 20)?;
                    if let Some(c) = report.checks.iter_mut().find(|c| c.name == "limits.inegh_bound") {
                        c.witness = ctx.check_inegh(h).unwrap_or_else(|e| Some(format!("error: {e}")));
                        c.pass = c.witness.is_none();
                    }
                }
                out.push("summary", Item::Text(report.summary.clone()));
                out.push("pass", Item::Flag(report.all_pass()));
                out.push("checks", Item::Checks(report.checks.clone()));
                if !report.all_pass() {
                    code = EXIT_VERIFY;
                }
            }
            Action::Plotdata => return plotdata(inst, &crit).map(|o| (o, EXIT_OK)),
        }
        Ok((out, code))
    }
}

fn complement(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|p| pairs.binary_search(p).is_err()).collect()
}

fn parse_function<T: Scalar>(text: &str, n: usize) -> Result<ValueFunction<T>> {
    let values = text.split(',').map(|s| T::parse_value(s.trim())).collect::<Result<Vec<T>>>()?;
    if values.len() != n {
        return Err(WkamError::LengthMismatch { expected: n, found: values.len() });
    }
    Ok(ValueFunction::from_finite(values, "u"))
}

/// Columns: point, V = c(x, x), F, f, h(x, x), Aubry membership, h(x0, x)
/// with `x0` the first Aubry point.
fn plotdata<T: Scalar>(inst: &CostInstance<T>, crit: &crate::critical::CriticalData<T>) -> Result<Output> {
    if inst.metric().is_none() {
        return Err(WkamError::NoMetric);
    }
    let c = inst.dense("plotdata")?;
    let bar = peierls_barrier(inst, crit)?;
    let h = bar.dense()?;
    let a = aubry(inst, crit, &bar)?;
    let big = jump_F(inst, crit)?.to_finite()?;
    let small = jump_f(inst, crit)?.to_finite()?;
    let x0 = a.vertices[0];
    if T::EXACT {
        if let Some(m) = closed_form_barrier(&phi_one(inst, crit)?.dense()?, &a.vertices) {
            if m != h {
                return Err(WkamError::ConstructionFailed("barrier disagrees with its closed form".into()));
            }
        }
    }
    let header = vec![
        "point".to_string(),
        "V".into(),
        "F".into(),
        "f".into(),
        "h_diag".into(),
        "aubry".into(),
        format!("h_{}", inst.label(x0)),
    ];
    let rows = (0..inst.n())
        .map(|x| {
            vec![
                inst.label(x).to_string(),
                c[(x, x)].to_string(),
                big[x].to_string(),
                small[x].to_string(),
                h[(x, x)].to_string(),
                u8::from(a.contains(x)).to_string(),
                h[(x0, x)].to_string(),
            ]
        })
        .collect();
    Ok(Output::table(header, rows))
}
