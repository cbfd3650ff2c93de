mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use glhodge::checks;
use glhodge::counts::{self, Bound, JHType, R2Variant, R3Set};
use glhodge::moduli::gl_report;
use glhodge::spaces::{self, SchubertParams};
use glhodge::{BiPoly, CheckReport, HodgeError, ModuliParams};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

#[derive(Parser)]
#[command(name = "glhodge", version, about = "Hodge-Deligne polynomials of moduli of coherent systems")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polynomial of G_L(n, d, k) for n - k = 2, with metadata.
    Gl {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        d: BigInt,
        #[arg(long)]
        k: BigInt,
        #[arg(long)]
        g: BigInt,
    },
    /// Polynomial of one of the building-block spaces.
    Space {
        #[command(subcommand)]
        space: SpaceCmd,
    },
    /// Run a consistency suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Emit the reports as a JSON array.
        #[arg(long)]
        json: bool,
    },
    /// Parameter counts, codimension bounds, types.
    Counts {
        #[command(subcommand)]
        what: CountsCmd,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    Projective {
        #[arg(long)]
        n: BigInt,
    },
    Grassmannian {
        #[arg(long)]
        k: BigInt,
        #[arg(long = "N")]
        big_n: BigInt,
    },
    Jacobian {
        #[arg(long)]
        g: BigInt,
    },
    M2odd {
        #[arg(long)]
        g: BigInt,
    },
    M2even {
        #[arg(long)]
        g: BigInt,
    },
    /// Symmetric square of a polynomial given as BiPoly JSON.
    Sym2 {
        #[arg(long)]
        poly: String,
    },
    Schubert {
        #[arg(long)]
        k: BigInt,
        #[arg(long = "N")]
        big_n: BigInt,
        #[arg(long)]
        j: BigInt,
        #[arg(long)]
        mu: BigInt,
    },
    SchubertComplement {
        #[arg(long)]
        k: BigInt,
        #[arg(long = "N")]
        big_n: BigInt,
        #[arg(long)]
        j: BigInt,
        #[arg(long)]
        mu_min: BigInt,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Strata,
    Duality,
    All,
}

#[derive(clap::Args)]
struct Ndkg {
    #[arg(long)]
    n: BigInt,
    #[arg(long)]
    d: BigInt,
    #[arg(long)]
    k: BigInt,
    #[arg(long)]
    g: BigInt,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    E,
    Eprime,
    Se,
    Seprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    S11,
    S31,
    #[value(name = "s12-12")]
    S1212,
}

#[derive(Subcommand)]
enum CountsCmd {
    CodimW(Ndkg),
    CodimS(Ndkg),
    Beta(Ndkg),
    Nonempty(Ndkg),
    Types {
        #[arg(long)]
        nk: BigInt,
        #[arg(long)]
        d: BigInt,
        #[arg(long)]
        r: BigInt,
    },
    ParamsR2 {
        #[arg(long)]
        nk: BigInt,
        #[arg(long)]
        n1: BigInt,
        #[arg(long)]
        g: BigInt,
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    ParamsGeneral {
        #[arg(long)]
        nk: BigInt,
        #[arg(long)]
        d: BigInt,
        #[arg(long)]
        g: BigInt,
        /// Comma-separated ranks, e.g. 1,1,1.
        #[arg(long)]
        ranks: String,
    },
    ParamsR3 {
        #[arg(long)]
        nk: BigInt,
        #[arg(long)]
        d: BigInt,
        #[arg(long)]
        g: BigInt,
        #[arg(long)]
        ranks: String,
        #[arg(long, value_enum)]
        set: SetArg,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<HodgeError> for Failure {
    fn from(e: HodgeError) -> Self {
        match e {
            HodgeError::Precondition(_)
            | HodgeError::BadVariant { .. }
            | HodgeError::SlopeMismatch { .. }
            | HodgeError::NotApplicable(_)
            | HodgeError::GuardExceeded(_)
            | HodgeError::Poly(glhodge::PolyError::BadRange { .. }) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<glhodge::PolyError> for Failure {
    fn from(e: glhodge::PolyError) -> Self {
        Failure::Check(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn small(name: &str, x: &BigInt) -> Result<i64, Failure> {
    x.to_i64()
        .filter(|v| v.abs() < 1 << 20)
        .ok_or_else(|| Failure::Usage(format!("--{name} = {x} is out of range")))
}

fn genus(x: &BigInt) -> Result<i64, Failure> {
    let g = small("g", x)?;
    if g > 10 {
        eprintln!("warning: g = {g} > 10, polynomial sizes grow quickly");
    }
    Ok(g)
}

fn params(a: &Ndkg) -> Result<ModuliParams, Failure> {
    Ok(ModuliParams {
        n: small("n", &a.n)?,
        d: small("d", &a.d)?,
        k: small("k", &a.k)?,
        g: genus(&a.g)?,
    })
}

fn print_poly(p: &BiPoly, format: Format) -> Result<(), Failure> {
    match format {
        Format::Plain => println!("{p}"),
        Format::Latex => println!("{}", render::latex(p)),
        Format::Json => println!("{}", to_json(p)?),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Check(e.to_string()))
}

fn cmd_gl(p: ModuliParams, format: Format) -> CmdResult {
    p.validate()?;
    let r = gl_report(&p)?;
    match format {
        Format::Json => println!("{}", to_json(&r)?),
        Format::Plain | Format::Latex => {
            let (h, poly, pt) = if format == Format::Latex {
                ("%", render::latex(&r.polynomial), render::latex_uni(&r.poincare))
            } else {
                ("#", r.polynomial.to_string(), r.poincare.to_string())
            };
            println!("{poly}");
            println!("{h} P(t) = {pt}");
            println!("{h} beta = {}", r.beta);
            println!("{h} nonempty = {}", r.nonempty);
            println!("{h} gcd(n-k,d) = {}, gcd(n,d,k) = {}", r.gcd_nk_d, r.gcd_ndk);
            if r.virtual_only {
                println!("{h} gcd(n,d,k) != 1: P(t) is the virtual Poincare polynomial");
            }
            if let Some(cmp) = &r.closed_vs_sum {
                println!(
                    "{h} closed_vs_sum: {} ({} mismatched terms)",
                    if cmp.passed { "match" } else { "differ" },
                    cmp.diff.len()
                );
            }
            for w in &r.warnings {
                println!("{h} warning: {w}");
            }
        }
    }
    Ok(true)
}

fn cmd_space(s: &SpaceCmd, format: Format) -> CmdResult {
    let poly = match s {
        SpaceCmd::Projective { n } => spaces::hd_projective(small("n", n)?)?,
        SpaceCmd::Grassmannian { k, big_n } => {
            spaces::hd_grassmannian(small("k", k)?, small("N", big_n)?)?
        }
        SpaceCmd::Jacobian { g } => spaces::hd_jacobian(genus(g)?)?,
        SpaceCmd::M2odd { g } => spaces::hd_m2_odd(genus(g)?)?,
        SpaceCmd::M2even { g } => spaces::hd_m2_even(genus(g)?)?,
        SpaceCmd::Sym2 { poly } => {
            let p: BiPoly = serde_json::from_str(poly)
                .map_err(|e| Failure::Usage(format!("--poly is not BiPoly JSON: {e}")))?;
            spaces::hd_sym2(&p)?
        }
        SpaceCmd::Schubert { k, big_n, j, mu } => {
            let sp = SchubertParams::new(
                small("k", k)?,
                small("N", big_n)?,
                small("j", j)?,
                small("mu", mu)?,
            )?;
            spaces::hd_schubert_stratum(sp)?
        }
        SpaceCmd::SchubertComplement { k, big_n, j, mu_min } => spaces::hd_schubert_complement(
            small("k", k)?,
            small("N", big_n)?,
            small("j", j)?,
            small("mu-min", mu_min)?,
        )?,
    };
    print_poly(&poly, format)?;
    Ok(true)
}

fn cmd_check(suite: Suite, json_out: bool) -> CmdResult {
    let mut reports: Vec<CheckReport> = Vec::new();
    if matches!(suite, Suite::Oracle | Suite::All) {
        reports.push(checks::check_oracle()?);
    }
    if matches!(suite, Suite::Duality | Suite::All) {
        reports.push(checks::check_duality(10)?);
    }
    if matches!(suite, Suite::Strata | Suite::All) {
        reports.extend(checks::check_strata()?);
    }
    if json_out {
        println!("{}", to_json(&reports)?);
    } else {
        for r in &reports {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let mut line = format!("{status} {}", r.name);
            if !r.diff.is_empty() {
                line.push_str(&format!(" ({} mismatched terms)", r.diff.len()));
            }
            println!("{line}");
            for f in &r.failures {
                println!("    {f}");
            }
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn parse_ranks(s: &str, nk: i64, d: i64) -> Result<JHType, Failure> {
    let ranks = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("--ranks: {e}")))?;
    if nk == 0 {
        return Err(Failure::Usage("--nk must be positive".into()));
    }
    let mut parts = Vec::new();
    for n in ranks {
        if (n * d) % nk != 0 {
            return Err(Failure::Usage(format!(
                "rank {n} gives non-integral degree {n}*{d}/{nk}"
            )));
        }
        parts.push((n, n * d / nk));
    }
    Ok(JHType::new(parts))
}

fn emit_count(value: serde_json::Value, plain: String, formula: &str, format: Format) -> Result<(), Failure> {
    if format == Format::Json {
        println!("{}", to_json(&json!({ "value": value, "formula": formula }))?);
    } else {
        println!("{plain}");
    }
    Ok(())
}

fn cmd_counts(c: &CountsCmd, format: Format) -> CmdResult {
    match c {
        CountsCmd::CodimW(a) => {
            let b = counts::codim_w_bound(&params(a)?)?;
            emit_count(
                json!(b),
                b.improved.to_string(),
                "(p-1)/p^2 (n-k)^2 (g-1), p = gcd(n-k, d); baseline min sum_{i<j} n_i n_j (g-1)",
                format,
            )?;
        }
        CountsCmd::CodimS(a) => {
            let b = counts::codim_s_bound(&params(a)?)?;
            let v = match b {
                Bound::Finite(x) => json!(x),
                Bound::Infinity => json!("infinity"),
            };
            emit_count(v, b.to_string(), "min over (n',d',k') of ((g-1)n' - k'g + d')(k - k')", format)?;
        }
        CountsCmd::Beta(a) => {
            let b = params(a)?.beta();
            emit_count(json!(b), b.to_string(), "n^2(g-1) + 1 - k(k - d + n(g-1))", format)?;
        }
        CountsCmd::Nonempty(a) => {
            let b = params(a)?.is_nonempty();
            emit_count(json!(b), b.to_string(), "d > 0, k <= n + (d-n)/g, (n,d,k) != (n,n,n)", format)?;
        }
        CountsCmd::Types { nk, d, r } => {
            let types = counts::admissible_types(small("nk", nk)?, small("d", d)?, small("r", r)?)?;
            let plain = types
                .iter()
                .map(|t| {
                    t.parts
                        .iter()
                        .map(|(n, d)| format!("({n},{d})"))
                        .collect::<Vec<_>>()
                        .join("+")
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit_count(json!(types), plain, "ordered types with n_i multiples of nk/gcd(nk,d)", format)?;
        }
        CountsCmd::ParamsR2 { nk, n1, g, variant } => {
            let v = match variant {
                VariantArg::E => R2Variant::E,
                VariantArg::Eprime => R2Variant::Eprime,
                VariantArg::Se => R2Variant::SE,
                VariantArg::Seprime => R2Variant::SEprime,
            };
            let x = counts::param_count_r2(small("nk", nk)?, genus(g)?, small("n1", n1)?, v)?;
            emit_count(json!(x), x.to_string(), "dim M~(m) = m^2(g-1) + 1 corrections for r = 2", format)?;
        }
        CountsCmd::ParamsGeneral { nk, d, g, ranks } => {
            let (nk, d) = (small("nk", nk)?, small("d", d)?);
            let ty = parse_ranks(ranks, nk, d)?;
            let x = counts::param_count_general(nk, d, genus(g)?, &ty)?;
            emit_count(json!(x), x.to_string(), "dim M~(nk) - sum_{i<j} n_i n_j (g-1)", format)?;
        }
        CountsCmd::ParamsR3 { nk, d, g, ranks, set } => {
            let (nk, d) = (small("nk", nk)?, small("d", d)?);
            let ty = parse_ranks(ranks, nk, d)?;
            let s = match set {
                SetArg::S11 => R3Set::S11,
                SetArg::S31 => R3Set::S31,
                SetArg::S1212 => R3Set::S12_12,
            };
            let x = counts::param_count_r3(nk, d, genus(g)?, &ty, s)?;
            emit_count(json!(x), x.to_string(), "r = 3 parameter counts", format)?;
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Gl { n, d, k, g } => {
            let p = ModuliParams {
                n: small("n", n)?,
                d: small("d", d)?,
                k: small("k", k)?,
                g: genus(g)?,
            };
            cmd_gl(p, cli.format)
        }
        Cmd::Space { space } => cmd_space(space, cli.format),
        Cmd::Check { suite, json } => cmd_check(*suite, *json || cli.format == Format::Json),
        Cmd::Counts { what } => cmd_counts(what, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
