//! The `albankit` command line.
//!
//! Exit status: 0 on success, 1 when a check or validation fails, 2 on
//! malformed input. Results go to standard output, diagnostics to standard
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arrangements::{
    self, corpus, AlbaneseOptions, Arrangement, Granularity, Report, Severity, DEFAULT_BUDGET,
};
use crate::blocks::{Factor, IsogenyClass};
use crate::charkit::{numbered_sites, sites, GroupSpec};
use crate::error::{Error, Result};
use crate::mordell::{self, OrbitSet};
use crate::oracle::{self, Battery};
use crate::p1covers;
use crate::towers::{self, Ray};

pub const THREADS_ENV: &str = "ALBANKIT_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "albankit",
    version,
    about = "Isogeny classes of Jacobians and Albanese varieties of abelian covers"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Covers of the projective line.
    #[command(subcommand)]
    P1(P1Command),
    /// Jacobian of the Fermat curve of degree n.
    Fermat {
        #[arg(long)]
        n: u64,
    },
    /// Covers of the plane branched over a line arrangement.
    #[command(subcommand)]
    Arr(ArrCommand),
    /// Albanese classes along a cyclic tower, and its period.
    Tower {
        #[arg(long)]
        file: String,
        /// Linking numbers, one per line in file order (default: all 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        epsilon: Option<Vec<i64>>,
        #[arg(long, default_value_t = 12)]
        max_n: u64,
        /// Alexander polynomial roots as order:multiplicity pairs, e.g. 3:2.
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<String>>,
    },
    /// Mordell–Weil rank of an isotrivial family.
    Mw {
        /// JSON written by `arr albanese --out`.
        #[arg(long)]
        alb: PathBuf,
        /// Character orbits of the action on H^1 of the fiber.
        #[arg(long)]
        action: PathBuf,
    },
    /// Run the oracle equivalence suites.
    Verify {
        #[arg(long, value_enum, default_value_t = BatteryArg::Small)]
        battery: BatteryArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum P1Command {
    /// Cyclic cover y^n = Π (x − p)^{a_p}, exponents at every branch point.
    Cyclic {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        exps: Vec<u64>,
    },
    /// Abelian cover of the line branched at the given points.
    Abelian {
        #[arg(long)]
        n: u64,
        /// Number of branch points, or a comma-separated list of ids.
        #[arg(long)]
        points: String,
        #[command(flatten)]
        relations: RelationArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ArrCommand {
    /// Irregularity and isogeny class of the Albanese variety.
    Albanese {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, value_enum, default_value_t = GranularityArg::Fine)]
        granularity: GranularityArg,
        /// Cross-check by summing depths over every character.
        #[arg(long)]
        validate_exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Also write the JSON result (with character orbits) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torus rank and abelian part of the Albanese of the open cover.
    Semiabelian {
        #[command(flatten)]
        cover: CoverArgs,
    },
}

#[derive(Args, Debug)]
struct CoverArgs {
    /// Arrangement JSON; bundled names (ceva6.json, dualflex9.json,
    /// hesse12.json) work from any directory.
    #[arg(long)]
    file: String,
    #[arg(long)]
    n: u64,
    /// Use the cyclic cover w^n = Π l_i instead of the full abelian cover.
    #[arg(long, conflicts_with = "relations")]
    diagonal: bool,
    #[command(flatten)]
    relations: RelationArgs,
}

#[derive(Args, Debug)]
struct RelationArgs {
    /// Extra congruences Σ c_i j_i ≡ 0 on characters; vectors separated by
    /// `;`, entries by `,`.
    #[arg(long)]
    relations: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GranularityArg {
    Fine,
    Coarse,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BatteryArg {
    Small,
    Full,
}

/// Outcome of one command: text or JSON output plus an exit status.
struct Outcome {
    text: String,
    json: Value,
    failed: bool,
    report: Option<Report>,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            failed: false,
            report: None,
        }
    }
}

/// Parse `args` (program name first), run, and write to `out`/`err`.
/// Returns the exit status.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    let as_json = cli.json;
    match run(cli.command) {
        Ok(outcome) => {
            if let Some(report) = &outcome.report {
                let _ = write!(err, "{report}");
            }
            let _ = if as_json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).unwrap()
                )
            } else {
                write!(out, "{}", outcome.text)
            };
            u8::from(outcome.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for input that cannot be read as a problem instance, 1 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::InvalidModulus { .. }
        | Error::LengthMismatch { .. }
        | Error::DuplicateSite(_)
        | Error::ZeroSum { .. }
        | Error::InconsistentRelations(_)
        | Error::InvalidBlockData(_)
        | Error::OutsideDomain(_)
        | Error::UseUnifiedFormula
        | Error::OrderZero
        | Error::TooLarge(_) => 2,
        _ => 1,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            Error::Malformed(format!("{THREADS_ENV}={value} is not a positive integer"))
        })?;
    // a second call in the same process (tests) finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::P1(P1Command::Cyclic { n, exps }) => p1_cyclic(n, &exps),
        Command::P1(P1Command::Abelian {
            n,
            points,
            relations,
        }) => p1_abelian(n, &points, &relations),
        Command::Fermat { n } => fermat(n),
        Command::Arr(ArrCommand::Albanese {
            cover,
            granularity,
            validate_exhaustive,
            budget,
            out,
        }) => arr_albanese(
            &cover,
            granularity,
            validate_exhaustive,
            budget,
            out.as_deref(),
        ),
        Command::Arr(ArrCommand::Semiabelian { cover }) => arr_semiabelian(&cover),
        Command::Tower {
            file,
            epsilon,
            max_n,
            roots,
        } => tower(&file, epsilon, max_n, roots.as_deref()),
        Command::Mw { alb, action } => mw(&alb, &action),
        Command::Verify { battery, seed } => verify(battery, seed),
    }
}

fn parse_relations(args: &RelationArgs) -> Result<Option<Vec<Vec<u64>>>> {
    let Some(text) = &args.relations else {
        return Ok(None);
    };
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|rel| {
            rel.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Malformed(format!("bad relation coefficient `{c}`")))
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn class_table(class: &IsogenyClass) -> String {
    let mut s = String::new();
    for (factor, mult) in class.entries() {
        let name = match factor {
            Factor::Cyclic(b) => b.name().unwrap_or(""),
            Factor::Opaque { .. } => "",
        };
        s.push_str(&format!(
            "  {:<28} mult {:<4} dim {:<4} {}\n",
            factor.label(),
            mult,
            factor.dimension(),
            name
        ));
    }
    s
}

fn class_json(class: &IsogenyClass) -> Value {
    json!({
        "class": class.to_records(),
        "rendered": class.render(),
        "named": class.render_named(),
        "dimension": class.dimension(),
    })
}

fn p1_cyclic(n: u64, exps: &[u64]) -> Result<Outcome> {
    let genus = p1covers::genus_cyclic(n, exps)?;
    let rows = p1covers::eigenspace_table(n, exps)?;
    let mut text = format!("y^{n} with exponents {exps:?}\ngenus: {genus}\n");
    text.push_str("  i  character             order  h10  h01\n");
    for r in &rows {
        text.push_str(&format!(
            "  {:<2} {:<22} {:<6} {:<4} {}\n",
            r.i,
            format!("{:?}", r.exponents),
            r.order,
            r.h10,
            r.h01
        ));
    }
    Ok(Outcome::ok(
        text,
        json!({"n": n, "exponents": exps, "genus": genus, "eigenspaces": rows}),
    ))
}

fn p1_abelian(n: u64, points: &str, relations: &RelationArgs) -> Result<Outcome> {
    let site_list = match points.trim().parse::<usize>() {
        Ok(count) => numbered_sites(count),
        Err(_) => sites(points.split(',').map(|s| s.trim().to_string()))?,
    };
    if site_list.len() < 3 {
        return Err(Error::Malformed("need at least 3 branch points".into()));
    }
    let spec = match parse_relations(relations)? {
        Some(rels) => GroupSpec::with_relations(n, site_list, rels)?,
        None => GroupSpec::full(n, site_list)?,
    };
    let class = p1covers::decompose_abelian_cover(&spec)?;
    let genus = oracle::euler_genus_oracle(&spec)?;
    let failed = genus != class.dimension();
    let text = format!(
        "cover of P1: Z/{n} on {} points, |Γ| = {}\nclass: {}\ndimension: {}\noracle genus: {genus}\n{}",
        spec.rank(),
        spec.order()?,
        class.render(),
        class.dimension(),
        class_table(&class)
    );
    let mut j = class_json(&class);
    j["oracle_genus"] = json!(genus);
    Ok(Outcome {
        failed,
        ..Outcome::ok(text, j)
    })
}

fn fermat(n: u64) -> Result<Outcome> {
    if n < 2 {
        return Err(Error::InvalidModulus { min: 2, got: n });
    }
    let spec = GroupSpec::full(n, numbered_sites(3))?;
    let class = p1covers::decompose_abelian_cover(&spec)?;
    let genus = oracle::euler_genus_oracle(&spec)?;
    let text = format!(
        "Fermat curve x^{n} + y^{n} = z^{n}\nclass: {}\nnamed: {}\ndimension: {}\noracle genus: {genus}\n{}",
        class.render(),
        class.render_named(),
        class.dimension(),
        class_table(&class)
    );
    let mut j = class_json(&class);
    j["n"] = json!(n);
    j["oracle_genus"] = json!(genus);
    Ok(Outcome {
        failed: genus != class.dimension(),
        ..Outcome::ok(text, j)
    })
}

/// Read an arrangement, falling back to the bundled corpus by file name.
pub fn load_arrangement(file: &str) -> Result<Arrangement> {
    let path = Path::new(file);
    if path.exists() {
        return Arrangement::from_path(path);
    }
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or(file);
    match corpus::text(name) {
        Some(text) => Arrangement::from_json(text),
        None => Err(Error::Malformed(format!("{file}: no such file"))),
    }
}

fn cover_spec(arr: &Arrangement, cover: &CoverArgs) -> Result<(GroupSpec, String)> {
    if cover.diagonal {
        return Ok((arr.diagonal_spec(cover.n)?, "diagonal".into()));
    }
    match parse_relations(&cover.relations)? {
        Some(rels) => {
            let count = rels.len();
            Ok((
                arr.relations_spec(cover.n, rels)?,
                format!("{count} relations"),
            ))
        }
        None => Ok((arr.full_spec(cover.n)?, "full".into())),
    }
}

fn arrangement_header(arr: &Arrangement, n: u64, kind: &str) -> String {
    format!(
        "arrangement: {} ({} lines, {} pencils)\ncover: Z/{n}, {kind}\n",
        arr.name.as_deref().unwrap_or("unnamed"),
        arr.lines.len(),
        arr.all_pencils().len()
    )
}

fn arr_albanese(
    cover: &CoverArgs,
    granularity: GranularityArg,
    exhaustive: bool,
    budget: u128,
    out: Option<&Path>,
) -> Result<Outcome> {
    let arr = load_arrangement(&cover.file)?;
    let (spec, kind) = cover_spec(&arr, cover)?;
    let opts = AlbaneseOptions {
        granularity: match granularity {
            GranularityArg::Fine => Granularity::Fine,
            GranularityArg::Coarse => Granularity::Coarse,
        },
        exhaustive,
        budget,
    };
    let alb = arrangements::albanese(&arr, &spec, &opts)?;
    let mut text = arrangement_header(&arr, cover.n, &kind);
    text.push_str(&format!(
        "q={}\nclass: {}\nnamed: {}\n{}",
        alb.q,
        alb.class.render(),
        alb.class.render_named(),
        class_table(&alb.class)
    ));
    if let Some(ex) = &alb.exhaustive {
        text.push_str(&format!(
            "exhaustive: {} characters, depth sum {}, q={}, unramified rank {}\n",
            ex.characters, ex.ramified_depth, ex.q, ex.unramified_rank
        ));
    }
    let j = alb.to_json(&arr.lines);
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&j).unwrap() + "\n")?;
    }
    Ok(Outcome {
        text,
        json: j,
        failed: alb.report.has_errors(),
        report: Some(alb.report),
    })
}

fn arr_semiabelian(cover: &CoverArgs) -> Result<Outcome> {
    let arr = load_arrangement(&cover.file)?;
    let (spec, kind) = cover_spec(&arr, cover)?;
    let report = arrangements::validate(&arr, &spec);
    let s = arrangements::semiabelian_albanese(&arr, &spec)?;
    let mut text = arrangement_header(&arr, cover.n, &kind);
    text.push_str(&format!(
        "torus rank: {}\nabelian part: {}\n{}\n",
        s.torus_rank,
        s.abelian.render_named(),
        s
    ));
    Ok(Outcome {
        text,
        json: s.to_json(),
        failed: false,
        report: Some(report),
    })
}

fn tower(
    file: &str,
    epsilon: Option<Vec<i64>>,
    max_n: u64,
    roots: Option<&[String]>,
) -> Result<Outcome> {
    let arr = load_arrangement(file)?;
    let ray = match epsilon {
        Some(eps) => Ray::new(&arr, eps)?,
        None => Ray::diagonal(&arr),
    };
    if max_n < 2 {
        return Err(Error::Malformed("--max-n must be at least 2".into()));
    }
    let torsion = towers::ray_torsion(&ray)?;
    let period = towers::tower_period(&ray)?;
    let levels = towers::tower_levels(&ray, max_n)?;
    let violations = towers::periodicity_violations(&levels, period);
    let mut text = format!("period: {period}\n");
    for (order, sources) in &torsion {
        text.push_str(&format!(
            "  torsion of order {order} on {}\n",
            sources.join(", ")
        ));
    }
    text.push_str("  n  q    torus  b1    class\n");
    for l in &levels {
        text.push_str(&format!(
            "  {:<2} {:<4} {:<6} {:<5} {}\n",
            l.n,
            l.ramified.dimension(),
            l.semiabelian.torus_rank,
            l.unramified_rank,
            l.ramified.render_named()
        ));
    }
    let mut j = json!({
        "period": period,
        "levels": levels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        "violations": violations,
    });
    let mut failed = !violations.is_empty();
    for (a, b) in &violations {
        text.push_str(&format!(
            "periodicity violated between levels {a} and {b}\n"
        ));
    }
    if let Some(roots) = roots {
        let parsed = roots
            .iter()
            .map(|r| {
                let (o, m) = r.split_once(':').unwrap_or((r.as_str(), "1"));
                Ok((
                    o.trim()
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad root `{r}`")))?,
                    m.trim()
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad root `{r}`")))?,
                ))
            })
            .collect::<Result<Vec<(u64, u64)>>>()?;
        let alex = towers::alexander_period(&parsed)?;
        text.push_str(&format!("alexander period: {}\n", alex.period));
        let base = arr.lines.len() as u64 - 1;
        for l in &levels {
            if l.unramified_rank != base + alex.rank(l.n) {
                failed = true;
                text.push_str(&format!(
                    "level {}: b1 = {} but the roots give {}\n",
                    l.n,
                    l.unramified_rank,
                    base + alex.rank(l.n)
                ));
            }
        }
        j["alexander"] = json!({"period": alex.period, "table": alex.table()});
    }
    Ok(Outcome {
        failed,
        ..Outcome::ok(text, j)
    })
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn mw(alb: &Path, action: &Path) -> Result<Outcome> {
    let alb = OrbitSet::from_json(&read_json(alb)?)?;
    let action = OrbitSet::from_json(&read_json(action)?)?;
    let zero = mordell::mw_rank_zero_test(&alb, &action)?;
    let report = mordell::mw_rank_report(&alb, &action)?;
    Ok(Outcome::ok(
        report.to_string(),
        json!({"rank_zero": zero, "terms": report.terms, "rank": report.rank}),
    ))
}

fn verify(battery: BatteryArg, seed: u64) -> Result<Outcome> {
    let kind = match battery {
        BatteryArg::Small => Battery::Small,
        BatteryArg::Full => Battery::Full,
    };
    let outcomes = oracle::battery(kind, seed);
    let mut text = String::new();
    let mut failed = false;
    for o in &outcomes {
        failed |= !o.passed();
        text.push_str(&format!(
            "{} {} ({} cases, {} ms)\n",
            if o.passed() { "PASS" } else { "FAIL" },
            o.name,
            o.cases,
            o.millis
        ));
        for f in &o.failures {
            text.push_str(&format!("    {f}\n"));
        }
    }
    let mut report = Report::default();
    if failed {
        report.push(Severity::Error, "oracle battery failed");
    }
    Ok(Outcome {
        text,
        json: json!({ "checks": outcomes }),
        failed,
        report: Some(report),
    })
}
