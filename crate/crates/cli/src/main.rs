//! `supercat`: compute super Catalan numbers three ways, run the
//! verification campaigns, enumerate and count path families, print
//! feature censuses, and render segment diagrams as SVG.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use supercatalan::census::{head_census_brute, head_census_dp, tail_census_brute, tail_census_dp};
use supercatalan::exact::{
    super_catalan_direct, super_catalan_shifted, super_catalan_vonszily, BigNat,
};
use supercatalan::interp::{self, OrderVariant};
use supercatalan::lattice::{enumerate_family, GridPoint, LatticePath, PathFamilySpec, SegmentId};
use supercatalan::render::{render_svg, RenderSpec};
use supercatalan::verify::{
    run_campaign, serialize_report, Campaign, CampaignKind, Engine, InclusiveRange, ReportFormat,
};
use supercatalan::{Error, DEFAULT_ENUM_BUDGET};

const BUDGET_ENV: &str = "SUPERCAT_ENUM_BUDGET";

#[derive(Parser)]
#[command(
    name = "supercat",
    version,
    about = "Exact super Catalan numbers and their lattice-path interpretations",
    after_help = "Environment:\n  SUPERCAT_ENUM_BUDGET  cap on paths an exhaustive enumeration may visit\n                        (default 2147483648)\n\nExit codes:\n  0  success / every check passed\n  1  verification failure\n  2  usage error\n  3  enumeration budget exceeded"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute S(m, n) by one of the three formulas
    Compute {
        m: u64,
        n: u64,
        /// direct | vonszily | shifted (shifted reads (m, n) as (m, m+s))
        #[arg(value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Print the grid of S(m, m+s) for m <= MAX_M, s <= MAX_S, computed
    /// by all three formulas; fails if any cell disagrees
    Table {
        max_m: u64,
        max_s: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run a verification campaign and write its report
    Verify {
        #[arg(value_enum)]
        kind: KindArg,
        /// Inclusive m range, "a..b" or a single value
        #[arg(long)]
        m: String,
        /// Inclusive s range (kind-specific default)
        #[arg(long)]
        s: Option<String>,
        /// Inclusive n range; involution only, needs a single-valued --m
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum, default_value_t = EngineArg::Both)]
        engine: EngineArg,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// List (or count) the members of a path family
    Enumerate {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u64,
        /// Family level, -2..=2
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        level: i64,
        /// Keep only members satisfying this predicate (level 0 only)
        #[arg(long, value_enum)]
        predicate: Option<PredicateArg>,
        /// Print the count instead of the paths
        #[arg(long)]
        count_only: bool,
    },
    /// Print a head or tail feature census as CSV
    Census {
        #[arg(long, value_enum)]
        part: PartArg,
        /// Head size (required for --part head)
        #[arg(long)]
        m: Option<u64>,
        /// Tail shift (required for --part tail)
        #[arg(long)]
        s: Option<u64>,
        #[arg(long, value_enum, default_value_t = CensusEngine::Dp)]
        engine: CensusEngine,
    },
    /// Render segments and paths as a deterministic SVG
    Render {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u64,
        /// Comma-separated segment ids, e.g. l1,l2,l3,l4
        #[arg(long, value_delimiter = ',')]
        lines: Vec<String>,
        /// Path overlay "STEPS[@x,y]", repeatable; origin defaults to 0,0
        #[arg(long = "path")]
        paths: Vec<String>,
        /// Canvas size in grid units, "W,H" (default fits the segments)
        #[arg(long)]
        canvas: Option<String>,
        /// Draw the unit grid
        #[arg(long)]
        grid: bool,
        /// Write the SVG here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Vonszily,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Identities,
    Involution,
    SmallShift,
    Shift4,
    Injections,
    CensusCrossCheck,
}

impl From<KindArg> for CampaignKind {
    fn from(kind: KindArg) -> CampaignKind {
        match kind {
            KindArg::Identities => CampaignKind::Identities,
            KindArg::Involution => CampaignKind::Involution,
            KindArg::SmallShift => CampaignKind::SmallShift,
            KindArg::Shift4 => CampaignKind::Shift4,
            KindArg::Injections => CampaignKind::Injections,
            KindArg::CensusCrossCheck => CampaignKind::CensusCrossCheck,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Brute,
    Dp,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(engine: EngineArg) -> Engine {
        match engine {
            EngineArg::Brute => Engine::Brute,
            EngineArg::Dp => Engine::Dp,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredicateArg {
    SmallShift,
    Shift4AsStated,
    Shift4OrderNegated,
    QuadL1First,
    QuadL1NotFirst,
    BandL1NotFirst,
}

impl PredicateArg {
    fn validate_shift(self, s: u64) -> Result<(), Failure> {
        let ok = match self {
            PredicateArg::SmallShift => s <= 3,
            _ => s == 4,
        };
        if ok {
            Ok(())
        } else {
            Err(Failure::Usage(format!(
                "predicate is not defined at s = {s}"
            )))
        }
    }

    fn eval(self, path: &LatticePath, m: u64, s: u64) -> Result<bool, Failure> {
        let result = match self {
            PredicateArg::SmallShift => interp::small_shift_predicate(path, m, s),
            PredicateArg::Shift4AsStated => {
                interp::shift4_predicate(path, m, OrderVariant::AsStated)
            }
            PredicateArg::Shift4OrderNegated => {
                interp::shift4_predicate(path, m, OrderVariant::OrderNegated)
            }
            PredicateArg::QuadL1First => interp::quad_l1_first_predicate(path, m),
            PredicateArg::QuadL1NotFirst => interp::quad_l1_not_first_predicate(path, m),
            PredicateArg::BandL1NotFirst => interp::band_l1_not_first_predicate(path, m),
        };
        result.map_err(Failure::from)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    Head,
    Tail,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusEngine {
    Dp,
    Brute,
}

/// Failures carrying their exit code.
enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 1,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(msg) | Failure::Verification(msg) | Failure::Resource(msg) => msg,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        match err {
            Error::BudgetExceeded { .. } => Failure::Resource(err.to_string()),
            Error::InvalidStepChar(_)
            | Error::InvalidRectangle { .. }
            | Error::ShiftOutOfRange { .. }
            | Error::LevelOutOfRange(_)
            | Error::BadPath(_)
            | Error::InvalidParams(_)
            | Error::InvalidRange(_)
            | Error::InvalidCampaign(_)
            | Error::DegenerateSegment { .. } => Failure::Usage(err.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Failure {
        Failure::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn budget_from_env() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{BUDGET_ENV} must be an unsigned integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute { m, n, method } => compute(m, n, method),
        Command::Table {
            max_m,
            max_s,
            format,
        } => table(max_m, max_s, format),
        Command::Verify {
            kind,
            m,
            s,
            n,
            engine,
            out,
            format,
        } => verify(kind, &m, s.as_deref(), n.as_deref(), engine, out, format),
        Command::Enumerate {
            m,
            s,
            level,
            predicate,
            count_only,
        } => enumerate(m, s, level, predicate, count_only),
        Command::Census { part, m, s, engine } => census(part, m, s, engine),
        Command::Render {
            m,
            s,
            lines,
            paths,
            canvas,
            grid,
            out,
        } => render(m, s, &lines, &paths, canvas.as_deref(), grid, out),
    }
}

fn compute(m: u64, n: u64, method: Method) -> Result<(), Failure> {
    let value = match method {
        Method::Direct => super_catalan_direct(m, n)?,
        Method::Vonszily => super_catalan_vonszily(m, n)?,
        Method::Shifted => {
            if n < m {
                return Err(Failure::Usage(format!(
                    "shifted reads (m, n) as (m, m+s) and needs n >= m, got m={m}, n={n}"
                )));
            }
            super_catalan_shifted(m, n - m)?
        }
    };
    println!("{value}");
    Ok(())
}

#[derive(Serialize)]
struct TableCell {
    m: u64,
    s: u64,
    value: String,
}

#[derive(Serialize)]
struct TableDoc {
    max_m: u64,
    max_s: u64,
    cells: Vec<TableCell>,
}

fn table(max_m: u64, max_s: u64, format: TableFormat) -> Result<(), Failure> {
    let mut cells = Vec::new();
    for m in 0..=max_m {
        for s in 0..=max_s {
            let direct = super_catalan_direct(m, m + s)?;
            let vonszily = super_catalan_vonszily(m, m + s)?;
            let shifted = super_catalan_shifted(m, s)?;
            if vonszily != direct || shifted != direct {
                return Err(Failure::Verification(format!(
                    "formulas disagree at cell (m={m}, s={s}): direct={direct} vonszily={vonszily} shifted={shifted}"
                )));
            }
            cells.push(TableCell {
                m,
                s,
                value: direct.to_string(),
            });
        }
    }
    match format {
        TableFormat::Csv => {
            let header: Vec<String> = std::iter::once("m".to_string())
                .chain((0..=max_s).map(|s| format!("s={s}")))
                .collect();
            println!("{}", header.join(","));
            for m in 0..=max_m {
                let row: Vec<String> = std::iter::once(m.to_string())
                    .chain(cells.iter().filter(|c| c.m == m).map(|c| c.value.clone()))
                    .collect();
                println!("{}", row.join(","));
            }
        }
        TableFormat::Json => {
            let doc = TableDoc {
                max_m,
                max_s,
                cells,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc)
                    .map_err(|e| Failure::Verification(e.to_string()))?
            );
        }
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<InclusiveRange, Failure> {
    InclusiveRange::from_str(text).map_err(Failure::from)
}

fn verify(
    kind: KindArg,
    m: &str,
    s: Option<&str>,
    n: Option<&str>,
    engine: EngineArg,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<(), Failure> {
    let kind = CampaignKind::from(kind);
    let m_range = parse_range(m)?;

    let s_range = match (s, n) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage("pass either --s or --n, not both".into()))
        }
        (Some(s), None) => parse_range(s)?,
        (None, Some(n)) => {
            if kind != CampaignKind::Involution {
                return Err(Failure::Usage(
                    "--n is only meaningful for involution campaigns".into(),
                ));
            }
            if m_range.lo != m_range.hi {
                return Err(Failure::Usage(
                    "--n needs a single-valued --m; use --s with ranged --m".into(),
                ));
            }
            let n_range = parse_range(n)?;
            if n_range.lo < m_range.lo {
                return Err(Failure::Usage(format!(
                    "involution campaigns need n >= m, got n={} < m={}",
                    n_range.lo, m_range.lo
                )));
            }
            InclusiveRange::new(n_range.lo - m_range.lo, n_range.hi - m_range.lo)?
        }
        (None, None) => match kind {
            CampaignKind::Identities => InclusiveRange::new(0, 6)?,
            CampaignKind::Involution => InclusiveRange::new(0, 4)?,
            CampaignKind::SmallShift | CampaignKind::Injections => InclusiveRange::new(0, 3)?,
            CampaignKind::Shift4 => InclusiveRange::single(4),
            CampaignKind::CensusCrossCheck => InclusiveRange::new(0, 4)?,
        },
    };

    let campaign = Campaign {
        kind,
        m_range,
        s_range,
        engine: engine.into(),
        budget: budget_from_env()?,
    };
    let report = run_campaign(&campaign)?;
    let bytes = serialize_report(
        &report,
        match format {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        },
    )?;
    match out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    let resolved = report
        .summary
        .resolved_variant
        .map(|v| format!(", resolved variant: {v}"))
        .unwrap_or_default();
    eprintln!(
        "{} cases, {} passed, {} failed{resolved}",
        report.cases.len(),
        report.summary.passed,
        report.summary.failed
    );
    if report.has_resource_failure() {
        Err(Failure::Resource(
            "one or more cases exceeded the enumeration budget".into(),
        ))
    } else if !report.all_passed() {
        Err(Failure::Verification("verification failed".into()))
    } else {
        Ok(())
    }
}

fn enumerate(
    m: u64,
    s: u64,
    level: i64,
    predicate: Option<PredicateArg>,
    count_only: bool,
) -> Result<(), Failure> {
    let spec = PathFamilySpec::new(m, s, level)?;
    if let Some(pred) = predicate {
        if level != 0 {
            return Err(Failure::Usage(
                "predicates apply to the level 0 family only".into(),
            ));
        }
        pred.validate_shift(s)?;
    }
    let budget = budget_from_env()?;
    if spec.cardinality() > BigNat::from(budget) {
        return Err(Failure::Resource(format!(
            "family has {} members, budget {budget}",
            spec.cardinality()
        )));
    }

    let mut count = 0u64;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    for member in enumerate_family(&spec) {
        let keep = match predicate {
            Some(pred) => pred.eval(&member, m, s)?,
            None => true,
        };
        if keep {
            count += 1;
            if !count_only {
                writeln!(handle, "{member}")?;
            }
        }
    }
    if count_only {
        writeln!(handle, "{count}")?;
    }
    Ok(())
}

fn census(
    part: PartArg,
    m: Option<u64>,
    s: Option<u64>,
    engine: CensusEngine,
) -> Result<(), Failure> {
    let budget = budget_from_env()?;
    match part {
        PartArg::Head => {
            let m = m.ok_or_else(|| Failure::Usage("--part head needs --m".into()))?;
            let census = match engine {
                CensusEngine::Dp => head_census_dp(m),
                CensusEngine::Brute => {
                    let size = supercatalan::exact::binomial(2 * m, m as i64);
                    if size > BigNat::from(budget) {
                        return Err(Failure::Resource(format!(
                            "{size} heads exceed budget {budget}"
                        )));
                    }
                    head_census_brute(m)
                }
            };
            println!("hit_l1,hit_l2,l1_before_l2,l2_before_l1,count");
            for (f, count) in census.classes() {
                println!(
                    "{},{},{},{},{count}",
                    f.hit_l1, f.hit_l2, f.l1_before_l2, f.l2_before_l1
                );
            }
            println!("total,,,,{}", census.total());
        }
        PartArg::Tail => {
            let s = s.ok_or_else(|| Failure::Usage("--part tail needs --s".into()))?;
            let census = match engine {
                CensusEngine::Dp => tail_census_dp(s)?,
                CensusEngine::Brute => tail_census_brute(s)?,
            };
            println!("hit_l3,hit_l4,l3_then_l4,l4_then_l3,in_band_56,in_band_67,count");
            for (f, count) in census.classes() {
                println!(
                    "{},{},{},{},{},{},{count}",
                    f.hit_l3, f.hit_l4, f.l3_then_l4, f.l4_then_l3, f.in_band_56, f.in_band_67
                );
            }
            println!("total,,,,,,{}", census.total());
        }
    }
    Ok(())
}

fn parse_overlay(text: &str) -> Result<LatticePath, Failure> {
    let (steps, origin) = match text.split_once('@') {
        Some((steps, origin)) => {
            let (x, y) = origin.split_once(',').ok_or_else(|| {
                Failure::Usage(format!("path origin must be \"x,y\", got {origin:?}"))
            })?;
            let x = x
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad origin coordinate {x:?}")))?;
            let y = y
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad origin coordinate {y:?}")))?;
            (steps, GridPoint::new(x, y))
        }
        None => (text, GridPoint::ORIGIN),
    };
    LatticePath::parse(steps, origin).map_err(Failure::from)
}

fn render(
    m: u64,
    s: u64,
    lines: &[String],
    paths: &[String],
    canvas: Option<&str>,
    grid: bool,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let lines = lines
        .iter()
        .map(|token| SegmentId::from_str(token))
        .collect::<Result<Vec<_>, _>>()?;
    let paths = paths
        .iter()
        .map(|text| parse_overlay(text))
        .collect::<Result<Vec<_>, _>>()?;
    let canvas = match canvas {
        Some(text) => {
            let (w, h) = text
                .split_once(',')
                .ok_or_else(|| Failure::Usage(format!("canvas must be \"W,H\", got {text:?}")))?;
            let w = w
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad canvas width {w:?}")))?;
            let h = h
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad canvas height {h:?}")))?;
            Some((w, h))
        }
        None => None,
    };
    let svg = render_svg(&RenderSpec {
        m,
        s,
        lines,
        paths,
        canvas,
        grid,
    })?;
    match out {
        Some(path) => std::fs::write(path, svg)?,
        None => print!("{svg}"),
    }
    Ok(())
}
