use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use m12sl3::coset::{enumerate, EnumerationLimits, EnumerationStats, Strategy};
use m12sl3::perm::{recognize, Perm, PermGroup};
use m12sl3::verify::{list_scenarios, run_all, VerifyConfig};
use m12sl3::words::{catalog, parse_presentation, parse_word};

/// Stdout writes that tolerate a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outraw {
    ($s:expr) => {{
        let _ = std::io::stdout().lock().write_all($s.as_bytes());
    }};
}

#[derive(Parser)]
#[command(name = "m12sl3", version, about = "Recompute the 3-local identification of M12 and SL3(3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification scenarios (`all` for the whole registry).
    Verify(VerifyArgs),
    /// List the registered scenarios.
    List,
    /// Enumerate cosets of a subgroup in a finitely presented group.
    Enumerate(EnumerateArgs),
    /// Order and shape of a permutation group given by generators.
    Order(OrderArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Caps {
    #[arg(long)]
    max_cosets: Option<usize>,
    #[arg(long)]
    strategy: Option<Strategy>,
    /// Seconds per enumeration.
    #[arg(long)]
    time_cap: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required = true)]
    scenarios: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[command(flatten)]
    caps: Caps,
    #[arg(long)]
    iso_step_cap: Option<u64>,
    /// TOML file with global settings and `[scenarios.NAME]` overrides.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Omit wall times so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    presentation: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<String>,
    /// Subgroup generators, separated by `;`. Defaults to the catalog entry's subgroup.
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[command(flatten)]
    caps: Caps,
    /// Write the standardized table as JSON.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    /// One permutation per line in 1-based cycle notation, optionally `name: (1,2)(3,4)`;
    /// an optional `degree N` line fixes the degree.
    #[arg(long)]
    generators: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Exit status 2: bad input or a resource cap.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Fatal> {
    let mut config: VerifyConfig = match &args.config {
        Some(p) => toml::from_str(&read(p)?).map_err(|e| Fatal(format!("{}: {e}", p.display())))?,
        None => VerifyConfig::default(),
    };
    if let Some(bad) = config.unknown_overrides().first() {
        return Err(Fatal(format!("config names unknown scenario `{bad}`")));
    }
    let base = &mut config.base;
    base.max_cosets = args.caps.max_cosets.unwrap_or(base.max_cosets);
    base.strategy = args.caps.strategy.unwrap_or(base.strategy);
    base.time_cap = args.caps.time_cap.or(base.time_cap);
    base.iso_step_cap = args.iso_step_cap.unwrap_or(base.iso_step_cap);
    if args.no_timing {
        config.timing = false;
    }
    let names: Vec<&str> = args.scenarios.iter().map(String::as_str).collect();
    let report = run_all(&names, &config)?;
    match args.format {
        Format::Text => outraw!(report.to_text()),
        Format::Json => out!("{}", report.to_json()),
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct EnumerationSummary {
    presentation_hash: String,
    generators: Vec<String>,
    index: usize,
    strategy: Strategy,
    stats: EnumerationStats,
}

fn enumerate_cmd(args: EnumerateArgs) -> Result<ExitCode, Fatal> {
    let (p, default_sub) = match (&args.presentation, &args.catalog) {
        (Some(path), _) => (parse_presentation(&read(path)?)?, Vec::new()),
        (None, Some(name)) => {
            let e = catalog(name)?;
            (e.presentation, e.subgroup_words)
        }
        (None, None) => return Err(Fatal("give --presentation or --catalog".into())),
    };
    let sub = match &args.subgroup {
        Some(text) => text
            .split(';')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| parse_word(w, p.generators()))
            .collect::<Result<Vec<_>, _>>()?,
        None => default_sub,
    };
    let defaults = EnumerationLimits::default();
    let limits = EnumerationLimits {
        max_cosets: args.caps.max_cosets.unwrap_or(defaults.max_cosets),
        strategy: args.caps.strategy.unwrap_or(defaults.strategy),
        time_cap: args.caps.time_cap.map(std::time::Duration::from_secs_f64),
    };
    let table = enumerate(&p, &sub, &limits)?;
    if let Some(path) = &args.dump {
        fs::write(path, table.to_json()).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    }
    let summary = EnumerationSummary {
        presentation_hash: table.presentation_hash(),
        generators: p.generators().to_vec(),
        index: table.live_count(),
        strategy: limits.strategy,
        stats: table.stats().clone(),
    };
    match args.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&summary)?),
        Format::Text => {
            let s = &summary.stats;
            out!("index {}", summary.index);
            out!("strategy {}, peak {} rows, {} defined, {} coincidences", summary.strategy, s.max_rows, s.total_defined, s.coincidences);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_generators(text: &str) -> Result<(usize, Vec<(String, String)>), Fatal> {
    let mut degree = None;
    let mut gens = Vec::new();
    for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
        if let Some(d) = line.strip_prefix("degree") {
            degree = Some(d.trim().parse::<usize>().map_err(|_| Fatal(format!("bad degree line `{line}`")))?);
            continue;
        }
        let (name, cycles) = match line.split_once(':') {
            Some((n, c)) => (n.trim().to_string(), c.trim().to_string()),
            None => (format!("g{}", gens.len() + 1), line.to_string()),
        };
        gens.push((name, cycles));
    }
    let max_point = gens
        .iter()
        .flat_map(|(_, c)| c.split(|ch: char| !ch.is_ascii_digit()).filter_map(|s| s.parse::<usize>().ok()))
        .max()
        .unwrap_or(1);
    Ok((degree.unwrap_or(max_point), gens))
}

#[derive(Serialize)]
struct OrderSummary {
    degree: usize,
    order: u64,
    orbits: Vec<usize>,
    transitive: bool,
    recognized: Option<String>,
}

fn order_cmd(args: OrderArgs) -> Result<ExitCode, Fatal> {
    let (degree, raw) = parse_generators(&read(&args.generators)?)?;
    let gens = raw
        .iter()
        .map(|(name, c)| Perm::parse(degree, c).map_err(|e| Fatal(format!("{name}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let g = PermGroup::new(degree, gens);
    let summary = OrderSummary {
        degree,
        order: g.order(),
        orbits: g.orbits().iter().map(Vec::len).collect(),
        transitive: g.is_transitive(),
        recognized: recognize(&g)?.map(|s| format!("{s:?}")),
    };
    match args.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&summary)?),
        Format::Text => {
            out!("order {}", summary.order);
            out!("degree {}, orbit sizes {:?}", summary.degree, summary.orbits);
            if let Some(r) = &summary.recognized {
                out!("isomorphic to {r}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::List => {
            for s in list_scenarios() {
                out!("{:<22} {}", s.name, s.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate(a) => enumerate_cmd(a),
        Command::Order(a) => order_cmd(a),
    };
    result.unwrap_or_else(|Fatal(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
