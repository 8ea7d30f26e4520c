mod settings;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bloomtwin::io::{
    emit_plot_data, format_fixed, parse_competency_map, parse_event_csv, parse_generator_config,
    parse_indicator_csv, parse_scenario, to_json, write_event_csv, write_indicator_csv,
    write_report, write_report_json, SeriesTable,
};
use bloomtwin::{
    apply_scenario, audit_costs, bind_competencies, compare_regimes, generate_competency_map,
    generate_enterprise, indicator_series, CorrelationMode, CostInput, ReductionMode, Startup,
    WindowSpec,
};
use clap::{Args, Parser, Subcommand};

use settings::Settings;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation; exit code 2.
    Usage(String),
    /// Invalid input data; exit code 1.
    Failure(String),
}

impl From<bloomtwin::Error> for CliError {
    fn from(err: bloomtwin::Error) -> Self {
        CliError::Failure(err.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "bloomtwin",
    version,
    about = "Enterprise digital twin with a competency correlation indicator"
)]
struct Cli {
    /// JSON file supplying flag values; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    settings: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a synthetic enterprise event matrix (and competency map).
    Simulate(SimulateArgs),
    /// Compute the indicator series for events bound through a competency map.
    Indicate(IndicateArgs),
    /// Print the grand total of an indicator series.
    Total(TotalArgs),
    /// Compare two regimes by total indicator and cost.
    Compare(CompareArgs),
    /// Apply scenario interventions to an event matrix.
    Scenario(ScenarioArgs),
    /// Emit rounded plot data for an indicator series.
    PlotData(PlotDataArgs),
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "map-out")]
    map_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IndicateArgs {
    #[arg(long)]
    events: Option<PathBuf>,
    #[arg(long)]
    map: Option<PathBuf>,
    /// Window length in periods [default: 12]
    #[arg(long)]
    k: Option<usize>,
    /// raw | standardized [default: standardized]
    #[arg(long)]
    mode: Option<String>,
    /// skip | grow [default: skip]
    #[arg(long)]
    startup: Option<String>,
    /// aggregate | masked [default: taken from the map file]
    #[arg(long)]
    reduction: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TotalArgs {
    #[arg(long)]
    series: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long = "series-a")]
    series_a: Option<PathBuf>,
    #[arg(long = "series-b")]
    series_b: Option<PathBuf>,
    /// Display name for regime A [default: file stem]
    #[arg(long = "name-a")]
    name_a: Option<String>,
    #[arg(long = "name-b")]
    name_b: Option<String>,
    /// Cost input JSON for regime A
    #[arg(long = "cost-a")]
    cost_a: Option<PathBuf>,
    #[arg(long = "cost-b")]
    cost_b: Option<PathBuf>,
    /// Budget C in thousand rubles
    #[arg(long)]
    budget: Option<f64>,
    /// Emit the comparison as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    #[arg(long)]
    events: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotDataArgs {
    #[arg(long)]
    series: Option<PathBuf>,
    /// Decimal places [default: 2]
    #[arg(long)]
    precision: Option<usize>,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

pub(crate) fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, result: bloomtwin::Result<T>) -> CliResult<T> {
    result.map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn parse_flag<T: std::str::FromStr<Err = String>>(value: String) -> CliResult<T> {
    value.parse().map_err(CliError::Usage)
}

fn load_series(path: &Path) -> CliResult<SeriesTable> {
    with_path(path, parse_indicator_csv(&read(path)?))
}

fn simulate(args: SimulateArgs, s: &Settings) -> CliResult {
    let config_path: PathBuf = s.require(args.config, "simulate", "config")?;
    let out: PathBuf = s.require(args.out, "simulate", "out")?;
    let map_out: Option<PathBuf> = s.pick(args.map_out, "simulate", "map-out", None)?;

    let config = with_path(&config_path, parse_generator_config(&read(&config_path)?))?;
    let events = generate_enterprise(&config)?;
    write(&out, &write_event_csv(&events))?;
    if let Some(map_out) = map_out {
        let map = generate_competency_map(&config, events.channels())?;
        write(&map_out, &to_json(&map))?;
    }
    eprintln!(
        "{} periods x {} channels -> {}",
        events.periods(),
        events.channels(),
        out.display()
    );
    Ok(())
}

fn indicate(args: IndicateArgs, s: &Settings) -> CliResult {
    const CMD: &str = "indicate";
    let events_path: PathBuf = s.require(args.events, CMD, "events")?;
    let map_path: PathBuf = s.require(args.map, CMD, "map")?;
    let out: PathBuf = s.require(args.out, CMD, "out")?;
    let k = s
        .pick(args.k, CMD, "k", Some(bloomtwin::indicator::DEFAULT_WINDOW))?
        .unwrap_or_default();
    let mode: CorrelationMode = match s.pick(args.mode, CMD, "mode", None)? {
        Some(m) => parse_flag(m)?,
        None => CorrelationMode::default(),
    };
    let startup: Startup = match s.pick(args.startup, CMD, "startup", None)? {
        Some(m) => parse_flag(m)?,
        None => Startup::default(),
    };
    let reduction: Option<ReductionMode> = s
        .pick(args.reduction, CMD, "reduction", None)?
        .map(parse_flag)
        .transpose()?;
    let spec = WindowSpec::new(k, mode, startup).map_err(|e| CliError::Usage(e.to_string()))?;

    let events = with_path(&events_path, parse_event_csv(&read(&events_path)?))?;
    let mut map = with_path(&map_path, parse_competency_map(&read(&map_path)?))?;
    if let Some(reduction) = reduction {
        map.reduction = reduction;
    }
    let signal = bind_competencies(&events, &map)?;
    let series = indicator_series(&signal, &spec)?;
    write(&out, &write_indicator_csv(&series))?;
    eprintln!(
        "{} periods (t = {}..{}) x {} channels, V = {}",
        series.len(),
        series.first_t().unwrap_or(0),
        series.last_t().unwrap_or(0),
        signal.channels(),
        format_fixed(series.grand_total, 2)
    );
    Ok(())
}

fn total(args: TotalArgs, s: &Settings) -> CliResult {
    let path: PathBuf = s.require(args.series, "total", "series")?;
    let table = load_series(&path)?;
    let total = table.effective_total();
    println!(
        "V = {total} ({}) over {} periods",
        format_fixed(total, 2),
        table.rows.len()
    );
    if let (Some(declared), Some(consistent)) = (table.declared_total, table.total_consistent()) {
        if consistent {
            println!(
                "declared total {declared}: consistent (tolerance {})",
                table.rounding_tolerance()
            );
        } else {
            eprintln!(
                "warning: declared total {declared} differs from replayed total {total} by more than {}",
                table.rounding_tolerance()
            );
        }
    }
    Ok(())
}

fn regime_name(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn compare(args: CompareArgs, s: &Settings) -> CliResult {
    const CMD: &str = "compare";
    let path_a: PathBuf = s.require(args.series_a, CMD, "series-a")?;
    let path_b: PathBuf = s.require(args.series_b, CMD, "series-b")?;
    let name_a = s
        .pick(args.name_a, CMD, "name-a", None)?
        .unwrap_or_else(|| regime_name(&path_a));
    let name_b = s
        .pick(args.name_b, CMD, "name-b", None)?
        .unwrap_or_else(|| regime_name(&path_b));
    let cost_a: Option<PathBuf> = s.pick(args.cost_a, CMD, "cost-a", None)?;
    let cost_b: Option<PathBuf> = s.pick(args.cost_b, CMD, "cost-b", None)?;
    let budget: Option<f64> = s.pick(args.budget, CMD, "budget", None)?;
    let json = args.json || s.get(CMD, "json")?.unwrap_or(false);

    let costs = match (cost_a, cost_b, budget) {
        (None, None, None) => None,
        (Some(a), Some(b), Some(budget)) => {
            let load = |p: &Path| -> CliResult<CostInput> {
                with_path(p, bloomtwin::io::from_json(&read(p)?))
            };
            Some((
                audit_costs(&load(&a)?, budget),
                audit_costs(&load(&b)?, budget),
            ))
        }
        _ => {
            return Err(CliError::Usage(
                "--cost-a, --cost-b and --budget go together".into(),
            ))
        }
    };

    let total_a = load_series(&path_a)?.effective_total();
    let total_b = load_series(&path_b)?.effective_total();
    let comparison = compare_regimes((&name_a, total_a), (&name_b, total_b), costs)?;
    if json {
        println!("{}", write_report_json(&comparison));
    } else {
        print!("{}", write_report(&comparison));
    }
    Ok(())
}

fn scenario(args: ScenarioArgs, s: &Settings) -> CliResult {
    let events_path: PathBuf = s.require(args.events, "scenario", "events")?;
    let scenario_path: PathBuf = s.require(args.scenario, "scenario", "scenario")?;
    let out: PathBuf = s.require(args.out, "scenario", "out")?;
    let events = with_path(&events_path, parse_event_csv(&read(&events_path)?))?;
    let scenario = with_path(&scenario_path, parse_scenario(&read(&scenario_path)?))?;
    let applied = apply_scenario(&events, &scenario.interventions)?;
    write(&out, &write_event_csv(&applied))?;
    eprintln!(
        "{} interventions applied, event total {} -> {}",
        scenario.interventions.len(),
        format_fixed(events.total(), 2),
        format_fixed(applied.total(), 2)
    );
    Ok(())
}

fn plot_data(args: PlotDataArgs, s: &Settings) -> CliResult {
    let path: PathBuf = s.require(args.series, "plot-data", "series")?;
    let precision = s
        .pick(args.precision, "plot-data", "precision", Some(2))?
        .unwrap_or(2);
    let out: Option<PathBuf> = s.pick(args.out, "plot-data", "out", None)?;
    let series = load_series(&path)?.to_indicator_series();
    let text = emit_plot_data(&series, precision);
    match out {
        Some(out) => write(&out, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let settings = Settings::load(cli.settings.as_deref())?;
    match cli.command {
        Command::Simulate(a) => simulate(a, &settings),
        Command::Indicate(a) => indicate(a, &settings),
        Command::Total(a) => total(a, &settings),
        Command::Compare(a) => compare(a, &settings),
        Command::Scenario(a) => scenario(a, &settings),
        Command::PlotData(a) => plot_data(a, &settings),
    }
}

fn main() -> ExitCode {
    // clap exits with code 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
