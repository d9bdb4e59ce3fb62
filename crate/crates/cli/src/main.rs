use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use glidelogic::circuits::{build_adder, compile_str, evaluate, Circuit, CircuitError};
use glidelogic::components::{
    activate_input, calibrate, load_gate, ComponentError, GateKind, DEFAULT_SEARCH_RANGE,
    FIXTURE_DIR_VAR,
};
use glidelogic::engine::{detect_stabilization, find_gliders, Bounds, Universe};
use glidelogic::patterns::{catalog, catalog_names, rle};
use thiserror::Error;

mod output;
mod pbm;

use output::Output;

#[derive(Parser)]
#[command(
    name = "glidelogic",
    version,
    about = "Logic gates from glider streams in Conway's Game of Life"
)]
struct Cli {
    /// Aligned, human-readable output instead of key=value lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a pattern and report metrics.
    ///
    /// PATTERN is a catalog name, `gate:AND|OR|NOT`, or an RLE file.
    Run {
        pattern: String,
        generations: u64,
        /// Metrics to print; may be repeated or comma-separated.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "population")]
        report: Vec<Metric>,
        /// Report every this many generations (the last one is always reported).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        every: u64,
        /// Longest period looked for by the stabilization report.
        #[arg(long, default_value_t = 30)]
        max_period: u64,
    },
    /// Compile an expression and evaluate it by simulation.
    Eval {
        expression: String,
        /// Variable values as NAME=0 or NAME=1.
        assignments: Vec<String>,
    },
    /// Add two 2-bit numbers on one lattice.
    Adder { x: String, y: String },
    /// Write portable-bitmap frames of a pattern or compiled circuit.
    Render {
        /// Catalog name, `gate:AND|OR|NOT`, RLE file, or with --circuit an expression.
        target: String,
        generations: u64,
        #[arg(long, default_value_t = 1)]
        every: u64,
        #[arg(long, default_value = "frames")]
        out: PathBuf,
        /// Treat TARGET as an expression and render its circuit.
        #[arg(long)]
        circuit: bool,
        /// Circuit inputs as NAME=0|1; unset variables are false.
        #[arg(long = "set")]
        assignments: Vec<String>,
    },
    /// Search for a gate layout and write it as a fixture.
    Calibrate {
        gate: GateKind,
        /// Along-lane shifts tried per part are below this in magnitude.
        #[arg(long, default_value_t = DEFAULT_SEARCH_RANGE)]
        search_range: u32,
        /// Output directory; defaults to `$LIFE_FIXTURE_DIR/gates`, else `fixtures/gates`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    Population,
    Bbox,
    Gliders,
    Stabilization,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Calibration(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Calibration(_) => 4,
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::Parse(p) => CliError::Input(format!("parse error at {p}")),
            CircuitError::MissingVariable(_) => CliError::Semantic(e.to_string()),
            other => CliError::Calibration(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.pretty);
    match dispatch(cli.command, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command, out: &mut Output) -> Result<(), CliError> {
    match command {
        Command::Run {
            pattern,
            generations,
            report,
            every,
            max_period,
        } => run(&pattern, generations, &report, every, max_period, out),
        Command::Eval {
            expression,
            assignments,
        } => eval(&expression, &assignments, out),
        Command::Adder { x, y } => adder(&x, &y, out),
        Command::Render {
            target,
            generations,
            every,
            out: dir,
            circuit,
            assignments,
        } => {
            let u = if circuit {
                circuit_universe(&target, &assignments)?
            } else {
                resolve(&target)?
            };
            render(u, generations, every, &dir, out)
        }
        Command::Calibrate {
            gate,
            search_range,
            out: dir,
        } => calibrate_gate(gate, search_range, dir, out),
    }
}

/// Loads a catalog pattern, a gate fixture or an RLE file.
fn resolve(spec: &str) -> Result<Universe, CliError> {
    if let Some(name) = spec.strip_prefix("gate:") {
        let kind: GateKind = name.parse().map_err(CliError::Input)?;
        return load_gate(kind)
            .map(|g| g.universe())
            .map_err(|e| CliError::Input(e.to_string()));
    }
    if let Ok(p) = catalog(spec) {
        return Ok(p.to_universe());
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::Input(format!(
            "`{spec}` is neither a catalog pattern ({}) nor a readable file",
            catalog_names().join(", ")
        )));
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    let body = rle::parse(&text).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    Ok(Universe::from_cells(body.cells))
}

fn bbox_text(b: Option<Bounds>) -> String {
    match b {
        Some(b) => format!("{},{}..{},{}", b.min.x, b.min.y, b.max.x, b.max.y),
        None => "empty".into(),
    }
}

fn run(
    pattern: &str,
    generations: u64,
    report: &[Metric],
    every: u64,
    max_period: u64,
    out: &mut Output,
) -> Result<(), CliError> {
    let start = resolve(pattern)?;
    let per_generation: Vec<Metric> = report
        .iter()
        .copied()
        .filter(|&m| m != Metric::Stabilization)
        .collect();
    if !per_generation.is_empty() {
        let mut u = start.clone();
        loop {
            let g = u.generation();
            if g % every == 0 || g == generations {
                let mut row = vec![("generation", g.to_string())];
                for m in &per_generation {
                    row.push(match m {
                        Metric::Population => ("population", u.population().to_string()),
                        Metric::Bbox => ("bbox", bbox_text(u.bounding_box())),
                        Metric::Gliders => ("gliders", find_gliders(&u).len().to_string()),
                        Metric::Stabilization => unreachable!(),
                    });
                }
                out.row(row);
            }
            if g == generations {
                break;
            }
            u.advance(1);
        }
    }
    if report.contains(&Metric::Stabilization) {
        match detect_stabilization(&start, generations, max_period) {
            Some(s) => out.row(vec![
                ("stabilized_at", s.stabilized_at.to_string()),
                ("period", s.period.to_string()),
            ]),
            None => out.row(vec![("stabilized_at", "none".to_string())]),
        }
    }
    Ok(())
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, bool>, CliError> {
    let mut map = BTreeMap::new();
    for item in items {
        let bad = || CliError::Input(format!("expected NAME=0 or NAME=1, got `{item}`"));
        let (name, value) = item.split_once('=').ok_or_else(bad)?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        if name.trim().is_empty() {
            return Err(bad());
        }
        map.insert(name.trim().to_string(), value);
    }
    Ok(map)
}

fn check_known(c: &Circuit, values: &BTreeMap<String, bool>) -> Result<(), CliError> {
    let vars = c.variables();
    match values.keys().find(|k| !vars.contains(k)) {
        Some(k) => Err(CliError::Semantic(format!(
            "`{k}` does not occur in the expression"
        ))),
        None => Ok(()),
    }
}

fn eval(expression: &str, assignments: &[String], out: &mut Output) -> Result<(), CliError> {
    let c = compile_str(expression)?;
    let values = parse_assignments(assignments)?;
    check_known(&c, &values)?;
    let result = evaluate(&c, &values)?;
    out.record(vec![
        ("result", result.to_string()),
        ("expression", c.expr.to_string()),
        ("probe_generation", c.probe_generation.to_string()),
        ("probe_window", c.probe_window.to_string()),
        ("gun_count", c.gun_count.to_string()),
        ("gates", c.gates.len().to_string()),
        ("output_heading", c.output_heading.to_string()),
    ]);
    Ok(())
}

fn operand(s: &str) -> Result<u8, CliError> {
    if s.len() == 2 && s.chars().all(|c| c == '0' || c == '1') {
        Ok(u8::from_str_radix(s, 2).expect("two binary digits"))
    } else {
        Err(CliError::Input(format!(
            "operands are two binary digits, got `{s}`"
        )))
    }
}

fn adder(x: &str, y: &str, out: &mut Output) -> Result<(), CliError> {
    let (a, b) = (operand(x)?, operand(y)?);
    let adder = build_adder()?;
    let [b0, b1, b2] = adder.evaluate(a, b);
    let bit = |v: bool| u8::from(v).to_string();
    out.record(vec![
        ("result", format!("{}{}{}", bit(b2), bit(b1), bit(b0))),
        ("b2", bit(b2)),
        ("b1", bit(b1)),
        ("b0", bit(b0)),
        ("gun_count", adder.gun_count().to_string()),
    ]);
    Ok(())
}

fn circuit_universe(expression: &str, assignments: &[String]) -> Result<Universe, CliError> {
    let c = compile_str(expression)?;
    let values = parse_assignments(assignments)?;
    check_known(&c, &values)?;
    let mut u = c.universe();
    for (var, idx) in &c.layout.inputs {
        if values.get(var).copied().unwrap_or(false) {
            u = activate_input(&u, &c.layout.parts[*idx])
                .map_err(|e| CliError::Semantic(e.to_string()))?;
        }
    }
    Ok(u)
}

fn render(
    start: Universe,
    generations: u64,
    every: u64,
    dir: &Path,
    out: &mut Output,
) -> Result<(), CliError> {
    if every == 0 {
        return Err(CliError::Input("--every must be at least 1".into()));
    }
    let mut frames = Vec::new();
    let mut u = start;
    loop {
        if u.generation().is_multiple_of(every) {
            frames.push(u.clone());
        }
        if u.generation() >= generations {
            break;
        }
        u.advance(1);
    }
    let region = frames
        .iter()
        .filter_map(Universe::bounding_box)
        .reduce(|a, b| a.union(&b))
        .unwrap_or(Bounds {
            min: Default::default(),
            max: Default::default(),
        });
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let width = generations.to_string().len().max(6);
    for f in &frames {
        let path = dir.join(format!("frame_{:0width$}.pbm", f.generation()));
        std::fs::write(&path, pbm::encode(f, &region))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    out.record(vec![
        ("frames", frames.len().to_string()),
        ("region", bbox_text(Some(region))),
        ("dir", dir.display().to_string()),
    ]);
    Ok(())
}

fn calibrate_gate(
    kind: GateKind,
    range: u32,
    dir: Option<PathBuf>,
    out: &mut Output,
) -> Result<(), CliError> {
    let dir = dir.unwrap_or_else(|| match std::env::var_os(FIXTURE_DIR_VAR) {
        Some(d) => Path::new(&d).join("gates"),
        None => PathBuf::from("fixtures/gates"),
    });
    let t = calibrate(kind, range).map_err(|e| match e {
        ComponentError::NoValidPlacement(_) => CliError::Calibration(e.to_string()),
        other => CliError::Semantic(other.to_string()),
    })?;
    let mut record = vec![
        ("gate", kind.to_string()),
        (
            "tweak",
            t.tweak
                .iter()
                .map(i32::to_string)
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("probe_generation", t.probe_generation.to_string()),
        ("probe_window", t.probe_window.to_string()),
    ];
    let passed = t
        .certificate
        .iter()
        .filter(|r| r.output == kind.apply(&r.inputs))
        .count();
    for row in &t.certificate {
        record.push(("certificate", row.to_string()));
    }
    record.push(("passed", format!("{passed}/{}", t.certificate.len())));
    let (rle_path, gate_path) = t
        .write_fixture(&dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    record.push(("rle", rle_path.display().to_string()));
    record.push(("sidecar", gate_path.display().to_string()));
    out.record(record);
    if passed != t.certificate.len() {
        return Err(CliError::Calibration("certificate has failing rows".into()));
    }
    Ok(())
}
