mod cli;
mod config;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use acstark::scan::CSV_HEADER;
use acstark::tables::{printed_resolution, reference_table};
use acstark::verify::{Component, VerifyReport};
use acstark::{
    eval_point, frequency_grid, nearest_resonance, resonance_locator, scan, verify_table, Error, EvalConfig,
    Evaluator, ObservableSet, PhotonFrequency, ScanOptions, ScanRecord, Spacing, TableId, ToleranceMode,
};
use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command, Format, Obs, SpacingArg};
use config::Settings;
use table::{write_rows, Cell, Row};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 3;

enum Failure {
    Usage(String),
    Domain(String),
    Verify,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn library_failure(e: Error, omega: f64) -> Failure {
    match e {
        Error::InvalidArgument(msg) => Failure::Usage(msg),
        Error::ResonancePole { .. } => Failure::Domain(e.to_string()),
        other => {
            let mut msg = other.to_string();
            match nearest_resonance(omega) {
                Some((n, omega_n)) => {
                    msg.push_str(&format!("; nearest intermediate resonance n = {n} at omega_n = {omega_n}"))
                }
                None if omega >= 0.5 => msg.push_str("; the intermediate resonances accumulate at omega = 1/2"),
                None => {}
            }
            Failure::Domain(msg)
        }
    }
}

fn evaluator(s: &Settings) -> Evaluator {
    let mut cfg = EvalConfig::default();
    if let Some(tol) = s.tol {
        cfg = cfg.with_tolerance(tol);
    }
    if let Some(g) = s.guard {
        cfg.continuation.pole_guard = g;
    }
    if let Some(b) = s.warn_band {
        cfg.continuation.warn_band = b;
    }
    if let Some(t) = s.threshold_guard {
        cfg.threshold_guard = t;
    }
    Evaluator::new(cfg)
}

fn observables(obs: Obs) -> ObservableSet {
    match obs {
        Obs::Tau2 => ObservableSet::TAU2,
        Obs::Kh => ObservableSet::KH,
        Obs::All => ObservableSet::ALL,
    }
}

fn record_row(r: &ScanRecord) -> Row {
    Row::new()
        .push("omega", Cell::Float(Some(r.omega)))
        .push("tau_re", Cell::Float(r.tau_re))
        .push("tau_im", Cell::Float(r.tau_im))
        .push("m_re", Cell::Float(r.m_re))
        .push("m_im", Cell::Float(r.m_im))
        .push("m_abs2", Cell::Float(r.m_abs2))
        .push("near_resonance", Cell::Bool(r.near_resonance))
        .push("continuation_depth", Cell::Int(i64::from(r.continuation_depth)))
        .push("error", Cell::Text(r.error.clone()))
}

fn parse_omega(omega: f64) -> Result<PhotonFrequency, Failure> {
    PhotonFrequency::new(omega).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_eval(out: &mut dyn Write, s: &Settings, omega: f64, obs: Obs) -> Result<(), Failure> {
    parse_omega(omega)?;
    let rec = eval_point(&evaluator(s), omega, observables(obs)).map_err(|e| library_failure(e, omega))?;
    if rec.near_resonance {
        eprintln!("warning: omega = {omega} is close to an intermediate resonance; reduced confidence");
    }
    write_rows(out, s.format.unwrap_or(Format::Csv), &CSV_HEADER, &[record_row(&rec)], true)?;
    Ok(())
}

fn cmd_scan(
    out: &mut dyn Write,
    s: &Settings,
    (start, end, steps): (f64, f64, usize),
    spacing: SpacingArg,
    obs: Obs,
) -> Result<(), Failure> {
    let spacing = match spacing {
        SpacingArg::Linear => Spacing::Linear,
        SpacingArg::Log => Spacing::Log,
    };
    let grid = frequency_grid(start, end, steps, spacing).map_err(|e| Failure::Usage(e.to_string()))?;
    let opts = ScanOptions {
        spacing,
        skip_resonances: s.skip_resonances,
    };
    let records = scan(&evaluator(s), &grid, observables(obs), opts);
    for r in &records {
        if let Some(e) = &r.error {
            eprintln!("warning: omega = {}: {e}", r.omega);
        }
    }
    let rows: Vec<Row> = records.iter().map(record_row).collect();
    write_rows(out, s.format.unwrap_or(Format::Csv), &CSV_HEADER, &rows, false)?;
    Ok(())
}

fn decimals(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, f)| f.len())
}

fn component_name(c: Component) -> &'static str {
    match c {
        Component::Re => "Re",
        Component::Im => "Im",
    }
}

fn write_report_text(out: &mut dyn Write, report: &VerifyReport) -> io::Result<()> {
    let t = reference_table(report.table);
    writeln!(out, "{}: {}", report.table.name(), t.caption)?;
    writeln!(
        out,
        "  {:<8} {:<4} {:>12} {:>14} {:>10}  status",
        "omega", "part", "printed", "computed", "delta/ulp"
    )?;
    for c in &report.cells {
        let shown = decimals(&c.printed) + 2;
        let units = c.delta / printed_resolution(&c.printed);
        writeln!(
            out,
            "  {:<8} {:<4} {:>12} {:>14.*} {:>+10.2}  {}",
            c.omega,
            component_name(c.component),
            c.printed,
            shown,
            c.computed,
            units,
            if c.pass { "pass" } else { "FAIL" }
        )?;
    }
    for e in &report.errors {
        writeln!(out, "  {:<8} error: {}", e.omega, e.message)?;
    }
    for (omega, why) in &report.skipped {
        writeln!(out, "  {omega:<8} skipped: {why}")?;
    }
    let passed = report.cells.iter().filter(|c| c.pass).count();
    writeln!(
        out,
        "{}: {passed}/{} cells pass, {} row errors -> {}",
        report.table.name(),
        report.cells.len(),
        report.errors.len(),
        if report.passed() { "PASS" } else { "FAIL" }
    )
}

const VERIFY_HEADER: [&str; 9] = [
    "table",
    "omega",
    "component",
    "printed",
    "computed",
    "delta",
    "tolerance",
    "pass",
    "external",
];

fn report_rows(report: &VerifyReport) -> Vec<Row> {
    let mut rows: Vec<Row> = report
        .cells
        .iter()
        .map(|c| {
            Row::new()
                .text("table", report.table.name())
                .float("omega", c.omega)
                .text("component", component_name(c.component))
                .text("printed", c.printed.clone())
                .float("computed", c.computed)
                .float("delta", c.delta)
                .float("tolerance", c.tolerance)
                .push("pass", Cell::Bool(c.pass))
                .push("external", Cell::Text(c.external.clone()))
        })
        .collect();
    rows.extend(report.errors.iter().map(|e| {
        Row::new()
            .text("table", report.table.name())
            .float("omega", e.omega)
            .push("pass", Cell::Bool(false))
            .text("error", e.message.clone())
    }));
    rows
}

fn cmd_verify(
    out: &mut dyn Write,
    s: &Settings,
    tables: &[String],
    units: Option<f64>,
    rel: Option<f64>,
) -> Result<(), Failure> {
    let ids: Vec<TableId> = if tables.is_empty() {
        TableId::ALL.to_vec()
    } else {
        tables
            .iter()
            .map(|t| t.parse::<TableId>().map_err(Failure::Usage))
            .collect::<Result<_, _>>()?
    };
    let mode = match (units, rel) {
        (_, Some(r)) => {
            config::positive("rel", r).map_err(Failure::Usage)?;
            ToleranceMode::Relative { rel: r }
        }
        (Some(u), None) => {
            config::positive("units", u).map_err(Failure::Usage)?;
            ToleranceMode::Printed { units: u }
        }
        (None, None) => ToleranceMode::default(),
    };
    let e = evaluator(s);
    let reports: Vec<VerifyReport> = ids.iter().map(|&id| verify_table(&e, id, mode)).collect();
    match s.format {
        None => {
            for r in &reports {
                write_report_text(out, r)?;
            }
        }
        Some(f) => {
            let rows: Vec<Row> = reports.iter().flat_map(report_rows).collect();
            write_rows(out, f, &VERIFY_HEADER, &rows, false)?;
        }
    }
    if reports.iter().all(VerifyReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_resonances(out: &mut dyn Write, s: &Settings, n_max: u32) -> Result<(), Failure> {
    let list = resonance_locator(n_max).map_err(|e| Failure::Usage(e.to_string()))?;
    let rows: Vec<Row> = list
        .iter()
        .zip(2..)
        .map(|(&w, n)| Row::new().push("n", Cell::Int(n)).float("omega", w))
        .collect();
    write_rows(out, s.format.unwrap_or(Format::Csv), &["n", "omega"], &rows, false)?;
    Ok(())
}

fn cmd_xsection(out: &mut dyn Write, s: &Settings, omega: f64, theta: Option<f64>, eps_dot: Option<f64>) -> Result<(), Failure> {
    let w = parse_omega(omega)?;
    let e = evaluator(s);
    let m = e.kh_matrix(w).map_err(|err| library_failure(err, omega))?.value;
    let m_abs2 = m.norm_sqr();
    let value = match (theta, eps_dot) {
        (Some(t), _) => e.cross_section_unpolarized(w, t).map(|c| c.value),
        (None, Some(d)) => e.cross_section_polarized(w, d),
        (None, None) => unreachable!("clap requires one of --theta and --eps-dot"),
    }
    .map_err(|err| library_failure(err, omega))?;
    let row = Row::new()
        .float("omega", omega)
        .push("theta", Cell::Float(theta))
        .push("eps_dot", Cell::Float(eps_dot))
        .float("m_re", m.re)
        .float("m_im", m.im)
        .float("m_abs2", m_abs2)
        .float("cross_section", value);
    let header = ["omega", "theta", "eps_dot", "m_re", "m_im", "m_abs2", "cross_section"];
    write_rows(out, s.format.unwrap_or(Format::Csv), &header, &[row], true)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let settings = config::resolve(&cli.common).map_err(Failure::Usage)?;
    let mut buffer: Vec<u8> = Vec::new();
    let result = match &cli.command {
        Command::Eval { omega, obs } => cmd_eval(&mut buffer, &settings, *omega, *obs),
        Command::Scan {
            start,
            end,
            steps,
            spacing,
            obs,
        } => cmd_scan(&mut buffer, &settings, (*start, *end, *steps), *spacing, *obs),
        Command::Verify { tables, units, rel } => cmd_verify(&mut buffer, &settings, tables, *units, *rel),
        Command::Resonances { n_max } => cmd_resonances(&mut buffer, &settings, *n_max),
        Command::Xsection { omega, theta, eps_dot } => cmd_xsection(&mut buffer, &settings, *omega, *theta, *eps_dot),
    };
    // A failed verification still produces its report.
    if matches!(result, Ok(()) | Err(Failure::Verify)) {
        match &cli.common.output {
            Some(path) => {
                let file = File::create(path)
                    .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?;
                let mut w = BufWriter::new(file);
                w.write_all(&buffer)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(&buffer)?;
                lock.flush()?;
            }
        }
    }
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
