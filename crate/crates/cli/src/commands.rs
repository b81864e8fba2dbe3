//! The five subcommands. Each writes its table to `out`.

use std::fs::File;
use std::io::{BufWriter, Write};

use ethsm_core::analytics::{analytic_report, crossover, AnalyticReport, SearchRange};
use ethsm_core::{Mix, ProtocolParams, StrategyId};
use ethsm_sim::{compare, empirical_report, run_simulation, Comparison, RunConfig, SimConfig, StatsJson};
use serde::Serialize;

use crate::cli::{AnalyticArgs, Cap, Cli, Command, Common, Point, SimArgs, SweepArgs, ThresholdArgs};
use crate::config::ConfigFile;
use crate::error::CliError;
use crate::output::{sig12, write_json, write_rows, Format, Record};
use crate::sweep::{sweep, SweepGrid};

/// Smallest run `validate` accepts.
pub const MIN_VALIDATE_CYCLES: u64 = 10_000;
/// Largest |z| `validate` tolerates.
pub const Z_LIMIT: f64 = 4.0;

/// Parse-free entry point: run `cli`, writing to `--out` or standard output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let common = common(&cli.command);
    match &common.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            let result = execute(&cli.command, &mut w);
            w.flush()?;
            result
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            execute(&cli.command, &mut lock)
        }
    }
}

/// Run `command` on a pool of `--threads` workers, writing to `out`.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    let threads = common(command).threads;
    match threads {
        Some(0) => Err(CliError::Domain("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            let (buf, result) = pool.install(|| {
                let mut buf = Vec::new();
                let result = dispatch(command, &mut buf);
                (buf, result)
            });
            out.write_all(&buf)?;
            result
        }
        None => dispatch(command, out),
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Analytic(a) => &a.common,
        Command::Sweep(a) => &a.common,
        Command::Threshold(a) => &a.common,
        Command::Simulate(a) | Command::Validate(a) => &a.common,
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Analytic(a) => analytic(a, out),
        Command::Sweep(a) => sweep_cmd(a, out),
        Command::Threshold(a) => threshold(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Validate(a) => validate(a, out),
    }
}

pub fn params(common: &Common) -> Result<ProtocolParams, CliError> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    file.params(common.n1)
}

fn mix(point: &Point) -> Result<Mix, CliError> {
    if !point.q.is_finite() || !point.gamma.is_finite() {
        return Err(CliError::Domain("q and gamma must be finite".into()));
    }
    Ok(Mix::new(point.q, point.gamma)?)
}

#[derive(Debug, Clone, Serialize)]
struct AnalyticRow {
    #[serde(flatten)]
    report: AnalyticReport<f64>,
}

impl Record for AnalyticRow {
    fn header() -> Vec<&'static str> {
        vec![
            "strategy", "q", "gamma", "n1", "E_L", "E_U", "E_Us", "E_Uh", "E_V", "E_Delta", "R_s", "R_u", "R_n",
            "q_tilde_btc", "q_tilde", "p_tilde", "iota",
        ]
    }

    fn cells(&self) -> Vec<String> {
        let r = &self.report;
        let e = &r.expected;
        let mut cells = vec![r.strategy.as_str().to_string()];
        cells.extend([r.q, r.gamma].map(sig12));
        cells.push(r.n1.to_string());
        cells.extend(
            [
                e.l,
                e.u,
                e.us,
                e.uh,
                e.v,
                e.delta,
                r.revenue_blocks,
                r.revenue_uncles,
                r.revenue_nephews,
                r.apparent_hashrate_btc,
                r.apparent_hashrate_eth,
                r.honest_apparent_hashrate,
                r.deflation_index,
            ]
            .map(sig12),
        );
        cells
    }
}

fn analytic(a: &AnalyticArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = params(&a.common)?;
    let report = analytic_report(a.point.strategy, &mix(&a.point)?, &params)?;
    match a.common.format {
        Format::Csv => write_rows(out, &[AnalyticRow { report }], Format::Csv),
        Format::Json => write_json(out, &report),
    }
}

fn sweep_cmd(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = params(&a.common)?;
    let mut strategies = a.strategies.clone();
    strategies.sort();
    strategies.dedup();
    let grid = SweepGrid {
        q_min: a.q_min,
        q_max: a.q_max,
        q_step: a.q_step,
        gamma_min: a.gamma_min,
        gamma_max: a.gamma_max,
        gamma_step: a.gamma_step,
        strategies,
    };
    let rows = sweep(&grid, &params)?;
    write_rows(out, &rows, a.common.format)
}

#[derive(Debug, Clone, Serialize)]
struct ThresholdRow {
    strategy: StrategyId,
    baseline: StrategyId,
    gamma: f64,
    q_threshold: f64,
    width: f64,
    iterations: u32,
}

impl Record for ThresholdRow {
    fn header() -> Vec<&'static str> {
        vec!["strategy", "baseline", "gamma", "q_threshold", "width", "iterations"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.strategy.as_str().into(),
            self.baseline.as_str().into(),
            sig12(self.gamma),
            sig12(self.q_threshold),
            sig12(self.width),
            self.iterations.to_string(),
        ]
    }
}

fn threshold(a: &ThresholdArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = params(&a.common)?;
    if a.strategy == a.baseline {
        return Err(CliError::Domain("strategy and baseline must differ".into()));
    }
    if !(a.tolerance > 0.0 && a.tolerance.is_finite()) {
        return Err(CliError::Domain("--tolerance must be positive".into()));
    }
    if !(0.0 < a.q_lo && a.q_lo < a.q_hi && a.q_hi < 0.5) {
        return Err(CliError::Domain("bracket needs 0 < q_lo < q_hi < 0.5".into()));
    }
    Mix::new(a.q_lo, a.gamma)?;
    let range = SearchRange {
        lo: a.q_lo,
        hi: a.q_hi,
        step: SearchRange::default().step.min(a.q_hi - a.q_lo),
        tolerance: a.tolerance,
    };
    let found = crossover(a.strategy, a.baseline, a.gamma, &params, range)?;
    let Some(c) = found else {
        return Err(CliError::NoCrossing(format!(
            "{} never overtakes {} for q in [{}, {}] at gamma = {}",
            a.strategy.as_str(),
            a.baseline.as_str(),
            a.q_lo,
            a.q_hi,
            a.gamma
        )));
    };
    let row = ThresholdRow {
        strategy: a.strategy,
        baseline: a.baseline,
        gamma: a.gamma,
        q_threshold: c.q,
        width: c.width,
        iterations: c.iterations,
    };
    write_rows(out, &[row], a.common.format)
}

fn sim_config(a: &SimArgs, params: &ProtocolParams) -> Result<SimConfig, CliError> {
    let mut config = SimConfig::validation(a.point.strategy, mix(&a.point)?, params.clone());
    match a.cap {
        Some(Cap::On) => config.cap = Some(2),
        Some(Cap::Off) => config.cap = None,
        None => {}
    }
    Ok(config)
}

fn simulate(a: &SimArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = params(&a.common)?;
    let config = sim_config(a, &params)?;
    let stats = run_simulation(&config, &RunConfig::new(a.cycles, a.seed))?;
    let report = empirical_report(&stats, &params)?;
    let json = StatsJson::new(&stats, &report);
    match a.common.format {
        Format::Json => write_json(out, &json),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(&json)?;
            w.flush()?;
            Ok(())
        }
    }
}

impl Record for Comparison {
    fn header() -> Vec<&'static str> {
        vec!["quantity", "analytic", "empirical", "se", "z"]
    }

    fn cells(&self) -> Vec<String> {
        let mut cells = vec![self.quantity.to_string()];
        cells.extend([self.analytic, self.empirical, self.se, self.z].map(sig12));
        cells
    }
}

#[derive(Debug, Serialize)]
struct ValidationJson<'a> {
    strategy: StrategyId,
    q: f64,
    gamma: f64,
    n1: u32,
    cap_enabled: bool,
    cycles: u64,
    seed: u64,
    z_limit: f64,
    comparisons: &'a [Comparison],
}

fn validate(a: &SimArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.cycles < MIN_VALIDATE_CYCLES {
        return Err(CliError::Domain(format!(
            "validate needs at least {MIN_VALIDATE_CYCLES} cycles, got {}",
            a.cycles
        )));
    }
    let params = params(&a.common)?;
    let config = sim_config(a, &params)?;
    let analytic = analytic_report(a.point.strategy, &config.mix, &params)?;
    let stats = run_simulation(&config, &RunConfig::new(a.cycles, a.seed))?;
    let empirical = empirical_report(&stats, &params)?;
    let rows = compare(&analytic, &empirical);
    match a.common.format {
        Format::Csv => write_rows(out, &rows, Format::Csv)?,
        Format::Json => write_json(
            out,
            &ValidationJson {
                strategy: a.point.strategy,
                q: a.point.q,
                gamma: a.point.gamma,
                n1: params.n1(),
                cap_enabled: config.cap.is_some(),
                cycles: a.cycles,
                seed: a.seed,
                z_limit: Z_LIMIT,
                comparisons: &rows,
            },
        )?,
    }
    let offenders: Vec<String> = rows
        .iter()
        .filter(|r| !r.passes(Z_LIMIT))
        .map(|r| format!("{} (z = {:.2})", r.quantity, r.z))
        .collect();
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(offenders.join(", ")))
    }
}
