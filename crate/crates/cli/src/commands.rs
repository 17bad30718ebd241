//! `simulate`, `sweep` and `phases`.

use std::io::Write;

use multiplet_core::{detect_phases, propagate, sweep as run_sweep, PhaseReport};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::Table;

fn level_column(level: i64) -> String {
    match level {
        0 => "pop_0".to_string(),
        l if l < 0 => format!("pop_m{}", -l),
        l => format!("pop_p{l}"),
    }
}

/// Columns `t, total, pop_m{N}, ..., pop_0, ..., pop_p{N}`.
pub fn simulate_table(config: &RunConfig) -> Result<Table, CliError> {
    let params = config.params();
    let traj = propagate(&params, &config.times())?;
    let mut columns = vec!["t".to_string(), "total".to_string()];
    columns.extend(params.levels().map(level_column));
    let mut table = Table::new(columns);
    for ((t, total), pops) in traj.times.iter().zip(&traj.total).zip(&traj.populations) {
        let mut row = Vec::with_capacity(pops.len() + 2);
        row.push(*t);
        row.push(*total);
        row.extend_from_slice(pops);
        table.push(row);
    }
    Ok(table)
}

/// Long-format `sweep_value, t, total` and the per-value summary
/// `sweep_value, total_at_probe`.
pub fn sweep_tables(config: &RunConfig) -> Result<(Table, Table), CliError> {
    let spec = config.sweep.as_ref().ok_or(CliError::MissingSweep("sweep"))?;
    let result = run_sweep(&config.params(), spec.param, &spec.values, &config.times(), spec.probe_time)?;

    let mut long = Table::new(["sweep_value", "t", "total"]);
    for (value, traj) in result.values.iter().zip(&result.trajectories) {
        for (t, total) in traj.times.iter().zip(&traj.total) {
            long.push(vec![*value, *t, *total]);
        }
    }
    let mut summary = Table::new(["sweep_value", "total_at_probe"]);
    for (value, probe) in result.values.iter().zip(&result.summary) {
        summary.push(vec![*value, *probe]);
    }
    Ok((long, summary))
}

pub fn phase_report(config: &RunConfig) -> Result<PhaseReport, CliError> {
    let traj = propagate(&config.params(), &config.times())?;
    Ok(detect_phases(&traj, config.threshold)?)
}

pub fn phases_table(config: &RunConfig) -> Result<Table, CliError> {
    let report = phase_report(config)?;
    let mut table = Table::new(["burst_end", "quiescent_rate", "threshold"]);
    table.push(vec![report.burst_end, report.quiescent_rate, report.threshold]);
    Ok(table)
}

pub fn cmd_simulate(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    simulate_table(config)?.write(config.format, out)
}

/// Writes the long table to `out` and the summary to `summary_out`.
pub fn cmd_sweep(config: &RunConfig, out: &mut dyn Write, summary_out: &mut dyn Write) -> Result<(), CliError> {
    let (long, summary) = sweep_tables(config)?;
    long.write(config.format, out)?;
    summary.write(config.format, summary_out)
}

pub fn cmd_phases(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    phases_table(config)?.write(config.format, out)
}
