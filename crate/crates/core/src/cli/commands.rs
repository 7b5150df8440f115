use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::{parse_config, SimConfig};
use super::format::{fmt_full, fmt_sig6};
use super::series::{read_columns, read_series};
use super::CliError;
use crate::amplifier::{
    breakdown_check, cascade_gain, current_gain, output_power, stage_voltage_gain, BreakdownStatus,
    StageGain,
};
use crate::circuit::{
    small_signal_params, solve_operating_point, OperatingPoint, SmallSignalParams,
};
use crate::econmap::{analyze_series, fit_linear, CoefficientReport, RegressionFit};
use crate::Error;

/// Result of one `simulate` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: SimConfig,
    pub operating_point: OperatingPoint,
    pub small_signal: SmallSignalParams,
    pub stage: StageGain,
    pub status: BreakdownStatus,
    pub economics: Option<CoefficientReport>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn build(
        config: SimConfig,
        economics: Option<CoefficientReport>,
    ) -> Result<Self, CliError> {
        let amp = &config.amplifier;
        let op = solve_operating_point(amp)?;
        let ss = small_signal_params(&amp.device, &op)?;
        let stage = StageGain {
            beta_current: current_gain(op.i_c, op.i_b)?,
            voltage_gain: stage_voltage_gain(&ss, amp.r_l),
            power_out: output_power(op.i_c, amp.r_l),
        };
        let status = breakdown_check(&op, &config.limits);

        let mut warnings = Vec::new();
        if op.saturated {
            warnings.push(format!(
                "saturation: v_ce = {} V, transistor outside the active region",
                fmt_sig6(op.v_ce)
            ));
        }
        if let BreakdownStatus::Breakdown(violations) = &status {
            let names: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            warnings.push(format!(
                "breakdown: limit exceeded for {}",
                names.join(", ")
            ));
        }

        let report = RunReport {
            config,
            operating_point: op,
            small_signal: ss,
            stage,
            status,
            economics,
            warnings,
        };
        if report.numbers().iter().any(|(_, v)| !v.is_finite()) {
            return Err(Error::domain("simulation produced a non-finite value").into());
        }
        Ok(report)
    }

    fn numbers(&self) -> Vec<(&'static str, f64)> {
        let op = &self.operating_point;
        let ss = &self.small_signal;
        vec![
            ("v_be", op.v_be),
            ("i_b", op.i_b),
            ("i_c", op.i_c),
            ("i_e", op.i_e),
            ("v_ce", op.v_ce),
            ("residual", op.residual),
            ("r_in", ss.r_in),
            ("g_out", ss.g_out),
            ("slope_s", ss.slope_s),
            ("beta", self.stage.beta_current),
            ("voltage_gain", self.stage.voltage_gain),
            ("power_out", self.stage.power_out),
        ]
    }

    /// The `[config]` block of the rendered report.
    pub fn echo_config(&self) -> String {
        self.config.to_config_text()
    }

    pub fn render(&self) -> String {
        let op = &self.operating_point;
        let ss = &self.small_signal;
        let mut out = String::new();
        out.push_str("Common-emitter stage\n");
        let rows = [
            ("v_be", op.v_be, "V"),
            ("i_b", op.i_b, "A"),
            ("i_c", op.i_c, "A"),
            ("i_e", op.i_e, "A"),
            ("v_ce", op.v_ce, "V"),
            ("r_in", ss.r_in, "ohm"),
            ("g_out", ss.g_out, "S"),
            ("slope_s", ss.slope_s, "S"),
            ("beta", self.stage.beta_current, ""),
            ("voltage_gain", self.stage.voltage_gain, ""),
            ("power_out", self.stage.power_out, "W"),
        ];
        for (name, value, unit) in rows {
            let _ = writeln!(out, "  {name:<13}{:>14} {unit}", fmt_sig6(value));
        }
        if self.warnings.is_empty() {
            out.push_str("warnings: none\n");
        } else {
            for w in &self.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
        if let Some(econ) = &self.economics {
            out.push('\n');
            out.push_str(&coefficient_table(econ));
        }

        out.push_str("\n[config]\n");
        out.push_str(&self.echo_config());
        out.push_str("\n[result]\n");
        for (name, value) in self.numbers() {
            let _ = writeln!(out, "{name} = {}", fmt_full(value));
        }
        let _ = writeln!(out, "iterations = {}", op.iterations);
        let _ = writeln!(out, "saturated = {}", op.saturated);
        let status = match &self.status {
            BreakdownStatus::Healthy => "healthy".to_string(),
            BreakdownStatus::Breakdown(v) => {
                let names: Vec<String> = v.iter().map(|v| v.to_string()).collect();
                format!("breakdown({})", names.join(","))
            }
        };
        let _ = writeln!(out, "status = {status}");
        if let Some(econ) = &self.economics {
            out.push_str("\n[coefficients]\n");
            out.push_str(&coefficient_block(econ));
        }
        out
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `simulate <config> [--series <csv>]`.
pub fn cmd_simulate(config_file: &Path, series_file: Option<&Path>) -> Result<String, CliError> {
    let config = parse_config(&read_to_string(config_file)?)?;
    let economics = series_file
        .map(|p| read_series(p).and_then(|s| Ok(analyze_series(&s)?)))
        .transpose()?;
    Ok(RunReport::build(config, economics)?.render())
}

/// Where `fit` writes its plot points: the input path with its extension
/// replaced by `points.csv`.
pub fn points_path(csv_file: &Path) -> PathBuf {
    csv_file.with_extension("points.csv")
}

/// `fit <csv> --x <col> --y <col>`.
pub fn cmd_fit(csv_file: &Path, x_column: &str, y_column: &str) -> Result<String, CliError> {
    let (xs, ys) = read_columns(csv_file, x_column, y_column)?;
    if xs.len() < 2 {
        return Err(Error::domain(format!("need at least 2 data rows, got {}", xs.len())).into());
    }
    let fit = fit_linear(&xs, &ys).map_err(|e| match e {
        Error::Domain(m) if m.contains("variance") => {
            Error::domain(format!("column `{x_column}` is constant: {m}"))
        }
        other => other,
    })?;

    let mut points = String::from("x,y_observed,y_fitted\n");
    for (x, y) in xs.iter().zip(&ys) {
        let _ = writeln!(
            points,
            "{},{},{}",
            fmt_full(*x),
            fmt_full(*y),
            fmt_full(fit.predict(*x))
        );
    }
    let target = points_path(csv_file);
    std::fs::write(&target, points).map_err(|source| CliError::Io {
        path: target.clone(),
        source,
    })?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "Least-squares line {y_column} = a0 + beta * {x_column}"
    );
    out.push_str(&fit_table(&fit));
    let _ = writeln!(out, "points written to {}", target.display());
    out.push_str("\n[fit]\n");
    out.push_str(&fit_block(&fit, ""));
    let _ = writeln!(out, "points = {}", target.display());
    Ok(out)
}

/// `analyze <csv>`.
pub fn cmd_analyze(csv_file: &Path) -> Result<String, CliError> {
    let series = read_series(csv_file)?;
    let report = analyze_series(&series)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Economic amplifier coefficients ({} periods)",
        series.len()
    );
    out.push_str(&coefficient_table(&report));
    out.push_str("\nper-period incomes / (investments + expenses)\n");
    for (p, b) in series.periods().iter().zip(&report.period_beta) {
        let _ = writeln!(out, "  {:<13}{:>14}", p.label, fmt_sig6(*b));
    }
    out.push_str("\n[coefficients]\n");
    out.push_str(&coefficient_block(&report));
    Ok(out)
}

/// `cascade <g1> [g2 ...]`.
pub fn cmd_cascade(gains: &[f64]) -> Result<String, CliError> {
    if gains.is_empty() {
        return Err(CliError::Usage("cascade needs at least one gain".into()));
    }
    Ok(format!("{}\n", fmt_full(cascade_gain(gains)?)))
}

fn opt(v: Option<f64>, fmt: fn(f64) -> String) -> String {
    v.map(fmt).unwrap_or_else(|| "none".to_string())
}

fn fit_table(fit: &RegressionFit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  {:<13}{:>14}", "a0", fmt_sig6(fit.a0));
    let _ = writeln!(out, "  {:<13}{:>14}", "beta", fmt_sig6(fit.beta));
    let _ = writeln!(out, "  {:<13}{:>14}", "r_squared", fmt_sig6(fit.r_squared));
    let _ = writeln!(out, "  {:<13}{:>14}", "n", fit.n);
    out
}

fn fit_block(fit: &RegressionFit, prefix: &str) -> String {
    format!(
        "{prefix}a0 = {}\n{prefix}beta = {}\n{prefix}r_squared = {}\n{prefix}n = {}\n",
        fmt_full(fit.a0),
        fmt_full(fit.beta),
        fmt_full(fit.r_squared),
        fit.n
    )
}

fn coefficient_rows(r: &CoefficientReport) -> [(&'static str, Option<f64>); 9] {
    [
        ("beta_v", Some(r.beta_v)),
        ("beta_invest", r.beta_investments),
        ("beta_p", r.beta_p),
        ("beta_bank", r.beta_bank),
        ("harrod_b", Some(r.harrod_b)),
        ("domar_sigma", Some(r.domar_sigma)),
        ("keynes_m", r.keynes_m),
        ("mean_beta", Some(r.mean_beta)),
        ("n_periods", Some(r.period_beta.len() as f64)),
    ]
}

fn coefficient_table(r: &CoefficientReport) -> String {
    let mut out = String::new();
    for (name, value) in coefficient_rows(r).into_iter().take(8) {
        let _ = writeln!(out, "  {name:<13}{:>14}", opt(value, fmt_sig6));
    }
    match &r.fit {
        Some(fit) => {
            out.push_str("fit incomes = a0 + beta * (investments + expenses)\n");
            out.push_str(&fit_table(fit));
        }
        None => out.push_str("fit: none\n"),
    }
    out
}

fn coefficient_block(r: &CoefficientReport) -> String {
    let mut out = String::new();
    for (name, value) in coefficient_rows(r) {
        let key = if name == "beta_invest" {
            "beta_investments"
        } else {
            name
        };
        let _ = writeln!(out, "{key} = {}", opt(value, fmt_full));
    }
    match &r.fit {
        Some(fit) => out.push_str(&fit_block(fit, "fit.")),
        None => out.push_str("fit = none\n"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cascade_output() {
        assert_eq!(cmd_cascade(&[10.0, 20.0]).unwrap(), "200\n");
        assert_eq!(cmd_cascade(&[7.0]).unwrap(), "7\n");
        assert_eq!(cmd_cascade(&[2.0, 0.5]).unwrap(), "1\n");
        assert_eq!(
            cmd_cascade(&[]).unwrap_err().exit_code(),
            super::super::EXIT_USAGE
        );
    }

    #[test]
    fn points_file_name() {
        assert_eq!(
            points_path(Path::new("dir/gdp.csv")),
            PathBuf::from("dir/gdp.points.csv")
        );
    }
}
