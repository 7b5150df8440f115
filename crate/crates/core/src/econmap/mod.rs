//! Economic amplification coefficients.
//!
//! An economic unit is treated as a current amplifier: money put in
//! (investments, expenses) plays the role of base current and incomes the
//! role of collector current. The coefficients here are the corresponding
//! gains, together with the classical investment-model quantities they line
//! up with (Harrod's capital coefficient, Domar's investment productivity,
//! the Cobb-Douglas production function and Keynes' investment multiplier).

mod regression;

use std::collections::HashSet;

pub use regression::{fit_linear, RegressionFit};

use crate::{Error, Result};

fn ratio(what: &str, numerator: f64, denominator: f64) -> Result<f64> {
    if denominator == 0.0 || !denominator.is_finite() || !numerator.is_finite() {
        return Err(Error::domain(format!(
            "{what}: cannot divide {numerator} by {denominator}"
        )));
    }
    Ok(numerator / denominator)
}

/// Finished products per unit of money put in.
///
/// Mixes a count with money, so it is not currency invariant.
pub fn beta_p_economic(total_finished_products: f64, inputs_value: f64) -> Result<f64> {
    ratio("beta_p", total_finished_products, inputs_value)
}

/// Total incomes over the money put in. Above 1 the unit amplifies.
pub fn beta_v_economic(total_incomes: f64, investments_plus_expenses: f64) -> Result<f64> {
    ratio("beta_v", total_incomes, investments_plus_expenses)
}

/// Gain of a financial institution over one accounting period.
///
/// `total_values` is initial capital plus amount obtained plus interest
/// given, composed by the caller.
pub fn beta_bank(output_values: f64, total_values: f64) -> Result<f64> {
    ratio("beta_bank", output_values, total_values)
}

/// Harrod capital coefficient, investments per unit of income.
pub fn harrod_b(investments: f64, incomes: f64) -> Result<f64> {
    ratio("harrod_b", investments, incomes)
}

/// Domar investment productivity, production increment per unit invested.
pub fn domar_sigma(delta_q: f64, total_investments: f64) -> Result<f64> {
    ratio("domar_sigma", delta_q, total_investments)
}

/// Keynes investment multiplier; the economic slope of the amplifier.
pub fn keynes_multiplier(delta_v: f64, delta_i: f64) -> Result<f64> {
    ratio("keynes_multiplier", delta_v, delta_i)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobbDouglasParams {
    pub g: f64,
    /// Elasticity of labour.
    pub lambda: f64,
    /// Elasticity of capital.
    pub mu: f64,
}

impl CobbDouglasParams {
    pub fn new(g: f64, lambda: f64, mu: f64) -> Result<Self> {
        if !(g > 0.0) {
            return Err(Error::domain(format!("g must be positive, got {g}")));
        }
        Ok(CobbDouglasParams { g, lambda, mu })
    }
}

/// Production `g * L^lambda * K^mu`.
pub fn cobb_douglas(params: &CobbDouglasParams, labour_l: f64, capital_k: f64) -> Result<f64> {
    if !(labour_l > 0.0 && capital_k > 0.0) {
        return Err(Error::domain(format!(
            "labour and capital must be positive, got L = {labour_l}, K = {capital_k}"
        )));
    }
    Ok(params.g * labour_l.powf(params.lambda) * capital_k.powf(params.mu))
}

/// One accounting period.
#[derive(Debug, Clone, PartialEq)]
pub struct Period {
    pub label: String,
    pub investments: f64,
    pub expenses: f64,
    pub incomes: f64,
    pub quantity_out: Option<f64>,
}

impl Period {
    /// Investments plus expenses.
    pub fn inputs(&self) -> f64 {
        self.investments + self.expenses
    }
}

/// An ordered, validated list of periods.
#[derive(Debug, Clone, PartialEq)]
pub struct EconSeries {
    periods: Vec<Period>,
}

impl EconSeries {
    pub fn new(periods: Vec<Period>) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::domain("a series needs at least one period"));
        }
        let mut seen = HashSet::new();
        for p in &periods {
            if !seen.insert(p.label.as_str()) {
                return Err(Error::domain(format!(
                    "duplicate period label '{}'",
                    p.label
                )));
            }
            let fields = [
                ("investments", Some(p.investments)),
                ("expenses", Some(p.expenses)),
                ("incomes", Some(p.incomes)),
                ("quantity_out", p.quantity_out),
            ];
            for (name, value) in fields {
                if let Some(v) = value {
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(
                            Error::domain(format!("{name} must be non-negative, got {v}"))
                                .in_period(&p.label),
                        );
                    }
                }
            }
        }
        Ok(EconSeries { periods })
    }

    pub fn periods(&self) -> &[Period] {
        &self.periods
    }

    pub fn len(&self) -> usize {
        self.periods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    /// Copy with every monetary field multiplied by `c`.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        EconSeries::new(
            self.periods
                .iter()
                .map(|p| Period {
                    investments: p.investments * c,
                    expenses: p.expenses * c,
                    incomes: p.incomes * c,
                    ..p.clone()
                })
                .collect(),
        )
    }
}

/// Coefficients of a whole series.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientReport {
    /// Products per unit of inputs; present only when every period has a
    /// product count. Units: count per money.
    pub beta_p: Option<f64>,
    /// Total incomes over total investments plus expenses.
    pub beta_v: f64,
    /// Total incomes over total investments alone; absent when nothing was
    /// invested.
    pub beta_investments: Option<f64>,
    /// Not derivable from an income series; set by callers that have bank data.
    pub beta_bank: Option<f64>,
    pub harrod_b: f64,
    pub domar_sigma: f64,
    /// Mean first difference of incomes over mean first difference of inputs.
    pub keynes_m: Option<f64>,
    /// Incomes regressed on inputs, one point per period.
    pub fit: Option<RegressionFit>,
    /// Per-period incomes over inputs.
    pub period_beta: Vec<f64>,
    /// Mean of `period_beta`.
    pub mean_beta: f64,
}

/// Aggregates a series into its economic coefficients.
pub fn analyze_series(series: &EconSeries) -> Result<CoefficientReport> {
    let periods = series.periods();
    let total_inv: f64 = periods.iter().map(|p| p.investments).sum();
    let total_inputs: f64 = periods.iter().map(Period::inputs).sum();
    let total_inc: f64 = periods.iter().map(|p| p.incomes).sum();

    let totals = |e: Error| e.in_period("totals");
    let beta_v = beta_v_economic(total_inc, total_inputs).map_err(totals)?;
    let harrod = harrod_b(total_inv, total_inc).map_err(totals)?;
    let sigma = domar_sigma(total_inc, total_inputs).map_err(totals)?;
    let beta_investments = if total_inv > 0.0 {
        Some(total_inc / total_inv)
    } else {
        None
    };

    let beta_p = periods
        .iter()
        .map(|p| p.quantity_out)
        .sum::<Option<f64>>()
        .map(|q| beta_p_economic(q, total_inputs))
        .transpose()
        .map_err(totals)?;

    let period_beta = periods
        .iter()
        .map(|p| beta_v_economic(p.incomes, p.inputs()).map_err(|e| e.in_period(&p.label)))
        .collect::<Result<Vec<f64>>>()?;
    let mean_beta = period_beta.iter().sum::<f64>() / period_beta.len() as f64;

    let n = periods.len();
    let (keynes_m, fit) = if n >= 2 {
        let first = &periods[0];
        let last = &periods[n - 1];
        let steps = (n - 1) as f64;
        let mean_dv = (last.incomes - first.incomes) / steps;
        let mean_di = (last.inputs() - first.inputs()) / steps;
        let keynes = if mean_di != 0.0 {
            Some(keynes_multiplier(mean_dv, mean_di)?)
        } else {
            None
        };
        let xs: Vec<f64> = periods.iter().map(Period::inputs).collect();
        let ys: Vec<f64> = periods.iter().map(|p| p.incomes).collect();
        (keynes, fit_linear(&xs, &ys).ok())
    } else {
        (None, None)
    };

    Ok(CoefficientReport {
        beta_p,
        beta_v,
        beta_investments,
        beta_bank: None,
        harrod_b: harrod,
        domar_sigma: sigma,
        keynes_m,
        fit,
        period_beta,
        mean_beta,
    })
}
