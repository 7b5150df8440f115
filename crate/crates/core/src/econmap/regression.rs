//! One-factor ordinary least squares, `y = a0 + beta * x`.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub a0: f64,
    pub beta: f64,
    pub r_squared: f64,
    pub n: usize,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.a0 + self.beta * x
    }

    /// Sum of squared residuals of an arbitrary line over the data.
    pub fn residual_sum_of_squares(a0: f64, beta: f64, xs: &[f64], ys: &[f64]) -> f64 {
        xs.iter()
            .zip(ys)
            .map(|(x, y)| {
                let r = y - (a0 + beta * x);
                r * r
            })
            .sum()
    }
}

/// Least-squares line through `(xs[i], ys[i])`.
///
/// Uses mean-centred sums. `r_squared` is `1 - SS_res / SS_tot`, taken as 1
/// when the observations have no spread at all, and clamped into `[0, 1]`.
pub fn fit_linear(xs: &[f64], ys: &[f64]) -> Result<RegressionFit> {
    if xs.len() != ys.len() {
        return Err(Error::domain(format!(
            "x and y lengths differ ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::domain(format!(
            "need at least 2 observations, got {n}"
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::domain("observations must be finite"));
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;

    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::domain("x values have zero variance"));
    }
    let beta = sxy / sxx;
    let a0 = y_mean - beta * x_mean;
    let ss_res = RegressionFit::residual_sum_of_squares(a0, beta, xs, ys);
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        a0,
        beta,
        r_squared,
        n,
    })
}
