//! Bias point and small-signal parameters of the common-emitter stage.
//!
//! The stage is a single n-p-n transistor with a grounded emitter, a load
//! resistor `r_l` from the supply to the collector, and a base divider
//! `r_b1` (supply to base) / `r_b2` (base to ground).

use crate::devices::{active_region_currents, BjtParams};
use crate::{Error, Result};

/// Base-node current residual accepted as converged (A).
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Largest remaining Newton correction accepted as converged (V).
pub const STEP_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100;
/// Newton starting point for `v_be`.
pub const INITIAL_V_BE: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierConfig {
    pub v_cc: f64,
    pub r_b1: f64,
    pub r_b2: f64,
    pub r_l: f64,
    pub device: BjtParams,
}

impl AmplifierConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("v_cc", self.v_cc),
            ("r_b1", self.r_b1),
            ("r_b2", self.r_b2),
            ("r_l", self.r_l),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        self.device.validate()
    }

    /// Open-circuit voltage of the base divider.
    pub fn thevenin_voltage(&self) -> f64 {
        self.v_cc * self.r_b2 / (self.r_b1 + self.r_b2)
    }

    /// `r_b1 || r_b2`.
    pub fn thevenin_resistance(&self) -> f64 {
        self.r_b1 * self.r_b2 / (self.r_b1 + self.r_b2)
    }

    /// Current delivered by the divider minus the base current at `v_be`.
    ///
    /// Positive when `v_be` sits below the solution.
    pub fn base_node_residual(&self, v_be: f64) -> Result<f64> {
        let i_b = active_region_currents(&self.device, v_be)?.i_b;
        Ok((self.thevenin_voltage() - v_be) / self.thevenin_resistance() - i_b)
    }
}

/// Solved DC state of the stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub v_be: f64,
    pub i_b: f64,
    pub i_c: f64,
    pub i_e: f64,
    pub v_ce: f64,
    /// Base-node current residual at `v_be` (A).
    pub residual: f64,
    pub iterations: usize,
    /// Set when `v_ce <= 0`: the transistor is out of the active region and
    /// the active-region device law no longer describes it.
    pub saturated: bool,
}

impl OperatingPoint {
    /// Voltage entering the collector junction exponent (`v_be - v_ce`).
    ///
    /// A saturated point's `v_ce` comes from the active-region law and can
    /// be far below ground; the collector is held at the emitter potential
    /// instead.
    pub fn v_cb(&self) -> f64 {
        self.v_be - self.v_ce.max(0.0)
    }
}

/// Solves the base node for `v_be` with bracketed Newton iteration.
///
/// The residual is strictly decreasing in `v_be`, positive at 0 and
/// non-positive at the divider voltage, so `[0, V_th]` always brackets the
/// root. A Newton step that leaves the bracket, or a point whose exponent
/// exceeds the device cap, is replaced by a bisection step.
pub fn solve_operating_point(config: &AmplifierConfig) -> Result<OperatingPoint> {
    config.validate()?;
    let dev = &config.device;
    let vt = dev.thermal_voltage()?;
    let r_th = config.thevenin_resistance();
    let i_b_scale = dev.i_es * (1.0 - dev.alpha_n);

    let mut lo = 0.0;
    let mut hi = config.thevenin_voltage().min(config.v_cc);
    let mut v = INITIAL_V_BE.clamp(lo, hi);
    let mut last_residual = f64::INFINITY;
    let mut last_step = hi - lo;

    for iteration in 1..=MAX_ITERATIONS {
        let f = match config.base_node_residual(v) {
            Ok(f) => f,
            Err(Error::Range { .. }) => {
                // Base current beyond the exponent cap: far above the root.
                hi = v;
                v = 0.5 * (lo + hi);
                last_step = hi - lo;
                continue;
            }
            Err(e) => return Err(e),
        };
        last_residual = f;
        let slope = -1.0 / r_th - i_b_scale * (v / vt).exp() / vt;
        // A stiff divider makes a small current residual a large voltage
        // error, so both must be small.
        if f.abs() < RESIDUAL_TOLERANCE && (f / slope).abs() < STEP_TOLERANCE {
            return Ok(finish(config, v, f, iteration));
        }
        if f > 0.0 {
            lo = v;
        } else {
            hi = v;
        }
        let newton = v - f / slope;
        // Far above the root Newton crawls down one Vt per step; bisect
        // unless the step at least halves.
        let next = if newton > lo && newton < hi && (newton - v).abs() <= 0.5 * last_step {
            newton
        } else {
            0.5 * (lo + hi)
        };
        last_step = (next - v).abs();
        if next == v {
            break;
        }
        v = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        residual: last_residual,
    })
}

fn finish(config: &AmplifierConfig, v_be: f64, residual: f64, iterations: usize) -> OperatingPoint {
    // The residual evaluated at v_be without error, so the currents do too.
    let c = active_region_currents(&config.device, v_be).expect("evaluated during solve");
    let v_ce = config.v_cc - c.i_c * config.r_l;
    OperatingPoint {
        v_be,
        i_b: c.i_b,
        i_c: c.i_c,
        i_e: c.i_e,
        v_ce,
        residual,
        iterations,
        saturated: v_ce <= 0.0,
    }
}

/// Input resistance, output conductance and slope of the stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallSignalParams {
    pub r_in: f64,
    pub g_out: f64,
    pub slope_s: f64,
}

/// Analytic small-signal parameters at a solved point.
///
/// `slope_s` is the derivative of the active-region collector current,
/// `(i_c + alpha_n i_es) / Vt`. `g_out` is the magnitude of the collector
/// current's derivative with respect to the collector junction voltage in
/// the full Ebers-Moll equation; it is reported non-negative even though
/// the derivative itself is negative.
pub fn small_signal_params(device: &BjtParams, op: &OperatingPoint) -> Result<SmallSignalParams> {
    if !(op.i_c > 0.0) {
        return Err(Error::domain(format!(
            "small-signal parameters need i_c > 0, got {}",
            op.i_c
        )));
    }
    let vt = device.thermal_voltage()?;
    let beta = device.beta()?;
    let slope_s = (op.i_c + device.alpha_n * device.i_es) / vt;
    Ok(SmallSignalParams {
        r_in: beta / slope_s,
        g_out: output_conductance(device, op.v_cb())?,
        slope_s,
    })
}

/// `|d i_c / d v_cb|` of the full Ebers-Moll collector equation.
pub fn output_conductance(device: &BjtParams, v_cb: f64) -> Result<f64> {
    let vt = device.thermal_voltage()?;
    // Cap check only; exp_m1 + 1 would cancel to zero deep in reverse bias.
    device.junction_factor("v_cb", v_cb, vt)?;
    Ok(device.i_cs * (v_cb / vt).exp() / vt)
}

/// Finite-variation estimates of the small-signal parameters.
///
/// Central differences of the active-region currents over `v_be +- delta`.
/// The active-region collector current has no collector-voltage dependence,
/// so the `g_out` estimate is zero.
pub fn static_finite_params(
    device: &BjtParams,
    v_be: f64,
    delta: f64,
) -> Result<SmallSignalParams> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if !(v_be - delta > 0.0) {
        return Err(Error::domain(format!(
            "v_be - delta = {} flips the current sign",
            v_be - delta
        )));
    }
    let up = active_region_currents(device, v_be + delta)?;
    let down = active_region_currents(device, v_be - delta)?;
    let slope_s = (up.i_c - down.i_c) / (2.0 * delta);
    let r_in = 2.0 * delta / (up.i_b - down.i_b);
    Ok(SmallSignalParams {
        r_in,
        g_out: 0.0,
        slope_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::{ebers_moll_currents, thermal_voltage};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn reference_config() -> AmplifierConfig {
        AmplifierConfig {
            v_cc: 12.0,
            r_b1: 100e3,
            r_b2: 20e3,
            r_l: 1e3,
            device: BjtParams::new(1e-14, 1e-14, 0.99).unwrap(),
        }
    }

    fn bisect(config: &AmplifierConfig) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 1.5_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let i_b = config.device.i_es
                * (1.0 - config.device.alpha_n)
                * ((mid / thermal_voltage(config.device.temperature).unwrap()).exp() - 1.0);
            let f = (config.thevenin_voltage() - mid) / config.thevenin_resistance() - i_b;
            if f > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn reference_bias_point() {
        let cfg = reference_config();
        let op = solve_operating_point(&cfg).unwrap();
        // 40-digit bisection: v_be = 0.70773955894305..., i_c = 7.67602701988e-3.
        assert!((op.v_be - 0.707_739_558_943_057).abs() < 1e-9);
        assert!((op.v_be - bisect(&cfg)).abs() < 1e-9);
        assert!(rel(op.i_c, 7.676_027_019_878_242e-3) < 1e-7);
        assert!((op.v_ce - 4.323_972_980_121_758).abs() < 1e-6);
        assert!(op.residual.abs() < RESIDUAL_TOLERANCE);
        assert!(!op.saturated);
        assert!(rel(op.i_e, op.i_b + op.i_c) < 1e-12);
        assert!((op.v_ce - (cfg.v_cc - op.i_c * cfg.r_l)).abs() < 1e-12);
    }

    #[test]
    fn doubling_divider_lowers_collector_current() {
        let cfg = reference_config();
        let stiff = solve_operating_point(&cfg).unwrap();
        let soft_cfg = AmplifierConfig {
            r_b1: 2.0 * cfg.r_b1,
            r_b2: 2.0 * cfg.r_b2,
            ..cfg
        };
        assert_eq!(soft_cfg.thevenin_voltage(), cfg.thevenin_voltage());
        let soft = solve_operating_point(&soft_cfg).unwrap();
        assert!(soft.i_c < stiff.i_c);
        assert!((soft.v_be - 0.690_169_444_703_766).abs() < 1e-9);
        assert!((soft.v_be - bisect(&soft_cfg)).abs() < 1e-9);
    }

    #[test]
    fn dead_device_passes_no_current() {
        let cfg = AmplifierConfig {
            v_cc: 10.0,
            r_b1: 100e3,
            r_b2: 10e3,
            r_l: 1e3,
            device: BjtParams::new(1e-30, 1e-30, 0.99).unwrap(),
        };
        let op = solve_operating_point(&cfg).unwrap();
        assert!(op.i_c < 1e-12);
        assert!((op.v_ce - cfg.v_cc).abs() < 1e-9);
        assert!((op.v_be - cfg.thevenin_voltage()).abs() < 1e-6);
    }

    #[test]
    fn solver_survives_divider_voltage_beyond_exponent_cap() {
        // V_th = 10 V is far past 200 Vt; the first probes overflow.
        let cfg = AmplifierConfig {
            v_cc: 20.0,
            r_b1: 10e3,
            r_b2: 10e3,
            r_l: 100.0,
            device: BjtParams::new(1e-14, 1e-14, 0.99).unwrap(),
        };
        let op = solve_operating_point(&cfg).unwrap();
        assert!(op.residual.abs() < RESIDUAL_TOLERANCE);
        assert!((op.v_be - bisect(&cfg)).abs() < 1e-9);
    }

    #[test]
    fn heavy_load_flags_saturation() {
        let cfg = AmplifierConfig {
            r_l: 100e3,
            ..reference_config()
        };
        let op = solve_operating_point(&cfg).unwrap();
        assert!(op.v_ce <= 0.0);
        assert!(op.saturated);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = AmplifierConfig {
            r_b2: 0.0,
            ..reference_config()
        };
        assert!(matches!(solve_operating_point(&cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn slope_at_one_milliamp() {
        let dev = BjtParams::new(1e-14, 1e-14, 0.99).unwrap();
        let vt = dev.thermal_voltage().unwrap();
        // v_be giving i_c = 1 mA exactly.
        let v_be = vt * (1e-3_f64 / (0.99 * 1e-14)).ln_1p();
        let c = active_region_currents(&dev, v_be).unwrap();
        let op = OperatingPoint {
            v_be,
            i_b: c.i_b,
            i_c: c.i_c,
            i_e: c.i_e,
            v_ce: 5.0,
            residual: 0.0,
            iterations: 0,
            saturated: false,
        };
        let ss = small_signal_params(&dev, &op).unwrap();
        assert!(rel(ss.slope_s, 0.038_681_727_071_833_61) < 1e-9);
        assert!(rel(ss.r_in * ss.slope_s, 99.0) < 1e-12);
        assert!(ss.g_out >= 0.0 && ss.g_out < 1e-30);
    }

    #[test]
    fn deep_reverse_bias_output_conductance_is_not_flushed() {
        let dev = BjtParams::new(1e-14, 1e-14, 0.99).unwrap();
        let v_cb = 0.707739558943057 - 4.323972980121758;
        let g = output_conductance(&dev, v_cb).unwrap();
        // Extended-precision value of i_cs exp(v_cb / Vt) / Vt.
        assert!(rel(g, 6.877_936_457_186_012e-74) < 1e-12);
    }

    #[test]
    fn slope_matches_finite_difference() {
        let cfg = reference_config();
        let op = solve_operating_point(&cfg).unwrap();
        let ss = small_signal_params(&cfg.device, &op).unwrap();
        let h = 1e-6;
        let up = active_region_currents(&cfg.device, op.v_be + h)
            .unwrap()
            .i_c;
        let down = active_region_currents(&cfg.device, op.v_be - h)
            .unwrap()
            .i_c;
        assert!(rel(ss.slope_s, (up - down) / (2.0 * h)) < 1e-4);
    }

    #[test]
    fn output_conductance_matches_finite_difference() {
        let dev = BjtParams::new(1e-14, 2e-14, 0.99)
            .unwrap()
            .with_alpha_i(0.2)
            .unwrap();
        for v_cb in [-0.2, 0.0, 0.3, 0.55] {
            let h = 1e-5;
            let up = ebers_moll_currents(&dev, 0.0, v_cb + h).unwrap().i_c;
            let down = ebers_moll_currents(&dev, 0.0, v_cb - h).unwrap().i_c;
            let fd = -(up - down) / (2.0 * h);
            assert!(
                rel(output_conductance(&dev, v_cb).unwrap(), fd) < 1e-4,
                "{v_cb}"
            );
        }
    }

    #[test]
    fn small_signal_rejects_non_positive_collector_current() {
        let dev = BjtParams::new(1e-14, 1e-14, 0.99).unwrap();
        let op = OperatingPoint {
            v_be: 0.0,
            i_b: 0.0,
            i_c: 0.0,
            i_e: 0.0,
            v_ce: 10.0,
            residual: 0.0,
            iterations: 0,
            saturated: false,
        };
        assert!(small_signal_params(&dev, &op).is_err());
    }

    #[test]
    fn finite_params_converge_second_order() {
        let cfg = reference_config();
        let op = solve_operating_point(&cfg).unwrap();
        let exact = small_signal_params(&cfg.device, &op).unwrap();
        let d = 2e-3;
        let e1 = static_finite_params(&cfg.device, op.v_be, d)
            .unwrap()
            .slope_s
            - exact.slope_s;
        let e2 = static_finite_params(&cfg.device, op.v_be, d / 2.0)
            .unwrap()
            .slope_s
            - exact.slope_s;
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");

        let fine = static_finite_params(&cfg.device, op.v_be, 1e-6).unwrap();
        assert!(rel(fine.r_in, exact.r_in) < 1e-3);
        assert!(rel(fine.r_in, 99.0 / fine.slope_s) < 1e-3);
        assert_eq!(fine.g_out, 0.0);
    }

    #[test]
    fn finite_params_errors() {
        let dev = BjtParams::new(1e-14, 1e-14, 0.99).unwrap();
        assert!(static_finite_params(&dev, 0.6, 0.0).is_err());
        assert!(static_finite_params(&dev, 0.6, 0.6).is_err());
        assert!(static_finite_params(&dev, 0.6, 0.7).is_err());
        for v in [0.1, 0.4, 0.7] {
            assert!(static_finite_params(&dev, v, 1e-3).unwrap().slope_s > 0.0);
        }
    }
}
