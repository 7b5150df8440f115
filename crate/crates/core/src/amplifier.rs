//! Stage gain, output power, cascades and breakdown checks.

use std::fmt;

use crate::circuit::{OperatingPoint, SmallSignalParams};
use crate::{Error, Result};

/// Gain figures of one stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageGain {
    pub beta_current: f64,
    pub voltage_gain: f64,
    pub power_out: f64,
}

/// `i_out / i_in`.
pub fn current_gain(i_out: f64, i_in: f64) -> Result<f64> {
    if i_in == 0.0 {
        return Err(Error::domain("input current is zero"));
    }
    Ok(i_out / i_in)
}

/// Voltage developed across the load.
pub fn output_voltage(i_out: f64, r_l: f64) -> f64 {
    i_out * r_l
}

/// Power delivered to the load, `r_l * i_c^2`.
pub fn output_power(i_c: f64, r_l: f64) -> f64 {
    r_l * i_c * i_c
}

/// Magnitude of the common-emitter voltage gain, `S * r_l`.
///
/// The output is inverted with respect to the input; the sign is dropped.
pub fn stage_voltage_gain(ss: &SmallSignalParams, r_l: f64) -> f64 {
    ss.slope_s * r_l
}

/// Overall gain of stages connected in series, loading ignored.
pub fn cascade_gain(stage_gains: &[f64]) -> Result<f64> {
    if stage_gains.is_empty() {
        return Err(Error::domain("a cascade needs at least one stage"));
    }
    Ok(stage_gains.iter().product())
}

/// Absolute maximum ratings of the device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingLimits {
    pub i_c_max: f64,
    pub v_ce_max: f64,
    pub p_max: f64,
}

impl Default for OperatingLimits {
    fn default() -> Self {
        OperatingLimits {
            i_c_max: 0.1,
            v_ce_max: 40.0,
            p_max: 0.5,
        }
    }
}

impl OperatingLimits {
    pub fn new(i_c_max: f64, v_ce_max: f64, p_max: f64) -> Result<Self> {
        let limits = OperatingLimits {
            i_c_max,
            v_ce_max,
            p_max,
        };
        limits.validate()?;
        Ok(limits)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("i_c_max", self.i_c_max),
            ("v_ce_max", self.v_ce_max),
            ("p_max", self.p_max),
        ] {
            if !(v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    CollectorCurrent,
    CollectorEmitterVoltage,
    Power,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::CollectorCurrent => "i_c",
            Violation::CollectorEmitterVoltage => "v_ce",
            Violation::Power => "power",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BreakdownStatus {
    Healthy,
    Breakdown(Vec<Violation>),
}

/// Compares the bias point with the device ratings. A quantity exactly at
/// its limit is still healthy.
pub fn breakdown_check(op: &OperatingPoint, limits: &OperatingLimits) -> BreakdownStatus {
    let mut violated = Vec::new();
    if op.i_c > limits.i_c_max {
        violated.push(Violation::CollectorCurrent);
    }
    if op.v_ce > limits.v_ce_max {
        violated.push(Violation::CollectorEmitterVoltage);
    }
    if op.i_c * op.v_ce > limits.p_max {
        violated.push(Violation::Power);
    }
    if violated.is_empty() {
        BreakdownStatus::Healthy
    } else {
        BreakdownStatus::Breakdown(violated)
    }
}
