//! Bipolar (Ebers-Moll) and MOS device laws.
//!
//! Sign convention for the bipolar equations: `v_be` is the emitter junction
//! forward bias and `v_cb` is the voltage that appears in the collector
//! junction exponent, so a reverse-biased collector junction (the active
//! region) has `v_cb < 0`. With the emitter grounded this is `v_be - v_ce`.

use crate::{Error, Result};

/// Boltzmann constant and elementary charge, CODATA exact values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub boltzmann_k: f64,
    pub electron_charge_e: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        boltzmann_k: 1.380649e-23,
        electron_charge_e: 1.602176634e-19,
    };
}

pub const DEFAULT_TEMPERATURE: f64 = 300.0;
pub const DEFAULT_EXP_LIMIT: f64 = 200.0;

/// kT/e in volts.
pub fn thermal_voltage(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature} K"
        )));
    }
    let c = PhysicalConstants::CODATA;
    Ok(c.boltzmann_k * temperature / c.electron_charge_e)
}

/// Ebers-Moll parameters of an n-p-n transistor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BjtParams {
    /// Emitter junction saturation current (A).
    pub i_es: f64,
    /// Collector junction saturation current (A).
    pub i_cs: f64,
    /// Forward common-base current transfer ratio.
    pub alpha_n: f64,
    /// Reverse common-base current transfer ratio.
    pub alpha_i: f64,
    /// Junction temperature (K).
    pub temperature: f64,
    /// Largest accepted `V/Vt` before the exponential is rejected.
    pub exp_limit: f64,
}

impl BjtParams {
    /// Builds a validated parameter set with `alpha_i = 0`, `T = 300 K`.
    pub fn new(i_es: f64, i_cs: f64, alpha_n: f64) -> Result<Self> {
        let p = BjtParams {
            i_es,
            i_cs,
            alpha_n,
            alpha_i: 0.0,
            temperature: DEFAULT_TEMPERATURE,
            exp_limit: DEFAULT_EXP_LIMIT,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_alpha_i(mut self, alpha_i: f64) -> Result<Self> {
        self.alpha_i = alpha_i;
        self.validate()?;
        Ok(self)
    }

    pub fn with_temperature(mut self, temperature: f64) -> Result<Self> {
        self.temperature = temperature;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.i_es > 0.0 && self.i_es.is_finite()) {
            return Err(Error::domain(format!(
                "i_es must be positive, got {}",
                self.i_es
            )));
        }
        if !(self.i_cs > 0.0 && self.i_cs.is_finite()) {
            return Err(Error::domain(format!(
                "i_cs must be positive, got {}",
                self.i_cs
            )));
        }
        if !(self.alpha_n > 0.0 && self.alpha_n < 1.0) {
            return Err(Error::domain(format!(
                "alpha_n must lie in (0, 1), got {}",
                self.alpha_n
            )));
        }
        if !(self.alpha_i >= 0.0 && self.alpha_i < self.alpha_n) {
            return Err(Error::domain(format!(
                "alpha_i must lie in [0, alpha_n), got {}",
                self.alpha_i
            )));
        }
        if !(self.exp_limit > 0.0) {
            return Err(Error::domain("exp_limit must be positive"));
        }
        thermal_voltage(self.temperature).map(|_| ())
    }

    pub fn thermal_voltage(&self) -> Result<f64> {
        thermal_voltage(self.temperature)
    }

    /// Current gain of the common-emitter connection.
    pub fn beta(&self) -> Result<f64> {
        beta_from_alpha(self.alpha_n)
    }

    /// `exp(v / vt) - 1`, rejecting arguments above the cap.
    pub(crate) fn junction_factor(&self, quantity: &'static str, v: f64, vt: f64) -> Result<f64> {
        let argument = v / vt;
        if argument > self.exp_limit || argument.is_nan() {
            return Err(Error::Range {
                quantity,
                value: v,
                argument,
                cap: self.exp_limit,
            });
        }
        Ok(argument.exp_m1())
    }
}

/// Terminal currents of a bipolar transistor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BjtCurrents {
    pub i_e: f64,
    pub i_c: f64,
    pub i_b: f64,
}

/// Full static Ebers-Moll equations, both junction terms kept.
pub fn ebers_moll_currents(params: &BjtParams, v_be: f64, v_cb: f64) -> Result<BjtCurrents> {
    let vt = params.thermal_voltage()?;
    let fwd = params.junction_factor("v_be", v_be, vt)?;
    let rev = params.junction_factor("v_cb", v_cb, vt)?;
    let i_e = params.i_es * fwd - params.alpha_i * params.i_cs * rev;
    let i_c = params.alpha_n * params.i_es * fwd - params.i_cs * rev;
    Ok(BjtCurrents {
        i_e,
        i_c,
        i_b: i_e - i_c,
    })
}

/// Ebers-Moll equations with the collector junction strongly reverse biased.
///
/// The base current is evaluated from its own closed form rather than as a
/// difference, so `i_c / i_b` equals `alpha_n / (1 - alpha_n)` to rounding.
pub fn active_region_currents(params: &BjtParams, v_be: f64) -> Result<BjtCurrents> {
    let vt = params.thermal_voltage()?;
    let fwd = params.junction_factor("v_be", v_be, vt)?;
    Ok(BjtCurrents {
        i_e: params.i_es * fwd,
        i_c: params.alpha_n * params.i_es * fwd,
        i_b: params.i_es * (1.0 - params.alpha_n) * fwd,
    })
}

/// `alpha_n / (1 - alpha_n)`.
pub fn beta_from_alpha(alpha_n: f64) -> Result<f64> {
    if !(alpha_n > 0.0 && alpha_n < 1.0) {
        return Err(Error::domain(format!(
            "alpha_n must lie in (0, 1), got {alpha_n}"
        )));
    }
    Ok(alpha_n / (1.0 - alpha_n))
}

/// Square-law n-channel MOS parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MosParams {
    /// Transconductance parameter k' (A/V^2).
    pub k_prime: f64,
    pub v_threshold: f64,
}

impl MosParams {
    pub fn new(k_prime: f64, v_threshold: f64) -> Result<Self> {
        if !(k_prime > 0.0 && k_prime.is_finite()) {
            return Err(Error::domain(format!(
                "k_prime must be positive, got {k_prime}"
            )));
        }
        if !v_threshold.is_finite() {
            return Err(Error::domain("v_threshold must be finite"));
        }
        Ok(MosParams {
            k_prime,
            v_threshold,
        })
    }
}

/// Operating region of the square-law device.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MosRegion {
    Cutoff,
    Triode,
    Saturation,
}

pub fn mos_region(params: &MosParams, v_gs: f64, v_ds: f64) -> MosRegion {
    let overdrive = v_gs - params.v_threshold;
    if overdrive <= 0.0 {
        MosRegion::Cutoff
    } else if v_ds < overdrive {
        MosRegion::Triode
    } else {
        MosRegion::Saturation
    }
}

/// Drain current of the square-law model.
pub fn mos_drain_current(params: &MosParams, v_gs: f64, v_ds: f64) -> Result<f64> {
    if !(v_ds >= 0.0) {
        return Err(Error::domain(format!(
            "v_ds must be non-negative, got {v_ds}"
        )));
    }
    let overdrive = v_gs - params.v_threshold;
    Ok(match mos_region(params, v_gs, v_ds) {
        MosRegion::Cutoff => 0.0,
        MosRegion::Triode => params.k_prime * (overdrive * v_ds - 0.5 * v_ds * v_ds),
        MosRegion::Saturation => 0.5 * params.k_prime * overdrive * overdrive,
    })
}

/// dI_D/dV_GS in saturation; zero in cutoff.
pub fn mos_transconductance(params: &MosParams, v_gs: f64) -> f64 {
    let overdrive = v_gs - params.v_threshold;
    if overdrive <= 0.0 {
        0.0
    } else {
        params.k_prime * overdrive
    }
}
