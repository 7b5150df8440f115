//! `key = value` amplifier configuration files.
//!
//! One assignment per line, `#` starts a comment, SI units throughout.
//! Required keys: `v_cc r_b1 r_b2 r_l i_es alpha_n`. Optional keys and
//! their defaults: `i_cs` (= `i_es`), `alpha_i` (0), `temperature` (300),
//! `i_c_max` (0.1), `v_ce_max` (40), `p_max` (0.5).

use std::collections::BTreeMap;

use super::format::fmt_full;
use super::CliError;
use crate::amplifier::OperatingLimits;
use crate::circuit::AmplifierConfig;
use crate::devices::{BjtParams, DEFAULT_EXP_LIMIT, DEFAULT_TEMPERATURE};

const KEYS: [&str; 12] = [
    "v_cc",
    "r_b1",
    "r_b2",
    "r_l",
    "i_es",
    "i_cs",
    "alpha_n",
    "alpha_i",
    "temperature",
    "i_c_max",
    "v_ce_max",
    "p_max",
];
const REQUIRED: [&str; 6] = ["v_cc", "r_b1", "r_b2", "r_l", "i_es", "alpha_n"];

/// Everything `simulate` needs: the stage and the device ratings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub amplifier: AmplifierConfig,
    pub limits: OperatingLimits,
}

impl SimConfig {
    /// Config text with every key spelled out at full precision.
    pub fn to_config_text(&self) -> String {
        let a = &self.amplifier;
        let d = &a.device;
        let l = &self.limits;
        let values = [
            a.v_cc,
            a.r_b1,
            a.r_b2,
            a.r_l,
            d.i_es,
            d.i_cs,
            d.alpha_n,
            d.alpha_i,
            d.temperature,
            l.i_c_max,
            l.v_ce_max,
            l.p_max,
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {}\n", fmt_full(v)))
            .collect()
    }
}

/// Parses a configuration, reporting the 1-based line of the first problem.
pub fn parse_config(text: &str) -> Result<SimConfig, CliError> {
    let mut values: BTreeMap<&str, f64> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = Some(idx as u64 + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::parse(line_no, format!("expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let known = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| CliError::parse(line_no, format!("unknown key `{key}`")))?;
        let number: f64 = value.parse().map_err(|_| {
            CliError::parse(line_no, format!("`{key}` needs a number, got `{value}`"))
        })?;
        if !number.is_finite() {
            return Err(CliError::parse(line_no, format!("`{key}` must be finite")));
        }
        if values.insert(known, number).is_some() {
            return Err(CliError::parse(line_no, format!("duplicate key `{key}`")));
        }
    }
    if let Some(missing) = REQUIRED.iter().find(|k| !values.contains_key(*k)) {
        return Err(CliError::parse(
            None,
            format!("missing required key `{missing}`"),
        ));
    }

    let get = |k: &str| values[k];
    let or = |k: &str, default: f64| values.get(k).copied().unwrap_or(default);
    let device = BjtParams {
        i_es: get("i_es"),
        i_cs: or("i_cs", get("i_es")),
        alpha_n: get("alpha_n"),
        alpha_i: or("alpha_i", 0.0),
        temperature: or("temperature", DEFAULT_TEMPERATURE),
        exp_limit: DEFAULT_EXP_LIMIT,
    };
    let defaults = OperatingLimits::default();
    let config = SimConfig {
        amplifier: AmplifierConfig {
            v_cc: get("v_cc"),
            r_b1: get("r_b1"),
            r_b2: get("r_b2"),
            r_l: get("r_l"),
            device,
        },
        limits: OperatingLimits {
            i_c_max: or("i_c_max", defaults.i_c_max),
            v_ce_max: or("v_ce_max", defaults.v_ce_max),
            p_max: or("p_max", defaults.p_max),
        },
    };
    config.amplifier.validate()?;
    config.limits.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# reference stage
v_cc = 12
r_b1 = 100e3   # upper divider leg
r_b2 = 20e3
r_l = 1000
i_es = 1e-14
alpha_n = 0.99
";

    #[test]
    fn defaults_fill_optional_keys() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.amplifier.v_cc, 12.0);
        assert_eq!(c.amplifier.r_b1, 100e3);
        assert_eq!(c.amplifier.device.i_cs, 1e-14);
        assert_eq!(c.amplifier.device.alpha_i, 0.0);
        assert_eq!(c.amplifier.device.temperature, 300.0);
        assert_eq!(c.limits, OperatingLimits::default());
    }

    #[test]
    fn echo_reparses_to_same_config() {
        let c = parse_config(&format!(
            "{MINIMAL}alpha_i = 0.1\ntemperature = 310.15\np_max = 0.25\n"
        ))
        .unwrap();
        assert_eq!(parse_config(&c.to_config_text()).unwrap(), c);
    }

    fn line_of(text: &str) -> Option<u64> {
        match parse_config(text) {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        assert_eq!(line_of(&format!("{MINIMAL}gain = 3\n")), Some(8));
        assert_eq!(line_of(&format!("{MINIMAL}r_l = 5\n")), Some(8));
        assert_eq!(line_of("v_cc = twelve\n"), Some(1));
        assert_eq!(line_of("\n\nv_cc 12\n"), Some(3));
        assert_eq!(line_of("v_cc = inf\n"), Some(1));
        assert_eq!(line_of("v_cc = 12\n"), None);
    }

    #[test]
    fn out_of_range_values_are_domain_errors() {
        let bad = MINIMAL.replace("alpha_n = 0.99", "alpha_n = 1.5");
        let err = parse_config(&bad).unwrap_err();
        assert_eq!(err.exit_code(), super::super::EXIT_COMPUTE);
    }
}
