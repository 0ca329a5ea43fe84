//! Flat key=value configuration files with dotted keys.
//!
//! Unspecified fields keep the simulation defaults baked into
//! [`SystemConfig::default`], so an empty file is a complete configuration.
//! `#` starts a comment; blank lines are ignored. All δ values are dB, all
//! internal math is linear; `gamma_th` is a linear SNR (a reading of 3 means
//! 3, not 3 dB — override `gamma_th` explicitly to study the dB reading).

use std::fmt::Write as _;

use secrelay_core::link::{LinkParams, SpeedConvention};
use secrelay_core::mc::McSettings;
use secrelay_core::secrecy::{EvalPath, SystemConfig};

use crate::sweep::{SweepScale, SweepSpec, SweepVariable};

/// A full run description: the system, an optional sweep, and the Monte
/// Carlo settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub sweep: Option<SweepSpec>,
    pub mc: McSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { system: SystemConfig::default(), sweep: None, mc: McSettings::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Apply a config text on top of `cfg`. Every malformed line is reported.
pub fn apply_config_text(cfg: &mut RunConfig, text: &str) -> Result<(), Vec<ParseError>> {
    let mut errors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(ParseError {
                line: line_no,
                message: format!("expected key = value, got '{line}'"),
            });
            continue;
        };
        if let Err(message) = apply_key(cfg, key.trim(), value.trim()) {
            errors.push(ParseError { line: line_no, message });
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value.parse::<f64>().map_err(|_| format!("field '{key}': '{value}' is not a number"))
}

fn parse_u64(key: &str, value: &str) -> Result<u64, String> {
    value.parse::<u64>().map_err(|_| format!("field '{key}': '{value}' is not an unsigned integer"))
}

fn parse_u32(key: &str, value: &str) -> Result<u32, String> {
    value.parse::<u32>().map_err(|_| format!("field '{key}': '{value}' is not an unsigned integer"))
}

fn link_mut<'a>(cfg: &'a mut RunConfig, prefix: &str) -> Option<&'a mut LinkParams> {
    match prefix {
        "link_sr" => Some(&mut cfg.system.link_sr),
        "link_rd" => Some(&mut cfg.system.link_rd),
        "link_se1" => Some(&mut cfg.system.link_se1),
        "link_re2" => Some(&mut cfg.system.link_re2),
        _ => None,
    }
}

/// Set one dotted key. Public so presets and tests can build configs from
/// the same key space as the files.
pub fn apply_key(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), String> {
    match key {
        "ctx.fc_hz" => cfg.system.ctx.carrier_frequency_hz = parse_f64(key, value)?,
        "ctx.tau_s" => cfg.system.ctx.delay_s = parse_f64(key, value)?,
        "ctx.speed_convention" => {
            cfg.system.ctx.speed_convention = match value.to_ascii_lowercase().as_str() {
                "opposite" | "opposite_directions" => SpeedConvention::OppositeDirections,
                "same" | "same_direction" => SpeedConvention::SameDirection,
                "explicit" | "explicit_relative" => SpeedConvention::ExplicitRelative,
                other => {
                    return Err(format!(
                        "field '{key}': unknown convention '{other}' (opposite|same|explicit)"
                    ))
                }
            }
        }
        "gamma_th" => cfg.system.gamma_th = parse_f64(key, value)?,
        "mc.samples" => cfg.mc.n_samples = parse_u64(key, value)?,
        "mc.seed" => cfg.mc.seed = parse_u64(key, value)?,
        "mc.partitions" => cfg.mc.n_partitions = parse_u32(key, value)?,
        "sweep.variable" => {
            let variable: SweepVariable = value.parse()?;
            match &mut cfg.sweep {
                Some(spec) => spec.variable = variable,
                None => cfg.sweep = Some(SweepSpec::for_variable(variable)),
            }
        }
        "sweep.start" => sweep_mut(cfg, key)?.start = parse_f64(key, value)?,
        "sweep.stop" => sweep_mut(cfg, key)?.stop = parse_f64(key, value)?,
        "sweep.points" => sweep_mut(cfg, key)?.points = parse_u32(key, value)?,
        "sweep.scale" => {
            let scale: SweepScale = value.parse()?;
            sweep_mut(cfg, key)?.scale = scale;
        }
        "sweep.paths" => {
            let mut paths = Vec::new();
            for token in value.split(',') {
                let path: EvalPath = token
                    .parse()
                    .map_err(|e: secrelay_core::Error| format!("field '{key}': {e}"))?;
                if !paths.contains(&path) {
                    paths.push(path);
                }
            }
            sweep_mut(cfg, key)?.paths = paths;
        }
        _ => {
            if let Some((prefix, field)) = key.split_once('.') {
                let full = key.to_string();
                if let Some(link) = link_mut(cfg, prefix) {
                    match field {
                        "m" => link.m = parse_f64(&full, value)?,
                        "omega" => link.omega = parse_f64(&full, value)?,
                        "n_rx" => link.n_rx = parse_u32(&full, value)?,
                        "sigma_eps_sq" => link.sigma_eps_sq = parse_f64(&full, value)?,
                        "sigma_w_sq" => {
                            link.sigma_w_sq = if value.eq_ignore_ascii_case("auto") {
                                None
                            } else {
                                Some(parse_f64(&full, value)?)
                            }
                        }
                        "delta_db" => link.delta_db = parse_f64(&full, value)?,
                        "speed_a_kmh" => link.speed_a_kmh = parse_f64(&full, value)?,
                        "speed_b_kmh" => link.speed_b_kmh = parse_f64(&full, value)?,
                        _ => return Err(format!("unknown field '{key}'")),
                    }
                    return Ok(());
                }
            }
            return Err(format!("unknown field '{key}'"));
        }
    }
    Ok(())
}

fn sweep_mut<'a>(cfg: &'a mut RunConfig, key: &str) -> Result<&'a mut SweepSpec, String> {
    cfg.sweep.as_mut().ok_or_else(|| format!("field '{key}': set sweep.variable first"))
}

/// Every violated invariant of the run, across system, sweep, Monte Carlo,
/// and path-specific requirements (the closed-form paths need integer m).
pub fn validation_issues(cfg: &RunConfig) -> Vec<String> {
    let mut issues = cfg.system.validation_issues();
    issues.extend(cfg.mc.validation_issues());
    let closed_form_requested = cfg.sweep.as_ref().is_none_or(|s| {
        s.paths.iter().any(|p| *p != EvalPath::MonteCarlo)
    });
    if closed_form_requested {
        for (name, link) in cfg.system.links() {
            if link.integer_m(name).is_err() {
                issues.push(format!(
                    "{name}.m = {} is not an integer; the requested closed-form path requires \
                     integer Nakagami m (only the monte_carlo path accepts non-integer m)",
                    link.m
                ));
            }
        }
    }
    if let Some(spec) = &cfg.sweep {
        issues.extend(spec.validation_issues());
    }
    issues
}

/// Canonical serialization of the system parameters, the basis of the
/// config hash: one line per field in fixed order, shortest round-trip
/// float formatting, so the digest changes iff some parameter changes.
pub fn canonical_system_text(system: &SystemConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ctx.fc_hz={:?}", system.ctx.carrier_frequency_hz);
    let _ = writeln!(out, "ctx.tau_s={:?}", system.ctx.delay_s);
    let convention = match system.ctx.speed_convention {
        SpeedConvention::OppositeDirections => "opposite",
        SpeedConvention::SameDirection => "same",
        SpeedConvention::ExplicitRelative => "explicit",
    };
    let _ = writeln!(out, "ctx.speed_convention={convention}");
    let _ = writeln!(out, "gamma_th={:?}", system.gamma_th);
    for (name, link) in system.links() {
        let _ = writeln!(out, "{name}.m={:?}", link.m);
        let _ = writeln!(out, "{name}.omega={:?}", link.omega);
        let _ = writeln!(out, "{name}.n_rx={}", link.n_rx);
        let _ = writeln!(out, "{name}.sigma_eps_sq={:?}", link.sigma_eps_sq);
        match link.sigma_w_sq {
            Some(v) => {
                let _ = writeln!(out, "{name}.sigma_w_sq={v:?}");
            }
            None => {
                let _ = writeln!(out, "{name}.sigma_w_sq=auto");
            }
        }
        let _ = writeln!(out, "{name}.delta_db={:?}", link.delta_db);
        let _ = writeln!(out, "{name}.speed_a_kmh={:?}", link.speed_a_kmh);
        let _ = writeln!(out, "{name}.speed_b_kmh={:?}", link.speed_b_kmh);
    }
    out
}

/// FNV-1a 64-bit fingerprint of the canonical system text.
pub fn config_hash(system: &SystemConfig) -> String {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut hash = OFFSET;
    for byte in canonical_system_text(system).as_bytes() {
        hash ^= *byte as u64;
        hash = hash.wrapping_mul(PRIME);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_the_default_system() {
        let mut cfg = RunConfig::default();
        apply_config_text(&mut cfg, "\n# just a comment\n\n").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.system.link_sr.delta_db, 30.0);
        assert_eq!(cfg.system.link_se1.delta_db, 10.0);
        assert_eq!(cfg.system.link_se1.n_rx, 2);
        assert_eq!(cfg.system.gamma_th, 3.0);
        assert_eq!(cfg.mc.n_samples, 9_000_000);
        assert!(validation_issues(&cfg).is_empty());
    }

    #[test]
    fn overrides_apply_and_round_trip() {
        let text = "\
            ctx.fc_hz = 5e9\n\
            ctx.speed_convention = explicit\n\
            link_sr.delta_db = 41.5   # inline comment\n\
            link_re2.sigma_w_sq = 0.25\n\
            link_rd.sigma_w_sq = auto\n\
            gamma_th = 0\n\
            sweep.variable = tau\n\
            sweep.start = 1e-5\n\
            sweep.stop = 6e-3\n\
            sweep.points = 11\n\
            sweep.paths = exact, monte_carlo\n\
            mc.seed = 99\n";
        let mut cfg = RunConfig::default();
        apply_config_text(&mut cfg, text).unwrap();
        assert_eq!(cfg.system.ctx.carrier_frequency_hz, 5e9);
        assert_eq!(cfg.system.ctx.speed_convention, SpeedConvention::ExplicitRelative);
        assert_eq!(cfg.system.link_sr.delta_db, 41.5);
        assert_eq!(cfg.system.link_re2.sigma_w_sq, Some(0.25));
        assert_eq!(cfg.system.link_rd.sigma_w_sq, None);
        assert_eq!(cfg.system.gamma_th, 0.0);
        let sweep = cfg.sweep.unwrap();
        assert_eq!(sweep.variable, SweepVariable::Tau);
        assert_eq!(sweep.points, 11);
        assert_eq!(sweep.paths, vec![EvalPath::Exact, EvalPath::MonteCarlo]);
        assert_eq!(cfg.mc.seed, 99);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "link_sr.m = 2\nwhatever\nlink_sr.bogus = 1\nlink_rd.m = x\n";
        let mut cfg = RunConfig::default();
        let errors = apply_config_text(&mut cfg, text).unwrap_err();
        assert_eq!(errors.len(), 3);
        assert_eq!(errors[0].line, 2);
        assert!(errors[1].message.contains("link_sr.bogus"));
        assert_eq!(errors[2].line, 4);
        assert!(errors[2].message.contains("not a number"));
    }

    #[test]
    fn non_integer_m_fails_validation_only_for_closed_form_paths() {
        let mut cfg = RunConfig::default();
        apply_config_text(&mut cfg, "link_sr.m = 1.5\n").unwrap();
        let issues = validation_issues(&cfg);
        assert_eq!(issues.len(), 1);
        assert!(issues[0].contains("integer"), "{issues:?}");
        // a Monte-Carlo-only sweep tolerates it
        apply_config_text(
            &mut cfg,
            "sweep.variable = delta_legit\nsweep.paths = monte_carlo\n",
        )
        .unwrap();
        assert!(validation_issues(&cfg).is_empty());
    }

    #[test]
    fn validation_lists_every_violation() {
        let mut cfg = RunConfig::default();
        apply_config_text(
            &mut cfg,
            "link_sr.omega = -2\nlink_rd.n_rx = 0\ngamma_th = -1\nmc.samples = 10\n",
        )
        .unwrap();
        let issues = validation_issues(&cfg);
        assert!(issues.len() >= 4, "{issues:?}");
    }

    #[test]
    fn hash_changes_iff_parameters_change() {
        let base = RunConfig::default();
        let h0 = config_hash(&base.system);
        assert_eq!(h0, config_hash(&RunConfig::default().system));
        let mut cfg = RunConfig::default();
        apply_key(&mut cfg, "link_se1.delta_db", "10.000001").unwrap();
        assert_ne!(h0, config_hash(&cfg.system));
        let mut cfg = RunConfig::default();
        apply_key(&mut cfg, "link_sr.sigma_w_sq", "2.1").unwrap();
        // explicit 2.1 differs from auto even though the value coincides
        assert_ne!(h0, config_hash(&cfg.system));
        // the hash ignores sweep and MC settings
        let mut cfg = RunConfig::default();
        apply_key(&mut cfg, "mc.seed", "123").unwrap();
        assert_eq!(h0, config_hash(&cfg.system));
    }
}
