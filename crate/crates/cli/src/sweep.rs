//! Parameter sweeps: grid generation, per-point configuration, and
//! deterministic parallel evaluation of every requested path.

use std::time::SystemTime;

use rayon::prelude::*;
use secrelay_core::link::db_to_linear;
use secrelay_core::mc::{mc_intercept_probability, McSettings};
use secrelay_core::secrecy::{
    ip_asymptotic_scenario1, ip_asymptotic_scenario2, ip_exact, ip_low_threshold_floor, EvalPath,
    IpReport, SystemConfig,
};

use crate::config::config_hash;

/// Which knob the sweep turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// δ_SR = δ_RD, in dB.
    DeltaLegit,
    /// δ_SE1 in dB.
    DeltaSe1,
    /// δ_RE2 in dB.
    DeltaRe2,
    /// Decoding threshold (linear, or dB under the db scale).
    GammaTh,
    /// CSI delay τ in seconds.
    Tau,
    /// Carrier frequency in Hz.
    Fc,
    /// Relative speed of every link in km/h.
    Speed,
    /// CSI estimation noise power on every link.
    SigmaEps,
}

impl SweepVariable {
    pub const ALL: [SweepVariable; 8] = [
        SweepVariable::DeltaLegit,
        SweepVariable::DeltaSe1,
        SweepVariable::DeltaRe2,
        SweepVariable::GammaTh,
        SweepVariable::Tau,
        SweepVariable::Fc,
        SweepVariable::Speed,
        SweepVariable::SigmaEps,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            SweepVariable::DeltaLegit => "delta_legit",
            SweepVariable::DeltaSe1 => "delta_se1",
            SweepVariable::DeltaRe2 => "delta_re2",
            SweepVariable::GammaTh => "gamma_th",
            SweepVariable::Tau => "tau",
            SweepVariable::Fc => "fc",
            SweepVariable::Speed => "speed",
            SweepVariable::SigmaEps => "sigma_eps",
        }
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        SweepVariable::ALL
            .into_iter()
            .find(|v| v.token() == t)
            .ok_or_else(|| format!("unknown sweep variable '{s}' (one of delta_legit, delta_se1, delta_re2, gamma_th, tau, fc, speed, sigma_eps)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
    /// Grid spacing in dB; converted to linear when the variable itself is
    /// a linear quantity (gamma_th).
    Db,
}

impl std::str::FromStr for SweepScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(SweepScale::Linear),
            "log" => Ok(SweepScale::Log),
            "db" => Ok(SweepScale::Db),
            other => Err(format!("unknown sweep scale '{other}' (linear|log|db)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: u32,
    pub scale: SweepScale,
    pub paths: Vec<EvalPath>,
}

impl SweepSpec {
    /// A sensible default range for a variable, used by `--sweep <name>`.
    pub fn for_variable(variable: SweepVariable) -> Self {
        let (start, stop, points, scale) = match variable {
            SweepVariable::DeltaLegit => (0.0, 60.0, 25, SweepScale::Linear),
            SweepVariable::DeltaSe1 | SweepVariable::DeltaRe2 => (0.0, 40.0, 21, SweepScale::Linear),
            SweepVariable::GammaTh => (1e-3, 1e3, 25, SweepScale::Log),
            SweepVariable::Tau => (1e-5, 6e-3, 41, SweepScale::Linear),
            SweepVariable::Fc => (1e9, 6e9, 21, SweepScale::Linear),
            SweepVariable::Speed => (0.0, 100.0, 21, SweepScale::Linear),
            SweepVariable::SigmaEps => (0.0, 0.5, 21, SweepScale::Linear),
        };
        SweepSpec { variable, start, stop, points, scale, paths: vec![EvalPath::Exact] }
    }

    pub fn validation_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.points < 2 {
            issues.push(format!("sweep.points must be >= 2 (got {})", self.points));
        }
        if !(self.start < self.stop) {
            issues.push(format!(
                "sweep.start must be < sweep.stop (got {} >= {})",
                self.start, self.stop
            ));
        }
        if self.scale == SweepScale::Log && self.start <= 0.0 {
            issues.push("sweep.scale = log requires sweep.start > 0".into());
        }
        if self.paths.is_empty() {
            issues.push("sweep.paths must name at least one path".into());
        }
        issues
    }

    /// The grid of sweep values.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points as usize;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear | SweepScale::Db => self.start + (self.stop - self.start) * t,
                    SweepScale::Log => {
                        10f64.powf(self.start.log10() + (self.stop.log10() - self.start.log10()) * t)
                    }
                }
            })
            .collect()
    }

    /// The configuration at one sweep value.
    pub fn configure(&self, base: &SystemConfig, value: f64) -> SystemConfig {
        let mut cfg = base.clone();
        let each_link = |cfg: &mut SystemConfig, f: &dyn Fn(&mut secrelay_core::LinkParams)| {
            f(&mut cfg.link_sr);
            f(&mut cfg.link_rd);
            f(&mut cfg.link_se1);
            f(&mut cfg.link_re2);
        };
        match self.variable {
            SweepVariable::DeltaLegit => {
                cfg.link_sr.delta_db = value;
                cfg.link_rd.delta_db = value;
            }
            SweepVariable::DeltaSe1 => cfg.link_se1.delta_db = value,
            SweepVariable::DeltaRe2 => cfg.link_re2.delta_db = value,
            SweepVariable::GammaTh => {
                cfg.gamma_th =
                    if self.scale == SweepScale::Db { db_to_linear(value) } else { value };
            }
            SweepVariable::Tau => cfg.ctx.delay_s = value,
            SweepVariable::Fc => cfg.ctx.carrier_frequency_hz = value,
            // relative speed under every convention: v_a = value, v_b = 0
            SweepVariable::Speed => each_link(&mut cfg, &|l| {
                l.speed_a_kmh = value;
                l.speed_b_kmh = 0.0;
            }),
            SweepVariable::SigmaEps => each_link(&mut cfg, &|l| l.sigma_eps_sq = value),
        }
        cfg
    }
}

/// One evaluated (sweep point, path) cell with full provenance.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub point_index: usize,
    pub sweep_variable: &'static str,
    pub sweep_value: f64,
    pub path: EvalPath,
    pub outcome: Result<IpReport, secrelay_core::Error>,
    pub seed: u64,
    pub config_hash: String,
    pub timestamp: SystemTime,
    pub tool_version: &'static str,
}

/// splitmix64, used to derive independent per-point Monte Carlo seeds from
/// the root seed.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn derive_point_seed(root: u64, point_index: usize) -> u64 {
    splitmix64(root ^ splitmix64(point_index as u64 + 1))
}

fn evaluate(cfg: &SystemConfig, path: EvalPath, mc: &McSettings) -> Result<IpReport, secrelay_core::Error> {
    match path {
        EvalPath::Exact => ip_exact(cfg),
        EvalPath::LowThresholdFloor => ip_low_threshold_floor(cfg),
        EvalPath::AsymptoticS1 => ip_asymptotic_scenario1(cfg),
        // δ is taken from the (swept) legitimate link
        EvalPath::AsymptoticS2 => ip_asymptotic_scenario2(cfg, cfg.link_sr.delta_db),
        EvalPath::MonteCarlo => mc_intercept_probability(cfg, mc),
    }
}

/// Evaluate every requested path at every grid point. Points run in
/// parallel; the output order is (point, requested-path) regardless of
/// scheduling, and Monte Carlo seeds derive from the root seed and the
/// point index alone. Engine failures are recorded per cell, not raised.
pub fn run_sweep(base: &SystemConfig, spec: &SweepSpec, mc: &McSettings) -> Vec<RunRecord> {
    let grid = spec.grid();
    let records: Vec<Vec<RunRecord>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &value)| {
            let cfg = spec.configure(base, value);
            let hash = config_hash(&cfg);
            let point_seed = derive_point_seed(mc.seed, i);
            spec.paths
                .iter()
                .map(|&path| {
                    let point_mc = McSettings { seed: point_seed, ..*mc };
                    RunRecord {
                        point_index: i,
                        sweep_variable: spec.variable.token(),
                        sweep_value: value,
                        path,
                        outcome: evaluate(&cfg, path, &point_mc),
                        seed: if path == EvalPath::MonteCarlo { point_seed } else { mc.seed },
                        config_hash: hash.clone(),
                        timestamp: SystemTime::now(),
                        tool_version: env!("CARGO_PKG_VERSION"),
                    }
                })
                .collect()
        })
        .collect();
    records.into_iter().flatten().collect()
}

/// Evaluate one configuration (no sweep): a single-point record per path.
pub fn run_single(base: &SystemConfig, paths: &[EvalPath], mc: &McSettings) -> Vec<RunRecord> {
    let hash = config_hash(base);
    paths
        .iter()
        .map(|&path| RunRecord {
            point_index: 0,
            sweep_variable: "none",
            sweep_value: 0.0,
            path,
            outcome: evaluate(base, path, mc),
            seed: mc.seed,
            config_hash: hash.clone(),
            timestamp: SystemTime::now(),
            tool_version: env!("CARGO_PKG_VERSION"),
        })
        .collect()
}
