//! Link model: converts physical descriptors of one directed link (speeds,
//! carrier frequency, delay, fading and noise powers) into the Jakes
//! correlation coefficient ρ and the effective per-branch average SNR Υ with
//! its high-SNR ceiling.

use crate::error::{Error, Result};
use crate::special::bessel_j0;

/// Speed of light in m/s.
pub const LIGHT_SPEED_MPS: f64 = 2.997_924_58e8;

/// How the two per-node speeds of a link combine into a relative speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpeedConvention {
    /// Nodes move toward/away from each other: v = v_a + v_b.
    #[default]
    OppositeDirections,
    /// Nodes move the same way: v = |v_b - v_a|.
    SameDirection,
    /// `speed_a_kmh` already is the relative speed; `speed_b_kmh` is ignored.
    ExplicitRelative,
}

/// Shared mobility description: carrier frequency, estimation delay, and the
/// convention for combining per-node speeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityContext {
    pub carrier_frequency_hz: f64,
    pub delay_s: f64,
    pub light_speed_mps: f64,
    pub speed_convention: SpeedConvention,
}

impl Default for MobilityContext {
    fn default() -> Self {
        Self {
            carrier_frequency_hz: 2.4e9,
            delay_s: 1e-3,
            light_speed_mps: LIGHT_SPEED_MPS,
            speed_convention: SpeedConvention::default(),
        }
    }
}

impl MobilityContext {
    pub fn validation_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if !(self.carrier_frequency_hz > 0.0) || !self.carrier_frequency_hz.is_finite() {
            issues.push(format!(
                "ctx.fc_hz must be > 0 (got {})",
                self.carrier_frequency_hz
            ));
        }
        if !(self.delay_s >= 0.0) || !self.delay_s.is_finite() {
            issues.push(format!("ctx.tau_s must be >= 0 (got {})", self.delay_s));
        }
        issues
    }
}

/// One directed link's fading, antenna, noise, and mobility description.
///
/// `m` is kept as a double so that configurations with non-integer Nakagami
/// parameters can still drive the sampling and quadrature paths; the
/// closed-form paths demand integer `m` through [`LinkParams::integer_m`].
/// `sigma_w_sq = None` selects the σ²_w = Ω + σ²_ε convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub m: f64,
    pub omega: f64,
    pub n_rx: u32,
    pub sigma_eps_sq: f64,
    pub sigma_w_sq: Option<f64>,
    pub delta_db: f64,
    pub speed_a_kmh: f64,
    pub speed_b_kmh: f64,
}

impl Default for LinkParams {
    /// Table-style legitimate-link defaults: Nakagami m = 2, Ω = 2, four
    /// receive antennas, σ²_ε = 0.1, automatic σ²_w, δ = 30 dB, both nodes
    /// at 25 km/h.
    fn default() -> Self {
        Self {
            m: 2.0,
            omega: 2.0,
            n_rx: 4,
            sigma_eps_sq: 0.1,
            sigma_w_sq: None,
            delta_db: 30.0,
            speed_a_kmh: 25.0,
            speed_b_kmh: 25.0,
        }
    }
}

impl LinkParams {
    /// Integer Nakagami parameter, required by the closed-form expressions.
    pub fn integer_m(&self, link: &'static str) -> Result<u32> {
        if self.m >= 1.0 && self.m.fract() == 0.0 && self.m <= u32::MAX as f64 {
            Ok(self.m as u32)
        } else {
            Err(Error::NonIntegerM { link, m: self.m })
        }
    }

    /// Post-combiner Gamma shape m·N (any positive real).
    pub fn shape(&self) -> f64 {
        self.m * self.n_rx as f64
    }

    /// δ in linear units.
    pub fn delta_linear(&self) -> f64 {
        db_to_linear(self.delta_db)
    }

    pub fn validation_issues(&self, name: &str) -> Vec<String> {
        let mut issues = Vec::new();
        if !(self.m >= 1.0) || !self.m.is_finite() {
            issues.push(format!("{name}.m must be >= 1 (got {})", self.m));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            issues.push(format!("{name}.omega must be > 0 (got {})", self.omega));
        }
        if self.n_rx < 1 {
            issues.push(format!("{name}.n_rx must be >= 1 (got {})", self.n_rx));
        }
        if !(self.sigma_eps_sq >= 0.0) || !self.sigma_eps_sq.is_finite() {
            issues.push(format!(
                "{name}.sigma_eps_sq must be >= 0 (got {})",
                self.sigma_eps_sq
            ));
        }
        if let Some(sw) = self.sigma_w_sq {
            if !(sw >= 0.0) || !sw.is_finite() {
                issues.push(format!("{name}.sigma_w_sq must be >= 0 or auto (got {sw})"));
            }
        }
        if !self.delta_db.is_finite() {
            issues.push(format!("{name}.delta_db must be finite (got {})", self.delta_db));
        }
        for (field, v) in [("speed_a_kmh", self.speed_a_kmh), ("speed_b_kmh", self.speed_b_kmh)] {
            if !(v >= 0.0) || !v.is_finite() {
                issues.push(format!("{name}.{field} must be >= 0 (got {v})"));
            }
        }
        issues
    }
}

/// Derived per-link quantities: correlation ρ, effective per-branch average
/// SNR Υ (linear), and the high-SNR ceiling Υ^(∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSnr {
    pub rho: f64,
    pub upsilon: f64,
    pub upsilon_ceiling: f64,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Relative speed of the link's two endpoints in m/s.
pub fn relative_speed(link: &LinkParams, ctx: &MobilityContext) -> f64 {
    let kmh = match ctx.speed_convention {
        SpeedConvention::OppositeDirections => link.speed_a_kmh + link.speed_b_kmh,
        SpeedConvention::SameDirection => (link.speed_b_kmh - link.speed_a_kmh).abs(),
        SpeedConvention::ExplicitRelative => link.speed_a_kmh,
    };
    kmh / 3.6
}

/// Jakes correlation coefficient ρ = J₀(2π v f_c τ / c).
///
/// Not clamped: beyond the first zero of J₀ the coefficient goes negative,
/// which is legal since everything downstream depends on ρ².
pub fn correlation_coefficient(link: &LinkParams, ctx: &MobilityContext) -> f64 {
    let v = relative_speed(link, ctx);
    bessel_j0(
        2.0 * std::f64::consts::PI * v * ctx.carrier_frequency_hz * ctx.delay_s
            / ctx.light_speed_mps,
    )
}

/// Mobility noise power: the explicit value, or Ω + σ²_ε when automatic.
pub fn resolve_sigma_w(link: &LinkParams) -> f64 {
    link.sigma_w_sq.unwrap_or(link.omega + link.sigma_eps_sq)
}

/// Effective per-branch average SNR
/// `Υ = ρ²δ / ((δ/Ω)(ρ²σ²_ε + (1-ρ²)σ²_w) + 1)` and its ceiling
/// `Υ^(∞) = ρ²Ω / (ρ²σ²_ε + (1-ρ²)σ²_w)` (infinite for an unimpaired link).
pub fn effective_avg_snr(link: &LinkParams, ctx: &MobilityContext) -> EffectiveSnr {
    let rho = correlation_coefficient(link, ctx);
    let rho2 = rho * rho;
    let sigma_w_sq = resolve_sigma_w(link);
    let impairment = rho2 * link.sigma_eps_sq + (1.0 - rho2) * sigma_w_sq;
    let delta = link.delta_linear();
    let upsilon = rho2 * delta / ((delta / link.omega) * impairment + 1.0);
    let upsilon_ceiling = if impairment > 0.0 {
        rho2 * link.omega / impairment
    } else {
        f64::INFINITY
    };
    EffectiveSnr { rho, upsilon, upsilon_ceiling }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_ctx() -> MobilityContext {
        MobilityContext::default()
    }

    #[test]
    fn relative_speed_conventions() {
        let mut link = LinkParams::default();
        let mut ctx = table_ctx();
        // 25 + 25 km/h head-on = 50 km/h
        assert!((relative_speed(&link, &ctx) - 50.0 / 3.6).abs() < 1e-12);
        ctx.speed_convention = SpeedConvention::SameDirection;
        assert_eq!(relative_speed(&link, &ctx), 0.0);
        ctx.speed_convention = SpeedConvention::ExplicitRelative;
        link.speed_a_kmh = 70.0;
        link.speed_b_kmh = 999.0; // ignored
        assert!((relative_speed(&link, &ctx) - 70.0 / 3.6).abs() < 1e-12);
        link.speed_a_kmh = 0.0;
        link.speed_b_kmh = 0.0;
        for conv in [
            SpeedConvention::OppositeDirections,
            SpeedConvention::SameDirection,
            SpeedConvention::ExplicitRelative,
        ] {
            ctx.speed_convention = conv;
            assert_eq!(relative_speed(&link, &ctx), 0.0);
        }
    }

    #[test]
    fn correlation_is_one_when_static_or_instantaneous() {
        let mut link = LinkParams::default();
        link.speed_a_kmh = 0.0;
        link.speed_b_kmh = 0.0;
        assert_eq!(correlation_coefficient(&link, &table_ctx()), 1.0);
        let link = LinkParams::default();
        let mut ctx = table_ctx();
        ctx.delay_s = 0.0;
        assert_eq!(correlation_coefficient(&link, &ctx), 1.0);
    }

    #[test]
    fn table_default_correlation_value() {
        // 50 km/h, 2.4 GHz, 1 ms
        let got = correlation_coefficient(&LinkParams::default(), &table_ctx());
        assert!((got - 0.88165615080407982).abs() < 1e-12, "rho = {got}");
    }

    /// τ at which ρ is smallest, by golden-section search on [0, cap].
    fn rho_argmin_tau(fc_hz: f64, cap_s: f64) -> f64 {
        let link = LinkParams::default();
        let rho_at = |tau: f64| {
            let ctx = MobilityContext { carrier_frequency_hz: fc_hz, delay_s: tau, ..table_ctx() };
            correlation_coefficient(&link, &ctx)
        };
        let phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (0.0, cap_s);
        while hi - lo > 1e-9 {
            let a = hi - phi * (hi - lo);
            let b = lo + phi * (hi - lo);
            if rho_at(a) < rho_at(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn rho_minima_locations_match_reported_delays() {
        // 50 km/h relative speed; minima of J₀ mapped back to τ
        let t24 = rho_argmin_tau(2.4e9, 8e-3) * 1e3;
        let t60 = rho_argmin_tau(6.0e9, 4e-3) * 1e3;
        assert!((t24 - 5.4847).abs() < 0.05, "tau0(2.4 GHz) = {t24} ms");
        assert!((t60 - 2.1939).abs() < 0.05, "tau0(6 GHz) = {t60} ms");
    }

    #[test]
    fn sigma_w_resolution() {
        let mut link = LinkParams::default();
        assert!((resolve_sigma_w(&link) - 2.1).abs() < 1e-15);
        link.sigma_eps_sq = 0.0;
        assert_eq!(resolve_sigma_w(&link), 2.0);
        link.sigma_w_sq = Some(0.5);
        assert_eq!(resolve_sigma_w(&link), 0.5);
    }

    #[test]
    fn effective_snr_ideal_link_equals_delta() {
        let link = LinkParams {
            sigma_eps_sq: 0.0,
            speed_a_kmh: 0.0,
            speed_b_kmh: 0.0,
            delta_db: 17.0,
            ..LinkParams::default()
        };
        let snr = effective_avg_snr(&link, &table_ctx());
        assert_eq!(snr.rho, 1.0);
        assert!((snr.upsilon - db_to_linear(17.0)).abs() < 1e-9);
        assert_eq!(snr.upsilon_ceiling, f64::INFINITY);
    }

    #[test]
    fn effective_snr_table_defaults() {
        let snr = effective_avg_snr(&LinkParams::default(), &table_ctx());
        assert!((snr.upsilon - 2.8402172667137552).abs() < 1e-11, "upsilon = {}", snr.upsilon);
        assert!(
            (snr.upsilon_ceiling - 2.8506331092324425).abs() < 1e-11,
            "ceiling = {}",
            snr.upsilon_ceiling
        );
        let eav = LinkParams { n_rx: 2, delta_db: 10.0, ..LinkParams::default() };
        let snr = effective_avg_snr(&eav, &table_ctx());
        assert!((snr.upsilon - 2.0857370834520324).abs() < 1e-11);
    }

    #[test]
    fn effective_snr_approaches_ceiling() {
        let link = LinkParams { delta_db: 120.0, ..LinkParams::default() };
        let snr = effective_avg_snr(&link, &table_ctx());
        assert!((snr.upsilon / snr.upsilon_ceiling - 1.0).abs() < 1e-6);
        assert!(snr.upsilon <= snr.upsilon_ceiling);
    }

    #[test]
    fn upsilon_monotone_in_delta_and_bounded() {
        let mut prev = 0.0;
        for ddb in (-20..=100).step_by(5) {
            let link = LinkParams { delta_db: ddb as f64, ..LinkParams::default() };
            let snr = effective_avg_snr(&link, &table_ctx());
            assert!(snr.upsilon >= prev);
            assert!(snr.upsilon <= snr.upsilon_ceiling);
            assert!(snr.upsilon <= link.delta_linear() * (1.0 + 1e-12));
            prev = snr.upsilon;
        }
    }

    #[test]
    fn upsilon_strictly_increasing_in_rho() {
        // sweep relative speed downward so ρ sweeps upward through (0, 1]
        let ctx = MobilityContext {
            speed_convention: SpeedConvention::ExplicitRelative,
            ..table_ctx()
        };
        let mut prev_rho = -1.0;
        let mut prev_upsilon = -1.0;
        for v in (0..=60).rev() {
            let link = LinkParams { speed_a_kmh: v as f64, ..LinkParams::default() };
            let snr = effective_avg_snr(&link, &ctx);
            if snr.rho > 0.0 && prev_rho >= 0.0 && snr.rho > prev_rho {
                assert!(
                    snr.upsilon > prev_upsilon,
                    "upsilon not increasing at v = {v} (rho = {})",
                    snr.rho
                );
            }
            prev_rho = snr.rho;
            prev_upsilon = snr.upsilon;
        }
    }

    #[test]
    fn correlation_nonincreasing_up_to_first_bessel_minimum() {
        const X0: f64 = 3.8317;
        let link = LinkParams::default(); // 50 km/h relative
        let v = relative_speed(&link, &table_ctx());
        let mut prev = f64::INFINITY;
        let mut tau = 0.0;
        loop {
            let x = 2.0 * std::f64::consts::PI * v * 2.4e9 * tau / LIGHT_SPEED_MPS;
            if x > X0 {
                break;
            }
            let ctx = MobilityContext { delay_s: tau, ..table_ctx() };
            let rho = correlation_coefficient(&link, &ctx);
            assert!(rho <= prev + 1e-15, "tau = {tau}");
            prev = rho;
            tau += 1e-4;
        }
    }

    #[test]
    fn validation_catches_bad_fields() {
        let link = LinkParams { m: 0.5, omega: -1.0, n_rx: 0, ..LinkParams::default() };
        let issues = link.validation_issues("link_sr");
        assert_eq!(issues.len(), 3, "{issues:?}");
        assert!(LinkParams::default().validation_issues("x").is_empty());
        assert!(LinkParams { m: 1.5, ..LinkParams::default() }.integer_m("sr").is_err());
        assert_eq!(LinkParams::default().integer_m("sr").unwrap(), 2);
    }
}
