//! Analytic-vs-Monte-Carlo comparison report with a 4σ agreement gate.

use std::fmt::Write as _;

use secrelay_core::link::effective_avg_snr;
use secrelay_core::mc::{mc_intercept_probability_with, McSettings};
use secrelay_core::secrecy::{
    ip_asymptotic_scenario1, ip_asymptotic_scenario2, ip_exact, ip_low_threshold_floor,
    SystemConfig,
};
use secrelay_core::{Error, SnrDistribution};

pub struct ReportOutcome {
    pub text: String,
    pub pass: bool,
}

/// Evaluate the exact expression, the Monte Carlo estimate, and whichever
/// asymptotics apply; gate |exact - mc| at four standard errors.
pub fn compare_report(cfg: &SystemConfig, mc: &McSettings) -> Result<ReportOutcome, Error> {
    compare_report_with_bias(cfg, mc, 1.0)
}

/// Test hook: the Monte Carlo draws use effective SNRs scaled by
/// `upsilon_bias`, so a deliberate corruption (e.g. 1.1) must trip the gate.
pub fn compare_report_with_bias(
    cfg: &SystemConfig,
    mc: &McSettings,
    upsilon_bias: f64,
) -> Result<ReportOutcome, Error> {
    let exact = ip_exact(cfg)?;
    let dists = biased_distributions(cfg, upsilon_bias)?;
    let sim = mc_intercept_probability_with(&dists, cfg.gamma_th, mc)?;

    // deviation scale: the larger of the estimated and reference-based
    // binomial standard errors (the estimate degenerates at p = 0 or 1)
    let n = mc.n_samples as f64;
    let sigma = sim
        .mc_stderr
        .unwrap_or(0.0)
        .max((exact.ip * (1.0 - exact.ip) / n).sqrt())
        .max(1.0 / n);
    let gap_sigmas = (exact.ip - sim.ip).abs() / sigma;
    let pass = gap_sigmas <= 4.0;

    let mut text = String::new();
    let _ = writeln!(text, "intercept probability comparison");
    let _ = writeln!(text, "  exact            ip = {:.8e}", exact.ip);
    let _ = writeln!(
        text,
        "  monte_carlo      ip = {:.8e}  (n = {}, stderr = {:.3e}, seed = {})",
        sim.ip, mc.n_samples, sigma, mc.seed
    );
    let _ = writeln!(text, "  |exact - mc|     = {:.2} stderr", gap_sigmas);
    let floor = ip_low_threshold_floor(cfg)?;
    let _ = writeln!(text, "  low-threshold floor      ip = {:.8e}", floor.ip);
    match ip_asymptotic_scenario1(cfg) {
        Ok(rep) => {
            let _ = writeln!(text, "  high-SNR floor (mobile)  ip = {:.8e}", rep.ip);
        }
        Err(Error::CeilingUndefined(link)) => {
            let _ = writeln!(
                text,
                "  high-SNR floor (mobile)  not applicable: {link} has no finite ceiling"
            );
        }
        Err(e) => return Err(e),
    }
    match ip_asymptotic_scenario2(cfg, cfg.link_sr.delta_db) {
        Ok(rep) => {
            let _ = writeln!(
                text,
                "  static/perfect-CSI expansion  ip = {:.8e}, diversity order = {}, coding gain = {:.6e}",
                rep.ip, rep.terms["Gd"], rep.terms["Gc"]
            );
        }
        Err(Error::Precondition(_)) => {
            let _ = writeln!(
                text,
                "  static/perfect-CSI expansion  not applicable (mobility or estimation noise present)"
            );
        }
        Err(e) => return Err(e),
    }
    let _ = writeln!(text, "  4-sigma gate: {}", if pass { "PASS" } else { "FAIL" });
    Ok(ReportOutcome { text, pass })
}

fn biased_distributions(
    cfg: &SystemConfig,
    upsilon_bias: f64,
) -> Result<[SnrDistribution; 4], Error> {
    let mut out = Vec::with_capacity(4);
    for (_, link) in cfg.links() {
        let upsilon = effective_avg_snr(link, &cfg.ctx).upsilon * upsilon_bias;
        out.push(SnrDistribution::new(link.shape(), link.m / upsilon.max(1e-300))?);
    }
    Ok([out[0], out[1], out[2], out[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_mc() -> McSettings {
        McSettings { n_samples: 400_000, seed: 21, n_partitions: 8 }
    }

    #[test]
    fn defaults_pass_the_gate() {
        let outcome = compare_report(&SystemConfig::default(), &quick_mc()).unwrap();
        assert!(outcome.pass, "{}", outcome.text);
        assert!(outcome.text.contains("PASS"));
        assert!(outcome.text.contains("not applicable")); // S2 on a mobile config
    }

    #[test]
    fn corrupted_effective_snr_fails_the_gate() {
        let outcome =
            compare_report_with_bias(&SystemConfig::default(), &quick_mc(), 1.1).unwrap();
        assert!(!outcome.pass, "{}", outcome.text);
        assert!(outcome.text.contains("FAIL"));
    }

    #[test]
    fn static_config_reports_the_diversity_order() {
        let mut cfg = SystemConfig::default();
        for link in [
            &mut cfg.link_sr,
            &mut cfg.link_rd,
            &mut cfg.link_se1,
            &mut cfg.link_re2,
        ] {
            link.sigma_eps_sq = 0.0;
            link.speed_a_kmh = 0.0;
            link.speed_b_kmh = 0.0;
        }
        let outcome = compare_report(&cfg, &quick_mc()).unwrap();
        assert!(outcome.text.contains("diversity order = 8"), "{}", outcome.text);
    }
}
