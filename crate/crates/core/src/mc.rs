//! Stochastic validation paths.
//!
//! Two independent oracles: an SNR-level Monte Carlo that draws the four
//! per-hop Gamma SNRs and counts intercept events, and a fading-vector-level
//! Monte Carlo that samples the AR(1) channel construction itself to verify
//! the effective-SNR formula rather than consume it.
//!
//! Both are partitioned into independent ChaCha streams derived from one
//! seed, so estimates are bit-reproducible no matter how the partitions are
//! scheduled across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::link::{correlation_coefficient, resolve_sigma_w, LinkParams, MobilityContext};
use crate::secrecy::{EvalPath, IpReport, SystemConfig};
use crate::snr::SnrDistribution;

/// Monte Carlo budget and reproducibility contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSettings {
    pub n_samples: u64,
    pub seed: u64,
    pub n_partitions: u32,
}

impl Default for McSettings {
    fn default() -> Self {
        Self { n_samples: 9_000_000, seed: 1, n_partitions: 8 }
    }
}

impl McSettings {
    pub fn validation_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.n_samples < 10_000 {
            issues.push(format!("mc.samples must be >= 10000 (got {})", self.n_samples));
        }
        if self.n_partitions < 1 {
            issues.push("mc.partitions must be >= 1".into());
        }
        issues
    }

    /// Sample count of partition `k` (the remainder spreads over the first
    /// partitions, so totals are exact for any partition count).
    fn partition_len(&self, k: u32) -> u64 {
        let base = self.n_samples / self.n_partitions as u64;
        let rem = self.n_samples % self.n_partitions as u64;
        base + u64::from((k as u64) < rem)
    }

    fn stream_rng(&self, k: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k as u64);
        rng
    }
}

fn validated(s: &McSettings) -> Result<()> {
    let issues = s.validation_issues();
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(issues.join("; ")))
    }
}

/// Whether a drawn SNR tuple is an intercept event: the secrecy capacity is
/// non-positive, or the relay fails to decode (γ_SR ≤ γ_th). Relay outage
/// counts as interception by the metric's definition.
#[inline]
pub fn is_intercept(g_sr: f64, g_rd: f64, g_se1: f64, g_re2: f64, gamma_th: f64) -> bool {
    !(g_sr > g_se1 && g_sr > g_re2 && g_rd > g_re2 && g_sr > gamma_th)
}

/// SNR-level Monte Carlo estimate of the intercept probability.
pub fn mc_intercept_probability(cfg: &SystemConfig, s: &McSettings) -> Result<IpReport> {
    let issues = cfg.validation_issues();
    if !issues.is_empty() {
        return Err(Error::InvalidParameter(issues.join("; ")));
    }
    let dists = [
        SnrDistribution::for_link(&cfg.link_sr, &cfg.ctx)?,
        SnrDistribution::for_link(&cfg.link_rd, &cfg.ctx)?,
        SnrDistribution::for_link(&cfg.link_se1, &cfg.ctx)?,
        SnrDistribution::for_link(&cfg.link_re2, &cfg.ctx)?,
    ];
    mc_intercept_probability_with(&dists, cfg.gamma_th, s)
}

/// Same estimator over explicit per-hop distributions (order SR, RD, SE1,
/// RE2). Public so that consistency gates can inject deliberately corrupted
/// distributions and prove they trip.
pub fn mc_intercept_probability_with(
    dists: &[SnrDistribution; 4],
    gamma_th: f64,
    s: &McSettings,
) -> Result<IpReport> {
    validated(s)?;
    let samplers: Vec<Gamma<f64>> = dists.iter().map(|d| d.sampler()).collect();
    let counts: Vec<u64> = (0..s.n_partitions)
        .into_par_iter()
        .map(|k| {
            let mut rng = s.stream_rng(k);
            let mut intercepts = 0u64;
            for _ in 0..s.partition_len(k) {
                let g_sr = samplers[0].sample(&mut rng);
                let g_rd = samplers[1].sample(&mut rng);
                let g_se1 = samplers[2].sample(&mut rng);
                let g_re2 = samplers[3].sample(&mut rng);
                intercepts += u64::from(is_intercept(g_sr, g_rd, g_se1, g_re2, gamma_th));
            }
            intercepts
        })
        .collect();
    let intercepts: u64 = counts.iter().sum();
    let n = s.n_samples as f64;
    let p = intercepts as f64 / n;
    let mut report = IpReport::new(p, EvalPath::MonteCarlo);
    report.mc_stderr = Some((p * (1.0 - p) / n).sqrt());
    report.terms.insert("intercepts".into(), intercepts as f64);
    report.terms.insert("samples".into(), n);
    Ok(report)
}

/// Minimal complex value for the fading vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Cplx {
    pub fn norm_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// One draw of the AR(1) channel construction for a link:
/// `h = ρ(ĥ + ε) + √(1-ρ²)·w`, elementwise over the receive branches.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingSample {
    /// Estimated channel ĥ: Nakagami-m envelope, uniform phase. The phase
    /// law is a modeling choice; post-combiner SNR depends only on |ĥ|².
    pub h_hat: Vec<Cplx>,
    /// CSI estimation noise ε.
    pub eps: Vec<Cplx>,
    /// Mobility noise w.
    pub w: Vec<Cplx>,
    /// Actual channel h.
    pub h: Vec<Cplx>,
}

impl FadingSample {
    pub fn draw<R: Rng>(link: &LinkParams, ctx: &MobilityContext, rng: &mut R) -> Self {
        let rho = correlation_coefficient(link, ctx);
        let decor = (1.0 - rho * rho).max(0.0).sqrt();
        let power = Gamma::new(link.m, link.omega / link.m).expect("valid Nakagami power law");
        let eps_comp = Normal::new(0.0, (link.sigma_eps_sq / 2.0).sqrt()).expect("valid sigma");
        let w_comp = Normal::new(0.0, (resolve_sigma_w(link) / 2.0).sqrt()).expect("valid sigma");
        let n = link.n_rx as usize;
        let mut sample = FadingSample {
            h_hat: Vec::with_capacity(n),
            eps: Vec::with_capacity(n),
            w: Vec::with_capacity(n),
            h: Vec::with_capacity(n),
        };
        for _ in 0..n {
            let envelope = power.sample(rng).sqrt();
            let phase = rng.random::<f64>() * std::f64::consts::TAU;
            let h_hat = Cplx { re: envelope * phase.cos(), im: envelope * phase.sin() };
            let eps = Cplx { re: eps_comp.sample(rng), im: eps_comp.sample(rng) };
            let w = Cplx { re: w_comp.sample(rng), im: w_comp.sample(rng) };
            let h = Cplx {
                re: rho * (h_hat.re + eps.re) + decor * w.re,
                im: rho * (h_hat.im + eps.im) + decor * w.im,
            };
            sample.h_hat.push(h_hat);
            sample.eps.push(eps);
            sample.w.push(w);
            sample.h.push(h);
        }
        sample
    }
}

/// Fading-level Monte Carlo estimate of the per-branch average SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingLevelEstimate {
    pub mean_snr: f64,
    pub std_error: f64,
    pub n_branches: u64,
}

/// Samples the channel construction and averages the per-branch SNR
/// `ρ²(δ/Ω)|ĥ_i|² / ((δ/Ω)(ρ²σ²_ε + (1-ρ²)σ²_w) + 1)`, which must agree
/// with the analytic effective average SNR. `s.n_samples` counts fading
/// vectors; each contributes `n_rx` branch values.
pub fn fading_level_mean_snr(
    link: &LinkParams,
    ctx: &MobilityContext,
    s: &McSettings,
) -> Result<FadingLevelEstimate> {
    validated(s)?;
    let issues = link.validation_issues("link");
    if !issues.is_empty() {
        return Err(Error::InvalidParameter(issues.join("; ")));
    }
    let rho = correlation_coefficient(link, ctx);
    let rho2 = rho * rho;
    let delta_over_omega = link.delta_linear() / link.omega;
    let denom = delta_over_omega * (rho2 * link.sigma_eps_sq + (1.0 - rho2) * resolve_sigma_w(link)) + 1.0;
    let gain = rho2 * delta_over_omega / denom;

    // (sum, sum of squares) per partition, merged in partition order
    let partials: Vec<(f64, f64)> = (0..s.n_partitions)
        .into_par_iter()
        .map(|k| {
            let mut rng = s.stream_rng(k);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..s.partition_len(k) {
                let sample = FadingSample::draw(link, ctx, &mut rng);
                for h_hat in &sample.h_hat {
                    let snr = gain * h_hat.norm_sq();
                    sum += snr;
                    sum_sq += snr * snr;
                }
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let n = s.n_samples * link.n_rx as u64;
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    Ok(FadingLevelEstimate {
        mean_snr: mean,
        std_error: (var / n as f64).sqrt(),
        n_branches: n,
    })
}
