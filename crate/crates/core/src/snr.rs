//! Per-hop post-MRC SNR statistics.
//!
//! Summing the N per-branch Gamma-distributed squared envelopes makes each
//! hop's combined SNR Gamma with shape m·N and rate m/Υ: density, CDF,
//! complementary CDF, and reproducible sampling live here.

use crate::error::{Error, Result};
use crate::link::{effective_avg_snr, LinkParams, MobilityContext};
use crate::special::{ln_gamma_raw, reg_lower_raw, reg_upper_raw};
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// Smallest rate/scale magnitude fed to the numerics, so degenerate links
/// (Υ → 0 or Υ → ∞) stay inside f64 range instead of producing NaN.
pub(crate) const RATE_FLOOR: f64 = 1e-300;
pub(crate) const RATE_CAP: f64 = 1e300;

/// Gamma distribution of one hop's combined SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrDistribution {
    shape: f64,
    rate: f64,
}

impl SnrDistribution {
    pub fn new(shape: f64, rate: f64) -> Result<Self> {
        if !(shape > 0.0) || !shape.is_finite() {
            return Err(Error::InvalidParameter(format!("SNR shape must be > 0, got {shape}")));
        }
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::InvalidParameter(format!("SNR rate must be > 0, got {rate}")));
        }
        Ok(Self { shape, rate })
    }

    /// Distribution of the link's combined SNR: shape m·N, rate m/Υ.
    pub fn for_link(link: &LinkParams, ctx: &MobilityContext) -> Result<Self> {
        let snr = effective_avg_snr(link, ctx);
        let rate = (link.m / snr.upsilon).clamp(RATE_FLOOR, RATE_CAP);
        Self::new(link.shape(), rate)
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Mean shape/rate = N·Υ.
    pub fn mean(&self) -> f64 {
        self.shape / self.rate
    }

    pub fn variance(&self) -> f64 {
        self.shape / (self.rate * self.rate)
    }

    /// Density, evaluated in log space and exponentiated once.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::Domain(format!("pdf requires y >= 0, got {y}")));
        }
        Ok(self.pdf_raw(y))
    }

    pub(crate) fn pdf_raw(&self, y: f64) -> f64 {
        if y == 0.0 {
            return match self.shape.partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Equal) => self.rate,
                Some(std::cmp::Ordering::Less) => f64::INFINITY,
                _ => 0.0,
            };
        }
        (self.shape * self.rate.ln() - ln_gamma_raw(self.shape) + (self.shape - 1.0) * y.ln()
            - self.rate * y)
            .exp()
    }

    /// Distribution function `γ_inc(m·N, (m/Υ)y) / Γ(m·N)`.
    pub fn cdf(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::Domain(format!("cdf requires y >= 0, got {y}")));
        }
        Ok(self.cdf_raw(y))
    }

    pub(crate) fn cdf_raw(&self, y: f64) -> f64 {
        reg_lower_raw(self.shape, self.rate * y)
    }

    /// Complementary CDF, `Γ_inc(m·N, (m/Υ)y) / Γ(m·N)`.
    pub fn ccdf(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::Domain(format!("ccdf requires y >= 0, got {y}")));
        }
        Ok(self.ccdf_raw(y))
    }

    pub(crate) fn ccdf_raw(&self, y: f64) -> f64 {
        reg_upper_raw(self.shape, self.rate * y)
    }

    /// The rand_distr sampler for this distribution (Marsaglia–Tsang). The
    /// scale is floored like the analytic paths so degenerate links sample
    /// as (numerically) zero SNR.
    pub fn sampler(&self) -> Gamma<f64> {
        let scale = (1.0 / self.rate).clamp(RATE_FLOOR, RATE_CAP);
        Gamma::new(self.shape, scale).expect("validated shape/scale")
    }

    /// Draw `n` i.i.d. variates from the given stream. Deterministic for a
    /// fixed stream state; parallel callers must give each worker its own
    /// stream.
    pub fn sample<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        let g = self.sampler();
        (0..n).map(|_| g.sample(rng)).collect()
    }
}
