//! Physical-layer secrecy engine for a dual-hop decode-and-forward relay
//! network with one eavesdropper per hop, under node mobility and imperfect
//! channel estimation.
//!
//! The crate evaluates the intercept probability of the network along
//! mutually validating paths:
//!
//! * [`secrecy::ip_exact`] — the exact closed form (integer Nakagami m),
//! * [`secrecy::ip_low_threshold_floor`] — its threshold-independent limit,
//! * [`secrecy::ip_asymptotic_scenario1`] — the high-SNR floor under
//!   mobility/CSI impairments (zero diversity order),
//! * [`secrecy::ip_asymptotic_scenario2`] — the static, perfect-CSI
//!   coding-gain/diversity-order expansion,
//! * [`secrecy::ip_reference_quadrature`] — direct nested quadrature of the
//!   defining integral, and
//! * [`mc`] — seeded, partitioned Monte Carlo at SNR level plus a
//!   fading-vector-level estimator that checks the effective-SNR formula
//!   itself.

pub mod error;
pub mod link;
pub mod logsum;
pub mod mc;
pub mod quad;
pub mod secrecy;
pub mod snr;
pub mod special;

pub use error::{Error, Result};
pub use link::{EffectiveSnr, LinkParams, MobilityContext, SpeedConvention};
pub use mc::{FadingLevelEstimate, FadingSample, McSettings};
pub use secrecy::{CrossoverInputs, EvalPath, IpReport, SystemConfig};
pub use snr::SnrDistribution;
