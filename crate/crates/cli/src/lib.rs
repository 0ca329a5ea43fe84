//! Configuration ingestion, scenario presets, parameter sweeps,
//! analytic-vs-Monte-Carlo comparison reports, and CSV emission for the
//! dual-hop relay secrecy engine.

pub mod config;
pub mod csvout;
pub mod preset;
pub mod report;
pub mod sweep;
