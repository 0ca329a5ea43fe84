//! Closed-form secrecy quantities for the dual-hop DF relay network with one
//! eavesdropper per hop: the exact intercept probability, its low-threshold
//! floor, the mobile/imperfect-CSI high-SNR floor, the static/perfect-CSI
//! coding-gain/diversity-order expansion, the capacity-crossover probability,
//! and an independent nested-quadrature reference path.
//!
//! Every finite sum is accumulated in log space with tracked signs
//! ([`crate::logsum::SignedLogSum`]): the summands carry factorials and
//! powers of rates with exponents up to m·N per link, which overflow f64
//! long before the order-one signed total does.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::link::{
    correlation_coefficient, db_to_linear, effective_avg_snr, LinkParams, MobilityContext,
};
use crate::logsum::SignedLogSum;
use crate::quad;
use crate::snr::{SnrDistribution, RATE_CAP, RATE_FLOOR};
use crate::special::{gauss_2f1, ln_factorial, ln_gamma_raw, ln_gamma_upper_raw, reg_lower_raw};

/// Full system description: the four directed links, the shared mobility
/// context, and the relay decoding threshold (linear SNR).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub link_sr: LinkParams,
    pub link_rd: LinkParams,
    pub link_se1: LinkParams,
    pub link_re2: LinkParams,
    pub ctx: MobilityContext,
    pub gamma_th: f64,
}

impl Default for SystemConfig {
    /// The simulation defaults: f_c = 2.4 GHz, τ = 1 ms, 25 km/h per node
    /// combined head-on, m = 2 and Ω = 2 and σ²_ε = 0.1 on every link,
    /// δ = 30 dB legitimate and 10 dB wiretap, N_R = N_D = 4, N_E = 2,
    /// γ_th = 3 (linear).
    fn default() -> Self {
        let eavesdropper = LinkParams { n_rx: 2, delta_db: 10.0, ..LinkParams::default() };
        Self {
            link_sr: LinkParams::default(),
            link_rd: LinkParams::default(),
            link_se1: eavesdropper,
            link_re2: eavesdropper,
            ctx: MobilityContext::default(),
            gamma_th: 3.0,
        }
    }
}

impl SystemConfig {
    pub fn links(&self) -> [(&'static str, &LinkParams); 4] {
        [
            ("link_sr", &self.link_sr),
            ("link_rd", &self.link_rd),
            ("link_se1", &self.link_se1),
            ("link_re2", &self.link_re2),
        ]
    }

    /// Every violated structural invariant, empty when valid.
    pub fn validation_issues(&self) -> Vec<String> {
        let mut issues = self.ctx.validation_issues();
        for (name, link) in self.links() {
            issues.extend(link.validation_issues(name));
        }
        if !(self.gamma_th >= 0.0) || !self.gamma_th.is_finite() {
            issues.push(format!("gamma_th must be >= 0 (got {})", self.gamma_th));
        }
        issues
    }
}

/// Which evaluation path produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvalPath {
    Exact,
    LowThresholdFloor,
    AsymptoticS1,
    AsymptoticS2,
    MonteCarlo,
}

impl EvalPath {
    pub const ALL: [EvalPath; 5] = [
        EvalPath::Exact,
        EvalPath::LowThresholdFloor,
        EvalPath::AsymptoticS1,
        EvalPath::AsymptoticS2,
        EvalPath::MonteCarlo,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            EvalPath::Exact => "exact",
            EvalPath::LowThresholdFloor => "low_threshold_floor",
            EvalPath::AsymptoticS1 => "asymptotic_s1",
            EvalPath::AsymptoticS2 => "asymptotic_s2",
            EvalPath::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for EvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl std::str::FromStr for EvalPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(EvalPath::Exact),
            "low_threshold_floor" | "floor" => Ok(EvalPath::LowThresholdFloor),
            "asymptotic_s1" | "s1" => Ok(EvalPath::AsymptoticS1),
            "asymptotic_s2" | "s2" => Ok(EvalPath::AsymptoticS2),
            "monte_carlo" | "mc" => Ok(EvalPath::MonteCarlo),
            other => Err(Error::InvalidParameter(format!("unknown evaluation path '{other}'"))),
        }
    }
}

/// Intercept probability plus a diagnostic breakdown of the evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct IpReport {
    pub ip: f64,
    pub path: EvalPath,
    /// Per-group contributions (I/H/V groups sum to 1 - ip), or the
    /// coding-gain decomposition for the static asymptote.
    pub terms: BTreeMap<String, f64>,
    /// Composite rates (Δ, Ψ or Q, S) where applicable.
    pub aux: BTreeMap<String, f64>,
    pub mc_stderr: Option<f64>,
}

impl IpReport {
    pub(crate) fn new(ip: f64, path: EvalPath) -> Self {
        Self { ip, path, terms: BTreeMap::new(), aux: BTreeMap::new(), mc_stderr: None }
    }
}

/// Parameters of the two Gamma fading-power sums whose ordering decides
/// whether a generalized hop secrecy capacity grows with average SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverInputs {
    pub m_l: u32,
    pub m_w: u32,
    pub omega_l: f64,
    pub omega_w: f64,
    pub n_l: u32,
    pub n_w: u32,
}

/// Per-hop secrecy capacities and their minimum, in bits.
pub fn secrecy_capacities(
    gamma_sr: f64,
    gamma_rd: f64,
    gamma_se1: f64,
    gamma_re2: f64,
) -> (f64, f64, f64, f64) {
    let c_sr = ((1.0 + gamma_sr) / (1.0 + gamma_se1)).log2();
    let c_srd = ((1.0 + gamma_sr) / (1.0 + gamma_re2)).log2();
    let c_rd = ((1.0 + gamma_rd) / (1.0 + gamma_re2)).log2();
    (c_sr, c_srd, c_rd, c_sr.min(c_srd).min(c_rd))
}

/// Integer post-combiner shapes and (floored) rates for the closed forms.
struct ClosedFormInputs {
    a_sr: usize,
    a_rd: usize,
    a_se1: usize,
    a_re2: usize,
    b_sr: f64,
    b_rd: f64,
    b_se1: f64,
    b_re2: f64,
    gamma_th: f64,
}

fn clamp_rate(m: f64, upsilon: f64) -> f64 {
    (m / upsilon.max(RATE_FLOOR)).clamp(RATE_FLOOR, RATE_CAP)
}

fn closed_form_inputs(cfg: &SystemConfig, legit_at_ceiling: bool) -> Result<ClosedFormInputs> {
    let issues = cfg.validation_issues();
    if !issues.is_empty() {
        return Err(Error::InvalidParameter(issues.join("; ")));
    }
    let mut shapes = [0usize; 4];
    for (i, (name, link)) in cfg.links().iter().enumerate() {
        shapes[i] = (link.integer_m(name)? * link.n_rx) as usize;
    }
    let legit_upsilon = |name: &'static str, link: &LinkParams| -> Result<f64> {
        let snr = effective_avg_snr(link, &cfg.ctx);
        if legit_at_ceiling {
            if !snr.upsilon_ceiling.is_finite() {
                return Err(Error::CeilingUndefined(name));
            }
            Ok(snr.upsilon_ceiling)
        } else {
            Ok(snr.upsilon)
        }
    };
    Ok(ClosedFormInputs {
        a_sr: shapes[0],
        a_rd: shapes[1],
        a_se1: shapes[2],
        a_re2: shapes[3],
        b_sr: clamp_rate(cfg.link_sr.m, legit_upsilon("link_sr", &cfg.link_sr)?),
        b_rd: clamp_rate(cfg.link_rd.m, legit_upsilon("link_rd", &cfg.link_rd)?),
        b_se1: clamp_rate(cfg.link_se1.m, effective_avg_snr(&cfg.link_se1, &cfg.ctx).upsilon),
        b_re2: clamp_rate(cfg.link_re2.m, effective_avg_snr(&cfg.link_re2, &cfg.ctx).upsilon),
        gamma_th: cfg.gamma_th,
    })
}

fn assert_then_clamp(raw: f64) -> Result<f64> {
    if raw.is_nan() || raw < -1e-9 || raw > 1.0 + 1e-9 {
        Err(Error::Consistency { raw })
    } else {
        Ok(raw.clamp(0.0, 1.0))
    }
}

/// The shared closed-form evaluator behind the exact expression, its
/// zero-threshold limit, and the mobile/imperfect-CSI floor (which differ
/// only in rates, threshold, and term labels).
fn evaluate_closed_form(
    inp: &ClosedFormInputs,
    path: EvalPath,
    group_labels: [&str; 4],
    aux_labels: [&str; 2],
) -> Result<IpReport> {
    let (a1, ad, ae1, ae2) = (inp.a_sr, inp.a_rd, inp.a_se1, inp.a_re2);
    let (b1, bd, be1, be2) = (inp.b_sr, inp.b_rd, inp.b_se1, inp.b_re2);
    let gth = inp.gamma_th;

    let b_j = be2 + bd; // combined rate inside the second-hop integral
    let b2 = b1 + be1;
    let delta = b_j + b1;
    let psi = delta + be1;

    let max_fact = a1 + ad + ae1 + ae2 + 2;
    let lnf: Vec<f64> = (0..=max_fact as u32).map(ln_factorial).collect();

    let (ln_b1, ln_bd, ln_be1, ln_be2) = (b1.ln(), bd.ln(), be1.ln(), be2.ln());
    let (ln_bj, ln_b2, ln_delta, ln_psi) = (b_j.ln(), b2.ln(), delta.ln(), psi.ln());

    let ln_pref = a1 as f64 * ln_b1 + ae2 as f64 * ln_be2 - lnf[a1 - 1] - lnf[ae2 - 1];

    // upper-incomplete-gamma logs, hoisted out of the l-loop
    let gu_sr = ln_gamma_upper_raw(a1 as f64, b1 * gth);
    let gu_b2: Vec<f64> =
        (0..ae1).map(|n| ln_gamma_upper_raw((a1 + n) as f64, b2 * gth)).collect();
    let p_count = ae2 + ad - 1; // p ranges over 0..(ae2 + l), l <= ad - 1
    let gu_delta: Vec<f64> =
        (0..p_count).map(|p| ln_gamma_upper_raw((a1 + p) as f64, delta * gth)).collect();
    let s_count = ae1 + p_count - 1; // n + p
    let gu_psi: Vec<f64> =
        (0..s_count).map(|s| ln_gamma_upper_raw((a1 + s) as f64, psi * gth)).collect();

    let mut total = SignedLogSum::zero();
    let mut groups = [SignedLogSum::zero(); 4];
    let mut push = |group: usize, sign: f64, ln_abs: f64| {
        total.add(sign, ln_abs);
        groups[group].add(sign, ln_abs);
    };

    for l in 0..ad {
        let ln_wl =
            lnf[ae2 + l - 1] + l as f64 * ln_bd - lnf[l] - (ae2 + l) as f64 * ln_bj;
        let base = ln_pref + ln_wl;
        push(0, 1.0, base + gu_sr - a1 as f64 * ln_b1);
        for n in 0..ae1 {
            push(
                1,
                -1.0,
                base + n as f64 * ln_be1 - (a1 + n) as f64 * ln_b2 - lnf[n] + gu_b2[n],
            );
        }
        for p in 0..ae2 + l {
            push(
                2,
                -1.0,
                base + p as f64 * ln_bj - lnf[p] + gu_delta[p] - (a1 + p) as f64 * ln_delta,
            );
        }
        for n in 0..ae1 {
            let ln_n = n as f64 * ln_be1 - lnf[n];
            for p in 0..ae2 + l {
                push(
                    3,
                    1.0,
                    base + ln_n + p as f64 * ln_bj - lnf[p] + gu_psi[n + p]
                        - (a1 + n + p) as f64 * ln_psi,
                );
            }
        }
    }

    let mut report = IpReport::new(assert_then_clamp(total.one_minus())?, path);
    for (label, group) in group_labels.iter().zip(groups.iter()) {
        report.terms.insert((*label).to_string(), group.value());
    }
    report.aux.insert(aux_labels[0].to_string(), delta);
    report.aux.insert(aux_labels[1].to_string(), psi);
    Ok(report)
}

/// Exact intercept probability (closed form, integer m).
///
/// A zero threshold is routed to the γ_th-independent floor expression,
/// which it equals identically.
pub fn ip_exact(cfg: &SystemConfig) -> Result<IpReport> {
    if cfg.gamma_th == 0.0 {
        let mut report = ip_low_threshold_floor(cfg)?;
        report.path = EvalPath::Exact;
        return Ok(report);
    }
    let inp = closed_form_inputs(cfg, false)?;
    evaluate_closed_form(&inp, EvalPath::Exact, ["I1", "I2", "I3", "I4"], ["Delta", "Psi"])
}

/// The γ_th → 0 limit of the exact expression: complete-gamma terms only,
/// independent of the decoding threshold.
pub fn ip_low_threshold_floor(cfg: &SystemConfig) -> Result<IpReport> {
    let mut inp = closed_form_inputs(cfg, false)?;
    inp.gamma_th = 0.0;
    evaluate_closed_form(
        &inp,
        EvalPath::LowThresholdFloor,
        ["V1", "V2", "V3", "V4"],
        ["Delta", "Psi"],
    )
}

/// High-SNR floor for mobile nodes with imperfect CSI: the legitimate links'
/// effective SNRs are replaced by their ceilings, the wiretap links keep
/// their configured values. Independent of δ_SR and δ_RD by construction.
pub fn ip_asymptotic_scenario1(cfg: &SystemConfig) -> Result<IpReport> {
    let inp = closed_form_inputs(cfg, true)?;
    evaluate_closed_form(&inp, EvalPath::AsymptoticS1, ["H1", "H2", "H3", "H4"], ["Q", "S"])
}

/// High-SNR expansion `G_c · δ^(-G_d)` for static nodes with perfect CSI,
/// with `G_d = min(m_SR·N_R, m_RD·N_D)`.
///
/// `delta_db` is the shared legitimate average SNR in dB, decoupled from the
/// configured per-link δ so the slope can be probed without mutating `cfg`;
/// the wiretap links' δ_SE1 and δ_RE2 come from `cfg`. Above its validity
/// range (low δ) the expansion exceeds one and is clamped.
pub fn ip_asymptotic_scenario2(cfg: &SystemConfig, delta_db: f64) -> Result<IpReport> {
    let issues = cfg.validation_issues();
    if !issues.is_empty() {
        return Err(Error::InvalidParameter(issues.join("; ")));
    }
    let mut violations = Vec::new();
    for (name, link) in cfg.links() {
        if link.sigma_eps_sq != 0.0 {
            violations.push(format!("{name}.sigma_eps_sq = {} (need 0)", link.sigma_eps_sq));
        }
        if correlation_coefficient(link, &cfg.ctx) != 1.0 {
            violations.push(format!("{name} is mobile (rho < 1); need static nodes"));
        }
    }
    if !violations.is_empty() {
        return Err(Error::Precondition(format!(
            "scenario-II asymptote requires static nodes with perfect CSI: {}",
            violations.join("; ")
        )));
    }

    let m_sr = cfg.link_sr.integer_m("link_sr")? as f64;
    let m_rd = cfg.link_rd.integer_m("link_rd")? as f64;
    let m_e1 = cfg.link_se1.integer_m("link_se1")? as f64;
    let m_e2 = cfg.link_re2.integer_m("link_re2")? as f64;
    let a1 = (cfg.link_sr.integer_m("link_sr")? * cfg.link_sr.n_rx) as usize;
    let ad = (cfg.link_rd.integer_m("link_rd")? * cfg.link_rd.n_rx) as usize;
    let ae1 = (cfg.link_se1.integer_m("link_se1")? * cfg.link_se1.n_rx) as usize;
    let ae2 = (cfg.link_re2.integer_m("link_re2")? * cfg.link_re2.n_rx) as usize;
    // static + perfect CSI makes each wiretap effective SNR equal its δ
    let d_se1 = cfg.link_se1.delta_linear();
    let d_re2 = cfg.link_re2.delta_linear();
    let gth = cfg.gamma_th;

    let max_fact = a1 + ad + ae1 + ae2 + 2;
    let lnf: Vec<f64> = (0..=max_fact as u32).map(ln_factorial).collect();

    // R: the δ^{-aD} coefficient of the second-hop term
    let ln_r = ad as f64 * (m_rd * d_re2 / m_e2).ln() + lnf[ae2 + ad - 1]
        - lnf[ae2 - 1]
        - lnf[ad];

    // T1: lower-incomplete gammas at the threshold (regularized forms; the
    // Γ(a) factors cancel against the (a-1)! denominators)
    let p_e2 = reg_lower_raw(ae2 as f64, m_e2 / d_re2 * gth);
    let p_e1 = reg_lower_raw(ae1 as f64, m_e1 / d_se1 * gth);
    let ln_t1 = if gth > 0.0 {
        a1 as f64 * (m_sr * gth).ln() + p_e2.ln() + p_e1.ln() - lnf[a1]
    } else {
        f64::NEG_INFINITY
    };

    let ln_f = |m_xy: f64, a_xy: usize, d_xy: f64| -> f64 {
        a1 as f64 * (d_xy / m_xy).ln() + ln_gamma_upper_raw((a_xy + a1) as f64, m_xy / d_xy * gth)
            - lnf[a_xy - 1]
    };
    let mut f_sum = SignedLogSum::zero();
    f_sum.add(1.0, ln_f(m_e1, ae1, d_se1));
    f_sum.add(1.0, ln_f(m_e2, ae2, d_re2));
    let ln_t2 = a1 as f64 * m_sr.ln() - lnf[a1] + f_sum.ln_abs();

    let ln_g = |m_xy: f64, a_xy: usize, d_xy: f64, m_zt: f64, a_zt: usize, d_zt: f64| -> f64 {
        let s = m_xy / d_xy + m_zt / d_zt;
        let mut sum = SignedLogSum::zero();
        for n in 0..a_zt {
            sum.add(
                1.0,
                n as f64 * (m_zt / d_zt).ln() - lnf[n]
                    + ln_gamma_upper_raw((a_xy + a1 + n) as f64, s * gth)
                    - (n + a_xy + a1) as f64 * s.ln(),
            );
        }
        a_xy as f64 * (m_xy / d_xy).ln() - lnf[a_xy - 1] + sum.ln_abs()
    };
    let mut g_sum = SignedLogSum::zero();
    g_sum.add(1.0, ln_g(m_e1, ae1, d_se1, m_e2, ae2, d_re2));
    g_sum.add(1.0, ln_g(m_e2, ae2, d_re2, m_e1, ae1, d_se1));
    let ln_t3 = a1 as f64 * m_sr.ln() - lnf[a1] + g_sum.ln_abs();

    let gd = a1.min(ad);
    let mut gc = SignedLogSum::zero();
    if a1 >= ad {
        gc.add(1.0, ln_r);
    }
    if a1 <= ad {
        gc.add(1.0, ln_t1);
        gc.add(1.0, ln_t2);
        gc.add(-1.0, ln_t3);
    }
    if gc.sign() <= 0.0 {
        return Err(Error::Consistency { raw: gc.value() });
    }

    let delta = db_to_linear(delta_db);
    let raw = (gc.ln_abs() - gd as f64 * delta.ln()).exp();
    let mut report = IpReport::new(raw.min(1.0), EvalPath::AsymptoticS2);
    report.terms.insert("Gc".into(), gc.value());
    report.terms.insert("Gd".into(), gd as f64);
    report.terms.insert("R".into(), ln_r.exp());
    report.terms.insert("T1".into(), ln_t1.exp());
    report.terms.insert("T2".into(), ln_t2.exp());
    report.terms.insert("T3".into(), ln_t3.exp());
    Ok(report)
}

/// `Pr[g_l > g_w]`: the probability that the generalized hop secrecy
/// capacity increases with the common average SNR, via the prefactored
/// ₂F₁ closed form.
pub fn crossover_probability(inputs: &CrossoverInputs) -> Result<f64> {
    let CrossoverInputs { m_l, m_w, omega_l, omega_w, n_l, n_w } = *inputs;
    if m_l < 1 || m_w < 1 || n_l < 1 || n_w < 1 {
        return Err(Error::InvalidParameter(
            "crossover inputs require m >= 1 and n >= 1".into(),
        ));
    }
    if !(omega_l > 0.0) || !(omega_w > 0.0) {
        return Err(Error::InvalidParameter(
            format!("crossover inputs require omega > 0 (got {omega_l}, {omega_w})"),
        ));
    }
    let al = (m_l * n_l) as f64;
    let aw = (m_w * n_w) as f64;
    let bl = m_l as f64 / omega_l;
    let bw = m_w as f64 / omega_w;
    let z = bw / (bw + bl);
    let f = gauss_2f1(1.0, al + aw, aw + 1.0, z)?;
    let ln_pref = al * bl.ln() + aw * bw.ln() + ln_gamma_raw(al + aw)
        - ln_gamma_raw(al)
        - ln_gamma_raw(aw + 1.0)
        - (al + aw) * (bl + bw).ln();
    Ok((ln_pref + f.ln()).exp())
}

/// Independent reference path: direct nested quadrature of
/// `1 - ∫_{γth}^∞ f_SR(y) F_SE1(y) [∫_0^y f_RE2(z)(1 - F_RD(z)) dz] dy`.
///
/// Works for any real m (no integer restriction); serves as the oracle the
/// closed-form path is validated against.
pub fn ip_reference_quadrature(cfg: &SystemConfig) -> Result<f64> {
    let issues = cfg.validation_issues();
    if !issues.is_empty() {
        return Err(Error::InvalidParameter(issues.join("; ")));
    }
    let d_sr = SnrDistribution::for_link(&cfg.link_sr, &cfg.ctx)?;
    let d_rd = SnrDistribution::for_link(&cfg.link_rd, &cfg.ctx)?;
    let d_se1 = SnrDistribution::for_link(&cfg.link_se1, &cfg.ctx)?;
    let d_re2 = SnrDistribution::for_link(&cfg.link_re2, &cfg.ctx)?;
    let gth = cfg.gamma_th;

    // beyond these points the respective factor has underflowed to zero
    let tail_cut = |d: &SnrDistribution| (40.0 * d.shape() + 800.0) / d.rate();
    let inner_cap = tail_cut(&d_re2).min(tail_cut(&d_rd));
    let inner_knots = feature_knots(&[&d_re2, &d_rd]);

    let inner = |y: f64| -> f64 {
        let hi = y.min(inner_cap);
        if hi <= 0.0 {
            return 0.0;
        }
        quad::integrate_with_knots(
            |z| d_re2.pdf_raw(z) * d_rd.ccdf_raw(z),
            &clip_knots(&inner_knots, 0.0, hi),
            1e-11,
        )
        .unwrap_or(f64::NAN)
    };
    let outer = quad::integrate_half_line(
        |y| {
            let g = d_sr.pdf_raw(y) * d_se1.cdf_raw(y);
            if g == 0.0 {
                0.0
            } else {
                g * inner(y)
            }
        },
        gth,
        d_sr.mean().max(gth * 0.5),
        1e-10,
    )?;
    if !outer.is_finite() {
        return Err(Error::NonConvergence("nested intercept-probability quadrature".into()));
    }
    let raw = 1.0 - outer;
    if raw < -1e-6 || raw > 1.0 + 1e-6 {
        return Err(Error::Consistency { raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Panel boundaries covering each distribution's bulk at unit-σ spacing, so
/// the adaptive pass cannot overlook a peak far narrower than the interval.
fn feature_knots(dists: &[&SnrDistribution]) -> Vec<f64> {
    let mut knots = vec![0.0];
    for d in dists {
        let mean = d.mean();
        let sd = d.variance().sqrt();
        for k in -8..=8 {
            let x = mean + k as f64 * sd;
            if x > 0.0 && x.is_finite() {
                knots.push(x);
            }
        }
    }
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();
    knots
}

fn clip_knots(knots: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![lo];
    out.extend(knots.iter().copied().filter(|&k| k > lo && k < hi));
    out.push(hi);
    out
}
