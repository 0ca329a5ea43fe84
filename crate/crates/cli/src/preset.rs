//! Named scenario presets. Each preset is a stored configuration in the
//! same key=value syntax as user config files, layered on top of the
//! defaults (and any user config) before evaluation.

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// Config text, applied through the ordinary parser.
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2",
        description: "IP vs shared legitimate SNR, default antennas/fading, with the \
                      mobile-imperfect-CSI floor and Monte Carlo",
        text: "\
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = exact, asymptotic_s1, monte_carlo
",
    },
    Preset {
        name: "fig3",
        description: "IP vs legitimate SNR with asymmetric estimation noise (first hop clean) \
                      and 70 km/h relative speed on every link; exploratory",
        text: "\
ctx.speed_convention = explicit
link_sr.speed_a_kmh = 70
link_rd.speed_a_kmh = 70
link_se1.speed_a_kmh = 70
link_re2.speed_a_kmh = 70
link_sr.sigma_eps_sq = 0.02
link_rd.sigma_eps_sq = 0.09
link_se1.sigma_eps_sq = 0.09
link_re2.sigma_eps_sq = 0.09
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = exact, asymptotic_s1
",
    },
    Preset {
        name: "fig4a",
        description: "IP vs legitimate SNR at 30 km/h relative speed with perfect estimation \
                      (mobility the only impairment)",
        text: "\
ctx.speed_convention = explicit
link_sr.speed_a_kmh = 30
link_rd.speed_a_kmh = 30
link_se1.speed_a_kmh = 30
link_re2.speed_a_kmh = 30
link_sr.sigma_eps_sq = 0
link_rd.sigma_eps_sq = 0
link_se1.sigma_eps_sq = 0
link_re2.sigma_eps_sq = 0
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = exact, asymptotic_s1
",
    },
    Preset {
        name: "fig4b",
        description: "Static nodes, perfect CSI, 30 dB wiretap links: the linear-drop regime \
                      against the coding-gain/diversity-order expansion",
        text: "\
link_sr.speed_a_kmh = 0
link_sr.speed_b_kmh = 0
link_rd.speed_a_kmh = 0
link_rd.speed_b_kmh = 0
link_se1.speed_a_kmh = 0
link_se1.speed_b_kmh = 0
link_re2.speed_a_kmh = 0
link_re2.speed_b_kmh = 0
link_sr.sigma_eps_sq = 0
link_rd.sigma_eps_sq = 0
link_se1.sigma_eps_sq = 0
link_re2.sigma_eps_sq = 0
link_se1.delta_db = 30
link_re2.delta_db = 30
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = exact, asymptotic_s2
",
    },
    Preset {
        name: "fig5",
        description: "IP vs first eavesdropper SNR at 40 dB legitimate links, second \
                      eavesdropper fixed at 20 dB (one slice of the wiretap-SNR surface)",
        text: "\
link_sr.delta_db = 40
link_rd.delta_db = 40
link_re2.delta_db = 20
sweep.variable = delta_se1
sweep.start = 0
sweep.stop = 40
sweep.points = 21
sweep.paths = exact, monte_carlo
",
    },
    Preset {
        name: "fig6",
        description: "IP vs decoding threshold at 20 km/h relative speed: floor at low \
                      thresholds, certain interception at high ones",
        text: "\
ctx.speed_convention = explicit
link_sr.speed_a_kmh = 20
link_rd.speed_a_kmh = 20
link_se1.speed_a_kmh = 20
link_re2.speed_a_kmh = 20
sweep.variable = gamma_th
sweep.start = 1e-3
sweep.stop = 1e3
sweep.points = 25
sweep.scale = log
sweep.paths = exact, low_threshold_floor
",
    },
    Preset {
        name: "fig7",
        description: "IP vs CSI delay at 40 dB legitimate links, every node at 25 km/h \
                      head-on (50 km/h relative on all links)",
        text: "\
link_sr.delta_db = 40
link_rd.delta_db = 40
sweep.variable = tau
sweep.start = 1e-5
sweep.stop = 6e-3
sweep.points = 49
sweep.paths = exact
",
    },
    Preset {
        name: "fig8",
        description: "IP vs legitimate SNR with moving legitimate nodes and static \
                      eavesdroppers (worst of the mobility scenarios)",
        text: "\
link_se1.speed_b_kmh = 0
link_re2.speed_b_kmh = 0
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = exact, asymptotic_s1
",
    },
    Preset {
        name: "fig9",
        description: "IP vs the shared relative speed of all links (the equal-speeds \
                      diagonal of the speed surface)",
        text: "\
sweep.variable = speed
sweep.start = 0
sweep.stop = 100
sweep.points = 21
sweep.paths = exact
",
    },
    Preset {
        name: "fig10",
        description: "IP vs the shared legitimate SNR (the balanced diagonal of the per-hop \
                      SNR surface), wiretap links at 10 dB",
        text: "\
sweep.variable = delta_legit
sweep.start = 0
sweep.stop = 40
sweep.points = 21
sweep.paths = exact, monte_carlo
",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name.trim()))
}

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}
