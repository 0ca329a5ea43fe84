use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use secrelay::config::{self, RunConfig};
use secrelay::csvout;
use secrelay::preset;
use secrelay::report;
use secrelay::sweep::{self, SweepSpec, SweepVariable};
use secrelay_core::{Error, EvalPath};

/// Physical-layer secrecy of a dual-hop DF relay network with per-hop
/// eavesdroppers: exact, asymptotic, and Monte Carlo intercept-probability
/// evaluation with CSV output.
#[derive(Parser)]
#[command(name = "secrelay", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a configuration: a single point, a parameter sweep, or a
    /// named preset scenario.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Key=value configuration file; unspecified fields keep the defaults.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Sweep one variable over its default range (delta_legit, delta_se1,
    /// delta_re2, gamma_th, tau, fc, speed, sigma_eps).
    #[arg(long, conflicts_with = "preset")]
    sweep: Option<String>,

    /// Named scenario preset (fig2 .. fig10).
    #[arg(long)]
    preset: Option<String>,

    /// Override the Monte Carlo sample count.
    #[arg(long)]
    mc_samples: Option<u64>,

    /// Override the root random seed.
    #[arg(long)]
    seed: Option<u64>,

    /// CSV destination (default results.csv when a sweep runs).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Print the analytic-vs-Monte-Carlo comparison report and apply its
    /// 4-sigma agreement gate to the exit code.
    #[arg(long)]
    report: bool,
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONSISTENCY: u8 = 2;

fn main() -> ExitCode {
    if let Ok(value) = std::env::var("SECRELAY_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("SECRELAY_THREADS must be a positive integer, got '{value}'");
                return ExitCode::from(EXIT_VALIDATION);
            }
        }
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => match run(args) {
            Ok(code) => code,
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_VALIDATION)
            }
        },
    }
}

fn build_config(args: &RunArgs) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        config::apply_config_text(&mut cfg, &text).map_err(|errors| {
            let lines: Vec<String> =
                errors.iter().map(|e| format!("{}: {e}", path.display())).collect();
            lines.join("\n")
        })?;
    }
    if let Some(name) = &args.preset {
        let preset = preset::find(name).ok_or_else(|| {
            format!("unknown preset '{name}'; available: {}", preset::names().join(", "))
        })?;
        config::apply_config_text(&mut cfg, preset.text)
            .map_err(|errors| format!("preset {name}: {errors:?}"))?;
    }
    if let Some(name) = &args.sweep {
        let variable: SweepVariable = name.parse()?;
        let paths = cfg.sweep.as_ref().map(|s| s.paths.clone());
        let mut spec = SweepSpec::for_variable(variable);
        if let Some(paths) = paths {
            spec.paths = paths;
        }
        cfg.sweep = Some(spec);
    }
    if let Some(n) = args.mc_samples {
        cfg.mc.n_samples = n;
    }
    if let Some(seed) = args.seed {
        cfg.mc.seed = seed;
    }
    Ok(cfg)
}

fn run(args: RunArgs) -> Result<ExitCode, String> {
    let cfg = build_config(&args)?;
    let issues = config::validation_issues(&cfg);
    if !issues.is_empty() {
        eprintln!("invalid configuration:");
        for issue in &issues {
            eprintln!("  - {issue}");
        }
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }

    let mut consistency_failure = false;

    let records = match &cfg.sweep {
        Some(spec) => sweep::run_sweep(&cfg.system, spec, &cfg.mc),
        None => sweep::run_single(&cfg.system, &[EvalPath::Exact], &cfg.mc),
    };
    for record in &records {
        if matches!(record.outcome, Err(Error::Consistency { .. })) {
            consistency_failure = true;
        }
    }
    let errors = records.iter().filter(|r| r.outcome.is_err()).count();

    let out_path = args
        .out
        .clone()
        .or_else(|| cfg.sweep.is_some().then(|| PathBuf::from("results.csv")));
    if let Some(out) = &out_path {
        csvout::emit_csv(&records, out)?;
        println!(
            "wrote {} rows ({} errors) to {}",
            records.len(),
            errors,
            out.display()
        );
    }
    if cfg.sweep.is_none() {
        for record in &records {
            println!("{}", csvout::describe(record));
        }
    } else {
        let ok_rows: Vec<&sweep::RunRecord> =
            records.iter().filter(|r| r.outcome.is_ok()).collect();
        if let (Some(first), Some(last)) = (ok_rows.first(), ok_rows.last()) {
            println!("{}", csvout::describe(first));
            println!("  ... {} rows ...", records.len());
            println!("{}", csvout::describe(last));
        }
    }

    if args.report {
        let outcome = report::compare_report(&cfg.system, &cfg.mc).map_err(|e| e.to_string())?;
        print!("{}", outcome.text);
        if !outcome.pass {
            consistency_failure = true;
        }
    }

    Ok(if consistency_failure { ExitCode::from(EXIT_CONSISTENCY) } else { ExitCode::SUCCESS })
}
