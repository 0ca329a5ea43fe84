//! CSV emission: one row per (sweep point, path), numbers at 12 significant
//! digits, stable ordering, full provenance, no timestamps (output must be
//! byte-identical across reruns of the same seed).

use std::io::Write;
use std::path::Path;

use secrelay_core::secrecy::EvalPath;

use crate::sweep::RunRecord;

pub const CSV_HEADER: &str =
    "sweep_variable,sweep_value,path,ip,mc_stderr,gd,gc,seed,config_hash,error";

/// 12 significant digits, locale-free.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn format_csv(records: &[RunRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let (ip, stderr, gd, gc, error) = match &r.outcome {
            Ok(report) => (
                fmt_sig(report.ip),
                report.mc_stderr.map(fmt_sig).unwrap_or_default(),
                report.terms.get("Gd").map(|v| fmt_sig(*v)).unwrap_or_default(),
                report.terms.get("Gc").map(|v| fmt_sig(*v)).unwrap_or_default(),
                String::new(),
            ),
            Err(e) => (
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                e.to_string().replace([',', '\n'], ";"),
            ),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.sweep_variable,
            fmt_sig(r.sweep_value),
            r.path,
            ip,
            stderr,
            gd,
            gc,
            r.seed,
            r.config_hash,
            error
        ));
    }
    out
}

/// Write the CSV, wrapping I/O failures with the destination path.
pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<(), String> {
    let text = format_csv(records);
    let mut file =
        std::fs::File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    file.write_all(text.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Quick human-readable summary of a record for terminal output.
pub fn describe(r: &RunRecord) -> String {
    match &r.outcome {
        Ok(report) => {
            let extra = match (r.path, report.mc_stderr) {
                (EvalPath::MonteCarlo, Some(se)) => format!("  (stderr {se:.3e})"),
                _ => String::new(),
            };
            format!(
                "{}={:<14.8} {:<19} ip={:.8e}{extra}",
                r.sweep_variable, r.sweep_value, report.path.token(), report.ip
            )
        }
        Err(e) => format!("{}={:<14.8} {:<19} error: {e}", r.sweep_variable, r.sweep_value, r.path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, SweepScale, SweepSpec, SweepVariable};
    use secrelay_core::mc::McSettings;
    use secrelay_core::secrecy::SystemConfig;

    #[test]
    fn twelve_significant_digits_round_trip() {
        for &x in &[0.10643329472876916, 1.7629478e-6, 5.484709e-3, 0.0, 1.0] {
            let s = fmt_sig(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(fmt_sig(back), s, "x = {x}");
        }
        assert_eq!(fmt_sig(0.10643329472876916), "1.06433294729e-1");
    }

    #[test]
    fn csv_shape_and_field_population() {
        let base = SystemConfig::default();
        let spec = SweepSpec {
            variable: SweepVariable::DeltaLegit,
            start: 20.0,
            stop: 40.0,
            points: 3,
            scale: SweepScale::Linear,
            paths: vec![
                secrelay_core::EvalPath::Exact,
                secrelay_core::EvalPath::MonteCarlo,
            ],
        };
        let mc = McSettings { n_samples: 20_000, seed: 9, n_partitions: 2 };
        let records = run_sweep(&base, &spec, &mc);
        let text = format_csv(&records);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7); // header + 3 points x 2 paths
        assert_eq!(lines[0], CSV_HEADER);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 10, "{line}");
        }
        // Monte Carlo rows carry a stderr, analytic rows leave it empty
        let mc_row: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(mc_row[2], "monte_carlo");
        assert!(!mc_row[4].is_empty());
        let exact_row: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(exact_row[2], "exact");
        assert!(exact_row[4].is_empty());
        // values round-trip exactly at 12 significant digits
        let ip_mem = records[0].outcome.as_ref().unwrap().ip;
        assert_eq!(exact_row[3], fmt_sig(ip_mem));
        assert_eq!(fmt_sig(exact_row[3].parse::<f64>().unwrap()), exact_row[3]);
    }

    #[test]
    fn error_rows_fill_the_error_column() {
        let base = SystemConfig::default(); // mobile: the S2 path must refuse
        let spec = SweepSpec {
            paths: vec![secrelay_core::EvalPath::AsymptoticS2],
            points: 2,
            ..SweepSpec::for_variable(SweepVariable::DeltaLegit)
        };
        let records = run_sweep(&base, &spec, &McSettings::default());
        let text = format_csv(&records);
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[3], "");
        assert!(row[9].contains("precondition"));
    }
}
