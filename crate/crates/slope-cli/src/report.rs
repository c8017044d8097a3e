//! Verification report serialization and pass/fail thresholds.

use slope_core::diffgeo::{JetMode, VerificationReport};

/// Per-check pass thresholds, mode-dependent where the oracle is coarser.
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    pub angle: f64,
    pub norm: f64,
    pub ode: f64,
    pub k1: f64,
    /// Relative, see `VerificationReport::max_lambda_dev`.
    pub lambda: f64,
    pub connection: f64,
}

pub fn thresholds(mode: JetMode) -> Thresholds {
    match mode {
        JetMode::Analytic => Thresholds {
            angle: 1e-9,
            norm: 1e-9,
            ode: 1e-8,
            k1: 1e-6,
            lambda: 1e-5,
            connection: 1e-4,
        },
        JetMode::Oracle => Thresholds {
            angle: 1e-6,
            norm: 1e-9,
            ode: 1e-5,
            k1: 1e-5,
            lambda: 1e-5,
            connection: 1e-4,
        },
    }
}

impl Thresholds {
    pub fn passes(&self, r: &VerificationReport) -> bool {
        r.max_angle_dev <= self.angle
            && r.max_norm_dev <= self.norm
            && r.max_ode_residual <= self.ode
            && r.max_k1_dev <= self.k1
            && r.max_lambda_dev <= self.lambda
            && r.max_connection_dev <= self.connection
    }
}

const FIELDS: [&str; 11] = [
    "max_angle_dev",
    "max_norm_dev",
    "max_ode_residual",
    "max_k1_dev",
    "max_lambda_dev",
    "max_connection_dev",
    "max_rv_dev",
    "max_rv_alt_dev",
    "lambda_sign",
    "singular_count",
    "samples",
];

fn values(r: &VerificationReport) -> [String; 11] {
    [
        format!("{:.16e}", r.max_angle_dev),
        format!("{:.16e}", r.max_norm_dev),
        format!("{:.16e}", r.max_ode_residual),
        format!("{:.16e}", r.max_k1_dev),
        format!("{:.16e}", r.max_lambda_dev),
        format!("{:.16e}", r.max_connection_dev),
        format!("{:.16e}", r.max_rv_dev),
        format!("{:.16e}", r.max_rv_alt_dev),
        format!("{}", r.lambda_sign),
        format!("{}", r.singular_count),
        format!("{}", r.samples),
    ]
}

/// `key=value` lines, one per report field, trailing newline.
pub fn report_lines(r: &VerificationReport) -> String {
    let mut out = String::new();
    for (k, v) in FIELDS.iter().zip(values(r)) {
        out.push_str(k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    }
    out
}

/// Single-row CSV variant: header line plus one data row.
pub fn report_csv(r: &VerificationReport) -> String {
    format!("{}\n{}\n", FIELDS.join(","), values(r).join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_csv_agree() {
        let r = VerificationReport {
            max_angle_dev: 1e-12,
            samples: 100,
            lambda_sign: 1.0,
            ..Default::default()
        };
        let lines = report_lines(&r);
        let angle_line = lines.lines().find(|l| l.starts_with("max_angle_dev=")).unwrap();
        let parsed: f64 = angle_line.split('=').nth(1).unwrap().parse().unwrap();
        assert_eq!(parsed.to_bits(), 1e-12f64.to_bits());
        assert!(lines.contains("samples=100"));
        let csv = report_csv(&r);
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(
            csv.lines().next().unwrap().split(',').count(),
            lines.lines().count()
        );
    }

    #[test]
    fn default_report_passes_analytic() {
        let r = VerificationReport::default();
        assert!(thresholds(JetMode::Analytic).passes(&r));
        let bad = VerificationReport {
            max_ode_residual: 1.0,
            ..Default::default()
        };
        assert!(!thresholds(JetMode::Oracle).passes(&bad));
    }
}
