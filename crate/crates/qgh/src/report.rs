//! CSV emission with a config-echo header. All writers are deterministic:
//! identical (config, seed) pairs produce byte-identical files.

use std::fmt::Write as _;

use crate::fusion::FusionAlgebra;
use crate::length::{FolnerReport, GrowthTable};
use crate::metrics::ConvergenceReport;
use crate::multiplier::MultiplierState;

/// Render a CSV document: `# key = value` header lines echoing the full
/// config, then the column row, then data.
pub struct CsvDoc {
    buf: String,
    columns: usize,
}

impl CsvDoc {
    pub fn new(config: &[(&str, String)], columns: &[&str]) -> Self {
        let mut buf = String::new();
        for (k, v) in config {
            let _ = writeln!(buf, "# {k} = {v}");
        }
        let _ = writeln!(buf, "{}", columns.join(","));
        CsvDoc { buf, columns: columns.len() }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns);
        let _ = writeln!(self.buf, "{}", cells.join(","));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Fixed-precision float formatting so output bytes don't depend on
/// platform-specific shortest-float behavior.
pub fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v:.12e}")
    }
}

pub fn growth_csv(config: &[(&str, String)], table: &GrowthTable) -> String {
    let mut doc = CsvDoc::new(config, &["n", "shell_sum", "cumulative"]);
    doc.row(&["0".into(), fmt_f64(table.unit_shell), fmt_f64(table.unit_shell)]);
    for &(n, s, c) in &table.rows {
        doc.row(&[n.to_string(), fmt_f64(s), fmt_f64(c)]);
    }
    doc.finish()
}

pub fn folner_csv(config: &[(&str, String)], reports: &[FolnerReport]) -> String {
    let mut doc = CsvDoc::new(config, &["lambda", "boundary_weight", "bulk_weight", "ratio"]);
    for r in reports {
        doc.row(&[
            fmt_f64(r.lambda),
            fmt_f64(r.boundary_weight),
            fmt_f64(r.bulk_weight),
            fmt_f64(r.ratio),
        ]);
    }
    doc.finish()
}

pub fn multiplier_csv(
    config: &[(&str, String)],
    alg: &FusionAlgebra,
    phi: &MultiplierState,
) -> String {
    let mut doc = CsvDoc::new(config, &["label", "phi"]);
    for l in alg.labels() {
        doc.row(&[alg.name(l).to_string(), fmt_f64(phi.phi(l))]);
    }
    doc.finish()
}

/// Seminorm sweep rows (window level, k, value, converged).
pub fn seminorm_csv(
    config: &[(&str, String)],
    rows: &[(f64, u32, f64, bool)],
) -> String {
    let mut doc = CsvDoc::new(config, &["window", "k", "value", "converged"]);
    for &(n, k, v, c) in rows {
        doc.row(&[fmt_f64(n), k.to_string(), fmt_f64(v), c.to_string()]);
    }
    doc.finish()
}

/// The per-Λ convergence table. Wall-clock runtime stays in the in-memory
/// report only, keeping the file a pure function of (config, seed).
pub fn convergence_csv(config: &[(&str, String)], report: &ConvergenceReport) -> String {
    let mut doc = CsvDoc::new(
        config,
        &[
            "lambda",
            "folner_ratio",
            "phi_min_gap",
            "delta_lower",
            "delta_upper",
            "mk_lower",
            "mk_upper",
        ],
    );
    for r in &report.rows {
        doc.row(&[
            fmt_f64(r.lambda),
            fmt_f64(r.folner_ratio),
            fmt_f64(r.phi_min_gap),
            fmt_f64(r.delta_lower),
            fmt_f64(r.delta_upper),
            fmt_f64(r.mk_lower),
            fmt_f64(r.mk_upper),
        ]);
    }
    doc.finish()
}
