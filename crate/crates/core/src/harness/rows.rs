//! Output row types with fixed column order.

use serde::Serialize;

use super::fmt_sig;

pub trait CsvRow {
    const HEADER: &'static str;
    fn csv_line(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub k: u32,
    pub n: u64,
    pub c: f64,
    pub trials: u32,
    pub orientable_count: u32,
    pub orientable_fraction: f64,
    pub mean_matching_time_ms: f64,
}

impl CsvRow for ScanRow {
    const HEADER: &'static str =
        "k,n,c,trials,orientable_count,orientable_fraction,mean_matching_time_ms";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k,
            self.n,
            fmt_sig(self.c),
            self.trials,
            self.orientable_count,
            fmt_sig(self.orientable_fraction),
            fmt_sig(self.mean_matching_time_ms),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InsertBenchRow {
    pub k: u32,
    pub n: u64,
    pub m: u64,
    pub seed: u64,
    pub success_count: u64,
    pub max_steps: u64,
    pub p50_steps: u64,
    pub p99_steps: u64,
    pub total_steps: u64,
    pub failures: u64,
}

impl CsvRow for InsertBenchRow {
    const HEADER: &'static str =
        "k,n,m,seed,success_count,max_steps,p50_steps,p99_steps,total_steps,failures";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            self.m,
            self.seed,
            self.success_count,
            self.max_steps,
            self.p50_steps,
            self.p99_steps,
            self.total_steps,
            self.failures,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreRow {
    pub k: u32,
    pub n: u64,
    pub c: f64,
    pub trial: u32,
    pub predicted_vertex_fraction: f64,
    pub empirical_vertex_fraction: f64,
    pub vertex_abs_dev: f64,
    pub predicted_edge_fraction: f64,
    pub empirical_edge_fraction: f64,
    pub edge_abs_dev: f64,
}

impl CsvRow for CoreRow {
    const HEADER: &'static str = "k,n,c,trial,predicted_vertex_fraction,empirical_vertex_fraction,vertex_abs_dev,predicted_edge_fraction,empirical_edge_fraction,edge_abs_dev";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            fmt_sig(self.c),
            self.trial,
            fmt_sig(self.predicted_vertex_fraction),
            fmt_sig(self.empirical_vertex_fraction),
            fmt_sig(self.vertex_abs_dev),
            fmt_sig(self.predicted_edge_fraction),
            fmt_sig(self.empirical_edge_fraction),
            fmt_sig(self.edge_abs_dev),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub k: u32,
    pub n: u64,
    pub c: f64,
    pub trial: u32,
    pub orientable: bool,
    pub density_delta: f64,
    pub density_holds: bool,
    pub max_density_num: u64,
    pub max_density_den: u64,
    pub max_density: f64,
    pub expansion_samples: u64,
    pub expansion_violations: u64,
    pub neighborhood_probes: u64,
    pub neighborhood_violations: u64,
}

impl CsvRow for AuditRow {
    const HEADER: &'static str = "k,n,c,trial,orientable,density_delta,density_holds,max_density_num,max_density_den,max_density,expansion_samples,expansion_violations,neighborhood_probes,neighborhood_violations";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            fmt_sig(self.c),
            self.trial,
            self.orientable,
            fmt_sig(self.density_delta),
            self.density_holds,
            self.max_density_num,
            self.max_density_den,
            fmt_sig(self.max_density),
            self.expansion_samples,
            self.expansion_violations,
            self.neighborhood_probes,
            self.neighborhood_violations,
        )
    }
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = String::from(R::HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}
