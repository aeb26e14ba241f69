//! The experiment runners.
//!
//! Every trial derives its own seed from the master seed and its index, so
//! trials can run in any order and on any number of threads while the
//! aggregated output stays byte-identical.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Kind, OutputFormat};
use super::derive_seed;
use super::rows::{to_csv, AuditRow, CoreRow, CsvRow, InsertBenchRow, ScanRow};
use crate::analytics::{self, ThresholdReport};
use crate::error::{Error, Result};
use crate::hashspace::HashFamily;
use crate::hypergraph::{self, neighborhood, DensityMode, ExpansionMode, Hypergraph, Ratio};
use crate::table::CuckooTable;

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// `floor(c*n)` with protection against the product landing a hair under an
/// integer it mathematically equals.
fn edge_count(c: f64, n: usize) -> usize {
    let raw = c * n as f64;
    if (raw - raw.round()).abs() < 1e-6 {
        raw.round() as usize
    } else {
        raw.floor() as usize
    }
}

pub fn run_thresholds(k: u32) -> Result<ThresholdReport> {
    analytics::threshold_report(k)
}

pub fn run_scan(cfg: &ExperimentConfig) -> Result<Vec<ScanRow>> {
    let jobs: Vec<(usize, u32)> = (0..cfg.c_grid.len())
        .flat_map(|ci| (0..cfg.trials).map(move |t| (ci, t)))
        .collect();
    let results: Vec<(bool, f64)> = with_pool(cfg.threads, || {
        jobs.par_iter()
            .map(|&(ci, trial)| {
                let seed = derive_seed(
                    cfg.seed,
                    ci as u64 * u64::from(cfg.trials) + u64::from(trial),
                );
                let c = cfg.c_grid[ci];
                let h = Hypergraph::sample(cfg.n, edge_count(c, cfg.n), cfg.k as usize, seed);
                let start = Instant::now();
                let orientable = hypergraph::is_orientable(&h);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                (orientable, ms)
            })
            .collect()
    })?;

    let mut rows = Vec::with_capacity(cfg.c_grid.len());
    for (ci, &c) in cfg.c_grid.iter().enumerate() {
        let slice = &results[ci * cfg.trials as usize..(ci + 1) * cfg.trials as usize];
        let orientable_count = slice.iter().filter(|r| r.0).count() as u32;
        let mean_ms = if cfg.timings {
            slice.iter().map(|r| r.1).sum::<f64>() / cfg.trials as f64
        } else {
            0.0
        };
        rows.push(ScanRow {
            k: cfg.k,
            n: cfg.n as u64,
            c,
            trials: cfg.trials,
            orientable_count,
            orientable_fraction: f64::from(orientable_count) / f64::from(cfg.trials),
            mean_matching_time_ms: mean_ms,
        });
    }
    Ok(rows)
}

pub fn run_insert_bench(cfg: &ExperimentConfig) -> Result<Vec<InsertBenchRow>> {
    let c = cfg.c_grid[0];
    if cfg.k >= 3 {
        let threshold = analytics::load_threshold(cfg.k)?;
        if c >= threshold {
            eprintln!(
                "warning: c = {c} is at or above the load threshold {threshold:.6}; \
                 failures are expected"
            );
        }
    }
    let m = edge_count(c, cfg.n) as u64;
    let cap = cfg
        .step_cap
        .unwrap_or_else(|| CuckooTable::default_step_cap(cfg.n));

    let trials: Vec<u32> = (0..cfg.trials).collect();
    with_pool(cfg.threads, || {
        trials
            .par_iter()
            .map(|&trial| {
                let trial_seed = derive_seed(cfg.seed, u64::from(trial));
                let family = HashFamily::new(cfg.k as usize, cfg.n, derive_seed(trial_seed, 0))?;
                let mut table = CuckooTable::new(family, derive_seed(trial_seed, 1));
                let mut steps = Vec::with_capacity(m as usize);
                let mut failures = 0u64;
                for item in 0..m {
                    let out = table.insert(item, cap)?;
                    steps.push(out.steps);
                    if !out.success {
                        failures += 1;
                    }
                }
                let total: u64 = steps.iter().sum();
                steps.sort_unstable();
                Ok(InsertBenchRow {
                    k: cfg.k,
                    n: cfg.n as u64,
                    m,
                    seed: trial_seed,
                    success_count: m - failures,
                    max_steps: steps.last().copied().unwrap_or(0),
                    p50_steps: percentile(&steps, 0.50),
                    p99_steps: percentile(&steps, 0.99),
                    total_steps: total,
                    failures,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// Nearest-rank percentile of an ascending-sorted sample.
fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub fn run_core(cfg: &ExperimentConfig) -> Result<Vec<CoreRow>> {
    if let Some(path) = &cfg.fixture {
        let text = std::fs::read_to_string(path)?;
        let h = Hypergraph::from_text(&text)?;
        let c = h.m() as f64 / h.n() as f64;
        return Ok(vec![core_row(&h, c, cfg.k, 0)?]);
    }
    let jobs: Vec<(usize, u32)> = (0..cfg.c_grid.len())
        .flat_map(|ci| (0..cfg.trials).map(move |t| (ci, t)))
        .collect();
    with_pool(cfg.threads, || {
        jobs.par_iter()
            .map(|&(ci, trial)| {
                let seed = derive_seed(
                    cfg.seed,
                    ci as u64 * u64::from(cfg.trials) + u64::from(trial),
                );
                let c = cfg.c_grid[ci];
                let h = Hypergraph::sample(cfg.n, edge_count(c, cfg.n), cfg.k as usize, seed);
                core_row(&h, c, cfg.k, trial)
            })
            .collect::<Result<Vec<_>>>()
    })?
}

fn core_row(h: &Hypergraph, c: f64, k: u32, trial: u32) -> Result<CoreRow> {
    let prediction = analytics::core_prediction(c, k)?;
    let core = hypergraph::strip_core(h);
    let empirical_vertex = core.core_vertices.len() as f64 / h.n() as f64;
    let empirical_edge = core.core_edges.len() as f64 / h.n() as f64;
    Ok(CoreRow {
        k,
        n: h.n() as u64,
        c,
        trial,
        predicted_vertex_fraction: prediction.vertex_fraction,
        empirical_vertex_fraction: empirical_vertex,
        vertex_abs_dev: (prediction.vertex_fraction - empirical_vertex).abs(),
        predicted_edge_fraction: prediction.edge_fraction,
        empirical_edge_fraction: empirical_edge,
        edge_abs_dev: (prediction.edge_fraction - empirical_edge).abs(),
    })
}

pub fn run_audit(cfg: &ExperimentConfig) -> Result<Vec<AuditRow>> {
    if let Some(path) = &cfg.fixture {
        let text = std::fs::read_to_string(path)?;
        let h = Hypergraph::from_text(&text)?;
        let c = h.m() as f64 / h.n() as f64;
        return Ok(vec![audit_row(&h, c, cfg, 0)?]);
    }
    let c = cfg.c_grid[0];
    let trials: Vec<u32> = (0..cfg.trials).collect();
    with_pool(cfg.threads, || {
        trials
            .par_iter()
            .map(|&trial| {
                let seed = derive_seed(cfg.seed, u64::from(trial));
                let h = Hypergraph::sample(cfg.n, edge_count(c, cfg.n), cfg.k as usize, seed);
                audit_row(&h, c, cfg, trial)
            })
            .collect::<Result<Vec<_>>>()
    })?
}

fn audit_row(h: &Hypergraph, c: f64, cfg: &ExperimentConfig, trial: u32) -> Result<AuditRow> {
    let trial_seed = derive_seed(cfg.seed, u64::from(trial));
    let orientation = hypergraph::orient(h);

    let delta = Ratio::from_f64(cfg.delta, 1_000_000)?;
    let density = hypergraph::check_density(h, delta, DensityMode::Flow)?;
    let max_density = hypergraph::max_density(h);

    let expansion = hypergraph::check_expansion(
        h,
        ExpansionMode::Sampled {
            samples: cfg.expansion_samples,
            seed: derive_seed(trial_seed, 2),
        },
    )?;

    // Deterministic neighborhood bound: count violations of
    // N_{h,t}(v) <= (k-1)^{t+1} over random (v, t) probes.
    let mut neighborhood_violations = 0u64;
    if let Some(o) = &orientation {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, 3));
        let base = (cfg.k - 1) as f64;
        let t_max = ((h.n() as f64).ln() / base.ln()).ceil() as usize + 2;
        for _ in 0..cfg.probes {
            let v = rng.gen_range(0..h.n() as u32);
            let t = rng.gen_range(0..=t_max);
            let size = neighborhood::neighborhood_size(h, o, v, t) as f64;
            if size > base.powi(t as i32 + 1) {
                neighborhood_violations += 1;
            }
        }
    }

    Ok(AuditRow {
        k: cfg.k,
        n: h.n() as u64,
        c,
        trial,
        orientable: orientation.is_some(),
        density_delta: cfg.delta,
        density_holds: density.holds,
        max_density_num: max_density.num(),
        max_density_den: max_density.den(),
        max_density: max_density.as_f64(),
        expansion_samples: cfg.expansion_samples,
        expansion_violations: expansion.violations,
        neighborhood_probes: if orientation.is_some() { cfg.probes } else { 0 },
        neighborhood_violations,
    })
}

/// Render the experiment's rows in the configured format.
pub fn render(cfg: &ExperimentConfig) -> Result<String> {
    match cfg.kind {
        Kind::Thresholds => {
            let report = run_thresholds(cfg.k)?;
            Ok(format!(
                "{}\n",
                serde_json::to_string(&report).expect("report serializes")
            ))
        }
        Kind::Scan => render_rows(cfg, &run_scan(cfg)?),
        Kind::InsertBench => render_rows(cfg, &run_insert_bench(cfg)?),
        Kind::Core => render_rows(cfg, &run_core(cfg)?),
        Kind::Audit => render_rows(cfg, &run_audit(cfg)?),
    }
}

fn render_rows<R: CsvRow + serde::Serialize>(cfg: &ExperimentConfig, rows: &[R]) -> Result<String> {
    Ok(match cfg.format {
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::PartialConfig;

    fn cfg(kind: Kind, mut p: PartialConfig) -> ExperimentConfig {
        p.k = p.k.or(Some(3));
        p.n = p.n.or(Some(500));
        if p.c.is_none() && p.c_grid.is_none() {
            p.c = Some(0.5);
        }
        p.trials = p.trials.or(Some(4));
        p.seed = p.seed.or(Some(11));
        ExperimentConfig::build(kind, p).unwrap()
    }

    #[test]
    fn edge_count_rounds_cleanly() {
        assert_eq!(edge_count(0.9, 20_000), 18_000);
        assert_eq!(edge_count(0.29, 100), 29);
        assert_eq!(edge_count(0.333, 10), 3);
    }

    #[test]
    fn percentile_is_nearest_rank() {
        let data = vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
        assert_eq!(percentile(&data, 0.50), 5);
        assert_eq!(percentile(&data, 0.99), 10);
        assert_eq!(percentile(&data, 0.01), 1);
        assert_eq!(percentile(&[], 0.5), 0);
    }

    #[test]
    fn far_subcritical_scan_is_always_orientable() {
        let config = cfg(
            Kind::Scan,
            PartialConfig {
                n: Some(10_000),
                c: Some(0.01),
                trials: Some(20),
                ..PartialConfig::default()
            },
        );
        let rows = run_scan(&config).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].orientable_fraction, 1.0);
        assert_eq!(rows[0].mean_matching_time_ms, 0.0);
    }

    #[test]
    fn scan_rows_come_back_sorted_by_load() {
        let config = cfg(
            Kind::Scan,
            PartialConfig {
                n: Some(2_000),
                c: None,
                c_grid: Some("0.80:0.95:0.05".into()),
                trials: Some(8),
                ..PartialConfig::default()
            },
        );
        let rows = run_scan(&config).unwrap();
        assert_eq!(rows.len(), 4);
        for w in rows.windows(2) {
            assert!(w[0].c < w[1].c, "rows sorted by c");
        }
    }

    #[test]
    fn orientability_is_monotone_on_coupled_samples() {
        // A sampled hypergraph with the same seed and larger m extends the
        // smaller one edge for edge, so per trial the orientable flag can
        // only flip from true to false along the grid.
        let n = 2_000;
        let grid = [0.80, 0.85, 0.90, 0.95];
        for trial in 0..6u64 {
            let seed = derive_seed(31, trial);
            let mut prev = true;
            for &c in &grid {
                let h = Hypergraph::sample(n, edge_count(c, n), 3, seed);
                let now = hypergraph::is_orientable(&h);
                assert!(prev || !now, "orientability regressed upward at c={c}");
                prev = now;
            }
        }
    }

    #[test]
    fn single_item_bench_takes_one_step() {
        let config = cfg(
            Kind::InsertBench,
            PartialConfig {
                n: Some(100),
                c: Some(0.01),
                trials: Some(3),
                ..PartialConfig::default()
            },
        );
        let rows = run_insert_bench(&config).unwrap();
        for row in rows {
            assert_eq!(row.m, 1);
            assert_eq!(row.max_steps, 1);
            assert_eq!(row.failures, 0);
            assert_eq!(row.success_count + row.failures, row.m);
        }
    }

    #[test]
    fn subcritical_core_is_empty() {
        // c = 0.5 gives ck = 1.5 < lambda_3, so stripping consumes everything.
        let config = cfg(
            Kind::Core,
            PartialConfig {
                n: Some(5_000),
                c: Some(0.5),
                trials: Some(3),
                ..PartialConfig::default()
            },
        );
        for row in run_core(&config).unwrap() {
            assert_eq!(row.predicted_vertex_fraction, 0.0);
            assert_eq!(row.empirical_vertex_fraction, 0.0);
        }
    }

    #[test]
    fn render_is_reproducible_and_thread_invariant() {
        let base = PartialConfig {
            n: Some(1_500),
            c: None,
            c_grid: Some("0.5:0.9:0.1".into()),
            trials: Some(6),
            ..PartialConfig::default()
        };
        let one = cfg(
            Kind::Scan,
            PartialConfig {
                threads: Some(1),
                ..base.clone()
            },
        );
        let many = cfg(
            Kind::Scan,
            PartialConfig {
                threads: Some(4),
                ..base
            },
        );
        let a = render(&one).unwrap();
        let b = render(&one).unwrap();
        let c = render(&many).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn audit_runs_on_a_small_instance() {
        let config = cfg(
            Kind::Audit,
            PartialConfig {
                n: Some(400),
                c: Some(0.7),
                trials: Some(2),
                expansion_samples: Some(200),
                probes: Some(50),
                ..PartialConfig::default()
            },
        );
        let rows = run_audit(&config).unwrap();
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert!(row.orientable);
            assert_eq!(row.neighborhood_violations, 0);
            assert!(row.max_density.is_finite());
        }
    }

    #[test]
    fn core_fixture_path_works() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let dir = std::env::temp_dir().join("cuckoo-rw-test-fixture");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("double-edge.txt");
        std::fs::write(&path, h.to_text()).unwrap();
        let config = cfg(
            Kind::Core,
            PartialConfig {
                fixture: Some(path),
                c: Some(0.4),
                ..PartialConfig::default()
            },
        );
        let rows = run_core(&config).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].empirical_vertex_fraction - 0.6).abs() < 1e-12);
        assert!((rows[0].c - 0.4).abs() < 1e-12);
    }
}
