//! wasm-bindgen surface for the browser demo.
//!
//! Three interactive operations, all returning JSON strings so the page
//! needs nothing beyond `JSON.parse`:
//!   - `thresholds_json`: solved constants plus the analytic core-size curve,
//!   - `scan_json`: Monte Carlo orientability fractions across a load grid,
//!   - `insertion_steps_json`: per-insertion walk lengths at one load.
//!
//! Inputs are validated here; errors come back as `{"error": "..."}` rather
//! than trapping the wasm module.

#![forbid(unsafe_code)]

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cuckoo_rw::analytics;
use cuckoo_rw::harness::derive_seed;
use cuckoo_rw::hashspace::HashFamily;
use cuckoo_rw::hypergraph::{self, Hypergraph};
use cuckoo_rw::table::CuckooTable;

fn err_json(message: &str) -> String {
    format!("{{\"error\":{}}}", serde_json::Value::from(message))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| err_json(&e.to_string()))
}

#[derive(Serialize)]
struct CorePoint {
    c: f64,
    vertex_fraction: f64,
    edge_fraction: f64,
    density: f64,
}

#[derive(Serialize)]
struct ThresholdsOut {
    k: u32,
    xi_star: f64,
    c_star: f64,
    lambda_k: f64,
    lambda_k_over_k: f64,
    walk_exponent: f64,
    core_curve: Vec<CorePoint>,
}

/// Solved constants for `k` plus the analytic core-size law sampled on a
/// load grid up to the threshold.
#[wasm_bindgen]
pub fn thresholds_json(k: u32) -> String {
    let report = match analytics::threshold_report(k) {
        Ok(r) => r,
        Err(e) => return err_json(&e.to_string()),
    };
    let points = 160;
    let core_curve = (1..=points)
        .filter_map(|i| {
            let c = report.c_star * i as f64 / points as f64;
            analytics::core_prediction(c, k).ok().map(|p| CorePoint {
                c,
                vertex_fraction: p.vertex_fraction,
                edge_fraction: p.edge_fraction,
                density: p.density,
            })
        })
        .collect();
    to_json(&ThresholdsOut {
        k: report.k,
        xi_star: report.xi_star,
        c_star: report.c_star,
        lambda_k: report.lambda_k,
        lambda_k_over_k: report.lambda_k / f64::from(k),
        walk_exponent: report.walk_exponent,
        core_curve,
    })
}

#[derive(Serialize)]
struct ScanPoint {
    c: f64,
    orientable: u32,
    trials: u32,
    fraction: f64,
}

#[derive(Serialize)]
struct ScanOut {
    k: u32,
    n: u32,
    c_star: Option<f64>,
    points: Vec<ScanPoint>,
}

/// Orientability fraction on a uniform grid of `points` loads in
/// `[c_lo, c_hi]`, `trials` sampled hypergraphs per load.
#[wasm_bindgen]
pub fn scan_json(
    n: u32,
    k: u32,
    c_lo: f64,
    c_hi: f64,
    points: u32,
    trials: u32,
    seed: u32,
) -> String {
    if n == 0 || n > 200_000 {
        return err_json("n must lie in 1..=200000");
    }
    if !(2..=8).contains(&k) {
        return err_json("k must lie in 2..=8");
    }
    if !(c_lo > 0.0 && c_hi < 1.0 && c_lo <= c_hi) {
        return err_json("need 0 < c_lo <= c_hi < 1");
    }
    if points == 0 || points > 200 || trials == 0 || trials > 200 {
        return err_json("points and trials must lie in 1..=200");
    }
    let mut out = ScanOut {
        k,
        n,
        c_star: analytics::load_threshold(k).ok(),
        points: Vec::new(),
    };
    for pi in 0..points {
        let c = if points == 1 {
            c_lo
        } else {
            c_lo + (c_hi - c_lo) * f64::from(pi) / f64::from(points - 1)
        };
        let m = (c * f64::from(n)) as usize;
        let mut orientable = 0;
        for trial in 0..trials {
            let s = derive_seed(u64::from(seed), u64::from(pi) << 32 | u64::from(trial));
            let h = Hypergraph::sample(n as usize, m, k as usize, s);
            if hypergraph::is_orientable(&h) {
                orientable += 1;
            }
        }
        out.points.push(ScanPoint {
            c,
            orientable,
            trials,
            fraction: f64::from(orientable) / f64::from(trials),
        });
    }
    to_json(&out)
}

#[derive(Serialize)]
struct InsertOut {
    k: u32,
    n: u32,
    m: u64,
    step_cap: u64,
    failures: u64,
    max_steps: u64,
    p50_steps: u64,
    p99_steps: u64,
    total_steps: u64,
    /// Histogram over log2 buckets: count of insertions with
    /// steps in [2^b, 2^{b+1}).
    step_buckets: Vec<u64>,
    /// Walk length of every 64th insertion, for the load-vs-steps trace.
    trace: Vec<u64>,
}

/// Insert `floor(c*n)` items sequentially and report walk-length statistics.
#[wasm_bindgen]
pub fn insertion_steps_json(n: u32, k: u32, c: f64, seed: u32, step_cap: u32) -> String {
    if !(2..=500_000).contains(&n) {
        return err_json("n must lie in 2..=500000");
    }
    if !(2..=8).contains(&k) {
        return err_json("k must lie in 2..=8");
    }
    if !(c > 0.0 && c < 1.0) {
        return err_json("need 0 < c < 1");
    }
    let m = (c * f64::from(n)) as u64;
    let cap = if step_cap == 0 {
        CuckooTable::default_step_cap(n as usize)
    } else {
        u64::from(step_cap)
    };
    let family = match HashFamily::new(k as usize, n as usize, derive_seed(u64::from(seed), 0)) {
        Ok(f) => f,
        Err(e) => return err_json(&e.to_string()),
    };
    let mut table = CuckooTable::new(family, derive_seed(u64::from(seed), 1));
    let mut steps = Vec::with_capacity(m as usize);
    let mut trace = Vec::new();
    let mut failures = 0u64;
    for item in 0..m {
        let out = match table.insert(item, cap) {
            Ok(o) => o,
            Err(e) => return err_json(&e.to_string()),
        };
        if !out.success {
            failures += 1;
        }
        if item % 64 == 0 {
            trace.push(out.steps);
        }
        steps.push(out.steps);
    }
    let total: u64 = steps.iter().sum();
    let mut buckets = Vec::new();
    for &s in &steps {
        let b = 63 - s.max(1).leading_zeros() as usize;
        if buckets.len() <= b {
            buckets.resize(b + 1, 0);
        }
        buckets[b] += 1;
    }
    steps.sort_unstable();
    let pct = |q: f64| -> u64 {
        if steps.is_empty() {
            0
        } else {
            let rank = (q * steps.len() as f64).ceil() as usize;
            steps[rank.clamp(1, steps.len()) - 1]
        }
    };
    to_json(&InsertOut {
        k,
        n,
        m,
        step_cap: cap,
        failures,
        max_steps: steps.last().copied().unwrap_or(0),
        p50_steps: pct(0.50),
        p99_steps: pct(0.99),
        total_steps: total,
        step_buckets: buckets,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_json_carries_the_constants() {
        let v: serde_json::Value = serde_json::from_str(&thresholds_json(3)).unwrap();
        assert!((v["c_star"].as_f64().unwrap() - 0.91793).abs() < 1e-4);
        assert!(v["core_curve"].as_array().unwrap().len() > 100);
        let err: serde_json::Value = serde_json::from_str(&thresholds_json(2)).unwrap();
        assert!(err["error"].is_string());
    }

    #[test]
    fn scan_json_is_deterministic() {
        let a = scan_json(800, 3, 0.5, 0.95, 6, 5, 7);
        let b = scan_json(800, 3, 0.5, 0.95, 6, 5, 7);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 6);
        assert_eq!(v["points"][0]["fraction"].as_f64().unwrap(), 1.0);
    }

    #[test]
    fn insertion_steps_json_reports_consistent_counts() {
        let v: serde_json::Value =
            serde_json::from_str(&insertion_steps_json(2_000, 3, 0.8, 3, 0)).unwrap();
        assert_eq!(v["m"].as_u64().unwrap(), 1_600);
        assert_eq!(v["failures"].as_u64().unwrap(), 0);
        let buckets: u64 = v["step_buckets"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b.as_u64().unwrap())
            .sum();
        assert_eq!(buckets, 1_600);
        assert!(v["p50_steps"].as_u64().unwrap() >= 1);
    }

    #[test]
    fn bad_inputs_become_error_objects() {
        for json in [
            scan_json(0, 3, 0.5, 0.9, 5, 5, 1),
            scan_json(100, 3, 0.9, 0.5, 5, 5, 1),
            insertion_steps_json(1_000, 3, 1.5, 1, 0),
        ] {
            let v: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert!(v["error"].is_string(), "{json}");
        }
    }
}
