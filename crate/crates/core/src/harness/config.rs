//! Experiment configuration: CLI flags overlaid on an optional JSON file,
//! then validated per experiment kind.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Thresholds,
    Scan,
    InsertBench,
    Core,
    Audit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Raw, partially-specified configuration: what a JSON file or the CLI
/// provides before merging and validation.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub kind: Option<Kind>,
    pub k: Option<u32>,
    pub n: Option<u64>,
    pub c: Option<f64>,
    /// Grid expression `a:b:step`, endpoints inclusive.
    pub c_grid: Option<String>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub zeta: Option<f64>,
    pub step_cap: Option<u64>,
    pub delta: Option<f64>,
    pub expansion_samples: Option<u64>,
    pub probes: Option<u64>,
    pub fixture: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub timings: Option<bool>,
}

impl PartialConfig {
    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))
    }

    /// Overlay `other` (typically CLI flags) on top of `self`.
    pub fn overlaid_with(mut self, other: PartialConfig) -> PartialConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if other.$field.is_some() { self.$field = other.$field; })*
            };
        }
        take!(
            kind,
            k,
            n,
            c,
            c_grid,
            trials,
            seed,
            zeta,
            step_cap,
            delta,
            expansion_samples,
            probes,
            fixture,
            out,
            format,
            threads,
            timings
        );
        self
    }
}

/// A validated experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub k: u32,
    pub n: usize,
    /// Load grid; a single entry for kinds that take one load.
    pub c_grid: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    pub zeta: f64,
    /// Walk cap; defaults to `ceil(log2(n)^4)` when absent.
    pub step_cap: Option<u64>,
    pub delta: f64,
    pub expansion_samples: u64,
    pub probes: u64,
    pub fixture: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
    pub timings: bool,
}

fn parse_grid(expr: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = expr.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "grid must be `a:b:step`, got `{expr}`"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad grid number `{p}`")))
        })
        .collect::<Result<_>>()?;
    let (a, b, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || b < a {
        return Err(Error::Config("grid needs a <= b and step > 0".into()));
    }
    let mut grid = Vec::new();
    let mut i = 0u32;
    loop {
        let c = a + f64::from(i) * step;
        if c > b + 1e-12 {
            break;
        }
        grid.push(c);
        i += 1;
        if i > 100_000 {
            return Err(Error::Config("grid has more than 1e5 points".into()));
        }
    }
    Ok(grid)
}

fn check_load(c: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Config(format!(
            "load c = {c} must lie strictly inside (0,1)"
        )));
    }
    Ok(c)
}

impl ExperimentConfig {
    /// Merge and validate. `kind` comes from the CLI subcommand and must
    /// agree with the file when the file states one.
    pub fn build(kind: Kind, partial: PartialConfig) -> Result<Self> {
        if let Some(file_kind) = partial.kind {
            if file_kind != kind {
                return Err(Error::Config(format!(
                    "config file kind {file_kind:?} does not match the subcommand {kind:?}"
                )));
            }
        }
        let k = partial
            .k
            .ok_or_else(|| Error::Config("--k is required".into()))?;
        let min_k = if kind == Kind::Scan { 2 } else { 3 };
        if k < min_k {
            return Err(Error::Config(format!(
                "k = {k} is below the minimum {min_k}"
            )));
        }

        let mut c_grid: Vec<f64> = Vec::new();
        match (partial.c, &partial.c_grid) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "give either --c or --c-grid, not both".into(),
                ))
            }
            (Some(c), None) => c_grid.push(check_load(c)?),
            (None, Some(expr)) => {
                for c in parse_grid(expr)? {
                    c_grid.push(check_load(c)?);
                }
            }
            (None, None) => {}
        }
        c_grid.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let needs_load = matches!(
            kind,
            Kind::Scan | Kind::InsertBench | Kind::Core | Kind::Audit
        );
        let fixture_supplied = partial.fixture.is_some();
        if needs_load && c_grid.is_empty() && !fixture_supplied {
            return Err(Error::Config(
                "this experiment needs --c or --c-grid".into(),
            ));
        }
        if matches!(kind, Kind::InsertBench | Kind::Audit) && c_grid.len() > 1 {
            return Err(Error::Config("this experiment takes a single --c".into()));
        }
        if fixture_supplied && !matches!(kind, Kind::Core | Kind::Audit) {
            return Err(Error::Config(
                "--fixture applies to core and audit only".into(),
            ));
        }

        let n = if kind == Kind::Thresholds || fixture_supplied {
            partial.n.unwrap_or(1)
        } else {
            partial
                .n
                .ok_or_else(|| Error::Config("--n is required".into()))?
        };
        if n < 1 || n > u32::MAX as u64 {
            return Err(Error::Config(format!("n = {n} is out of range")));
        }

        let trials = partial.trials.unwrap_or(1);
        if trials < 1 && !fixture_supplied {
            return Err(Error::Config("trials must be at least 1".into()));
        }

        let zeta = partial.zeta.unwrap_or(0.1);
        if zeta <= 0.0 {
            return Err(Error::Config("zeta must be positive".into()));
        }
        let delta = partial.delta.unwrap_or(0.01);
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::Config("delta must lie in [0, 1)".into()));
        }
        if let Some(cap) = partial.step_cap {
            if cap < 1 {
                return Err(Error::Config("step cap must be at least 1".into()));
            }
        }

        Ok(ExperimentConfig {
            kind,
            k,
            n: n as usize,
            c_grid,
            trials,
            seed: partial.seed.unwrap_or(0),
            zeta,
            step_cap: partial.step_cap,
            delta,
            expansion_samples: partial.expansion_samples.unwrap_or(10_000),
            probes: partial.probes.unwrap_or(1_000),
            fixture: partial.fixture,
            out: partial.out,
            format: partial.format.unwrap_or_default(),
            threads: partial.threads,
            timings: partial.timings.unwrap_or(false),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> PartialConfig {
        PartialConfig {
            k: Some(3),
            n: Some(1000),
            c: Some(0.5),
            trials: Some(2),
            seed: Some(7),
            ..PartialConfig::default()
        }
    }

    #[test]
    fn grid_expression_is_inclusive() {
        let g = parse_grid("0.88:0.94:0.02").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[0] - 0.88).abs() < 1e-12);
        assert!((g[3] - 0.94).abs() < 1e-12);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:-1").is_err());
        assert!(parse_grid("0.1:0.2").is_err());
    }

    #[test]
    fn cli_overrides_file() {
        let file = base();
        let cli = PartialConfig {
            seed: Some(99),
            ..PartialConfig::default()
        };
        let merged = file.overlaid_with(cli);
        let cfg = ExperimentConfig::build(Kind::Scan, merged).unwrap();
        assert_eq!(cfg.seed, 99);
        assert_eq!(cfg.k, 3);
    }

    #[test]
    fn kind_mismatch_is_a_config_error() {
        let mut p = base();
        p.kind = Some(Kind::Core);
        assert!(matches!(
            ExperimentConfig::build(Kind::Scan, p),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn load_must_be_supplied_and_sane() {
        let mut p = base();
        p.c = None;
        assert!(ExperimentConfig::build(Kind::Scan, p.clone()).is_err());
        p.c = Some(1.5);
        assert!(ExperimentConfig::build(Kind::Scan, p).is_err());
    }

    #[test]
    fn both_c_and_grid_conflict() {
        let mut p = base();
        p.c_grid = Some("0.1:0.2:0.1".into());
        assert!(ExperimentConfig::build(Kind::Scan, p).is_err());
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = ExperimentConfig::build(Kind::InsertBench, base()).unwrap();
        assert_eq!(cfg.zeta, 0.1);
        assert_eq!(cfg.delta, 0.01);
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert!(!cfg.timings);
    }
}
