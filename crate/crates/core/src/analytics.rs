//! Numeric evaluation of the closed-form constants and implicit equations that
//! govern k-ary cuckoo hashing: load thresholds, the random-walk exponent,
//! core-emergence constants, 2-core size predictions, phase lengths and
//! stripping depths.
//!
//! All solvers are pure, deterministic and allocation-free. Implicit equations
//! are solved by bisection on a monotone branch; every returned root is
//! verified against a 1e-10 residual before it leaves this module.

use crate::error::{Error, Result};
use serde::Serialize;

/// Argument tolerance for bisection.
const ARG_TOL: f64 = 1e-12;
/// Maximum residual accepted when a root is substituted back into its equation.
const RESIDUAL_TOL: f64 = 1e-10;
/// Below this, `1 - e^{-x}` and friends switch to series to avoid cancellation.
const SERIES_CUTOFF: f64 = 1e-5;

/// Solved constants for a given number of hash choices `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub k: u32,
    /// Root of the threshold equation `k = xi(1-e^-xi)/(1-e^-xi-xi e^-xi)`.
    pub xi_star: f64,
    /// Load threshold `c_k* = xi*/(k(1-e^-xi*)^{k-1})`.
    pub c_star: f64,
    /// Core-emergence constant `min_{x>0} x/(1-e^-x)^{k-1}`.
    pub lambda_k: f64,
    /// Exponent constant of the polylogarithmic insertion-time bound.
    pub walk_exponent: f64,
}

/// Predicted 2-core of a random k-bounded hypergraph with `cn` edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorePrediction {
    /// Predicted |core vertices| / n.
    pub vertex_fraction: f64,
    /// Predicted |core edges| / n.
    pub edge_fraction: f64,
    /// Core parameter `xi = x_bar * c * k`.
    pub xi: f64,
    /// Edge/vertex ratio of the predicted core.
    pub density: f64,
}

impl CorePrediction {
    /// The subcritical prediction: no core at all.
    pub const EMPTY: CorePrediction = CorePrediction {
        vertex_fraction: 0.0,
        edge_fraction: 0.0,
        xi: 0.0,
        density: 0.0,
    };

    pub fn is_empty(&self) -> bool {
        self.vertex_fraction == 0.0
    }
}

fn check_k(k: u32) -> Result<()> {
    if k < 3 {
        return Err(Error::Domain("k must be at least 3"));
    }
    Ok(())
}

/// `1 - e^{-x}`, stable near zero.
fn one_minus_exp_neg(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        // x - x^2/2 + x^3/6 - x^4/24
        x * (1.0 - x / 2.0 * (1.0 - x / 3.0 * (1.0 - x / 4.0)))
    } else {
        1.0 - (-x).exp()
    }
}

/// `1 - e^{-x} - x e^{-x}`, stable near zero.
fn one_minus_exp_neg_linear(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        // x^2/2 - x^3/3 + x^4/8 - x^5/30
        x * x / 2.0 * (1.0 - 2.0 * x / 3.0 * (1.0 - 3.0 * x / 8.0 * (1.0 - 4.0 * x / 15.0)))
    } else {
        1.0 - (-x).exp() - x * (-x).exp()
    }
}

/// `f(x) = x(1-e^-x) / (k(1-e^-x-xe^-x))`: edge/vertex ratio of the predicted
/// core at parameter `x`. Strictly increasing on the positive axis.
pub fn core_density_fn(x: f64, k: u32) -> f64 {
    x * one_minus_exp_neg(x) / (f64::from(k) * one_minus_exp_neg_linear(x))
}

/// `g(x) = x / (k(1-e^-x)^{k-1})`: the load whose core parameter is `x`.
/// Unimodal with a unique minimum at `x_g`, where `g(x_g) = lambda_k / k`.
pub fn load_fn(x: f64, k: u32) -> f64 {
    x / (f64::from(k) * one_minus_exp_neg(x).powi(k as i32 - 1))
}

/// Bisect `f` on `[lo, hi]` assuming `f(lo) <= 0 <= f(hi)`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        if hi - lo < ARG_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..200 {
        if hi - lo < ARG_TOL {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

/// Solve `k = xi(1-e^-xi)/(1-e^-xi-xi e^-xi)` for the unique positive root.
pub fn solve_xi_star(k: u32) -> Result<f64> {
    check_k(k)?;
    let kf = f64::from(k);
    // Equivalent to f(xi) = 1 with f strictly increasing from 2/k < 1.
    let h = |x: f64| core_density_fn(x, k) - 1.0;
    let mut hi = kf;
    while h(hi) <= 0.0 {
        hi *= 2.0;
    }
    let xi = bisect(1e-9, hi, h);
    let residual = (kf - xi * one_minus_exp_neg(xi) / one_minus_exp_neg_linear(xi)).abs();
    if residual >= RESIDUAL_TOL {
        return Err(Error::Solver("xi* residual above tolerance"));
    }
    Ok(xi)
}

/// Load threshold `c_k* = xi*/(k(1-e^-xi*)^{k-1})` for k-ary cuckoo hashing.
pub fn load_threshold(k: u32) -> Result<f64> {
    let xi = solve_xi_star(k)?;
    Ok(load_fn(xi, k))
}

/// The walk exponent `c = log_k((k-1)e^k) / ((k-1) log_k(k-1))`.
pub fn walk_exponent(k: u32) -> Result<f64> {
    check_k(k)?;
    let kf = f64::from(k);
    let ln_k1 = (kf - 1.0).ln();
    // log_k((k-1)e^k) = (ln(k-1) + k)/ln k and the ln k factors cancel.
    Ok((ln_k1 + kf) / ((kf - 1.0) * ln_k1))
}

/// Minimizer and minimum of `x |-> x/(1-e^-x)^{k-1}` over x > 0.
pub(crate) fn lambda_minimizer(k: u32) -> (f64, f64) {
    let objective = |x: f64| x / one_minus_exp_neg(x).powi(k as i32 - 1);
    let x_g = golden_min(1e-6, 64.0, objective);
    (x_g, objective(x_g))
}

/// Core-emergence constant `lambda_k = min_{x>0} x/(1-e^-x)^{k-1}`.
/// A core appears in the random hypergraph exactly when `ck > lambda_k`.
pub fn lambda_k(k: u32) -> Result<f64> {
    check_k(k)?;
    Ok(lambda_minimizer(k).1)
}

/// Predict the 2-core of a random k-bounded hypergraph with `floor(cn)` edges.
///
/// Solves for the largest fixed point `x_bar` of `x = (1-e^{-xck})^{k-1}`,
/// sets `xi = x_bar * ck`, and evaluates the core-size law. Subcritical loads
/// (`ck <= lambda_k`) yield [`CorePrediction::EMPTY`].
pub fn core_prediction(c: f64, k: u32) -> Result<CorePrediction> {
    check_k(k)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain("load c must lie strictly inside (0,1)"));
    }
    let ck = c * f64::from(k);
    let (x_g, lambda) = lambda_minimizer(k);
    if ck <= lambda {
        return Ok(CorePrediction::EMPTY);
    }
    // In x-space the fixed-point defect h(x) = x - (1-e^{-x ck})^{k-1} is
    // positive at 1, and negative strictly between its two positive roots.
    // The dip contains x_g/ck, so bisecting [x_g/ck, 1] selects the largest
    // root.
    let h = |x: f64| x - one_minus_exp_neg(x * ck).powi(k as i32 - 1);
    let dip = x_g / ck;
    if h(dip) >= 0.0 {
        // Tangency within float noise: no crossing to select.
        return Ok(CorePrediction::EMPTY);
    }
    let x_bar = bisect(dip, 1.0, h);
    let residual = (x_bar - one_minus_exp_neg(x_bar * ck).powi(k as i32 - 1)).abs();
    if residual >= RESIDUAL_TOL {
        return Err(Error::Solver("core fixed-point residual above tolerance"));
    }
    let xi = x_bar * ck;
    let vertex_fraction = one_minus_exp_neg_linear(xi);
    let density = core_density_fn(xi, k);
    Ok(CorePrediction {
        vertex_fraction,
        edge_fraction: density * vertex_fraction,
        xi,
        density,
    })
}

/// Number of walk steps in one phase: `ceil(T) + extra` where
/// `T = log_{k-1} n + (c + zeta) log_{k-1} log_{k-1} n`.
pub fn phase_length(n: u64, k: u32, zeta: f64, extra: u64) -> Result<u64> {
    check_k(k)?;
    if zeta <= 0.0 {
        return Err(Error::Domain("zeta must be positive"));
    }
    if n < 3 {
        return Err(Error::Domain(
            "n too small: log_{k-1} log_{k-1} n is not usable below n = 3",
        ));
    }
    let base = f64::from(k - 1).ln();
    let log1 = (n as f64).ln() / base;
    let loglog = log1.ln() / base;
    let t = log1 + (walk_exponent(k)? + zeta) * loglog;
    Ok((t.ceil().max(0.0)) as u64 + extra)
}

/// Stripping depth `C(alpha, delta) = ceil(log_{1-delta} alpha)`: after this
/// many peel rounds at density slack `delta`, fewer than an `alpha`-fraction
/// of the vertices remain.
pub fn stripping_constant(alpha: f64, delta: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain("alpha must lie strictly inside (0,1)"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain("delta must lie strictly inside (0,1)"));
    }
    Ok((alpha.ln() / (1.0 - delta).ln()).ceil() as u64)
}

/// Solve every constant for a given `k`.
pub fn threshold_report(k: u32) -> Result<ThresholdReport> {
    let xi_star = solve_xi_star(k)?;
    Ok(ThresholdReport {
        k,
        xi_star,
        c_star: load_fn(xi_star, k),
        lambda_k: lambda_k(k)?,
        walk_exponent: walk_exponent(k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trunc(x: f64, digits: i32) -> f64 {
        let p = 10f64.powi(digits);
        (x * p).floor() / p
    }

    #[test]
    fn xi_star_for_k3_exceeds_known_lower_bound() {
        let xi = solve_xi_star(3).unwrap();
        assert!(xi > 2.14, "xi*_3 = {xi}");
        let residual =
            (3.0 - xi * (1.0 - (-xi).exp()) / (1.0 - (-xi).exp() - xi * (-xi).exp())).abs();
        assert!(residual < 1e-10, "residual = {residual}");
    }

    #[test]
    fn xi_star_is_deterministic() {
        assert_eq!(solve_xi_star(3).unwrap(), solve_xi_star(3).unwrap());
        assert_eq!(solve_xi_star(7).unwrap(), solve_xi_star(7).unwrap());
    }

    #[test]
    fn xi_star_is_at_least_half_k() {
        for k in 4..=10 {
            let xi = solve_xi_star(k).unwrap();
            assert!(xi >= f64::from(k) / 2.0, "k={k} xi={xi}");
        }
        assert!(solve_xi_star(10).unwrap() >= 5.0);
    }

    #[test]
    fn load_thresholds_truncate_to_known_values() {
        assert_eq!(trunc(load_threshold(3).unwrap(), 3), 0.917);
        assert_eq!(trunc(load_threshold(4).unwrap(), 3), 0.976);
        assert_eq!(trunc(load_threshold(5).unwrap(), 3), 0.992);
    }

    #[test]
    fn load_threshold_residual_identity() {
        for k in 3..=6 {
            let xi = solve_xi_star(k).unwrap();
            let c = load_threshold(k).unwrap();
            let direct = xi / (f64::from(k) * (1.0 - (-xi).exp()).powi(k as i32 - 1));
            assert!((c - direct).abs() < 1e-14);
            assert!(c > 0.0 && c < 1.0);
        }
    }

    #[test]
    fn walk_exponents_truncate_to_known_values() {
        assert_eq!(trunc(walk_exponent(3).unwrap(), 2), 2.66);
        assert_eq!(trunc(walk_exponent(4).unwrap(), 2), 1.54);
        assert_eq!(trunc(walk_exponent(5).unwrap(), 2), 1.15);
    }

    #[test]
    fn lambda_matches_dense_grid_scan() {
        // Independent oracle: scan x in (0, 20] on a 2e6-point grid.
        for k in [3u32, 4, 5] {
            let mut best = f64::INFINITY;
            let steps = 2_000_000;
            for i in 1..=steps {
                let x = 20.0 * i as f64 / steps as f64;
                let v = x / (1.0 - (-x).exp()).powi(k as i32 - 1);
                if v < best {
                    best = v;
                }
            }
            let lam = lambda_k(k).unwrap();
            assert!((lam - best).abs() < 1e-8, "k={k} lam={lam} grid={best}");
        }
    }

    #[test]
    fn lambda_sits_below_the_threshold() {
        for k in [3u32, 4, 5] {
            let lam = lambda_k(k).unwrap();
            let c = load_threshold(k).unwrap();
            assert!(lam < f64::from(k) * c, "k={k}");
            assert!(0.0 < lam / f64::from(k) && lam / f64::from(k) < c && c < 1.0);
        }
    }

    #[test]
    fn lambda_minimizer_is_left_of_xi_star() {
        for k in [3u32, 4, 5] {
            let (x_g, lam) = lambda_minimizer(k);
            assert!(x_g < solve_xi_star(k).unwrap(), "k={k}");
            // lambda_k / k = g(x_g)
            assert!((lam / f64::from(k) - load_fn(x_g, k)).abs() < 1e-12);
        }
    }

    #[test]
    fn core_density_is_one_at_the_threshold() {
        let c3 = load_threshold(3).unwrap();
        let pred = core_prediction(c3, 3).unwrap();
        assert!(
            (pred.density - 1.0).abs() < 1e-8,
            "density = {}",
            pred.density
        );
    }

    #[test]
    fn core_prediction_is_empty_below_emergence() {
        // ck = 0.3 < lambda_3
        let pred = core_prediction(0.1, 3).unwrap();
        assert!(pred.is_empty());
        assert_eq!(pred, CorePrediction::EMPTY);
    }

    #[test]
    fn core_prediction_matches_fixed_point_iteration_oracle() {
        // Oracle: iterate x <- (1-e^{-x ck})^{k-1} from x = 1. The map is
        // increasing and starts above its largest fixed point, so the
        // iteration converges to it from above.
        for &(c, k) in &[(0.85f64, 3u32), (0.9, 3), (0.95, 4), (0.9, 5)] {
            let ck = c * f64::from(k);
            let mut x = 1.0f64;
            for _ in 0..200_000 {
                x = (1.0 - (-x * ck).exp()).powi(k as i32 - 1);
            }
            let pred = core_prediction(c, k).unwrap();
            let x_bar = pred.xi / ck;
            assert!(
                (x_bar - x).abs() < 1e-8,
                "c={c} k={k}: {x_bar} vs oracle {x}"
            );
        }
    }

    #[test]
    fn core_prediction_frozen_values_for_c085_k3() {
        let pred = core_prediction(0.85, 3).unwrap();
        assert!((pred.vertex_fraction - 0.511_113_301_7).abs() < 1e-8);
        assert!((pred.edge_fraction - 0.468_439_830_3).abs() < 1e-8);
        assert!((pred.density - 0.916_508_783_5).abs() < 1e-8);
    }

    #[test]
    fn core_vertex_fraction_is_monotone_on_the_grid() {
        let grid = [0.80, 0.85, 0.90];
        let fractions: Vec<f64> = grid
            .iter()
            .map(|&c| core_prediction(c, 3).unwrap().vertex_fraction)
            .collect();
        assert!(fractions[0] < fractions[1] && fractions[1] < fractions[2]);
        // c = 0.80 gives ck = 2.4 < lambda_3, so the first point is the empty
        // prediction; the law still reproduces the formula where nonempty.
        for (&c, &vf) in grid.iter().zip(&fractions).skip(1) {
            let pred = core_prediction(c, 3).unwrap();
            assert!(vf > 0.0 && vf < 1.0);
            let direct = 1.0 - (-pred.xi).exp() - pred.xi * (-pred.xi).exp();
            assert!((vf - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn core_density_stays_below_one_under_the_threshold() {
        let c3 = load_threshold(3).unwrap();
        for i in 1..20 {
            let c = c3 * (i as f64) / 20.0;
            let pred = core_prediction(c, 3).unwrap();
            assert!(pred.density < 1.0, "c={c} density={}", pred.density);
        }
    }

    #[test]
    fn phase_length_extra_is_additive() {
        let a = phase_length(1 << 20, 3, 0.1, 0).unwrap() as i64;
        let b = phase_length(1 << 20, 3, 0.1, 5).unwrap() as i64;
        assert_eq!(a - b, -5);
    }

    #[test]
    fn phase_length_matches_direct_formula() {
        // T = 20 + (c + 0.1) * log2(20) with base k-1 = 2, then ceil, plus 10.
        let c = walk_exponent(3).unwrap();
        let t = 20.0 + (c + 0.1) * 20f64.log2();
        let expected = t.ceil() as u64 + 10;
        assert_eq!(phase_length(1 << 20, 3, 0.1, 10).unwrap(), expected);
        assert_eq!(expected, 42);
    }

    #[test]
    fn phase_length_is_monotone_in_n() {
        let mut prev = 0;
        for exp in 2..26 {
            let len = phase_length(1 << exp, 3, 0.25, 7).unwrap();
            assert!(len >= prev, "n=2^{exp}");
            prev = len;
        }
    }

    #[test]
    fn stripping_constant_examples() {
        assert_eq!(stripping_constant(0.5, 0.5).unwrap(), 1);
        assert_eq!(stripping_constant(0.25, 0.5).unwrap(), 2);
        // ceil(ln 0.01 / ln 0.9) evaluated independently
        let oracle = (0.01f64.ln() / 0.9f64.ln()).ceil() as u64;
        assert_eq!(oracle, 44);
        assert_eq!(stripping_constant(0.01, 0.1).unwrap(), 44);
    }

    #[test]
    fn core_density_fn_is_increasing_on_grid() {
        for k in [3u32, 5] {
            let mut prev = f64::NEG_INFINITY;
            for i in 0..=1950 {
                let x = 0.5 + i as f64 * 0.01;
                let v = core_density_fn(x, k);
                assert!(v > prev, "k={k} x={x}");
                prev = v;
            }
        }
    }

    #[test]
    fn load_fn_has_a_single_valley_on_grid() {
        for k in [3u32, 5] {
            let mut sign_changes = 0;
            let mut prev_diff = 0.0f64;
            let mut prev = load_fn(0.5, k);
            for i in 1..=1950 {
                let x = 0.5 + i as f64 * 0.01;
                let v = load_fn(x, k);
                let diff = v - prev;
                if prev_diff < 0.0 && diff > 0.0 {
                    sign_changes += 1;
                }
                if diff != 0.0 {
                    prev_diff = diff;
                }
                prev = v;
            }
            assert_eq!(sign_changes, 1, "k={k}");
        }
    }

    #[test]
    fn thresholds_increase_in_k_and_approach_one() {
        let mut prev = 0.0;
        for k in 3..=10 {
            let c = load_threshold(k).unwrap();
            assert!(c > prev, "k={k}");
            prev = c;
        }
        let c10 = load_threshold(10).unwrap();
        assert!((c10 - (1.0 - (-10.0f64).exp())).abs() < 0.01);
    }

    #[test]
    fn domain_errors_for_invalid_arguments() {
        assert!(solve_xi_star(2).is_err());
        assert!(load_threshold(2).is_err());
        assert!(walk_exponent(2).is_err());
        assert!(lambda_k(2).is_err());
        assert!(core_prediction(0.5, 2).is_err());
        assert!(core_prediction(0.0, 3).is_err());
        assert!(core_prediction(1.0, 3).is_err());
        assert!(phase_length(2, 3, 0.1, 0).is_err());
        assert!(phase_length(100, 3, 0.0, 0).is_err());
        assert!(stripping_constant(0.0, 0.5).is_err());
        assert!(stripping_constant(0.5, 1.0).is_err());
    }

    #[test]
    fn threshold_report_is_internally_consistent() {
        let r = threshold_report(3).unwrap();
        assert_eq!(r.k, 3);
        assert!((r.c_star - r.xi_star / (3.0 * (1.0 - (-r.xi_star).exp()).powi(2))).abs() < 1e-12);
        assert!(0.0 < r.lambda_k / 3.0 && r.lambda_k / 3.0 < r.c_star && r.c_star < 1.0);
    }
}
