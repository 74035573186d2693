//! Closed-form theoretical targets — the giant fraction beta(c), the fluid
//! curve, the dual parameter c*, CLT scales, the connectedness limit — and
//! the goodness-of-fit machinery (Kolmogorov-Smirnov, chi-square, geometric
//! fit) used to compare simulations against them.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default significance for every goodness-of-fit check.
pub const GOF_SIGNIFICANCE: f64 = 1e-3;

/// Solver output for the first positive root of `1 - exp(-c t) - t = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BetaSolution {
    pub c: f64,
    pub beta: f64,
    pub residual: f64,
    pub iterations: u32,
}

/// Closed-form targets derived from `beta(c)` for the supercritical regime.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoryTargets {
    pub c: f64,
    pub beta: f64,
    /// Dual parameter `c* = c (1 - beta(c))`; subcritical for c > 1.
    pub c_star: f64,
    /// Per-sqrt(n) standard deviation of the giant in the Poissonized model:
    /// `sqrt(beta) / (1 - c*)`.
    pub giant_sd_poissonized: f64,
    /// Per-sqrt(n) standard deviation for the fixed-size model:
    /// `sqrt(beta (1 - beta)) / (1 - c*)`.
    pub giant_sd_fixed: f64,
    /// Success parameter of the geometric law for the number of components
    /// explored before the giant.
    pub kc_success: f64,
}

/// Outcome of a single goodness-of-fit comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GofReport {
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
    pub sample_size: usize,
}

impl GofReport {
    fn new(statistic: f64, threshold: f64, sample_size: usize) -> Self {
        GofReport {
            statistic,
            threshold,
            passed: statistic <= threshold,
            sample_size,
        }
    }
}

/// The fluid-limit curve `1 - exp(-c t) - t`, stable for small `c t`.
pub fn fluid_curve(c: f64, t: f64) -> f64 {
    -f64::exp_m1(-c * t) - t
}

/// Asymptotic connectedness probability `exp(-exp(-c))` in the
/// `p = (ln n + c)/n` regime; defined for every real `c`.
pub fn connectedness_limit(c: f64) -> f64 {
    (-(-c).exp()).exp()
}

/// First positive root of `1 - exp(-c t) - t = 0`.
///
/// For `c <= 1` the root is exactly zero. For `c > 1` a bracketing bisection
/// narrows to width 1e-6 and Newton polishes from the midpoint; pure Newton
/// started at 1 can overshoot for c barely above 1.
pub fn beta_solver(c: f64, tol: f64) -> Result<BetaSolution> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!("beta_solver requires c > 0, got {c}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("beta_solver requires tol > 0, got {tol}")));
    }
    if c <= 1.0 {
        return Ok(BetaSolution {
            c,
            beta: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }
    // The root merges with 0 as c decreases to 1; the expansion
    // beta ~ 2(c-1)/c^2 avoids catastrophic cancellation there.
    if c <= 1.0 + 1e-9 {
        let beta = 2.0 * (c - 1.0) / (c * c);
        return Ok(BetaSolution {
            c,
            beta,
            residual: fluid_curve(c, beta).abs(),
            iterations: 0,
        });
    }

    let f = |t: f64| fluid_curve(c, t);
    let fp = |t: f64| c * (-c * t).exp() - 1.0;

    let mut lo = tol.min(1e-8);
    let mut hi = 1.0;
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    let mut iterations = 0u32;
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..64 {
        let fx = f(x);
        if fx.abs() <= tol {
            break;
        }
        let d = fp(x);
        if d == 0.0 {
            break;
        }
        let next = (x - fx / d).clamp(lo, hi);
        iterations += 1;
        if (next - x).abs() < f64::EPSILON * x.abs() {
            x = next;
            break;
        }
        x = next;
    }

    Ok(BetaSolution {
        c,
        beta: x,
        residual: f(x).abs(),
        iterations,
    })
}

/// Supercritical targets derived from the beta solver. Errors for `c <= 1`,
/// where the giant-component quantities are undefined.
pub fn theory_targets(c: f64) -> Result<TheoryTargets> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::Domain(format!(
            "giant-component targets require c > 1, got {c}"
        )));
    }
    let beta = beta_solver(c, 1e-12)?.beta;
    let c_star = c * (1.0 - beta);
    Ok(TheoryTargets {
        c,
        beta,
        c_star,
        giant_sd_poissonized: beta.sqrt() / (1.0 - c_star),
        giant_sd_fixed: (beta * (1.0 - beta)).sqrt() / (1.0 - c_star),
        kc_success: beta,
    })
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

/// Poisson pmf at `k`, computed in log space.
pub fn poisson_pmf(mean: f64, k: u64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * mean.ln() - mean - libm::lgamma(k as f64 + 1.0)).exp()
}

/// Binomial(n, p) pmf at `k`, computed in log space.
pub fn binomial_pmf(n: u64, p: f64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let (nf, kf) = (n as f64, k as f64);
    let log_choose =
        libm::lgamma(nf + 1.0) - libm::lgamma(kf + 1.0) - libm::lgamma(nf - kf + 1.0);
    (log_choose + kf * p.ln() + (nf - kf) * (-p).ln_1p()).exp()
}

/// Regularized lower incomplete gamma P(a, x) via series / continued fraction.
fn lower_reg_gamma(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        // Series representation.
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..500 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        (sum.ln() + a * x.ln() - x - libm::lgamma(a)).exp()
    } else {
        // Continued fraction for Q(a, x) = 1 - P(a, x) (Lentz's method).
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        let q = (a * x.ln() - x - libm::lgamma(a)).exp() * h;
        1.0 - q
    }
}

/// Chi-square CDF with `df` degrees of freedom.
pub fn chi_square_cdf(x: f64, df: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        lower_reg_gamma(df / 2.0, x / 2.0)
    }
}

/// Upper quantile of the chi-square distribution: the threshold exceeded with
/// probability `significance` under the null.
pub fn chi_square_quantile(significance: f64, df: f64) -> f64 {
    debug_assert!(df > 0.0 && significance > 0.0 && significance < 1.0);
    let target = 1.0 - significance;
    let mut lo = 0.0;
    let mut hi = df + 10.0;
    while chi_square_cdf(hi, df) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chi_square_cdf(mid, df) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Asymptotic one-sample Kolmogorov-Smirnov critical value.
pub fn ks_critical_one_sample(n: usize, significance: f64) -> f64 {
    let c = (-(significance / 2.0).ln() / 2.0).sqrt();
    c / (n as f64).sqrt()
}

/// Asymptotic two-sample Kolmogorov-Smirnov critical value.
pub fn ks_critical_two_sample(n: usize, m: usize, significance: f64) -> f64 {
    let c = (-(significance / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of a sorted
/// sample and a reference CDF, thresholded at the asymptotic quantile.
pub fn ks_distance<F: Fn(f64) -> f64>(
    sample: &[f64],
    cdf: F,
    significance: f64,
) -> Result<GofReport> {
    if sample.is_empty() {
        return Err(Error::invalid("ks_distance requires a nonempty sample"));
    }
    if sample.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("ks_distance requires a sorted sample"));
    }
    let n = sample.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i as f64 + 1.0) / n - f);
    }
    Ok(GofReport::new(
        d,
        ks_critical_one_sample(sample.len(), significance),
        sample.len(),
    ))
}

/// Two-sample Kolmogorov-Smirnov distance between sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64], significance: f64) -> Result<GofReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("ks_two_sample requires nonempty samples"));
    }
    if a.windows(2).any(|w| w[0] > w[1]) || b.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("ks_two_sample requires sorted samples"));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(GofReport::new(
        d,
        ks_critical_two_sample(a.len(), b.len(), significance),
        a.len() + b.len(),
    ))
}

/// Histogram over a discrete sample, shifted so index 0 is `min_value`.
fn histogram(samples: &[u64], min_value: u64) -> Vec<u64> {
    let max = samples.iter().copied().max().unwrap_or(min_value);
    let mut hist = vec![0u64; (max - min_value + 1) as usize];
    for &s in samples {
        hist[(s - min_value) as usize] += 1;
    }
    hist
}

/// Chi-square test of a discrete sample against a pmf. Cells are bucketed
/// left-to-right until each carries expected count >= 5, with the remaining
/// tail mass merged into the final bucket. `estimated_params` reduces the
/// degrees of freedom.
pub fn chi_square_pmf<F: Fn(u64) -> f64>(
    samples: &[u64],
    pmf: F,
    min_value: u64,
    significance: f64,
    estimated_params: usize,
) -> GofReport {
    let n = samples.len();
    let hist = histogram(samples, min_value);
    let nf = n as f64;

    // Expected mass per raw cell, with everything beyond the observed range
    // folded into one tail cell.
    let mut probs: Vec<f64> = (0..hist.len())
        .map(|i| pmf(min_value + i as u64))
        .collect();
    let tail = (1.0 - probs.iter().sum::<f64>()).max(0.0);
    probs.push(tail);
    let mut counts: Vec<f64> = hist.iter().map(|&h| h as f64).collect();
    counts.push(0.0);

    // Greedy bucketing to expected >= 5.
    let mut obs = Vec::new();
    let mut exp = Vec::new();
    let (mut acc_o, mut acc_e) = (0.0f64, 0.0f64);
    for (o, p) in counts.iter().zip(probs.iter()) {
        acc_o += o;
        acc_e += p * nf;
        if acc_e >= 5.0 {
            obs.push(acc_o);
            exp.push(acc_e);
            acc_o = 0.0;
            acc_e = 0.0;
        }
    }
    if acc_e > 0.0 || acc_o > 0.0 {
        if let (Some(o), Some(e)) = (obs.last_mut(), exp.last_mut()) {
            *o += acc_o;
            *e += acc_e;
        } else {
            obs.push(acc_o);
            exp.push(acc_e);
        }
    }

    let df = obs.len() as f64 - 1.0 - estimated_params as f64;
    if df < 1.0 {
        // Degenerate fit (e.g. a point mass): nothing left to test.
        let stat: f64 = obs
            .iter()
            .zip(exp.iter())
            .map(|(o, e)| if *e > 0.0 { (o - e) * (o - e) / e } else { 0.0 })
            .sum();
        return GofReport {
            statistic: stat,
            threshold: stat.max(1e-9),
            passed: true,
            sample_size: n,
        };
    }
    let stat: f64 = obs
        .iter()
        .zip(exp.iter())
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    GofReport::new(stat, chi_square_quantile(significance, df), n)
}

/// Two-sample chi-square homogeneity test on discrete samples, bucketed so
/// every pooled cell has expected count >= 5 in each group.
pub fn chi_square_two_sample(a: &[i64], b: &[i64], significance: f64) -> GofReport {
    let min = a
        .iter()
        .chain(b.iter())
        .copied()
        .min()
        .expect("nonempty samples");
    let to_u = |xs: &[i64]| xs.iter().map(|&x| (x - min) as u64).collect::<Vec<_>>();
    let (ua, ub) = (to_u(a), to_u(b));
    let max = ua.iter().chain(ub.iter()).copied().max().unwrap_or(0);
    let mut ha = vec![0u64; max as usize + 1];
    let mut hb = vec![0u64; max as usize + 1];
    for &x in &ua {
        ha[x as usize] += 1;
    }
    for &x in &ub {
        hb[x as usize] += 1;
    }

    let (na, nb) = (a.len() as f64, b.len() as f64);
    let total = na + nb;
    // Bucket on pooled expectation: both groups need >= 5 expected.
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut acc_a, mut acc_b) = (0.0f64, 0.0f64);
    for i in 0..ha.len() {
        acc_a += ha[i] as f64;
        acc_b += hb[i] as f64;
        let pooled = acc_a + acc_b;
        if pooled * na / total >= 5.0 && pooled * nb / total >= 5.0 {
            cells.push((acc_a, acc_b));
            acc_a = 0.0;
            acc_b = 0.0;
        }
    }
    if acc_a > 0.0 || acc_b > 0.0 {
        if let Some(last) = cells.last_mut() {
            last.0 += acc_a;
            last.1 += acc_b;
        } else {
            cells.push((acc_a, acc_b));
        }
    }

    if cells.len() < 2 {
        return GofReport {
            statistic: 0.0,
            threshold: 1e-9,
            passed: true,
            sample_size: a.len() + b.len(),
        };
    }
    let mut stat = 0.0;
    for &(oa, ob) in &cells {
        let pooled = oa + ob;
        let ea = pooled * na / total;
        let eb = pooled * nb / total;
        stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    let df = cells.len() as f64 - 1.0;
    GofReport::new(
        stat,
        chi_square_quantile(significance, df),
        a.len() + b.len(),
    )
}

/// Fit a geometric law on {0, 1, 2, ...} by maximum likelihood
/// (`success = 1 / (1 + mean)`) and report a chi-square GOF with
/// tail bucketing.
pub fn geometric_fit(counts: &[u64]) -> Result<(f64, GofReport)> {
    if counts.is_empty() {
        return Err(Error::invalid("geometric_fit requires a nonempty sample"));
    }
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / counts.len() as f64;
    let success = 1.0 / (1.0 + mean);
    let pmf = move |k: u64| (1.0 - success).powi(k as i32) * success;
    let report = chi_square_pmf(counts, pmf, 0, GOF_SIGNIFICANCE, 1);
    Ok((success, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::{geometric_skip, RandomStream};

    /// Plain bisection on the fluid curve, independent of the main solver.
    fn beta_bisection_oracle(c: f64, tol: f64) -> f64 {
        let f = |t: f64| 1.0 - (-c * t).exp() - t;
        let (mut lo, mut hi) = (1e-12, 1.0);
        assert!(f(lo) > 0.0 && f(hi) < 0.0);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn fluid_curve_basics() {
        assert_eq!(fluid_curve(2.0, 0.0), 0.0);
        assert_eq!(fluid_curve(0.5, 0.0), 0.0);
        let beta2 = beta_solver(2.0, 1e-12).unwrap().beta;
        assert!(fluid_curve(2.0, beta2).abs() < 1e-12);
        // Derivative at zero vanishes exactly at criticality.
        let h = 1e-6;
        assert!((fluid_curve(1.0, h) / h).abs() < 1e-5);
    }

    #[test]
    fn beta_subcritical_is_zero() {
        assert_eq!(beta_solver(0.5, 1e-12).unwrap().beta, 0.0);
        assert_eq!(beta_solver(1.0, 1e-12).unwrap().beta, 0.0);
        assert!(beta_solver(0.0, 1e-12).is_err());
        assert!(beta_solver(-2.0, 1e-12).is_err());
    }

    #[test]
    fn beta_two_matches_independent_bisection() {
        let oracle = beta_bisection_oracle(2.0, 1e-9);
        let solved = beta_solver(2.0, 1e-12).unwrap();
        assert!(
            (solved.beta - oracle).abs() < 1e-8,
            "solver {} vs oracle {oracle}",
            solved.beta
        );
        // Frozen from the bisection oracle.
        assert!((solved.beta - 0.796812).abs() < 1e-6);
        assert!(solved.residual <= 1e-12);
    }

    #[test]
    fn beta_near_infinity_saturates() {
        assert!(beta_solver(10.0, 1e-12).unwrap().beta > 0.9999);
    }

    #[test]
    fn beta_residuals_and_monotonicity_on_grid() {
        let grid = [1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0];
        let mut prev = 0.0;
        for &c in &grid {
            let sol = beta_solver(c, 1e-12).unwrap();
            assert!(
                fluid_curve(c, sol.beta).abs() <= 1e-12,
                "residual at c={c}: {}",
                fluid_curve(c, sol.beta)
            );
            assert!(sol.beta > prev, "beta not increasing at c={c}");
            // First-root property: the curve stays positive before the root.
            assert!(fluid_curve(c, sol.beta / 2.0) > 0.0);
            prev = sol.beta;
        }
    }

    #[test]
    fn dual_parameter_is_subcritical() {
        let targets = theory_targets(2.0).unwrap();
        assert!((targets.c_star - 0.406376).abs() < 1e-5);
        assert!(targets.c_star > 0.0 && targets.c_star < 1.0);
        // beta at the dual parameter vanishes.
        assert_eq!(beta_solver(targets.c_star, 1e-12).unwrap().beta, 0.0);
    }

    #[test]
    fn theory_targets_frozen_values() {
        let t = theory_targets(2.0).unwrap();
        assert!((t.giant_sd_poissonized - 1.5036).abs() < 1e-3);
        assert!(t.giant_sd_fixed < t.giant_sd_poissonized);
        assert!((t.kc_success - t.beta).abs() < 1e-15);
        assert!(theory_targets(1.0).is_err());
        assert!(theory_targets(0.5).is_err());
    }

    #[test]
    fn connectedness_limit_values_and_monotonicity() {
        assert!((connectedness_limit(0.0) - (-1.0f64).exp()).abs() < 1e-12);
        let points = [-2.0, 0.0, 2.0, 5.0];
        let mut prev = 0.0;
        for &c in &points {
            let v = connectedness_limit(c);
            assert!(v > 0.0 && v < 1.0);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn chi_square_quantiles_match_tables() {
        assert!((chi_square_quantile(1e-3, 1.0) - 10.828).abs() < 5e-3);
        assert!((chi_square_quantile(1e-3, 5.0) - 20.515).abs() < 5e-3);
        assert!((chi_square_quantile(1e-3, 10.0) - 29.588).abs() < 5e-3);
        assert!((chi_square_quantile(0.05, 3.0) - 7.815).abs() < 5e-3);
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.96) - 0.975).abs() < 1e-4);
        assert!((normal_cdf(-1.96) - 0.025).abs() < 1e-4);
    }

    #[test]
    fn ks_flags_point_mass_against_normal() {
        let sample = vec![0.0; 1000];
        let report = ks_distance(&sample, normal_cdf, GOF_SIGNIFICANCE).unwrap();
        assert!((report.statistic - 0.5).abs() < 1e-12);
        assert!(!report.passed);
    }

    #[test]
    fn ks_single_point_at_median() {
        let report = ks_distance(&[0.0], normal_cdf, GOF_SIGNIFICANCE).unwrap();
        assert!((report.statistic - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ks_rejects_unsorted() {
        assert!(ks_distance(&[1.0, 0.0], normal_cdf, GOF_SIGNIFICANCE).is_err());
        assert!(ks_distance(&[], normal_cdf, GOF_SIGNIFICANCE).is_err());
    }

    #[test]
    fn ks_calibration_on_true_normals() {
        // Samples drawn from the reference distribution should pass nearly
        // always at significance 1e-3.
        let mut passes = 0;
        for meta in 0..100u64 {
            let mut s = RandomStream::new(1000 + meta, 0);
            let mut sample: Vec<f64> = (0..10_000).map(|_| s.standard_normal()).collect();
            sample.sort_by(f64::total_cmp);
            if ks_distance(&sample, normal_cdf, GOF_SIGNIFICANCE)
                .unwrap()
                .passed
            {
                passes += 1;
            }
        }
        assert!(passes >= 99, "{passes}/100 calibration passes");
    }

    #[test]
    fn ks_two_sample_identical_samples() {
        let a = vec![1.0, 2.0, 3.0, 4.0];
        let report = ks_two_sample(&a, &a, GOF_SIGNIFICANCE).unwrap();
        assert_eq!(report.statistic, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn geometric_fit_degenerate_and_simulated() {
        let (success, report) = geometric_fit(&[0, 0, 0, 0]).unwrap();
        assert_eq!(success, 1.0);
        assert!(report.passed);

        let mut s = RandomStream::new(77, 0);
        // Geometric on {0,1,...} from the skip sampler (which is 1-based).
        let counts: Vec<u64> = (0..100_000)
            .map(|_| geometric_skip(&mut s, 0.8).unwrap() - 1)
            .collect();
        let (success, report) = geometric_fit(&counts).unwrap();
        assert!((success - 0.8).abs() < 0.005, "estimate {success}");
        assert!(report.passed, "stat {}", report.statistic);
        assert!(geometric_fit(&[]).is_err());
    }
}
