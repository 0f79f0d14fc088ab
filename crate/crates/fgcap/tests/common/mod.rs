//! Shared statistical helpers for the integration tests.
//!
//! Goodness-of-fit here compares Monte Carlo draws against the kernel
//! densities, so the p-value machinery must not depend on the sampling
//! code: the regularized incomplete gamma follows the classical series /
//! continued-fraction split (Numerical Recipes gser/gcf) and is pinned
//! against high-precision references in the tests that use it.

// each test target compiles its own copy and uses a subset of the helpers
#![allow(dead_code)]

use fgcap::integrate;
use fgcap::special::log_gamma;

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
///
/// Series for the lower tail when x < a + 1, modified Lentz continued
/// fraction otherwise; both converge to near machine precision for the
/// a in the hundreds that the chi-square tests need.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q needs a > 0, x >= 0");
    if x == 0.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() - x - log_gamma(a).expect("a > 0");
    if x < a + 1.0 {
        // P(a,x) = x^a e^-x / Gamma(a) * sum_n x^n / (a(a+1)...(a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut n = 1.0;
        while term.abs() > sum.abs() * 1e-16 {
            term *= x / (a + n);
            sum += term;
            n += 1.0;
        }
        1.0 - ln_front.exp() * sum
    } else {
        // Q(a,x) = x^a e^-x / Gamma(a) * 1/(x+1-a- 1(1-a)/(x+3-a- ...))
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -f64::from(i) * (f64::from(i) - a);
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
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 3e-16 {
                break;
            }
        }
        ln_front.exp() * h
    }
}

/// Chi-square comparison of pooled eigenvalue draws against a one-point
/// density on `[lo, hi]`.
#[derive(Debug)]
pub struct DensityFit {
    pub chi2: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Bins `samples` into `n_bins` equal-width cells, computes expected
/// counts as `n_draws` times the per-cell integral of `density` (the
/// density integrates to the spectrum length m over the support, so each
/// draw contributes m pooled values), merges adjacent cells until every
/// expected count reaches 10, and returns the chi-square p-value with
/// dof = cells - 1.
pub fn chi2_density_fit(
    samples: &[f64],
    lo: f64,
    hi: f64,
    n_draws: u64,
    n_bins: usize,
    density: impl Fn(f64) -> f64,
) -> DensityFit {
    assert!(n_bins >= 2 && hi > lo);
    let width = (hi - lo) / n_bins as f64;
    let mut observed = vec![0.0f64; n_bins];
    for &x in samples {
        let idx = (((x - lo) / width).floor().max(0.0) as usize).min(n_bins - 1);
        observed[idx] += 1.0;
    }
    let expected: Vec<f64> = (0..n_bins)
        .map(|i| {
            let a = lo + width * i as f64;
            let b = if i + 1 == n_bins { hi } else { a + width };
            let cell = integrate(&density, a, b, 10).expect("density integrable").value;
            cell * n_draws as f64
        })
        .collect();

    // greedy left-to-right merge so every cell carries enough mass for the
    // chi-square approximation
    let mut merged: Vec<(f64, f64)> = Vec::new();
    let (mut obs_acc, mut exp_acc) = (0.0, 0.0);
    for i in 0..n_bins {
        obs_acc += observed[i];
        exp_acc += expected[i];
        if exp_acc >= 10.0 {
            merged.push((obs_acc, exp_acc));
            obs_acc = 0.0;
            exp_acc = 0.0;
        }
    }
    if exp_acc > 0.0 || obs_acc > 0.0 {
        if let Some(last) = merged.last_mut() {
            last.0 += obs_acc;
            last.1 += exp_acc;
        } else {
            merged.push((obs_acc, exp_acc));
        }
    }
    assert!(merged.len() >= 2, "support collapsed to a single cell");

    let chi2: f64 = merged
        .iter()
        .map(|&(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = merged.len() - 1;
    DensityFit {
        chi2,
        dof,
        p_value: gamma_q(dof as f64 / 2.0, chi2 / 2.0),
    }
}

/// Kolmogorov-Smirnov distance of `samples` from the uniform law on
/// `[0, 1]`. Sorts in place.
pub fn ks_uniform_statistic(samples: &mut [f64]) -> f64 {
    assert!(!samples.is_empty());
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = x.clamp(0.0, 1.0);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// Sample mean and standard error.
pub fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    assert!(n >= 2.0);
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
