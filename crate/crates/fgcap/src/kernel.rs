//! Jacobi polynomials, correlation kernels, and kernel-integral quadrature.
//!
//! This is the deterministic oracle route for the mean capacity: the level
//! density of either ensemble is a Christoffel-Darboux kernel built from
//! Jacobi polynomials, and E[C] is the integral of the capacity density
//! `u` against that kernel. Nothing here touches the closed forms, so an
//! agreement between this module and [`crate::capacity`] is a genuine
//! cross-check.

use crate::capacity::{capacity_u, EnsembleSpec};
use crate::error::{Error, Result};
use crate::quad::{integrate, KahanSum, QuadratureResult};
use crate::special::log_gamma;

/// Largest `m + max(a, b)` accepted by [`quad_mean_capacity`]; beyond this
/// the recurrence values and the norms drift apart in magnitude enough to
/// eat the 1e-10 convergence budget.
const STABLE_KERNEL_LIMIT: u32 = 60;

/// Degree and weight exponents of a Jacobi polynomial J_k^(a,b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    /// Polynomial degree.
    pub k: u32,
    /// Exponent of (1-x) in the weight.
    pub a: f64,
    /// Exponent of (1+x) in the weight.
    pub b: f64,
}

impl JacobiParams {
    /// Validates the weight exponents; orthogonality on [-1, 1] requires
    /// `a, b > -1`.
    pub fn new(k: u32, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > -1.0 && b > -1.0) {
            return Err(Error::Domain(format!(
                "Jacobi weight exponents must exceed -1, got a={a}, b={b}"
            )));
        }
        Ok(Self { k, a, b })
    }
}

/// Runs the three-term recurrence from degree 0 through `kmax`, handing
/// each (degree, value) pair to `visit`. The recurrence coefficients stay
/// strictly positive for a, b > -1, so no division can blow up.
fn jacobi_run(kmax: u32, a: f64, b: f64, x: f64, mut visit: impl FnMut(u32, f64)) {
    let mut prev = 1.0;
    visit(0, prev);
    if kmax == 0 {
        return;
    }
    let mut cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    visit(1, cur);
    for k in 2..=kmax {
        let kf = f64::from(k);
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
        visit(k, cur);
    }
}

/// Evaluates J_k^(a,b)(x) by the three-term recurrence.
///
/// The recurrence is the numerically stable route at runtime; the explicit
/// series representations lose digits to factorial cancellation beyond
/// degree ~15 and survive only as low-degree cross-checks in the tests.
pub fn jacobi_poly(params: JacobiParams, x: f64) -> f64 {
    debug_assert!((-1.0..=1.0).contains(&x), "x = {x} outside [-1, 1]");
    let mut out = 1.0;
    jacobi_run(params.k, params.a, params.b, x, |k, v| {
        if k == params.k {
            out = v;
        }
    });
    out
}

/// Normalization of J_k^(a,b) under the weight ((1-x)/2)^a ((1+x)/2)^b on
/// [-1, 1], evaluated as a gamma-log ratio.
pub fn norm_h(k: u32, a: f64, b: f64) -> f64 {
    debug_assert!(a > -1.0 && b > -1.0);
    let lg = |x: f64| log_gamma(x).expect("positive argument for a, b > -1");
    if k == 0 {
        // Folding (a+b+1)*Gamma(a+b+1) into Gamma(a+b+2) keeps the k = 0
        // norm finite down to a+b = -2.
        return 2.0 * (lg(a + 1.0) + lg(b + 1.0) - lg(a + b + 2.0)).exp();
    }
    let kf = f64::from(k);
    2.0 * (lg(kf + a + 1.0) + lg(kf + b + 1.0) - lg(kf + 1.0) - lg(kf + a + b + 1.0)).exp()
        / (2.0 * kf + a + b + 1.0)
}

/// Normalization of the even-degree polynomial J_{2k}^(a,a) under the
/// weight ((1-x^2)/4)^a on [0, 1].
pub fn norm_h_even(k: u32, a: f64) -> f64 {
    debug_assert!(a > -1.0);
    let lg = |x: f64| log_gamma(x).expect("positive argument for a > -1");
    if k == 0 {
        return (2.0 * lg(a + 1.0) - lg(2.0 * a + 2.0)).exp();
    }
    let kf = 2.0 * f64::from(k);
    (2.0 * lg(kf + a + 1.0) - lg(kf + 1.0) - lg(kf + 2.0 * a + 1.0)).exp()
        / (2.0 * kf + 2.0 * a + 1.0)
}

/// Diagonal correlation kernel of the fixed-particle-number ensemble:
/// K(x,x) = w(x) * sum_{k<m} J_k^(a,b)(x)^2 / h_k on [-1, 1].
pub fn kernel_fixed(x: f64, m: u32, a: f64, b: f64) -> f64 {
    debug_assert!(m >= 1);
    debug_assert!((-1.0..=1.0).contains(&x), "x = {x} outside [-1, 1]");
    let w = ((1.0 - x) / 2.0).powf(a) * ((1.0 + x) / 2.0).powf(b);
    let mut sum = KahanSum::default();
    jacobi_run(m - 1, a, b, x, |k, v| sum.add(v * v / norm_h(k, a, b)));
    w * sum.total()
}

/// Diagonal correlation kernel of the arbitrary-particle-number ensemble:
/// K(x,x) = ((1-x^2)/4)^a * sum_{k<m} J_{2k}^(a,a)(x)^2 / h_k on [0, 1].
pub fn kernel_arbitrary(x: f64, m: u32, a: f64) -> f64 {
    debug_assert!(m >= 1);
    debug_assert!((0.0..=1.0).contains(&x), "x = {x} outside [0, 1]");
    let w = ((1.0 - x * x) / 4.0).powf(a);
    let mut sum = KahanSum::default();
    jacobi_run(2 * (m - 1), a, a, x, |k, v| {
        if k % 2 == 0 {
            sum.add(v * v / norm_h_even(k / 2, a));
        }
    });
    w * sum.total()
}

/// Confluent Christoffel-Darboux form of [`kernel_fixed`]: the m-term sum
/// collapses to two products of neighboring-degree polynomials.
pub fn kernel_fixed_cd(x: f64, m: u32, a: f64, b: f64) -> f64 {
    debug_assert!(m >= 1);
    let w = ((1.0 - x) / 2.0).powf(a) * ((1.0 + x) / 2.0).powf(b);
    let mf = f64::from(m);
    let s = a + b + 2.0 * mf;
    let denom = norm_h(m - 1, a, b) * (s - 1.0) * s;
    let a1 = mf * (a + b + mf) * (a + b + mf + 1.0) / denom;
    let a2 = mf * (a + b + mf) * (a + b + mf) / denom;
    let up = |k: u32| jacobi_poly(JacobiParams { k, a: a + 1.0, b: b + 1.0 }, x);
    let base = |k: u32| jacobi_poly(JacobiParams { k, a, b }, x);
    // Degree -1 is an empty product; with it the formula covers m = 1.
    let second = if m >= 2 { up(m - 2) * base(m) } else { 0.0 };
    w * (a1 * up(m - 1) * base(m - 1) - a2 * second)
}

/// Evaluates the mean capacity by tanh-sinh quadrature of u against the
/// ensemble's correlation kernel. Independent of the closed forms.
///
/// # Errors
///
/// [`Error::Domain`] when `m + max(a, b)` exceeds the stable-kernel limit
/// of 60, plus anything [`integrate`] reports (in particular the
/// tolerance error when `levels` is too small to converge).
pub fn quad_mean_capacity(spec: &EnsembleSpec, levels: u32) -> Result<QuadratureResult> {
    match *spec {
        EnsembleSpec::Fixed { m, n, p } => {
            let a = n - p;
            let b = p - m;
            if m + a.max(b) > STABLE_KERNEL_LIMIT {
                return Err(Error::Domain(format!(
                    "kernel quadrature limited to m + max(a, b) <= {STABLE_KERNEL_LIMIT}, \
                     got {} for {spec}",
                    m + a.max(b)
                )));
            }
            let (af, bf) = (f64::from(a), f64::from(b));
            integrate(
                |x| capacity_u(x) * kernel_fixed(x, m, af, bf),
                -1.0,
                1.0,
                levels,
            )
        }
        EnsembleSpec::Arbitrary { m, n } => {
            let a = n - m;
            if m + a > STABLE_KERNEL_LIMIT {
                return Err(Error::Domain(format!(
                    "kernel quadrature limited to m + (n - m) <= {STABLE_KERNEL_LIMIT}, \
                     got {} for {spec}",
                    m + a
                )));
            }
            let af = f64::from(a);
            integrate(
                |x| capacity_u(x) * kernel_arbitrary(x, m, af),
                0.0,
                1.0,
                levels,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{mean_capacity_arbitrary, mean_capacity_fixed};
    use crate::special::{pochhammer, PI_SQUARED};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn weight(x: f64, a: f64, b: f64) -> f64 {
        ((1.0 - x) / 2.0).powf(a) * ((1.0 + x) / 2.0).powf(b)
    }

    fn factorial(n: u32) -> f64 {
        pochhammer(1.0, n)
    }

    /// Hypergeometric-type series in powers of (1+x)/2.
    fn jacobi_series_hypergeometric(k: u32, a: f64, b: f64, x: f64) -> f64 {
        let kf = f64::from(k);
        let mut sum = 0.0;
        for i in 0..=k {
            sum += pochhammer(-kf, i) * pochhammer(kf + a + b + 1.0, i)
                / (pochhammer(b + 1.0, i) * factorial(i))
                * ((1.0 + x) / 2.0).powi(i as i32);
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * pochhammer(b + 1.0, k) / factorial(k) * sum
    }

    /// Binomial-type double-endpoint series.
    fn jacobi_series_binomial(k: u32, a: f64, b: f64, x: f64) -> f64 {
        let kf = f64::from(k);
        let mut sum = 0.0;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * pochhammer(a + f64::from(i) + 1.0, k - i)
                * pochhammer(kf + b - f64::from(i) + 1.0, i)
                / (factorial(i) * factorial(k - i))
                * ((1.0 - x) / 2.0).powi(i as i32)
                * ((1.0 + x) / 2.0).powi((k - i) as i32);
        }
        sum
    }

    #[test]
    fn recurrence_agrees_with_both_series() {
        let params = [(0.0, 0.0), (1.0, 2.0), (0.5, 1.7), (2.3, 0.4)];
        let xs = [-0.9, -0.3, 0.2, 0.7];
        for &(a, b) in &params {
            for k in 0..=8 {
                for &x in &xs {
                    let rec = jacobi_poly(JacobiParams { k, a, b }, x);
                    let s1 = jacobi_series_hypergeometric(k, a, b, x);
                    let s2 = jacobi_series_binomial(k, a, b, x);
                    let scale = rec.abs().max(1.0);
                    assert!(
                        (rec - s1).abs() < 1e-10 * scale,
                        "series 1 mismatch at k={k}, a={a}, b={b}, x={x}: {rec} vs {s1}"
                    );
                    assert!(
                        (rec - s2).abs() < 1e-10 * scale,
                        "series 2 mismatch at k={k}, a={a}, b={b}, x={x}: {rec} vs {s2}"
                    );
                }
            }
        }
    }

    #[test]
    fn degree_zero_and_one() {
        let p = JacobiParams::new(0, 1.3, -0.2).unwrap();
        assert_eq!(jacobi_poly(p, 0.4), 1.0);
        let p = JacobiParams::new(1, 1.3, -0.2).unwrap();
        let x = 0.4;
        let want = 0.5 * (1.3 - 0.2 + 2.0) * x + 0.5 * (1.3 + 0.2);
        assert!((jacobi_poly(p, x) - want).abs() < 1e-15);
    }

    #[test]
    fn invalid_weight_exponents_rejected() {
        assert!(JacobiParams::new(2, -1.0, 0.0).is_err());
        assert!(JacobiParams::new(2, 0.0, -1.5).is_err());
        assert!(JacobiParams::new(2, f64::NAN, 0.0).is_err());
        assert!(JacobiParams::new(2, 0.0, 0.0).is_ok());
    }

    #[test]
    fn norm_values() {
        assert!((norm_h(0, 0.0, 0.0) - 2.0).abs() < 1e-14);
        assert!((norm_h_even(0, 0.0) - 1.0).abs() < 1e-14);
        // h_1 at a=b=0 is 2/3 (Legendre), under the half-interval weight.
        assert!((norm_h(1, 0.0, 0.0) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn orthogonality_against_quadrature() {
        for a in 0..=2 {
            for b in 0..=2 {
                let (af, bf) = (f64::from(a), f64::from(b));
                for k in 0..=6u32 {
                    for l in k..=6u32 {
                        let f = |x: f64| {
                            weight(x, af, bf)
                                * jacobi_poly(JacobiParams { k, a: af, b: bf }, x)
                                * jacobi_poly(JacobiParams { k: l, a: af, b: bf }, x)
                        };
                        let r = integrate(f, -1.0, 1.0, 12).unwrap();
                        let want = if k == l { norm_h(k, af, bf) } else { 0.0 };
                        assert!(
                            (r.value - want).abs() < 1e-9,
                            "a={a}, b={b}, k={k}, l={l}: {} vs {want}",
                            r.value
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn even_norms_against_quadrature() {
        for a in 0..=2 {
            let af = f64::from(a);
            for k in 0..=4u32 {
                let f = |x: f64| {
                    let j = jacobi_poly(JacobiParams { k: 2 * k, a: af, b: af }, x);
                    ((1.0 - x * x) / 4.0).powf(af) * j * j
                };
                let r = integrate(f, 0.0, 1.0, 12).unwrap();
                let want = norm_h_even(k, af);
                assert!(
                    (r.value - want).abs() < 1e-9,
                    "a={a}, k={k}: {} vs {want}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn single_level_kernels_are_flat() {
        for &x in &[-0.99, -0.4, 0.0, 0.3, 0.95] {
            assert!((kernel_fixed(x, 1, 0.0, 0.0) - 0.5).abs() < 1e-15);
        }
        for &x in &[0.0, 0.25, 0.6, 0.99] {
            assert!((kernel_arbitrary(x, 1, 0.0) - 1.0).abs() < 1e-15);
        }
        // One mode of imbalance bends the arbitrary-ensemble density into
        // a semicircle-like arch 3/2 (1 - x^2).
        for &x in &[0.1, 0.5, 0.8] {
            let want = 1.5 * (1.0 - x * x);
            assert!((kernel_arbitrary(x, 1, 1.0) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn kernels_integrate_to_subsystem_dimension() {
        for m in 1..=5u32 {
            for a in 0..=3 {
                for b in 0..=3 {
                    let (af, bf) = (f64::from(a), f64::from(b));
                    let r =
                        integrate(|x| kernel_fixed(x, m, af, bf), -1.0, 1.0, 12).unwrap();
                    assert!(
                        (r.value - f64::from(m)).abs() < 1e-8,
                        "fixed m={m}, a={a}, b={b}: {}",
                        r.value
                    );
                }
                let af = f64::from(a);
                let r = integrate(|x| kernel_arbitrary(x, m, af), 0.0, 1.0, 12).unwrap();
                assert!(
                    (r.value - f64::from(m)).abs() < 1e-8,
                    "arbitrary m={m}, a={a}: {}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn confluent_form_matches_direct_sum() {
        let spot = (kernel_fixed_cd(0.3, 3, 1.0, 2.0) - kernel_fixed(0.3, 3, 1.0, 2.0)).abs();
        assert!(spot < 1e-9 * kernel_fixed(0.3, 3, 1.0, 2.0).abs());

        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for m in 1..=8u32 {
            let (a, b) = (rng.gen_range(0.0..2.5), rng.gen_range(0.0..2.5));
            for _ in 0..1000 {
                let x: f64 = rng.gen_range(-0.95..0.95);
                let direct = kernel_fixed(x, m, a, b);
                let cd = kernel_fixed_cd(x, m, a, b);
                assert!(
                    (cd - direct).abs() < 1e-9 * direct.abs().max(1e-12),
                    "m={m}, a={a}, b={b}, x={x}: {cd} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn quadrature_oracle_matches_closed_forms() {
        let one = quad_mean_capacity(&EnsembleSpec::fixed(1, 1, 1).unwrap(), 12).unwrap();
        assert!((one.value - (PI_SQUARED / 18.0 - 1.0 / 3.0)).abs() < 1e-10);

        let same = quad_mean_capacity(&EnsembleSpec::arbitrary(1, 1).unwrap(), 12).unwrap();
        assert!((same.value - one.value).abs() < 1e-10);

        let q = quad_mean_capacity(&EnsembleSpec::fixed(3, 5, 4).unwrap(), 12).unwrap();
        let e = mean_capacity_fixed(3, 5, 4).unwrap().float_value;
        assert!((q.value - e).abs() < 1e-8, "{} vs {e}", q.value);

        let q = quad_mean_capacity(&EnsembleSpec::arbitrary(1, 2).unwrap(), 12).unwrap();
        let e = mean_capacity_arbitrary(1, 2).unwrap().float_value;
        assert!(q.value > 0.0 && (q.value - e).abs() < 1e-8, "{} vs {e}", q.value);
    }

    #[test]
    fn oversized_kernel_parameters_rejected() {
        let spec = EnsembleSpec::fixed(58, 120, 61).unwrap();
        assert!(matches!(
            quad_mean_capacity(&spec, 12),
            Err(Error::Domain(_))
        ));
        let spec = EnsembleSpec::arbitrary(40, 80).unwrap();
        assert!(matches!(
            quad_mean_capacity(&spec, 12),
            Err(Error::Domain(_))
        ));
    }

    proptest! {
        #[test]
        fn parity_relation(
            k in 0u32..=10,
            a in -0.9f64..3.0,
            b in -0.9f64..3.0,
            x in -1.0f64..1.0,
        ) {
            let lhs = jacobi_poly(JacobiParams { k, a, b }, -x);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign * jacobi_poly(JacobiParams { k, a: b, b: a }, x);
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() < 1e-12 * scale);
        }

        #[test]
        fn kernels_stay_nonnegative(
            m in 1u32..=6,
            a in 0u32..=3,
            b in 0u32..=3,
            x in -1.0f64..1.0,
        ) {
            prop_assert!(kernel_fixed(x, m, f64::from(a), f64::from(b)) >= 0.0);
            prop_assert!(kernel_arbitrary(x.abs(), m, f64::from(a)) >= 0.0);
        }
    }
}
