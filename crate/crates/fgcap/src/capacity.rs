//! Closed-form mean entanglement capacity for both ensembles, evaluated in
//! exact `ExactValue` arithmetic with a float projection.
//!
//! The fixed-particle-number mean is a symmetrized sum `F(a,b) + F(b,a)`
//! of a polygamma/finite-sum expression; the arbitrary-particle-number mean
//! is a single longer expression of the same ingredients. Both live in the
//! space `q0 + q_gamma*gamma + q_pi2*pi^2`: digamma values enter only as
//! differences or with antisymmetric coefficients, so the `gamma`
//! coefficient of every physical result cancels identically (asserted in
//! debug builds, tested exhaustively).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{big_ratio, digamma_exact, trigamma_exact, ExactValue};

/// Capacity contribution of a single correlation level x in [-1, 1]:
/// u(x) = (1 - x^2)/4 * (ln((1+x)/(1-x)))^2, extended by its limit 0 at the
/// endpoints. The log1p split keeps full precision near |x| = 1.
pub fn capacity_u(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 0.0;
    }
    let l = x.ln_1p() - (-x).ln_1p();
    0.25 * (1.0 - x * x) * l * l
}

/// Which random-state ensemble a computation targets.
///
/// `Fixed` is a bipartite state of `p` particles in `m + n` modes restricted
/// to the `m`-mode subsystem (levels in [-1, 1]); `Arbitrary` drops the
/// particle-number constraint (levels in [0, 1]). Both require
/// `1 <= m <= n`, and `Fixed` additionally `m <= p <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleSpec {
    Fixed { m: u32, n: u32, p: u32 },
    Arbitrary { m: u32, n: u32 },
}

impl EnsembleSpec {
    pub fn fixed(m: u32, n: u32, p: u32) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::Domain(format!(
                "fixed ensemble requires 1 <= m <= n, got m={m}, n={n}"
            )));
        }
        if p < m || p > n {
            return Err(Error::Domain(format!(
                "fixed ensemble requires m <= p <= n, got m={m}, n={n}, p={p}"
            )));
        }
        Ok(Self::Fixed { m, n, p })
    }

    pub fn arbitrary(m: u32, n: u32) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::Domain(format!(
                "arbitrary ensemble requires 1 <= m <= n, got m={m}, n={n}"
            )));
        }
        Ok(Self::Arbitrary { m, n })
    }

    /// Subsystem dimension m (the number of correlation levels).
    pub fn subsystem_dim(&self) -> u32 {
        match *self {
            Self::Fixed { m, .. } | Self::Arbitrary { m, .. } => m,
        }
    }
}

impl std::fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Self::Fixed { m, n, p } => write!(f, "fixed(m={m}, n={n}, p={p})"),
            Self::Arbitrary { m, n } => write!(f, "arbitrary(m={m}, n={n})"),
        }
    }
}

/// A closed-form mean capacity: the exact value and its float projection.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub spec: EnsembleSpec,
    pub exact: ExactValue,
    pub float_value: f64,
}

impl CapacityResult {
    fn new(spec: EnsembleSpec, exact: ExactValue) -> Self {
        let float_value = exact.to_f64();
        Self {
            spec,
            exact,
            float_value,
        }
    }
}

fn rational(q: BigRational) -> ExactValue {
    ExactValue::new(q, BigRational::zero(), BigRational::zero())
}

/// Product start*(start+1)*...*(start+len-1) as a big integer.
fn poch_big(start: u32, len: u32) -> BigInt {
    let mut p = BigInt::one();
    for i in 0..len {
        p *= BigInt::from(u64::from(start) + u64::from(i));
    }
    p
}

/// The core finite sum Phi_{c,d} = (c!/(c+d)!) sum_{k=1}^{c}
/// ((c+d-k)!/(c-k)!) / k^2, exact; Phi_{0,d} = 0 (empty sum). Tends to
/// pi^2/6 as c grows at fixed d.
pub fn phi(c: u32, d: u32) -> BigRational {
    // Factorial ratios reduced to Pochhammer products of d factors each:
    // term_k = poch(c-k+1, d) / (poch(c+1, d) * k^2).
    let denom = poch_big(c + 1, d);
    let mut acc = BigRational::zero();
    for k in 1..=c {
        let num = poch_big(c - k + 1, d);
        acc += BigRational::new(num, &denom * BigInt::from(u64::from(k) * u64::from(k)));
    }
    acc
}

/// The four rational coefficients of the fixed-ensemble building block F.
#[allow(clippy::type_complexity)]
pub fn coefficients_alpha(
    a: u32,
    b: u32,
    m: u32,
) -> Result<(BigRational, BigRational, BigRational, BigRational)> {
    if m == 0 {
        return Err(Error::Domain("coefficients_alpha requires m >= 1".into()));
    }
    let (a, b, m) = (i128::from(a), i128::from(b), i128::from(m));
    let r = a + b + 2 * m - 1; // >= 1 whenever m >= 1
    let poch3 = r * (r + 1) * (r + 2);
    let poch2 = r * (r + 1);
    let big = |n: i128, d: i128| BigRational::new(BigInt::from(n), BigInt::from(d));
    let alpha0 = big(m * (a + m) * (b + m) * (a + b + m), poch3);
    let alpha1 = big((a + b) * (a + m - 1) * (a + m), poch2);
    let alpha2 = big(
        -a * (a * a + a * b + 2 * a * m - a + 2 * b * m - b + 2 * m * m - 2 * m),
        poch2,
    );
    let alpha3 = big(m * (a + m - 1), poch2) - big(m, 2);
    Ok((alpha0, alpha1, alpha2, alpha3))
}

/// The fixed-ensemble building block
/// F(a,b) = alpha0 * [2 Phi_{a+m,b} + 2 Phi_{m,a} + psi1(a+b+m+1)
///          + psi1(a+m+1) + (psi0(a+m+1) - psi0(a+b+m+1))^2 - psi1(1)]
///          + alpha1 psi0(a+m+1) + alpha2 psi0(a+1) + alpha3.
///
/// F alone carries a gamma term through alpha1 + alpha2; it cancels in the
/// symmetrized sum F(a,b) + F(b,a) because alpha1 + alpha2 is antisymmetric
/// under a <-> b.
pub fn f_function(a: u32, b: u32, m: u32) -> Result<ExactValue> {
    let (alpha0, alpha1, alpha2, alpha3) = coefficients_alpha(a, b, m)?;
    let two = big_ratio(2, 1);
    // Difference of integer digammas: purely rational, so the square stays
    // in the representable space.
    let dd = digamma_exact(a + m + 1)? - digamma_exact(a + b + m + 1)?;
    let bracket = rational(phi(a + m, b) * &two)
        + rational(phi(m, a) * &two)
        + trigamma_exact(a + b + m + 1)?
        + trigamma_exact(a + m + 1)?
        + dd.try_mul(&dd)?
        - trigamma_exact(1)?;
    Ok(bracket.scale(&alpha0)
        + digamma_exact(a + m + 1)?.scale(&alpha1)
        + digamma_exact(a + 1)?.scale(&alpha2)
        + rational(alpha3))
}

/// Mean capacity for the fixed-particle-number ensemble:
/// E[C] = F(a,b) + F(b,a) with a = n-p, b = p-m.
pub fn mean_capacity_fixed(m: u32, n: u32, p: u32) -> Result<CapacityResult> {
    let spec = EnsembleSpec::fixed(m, n, p)?;
    let a = n - p;
    let b = p - m;
    let exact = f_function(a, b, m)? + f_function(b, a, m)?;
    debug_assert!(exact.q_gamma.is_zero(), "gamma must cancel in E[C]");
    Ok(CapacityResult::new(spec, exact))
}

/// Remark-style closed forms for the balanced cases a = b in {0, 1, 2}
/// (that is, n = m + 2a and p = m + a), in the same exact arithmetic.
pub fn mean_capacity_fixed_special(a: u32, m: u32) -> Result<CapacityResult> {
    if m == 0 {
        return Err(Error::Domain(
            "mean_capacity_fixed_special requires m >= 1".into(),
        ));
    }
    let spec = EnsembleSpec::fixed(m, m + 2 * a, m + a)?;
    let mi = i128::from(m);
    let big = |n: i128, d: i128| BigRational::new(BigInt::from(n), BigInt::from(d));
    // psi1(m+1) - pi^2/4 appears in all three cases.
    let t = trigamma_exact(m + 1)?
        - ExactValue::new(BigRational::zero(), BigRational::zero(), big_ratio(1, 4));
    let exact = match a {
        0 => {
            let lead = big(-2 * mi * mi * mi, (2 * mi - 1) * (2 * mi + 1));
            let tail = big(2 * mi * mi - 2 * mi + 1, 2 * mi - 1);
            t.scale(&lead) - rational(tail)
        }
        1 => {
            let lead = big(
                -2 * mi * (mi + 1) * (mi + 2),
                (2 * mi + 1) * (2 * mi + 3),
            );
            let tail = big(mi * (2 * mi * (mi + 3) + 5), (mi + 1) * (2 * mi + 3));
            t.scale(&lead) - rational(tail)
        }
        2 => {
            let lead = big(
                -2 * mi * (mi + 2) * (mi + 4),
                (2 * mi + 3) * (2 * mi + 5),
            );
            // psi0(m+1) - psi0(1) = H_m, purely rational.
            let h = digamma_exact(m + 1)? - digamma_exact(1)?;
            let mid = h.scale(&big(4, (mi + 1) * (mi + 3)));
            let tail = big(
                mi * (mi * mi + 4 * mi + 5) * (4 * mi * mi * mi + 30 * mi * mi + 72 * mi + 57),
                (2 * mi + 3) * (2 * mi + 5) * (mi + 1) * (mi + 2) * (mi + 3),
            );
            t.scale(&lead) + mid - rational(tail)
        }
        _ => {
            return Err(Error::Domain(format!(
                "no special closed form for a = {a}; supported a: 0, 1, 2"
            )))
        }
    };
    debug_assert!(exact.q_gamma.is_zero());
    Ok(CapacityResult::new(spec, exact))
}

/// Leading coefficient of the arbitrary-ensemble mean:
/// beta = (2m-1)(2n-1) / (4m+4n-2).
pub fn coefficient_beta(m: u32, n: u32) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("coefficient_beta requires m, n >= 1".into()));
    }
    let (m, n) = (i128::from(m), i128::from(n));
    Ok(BigRational::new(
        BigInt::from((2 * m - 1) * (2 * n - 1)),
        BigInt::from(4 * m + 4 * n - 2),
    ))
}

/// Mean capacity for the arbitrary-particle-number ensemble.
///
/// The formula contains the term ((n-m)/2)(psi0(m+n) - psi0(n-m)), which at
/// n = m degenerates to 0 * psi0(0). Its limit is +1/2 (from
/// eps * psi0(eps) -> -1), and that convention is what the independent
/// quadrature oracle confirms at n = m.
pub fn mean_capacity_arbitrary(m: u32, n: u32) -> Result<CapacityResult> {
    let spec = EnsembleSpec::arbitrary(m, n)?;
    let beta = coefficient_beta(m, n)?;
    let half_beta = &beta * big_ratio(1, 2);
    let eighth = big_ratio(1, 8);

    let phis_beta = rational((phi(2 * m - 1, n - m) + phi(m + n - 1, n - m)) * &beta);
    let phis_quarter = rational((phi(m - 1, n) + phi(m - 1, n - m)) * big_ratio(1, 4));

    let tri_mn = trigamma_exact(m + n)?.scale(&(&half_beta + &eighth));
    let tri_n = trigamma_exact(n)?.scale(&eighth);

    // (psi0(2n) - psi0(m+n))^2 is a squared rational difference.
    let d1 = digamma_exact(2 * n)? - digamma_exact(m + n)?;
    let inner = d1.try_mul(&d1)? + trigamma_exact(2 * n)? - trigamma_exact(1)?;
    let inner = inner.scale(&half_beta);

    let d2 = digamma_exact(n)? - digamma_exact(m + n)?;
    let sq2 = d2.try_mul(&d2)?.scale(&eighth);

    let tail = if n == m {
        rational(big_ratio(1, 2))
    } else {
        (digamma_exact(m + n)? - digamma_exact(n - m)?)
            .scale(&big_ratio(i64::from(n - m), 2))
    };

    let exact = phis_beta + phis_quarter + tri_mn + tri_n + inner + sq2 + tail
        - ExactValue::from_integer(i64::from(m));
    debug_assert!(exact.q_gamma.is_zero(), "gamma must cancel in E[C]");
    Ok(CapacityResult::new(spec, exact))
}

/// Closed-form mean capacity for any valid spec.
pub fn mean_capacity(spec: &EnsembleSpec) -> Result<CapacityResult> {
    match *spec {
        EnsembleSpec::Fixed { m, n, p } => mean_capacity_fixed(m, n, p),
        EnsembleSpec::Arbitrary { m, n } => mean_capacity_arbitrary(m, n),
    }
}

/// Large-system limit of E[C]/m at fixed n-m: pi^2/8 - 1.
pub fn asymptotic_limit() -> ExactValue {
    ExactValue::new(big_ratio(-1, 1), BigRational::zero(), big_ratio(1, 8))
}

/// Signed distance of the per-dimension mean from its limit:
/// E[C]/m - (pi^2/8 - 1). Negative for finite sizes (the limit is
/// approached from below); |gap| shrinks as m grows at fixed n-m.
pub fn asymptotic_gap(spec: &EnsembleSpec) -> Result<f64> {
    let result = mean_capacity(spec)?;
    let m = f64::from(spec.subsystem_dim());
    Ok(result.float_value / m - asymptotic_limit().to_f64())
}
