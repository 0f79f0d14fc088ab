//! Exact symbolic values of the form `q0 + q_gamma * gamma + q_pi2 * pi^2`
//! with arbitrary-precision rational coefficients.
//!
//! Every closed-form mean capacity in this crate lives in that
//! three-dimensional space: polygamma functions at integer arguments reduce
//! to harmonic numbers plus `gamma` or `pi^2/6`, and the surrounding algebra
//! is rational. Carrying the three coefficients exactly makes cancellation
//! theorems checkable as identities on rationals instead of float residuals;
//! in particular the `gamma` coefficient of a physical mean capacity must
//! vanish identically.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::special::{EULER_GAMMA, PI_SQUARED};

/// A number `q0 + q_gamma * gamma + q_pi2 * pi^2` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue {
    /// Rational part.
    pub q0: BigRational,
    /// Coefficient of the Euler-Mascheroni constant.
    pub q_gamma: BigRational,
    /// Coefficient of pi^2.
    pub q_pi2: BigRational,
}

impl ExactValue {
    pub fn new(q0: BigRational, q_gamma: BigRational, q_pi2: BigRational) -> Self {
        Self { q0, q_gamma, q_pi2 }
    }

    pub fn zero() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Purely rational value `num / den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        let mut v = Self::zero();
        v.q0 = big_ratio(num, den);
        v
    }

    /// True when both transcendental coefficients vanish.
    pub fn is_rational(&self) -> bool {
        self.q_gamma.is_zero() && self.q_pi2.is_zero()
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.q0 * c, &self.q_gamma * c, &self.q_pi2 * c)
    }

    /// Product, defined only while it stays inside the representable space:
    /// at least one factor must be purely rational.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_rational() {
            Ok(other.scale(&self.q0))
        } else if other.is_rational() {
            Ok(self.scale(&other.q0))
        } else {
            Err(Error::Domain(
                "product of two non-rational exact values leaves the q0 + q_gamma*gamma + q_pi2*pi^2 space"
                    .into(),
            ))
        }
    }

    /// Round to the nearest f64.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.q0)
            + rational_to_f64(&self.q_gamma) * EULER_GAMMA
            + rational_to_f64(&self.q_pi2) * PI_SQUARED
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(
            self.q0 + rhs.q0,
            self.q_gamma + rhs.q_gamma,
            self.q_pi2 + rhs.q_pi2,
        )
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(
            self.q0 - rhs.q0,
            self.q_gamma - rhs.q_gamma,
            self.q_pi2 - rhs.q_pi2,
        )
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::new(-self.q0, -self.q_gamma, -self.q_pi2)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q0)?;
        if !self.q_gamma.is_zero() {
            write!(f, " + ({})*gamma", self.q_gamma)?;
        }
        if !self.q_pi2.is_zero() {
            write!(f, " + ({})*pi^2", self.q_pi2)?;
        }
        Ok(())
    }
}

/// Convenience constructor for small rationals.
pub(crate) fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Harmonic number H_n = sum_{k=1..n} 1/k, H_0 = 0.
pub(crate) fn harmonic(n: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    acc
}

/// Second-order harmonic number sum_{k=1..n} 1/k^2.
pub(crate) fn harmonic2(n: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(u64::from(k) * u64::from(k)));
    }
    acc
}

/// psi_0 at a positive integer: psi_0(n) = H_{n-1} - gamma.
pub fn digamma_exact(n: u32) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::Domain("digamma_exact requires n >= 1".into()));
    }
    Ok(ExactValue::new(
        harmonic(n - 1),
        -BigRational::one(),
        BigRational::zero(),
    ))
}

/// psi_1 at a positive integer: psi_1(n) = pi^2/6 - sum_{k=1..n-1} 1/k^2.
pub fn trigamma_exact(n: u32) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::Domain("trigamma_exact requires n >= 1".into()));
    }
    Ok(ExactValue::new(
        -harmonic2(n - 1),
        BigRational::zero(),
        big_ratio(1, 6),
    ))
}

/// Nearest f64 to an arbitrary-precision rational.
///
/// `BigRational::to_f64` converts numerator and denominator separately, so a
/// ratio of two huge integers turns into inf/inf = NaN even when the value
/// itself is tame. Rescale by a power of two until the integer quotient
/// carries 64-65 significant bits, convert that, and undo the scaling; the
/// result is within about one ulp of the true value.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let n = r.numer().abs();
    let d = r.denom().clone();
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as u64) / &d
    } else {
        n / (&d << (-shift) as u64)
    };
    let x = q.to_f64().unwrap_or(f64::INFINITY) * 2.0f64.powi(-shift as i32);
    if r.is_negative() {
        -x
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special;
    use proptest::prelude::*;
    use std::str::FromStr;

    #[test]
    fn digamma_exact_matches_float_branch() {
        for n in 1..=40u32 {
            let exact = digamma_exact(n).unwrap().to_f64();
            let float = special::digamma(f64::from(n)).unwrap();
            assert!(
                (exact - float).abs() <= 1e-13 * float.abs().max(1.0),
                "n={n}: {exact} vs {float}"
            );
        }
    }

    #[test]
    fn trigamma_exact_matches_float_branch() {
        for n in 1..=40u32 {
            let exact = trigamma_exact(n).unwrap().to_f64();
            let float = special::trigamma(f64::from(n)).unwrap();
            assert!(
                (exact - float).abs() <= 1e-13 * float.abs().max(1.0),
                "n={n}: {exact} vs {float}"
            );
        }
    }

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0), BigRational::zero());
        assert_eq!(harmonic(4), big_ratio(25, 12));
        assert_eq!(harmonic2(2), big_ratio(5, 4));
    }

    #[test]
    fn try_mul_requires_a_rational_factor() {
        let g = digamma_exact(1).unwrap(); // -gamma
        let p = trigamma_exact(1).unwrap(); // pi^2/6
        assert!(g.try_mul(&p).is_err());
        let two = ExactValue::from_integer(2);
        let doubled = two.try_mul(&p).unwrap();
        assert_eq!(doubled.q_pi2, big_ratio(1, 3));
    }

    #[test]
    fn display_is_compact() {
        let v = ExactValue::new(big_ratio(-1, 3), BigRational::zero(), big_ratio(1, 18));
        assert_eq!(v.to_string(), "-1/3 + (1/18)*pi^2");
        assert_eq!(ExactValue::from_integer(0).to_string(), "0");
    }

    #[test]
    fn rational_to_f64_handles_huge_terms() {
        // Numerator and denominator each overflow f64 on their own.
        let n = BigInt::from_str("3").unwrap().pow(700);
        let d = BigInt::from_str("2").unwrap().pow(1109);
        let r = BigRational::new(n, d); // ~ 0.9374...
        let x = rational_to_f64(&r);
        assert!(x > 0.0 && x.is_finite());
        // Cross-check against log-space evaluation.
        let expect = (700.0 * 3f64.ln() - 1109.0 * 2f64.ln()).exp();
        assert!((x - expect).abs() <= 1e-13 * expect);
    }

    #[test]
    fn rational_to_f64_exact_dyadics() {
        assert_eq!(rational_to_f64(&big_ratio(7, 8)), 0.875);
        assert_eq!(rational_to_f64(&big_ratio(-1, 4)), -0.25);
        assert_eq!(rational_to_f64(&BigRational::zero()), 0.0);
    }

    proptest! {
        #[test]
        fn rational_to_f64_matches_native_division(p in -1_000_000_000i64..1_000_000_000, q in 1i64..1_000_000_000) {
            let got = rational_to_f64(&big_ratio(p, q));
            let want = p as f64 / q as f64;
            // Both roundings may differ by an ulp each.
            prop_assert!((got - want).abs() <= 2.0 * f64::EPSILON * want.abs());
        }

        #[test]
        fn addition_is_coefficientwise(a in -50i64..50, b in -50i64..50, c in 1i64..20) {
            let x = ExactValue::new(big_ratio(a, c), big_ratio(b, c), big_ratio(a - b, c));
            let y = x.clone() + x.clone();
            prop_assert_eq!(y, x.scale(&big_ratio(2, 1)));
        }
    }
}
