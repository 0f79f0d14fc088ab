//! Machine-checkable catalog of every summation, integral, and polygamma
//! identity the closed-form mean capacities rest on.
//!
//! Each identity is checked numerically, never symbolically: both sides are
//! evaluated by independent code paths (finite sums of gamma/polygamma terms
//! in sign-tracked log space, integrals by tanh-sinh quadrature) and compared
//! through the scale-aware residual `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
//! The point of the suite is falsification power for the exact formulas in
//! [`crate::capacity`], so checkers favor real-valued parameters wherever the
//! identity's domain allows them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::capacity::phi;
use crate::error::{Error, Result};
use crate::exact::{big_ratio, digamma_exact, harmonic, rational_to_f64, ExactValue};
use crate::kernel::{jacobi_poly, norm_h, JacobiParams};
use crate::quad::integrate;
use crate::special::{
    digamma, digamma_any, gamma_reflect, is_gamma_pole, ln_gamma_signed, log_gamma, trigamma,
    trigamma_any, PI_SQUARED,
};

use num::rational::BigRational;
use num::Zero;

/// Residual bound for all exact identities.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Residual bound for the pole-expansion identities, which are truncated
/// series checked at a small offset rather than exact statements.
pub const EXPANSION_TOL: f64 = 1e-6;

/// Offset used when fuzzing the pole expansions. Small enough that the
/// dropped higher-order terms sit below [`EXPANSION_TOL`], large enough that
/// the leading pole term does not swallow the rest in f64.
pub const EXPANSION_EPS: f64 = 1e-5;

/// Quadrature refinement budget for the integral identities.
const QUAD_LEVELS: u32 = 12;

/// Upper bound on integer Pochhammer exponents evaluated by direct product.
const POCH_DIRECT_LIMIT: f64 = 64.0;

/// Every identity the exact capacity derivation depends on.
///
/// `B1`..`B14` are finite sums of digamma/trigamma/factorial terms against
/// closed forms; `Lemma1`..`Lemma4` equate two gamma-product sums; the `Si*`
/// entries give closed forms for weighted integrals of one or two Jacobi
/// polynomials; the rest cover the kernel algebra (confluent
/// Christoffel-Darboux, orthogonality, parity), the digamma/harmonic-number
/// reduction, the polygamma multiplication theorem, the alternative
/// factorial-ratio form of [`phi`], and the gamma/polygamma expansions
/// around their poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// Sum of digamma values at unit steps.
    B1,
    /// Sum of trigamma values at unit steps.
    B2,
    /// Sum of digamma over its own argument.
    B3,
    /// Sum of digamma at descending arguments over the index.
    B4,
    /// Sum of digamma at shifted ascending arguments over the index.
    B5,
    /// Sum of products of two digamma values.
    B6,
    /// Exchange relation for digamma sums with swapped rational weights.
    B7,
    /// Reflection relation for digamma at descending arguments.
    B8,
    /// Shift relation reducing a digamma sum's argument offset.
    B9,
    /// Sum of factorial ratios.
    B10,
    /// Sum of factorial ratios over the index.
    B11,
    /// Sum of factorial ratios over the squared index.
    B12,
    /// Sum of factorial ratios with a shifted denominator.
    B13,
    /// Factorial-ratio sum of `B13` shape carrying a digamma factor.
    B14,
    /// Gamma-product sum with a rational factor against a single sum.
    Lemma1,
    /// Gamma-product sum against a single sum, integer third parameter.
    Lemma2,
    /// Variant of `Lemma2` with an extra harmonic factor and digamma term.
    Lemma3,
    /// Two-parameter variant of `Lemma2` splitting into two single sums.
    Lemma4,
    /// Weighted integral of one Jacobi polynomial, weight matching its
    /// first exponent.
    SiAc,
    /// Weighted integral of a product of two Jacobi polynomials, weight
    /// matching the first polynomial's first exponent.
    SiAc2,
    /// Weighted integral of one Jacobi polynomial, both weight exponents
    /// free.
    SiCd,
    /// Weighted integral of a product of two Jacobi polynomials, both
    /// weight exponents free.
    SiDc2,
    /// Closed form for the unit-weight sum of reciprocal gamma products.
    Ofgi,
    /// Confluent Christoffel-Darboux form of the squared-polynomial sum.
    CdConfluent,
    /// Weighted orthogonality of Jacobi polynomials with the norm value.
    Orthogonality,
    /// Parity reflection swapping the two weight exponents.
    Parity,
    /// Digamma at a positive integer as a harmonic number (exact rationals).
    DigammaFiniteSum,
    /// Multiplication theorem for digamma.
    DuplicationPsi0,
    /// Multiplication theorem for trigamma.
    DuplicationPsi1,
    /// Alternative form of [`phi`] as digamma sums plus closed terms.
    PhiAlt,
    /// Gamma expansion around a non-positive integer pole.
    Pgna1,
    /// Digamma expansion around a non-positive integer pole.
    Pgna2,
    /// Trigamma expansion around a non-positive integer pole.
    Pgna3,
}

impl IdentityId {
    /// Catalog order; the fuzz report lists identities in this order.
    pub const ALL: [IdentityId; 33] = [
        IdentityId::B1,
        IdentityId::B2,
        IdentityId::B3,
        IdentityId::B4,
        IdentityId::B5,
        IdentityId::B6,
        IdentityId::B7,
        IdentityId::B8,
        IdentityId::B9,
        IdentityId::B10,
        IdentityId::B11,
        IdentityId::B12,
        IdentityId::B13,
        IdentityId::B14,
        IdentityId::Lemma1,
        IdentityId::Lemma2,
        IdentityId::Lemma3,
        IdentityId::Lemma4,
        IdentityId::SiAc,
        IdentityId::SiAc2,
        IdentityId::SiCd,
        IdentityId::SiDc2,
        IdentityId::Ofgi,
        IdentityId::CdConfluent,
        IdentityId::Orthogonality,
        IdentityId::Parity,
        IdentityId::DigammaFiniteSum,
        IdentityId::DuplicationPsi0,
        IdentityId::DuplicationPsi1,
        IdentityId::PhiAlt,
        IdentityId::Pgna1,
        IdentityId::Pgna2,
        IdentityId::Pgna3,
    ];

    /// Stable catalog name, used in reports and CLI output.
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::B1 => "B1",
            IdentityId::B2 => "B2",
            IdentityId::B3 => "B3",
            IdentityId::B4 => "B4",
            IdentityId::B5 => "B5",
            IdentityId::B6 => "B6",
            IdentityId::B7 => "B7",
            IdentityId::B8 => "B8",
            IdentityId::B9 => "B9",
            IdentityId::B10 => "B10",
            IdentityId::B11 => "B11",
            IdentityId::B12 => "B12",
            IdentityId::B13 => "B13",
            IdentityId::B14 => "B14",
            IdentityId::Lemma1 => "LEMMA1",
            IdentityId::Lemma2 => "LEMMA2",
            IdentityId::Lemma3 => "LEMMA3",
            IdentityId::Lemma4 => "LEMMA4",
            IdentityId::SiAc => "SI_AC",
            IdentityId::SiAc2 => "SI_AC2",
            IdentityId::SiCd => "SI_CD",
            IdentityId::SiDc2 => "SI_DC2",
            IdentityId::Ofgi => "OFGI",
            IdentityId::CdConfluent => "CD_CONFLUENT",
            IdentityId::Orthogonality => "ORTHOGONALITY",
            IdentityId::Parity => "PARITY",
            IdentityId::DigammaFiniteSum => "DIGAMMA_FINITE_SUM",
            IdentityId::DuplicationPsi0 => "DUPLICATION_PSI0",
            IdentityId::DuplicationPsi1 => "DUPLICATION_PSI1",
            IdentityId::PhiAlt => "PHI_ALT",
            IdentityId::Pgna1 => "PGNA1",
            IdentityId::Pgna2 => "PGNA2",
            IdentityId::Pgna3 => "PGNA3",
        }
    }

    /// Residual bound this identity must meet.
    pub fn tolerance(self) -> f64 {
        match self {
            IdentityId::Pgna1 | IdentityId::Pgna2 | IdentityId::Pgna3 => EXPANSION_TOL,
            _ => RESIDUAL_TOL,
        }
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Free parameters of an identity check.
///
/// The fields cover the union of the catalog's free symbols; each identity
/// reads only the ones it names (see [`check_identity`]). For the
/// two-polynomial integral identities `a`/`b` play the role of the first
/// polynomial's exponents and `a2`/`b2` the second's.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IdentityParams {
    /// First real parameter (integer-valued where the identity demands it).
    pub a: f64,
    /// Second real parameter.
    pub b: f64,
    /// Second polynomial's first exponent (two-polynomial integrals only).
    pub a2: f64,
    /// Second polynomial's second exponent (two-polynomial integrals only).
    pub b2: f64,
    /// Third real parameter.
    pub c: f64,
    /// Fourth real parameter.
    pub d: f64,
    /// Primary summation length / multiplication factor.
    pub m: u32,
    /// Secondary integer parameter (requires `n > m` where used).
    pub n: u32,
    /// Polynomial degree or evaluation point index.
    pub k: u32,
    /// Second polynomial degree / pole index / digamma argument.
    pub l: u32,
    /// First polynomial degree (two-polynomial integrals only).
    pub k1: u32,
    /// Second polynomial degree (two-polynomial integrals only).
    pub k2: u32,
    /// Evaluation abscissa in `[-1, 1]`.
    pub x: f64,
    /// Pole-expansion offset in `(0, 0.01]`.
    pub eps: f64,
}

/// Outcome of evaluating one identity at one parameter set.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// Which identity was checked.
    pub id: IdentityId,
    /// The parameter values actually read, under the identity's own symbol
    /// names.
    pub params: Vec<(&'static str, f64)>,
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
    /// `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
    pub residual: f64,
}

impl IdentityCheck {
    /// True when the residual meets the identity's tolerance.
    pub fn passed(&self) -> bool {
        self.residual < self.id.tolerance()
    }
}

/// Sign-tracked log-space product of gamma factors and plain values.
///
/// Gamma arguments in the lemma and integral identities reach `2m + a + b`
/// and overflow naive evaluation; carrying `ln |value|` and the sign keeps
/// every term representable. Division by a gamma pole yields an exact zero
/// (the reciprocal gamma vanishes there); multiplication by one is an error
/// because the product would be infinite.
#[derive(Debug, Clone, Copy)]
struct LogProd {
    ln: f64,
    sign: f64,
}

impl LogProd {
    fn one() -> Self {
        Self { ln: 0.0, sign: 1.0 }
    }

    fn mul_gamma(mut self, x: f64) -> Result<Self> {
        let (ln, sign) = ln_gamma_signed(x)?;
        self.ln += ln;
        self.sign *= sign;
        Ok(self)
    }

    fn div_gamma(mut self, x: f64) -> Result<Self> {
        if is_gamma_pole(x) {
            self.sign = 0.0;
            return Ok(self);
        }
        let (ln, sign) = ln_gamma_signed(x)?;
        self.ln -= ln;
        self.sign *= sign;
        Ok(self)
    }

    fn mul_val(mut self, v: f64) -> Self {
        if v == 0.0 {
            self.sign = 0.0;
        } else {
            self.ln += v.abs().ln();
            if v < 0.0 {
                self.sign = -self.sign;
            }
        }
        self
    }

    fn div_val(mut self, v: f64) -> Self {
        self.ln -= v.abs().ln();
        if v < 0.0 {
            self.sign = -self.sign;
        }
        self
    }

    /// Multiply by the Pochhammer factor `(x)_n = Gamma(x+n) / Gamma(x)`.
    ///
    /// A non-negative integer exponent is expanded as a direct product,
    /// which stays valid for non-positive bases where the gamma ratio has
    /// poles; real exponents (always paired with positive bases in this
    /// catalog) go through the gamma ratio.
    fn mul_poch(self, x: f64, n: f64) -> Result<Self> {
        if n >= 0.0 && n.fract() == 0.0 && n <= POCH_DIRECT_LIMIT {
            let mut acc = self;
            let mut t = 0.0;
            while t < n {
                acc = acc.mul_val(x + t);
                t += 1.0;
            }
            return Ok(acc);
        }
        self.mul_gamma(x + n)?.div_gamma(x)
    }

    /// Divide by the Pochhammer factor `(x)_n`.
    fn div_poch(self, x: f64, n: f64) -> Result<Self> {
        if n >= 0.0 && n.fract() == 0.0 && n <= POCH_DIRECT_LIMIT {
            let mut acc = self;
            let mut t = 0.0;
            while t < n {
                acc = acc.div_val(x + t);
                t += 1.0;
            }
            return Ok(acc);
        }
        self.div_gamma(x + n)?.mul_gamma(x)
    }

    fn neg_if(mut self, odd: bool) -> Self {
        if odd {
            self.sign = -self.sign;
        }
        self
    }

    fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln.exp()
        }
    }
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn residual_of(lhs: f64, rhs: f64) -> Result<f64> {
    let r = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Numerical(format!(
            "identity residual not finite (lhs = {lhs}, rhs = {rhs})"
        )))
    }
}

/// Require `v` to be a non-negative integer small enough to loop over.
fn as_index(v: f64, what: &str) -> Result<u32> {
    if v.fract() == 0.0 && (0.0..=1e6).contains(&v) {
        Ok(v as u32)
    } else {
        Err(domain(format!(
            "{what} must be a non-negative integer, got {v}"
        )))
    }
}

/// Evaluate one identity at the given parameters.
///
/// Both sides are computed by direct evaluation of the identity's statement;
/// no rearrangement shared between the sides is allowed, so an error on
/// either side shows up as a residual. Parameters outside the identity's
/// stated domain produce a domain error naming the violated constraint.
pub fn check_identity(id: IdentityId, params: &IdentityParams) -> Result<IdentityCheck> {
    let (lhs, rhs) = match id {
        IdentityId::B1 => check_b1(params)?,
        IdentityId::B2 => check_b2(params)?,
        IdentityId::B3 => check_b3(params)?,
        IdentityId::B4 => check_b4(params)?,
        IdentityId::B5 => check_b5(params)?,
        IdentityId::B6 => check_b6(params)?,
        IdentityId::B7 => check_b7(params)?,
        IdentityId::B8 => check_b8(params)?,
        IdentityId::B9 => check_b9(params)?,
        IdentityId::B10 => check_b10(params)?,
        IdentityId::B11 => check_b11(params)?,
        IdentityId::B12 => check_b12(params)?,
        IdentityId::B13 => check_b13(params)?,
        IdentityId::B14 => check_b14(params)?,
        IdentityId::Lemma1 => check_lemma1(params)?,
        IdentityId::Lemma2 => check_lemma2(params)?,
        IdentityId::Lemma3 => check_lemma3(params)?,
        IdentityId::Lemma4 => check_lemma4(params)?,
        IdentityId::SiAc => check_si_ac(params)?,
        IdentityId::SiAc2 => check_si_ac2(params)?,
        IdentityId::SiCd => check_si_cd(params)?,
        IdentityId::SiDc2 => check_si_dc2(params)?,
        IdentityId::Ofgi => check_ofgi(params)?,
        IdentityId::CdConfluent => check_cd_confluent(params)?,
        IdentityId::Orthogonality => check_orthogonality(params)?,
        IdentityId::Parity => check_parity(params)?,
        IdentityId::DigammaFiniteSum => check_digamma_finite_sum(params)?,
        IdentityId::DuplicationPsi0 => check_duplication(params, false)?,
        IdentityId::DuplicationPsi1 => check_duplication(params, true)?,
        IdentityId::PhiAlt => check_phi_alt(params)?,
        IdentityId::Pgna1 => check_pgna1(params)?,
        IdentityId::Pgna2 => check_pgna2(params)?,
        IdentityId::Pgna3 => check_pgna3(params)?,
    };
    let residual = residual_of(lhs, rhs)?;
    Ok(IdentityCheck {
        id,
        params: used_params(id, params),
        lhs,
        rhs,
        residual,
    })
}

/// The parameter record for a check, under the identity's own symbol names.
fn used_params(id: IdentityId, p: &IdentityParams) -> Vec<(&'static str, f64)> {
    let mf = f64::from(p.m);
    let nf = f64::from(p.n);
    let kf = f64::from(p.k);
    let lf = f64::from(p.l);
    match id {
        IdentityId::B1 | IdentityId::B2 | IdentityId::B3 | IdentityId::B8 => {
            vec![("a", p.a), ("m", mf)]
        }
        IdentityId::B4 | IdentityId::B5 => vec![("m", mf)],
        IdentityId::B6 | IdentityId::B7 | IdentityId::Ofgi => {
            vec![("a", p.a), ("b", p.b), ("m", mf)]
        }
        IdentityId::B9 => vec![("a", p.a), ("b", p.b), ("m", mf)],
        IdentityId::B10 | IdentityId::B11 | IdentityId::B12 => vec![("m", mf), ("n", nf)],
        IdentityId::B13 | IdentityId::B14 => vec![("a", p.a), ("m", mf), ("n", nf)],
        IdentityId::Lemma1 => vec![("a", p.a), ("b", p.b), ("c", p.c), ("m", mf)],
        IdentityId::Lemma2 | IdentityId::Lemma3 => {
            vec![("a", p.a), ("b", p.b), ("c", p.c), ("m", mf)]
        }
        IdentityId::Lemma4 => vec![("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d), ("m", mf)],
        IdentityId::SiAc => vec![("a", p.a), ("b", p.b), ("c", p.c), ("k", kf)],
        IdentityId::SiAc2 => vec![
            ("a1", p.a),
            ("b1", p.b),
            ("a2", p.a2),
            ("b2", p.b2),
            ("c", p.c),
            ("k1", f64::from(p.k1)),
            ("k2", f64::from(p.k2)),
        ],
        IdentityId::SiCd => vec![
            ("a", p.a),
            ("b", p.b),
            ("c", p.c),
            ("d", p.d),
            ("k", kf),
        ],
        IdentityId::SiDc2 => vec![
            ("a1", p.a),
            ("b1", p.b),
            ("a2", p.a2),
            ("b2", p.b2),
            ("c", p.c),
            ("d", p.d),
            ("k1", f64::from(p.k1)),
            ("k2", f64::from(p.k2)),
        ],
        IdentityId::CdConfluent => vec![("a", p.a), ("b", p.b), ("m", mf), ("x", p.x)],
        IdentityId::Orthogonality => vec![("a", p.a), ("b", p.b), ("k", kf), ("l", lf)],
        IdentityId::Parity => vec![("a", p.a), ("b", p.b), ("k", kf), ("x", p.x)],
        IdentityId::DigammaFiniteSum => vec![("l", lf)],
        IdentityId::DuplicationPsi0 | IdentityId::DuplicationPsi1 => {
            vec![("m", mf), ("k", kf)]
        }
        IdentityId::PhiAlt => vec![("c", p.c), ("d", p.d)],
        IdentityId::Pgna1 | IdentityId::Pgna2 | IdentityId::Pgna3 => {
            vec![("l", lf), ("eps", p.eps)]
        }
    }
}

fn need_m(m: u32) -> Result<u32> {
    if m >= 1 {
        Ok(m)
    } else {
        Err(domain("summation length m must be >= 1".into()))
    }
}

fn need_nonneg(v: f64, what: &str) -> Result<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} must be finite and >= 0, got {v}")))
    }
}

fn need_pos(v: f64, what: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} must be finite and > 0, got {v}")))
    }
}

fn need_gt_minus_one(v: f64, what: &str) -> Result<f64> {
    if v > -1.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} must be finite and > -1, got {v}")))
    }
}

/// Positive integer extracted from a real field.
fn need_pos_int(v: f64, what: &str) -> Result<u32> {
    let k = as_index(v, what)?;
    if k >= 1 {
        Ok(k)
    } else {
        Err(domain(format!("{what} must be >= 1, got {v}")))
    }
}

// --- finite digamma/trigamma sums -----------------------------------------

fn check_b1(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_nonneg(p.a, "a")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += digamma(f64::from(i) + a)?;
    }
    let rhs = (mf + a) * digamma(mf + a + 1.0)? - a * digamma(a + 1.0)? - mf;
    Ok((lhs, rhs))
}

fn check_b2(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_nonneg(p.a, "a")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += trigamma(f64::from(i) + a)?;
    }
    let rhs = (mf + a) * trigamma(mf + a + 1.0)? - a * trigamma(a + 1.0)?
        + digamma(mf + a + 1.0)?
        - digamma(a + 1.0)?;
    Ok((lhs, rhs))
}

fn check_b3(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_nonneg(p.a, "a")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let t = f64::from(i) + a;
        lhs += digamma(t)? / t;
    }
    let rhs = 0.5
        * (trigamma(mf + a + 1.0)? - trigamma(a + 1.0)? + digamma(mf + a + 1.0)?.powi(2)
            - digamma(a + 1.0)?.powi(2));
    Ok((lhs, rhs))
}

fn check_b4(p: &IdentityParams) -> Result<(f64, f64)> {
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += digamma(mf + 1.0 - f64::from(i))? / f64::from(i);
    }
    let d = digamma(mf + 1.0)?;
    let rhs = d * d - digamma(1.0)? * d + trigamma(mf + 1.0)? - trigamma(1.0)?;
    Ok((lhs, rhs))
}

fn check_b5(p: &IdentityParams) -> Result<(f64, f64)> {
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += digamma(mf + 1.0 + f64::from(i))? / f64::from(i);
    }
    let d = digamma(mf + 1.0)?;
    let rhs = d * d - digamma(1.0)? * d - 0.5 * trigamma(mf + 1.0)? + 0.5 * trigamma(1.0)?;
    Ok((lhs, rhs))
}

fn check_b6(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_nonneg(p.a, "a")?;
    let b = need_nonneg(p.b, "b")?;
    if a == b {
        return Err(domain(format!("B6 requires a != b, got a = b = {a}")));
    }
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += digamma(f64::from(i) + a)? * digamma(f64::from(i) + b)?;
    }
    let mut cross = 0.0;
    for i in 1..m {
        cross += digamma(a + f64::from(i))? / (b + f64::from(i));
    }
    let rhs = (b - a) * cross + (mf + a) * digamma(mf + a)? * digamma(mf + b)?
        - a * digamma(a + 1.0)? * digamma(b + 1.0)?
        - (mf + a - 1.0) * digamma(mf + a)?
        + a * digamma(a + 1.0)?
        - (mf + b) * digamma(mf + b)?
        + (b + 1.0) * digamma(b + 1.0)?
        + 2.0 * mf
        - 2.0;
    Ok((lhs, rhs))
}

fn check_b7(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_nonneg(p.a, "a")?;
    let b = need_nonneg(p.b, "b")?;
    if a == b {
        return Err(domain(format!("B7 requires a != b, got a = b = {a}")));
    }
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    let mut mirrored = 0.0;
    for i in 1..=m {
        lhs += digamma(f64::from(i) + b)? / (f64::from(i) + a);
        mirrored += digamma(f64::from(i) + a)? / (f64::from(i) + b);
    }
    let rhs = -mirrored + digamma(mf + a + 1.0)? * digamma(mf + b + 1.0)?
        - digamma(a + 1.0)? * digamma(b + 1.0)?
        + (digamma(mf + a + 1.0)? - digamma(mf + b + 1.0)? - digamma(a + 1.0)?
            + digamma(b + 1.0)?)
            / (a - b);
    Ok((lhs, rhs))
}

fn check_b8(p: &IdentityParams) -> Result<(f64, f64)> {
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let a = p.a;
    if !(a.is_finite() && a > mf) {
        return Err(domain(format!("B8 requires a > m, got a = {a}, m = {m}")));
    }
    let mut lhs = 0.0;
    let mut shifted = 0.0;
    for i in 1..=m {
        lhs += digamma(a + 1.0 - f64::from(i))? / f64::from(i);
        shifted += digamma(f64::from(i) + a - mf)? / f64::from(i);
    }
    let rhs = -shifted
        + (digamma(a - mf)? + digamma(a + 1.0)?) * (digamma(mf + 1.0)? - digamma(1.0)?)
        + 0.5
            * ((digamma(a - mf)? - digamma(a + 1.0)?).powi(2) + trigamma(a + 1.0)?
                - trigamma(a - mf)?);
    Ok((lhs, rhs))
}

fn check_b9(p: &IdentityParams) -> Result<(f64, f64)> {
    let a_int = as_index(p.a, "B9 summation bound a")?;
    let a = f64::from(a_int);
    let b = need_pos(p.b, "b")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    let mut base = 0.0;
    for i in 1..=m {
        lhs += digamma(a + b + f64::from(i))? / f64::from(i);
        base += digamma(b + f64::from(i))? / f64::from(i);
    }
    let mut mid = 0.0;
    for i in 1..=a_int {
        mid += digamma(b + f64::from(i) + mf)? / (b + f64::from(i) - 1.0);
    }
    let rhs = base - mid
        + 0.5
            * (trigamma(b)?
                + (digamma(a + b)? - digamma(b)?)
                    * (digamma(a + b)?
                        + digamma(b)?
                        + 2.0 * (digamma(mf + 1.0)? - digamma(1.0)?))
                - trigamma(a + b)?);
    Ok((lhs, rhs))
}

// --- factorial-ratio sums ---------------------------------------------------

/// `num! / den!` via the log-gamma difference; both arguments non-negative.
fn fact_ratio(num: f64, den: f64) -> Result<f64> {
    Ok((log_gamma(num + 1.0)? - log_gamma(den + 1.0)?).exp())
}

fn need_n_gt_m(p: &IdentityParams) -> Result<(u32, u32)> {
    let m = need_m(p.m)?;
    if p.n > m {
        Ok((m, p.n))
    } else {
        Err(domain(format!(
            "requires n > m, got n = {}, m = {m}",
            p.n
        )))
    }
}

fn check_b10(p: &IdentityParams) -> Result<(f64, f64)> {
    let (m, n) = need_n_gt_m(p)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += fact_ratio(nf - f64::from(i), mf - f64::from(i))?;
    }
    let rhs = fact_ratio(nf, mf - 1.0)? / (nf - mf + 1.0);
    Ok((lhs, rhs))
}

fn check_b11(p: &IdentityParams) -> Result<(f64, f64)> {
    let (m, n) = need_n_gt_m(p)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += fact_ratio(nf - f64::from(i), mf - f64::from(i))? / f64::from(i);
    }
    let rhs = fact_ratio(nf, mf)? * (digamma(nf + 1.0)? - digamma(nf - mf + 1.0)?);
    Ok((lhs, rhs))
}

fn check_b12(p: &IdentityParams) -> Result<(f64, f64)> {
    let (m, n) = need_n_gt_m(p)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += fact_ratio(nf - f64::from(i), mf - f64::from(i))? / f64::from(i).powi(2);
    }
    let mut dig = 0.0;
    for i in 1..=m {
        dig += digamma(f64::from(i) + nf - mf)? / f64::from(i);
    }
    let rhs = fact_ratio(nf, mf)?
        * (dig
            + 0.5
                * (trigamma(nf - mf + 1.0)? - trigamma(nf + 1.0)? - digamma(nf + 1.0)?.powi(2)
                    + digamma(nf - mf + 1.0)?.powi(2))
            + digamma(nf - mf)?
                * (digamma(nf + 1.0)? - digamma(nf - mf + 1.0)? - digamma(mf + 1.0)?
                    + digamma(1.0)?));
    Ok((lhs, rhs))
}

fn b13_guard(p: &IdentityParams) -> Result<(u32, u32, u32)> {
    let (m, n) = need_n_gt_m(p)?;
    let a = need_pos_int(p.a, "a")?;
    if n == m + a - 1 {
        return Err(domain(format!(
            "pole at n - m - a + 1 = 0 (n = {n}, m = {m}, a = {a})"
        )));
    }
    Ok((m, n, a))
}

fn check_b13(p: &IdentityParams) -> Result<(f64, f64)> {
    let (m, n, a) = b13_guard(p)?;
    let (mf, nf, af) = (f64::from(m), f64::from(n), f64::from(a));
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += fact_ratio(nf - f64::from(i), mf + af - f64::from(i))?;
    }
    let rhs = (fact_ratio(nf, af + mf - 1.0)? - fact_ratio(nf - mf, af - 1.0)?)
        / (nf - mf - af + 1.0);
    Ok((lhs, rhs))
}

fn check_b14(p: &IdentityParams) -> Result<(f64, f64)> {
    let (m, n, a) = b13_guard(p)?;
    let (mf, nf, af) = (f64::from(m), f64::from(n), f64::from(a));
    let mut lhs = 0.0;
    for i in 1..=m {
        lhs += fact_ratio(nf - f64::from(i), mf + af - f64::from(i))?
            * digamma(mf + af - f64::from(i) + 1.0)?;
    }
    let q = 1.0 - af - mf + nf;
    let rhs = (fact_ratio(nf, af + mf - 1.0)? * (digamma(af + mf)? - 1.0 / q)
        - fact_ratio(nf - mf, af - 1.0)? * (digamma(af)? - 1.0 / q))
        / q;
    Ok((lhs, rhs))
}

// --- gamma-product summation lemmas ----------------------------------------

fn check_lemma1(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_pos(p.a, "a")?;
    let b = need_pos(p.b, "b")?;
    let c = need_pos(p.c, "c")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        lhs += LogProd::one()
            .div_gamma(i)?
            .div_gamma(a + i)?
            .div_gamma(mf + 1.0 - i)?
            .div_gamma(mf + b + 1.0 - i)?
            .div_val(c + i)
            .value();
    }
    let pre = LogProd::one()
        .div_gamma(b + mf)?
        .div_gamma(c + mf + 1.0)?
        .div_gamma(a + b + mf)?;
    let mut rhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        rhs += pre
            .mul_gamma(c - i + mf + 1.0)?
            .mul_gamma(a + b - i + 2.0 * mf)?
            .div_gamma(mf - i + 1.0)?
            .div_gamma(a - i + mf + 1.0)?
            .value();
    }
    Ok((lhs, rhs))
}

fn check_lemma2(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_pos(p.a, "a")?;
    let b = need_pos(p.b, "b")?;
    let c = f64::from(need_pos_int(p.c, "c")?);
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        lhs += LogProd::one()
            .div_gamma(c + i)?
            .div_gamma(a + i)?
            .div_gamma(mf + 1.0 - i)?
            .div_gamma(mf + b + 1.0 - i)?
            .value();
    }
    let pre = LogProd::one()
        .div_gamma(mf + b)?
        .div_gamma(mf + a + b)?
        .div_gamma(c)?
        .div_gamma(mf + c)?;
    let mut rhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        rhs += pre
            .mul_gamma(mf + a + b + i - 1.0)?
            .mul_gamma(mf + c - i)?
            .div_gamma(a + i)?
            .div_gamma(mf - i + 1.0)?
            .value();
    }
    Ok((lhs, rhs))
}

fn check_lemma3(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_pos(p.a, "a")?;
    let b = need_pos(p.b, "b")?;
    let c = f64::from(need_pos_int(p.c, "c")?);
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        lhs += LogProd::one()
            .div_gamma(c + i)?
            .div_gamma(a + i)?
            .div_gamma(mf - i + 1.0)?
            .div_gamma(b - i + mf + 1.0)?
            .div_val(i)
            .value();
    }
    let pre = LogProd::one()
        .div_gamma(a)?
        .div_gamma(a + mf)?
        .div_gamma(1.0 + b + mf)?
        .div_gamma(b + c + mf)?;
    let mut rhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        rhs += pre
            .mul_gamma(a - i + mf)?
            .mul_gamma(b + c + i + mf)?
            .div_gamma(c + i)?
            .div_gamma(mf - i + 1.0)?
            .div_val(i)
            .value();
    }
    rhs += (digamma(a)? - digamma(a + mf)?)
        * LogProd::one()
            .div_gamma(a)?
            .div_gamma(c)?
            .div_gamma(mf + 1.0)?
            .div_gamma(b + mf + 1.0)?
            .value();
    Ok((lhs, rhs))
}

fn check_lemma4(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_pos(p.a, "a")?;
    let b = need_pos(p.b, "b")?;
    let c = f64::from(need_pos_int(p.c, "c")?);
    let d = f64::from(need_pos_int(p.d, "d")?);
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        lhs += LogProd::one()
            .div_gamma(c + i)?
            .div_gamma(a + i)?
            .div_gamma(d + mf - i + 1.0)?
            .div_gamma(b + mf - i + 1.0)?
            .value();
    }
    let pre1 = LogProd::one()
        .div_gamma(d)?
        .div_gamma(a + mf)?
        .div_gamma(a + b + mf)?
        .div_gamma(c + d + mf)?;
    let pre2 = LogProd::one()
        .div_gamma(c)?
        .div_gamma(b + mf)?
        .div_gamma(a + b + mf)?
        .div_gamma(c + d + mf)?;
    let mut rhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        rhs += pre1
            .mul_gamma(c + d + i - 1.0)?
            .mul_gamma(a + b - i + 2.0 * mf)?
            .div_gamma(c + i)?
            .div_gamma(b - i + mf + 1.0)?
            .value();
        rhs += pre2
            .mul_gamma(c + d + i - 1.0)?
            .mul_gamma(a + b - i + 2.0 * mf)?
            .div_gamma(d + i)?
            .div_gamma(a - i + mf + 1.0)?
            .value();
    }
    Ok((lhs, rhs))
}

fn check_ofgi(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_pos(p.a, "a")?;
    let b = need_pos(p.b, "b")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let mut lhs = 0.0;
    for i in 1..=m {
        let i = f64::from(i);
        lhs += LogProd::one()
            .div_gamma(i)?
            .div_gamma(a + i)?
            .div_gamma(mf - i + 1.0)?
            .div_gamma(mf + b + 1.0 - i)?
            .value();
    }
    let rhs = LogProd::one()
        .mul_gamma(a + b + 2.0 * mf - 1.0)?
        .div_gamma(mf)?
        .div_gamma(a + mf)?
        .div_gamma(b + mf)?
        .div_gamma(a + b + mf)?
        .value();
    Ok((lhs, rhs))
}

// --- weighted Jacobi integrals ----------------------------------------------

/// `((1-x)/2)^wa ((1+x)/2)^wb J1(x) J2(x)` integrated over `(-1, 1)`.
fn jacobi_weight_integral(
    wa: f64,
    wb: f64,
    p1: JacobiParams,
    p2: Option<JacobiParams>,
) -> Result<f64> {
    let r = integrate(
        |x| {
            let u = 0.5 * (1.0 - x);
            let v = 0.5 * (1.0 + x);
            let poly = jacobi_poly(p1, x) * p2.map_or(1.0, |q| jacobi_poly(q, x));
            u.powf(wa) * v.powf(wb) * poly
        },
        -1.0,
        1.0,
        QUAD_LEVELS,
    )?;
    Ok(r.value)
}

fn check_si_ac(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_gt_minus_one(p.a, "a")?;
    let b = need_gt_minus_one(p.b, "b")?;
    let c = need_gt_minus_one(p.c, "c")?;
    let k = p.k;
    let kf = f64::from(k);
    let lhs = jacobi_weight_integral(a, c, JacobiParams::new(k, a, b)?, None)?;
    let rhs = LogProd::one()
        .mul_val(2.0)
        .mul_gamma(c + 1.0)?
        .mul_poch(kf + 1.0, a)?
        .mul_poch(c - b - kf + 1.0, kf)?
        .div_gamma(a + c + kf + 2.0)?
        .value();
    Ok((lhs, rhs))
}

fn check_si_ac2(p: &IdentityParams) -> Result<(f64, f64)> {
    let a1 = need_gt_minus_one(p.a, "a1")?;
    let b1 = need_gt_minus_one(p.b, "b1")?;
    let a2 = need_gt_minus_one(p.a2, "a2")?;
    let b2 = need_gt_minus_one(p.b2, "b2")?;
    let c = need_gt_minus_one(p.c, "c")?;
    let (k1, k2) = (p.k1, p.k2);
    let (k1f, k2f) = (f64::from(k1), f64::from(k2));
    let lhs = jacobi_weight_integral(
        a1,
        c,
        JacobiParams::new(k1, a1, b1)?,
        Some(JacobiParams::new(k2, a2, b2)?),
    )?;
    let pre = LogProd::one()
        .mul_val(2.0)
        .mul_poch(k1f + 1.0, a1)?
        .div_poch(b2 + k2f + 1.0, a2)?;
    let mut rhs = 0.0;
    for i in 0..=k2 {
        let i = f64::from(i);
        rhs += pre
            .neg_if((p.k2 - i as u32) % 2 == 1)
            .mul_poch(i + 1.0, c)?
            .mul_poch(i + b2 + 1.0, a2 + k2f)?
            .mul_poch(c + i - b1 - k1f + 1.0, k1f)?
            .div_gamma(k2f - i + 1.0)?
            .div_gamma(a1 + c + i + k1f + 2.0)?
            .value();
    }
    Ok((lhs, rhs))
}

fn check_si_cd(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_gt_minus_one(p.a, "a")?;
    let b = need_gt_minus_one(p.b, "b")?;
    let c = need_gt_minus_one(p.c, "c")?;
    let d = need_gt_minus_one(p.d, "d")?;
    let k = p.k;
    let kf = f64::from(k);
    let lhs = jacobi_weight_integral(d, c, JacobiParams::new(k, a, b)?, None)?;
    let pre = LogProd::one()
        .mul_val(2.0)
        .mul_gamma(c - b + 1.0)?
        .mul_gamma(d - a + 1.0)?
        .div_gamma(c + d + kf + 2.0)?;
    let mut rhs = 0.0;
    for i in 0..=k {
        let i = f64::from(i);
        rhs += pre
            .neg_if(i as u32 % 2 == 1)
            .mul_gamma(c + i + 1.0)?
            .mul_gamma(d - i + kf + 1.0)?
            .div_gamma(i + 1.0)?
            .div_gamma(kf - i + 1.0)?
            .div_gamma(d - a - i + 1.0)?
            .div_gamma(c - b + i - kf + 1.0)?
            .value();
    }
    Ok((lhs, rhs))
}

fn check_si_dc2(p: &IdentityParams) -> Result<(f64, f64)> {
    let a1 = need_gt_minus_one(p.a, "a1")?;
    let b1 = need_gt_minus_one(p.b, "b1")?;
    if p.b.fract() != 0.0 {
        return Err(domain(format!(
            "this checker needs integer b1 so the Pochhammer exponent b1 + k1 \
             is a plain product, got b1 = {b1}"
        )));
    }
    let a2 = need_gt_minus_one(p.a2, "a2")?;
    let b2 = need_gt_minus_one(p.b2, "b2")?;
    let c = need_gt_minus_one(p.c, "c")?;
    let d = need_gt_minus_one(p.d, "d")?;
    let (k1, k2) = (p.k1, p.k2);
    let (k1f, k2f) = (f64::from(k1), f64::from(k2));
    let lhs = jacobi_weight_integral(
        d,
        c,
        JacobiParams::new(k1, a1, b1)?,
        Some(JacobiParams::new(k2, a2, b2)?),
    )?;
    let pre = LogProd::one()
        .mul_val(2.0)
        .mul_gamma(a2 + k2f + 1.0)?
        .mul_gamma(b2 + k2f + 1.0)?
        .div_gamma(c + d + k1f + k2f + 2.0)?;
    let mut rhs = 0.0;
    for i in 0..=k2 {
        let ifl = f64::from(i);
        let outer = pre
            .neg_if(i % 2 == 1)
            .mul_gamma(d - a1 + ifl + 1.0)?
            .mul_gamma(c - b1 - ifl + k2f + 1.0)?
            .div_gamma(ifl + 1.0)?
            .div_gamma(a2 + ifl + 1.0)?
            .div_gamma(k2f - ifl + 1.0)?
            .div_gamma(b2 - ifl + k2f + 1.0)?;
        let mut inner = 0.0;
        for j in 0..=k1 {
            let jfl = f64::from(j);
            inner += LogProd::one()
                .neg_if(j % 2 == 1)
                .mul_poch(k1f - jfl + 1.0, d + ifl)?
                .mul_poch(c - ifl + jfl - b1 - k1f + k2f + 1.0, b1 + k1f)?
                .div_gamma(jfl + 1.0)?
                .div_gamma(d - a1 + ifl - jfl + 1.0)?
                .value();
        }
        rhs += outer.value() * inner;
    }
    Ok((lhs, rhs))
}

// --- kernel algebra ----------------------------------------------------------

fn check_cd_confluent(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_gt_minus_one(p.a, "a")?;
    let b = need_gt_minus_one(p.b, "b")?;
    let m = need_m(p.m)?;
    let mf = f64::from(m);
    let x = p.x;
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain(format!("x must lie in [-1, 1], got {x}")));
    }
    let s = a + b + 2.0 * mf;
    if (s - 1.0) * s == 0.0 {
        return Err(domain(format!(
            "confluent coefficients are singular when (a+b+2m-1)(a+b+2m) = 0, \
             got a+b+2m = {s}"
        )));
    }
    let mut lhs = 0.0;
    for k in 0..m {
        let j = jacobi_poly(JacobiParams::new(k, a, b)?, x);
        lhs += j * j / norm_h(k, a, b);
    }
    let hm1 = norm_h(m - 1, a, b);
    let a1 = mf * (a + b + mf) * (a + b + mf + 1.0) / (hm1 * (s - 1.0) * s);
    let a2 = mf * (a + b + mf) * (a + b + mf) / (hm1 * (s - 1.0) * s);
    let up = |k: u32| -> Result<f64> { Ok(jacobi_poly(JacobiParams::new(k, a + 1.0, b + 1.0)?, x)) };
    let base = |k: u32| -> Result<f64> { Ok(jacobi_poly(JacobiParams::new(k, a, b)?, x)) };
    let mut rhs = a1 * up(m - 1)? * base(m - 1)?;
    if m >= 2 {
        rhs -= a2 * up(m - 2)? * base(m)?;
    }
    Ok((lhs, rhs))
}

fn check_orthogonality(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_gt_minus_one(p.a, "a")?;
    let b = need_gt_minus_one(p.b, "b")?;
    let (k, l) = (p.k, p.l);
    let lhs = jacobi_weight_integral(
        a,
        b,
        JacobiParams::new(k, a, b)?,
        Some(JacobiParams::new(l, a, b)?),
    )?;
    let rhs = if k == l { norm_h(k, a, b) } else { 0.0 };
    Ok((lhs, rhs))
}

fn check_parity(p: &IdentityParams) -> Result<(f64, f64)> {
    let a = need_gt_minus_one(p.a, "a")?;
    let b = need_gt_minus_one(p.b, "b")?;
    let k = p.k;
    let x = p.x;
    if !x.is_finite() {
        return Err(domain(format!("x must be finite, got {x}")));
    }
    let lhs = jacobi_poly(JacobiParams::new(k, a, b)?, -x);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * jacobi_poly(JacobiParams::new(k, b, a)?, x);
    Ok((lhs, rhs))
}

// --- polygamma reductions ----------------------------------------------------

fn check_digamma_finite_sum(p: &IdentityParams) -> Result<(f64, f64)> {
    let l = p.l;
    if l < 1 {
        return Err(domain("digamma argument l must be >= 1".into()));
    }
    let e = digamma_exact(l)?;
    let target = ExactValue::new(harmonic(l - 1), big_ratio(-1, 1), BigRational::zero());
    if e != target {
        return Err(Error::Numerical(format!(
            "digamma({l}) exact form differs from -gamma + H_(l-1) in rational \
             arithmetic"
        )));
    }
    Ok((e.to_f64(), target.to_f64()))
}

fn check_duplication(p: &IdentityParams, second_order: bool) -> Result<(f64, f64)> {
    let mult = p.m;
    if !(2..=12).contains(&mult) {
        return Err(domain(format!(
            "multiplication factor m must lie in 2..=12, got {mult}"
        )));
    }
    let k = p.k;
    if k < 1 {
        return Err(domain("evaluation point k must be >= 1".into()));
    }
    let mf = f64::from(mult);
    let kf = f64::from(k);
    if second_order {
        let lhs = trigamma(mf * kf)?;
        let mut s = 0.0;
        for i in 0..mult {
            s += trigamma(kf + f64::from(i) / mf)?;
        }
        Ok((lhs, s / (mf * mf)))
    } else {
        let lhs = digamma(mf * kf)?;
        let mut s = 0.0;
        for i in 0..mult {
            s += digamma(kf + f64::from(i) / mf)?;
        }
        Ok((lhs, mf.ln() + s / mf))
    }
}

fn check_phi_alt(p: &IdentityParams) -> Result<(f64, f64)> {
    let c = need_pos_int(p.c, "c")?;
    let d = need_pos_int(p.d, "d")?;
    let (cf, df) = (f64::from(c), f64::from(d));
    let lhs = rational_to_f64(&phi(c, d));
    let mut dig = 0.0;
    for k in 1..=c {
        dig += digamma(f64::from(k) + df)? / f64::from(k);
    }
    let rhs = dig
        + 0.5
            * (trigamma(df + 1.0)? - trigamma(cf + df + 1.0)? + digamma(df + 1.0)?.powi(2)
                - digamma(cf + df + 1.0)?.powi(2))
        + digamma(df)?
            * (digamma(cf + df + 1.0)? - digamma(df + 1.0)? - digamma(cf + 1.0)?
                + digamma(1.0)?);
    Ok((lhs, rhs))
}

fn need_eps(p: &IdentityParams) -> Result<f64> {
    if p.eps > 0.0 && p.eps <= 0.01 {
        Ok(p.eps)
    } else {
        Err(domain(format!(
            "expansion offset eps must lie in (0, 0.01], got {}",
            p.eps
        )))
    }
}

fn check_pgna1(p: &IdentityParams) -> Result<(f64, f64)> {
    let eps = need_eps(p)?;
    let lf = f64::from(p.l);
    let sign = if p.l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lhs = gamma_reflect(-lf + eps)? * log_gamma(lf + 1.0)?.exp() * eps * sign;
    let rhs = 1.0 + digamma(lf + 1.0)? * eps;
    Ok((lhs, rhs))
}

fn check_pgna2(p: &IdentityParams) -> Result<(f64, f64)> {
    let eps = need_eps(p)?;
    let lf = f64::from(p.l);
    let lhs = digamma_any(-lf + eps)?;
    let rhs = -1.0 / eps + digamma(lf + 1.0)? + (2.0 * trigamma(1.0)? - trigamma(lf + 1.0)?) * eps;
    Ok((lhs, rhs))
}

fn check_pgna3(p: &IdentityParams) -> Result<(f64, f64)> {
    let eps = need_eps(p)?;
    let lf = f64::from(p.l);
    let zeta2 = PI_SQUARED / 6.0;
    let lhs = trigamma_any(-lf + eps)?;
    let rhs = 1.0 / (eps * eps) - trigamma(lf + 1.0)? + trigamma(1.0)? + zeta2;
    Ok((lhs, rhs))
}

// --- fuzzing -----------------------------------------------------------------

/// Aggregate result of fuzzing one identity.
#[derive(Debug, Clone)]
pub struct FuzzEntry {
    /// Identity that was fuzzed.
    pub id: IdentityId,
    /// Number of parameter draws attempted.
    pub n_checks: u32,
    /// Draws whose evaluation errored (counts as failure).
    pub n_errors: u32,
    /// Largest residual over the successful draws.
    pub max_residual: f64,
    /// Residual bound applied.
    pub tolerance: f64,
    /// True iff no errors and `max_residual < tolerance`.
    pub passed: bool,
    /// The check that produced `max_residual`.
    pub worst: Option<IdentityCheck>,
}

/// Deterministic report over the whole catalog.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    /// Draws per identity.
    pub n_draws: u32,
    /// Seed the draws derive from.
    pub seed: u64,
    /// One entry per identity, in [`IdentityId::ALL`] order.
    pub entries: Vec<FuzzEntry>,
}

impl FuzzReport {
    /// True iff every identity passed.
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Stream offset separating identity fuzzing from other consumers of the
/// same seed.
const FUZZ_STREAM_BASE: u64 = 1 << 32;

/// Fuzz every identity in the catalog with `n_draws` random parameter sets.
///
/// Draws honor each identity's domain (integer constraints, positivity,
/// pole exclusions) and stay inside ranges where f64 evaluation of the
/// alternating sums keeps enough headroom to certify the residual bound.
/// The report is deterministic in `(n_draws, seed)` and independent of
/// thread count (checks run sequentially; they are cheap).
pub fn fuzz_identities(n_draws: u32, seed: u64) -> Result<FuzzReport> {
    if n_draws == 0 {
        return Err(domain("fuzzing needs n_draws >= 1".into()));
    }
    let mut entries = Vec::with_capacity(IdentityId::ALL.len());
    for (idx, &id) in IdentityId::ALL.iter().enumerate() {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(FUZZ_STREAM_BASE + idx as u64);
        let mut max_residual = 0.0_f64;
        let mut worst = None;
        let mut n_errors = 0;
        for _ in 0..n_draws {
            let params = draw_params(id, &mut rng);
            match check_identity(id, &params) {
                Ok(check) => {
                    if check.residual >= max_residual {
                        max_residual = check.residual;
                        worst = Some(check);
                    }
                }
                Err(_) => n_errors += 1,
            }
        }
        let tolerance = id.tolerance();
        entries.push(FuzzEntry {
            id,
            n_checks: n_draws,
            n_errors,
            max_residual,
            tolerance,
            passed: n_errors == 0 && max_residual < tolerance,
            worst,
        });
    }
    Ok(FuzzReport {
        n_draws,
        seed,
        entries,
    })
}

/// Real draw at least 0.05 away from every integer, so gamma reflection and
/// division factors keep a safe distance from poles.
fn off_integer(rng: &mut ChaCha12Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let v = rng.gen_range(lo..hi);
        if (v - v.round()).abs() > 0.05 {
            return v;
        }
    }
}

/// Pair of reals in `(0.1, 5)` separated by at least 0.05.
fn distinct_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    loop {
        let a: f64 = rng.gen_range(0.1..5.0);
        let b: f64 = rng.gen_range(0.1..5.0);
        if (a - b).abs() > 0.05 {
            return (a, b);
        }
    }
}

fn draw_params(id: IdentityId, rng: &mut ChaCha12Rng) -> IdentityParams {
    let mut p = IdentityParams::default();
    match id {
        IdentityId::B1 | IdentityId::B2 | IdentityId::B3 => {
            p.a = rng.gen_range(0.1..5.0);
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::B4 | IdentityId::B5 => {
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::B6 | IdentityId::B7 => {
            let (a, b) = distinct_pair(rng);
            p.a = a;
            p.b = b;
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::B8 => {
            p.m = rng.gen_range(1..=12);
            p.a = f64::from(p.m) + rng.gen_range(0.1..5.0);
        }
        IdentityId::B9 => {
            p.a = f64::from(rng.gen_range(0..=12u32));
            p.b = rng.gen_range(0.1..5.0);
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::B10 | IdentityId::B11 | IdentityId::B12 => {
            p.m = rng.gen_range(1..=11);
            p.n = rng.gen_range(p.m + 1..=12);
        }
        IdentityId::B13 | IdentityId::B14 => {
            p.m = rng.gen_range(1..=11);
            p.n = rng.gen_range(p.m + 1..=12);
            // resample a until the closed form's 1/(n-m-a+1) factor is regular
            p.a = loop {
                let a = rng.gen_range(1..=12u32);
                if p.n != p.m + a - 1 {
                    break f64::from(a);
                }
            };
        }
        IdentityId::Lemma1 => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.c = rng.gen_range(0.1..5.0);
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::Lemma2 | IdentityId::Lemma3 => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.c = f64::from(rng.gen_range(1..=12u32));
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::Lemma4 => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.c = f64::from(rng.gen_range(1..=12u32));
            p.d = f64::from(rng.gen_range(1..=12u32));
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::SiAc => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.c = rng.gen_range(0.1..5.0);
            p.k = rng.gen_range(0..=8);
        }
        IdentityId::SiAc2 => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.a2 = rng.gen_range(0.1..5.0);
            p.b2 = rng.gen_range(0.1..5.0);
            p.c = rng.gen_range(0.1..5.0);
            p.k1 = rng.gen_range(0..=4);
            p.k2 = rng.gen_range(0..=4);
        }
        IdentityId::SiCd => {
            // keep c-b and d-a off the integers: the closed form's gamma
            // prefactors pole there and the statement only holds as a limit
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            loop {
                p.c = rng.gen_range(0.1..5.0);
                if (p.c - p.b - (p.c - p.b).round()).abs() > 0.05 {
                    break;
                }
            }
            loop {
                p.d = rng.gen_range(0.1..5.0);
                if (p.d - p.a - (p.d - p.a).round()).abs() > 0.05 {
                    break;
                }
            }
            p.k = rng.gen_range(0..=8);
        }
        IdentityId::SiDc2 => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = f64::from(rng.gen_range(0..=3u32));
            p.a2 = rng.gen_range(0.1..5.0);
            p.b2 = rng.gen_range(0.1..5.0);
            p.d = p.a + off_integer(rng, 0.05, 1.95);
            p.c = p.b + off_integer(rng, -0.25, 1.95);
            p.k1 = rng.gen_range(0..=4);
            p.k2 = rng.gen_range(0..=4);
        }
        IdentityId::Ofgi => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.m = rng.gen_range(1..=12);
        }
        IdentityId::CdConfluent => {
            p.a = rng.gen_range(-0.4..2.5);
            p.b = rng.gen_range(-0.4..2.5);
            p.m = rng.gen_range(1..=12);
            p.x = rng.gen_range(-1.0..1.0);
        }
        IdentityId::Orthogonality => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.k = rng.gen_range(0..=12);
            p.l = rng.gen_range(0..=12);
        }
        IdentityId::Parity => {
            p.a = rng.gen_range(0.1..5.0);
            p.b = rng.gen_range(0.1..5.0);
            p.k = rng.gen_range(0..=12);
            p.x = rng.gen_range(-1.0..1.0);
        }
        IdentityId::DigammaFiniteSum => {
            p.l = rng.gen_range(1..=12);
        }
        IdentityId::DuplicationPsi0 | IdentityId::DuplicationPsi1 => {
            p.m = rng.gen_range(2..=4);
            p.k = rng.gen_range(1..=12);
        }
        IdentityId::PhiAlt => {
            p.c = f64::from(rng.gen_range(1..=12u32));
            p.d = f64::from(rng.gen_range(1..=12u32));
        }
        IdentityId::Pgna1 | IdentityId::Pgna2 | IdentityId::Pgna3 => {
            p.l = rng.gen_range(0..=12);
            p.eps = EXPANSION_EPS;
        }
    }
    p
}
