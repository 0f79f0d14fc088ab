//! Monte Carlo samplers for both ensembles and the capacity estimator.
//!
//! Fixed particle number: a Haar unitary of size m+n, the Gram matrix of
//! its m x p corner, and the affine map x = 2y - 1 produce the Jacobi
//! unitary ensemble levels. Arbitrary particle number: a Haar orthogonal
//! conjugation of the standard antisymmetric form, restricted to the
//! first 2m rows and columns, whose singular values are the levels.
//! Estimation is streaming (Welford) over 64 fixed ChaCha streams merged
//! in index order, which makes every estimate bit-identical for any
//! thread count.

use num::complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::capacity::{capacity_u, EnsembleSpec};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, qr_haar_q, CMatrix};

/// Fixed number of independent ChaCha streams an estimate is split over.
const N_STREAMS: u64 = 64;

/// Eigenvalues may stick out of their closed interval by at most this
/// much before the draw is declared numerically broken.
const EXCESS_TOL: f64 = 1e-8;

/// Half-width of the clamping collar at the interval endpoints inside
/// [`capacity_of_spectrum`].
const COLLAR: f64 = 1e-9;

/// A seeded, stream-indexed random source.
///
/// Two instances built from the same `(seed, stream)` replay exactly the
/// same draws; distinct stream indices are statistically independent
/// ChaCha12 streams of one keyed cipher.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// Ordered correlation levels of one ensemble draw.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Which ensemble produced the draw; fixes the admissible interval.
    pub spec: EnsembleSpec,
    /// Levels sorted ascending, length m.
    pub values: Vec<f64>,
}

impl Spectrum {
    /// Closed admissible interval for the levels.
    fn interval(&self) -> (f64, f64) {
        match self.spec {
            EnsembleSpec::Fixed { .. } => (-1.0, 1.0),
            EnsembleSpec::Arbitrary { .. } => (0.0, 1.0),
        }
    }
}

/// A Monte Carlo mean with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by sqrt(n_samples).
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Draws a Haar-distributed unitary of size `n`.
///
/// Complex standard-Gaussian entries, QR, and the R-diagonal phase fix;
/// without the fix the distribution is biased toward the QR algorithm's
/// sign conventions and the |U_11|^2 statistics drift measurably.
pub fn sample_haar_unitary(n: usize, rng: &mut RngStream) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Domain("Haar unitary needs n >= 1".into()));
    }
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let re = rng.normal();
            let im = rng.normal();
            g[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(qr_haar_q(g))
}

/// Draws a Haar-distributed real orthogonal matrix of size `n`.
fn sample_haar_orthogonal(n: usize, rng: &mut RngStream) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Domain("Haar orthogonal needs n >= 1".into()));
    }
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = Complex64::new(rng.normal(), 0.0);
        }
    }
    // Real input keeps the QR exactly real; the phase fix degenerates to
    // a sign fix.
    Ok(qr_haar_q(g))
}

/// Clamps an eigenvalue into `[lo, hi]`, tolerating at most `EXCESS_TOL`
/// of numerical overshoot.
fn clamp_eigenvalue(y: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if y < lo - EXCESS_TOL || y > hi + EXCESS_TOL {
        return Err(Error::Numerical(format!(
            "{what} eigenvalue {y} outside [{lo}, {hi}] beyond tolerance"
        )));
    }
    Ok(y.clamp(lo, hi))
}

/// Draws one spectrum of the fixed-particle-number ensemble: eigenvalues
/// of the Gram matrix of the m x p corner of a Haar unitary of size m+n,
/// mapped by x = 2y - 1 onto [-1, 1].
pub fn sample_fixed_spectrum(spec: &EnsembleSpec, rng: &mut RngStream) -> Result<Spectrum> {
    let EnsembleSpec::Fixed { m, n, p } = *spec else {
        return Err(Error::Domain(format!(
            "expected a fixed-ensemble spec, got {spec}"
        )));
    };
    let (m, n, p) = (m as usize, n as usize, p as usize);
    let u = sample_haar_unitary(m + n, rng)?;
    // Gram matrix of the m x p upper-left block; Hermitian with
    // eigenvalues in [0, 1] because the block is a unitary submatrix.
    let mut gram = CMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut dot = Complex64::new(0.0, 0.0);
            for k in 0..p {
                dot += u[(i, k)] * u[(j, k)].conj();
            }
            gram[(i, j)] = dot;
            gram[(j, i)] = dot.conj();
        }
    }
    let eig = hermitian_eigenvalues(&gram)?;
    let values = eig
        .into_iter()
        .map(|y| Ok(2.0 * clamp_eigenvalue(y, 0.0, 1.0, "Gram")? - 1.0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Spectrum { spec: *spec, values })
}

/// Applies the standard antisymmetric form J0 (block-diagonal copies of
/// [[0, 1], [-1, 0]]) from the left: (J0 v)_{2i} = v_{2i+1},
/// (J0 v)_{2i+1} = -v_{2i}.
fn apply_standard_form(o: &CMatrix) -> CMatrix {
    let (rows, cols) = (o.rows(), o.cols());
    debug_assert_eq!(rows % 2, 0);
    let mut out = CMatrix::zeros(rows, cols);
    for i in 0..rows / 2 {
        for j in 0..cols {
            out[(2 * i, j)] = o[(2 * i + 1, j)];
            out[(2 * i + 1, j)] = -o[(2 * i, j)];
        }
    }
    out
}

/// Upper-left `dim` x `dim` block of O^T J0 O, the restriction of the
/// conjugated antisymmetric form to the subsystem.
fn restricted_form(o: &CMatrix, dim: usize) -> CMatrix {
    let full = o.rows();
    let p = apply_standard_form(o);
    let mut ja = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut dot = Complex64::new(0.0, 0.0);
            for k in 0..full {
                dot += o[(k, i)] * p[(k, j)];
            }
            ja[(i, j)] = dot;
        }
    }
    ja
}

/// Draws one spectrum of the arbitrary-particle-number ensemble: the m
/// nonnegative singular values of the restricted antisymmetric form,
/// extracted as square roots of the doubly degenerate eigenvalues of
/// J_A^T J_A.
pub fn sample_arbitrary_spectrum(spec: &EnsembleSpec, rng: &mut RngStream) -> Result<Spectrum> {
    let EnsembleSpec::Arbitrary { m, n } = *spec else {
        return Err(Error::Domain(format!(
            "expected an arbitrary-ensemble spec, got {spec}"
        )));
    };
    let (m, n) = (m as usize, n as usize);
    let o = sample_haar_orthogonal(2 * (m + n), rng)?;
    let ja = restricted_form(&o, 2 * m);
    // S = J_A^T J_A is real symmetric PSD; J_A real antisymmetric makes
    // its eigenvalues come in equal pairs x_i^2.
    let dim = 2 * m;
    let mut s = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let mut dot = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                dot += ja[(k, i)] * ja[(k, j)];
            }
            s[(i, j)] = dot;
            s[(j, i)] = dot;
        }
    }
    let eig = hermitian_eigenvalues(&s)?;
    let mut values = Vec::with_capacity(m);
    for pair in eig.chunks_exact(2) {
        if (pair[0] - pair[1]).abs() > EXCESS_TOL {
            return Err(Error::Numerical(format!(
                "restricted-form eigenvalues not paired: {} vs {}",
                pair[0], pair[1]
            )));
        }
        let sq = clamp_eigenvalue(0.5 * (pair[0] + pair[1]), 0.0, 1.0, "restricted-form")?;
        values.push(sq.sqrt());
    }
    Ok(Spectrum { spec: *spec, values })
}

/// Sum of u over the levels, after validating them against the
/// spectrum's admissible interval.
///
/// # Errors
///
/// [`Error::Domain`] if any level lies outside the interval by more than
/// the 1e-9 collar; levels inside the collar are clamped, which is
/// bias-free because u vanishes at the endpoints.
pub fn capacity_of_spectrum(s: &Spectrum) -> Result<f64> {
    let (lo, hi) = s.interval();
    let mut total = 0.0;
    for &x in &s.values {
        if !(lo - COLLAR..=hi + COLLAR).contains(&x) {
            return Err(Error::Domain(format!(
                "level {x} outside [{lo}, {hi}] beyond the 1e-9 collar"
            )));
        }
        total += capacity_u(x.clamp(lo, hi));
    }
    Ok(total)
}

/// Streaming mean and second central moment (Welford), mergeable in the
/// count-weighted way (Chan et al., 1979).
#[derive(Debug, Default, Clone, Copy)]
struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let wb = other.count as f64 / count as f64;
        Self {
            count,
            mean: self.mean + delta * wb,
            m2: self.m2 + other.m2 + delta * delta * (self.count as f64 * wb),
        }
    }
}

fn sample_capacity(spec: &EnsembleSpec, rng: &mut RngStream) -> Result<f64> {
    let s = match spec {
        EnsembleSpec::Fixed { .. } => sample_fixed_spectrum(spec, rng)?,
        EnsembleSpec::Arbitrary { .. } => sample_arbitrary_spectrum(spec, rng)?,
    };
    capacity_of_spectrum(&s)
}

/// All capacities for one stream: sample i goes to stream i mod 64, so
/// stream j handles ceil((n - j) / 64) consecutive draws of its own rng.
fn accumulate_stream(spec: &EnsembleSpec, seed: u64, stream: u64, n_samples: u64) -> Result<Accumulator> {
    let count = n_samples / N_STREAMS + u64::from(stream < n_samples % N_STREAMS);
    let mut rng = RngStream::new(seed, stream);
    let mut acc = Accumulator::default();
    for _ in 0..count {
        let c = sample_capacity(spec, &mut rng).map_err(|e| {
            Error::Numerical(format!(
                "{e} (stream {stream} after {} of {count} samples)",
                acc.count
            ))
        })?;
        acc.push(c);
    }
    Ok(acc)
}

fn finish(
    spec: &EnsembleSpec,
    per_stream: Vec<Result<Accumulator>>,
    n_samples: u64,
    seed: u64,
) -> Result<CapacityEstimate> {
    let mut total = Accumulator::default();
    // Merge in stream order; with per-stream results fixed, the estimate
    // cannot depend on the number of worker threads.
    for acc in per_stream {
        total = total.merge(acc?);
    }
    debug_assert_eq!(total.count, n_samples, "lost samples for {spec}");
    let n = total.count as f64;
    Ok(CapacityEstimate {
        mean: total.mean,
        stderr: (total.m2 / ((n - 1.0) * n)).sqrt(),
        n_samples,
        seed,
    })
}

fn validate_mc_inputs(n_samples: u64) -> Result<()> {
    if n_samples < 2 {
        return Err(Error::Domain(format!(
            "estimation needs n_samples >= 2, got {n_samples}"
        )));
    }
    Ok(())
}

/// Monte Carlo estimate of the mean capacity over `n_samples`
/// independent draws.
///
/// Deterministic: the same `(spec, n_samples, seed)` produces a
/// bit-identical estimate on every run and for every thread count, with
/// or without the `parallel` feature.
#[cfg(feature = "parallel")]
pub fn estimate_mean_capacity(
    spec: &EnsembleSpec,
    n_samples: u64,
    seed: u64,
) -> Result<CapacityEstimate> {
    use rayon::prelude::*;

    validate_mc_inputs(n_samples)?;
    let per_stream: Vec<Result<Accumulator>> = (0..N_STREAMS)
        .into_par_iter()
        .map(|stream| accumulate_stream(spec, seed, stream, n_samples))
        .collect();
    finish(spec, per_stream, n_samples, seed)
}

/// Monte Carlo estimate of the mean capacity over `n_samples`
/// independent draws (sequential build).
#[cfg(not(feature = "parallel"))]
pub fn estimate_mean_capacity(
    spec: &EnsembleSpec,
    n_samples: u64,
    seed: u64,
) -> Result<CapacityEstimate> {
    estimate_mean_capacity_serial(spec, n_samples, seed)
}

/// Sequential twin of [`estimate_mean_capacity`]; same streams, same
/// merge order, bit-identical result. Exists so the parallel path has an
/// in-tree reference to be diffed and benchmarked against.
pub fn estimate_mean_capacity_serial(
    spec: &EnsembleSpec,
    n_samples: u64,
    seed: u64,
) -> Result<CapacityEstimate> {
    validate_mc_inputs(n_samples)?;
    let per_stream: Vec<Result<Accumulator>> = (0..N_STREAMS)
        .map(|stream| accumulate_stream(spec, seed, stream, n_samples))
        .collect();
    finish(spec, per_stream, n_samples, seed)
}
