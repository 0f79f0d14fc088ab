//! Dense complex linear algebra for the ensemble samplers.
//!
//! One matrix type and two factorizations cover everything the Monte
//! Carlo route needs: a Householder QR whose R-diagonal phase fix turns a
//! Gaussian matrix into a Haar-distributed unitary (real input stays
//! exactly real, so the same code yields Haar orthogonal matrices), and a
//! cyclic Jacobi eigensolver for Hermitian matrices. Sizes stay small
//! (hundreds at most), so simplicity and verifiability win over BLAS.

use num::complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension accepted by [`hermitian_eigenvalues`].
const MAX_EIGEN_DIM: usize = 512;

/// Jacobi sweeps before giving up; each sweep reduces the off-diagonal
/// norm at least quadratically once it is small.
const MAX_SWEEPS: usize = 50;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of (self^dagger self - I); zero for unitary.
    pub fn unitarity_defect(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    dot += self[(k, i)].conj() * self[(k, j)];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// QR-factors a square matrix by Householder reflections and returns Q
/// with each column rescaled by the phase of the matching R-diagonal
/// entry, so that the factorization has a positive real R diagonal.
///
/// That rescaling is what makes Gaussian input come out Haar-distributed;
/// plain QR does not (see Mezzadri, Notices AMS 54 (2007) 592). Real
/// input produces exactly real output, so the orthogonal group needs no
/// separate code path.
pub(crate) fn qr_haar_q(mut a: CMatrix) -> CMatrix {
    assert_eq!(a.rows, a.cols, "QR phase fix expects a square matrix");
    let n = a.rows;
    let mut q = CMatrix::identity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    for j in 0..n {
        let norm = a.data[j * n + j..]
            .iter()
            .step_by(n)
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        // Reflector v = x + phase(x_j) * |x| e_j maximizes |v_j|, the
        // cancellation-free sign choice.
        let alpha = a[(j, j)];
        let phase = if alpha.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            alpha / alpha.norm()
        };
        for i in j..n {
            v[i] = a[(i, j)];
        }
        v[j] += phase * norm;
        let vnorm2: f64 = v[j..n].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }

        // A <- H A with H = I - 2 v v^dagger / (v^dagger v).
        for col in j..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in j..n {
                dot += v[i].conj() * a[(i, col)];
            }
            let f = dot * (2.0 / vnorm2);
            for i in j..n {
                let d = f * v[i];
                a[(i, col)] -= d;
            }
        }
        // Q <- Q H accumulates Q = H_0 H_1 ... H_{n-1}.
        for r in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in j..n {
                dot += q[(r, i)] * v[i];
            }
            let f = dot * (2.0 / vnorm2);
            for i in j..n {
                let d = f * v[i].conj();
                q[(r, i)] -= d;
            }
        }
    }

    for j in 0..n {
        let r = a[(j, j)];
        let mag = r.norm();
        let phase = if mag == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            r / mag
        };
        for i in 0..n {
            let scaled = q[(i, j)] * phase;
            q[(i, j)] = scaled;
        }
    }
    q
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations (each off-diagonal entry is phase-rotated to the real axis,
/// then annihilated by a plane rotation).
///
/// # Errors
///
/// [`Error::Domain`] for a non-square or oversized matrix or one that is
/// not Hermitian to 1e-10; [`Error::Numerical`] if the off-diagonal norm
/// has not dropped below 1e-12 of the matrix norm after 50 sweeps.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let n = m.rows;
    if n != m.cols {
        return Err(Error::Domain(format!(
            "eigensolver expects a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::Domain(format!(
            "eigensolver supports dimensions up to {MAX_EIGEN_DIM}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let scale = m.norm_fro();
    let herm_tol = 1e-10 * scale.max(1.0);
    for i in 0..n {
        for j in i..n {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > herm_tol {
                return Err(Error::Domain(format!(
                    "matrix is not Hermitian at ({i}, {j})"
                )));
            }
        }
    }

    let mut a = m.clone();
    let target = 1e-12 * scale;
    // Entries below this cannot keep the off-diagonal norm above target
    // even if every one of them survives, so rotating them is wasted.
    let skip = target / (2.0 * (n * n) as f64);

    for _ in 0..MAX_SWEEPS {
        let mut off2 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off2 += 2.0 * a[(i, j)].norm_sqr();
            }
        }
        if off2.sqrt() <= target {
            let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
            eig.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(eig);
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let mag = beta.norm();
                if mag <= skip {
                    continue;
                }
                let u = beta / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let d = u.conj();

                // M <- M G, G = [[c, s], [-s d, c d]] in the (p,q) plane.
                for i in 0..n {
                    let vp = a[(i, p)];
                    let vq = a[(i, q)];
                    a[(i, p)] = vp * c - vq * (d * s);
                    a[(i, q)] = vp * s + vq * (d * c);
                }
                // M <- G^dagger M.
                for i in 0..n {
                    let wp = a[(p, i)];
                    let wq = a[(q, i)];
                    a[(p, i)] = wp * c - wq * (u * s);
                    a[(q, i)] = wp * s + wq * (u * c);
                }
            }
        }
    }
    Err(Error::Numerical(format!(
        "eigensolver did not converge within {MAX_SWEEPS} sweeps on a {n}x{n} matrix"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_complex(n: usize, rng: &mut ChaCha12Rng) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn qr_q_is_unitary_with_positive_real_r_diagonal() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for n in [1usize, 2, 5, 9] {
            let a = random_complex(n, &mut rng);
            let q = qr_haar_q(a.clone());
            assert!(q.unitarity_defect() < 1e-12, "defect at n={n}");

            // R = Q^dagger A must be upper triangular with positive real
            // diagonal; that is exactly the phase-fix contract.
            let mut r = CMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        dot += q[(k, i)].conj() * a[(k, j)];
                    }
                    r[(i, j)] = dot;
                }
            }
            for i in 0..n {
                assert!(r[(i, i)].re > 0.0, "diag r[{i}] = {}", r[(i, i)]);
                assert!(r[(i, i)].im.abs() < 1e-12);
                for j in 0..i {
                    assert!(r[(i, j)].norm() < 1e-12, "below diagonal at ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn qr_keeps_real_input_exactly_real() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let n = 8;
        let mut a = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            }
        }
        let q = qr_haar_q(a);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(q[(i, j)].im, 0.0, "imaginary leak at ({i}, {j})");
            }
        }
        assert!(q.unitarity_defect() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_identity() {
        let eig = hermitian_eigenvalues(&CMatrix::identity(3)).unwrap();
        assert_eq!(eig.len(), 3);
        for v in eig {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn recovers_known_spectrum_under_conjugation() {
        // U is unitary by construction: a rotation with a column phase.
        let mut u = CMatrix::zeros(2, 2);
        u[(0, 0)] = Complex64::new(0.6, 0.0);
        u[(0, 1)] = Complex64::new(0.0, 0.8);
        u[(1, 0)] = Complex64::new(-0.8, 0.0);
        u[(1, 1)] = Complex64::new(0.0, 0.6);
        let d = [0.2, 0.7];
        let mut m = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    sum += u[(i, k)] * d[k] * u[(j, k)].conj();
                }
                m[(i, j)] = sum;
            }
        }
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!((eig[0] - 0.2).abs() < 1e-10 && (eig[1] - 0.7).abs() < 1e-10);
    }

    #[test]
    fn two_by_two_with_exact_spectrum() {
        // trace 3, determinant 0: eigenvalues {0, 3}.
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        m[(0, 1)] = Complex64::new(1.0, -1.0);
        m[(1, 0)] = Complex64::new(1.0, 1.0);
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!(eig[0].abs() < 1e-12 && (eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_spectrum_is_stable() {
        let mut m = CMatrix::identity(4);
        for i in 0..4 {
            m[(i, i)] = Complex64::new(0.5, 0.0);
        }
        let eig = hermitian_eigenvalues(&m).unwrap();
        for v in eig {
            assert_eq!(v, 0.5);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 0)] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hermitian_eigenvalues(&CMatrix::zeros(2, 3)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hermitian_eigenvalues(&CMatrix::zeros(513, 513)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let eig = hermitian_eigenvalues(&CMatrix::zeros(3, 3)).unwrap();
        assert_eq!(eig, vec![0.0, 0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn trace_is_preserved(
            seed in 0u64..1000,
            n in 1usize..=8,
        ) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let g = random_complex(n, &mut rng);
            // Hermitian part of a random matrix.
            let mut m = CMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = (g[(i, j)] + g[(j, i)].conj()) * 0.5;
                }
            }
            let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
            let eig = hermitian_eigenvalues(&m).unwrap();
            let sum: f64 = eig.iter().sum();
            prop_assert!((sum - trace).abs() < 1e-10 * trace.abs().max(1.0));
        }
    }
}
