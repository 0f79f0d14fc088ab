//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes surfaced by the library.
///
/// `Domain` means the caller asked for something outside the mathematical
/// domain of the operation (bad ensemble parameters, a spectrum entry outside
/// `[-1, 1]`, a pole of a special function). `Numerical` means an internal
/// computation lost its footing (NaN from an integrand, an eigensolver that
/// failed to converge). `Tolerance` means an adaptive routine ran out of
/// budget before reaching its target accuracy; the best estimate and its
/// error bound are carried so the caller can decide whether it is usable.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Internal numerical failure (NaN/Inf, non-convergence).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Adaptive refinement hit its budget before reaching the target.
    #[error(
        "tolerance not reached: value={value:.17e}, est_error={est_error:.3e}, n_nodes={n_nodes}"
    )]
    Tolerance {
        /// Best estimate at the point the budget ran out.
        value: f64,
        /// Estimated absolute error of `value`.
        est_error: f64,
        /// Number of integrand evaluations spent.
        n_nodes: usize,
    },
}
