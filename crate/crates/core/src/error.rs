use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Fock truncation n_max = {0} (need at least {1})")]
    InvalidTruncation(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operator is not Hermitian: max |O - O^dagger| = {0:e}")]
    HermiticityViolation(f64),
    #[error("Hilbert space dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("eigendecomposition did not converge (dim {0})")]
    EigenFailure(usize),
    #[error("cannot identify dressed {which} state: best overlap {overlap:.6} < 0.5")]
    IdentificationFailure { which: &'static str, overlap: f64 },
    #[error("near resonance: |omega - omega_c| = {0:e} is below the degeneracy tolerance")]
    NearResonance(f64),
    #[error("invalid refractive index {0} (must be >= 1)")]
    InvalidIndex(f64),
    #[error("degenerate coupled levels {i} and {n}: |E_i - E_n| = {gap:e}")]
    Degeneracy { i: usize, n: usize, gap: f64 },
    #[error("unstable configuration: 1 - |u| = {0:e} <= 0 gives an imaginary normal mode")]
    Unstable(f64),
    #[error("covariance matrix violates the uncertainty principle: {0}")]
    UncertaintyViolation(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
