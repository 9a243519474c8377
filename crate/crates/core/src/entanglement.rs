//! Entanglement measures for the coupled-oscillator ground state and for
//! two-qubit states.
//!
//! Gaussian covariance matrices use the ordering `(x₁, p₁, x₂, p₂)` with
//! dimensionless quadratures `x̃ = √(mω₀) x`, `p̃ = p / √(mω₀)`, so the vacuum
//! has covariance `diag(1/2, 1/2, 1/2, 1/2)`. Logarithmic negativities use
//! the natural logarithm.

use nalgebra::{Cholesky, ComplexField, Matrix3, Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::operator::{eig_real_symmetric, pauli, Axis, CMatrix};
use crate::scalar::{re, Real};
use crate::vdw::{fock_ground_state, normal_modes, FockResult, VdwConfig, FOCK_CONVERGENCE_TOL};

/// Covariance matrix of a zero-mean two-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTwoModeState<T: Real> {
    cov: Matrix4<T>,
}

impl<T: Real> GaussianTwoModeState<T> {
    /// Checks symmetry, positivity and the uncertainty relation (both
    /// symplectic eigenvalues at least 1/2).
    pub fn new(cov: Matrix4<T>) -> Result<Self> {
        let asym = (cov - cov.transpose()).amax();
        if asym > T::hermiticity_tol() {
            return Err(Error::UncertaintyViolation(format!(
                "covariance is not symmetric (defect {:e})",
                asym.to_f64()
            )));
        }
        if Cholesky::new(cov).is_none() {
            return Err(Error::UncertaintyViolation(
                "covariance is not positive definite".into(),
            ));
        }
        let state = Self { cov };
        let (nu_minus, _) = state.symplectic_eigenvalues();
        if nu_minus < T::lit(0.5) - T::psd_tol() {
            return Err(Error::UncertaintyViolation(format!(
                "smallest symplectic eigenvalue {} < 1/2",
                nu_minus.to_f64()
            )));
        }
        Ok(state)
    }

    pub fn vacuum() -> Self {
        Self {
            cov: Matrix4::identity() * T::lit(0.5),
        }
    }

    pub fn cov(&self) -> &Matrix4<T> {
        &self.cov
    }

    /// Symplectic eigenvalues `(ν₋, ν₊)`.
    pub fn symplectic_eigenvalues(&self) -> (T, T) {
        symplectic_pair(&self.cov)
    }

    /// Symplectic eigenvalues of the partial transpose `p₂ → −p₂`.
    pub fn partial_transpose_symplectic_eigenvalues(&self) -> (T, T) {
        let flip = Matrix4::from_diagonal(&Vector4::new(T::one(), T::one(), T::one(), -T::one()));
        symplectic_pair(&(flip * self.cov * flip))
    }
}

// The eigenvalues of the Hermitian matrix σ^{1/2} (iΩ) σ^{1/2} are ±ν₁, ±ν₂.
fn symplectic_pair<T: Real>(cov: &Matrix4<T>) -> (T, T) {
    let eig = SymmetricEigen::new(*cov);
    let roots = eig.eigenvalues.map(|v| v.max(T::zero()).sqrt());
    let half = eig.eigenvectors * Matrix4::from_diagonal(&roots) * eig.eigenvectors.transpose();
    let (o, one) = (T::zero(), T::one());
    #[rustfmt::skip]
    let omega = Matrix4::new(
        o, one, o, o,
        -one, o, o, o,
        o, o, o, one,
        o, o, -one, o,
    );
    let half_c = half.map(re);
    let i_omega = omega.map(|w| Complex::new(T::zero(), w));
    let m = half_c * i_omega * half_c;
    let mut nu: Vec<T> = hermitian_eigenvalues(&m)
        .map(|v| v.iter().map(|x| x.abs()).collect())
        .unwrap_or_else(|_| vec![T::zero(); 4]);
    nu.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    // each value appears twice (±ν)
    (nu[0], nu[3])
}

/// Covariance matrix of the coupled-oscillator ground state, from the
/// normal-mode solution.
///
/// With `ω_s = ω₀√(1+u)` (symmetric mode) and `ω_a = ω₀√(1−u)`
/// (antisymmetric mode):
/// `⟨x̃₁²⟩ = (ω₀/4)(1/ω_s + 1/ω_a)`, `⟨x̃₁x̃₂⟩ = (ω₀/4)(1/ω_s − 1/ω_a)`,
/// `⟨p̃₁²⟩ = (ω_s + ω_a)/(4ω₀)`, `⟨p̃₁p̃₂⟩ = (ω_s − ω_a)/(4ω₀)`.
/// For attractive coupling (`λ < 0`) positions are positively and momenta
/// negatively correlated.
pub fn ground_state_covariance<T: Real>(cfg: &VdwConfig<T>) -> Result<GaussianTwoModeState<T>> {
    let modes = normal_modes(cfg)?;
    let (ws, wa) = (modes.omega_minus, modes.omega_plus);
    let w0 = cfg.freq;
    let quarter = T::lit(0.25);
    let xx = quarter * w0 * (T::one() / ws + T::one() / wa);
    let x12 = quarter * w0 * (T::one() / ws - T::one() / wa);
    let pp = quarter * (ws + wa) / w0;
    let p12 = quarter * (ws - wa) / w0;
    let z = T::zero();
    #[rustfmt::skip]
    let cov = Matrix4::new(
        xx,  z,   x12, z,
        z,   pp,  z,   p12,
        x12, z,   xx,  z,
        z,   p12, z,   pp,
    );
    GaussianTwoModeState::new(cov)
}

/// `E_N = max(0, −ln(2ν̃₋))`, with `ν̃₋` the smaller symplectic eigenvalue of
/// the partial transpose.
pub fn log_negativity_gaussian<T: Real>(state: &GaussianTwoModeState<T>) -> T {
    let (nu, _) = state.partial_transpose_symplectic_eigenvalues();
    (-(T::lit(2.0) * nu).ln()).max(T::zero())
}

/// Logarithmic negativity `ln(1 + 2N)` of the truncated-Fock ground state,
/// where `N` is the sum of the magnitudes of the negative eigenvalues of the
/// density matrix partially transposed on the second oscillator.
pub fn negativity_fock_oracle<T: Real>(cfg: &VdwConfig<T>, n_max: usize) -> Result<FockResult<T>> {
    if n_max < 12 {
        return Err(Error::InvalidTruncation(n_max, 12));
    }
    normal_modes(cfg)?;
    let value = fock_log_negativity(cfg, n_max)?;
    let coarse = fock_log_negativity(cfg, n_max - 2)?;
    let change = (value - coarse).abs();
    Ok(FockResult {
        value,
        n_max,
        change,
        converged: change <= T::lit(FOCK_CONVERGENCE_TOL),
    })
}

fn fock_log_negativity<T: Real>(cfg: &VdwConfig<T>, n_max: usize) -> Result<T> {
    let (_, psi) = fock_ground_state(cfg, n_max)?;
    let n = n_max;
    let amp = |i: usize, j: usize| psi[i * n + j];
    // ρ^{T₂}[(i,j),(k,l)] = ρ[(i,l),(k,j)] = ψ(i,l) ψ(k,j)
    let pt = nalgebra::DMatrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (r / n, r % n);
        let (k, l) = (c / n, c % n);
        amp(i, l) * amp(k, j)
    });
    let (values, _) = eig_real_symmetric(pt)?;
    let negativity = values
        .iter()
        .filter(|&&v| v < T::zero())
        .fold(T::zero(), |acc, &v| acc - v);
    Ok((T::lit(2.0) * negativity).ln_1p())
}

/// Two-qubit density matrix in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState<T: Real> {
    rho: Matrix4<Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl<T: Real> TwoQubitState<T> {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(rho: Matrix4<Complex<T>>) -> Result<Self> {
        let herm = (rho - rho.adjoint())
            .iter()
            .fold(T::zero(), |m, z| m.max(z.modulus()));
        if herm > T::state_tol() {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {:e})",
                herm.to_f64()
            )));
        }
        let trace = rho.trace();
        if (trace - re(T::one())).modulus() > T::state_tol() {
            return Err(Error::InvalidState(format!(
                "trace {} != 1",
                trace.re.to_f64()
            )));
        }
        let eig = hermitian_eigenvalues(&rho)?;
        let min = eig
            .iter()
            .fold(T::max_value().unwrap_or(T::one()), |m, &v| m.min(v));
        if min < -T::psd_tol() {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                min.to_f64()
            )));
        }
        Ok(Self { rho })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn pure(psi: &Vector4<Complex<T>>) -> Result<Self> {
        Self::new(psi * psi.adjoint())
    }

    /// `p Φ⁺ + (1 − p) I/4`.
    pub fn werner(p: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidState(format!(
                "Werner weight {} outside [0, 1]",
                p.to_f64()
            )));
        }
        let phi = bell_state::<T>(BellKind::PhiPlus).rho;
        let mixed = Matrix4::identity() * re(T::lit(0.25));
        Self::new(phi * re(p) + mixed * re(T::one() - p))
    }

    pub fn rho(&self) -> &Matrix4<Complex<T>> {
        &self.rho
    }

    /// `(U₁ ⊗ U₂) ρ (U₁ ⊗ U₂)†`.
    pub fn local_unitary(
        &self,
        u1: &nalgebra::Matrix2<Complex<T>>,
        u2: &nalgebra::Matrix2<Complex<T>>,
    ) -> Result<Self> {
        let u = u1.kronecker(u2);
        Self::new(u * self.rho * u.adjoint())
    }
}

fn hermitian_eigenvalues<T: Real>(m: &Matrix4<Complex<T>>) -> Result<Vector4<T>> {
    let sym = (m + m.adjoint()) * re(T::lit(0.5));
    SymmetricEigen::try_new(sym, T::default_epsilon(), 10_000)
        .map(|e| e.eigenvalues)
        .ok_or(Error::EigenFailure(4))
}

pub fn bell_state<T: Real>(kind: BellKind) -> TwoQubitState<T> {
    let h = re(T::lit(0.5).sqrt());
    let o = re(T::zero());
    let psi = match kind {
        BellKind::PhiPlus => Vector4::new(h, o, o, h),
        BellKind::PhiMinus => Vector4::new(h, o, o, -h),
        BellKind::PsiPlus => Vector4::new(o, h, h, o),
        BellKind::PsiMinus => Vector4::new(o, h, -h, o),
    };
    TwoQubitState {
        rho: psi * psi.adjoint(),
    }
}

fn two_qubit_pauli<T: Real>(a: Axis, b: Axis) -> Matrix4<Complex<T>> {
    let pa: CMatrix<T> = pauli::<T>(a).matrix().clone();
    let pb: CMatrix<T> = pauli::<T>(b).matrix().clone();
    let k = pa.kronecker(&pb);
    Matrix4::from_fn(|i, j| k[(i, j)])
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// The `λᵢ` are the square roots of the eigenvalues of `ρ ρ̃`, with
/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`. Writing `ρ = X X†`, they equal the singular
/// values of the complex symmetric matrix `X† (σ_y⊗σ_y) X*`, which avoids
/// square roots of round-off sized eigenvalues for low-rank states.
pub fn concurrence<T: Real>(state: &TwoQubitState<T>) -> Result<T> {
    let rho = state.rho;
    let yy = two_qubit_pauli::<T>(Axis::Y, Axis::Y);
    let eig = SymmetricEigen::try_new(
        (rho + rho.adjoint()) * re(T::lit(0.5)),
        T::default_epsilon(),
        10_000,
    )
    .ok_or(Error::EigenFailure(4))?;

    // drop the numerically null part of the spectrum
    let cutoff = T::default_epsilon() * T::lit(64.0);
    let kept: Vec<usize> = (0..4).filter(|&k| eig.eigenvalues[k] > cutoff).collect();
    if kept.is_empty() {
        return Ok(T::zero());
    }
    let x = CMatrix::from_fn(4, kept.len(), |i, c| {
        eig.eigenvectors[(i, kept[c])] * re(eig.eigenvalues[kept[c]].sqrt())
    });
    let yy = CMatrix::from_fn(4, 4, |i, j| yy[(i, j)]);
    let m = x.adjoint() * yy * x.conjugate();
    let mut lambdas: Vec<T> = m.singular_values().iter().copied().collect();
    lambdas.resize(4, T::zero());
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3])
        .max(T::zero())
        .min(T::one()))
}

/// `T_ab = Tr[ρ σ_a ⊗ σ_b]` for `a, b ∈ {x, y, z}`.
pub fn correlation_matrix<T: Real>(state: &TwoQubitState<T>) -> Matrix3<T> {
    let axes = [Axis::X, Axis::Y, Axis::Z];
    Matrix3::from_fn(|a, b| {
        (state.rho * two_qubit_pauli::<T>(axes[a], axes[b]))
            .trace()
            .re
    })
}

/// Largest CHSH value over all measurement settings:
/// `2√(m₁ + m₂)` with `m₁ ≥ m₂` the two largest eigenvalues of `TᵀT`.
pub fn chsh_max<T: Real>(state: &TwoQubitState<T>) -> Result<T> {
    let t = correlation_matrix(state);
    let ttt = t.transpose() * t;
    let (values, _) = eig_real_symmetric(nalgebra::DMatrix::from_fn(3, 3, |i, j| ttt[(i, j)]))?;
    let m = values[1].max(T::zero()) + values[2].max(T::zero());
    Ok(T::lit(2.0) * m.sqrt())
}
