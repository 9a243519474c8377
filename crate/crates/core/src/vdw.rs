//! London model of the dispersion interaction: two identical charged
//! harmonic oscillators a distance `R` apart, coupled through the bilinear
//! dipole term of the Coulomb expansion,
//!
//! ```text
//! H = p₁²/2m + mω₀²x₁²/2 + p₂²/2m + mω₀²x₂²/2 + λ x₁x₂,   λ = −2 k e² / R³
//! ```
//!
//! with `k` the Coulomb constant. Everything is in reduced units (ħ = 1).
//! The dimensionless coupling `u = λ / (mω₀²)` must satisfy `|u| < 1`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::operator::{eig_real_symmetric, ladder, quadratures, tensor};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VdwConfig<T> {
    pub mass: T,
    pub freq: T,
    pub charge: T,
    pub coulomb_k: T,
    pub separation: T,
}

impl<T: Real> VdwConfig<T> {
    pub fn new(mass: T, freq: T, charge: T, coulomb_k: T, separation: T) -> Result<Self> {
        let cfg = Self {
            mass,
            freq,
            charge,
            coulomb_k,
            separation,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Unit charge and Coulomb constant, with the separation chosen so that
    /// `|λ| / (mω₀²) = u`. `u = 0` gives an uncharged pair at `R = 1`.
    pub fn from_coupling_ratio(mass: T, freq: T, u: T) -> Result<Self> {
        if u < T::zero() {
            return Err(Error::InvalidArgument(
                "coupling ratio must be nonnegative".into(),
            ));
        }
        if u == T::zero() {
            return Self::new(mass, freq, T::zero(), T::one(), T::one());
        }
        let r3 = T::lit(2.0) / (u * mass * freq * freq);
        Self::new(mass, freq, T::one(), T::one(), r3.cbrt())
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.mass, "mass"),
            (self.freq, "frequency"),
            (self.coulomb_k, "Coulomb constant"),
            (self.separation, "separation"),
        ];
        for (value, name) in checks {
            if !(value > T::zero()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        if !self.charge.is_finite() {
            return Err(Error::InvalidArgument("charge must be finite".into()));
        }
        Ok(())
    }

    /// `u = λ / (mω₀²)`; negative for any nonzero charge.
    pub fn coupling_ratio(&self) -> T {
        dipole_coupling_lambda(self) / (self.mass * self.freq * self.freq)
    }

    fn check_stable(&self) -> Result<T> {
        let u = self.coupling_ratio();
        let margin = T::one() - u.abs();
        if !(margin > T::zero()) {
            return Err(Error::Unstable(margin.to_f64()));
        }
        Ok(u)
    }
}

/// Frequencies of the two decoupled normal modes.
///
/// `omega_plus` belongs to the antisymmetric coordinate `(x₁ − x₂)/√2`,
/// `ω₀√(1 − u)`, and `omega_minus` to the symmetric one, `ω₀√(1 + u)`. For
/// the attractive sign `λ ≤ 0` this gives `omega_plus ≥ omega_minus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes<T> {
    pub omega_plus: T,
    pub omega_minus: T,
}

/// The first excited manifold above the coupled ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitedManifold<T> {
    /// Lower single-quantum excitation energy, `min(ω₊, ω₋)`.
    pub lower: T,
    pub upper: T,
    /// `(ω₊ + ω₋)/2 − ω₀`
    pub mean_shift: T,
}

impl<T: Real> ExcitedManifold<T> {
    pub fn splitting(&self) -> T {
        self.upper - self.lower
    }
}

/// Coefficient of `x₁x₂` in the dipole expansion: `−2 k e² / R³`.
pub fn dipole_coupling_lambda<T: Real>(cfg: &VdwConfig<T>) -> T {
    let r3 = cfg.separation * cfg.separation * cfg.separation;
    -T::lit(2.0) * cfg.coulomb_k * cfg.charge * cfg.charge / r3
}

pub fn normal_modes<T: Real>(cfg: &VdwConfig<T>) -> Result<NormalModes<T>> {
    let u = cfg.check_stable()?;
    Ok(NormalModes {
        omega_plus: cfg.freq * (T::one() - u).sqrt(),
        omega_minus: cfg.freq * (T::one() + u).sqrt(),
    })
}

/// Exact ground-state energy shift `(ω₊ + ω₋)/2 − ω₀`.
///
/// Evaluated as `−ω₀u² / ((a + b)(1 + a)(1 + b))` with `a = √(1+u)`,
/// `b = √(1−u)`, which is algebraically identical and free of cancellation
/// at large separation.
pub fn exact_ground_shift<T: Real>(cfg: &VdwConfig<T>) -> Result<T> {
    let u = cfg.check_stable()?;
    let a = (T::one() + u).sqrt();
    let b = (T::one() - u).sqrt();
    let one = T::one();
    Ok(-cfg.freq * u * u / ((a + b) * (one + a) * (one + b)))
}

/// Second-order ground-state shift `−k²e⁴ / (2m²ω₀³R⁶)`, i.e.
/// `−e⁴ / (32π²ε₀²m²ω₀³R⁶)` with `k = 1/(4πε₀)`.
pub fn perturbative_ground_shift<T: Real>(cfg: &VdwConfig<T>) -> T {
    let e2 = cfg.charge * cfg.charge;
    let r3 = cfg.separation * cfg.separation * cfg.separation;
    let numerator = cfg.coulomb_k * cfg.coulomb_k * e2 * e2;
    let denominator = T::lit(2.0) * cfg.mass * cfg.mass * cfg.freq * cfg.freq * cfg.freq * r3 * r3;
    -numerator / denominator
}

/// The same shift assembled from its ingredients: the squared coupling times
/// `|⟨1,1|x₁x₂|0,0⟩|²` over the energy denominator `−2ω₀`.
pub fn perturbative_ground_shift_from_matrix_element<T: Real>(cfg: &VdwConfig<T>) -> Result<T> {
    let lambda = dipole_coupling_lambda(cfg);
    let element = matrix_element_x1x2(cfg)?;
    Ok(lambda * lambda * element * element / (-T::lit(2.0) * cfg.freq))
}

/// `⟨1,1|x₁x₂|0,0⟩ = ⟨1,1|(a₁+a₁†)(a₂+a₂†)|0,0⟩ / (2mω₀)`, with the
/// dimensionless element read off the two-level-truncated operators.
pub fn matrix_element_x1x2<T: Real>(cfg: &VdwConfig<T>) -> Result<T> {
    let a = ladder::<T>(2)?;
    let q = a.plus(&a.adjoint())?;
    let qq = tensor(&[&q, &q])?;
    // |1,1⟩ is index 3 in the row-major two-mode basis
    Ok(qq.matrix()[(3, 0)].re / (T::lit(2.0) * cfg.mass * cfg.freq))
}

pub fn excited_state_shift<T: Real>(cfg: &VdwConfig<T>) -> Result<ExcitedManifold<T>> {
    let modes = normal_modes(cfg)?;
    Ok(ExcitedManifold {
        lower: modes.omega_plus.min(modes.omega_minus),
        upper: modes.omega_plus.max(modes.omega_minus),
        mean_shift: exact_ground_shift(cfg)?,
    })
}

/// Polarizability of a charged harmonic oscillator, `2e² / (mω₀²)`.
pub fn polarizability<T: Real>(cfg: &VdwConfig<T>) -> T {
    T::lit(2.0) * cfg.charge * cfg.charge / (cfg.mass * cfg.freq * cfg.freq)
}

/// A quantity computed on a truncated Fock space, with the change relative
/// to the same computation at `n_max − 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockResult<T> {
    pub value: T,
    pub n_max: usize,
    pub change: T,
    pub converged: bool,
}

pub const FOCK_CONVERGENCE_TOL: f64 = 1e-8;

/// Two-oscillator Hamiltonian on `n_max²` Fock states:
/// `ω₀(a₁†a₁ + a₂†a₂ + 1) + λ x₁x₂`.
pub(crate) fn fock_hamiltonian<T: Real>(cfg: &VdwConfig<T>, n_max: usize) -> Result<DMatrix<T>> {
    let (x, _) = quadratures(n_max, cfg.mass, cfg.freq)?;
    let x = x.matrix().map(|z| z.re);
    let lambda = dipole_coupling_lambda(cfg);
    let mut h = x.kronecker(&x) * lambda;
    for i in 0..n_max {
        for j in 0..n_max {
            h[(i * n_max + j, i * n_max + j)] += cfg.freq * T::lit((i + j + 1) as f64);
        }
    }
    Ok(h)
}

pub(crate) fn fock_ground_state<T: Real>(
    cfg: &VdwConfig<T>,
    n_max: usize,
) -> Result<(T, nalgebra::DVector<T>)> {
    let (values, vectors) = eig_real_symmetric(fock_hamiltonian(cfg, n_max)?)?;
    Ok((values[0], vectors.column(0).into_owned()))
}

/// Ground-state shift by brute-force diagonalization on the truncated Fock
/// space, independent of the normal-mode solution.
pub fn vdw_fock_oracle<T: Real>(cfg: &VdwConfig<T>, n_max: usize) -> Result<FockResult<T>> {
    if n_max < 8 {
        return Err(Error::InvalidTruncation(n_max, 8));
    }
    cfg.check_stable()?;
    let value = fock_ground_state(cfg, n_max)?.0 - cfg.freq;
    let coarse = fock_ground_state(cfg, n_max - 2)?.0 - cfg.freq;
    let change = (value - coarse).abs();
    Ok(FockResult {
        value,
        n_max,
        change,
        converged: change <= T::lit(FOCK_CONVERGENCE_TOL),
    })
}
