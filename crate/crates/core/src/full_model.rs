//! Qubit coupled to quantized field modes, which in turn couple to a set of
//! dipole oscillators:
//!
//! ```text
//! H = (ω/2)σ_z + Σ_n ω_n a†_n a_n + Σ_m Ω_m b†_m b_m
//!   + σ_x Σ_k g_k (a†_k + a_k) + Σ_{l,k} f_lk (b†_l + b_l)(a†_k + a_k)
//! ```
//!
//! The product basis is ordered qubit first, then field modes, then dipole
//! modes, each mode truncated to `n_max` Fock levels. With σ_z = diag(1, −1)
//! the qubit's excited level is basis state 0 and its ground level is basis
//! state 1.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::operator::{eig_hermitian, ladder, pauli, tensor, Axis, HermitianOperator, Operator};
use crate::perturbation;
use crate::scalar::{re, Real};

pub const DEFAULT_MAX_DIM: usize = 4096;

/// Change in the dressed shift between `n_max` and `n_max + 2` below which
/// the truncation is considered converged.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Smallest overlap with the bare state accepted when labeling a dressed
/// eigenstate.
pub const IDENTIFICATION_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitLevel {
    Ground,
    Excited,
}

impl QubitLevel {
    /// Basis index within the qubit factor.
    pub fn index(self) -> usize {
        match self {
            QubitLevel::Excited => 0,
            QubitLevel::Ground => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullModelConfig<T: Real> {
    pub qubit_freq: T,
    pub field_freqs: Vec<T>,
    pub dipole_freqs: Vec<T>,
    /// One coupling per field mode.
    pub qubit_field_couplings: Vec<T>,
    /// Rows are dipole modes, columns are field modes.
    pub dipole_field_couplings: DMatrix<T>,
    pub n_max: usize,
    pub max_dim: usize,
}

impl<T: Real> FullModelConfig<T> {
    pub fn new(
        qubit_freq: T,
        field_freqs: Vec<T>,
        dipole_freqs: Vec<T>,
        qubit_field_couplings: Vec<T>,
        dipole_field_couplings: DMatrix<T>,
        n_max: usize,
    ) -> Result<Self> {
        let cfg = Self {
            qubit_freq,
            field_freqs,
            dipole_freqs,
            qubit_field_couplings,
            dipole_field_couplings,
            n_max,
            max_dim: DEFAULT_MAX_DIM,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Qubit and one field mode, no dipoles.
    pub fn single_mode(qubit_freq: T, field_freq: T, g: T, n_max: usize) -> Result<Self> {
        Self::new(
            qubit_freq,
            vec![field_freq],
            vec![],
            vec![g],
            DMatrix::zeros(0, 1),
            n_max,
        )
    }

    /// Each dipole `l` couples only to field mode `l` with strength `f[l]`.
    pub fn diagonal_pairing(
        qubit_freq: T,
        field_freqs: Vec<T>,
        dipole_freqs: Vec<T>,
        g: Vec<T>,
        f: &[T],
        n_max: usize,
    ) -> Result<Self> {
        let (nd, nf) = (dipole_freqs.len(), field_freqs.len());
        if f.len() != nd.min(nf) {
            return Err(Error::InvalidArgument(format!(
                "diagonal pairing needs {} couplings, got {}",
                nd.min(nf),
                f.len()
            )));
        }
        let fm = DMatrix::from_fn(nd, nf, |l, k| if l == k { f[l] } else { T::zero() });
        Self::new(qubit_freq, field_freqs, dipole_freqs, g, fm, n_max)
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }

    pub fn with_n_max(&self, n_max: usize) -> Self {
        Self {
            n_max,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::InvalidTruncation(self.n_max, 2));
        }
        let positive = |x: &T| *x > T::zero();
        if !positive(&self.qubit_freq) {
            return Err(Error::InvalidArgument(
                "qubit frequency must be positive".into(),
            ));
        }
        if !self.field_freqs.iter().all(positive) || !self.dipole_freqs.iter().all(positive) {
            return Err(Error::InvalidArgument(
                "mode frequencies must be positive".into(),
            ));
        }
        if self.qubit_field_couplings.len() != self.field_freqs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} qubit-field couplings for {} field modes",
                self.qubit_field_couplings.len(),
                self.field_freqs.len()
            )));
        }
        let shape = self.dipole_field_couplings.shape();
        if shape != (self.dipole_freqs.len(), self.field_freqs.len()) {
            return Err(Error::InvalidArgument(format!(
                "dipole-field coupling matrix is {}x{}, expected {}x{}",
                shape.0,
                shape.1,
                self.dipole_freqs.len(),
                self.field_freqs.len()
            )));
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.field_freqs.len() + self.dipole_freqs.len()
    }

    /// Factor dimensions in basis order.
    pub fn subsystem_dims(&self) -> Vec<usize> {
        std::iter::once(2)
            .chain(std::iter::repeat_n(self.n_max, self.n_modes()))
            .collect()
    }

    /// Total dimension, or `TooLarge` when it exceeds `max_dim` (or
    /// overflows).
    pub fn total_dim(&self) -> Result<usize> {
        let dim = self
            .subsystem_dims()
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if dim > self.max_dim {
            return Err(Error::TooLarge {
                dim,
                limit: self.max_dim,
            });
        }
        Ok(dim)
    }

    /// Basis index of `|level⟩|vac⟩|vac⟩`.
    pub fn bare_index(&self, level: QubitLevel) -> usize {
        let rest: usize = self.subsystem_dims()[1..].iter().product();
        level.index() * rest
    }

    fn field_site(&self, k: usize) -> usize {
        1 + k
    }

    fn dipole_site(&self, l: usize) -> usize {
        1 + self.field_freqs.len() + l
    }

    fn mode_freqs(&self) -> impl Iterator<Item = T> + '_ {
        self.field_freqs
            .iter()
            .chain(self.dipole_freqs.iter())
            .copied()
    }
}

/// Diagonal of the uncoupled Hamiltonian in the product Fock basis.
pub fn h0_diagonal<T: Real>(cfg: &FullModelConfig<T>) -> Result<DVector<T>> {
    cfg.validate()?;
    let dim = cfg.total_dim()?;
    let dims = cfg.subsystem_dims();
    let freqs: Vec<T> = cfg.mode_freqs().collect();
    let half = T::lit(0.5) * cfg.qubit_freq;
    Ok(DVector::from_fn(dim, |idx, _| {
        // decode row-major digits, last factor least significant
        let mut rem = idx;
        let mut energy = T::zero();
        for site in (1..dims.len()).rev() {
            let occupation = rem % dims[site];
            rem /= dims[site];
            energy += freqs[site - 1] * T::lit(occupation as f64);
        }
        let sz = if rem == 0 { half } else { -half };
        energy + sz
    }))
}

/// Uncoupled Hamiltonian: qubit, field and dipole energies.
pub fn build_h0<T: Real>(cfg: &FullModelConfig<T>) -> Result<HermitianOperator<T>> {
    let diag = h0_diagonal(cfg)?;
    HermitianOperator::from_real(&DMatrix::from_diagonal(&diag), cfg.subsystem_dims())
}

/// Interaction Hamiltonian: qubit–field and dipole–field couplings, counter-
/// rotating terms included.
pub fn build_hint<T: Real>(cfg: &FullModelConfig<T>) -> Result<HermitianOperator<T>> {
    cfg.validate()?;
    cfg.total_dim()?;
    let dims = cfg.subsystem_dims();
    let a = ladder::<T>(cfg.n_max)?;
    let quad = a.plus(&a.adjoint())?;
    let sx = pauli::<T>(Axis::X).into_operator();

    let mut total = Operator::zeros(dims.clone());
    for (k, &g) in cfg.qubit_field_couplings.iter().enumerate() {
        if g == T::zero() {
            continue;
        }
        let term = product_on_sites(&dims, &[(0, &sx), (cfg.field_site(k), &quad)])?;
        total = total.plus(&term.scale(re(g)))?;
    }
    for l in 0..cfg.dipole_freqs.len() {
        for k in 0..cfg.field_freqs.len() {
            let f = cfg.dipole_field_couplings[(l, k)];
            if f == T::zero() {
                continue;
            }
            let term = product_on_sites(
                &dims,
                &[(cfg.dipole_site(l), &quad), (cfg.field_site(k), &quad)],
            )?;
            total = total.plus(&term.scale(re(f)))?;
        }
    }
    HermitianOperator::new(total)
}

fn product_on_sites<T: Real>(
    dims: &[usize],
    locals: &[(usize, &Operator<T>)],
) -> Result<Operator<T>> {
    let ids: Vec<Operator<T>> = dims.iter().map(|&d| Operator::identity(d)).collect();
    let factors: Vec<&Operator<T>> = (0..dims.len())
        .map(|site| {
            locals
                .iter()
                .find(|(s, _)| *s == site)
                .map(|(_, op)| *op)
                .unwrap_or(&ids[site])
        })
        .collect();
    tensor(&factors)
}

/// Bare and dressed qubit transition frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftReport<T> {
    pub bare_transition: T,
    pub dressed_transition: T,
    /// `dressed_transition − bare_transition`
    pub shift: T,
    /// `|⟨g,vac,vac|ground⟩|²` for the identified dressed ground state.
    pub overlap_ground: T,
    pub overlap_excited: T,
    /// Whether repeating at `n_max + 2` moved the shift by less than
    /// [`CONVERGENCE_TOL`].
    pub converged: bool,
}

struct Dressed<T> {
    bare: T,
    dressed: T,
    overlap_ground: T,
    overlap_excited: T,
}

fn solve_dressed<T: Real>(cfg: &FullModelConfig<T>) -> Result<Dressed<T>> {
    let h0 = build_h0(cfg)?;
    let hi = build_hint(cfg)?;
    let spectrum = eig_hermitian(&h0.plus(&hi)?)?;
    let diag = h0.diagonal();

    let pick = |level: QubitLevel| -> Result<(T, T)> {
        let row = cfg.bare_index(level);
        let (best, overlap) = (0..spectrum.len())
            .map(|j| (j, spectrum.vectors[(row, j)].norm_sqr()))
            .fold(
                (0, T::zero()),
                |acc, cur| if cur.1 > acc.1 { cur } else { acc },
            );
        if overlap < T::lit(IDENTIFICATION_THRESHOLD) {
            let which = match level {
                QubitLevel::Ground => "ground",
                QubitLevel::Excited => "excited",
            };
            return Err(Error::IdentificationFailure {
                which,
                overlap: overlap.to_f64(),
            });
        }
        Ok((spectrum.values[best], overlap))
    };
    let (e_g, overlap_ground) = pick(QubitLevel::Ground)?;
    let (e_e, overlap_excited) = pick(QubitLevel::Excited)?;
    Ok(Dressed {
        bare: diag[cfg.bare_index(QubitLevel::Excited)] - diag[cfg.bare_index(QubitLevel::Ground)],
        dressed: e_e - e_g,
        overlap_ground: overlap_ground.min(T::one()),
        overlap_excited: overlap_excited.min(T::one()),
    })
}

/// Dressed qubit transition by exact diagonalization.
///
/// Dressed ground and excited states are the eigenvectors with the largest
/// overlap with `|g,vac,vac⟩` and `|e,vac,vac⟩`. The convergence flag comes
/// from a second solve at `n_max + 2`; if that space would exceed
/// `max_dim` the flag is false.
pub fn dressed_transition<T: Real>(cfg: &FullModelConfig<T>) -> Result<ShiftReport<T>> {
    let base = solve_dressed(cfg)?;
    let shift = base.dressed - base.bare;

    let bigger = cfg.with_n_max(cfg.n_max + 2);
    let converged = match bigger.total_dim() {
        Ok(_) => {
            let refined = solve_dressed(&bigger)?;
            ((refined.dressed - refined.bare) - shift).abs() < T::lit(CONVERGENCE_TOL)
        }
        Err(_) => false,
    };

    Ok(ShiftReport {
        bare_transition: base.bare,
        dressed_transition: base.dressed,
        shift,
        overlap_ground: base.overlap_ground,
        overlap_excited: base.overlap_excited,
        converged,
    })
}

/// Second-order transition shift of the same model,
/// `ΔE(e,vac,vac) − ΔE(g,vac,vac)`.
pub fn perturbative_transition_shift<T: Real>(
    cfg: &FullModelConfig<T>,
    tol_degeneracy: T,
) -> Result<T> {
    let h0 = h0_diagonal(cfg)?;
    let hi = build_hint(cfg)?;
    perturbation::transition_shift(
        &h0,
        &hi,
        cfg.bare_index(QubitLevel::Excited),
        cfg.bare_index(QubitLevel::Ground),
        tol_degeneracy,
    )
}

/// Second-order shift of a qubit coupled to one oscillator through
/// `g σ_x (a + a†)`, evaluated with the perturbation engine on the qubit ⊗
/// two-level-truncated mode space (one photon is all second order reaches).
pub fn dispersive_single_mode<T: Real>(omega: T, omega_c: T, g: T) -> Result<T> {
    let detuning = (omega - omega_c).abs();
    if detuning < T::degeneracy_tol() {
        return Err(Error::NearResonance(detuning.to_f64()));
    }
    let cfg = FullModelConfig::single_mode(omega, omega_c, g, 2)?;
    perturbative_transition_shift(&cfg, T::degeneracy_tol())
}

/// Qubit frequency inside a medium of refractive index `n`: `ω / n`.
pub fn refractive_modulation<T: Real>(omega: T, n: T) -> Result<T> {
    if !(n >= T::one()) {
        return Err(Error::InvalidIndex(n.to_f64()));
    }
    if !(omega > T::zero()) {
        return Err(Error::InvalidArgument(
            "qubit frequency must be positive".into(),
        ));
    }
    Ok(omega / n)
}
