//! Rayleigh–Schrödinger energy shifts of a basis state of a diagonal
//! Hamiltonian under a Hermitian perturbation, to first and second order.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationResult<T> {
    pub state_index: usize,
    /// `⟨i|H_I|i⟩`
    pub first_order: T,
    /// `Σ_{n≠i} |⟨n|H_I|i⟩|² / (E_i − E_n)`
    pub second_order: T,
    /// Number of intermediate states with a nonzero matrix element.
    pub terms_used: usize,
    /// Smallest `|E_i − E_n|` among the contributing terms; infinite when
    /// nothing contributes.
    pub min_denominator: T,
}

impl<T: Real> PerturbationResult<T> {
    /// `first_order + second_order`.
    pub fn total(&self) -> T {
        self.first_order + self.second_order
    }
}

/// First- and second-order shift of basis state `i`.
///
/// `h0_diag` holds the unperturbed energies in the basis where `H₀` is
/// diagonal. Intermediate states with a vanishing matrix element are skipped
/// before the degeneracy check, so accidental degeneracies in uncoupled
/// sectors are harmless.
pub fn second_order_shift<T: Real>(
    h0_diag: &DVector<T>,
    h_int: &HermitianOperator<T>,
    i: usize,
    tol_degeneracy: T,
) -> Result<PerturbationResult<T>> {
    let dim = h0_diag.len();
    if h_int.dim() != dim {
        return Err(Error::InvalidArgument(format!(
            "H0 has {dim} levels but H_I has dim {}",
            h_int.dim()
        )));
    }
    if i >= dim {
        return Err(Error::InvalidArgument(format!(
            "state index {i} out of range 0..{dim}"
        )));
    }
    if !(tol_degeneracy > T::zero()) {
        return Err(Error::InvalidArgument(
            "degeneracy tolerance must be positive".into(),
        ));
    }

    let m = h_int.matrix();
    let e_i = h0_diag[i];
    let mut second_order = T::zero();
    let mut terms_used = 0;
    let mut min_denominator = T::max_value().unwrap_or_else(|| T::lit(f64::MAX));
    for n in 0..dim {
        if n == i {
            continue;
        }
        let weight = m[(n, i)].norm_sqr();
        if weight == T::zero() {
            continue;
        }
        let gap = e_i - h0_diag[n];
        if gap.abs() < tol_degeneracy {
            return Err(Error::Degeneracy {
                i,
                n,
                gap: gap.to_f64(),
            });
        }
        second_order += weight / gap;
        terms_used += 1;
        if gap.abs() < min_denominator {
            min_denominator = gap.abs();
        }
    }

    Ok(PerturbationResult {
        state_index: i,
        first_order: m[(i, i)].re,
        second_order,
        terms_used,
        min_denominator,
    })
}

/// Second-order shift of the transition `i_ground → i_excited`:
/// `ΔE_excited − ΔE_ground`.
pub fn transition_shift<T: Real>(
    h0_diag: &DVector<T>,
    h_int: &HermitianOperator<T>,
    i_excited: usize,
    i_ground: usize,
    tol_degeneracy: T,
) -> Result<T> {
    if i_excited == i_ground {
        return Err(Error::InvalidArgument(
            "transition endpoints must differ".into(),
        ));
    }
    let excited = second_order_shift(h0_diag, h_int, i_excited, tol_degeneracy)?;
    let ground = second_order_shift(h0_diag, h_int, i_ground, tol_degeneracy)?;
    Ok(excited.second_order - ground.second_order)
}
