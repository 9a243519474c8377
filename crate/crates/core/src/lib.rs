//! Numerical models of a qubit coupled to a dielectric made of quantum
//! dipoles.
//!
//! * [`operator`]: ladder operators, Pauli matrices, tensor products,
//!   quadratures and Hermitian eigendecomposition.
//! * [`full_model`]: qubit + quantized field modes + dipole oscillators on
//!   truncated Fock spaces, with the dressed qubit transition obtained by
//!   exact diagonalization.
//! * [`perturbation`]: second-order Rayleigh–Schrödinger shifts.
//! * [`vdw`]: the two-oscillator London model of the dispersion force.
//! * [`entanglement`]: Gaussian and Fock-space logarithmic negativity,
//!   concurrence and the maximal CHSH value.
//!
//! All computations are generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`). The aliases at the crate root fix `f64`, the
//! precision every documented tolerance refers to. Units are reduced,
//! ħ = 1.

// `!(x > 0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entanglement;
pub mod error;
pub mod full_model;
pub mod operator;
pub mod perturbation;
pub mod scalar;
pub mod vdw;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Operator = operator::Operator<f64>;
pub type HermitianOperator = operator::HermitianOperator<f64>;
pub type Spectrum = operator::Spectrum<f64>;
pub type FullModelConfig = full_model::FullModelConfig<f64>;
pub type ShiftReport = full_model::ShiftReport<f64>;
pub type PerturbationResult = perturbation::PerturbationResult<f64>;
pub type VdwConfig = vdw::VdwConfig<f64>;
pub type NormalModes = vdw::NormalModes<f64>;
pub type ExcitedManifold = vdw::ExcitedManifold<f64>;
pub type FockResult = vdw::FockResult<f64>;
pub type GaussianTwoModeState = entanglement::GaussianTwoModeState<f64>;
pub type TwoQubitState = entanglement::TwoQubitState<f64>;

/// Single-precision variants.
pub mod f32 {
    pub type HermitianOperator = crate::operator::HermitianOperator<f32>;
    pub type Spectrum = crate::operator::Spectrum<f32>;
    pub type FullModelConfig = crate::full_model::FullModelConfig<f32>;
    pub type VdwConfig = crate::vdw::VdwConfig<f32>;
    pub type GaussianTwoModeState = crate::entanglement::GaussianTwoModeState<f32>;
    pub type TwoQubitState = crate::entanglement::TwoQubitState<f32>;
}
