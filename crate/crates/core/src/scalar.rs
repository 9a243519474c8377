//! Scalar types the models are generic over.

use nalgebra::RealField;
use num_complex::Complex;

/// Real floating-point scalar with the tolerances the models need.
///
/// Tolerances are precision dependent; the `f64` values are the ones the
/// documented invariants are stated in.
pub trait Real: RealField + Copy {
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self;
    /// Largest `|O - O†|` entry accepted as Hermitian.
    fn hermiticity_tol() -> Self;
    /// Default gap below which two unperturbed levels count as degenerate.
    fn degeneracy_tol() -> Self;
    /// Trace and Hermiticity slack for density matrices.
    fn state_tol() -> Self;
    /// Slack for negative eigenvalues of density matrices and for
    /// symplectic eigenvalues below 1/2.
    fn psd_tol() -> Self;
    fn to_f64(self) -> f64;
}

macro_rules! impl_real {
    ($t:ty, $herm:expr, $degen:expr, $state:expr, $psd:expr) => {
        impl Real for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }
            fn hermiticity_tol() -> Self {
                $herm
            }
            fn degeneracy_tol() -> Self {
                $degen
            }
            fn state_tol() -> Self {
                $state
            }
            fn psd_tol() -> Self {
                $psd
            }
            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_real!(f64, 1e-12, 1e-9, 1e-12, 1e-10);
impl_real!(f32, 1e-5, 1e-5, 1e-5, 1e-5);

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
