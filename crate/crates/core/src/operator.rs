//! Finite-dimensional operator algebra: ladder operators, Pauli matrices,
//! Kronecker products, oscillator quadratures and Hermitian
//! eigendecomposition.
//!
//! Composite spaces use the row-major product basis: the first factor of a
//! tensor product is the most significant digit of the basis index. All
//! quantities are in reduced units with ħ = 1.

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;

/// A dense complex matrix together with the dimensions of the subsystems
/// whose product space it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real> {
    matrix: CMatrix<T>,
    subsystem_dims: Vec<usize>,
}

impl<T: Real> Operator<T> {
    /// Wraps a square matrix; `subsystem_dims` must multiply to its size.
    pub fn new(matrix: CMatrix<T>, subsystem_dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument(format!(
                "operator matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "subsystem dimensions must be positive".into(),
            ));
        }
        let prod: usize = subsystem_dims.iter().product();
        if prod != matrix.nrows() {
            return Err(Error::InvalidArgument(format!(
                "subsystem dimensions {subsystem_dims:?} multiply to {prod}, matrix has dim {}",
                matrix.nrows()
            )));
        }
        Ok(Self {
            matrix,
            subsystem_dims,
        })
    }

    /// Single-subsystem operator.
    pub fn from_matrix(matrix: CMatrix<T>) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, vec![n])
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
            subsystem_dims: vec![dim],
        }
    }

    pub fn zeros(subsystem_dims: Vec<usize>) -> Self {
        let dim = subsystem_dims.iter().product();
        Self {
            matrix: CMatrix::zeros(dim, dim),
            subsystem_dims,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    /// Operator product `self · rhs`. Dimensions must agree.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_same_space(rhs)?;
        Ok(Self {
            matrix: &self.matrix * &rhs.matrix,
            subsystem_dims: self.subsystem_dims.clone(),
        })
    }

    pub fn plus(&self, rhs: &Self) -> Result<Self> {
        self.check_same_space(rhs)?;
        Ok(Self {
            matrix: &self.matrix + &rhs.matrix,
            subsystem_dims: self.subsystem_dims.clone(),
        })
    }

    pub fn minus(&self, rhs: &Self) -> Result<Self> {
        self.check_same_space(rhs)?;
        Ok(Self {
            matrix: &self.matrix - &rhs.matrix,
            subsystem_dims: self.subsystem_dims.clone(),
        })
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            matrix: &self.matrix * factor,
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }

    /// Commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)?.minus(&rhs.compose(self)?)
    }

    /// Largest entry of `|O - O†|`.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).modulus();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    fn check_same_space(&self, rhs: &Self) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                rhs.dim()
            )));
        }
        Ok(())
    }
}

/// An [`Operator`] whose matrix equals its conjugate transpose to within
/// [`Real::hermiticity_tol`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Real> {
    op: Operator<T>,
}

impl<T: Real> HermitianOperator<T> {
    pub fn new(op: Operator<T>) -> Result<Self> {
        let defect = op.hermiticity_defect();
        if defect > T::hermiticity_tol() {
            return Err(Error::HermiticityViolation(defect.to_f64()));
        }
        Ok(Self { op })
    }

    pub fn from_matrix(matrix: CMatrix<T>) -> Result<Self> {
        Self::new(Operator::from_matrix(matrix)?)
    }

    /// Builds from a real symmetric matrix; exact Hermiticity is checked.
    pub fn from_real(matrix: &DMatrix<T>, subsystem_dims: Vec<usize>) -> Result<Self> {
        Self::new(Operator::new(matrix.map(re), subsystem_dims)?)
    }

    pub fn zeros(subsystem_dims: Vec<usize>) -> Self {
        Self {
            op: Operator::zeros(subsystem_dims),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        self.op.subsystem_dims()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        self.op.matrix()
    }

    pub fn as_operator(&self) -> &Operator<T> {
        &self.op
    }

    pub fn into_operator(self) -> Operator<T> {
        self.op
    }

    /// Sum of two Hermitian operators on the same space.
    pub fn plus(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            op: self.op.plus(&rhs.op)?,
        })
    }

    /// Real multiple.
    pub fn scale(&self, factor: T) -> Self {
        Self {
            op: self.op.scale(re(factor)),
        }
    }

    pub fn diagonal(&self) -> DVector<T> {
        self.matrix().diagonal().map(|z| z.re)
    }

    pub fn trace(&self) -> T {
        self.matrix().trace().re
    }

    /// `⟨u|O|u⟩` for a (not necessarily normalized) vector.
    pub fn expectation(&self, state: &DVector<Complex<T>>) -> T {
        state.dotc(&(self.matrix() * state)).re
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.matrix().iter().all(|z| z.im == T::zero())
    }
}

/// Spectral decomposition of a Hermitian operator: ascending eigenvalues and
/// the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub values: DVector<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, k: usize) -> DVector<Complex<T>> {
        self.vectors.column(k).into_owned()
    }

    /// `V · diag(values) · V†`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let scaled = CMatrix::from_fn(self.len(), self.len(), |i, j| {
            self.vectors[(i, j)] * self.values[j]
        });
        scaled * self.vectors.adjoint()
    }
}

/// Truncated annihilation operator on `n_max` Fock levels:
/// `A[k-1, k] = √k`.
pub fn ladder<T: Real>(n_max: usize) -> Result<Operator<T>> {
    if n_max < 2 {
        return Err(Error::InvalidTruncation(n_max, 2));
    }
    let mut m = CMatrix::zeros(n_max, n_max);
    for k in 1..n_max {
        m[(k - 1, k)] = re(T::lit(k as f64).sqrt());
    }
    Operator::new(m, vec![n_max])
}

/// Number operator `a†a` on `n_max` Fock levels, built directly as
/// `diag(0, 1, …, n_max - 1)`.
pub fn number<T: Real>(n_max: usize) -> Result<HermitianOperator<T>> {
    if n_max < 2 {
        return Err(Error::InvalidTruncation(n_max, 2));
    }
    let m = CMatrix::from_diagonal(&DVector::from_fn(n_max, |k, _| re(T::lit(k as f64))));
    HermitianOperator::new(Operator::new(m, vec![n_max])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub fn pauli<T: Real>(axis: Axis) -> HermitianOperator<T> {
    let o = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let m = match axis {
        Axis::X => CMatrix::from_row_slice(2, 2, &[o, one, one, o]),
        Axis::Y => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        Axis::Z => CMatrix::from_row_slice(2, 2, &[one, o, o, -one]),
    };
    HermitianOperator {
        op: Operator {
            matrix: m,
            subsystem_dims: vec![2],
        },
    }
}

/// Kronecker product in list order. The subsystem dimensions of the result
/// are the concatenation of the factors' dimensions.
pub fn tensor<T: Real>(ops: &[&Operator<T>]) -> Result<Operator<T>> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor product of an empty list".into()))?;
    let mut matrix = first.matrix.clone();
    let mut dims = first.subsystem_dims.clone();
    for op in rest {
        matrix = matrix.kronecker(&op.matrix);
        dims.extend_from_slice(&op.subsystem_dims);
    }
    Ok(Operator {
        matrix,
        subsystem_dims: dims,
    })
}

/// Kronecker product of Hermitian factors, which is again Hermitian.
pub fn tensor_hermitian<T: Real>(ops: &[&HermitianOperator<T>]) -> Result<HermitianOperator<T>> {
    let inner: Vec<&Operator<T>> = ops.iter().map(|h| &h.op).collect();
    Ok(HermitianOperator {
        op: tensor(&inner)?,
    })
}

/// Places `local` at position `site` of a product space with the given
/// factor dimensions, identities elsewhere.
pub fn embed<T: Real>(local: &Operator<T>, site: usize, dims: &[usize]) -> Result<Operator<T>> {
    if site >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "site {site} out of range for {} subsystems",
            dims.len()
        )));
    }
    if local.dim() != dims[site] {
        return Err(Error::InvalidArgument(format!(
            "local operator has dim {}, site {site} has dim {}",
            local.dim(),
            dims[site]
        )));
    }
    let ids: Vec<Operator<T>> = dims.iter().map(|&d| Operator::identity(d)).collect();
    let factors: Vec<&Operator<T>> = (0..dims.len())
        .map(|k| if k == site { local } else { &ids[k] })
        .collect();
    tensor(&factors)
}

/// Position and momentum of an oscillator with the given mass and angular
/// frequency on `n_max` Fock levels:
/// `x = √(1/2mω)(a + a†)`, `p = i√(mω/2)(a† − a)`.
pub fn quadratures<T: Real>(
    n_max: usize,
    mass: T,
    freq: T,
) -> Result<(HermitianOperator<T>, HermitianOperator<T>)> {
    if !(mass > T::zero()) || !(freq > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "mass and frequency must be positive (mass = {}, freq = {})",
            mass.to_f64(),
            freq.to_f64()
        )));
    }
    let a = ladder::<T>(n_max)?;
    let ad = a.adjoint();
    let half = T::lit(0.5);
    let x_scale = (half / (mass * freq)).sqrt();
    let p_scale = (half * mass * freq).sqrt();
    let x = a.plus(&ad)?.scale(re(x_scale));
    let p = ad.minus(&a)?.scale(Complex::new(T::zero(), p_scale));
    Ok((HermitianOperator::new(x)?, HermitianOperator::new(p)?))
}

/// Full eigendecomposition of a Hermitian operator, eigenvalues ascending.
///
/// Real symmetric input (every imaginary part zero) goes through the real
/// solver.
pub fn eig_hermitian<T: Real>(op: &HermitianOperator<T>) -> Result<Spectrum<T>> {
    let n = op.dim();
    let max_iter = 1000 * n.max(1);
    let (values, vectors) = if op.is_real() {
        let m = op.matrix().map(|z| z.re);
        let eig = SymmetricEigen::try_new(m, T::default_epsilon(), max_iter)
            .ok_or(Error::EigenFailure(n))?;
        (eig.eigenvalues, eig.eigenvectors.map(re))
    } else {
        let eig = SymmetricEigen::try_new(op.matrix().clone(), T::default_epsilon(), max_iter)
            .ok_or(Error::EigenFailure(n))?;
        (eig.eigenvalues, eig.eigenvectors)
    };
    Ok(sorted(values, vectors))
}

/// Real symmetric eigendecomposition, eigenvalues ascending.
pub(crate) fn eig_real_symmetric<T: Real>(m: DMatrix<T>) -> Result<(DVector<T>, DMatrix<T>)> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, T::default_epsilon(), 1000 * n.max(1))
        .ok_or(Error::EigenFailure(n))?;
    let order = ascending_order(&eig.eigenvalues);
    let values = DVector::from_fn(n, |k, _| eig.eigenvalues[order[k]]);
    let vectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
    Ok((values, vectors))
}

fn ascending_order<T: Real>(values: &DVector<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    order
}

fn sorted<T: Real>(values: DVector<T>, vectors: CMatrix<T>) -> Spectrum<T> {
    let n = values.len();
    let order = ascending_order(&values);
    Spectrum {
        values: DVector::from_fn(n, |k, _| values[order[k]]),
        vectors: CMatrix::from_fn(n, n, |i, k| vectors[(i, order[k])]),
    }
}
