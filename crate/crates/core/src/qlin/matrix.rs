//! Dense complex matrices with role-specific invariants.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Elementwise tolerance for hermiticity on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Elementwise tolerance for `U U^† = I`.
pub const UNITARY_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_TOL` count as zero.
pub const PSD_TOL: f64 = 1e-12;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest elementwise modulus of `m - m^†`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_square_pow2(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Kronecker product with the left operand as the slow (most significant) index.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Self;
}

/// Free-function form of [`Tensor::tensor`].
pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// A hermitian matrix whose dimension is a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates hermiticity within [`HERMITIAN_TOL`] and stores the exactly
    /// hermitian part `(m + m^†)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square_pow2(&m)?;
        let defect = hermiticity_defect(&m);
        if !(defect <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self::symmetrized(m))
    }

    /// Like [`HermitianMatrix::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        check_square_pow2(&m)?;
        let defect = hermiticity_defect(&m);
        if !(defect <= tol) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self::symmetrized(m))
    }

    /// Hermitian part of an arbitrary square matrix, for results of products
    /// that are hermitian up to roundoff.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let adj = m.adjoint();
        Self((m + adj).scale(0.5))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "dimension must be a power of two");
        Self(CMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "dimension must be a power of two");
        Self(CMatrix::identity(dim, dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let m = CMatrix::from_fn(n, n, |i, j| if i == j { c(diag[i], 0.0) } else { c(0.0, 0.0) });
        check_square_pow2(&m)?;
        Ok(Self(m))
    }

    /// `|psi><psi|` for an arbitrary (not necessarily normalized) vector.
    pub fn outer(psi: &[Complex64]) -> Result<Self> {
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        check_square_pow2(&m)?;
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr(M^2)`, which for a hermitian matrix is the squared Frobenius norm.
    pub fn trace_of_square(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Re Tr(M O)`.
    pub fn expectation(&self, observable: &CMatrix) -> f64 {
        assert_eq!(observable.nrows(), self.dim(), "observable dimension");
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                acc += (self.0[(i, k)] * observable[(k, i)]).re;
            }
        }
        acc
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.0.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        vals
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.scale(factor))
    }

    /// `U M U^†`.
    pub fn conjugate_by(&self, u: &UnitaryMatrix) -> Self {
        assert_eq!(u.dim(), self.dim(), "unitary dimension");
        Self::symmetrized(&u.0 * &self.0 * u.0.adjoint())
    }

    /// `A M A^†` for an arbitrary (e.g. Kraus or projector) operator.
    pub fn sandwich(&self, a: &CMatrix) -> Self {
        assert_eq!(a.ncols(), self.dim(), "operator dimension");
        Self::symmetrized(a * &self.0 * a.adjoint())
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        max_abs(&(&self.0 - &other.0))
    }
}

impl Tensor for HermitianMatrix {
    fn tensor(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: Self) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: Self) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn mul(self, rhs: f64) -> HermitianMatrix {
        self.scale(rhs)
    }
}

/// A unitary matrix whose dimension is a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

/// Largest elementwise modulus of `U U^† - I`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMatrix::identity(n, n)))
}

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square_pow2(&m)?;
        let defect = unitarity_defect(&m);
        if !(defect <= UNITARY_TOL) {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self(m))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "dimension must be a power of two");
        Self(CMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `self · other` (apply `other` first).
    pub fn then_after(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self(&self.0 * &other.0)
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), self.dim());
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.0[(i, j)] * psi[j]).sum()).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs(&(&self.0 - &other.0))
    }
}

impl Tensor for UnitaryMatrix {
    fn tensor(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }
}
