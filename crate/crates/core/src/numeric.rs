//! Dense complex and real matrix helpers shared by every other module.
//!
//! Matrices here are small (n ≤ 8) and dense, so everything is backed by
//! `nalgebra::DMatrix`. The wrappers add the invariants the rest of the crate
//! relies on: square shape, finite entries, and mirrored symmetry for real
//! quadratic forms.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative threshold below which an eigenvalue counts as zero.
pub const TOL_DEGENERATE: f64 = 1e-9;
/// Max-norm residual accepted for `M * inv(M) = I`.
pub const TOL_LINALG: f64 = 1e-8;

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "expected a non-empty square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("matrix has non-finite entries".into()));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_diagonal(d: &[C64]) -> Self {
        let n = d.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) }))
    }

    pub fn from_int(m: &DMatrix<i64>) -> Self {
        Self(m.map(|x| C64::new(x as f64, 0.0)))
    }

    pub fn from_parts(re: &DMatrix<f64>, im: &DMatrix<f64>) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(Error::ShapeMismatch("real and imaginary parts differ in shape".into()));
        }
        Self::new(re.zip_map(im, C64::new))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn re(&self) -> DMatrix<f64> {
        self.0.map(|z| z.re)
    }

    pub fn im(&self) -> DMatrix<f64> {
        self.0.map(|z| z.im)
    }

    /// Imaginary part as a quadratic form (upper triangle taken as authoritative).
    pub fn im_form(&self) -> RealSymmetricMatrix {
        RealSymmetricMatrix::from_upper(&self.im())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| (self.0[(i, j)] - self.0[(j, i)]).norm() <= tol * scale))
    }

    /// Average with the transpose.
    pub fn symmetrize(&self) -> Self {
        Self((&self.0 + self.0.transpose()).map(|z| z * 0.5))
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn determinant(&self) -> C64 {
        self.0.clone().lu().determinant()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.0.row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Real symmetric matrix; the upper triangle is authoritative and mirrored.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSymmetricMatrix(DMatrix<f64>);

impl RealSymmetricMatrix {
    pub fn from_upper(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        Self(DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] }))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("expected a non-empty square matrix".into()));
        }
        Ok(Self::from_upper(&DMatrix::from_fn(n, n, |i, j| rows[i][j])))
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        Self(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.n() == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = self.0.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_positive_definite(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let ev = self.eigenvalues();
        let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        ev[0] > TOL_DEGENERATE * scale.max(f64::MIN_POSITIVE)
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.0.clone().try_inverse().ok_or(Error::SingularMatrix)?;
        Ok(Self::from_upper(&inv))
    }

    pub fn quad(&self, v: &[f64]) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += v[i] * self.0[(i, j)] * v[j];
            }
        }
        s
    }

    /// Gram matrix `tB Q B` of the given column vectors.
    pub fn restrict(&self, columns: &[Vec<f64>]) -> Self {
        let r = columns.len();
        let n = self.n();
        let b = DMatrix::from_fn(n, r, |i, j| columns[j][i]);
        Self::from_upper(&(b.transpose() * &self.0 * b))
    }
}

impl Index<(usize, usize)> for RealSymmetricMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Counts of negative and positive eigenvalues.
pub fn signature(q: &RealSymmetricMatrix) -> Result<(usize, usize)> {
    let ev = q.eigenvalues();
    let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(&bad) = ev.iter().find(|x| x.abs() <= TOL_DEGENERATE * scale) {
        return Err(Error::DegenerateForm { eigenvalue: bad });
    }
    let neg = ev.iter().filter(|x| **x < 0.0).count();
    Ok((neg, ev.len() - neg))
}

/// Inverse of a complex matrix, rejected when `M * inv` misses the identity.
pub fn sym_inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let inv = m.0.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let n = m.n();
    let prod = &m.0 * &inv;
    let resid = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (prod[(i, j)] - if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).norm())
        .fold(0.0, f64::max);
    if !resid.is_finite() || resid > TOL_LINALG {
        return Err(Error::SingularMatrix);
    }
    Ok(ComplexMatrix(inv))
}

/// Square root with argument in (-pi/2, pi/2].
pub fn principal_sqrt(z: C64) -> C64 {
    let r = z.norm();
    if r == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let mut theta = z.im.atan2(z.re);
    if theta <= -std::f64::consts::PI {
        theta = std::f64::consts::PI;
    }
    C64::from_polar(r.sqrt(), theta / 2.0)
}

/// Principal square root of `det(M)`.
pub fn principal_sqrt_det(m: &ComplexMatrix) -> Result<C64> {
    let det = m.determinant();
    let row_scale: f64 = m
        .0
        .row_iter()
        .map(|r| r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .product();
    if !det.norm().is_finite() || det.norm() <= 1e-14 * row_scale {
        return Err(Error::SingularMatrix);
    }
    Ok(principal_sqrt(det))
}

/// Period matrix: complex symmetric with nondegenerate imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix {
    omega: ComplexMatrix,
    signature: (usize, usize),
}

impl PeriodMatrix {
    pub fn new(omega: ComplexMatrix) -> Result<Self> {
        if !omega.is_symmetric(1e-12) {
            return Err(Error::Invalid("period matrix is not symmetric".into()));
        }
        let omega = omega.symmetrize();
        let signature = signature(&omega.im_form())?;
        Ok(Self { omega, signature })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.omega.n()
    }

    /// Number of negative directions of `Im Omega`.
    pub fn index(&self) -> usize {
        self.signature.0
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl FromIterator<C64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&RealSymmetricMatrix::from_diagonal(&[-1.0, 1.0])).unwrap(), (1, 1));
        assert_eq!(signature(&RealSymmetricMatrix::from_diagonal(&[1.0, 1.0, 1.0])).unwrap(), (0, 3));
        let hyp = RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(signature(&hyp).unwrap(), (1, 1));
    }

    #[test]
    fn degenerate_form_rejected() {
        let q = RealSymmetricMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(signature(&q), Err(Error::DegenerateForm { .. })));
    }

    #[test]
    fn upper_triangle_is_authoritative() {
        let q = RealSymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![7.0, 3.0]]).unwrap();
        assert_eq!(q[(1, 0)], 2.0);
    }

    #[test]
    fn inverse_examples() {
        let id = ComplexMatrix::identity(3);
        assert!(sym_inverse(&id).unwrap().max_abs_diff(&id) < 1e-15);

        let d = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, 2.0)]);
        let want = ComplexMatrix::from_diagonal(&[c(0.0, -1.0), c(0.0, -0.5)]);
        assert!(sym_inverse(&d).unwrap().max_abs_diff(&want) < 1e-15);

        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]]).unwrap();
        let want = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.0, -0.5)], vec![c(0.0, -0.5), c(0.5, 0.0)]]).unwrap();
        assert!(sym_inverse(&m).unwrap().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn singular_inverse_rejected() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 2.0)], vec![c(1.0, 1.0), c(2.0, 2.0)]]).unwrap();
        assert_eq!(sym_inverse(&m), Err(Error::SingularMatrix));
        assert_eq!(principal_sqrt_det(&m), Err(Error::SingularMatrix));
    }

    #[test]
    fn sqrt_det_examples() {
        assert!((principal_sqrt_det(&ComplexMatrix::identity(2)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let m = ComplexMatrix::from_diagonal(&[c(-1.0, 0.0)]);
        assert!((principal_sqrt_det(&m).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
        let m = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, 1.0)]);
        assert!((principal_sqrt_det(&m).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn principal_branch_on_negative_axis() {
        // -1 with a negative-zero imaginary part still maps to +i
        assert!((principal_sqrt(c(-4.0, -0.0)) - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn non_symmetric_period_matrix_rejected() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]).unwrap();
        assert!(matches!(PeriodMatrix::new(m), Err(Error::Invalid(_))));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let terms = [c(1e16, 0.0), c(1.0, 1.0), c(-1e16, 0.0)];
        let s: KahanSum = terms.iter().copied().collect();
        assert_eq!(s.value(), c(1.0, 1.0));
    }
}
