//! The lattice `Z^n + Z^n`, the theta group, split bases and cone enumeration.
//!
//! Lattice vectors are written as `2n`-columns `(N-part; M-part)`. The first
//! half pairs with translations by `Omega N`, the second with real translations.

mod cone;
pub mod integer;
mod split;
pub mod words;

pub use cone::{rational_to_f64, wedge_regions, enumerate_cone, enumerate_wedge, signed_region_difference, ConeGeometry, ConePoint, ConeSpec, Region, SignedPoint};
pub use integer::IntMatrix;
pub use split::{find_split_basis, is_split_basis};

use crate::error::{Error, Result};
use integer::{column, unimodular_inverse};

/// Block element `(A B; C D)` of `Sp(2n, Z)` candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularElement {
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
    d: IntMatrix,
}

impl ModularElement {
    pub fn new(a: IntMatrix, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Result<Self> {
        let n = a.nrows();
        for (name, m) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            if m.shape() != (n, n) {
                return Err(Error::ShapeMismatch(format!("block {name} is {}x{}, expected {n}x{n}", m.nrows(), m.ncols())));
            }
        }
        if n == 0 {
            return Err(Error::ShapeMismatch("empty blocks".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_full(g: &IntMatrix) -> Result<Self> {
        let (r, c) = g.shape();
        if r != c || r % 2 != 0 || r == 0 {
            return Err(Error::ShapeMismatch(format!("expected a 2n x 2n matrix, got {r}x{c}")));
        }
        let n = r / 2;
        Self::new(
            g.view((0, 0), (n, n)).into_owned(),
            g.view((0, n), (n, n)).into_owned(),
            g.view((n, 0), (n, n)).into_owned(),
            g.view((n, n), (n, n)).into_owned(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_blocks(IntMatrix::identity(n, n), IntMatrix::zeros(n, n), IntMatrix::zeros(n, n), IntMatrix::identity(n, n))
    }

    /// `(0 -I; I 0)`.
    pub fn j(n: usize) -> Self {
        Self::from_blocks(IntMatrix::zeros(n, n), -IntMatrix::identity(n, n), IntMatrix::identity(n, n), IntMatrix::zeros(n, n))
    }

    /// `(I B; 0 I)`.
    pub fn translation(b: IntMatrix) -> Self {
        let n = b.nrows();
        Self::from_blocks(IntMatrix::identity(n, n), b, IntMatrix::zeros(n, n), IntMatrix::identity(n, n))
    }

    /// `(A 0; 0 tA^-1)` for unimodular `A`.
    pub fn linear(a: IntMatrix) -> Result<Self> {
        let inv = unimodular_inverse(&a).ok_or(Error::Invalid("block is not unimodular".into()))?;
        let n = a.nrows();
        Ok(Self::from_blocks(a, IntMatrix::zeros(n, n), IntMatrix::zeros(n, n), inv.transpose()))
    }

    fn from_blocks(a: IntMatrix, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Self {
        Self { a, b, c, d }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }
    pub fn b(&self) -> &IntMatrix {
        &self.b
    }
    pub fn c(&self) -> &IntMatrix {
        &self.c
    }
    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn to_full(&self) -> IntMatrix {
        let n = self.n();
        let mut g = IntMatrix::zeros(2 * n, 2 * n);
        g.view_mut((0, 0), (n, n)).copy_from(&self.a);
        g.view_mut((0, n), (n, n)).copy_from(&self.b);
        g.view_mut((n, 0), (n, n)).copy_from(&self.c);
        g.view_mut((n, n), (n, n)).copy_from(&self.d);
        g
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_full(&(self.to_full() * other.to_full())).expect("product of equal shapes")
    }

    /// Symplectic inverse `(tD -tB; -tC tA)`.
    pub fn inverse(&self) -> Self {
        Self::from_blocks(self.d.transpose(), -self.b.transpose(), -self.c.transpose(), self.a.transpose())
    }

    pub fn is_symplectic(&self) -> bool {
        let n = self.n();
        let at_c = self.a.transpose() * &self.c;
        let bt_d = self.b.transpose() * &self.d;
        at_c == at_c.transpose()
            && bt_d == bt_d.transpose()
            && self.a.transpose() * &self.d - self.c.transpose() * &self.b == IntMatrix::identity(n, n)
    }

    /// Even diagonals of `tA C` and `tB D`.
    pub fn is_gamma12(&self) -> Result<bool> {
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let at_c = self.a.transpose() * &self.c;
        let bt_d = self.b.transpose() * &self.d;
        Ok((0..self.n()).all(|i| at_c[(i, i)] % 2 == 0 && bt_d[(i, i)] % 2 == 0))
    }

    pub fn ensure_gamma12(&self) -> Result<()> {
        match self.is_gamma12() {
            Ok(true) => Ok(()),
            Ok(false) | Err(Error::NotSymplectic) => Err(Error::NotGamma12),
            Err(e) => Err(e),
        }
    }

    /// `tg^-1 = (D -C; -B A)`, the action on basis columns.
    pub fn basis_action(&self) -> IntMatrix {
        let n = self.n();
        let mut t = IntMatrix::zeros(2 * n, 2 * n);
        t.view_mut((0, 0), (n, n)).copy_from(&self.d);
        t.view_mut((0, n), (n, n)).copy_from(&(-&self.c));
        t.view_mut((n, 0), (n, n)).copy_from(&(-&self.b));
        t.view_mut((n, n), (n, n)).copy_from(&self.a);
        t
    }
}

/// The standard symplectic form `(0 I; -I 0)` on `Z^2n`.
pub fn symplectic_form(n: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1;
        j[(n + i, i)] = -1;
    }
    j
}

/// `tS J S = J` for a square `2n x 2n` integer matrix.
pub fn is_symplectic_matrix(s: &IntMatrix) -> bool {
    let (r, c) = s.shape();
    if r != c || r % 2 != 0 {
        return false;
    }
    let j = symplectic_form(r / 2);
    s.transpose() * &j * s == j
}

/// Inverse of a symplectic matrix, `-J tS J`.
pub fn symplectic_inverse(s: &IntMatrix) -> IntMatrix {
    let j = symplectic_form(s.nrows() / 2);
    -(&j * s.transpose() * &j)
}

/// Basis `N_1..N_n` of `Lambda_1` with dual basis `M = tN^-1` of `Lambda_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBasis {
    k: usize,
    n_mat: IntMatrix,
    m_mat: IntMatrix,
}

impl SplitBasis {
    /// Builds the basis from unimodular `N`; `M` is its inverse transpose.
    pub fn new(k: usize, n_mat: IntMatrix) -> Result<Self> {
        if n_mat.nrows() != n_mat.ncols() || n_mat.nrows() == 0 {
            return Err(Error::ShapeMismatch("N must be a non-empty square matrix".into()));
        }
        if k > n_mat.nrows() {
            return Err(Error::Invalid(format!("index k = {k} exceeds n = {}", n_mat.nrows())));
        }
        let m_mat = unimodular_inverse(&n_mat)
            .ok_or(Error::Invalid("N is not unimodular".into()))?
            .transpose();
        Ok(Self { k, n_mat, m_mat })
    }

    pub fn from_parts(k: usize, n_mat: IntMatrix, m_mat: IntMatrix) -> Result<Self> {
        let basis = Self::new(k, n_mat)?;
        if basis.m_mat != m_mat {
            return Err(Error::Invalid("tN M is not the identity".into()));
        }
        Ok(basis)
    }

    pub fn reference(n: usize, k: usize) -> Self {
        Self::new(k, IntMatrix::identity(n, n)).expect("identity is unimodular")
    }

    pub fn n(&self) -> usize {
        self.n_mat.nrows()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_matrix(&self) -> &IntMatrix {
        &self.n_mat
    }

    pub fn m_matrix(&self) -> &IntMatrix {
        &self.m_mat
    }

    /// Column `j` (0-based) of `N`.
    pub fn n_col(&self, j: usize) -> Vec<i64> {
        column(&self.n_mat, j)
    }

    pub fn m_col(&self, i: usize) -> Vec<i64> {
        column(&self.m_mat, i)
    }

    /// Generators of the positive cone, the last `n - k` columns of `N`.
    pub fn positive_generators(&self) -> Vec<Vec<i64>> {
        (self.k..self.n()).map(|j| self.n_col(j)).collect()
    }

    pub fn negative_generators(&self) -> Vec<Vec<i64>> {
        (0..self.k).map(|j| self.n_col(j)).collect()
    }

    pub fn lattice_basis(&self) -> LatticeBasis {
        let n = self.n();
        let mut p = IntMatrix::zeros(2 * n, 2 * n);
        p.view_mut((0, 0), (n, n)).copy_from(&self.n_mat);
        p.view_mut((n, n), (n, n)).copy_from(&self.m_mat);
        LatticeBasis { n, k: self.k, cols: p }
    }
}

/// Symplectic basis of the full lattice, as `2n` columns `N_1..N_n, M_1..M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    n: usize,
    k: usize,
    cols: IntMatrix,
}

impl LatticeBasis {
    pub fn new(k: usize, cols: IntMatrix) -> Result<Self> {
        if !is_symplectic_matrix(&cols) || cols.nrows() == 0 {
            return Err(Error::NotSymplectic);
        }
        let n = cols.nrows() / 2;
        if k > n {
            return Err(Error::Invalid(format!("index k = {k} exceeds n = {n}")));
        }
        Ok(Self { n, k, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.cols
    }

    /// `N_j` as a `2n`-vector (0-based).
    pub fn n_vector(&self, j: usize) -> Vec<i64> {
        column(&self.cols, j)
    }

    pub fn m_vector(&self, i: usize) -> Vec<i64> {
        column(&self.cols, self.n + i)
    }

    /// Back to `(N, M)` blocks when the basis respects the splitting.
    pub fn as_split_basis(&self) -> Option<SplitBasis> {
        let n = self.n;
        let off_zero = self.cols.view((n, 0), (n, n)).iter().all(|&x| x == 0)
            && self.cols.view((0, n), (n, n)).iter().all(|&x| x == 0);
        if !off_zero {
            return None;
        }
        SplitBasis::from_parts(self.k, self.cols.view((0, 0), (n, n)).into_owned(), self.cols.view((n, n), (n, n)).into_owned()).ok()
    }
}

/// Applies `g` to a basis: new columns `(D -C; -B A) P` and `S = P^-1 tg P`.
pub fn transform_basis(g: &ModularElement, basis: &LatticeBasis) -> Result<(LatticeBasis, IntMatrix)> {
    g.ensure_gamma12()?;
    if g.n() != basis.n() {
        return Err(Error::ShapeMismatch(format!("g has n = {}, basis has n = {}", g.n(), basis.n())));
    }
    let cols = g.basis_action() * basis.matrix();
    let s = symplectic_inverse(basis.matrix()) * g.to_full().transpose() * basis.matrix();
    Ok((LatticeBasis { n: basis.n, k: basis.k, cols }, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, v: &[i64]) -> IntMatrix {
        IntMatrix::from_row_slice(n, n, v)
    }

    fn blocks(a: i64, b: i64, c: i64, d: i64) -> ModularElement {
        ModularElement::new(m(1, &[a]), m(1, &[b]), m(1, &[c]), m(1, &[d])).unwrap()
    }

    #[test]
    fn symplectic_examples() {
        assert!(ModularElement::identity(3).is_symplectic());
        assert!(ModularElement::j(2).is_symplectic());
        let i2 = IntMatrix::identity(2, 2);
        let all_i = ModularElement::new(i2.clone(), i2.clone(), i2.clone(), i2).unwrap();
        assert!(!all_i.is_symplectic());
    }

    #[test]
    fn shape_mismatch() {
        let r = ModularElement::new(IntMatrix::identity(2, 2), IntMatrix::zeros(1, 1), IntMatrix::zeros(2, 2), IntMatrix::identity(2, 2));
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn theta_group_examples() {
        assert_eq!(ModularElement::identity(2).is_gamma12(), Ok(true));
        assert_eq!(blocks(0, -1, 1, 0).is_gamma12(), Ok(true));
        assert_eq!(blocks(1, 1, 1, 2).is_gamma12(), Ok(false));
        assert_eq!(blocks(1, 1, 1, 1).is_gamma12(), Err(Error::NotSymplectic));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = ModularElement::translation(m(2, &[2, 1, 1, 0])).compose(&ModularElement::j(2));
        assert_eq!(g.compose(&g.inverse()), ModularElement::identity(2));
    }

    #[test]
    fn split_basis_dual() {
        let b = SplitBasis::new(1, m(2, &[0, 1, 1, 0])).unwrap();
        assert_eq!(b.n_matrix().transpose() * b.m_matrix(), IntMatrix::identity(2, 2));
        assert!(SplitBasis::new(1, m(2, &[2, 0, 0, 1])).is_err());
        assert_eq!(b.lattice_basis().as_split_basis().unwrap(), b);
    }

    #[test]
    fn transform_examples() {
        let p = SplitBasis::reference(2, 1).lattice_basis();
        let (q, s) = transform_basis(&ModularElement::identity(2), &p).unwrap();
        assert_eq!(q, p);
        assert_eq!(s, IntMatrix::identity(4, 4));

        let p1 = SplitBasis::reference(1, 0).lattice_basis();
        let j = blocks(0, -1, 1, 0);
        let (q, s) = transform_basis(&j, &p1).unwrap();
        assert_eq!(q.n_vector(0), p1.m_vector(0));
        assert_eq!(q.m_vector(0), vec![-1, 0]);
        assert_eq!(s, j.to_full().transpose());

        assert_eq!(transform_basis(&blocks(1, 1, 1, 2), &p1).unwrap_err(), Error::NotGamma12);
    }

    #[test]
    fn translation_conjugation() {
        // S = P^-1 (I 0; tB I) P for a non-reference basis
        let basis = SplitBasis::new(1, m(2, &[1, 1, 0, 1])).unwrap().lattice_basis();
        let b = m(2, &[2, 1, 1, 0]);
        let (_, s) = transform_basis(&ModularElement::translation(b.clone()), &basis).unwrap();
        let mut lower = IntMatrix::identity(4, 4);
        lower.view_mut((2, 0), (2, 2)).copy_from(&b.transpose());
        assert_eq!(s, symplectic_inverse(basis.matrix()) * lower * basis.matrix());
        assert!(is_symplectic_matrix(&s));
    }
}
