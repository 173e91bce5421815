use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::numeric::RealSymmetricMatrix;

use super::integer::{is_primitive_system, solve_rational, IntMatrix};
use super::SplitBasis;

/// Shifted sublattice `shift + Z<generators>` cut off at `Q(K) <= radius^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSpec {
    generators: Vec<Vec<i64>>,
    shift: Vec<Rational64>,
    radius: f64,
}

impl ConeSpec {
    pub fn new(generators: Vec<Vec<i64>>, shift: Vec<Rational64>, radius: f64) -> Result<Self> {
        let n = shift.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty shift vector".into()));
        }
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::ShapeMismatch("generator length differs from the ambient dimension".into()));
        }
        if !is_primitive_system(&generators) {
            return Err(Error::Invalid("cone generators are not a primitive independent system".into()));
        }
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::Invalid(format!("radius must be finite and nonnegative, got {radius}")));
        }
        Ok(Self { generators, shift, radius })
    }

    /// Integer span of the given generators through the origin.
    pub fn lattice(generators: Vec<Vec<i64>>, n: usize, radius: f64) -> Result<Self> {
        Self::new(generators, vec![Rational64::from_integer(0); n], radius)
    }

    /// Full lattice `Z^n`.
    pub fn full(n: usize, radius: f64) -> Result<Self> {
        let gens = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::lattice(gens, n, radius)
    }

    /// The positive cone of a split basis.
    pub fn positive(basis: &SplitBasis, radius: f64) -> Result<Self> {
        Self::lattice(basis.positive_generators(), basis.n(), radius)
    }

    pub fn with_radius(&self, radius: f64) -> Self {
        Self { radius, ..self.clone() }
    }

    pub fn with_shift(&self, shift: Vec<Rational64>) -> Result<Self> {
        Self::new(self.generators.clone(), shift, self.radius)
    }

    /// Adds an integer vector to the shift.
    pub fn translated(&self, by: &[i64]) -> Self {
        let shift = self.shift.iter().zip(by).map(|(s, &b)| s + b).collect();
        Self { shift, ..self.clone() }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn shift(&self) -> &[Rational64] {
        &self.shift
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Lattice point of a cone with its coefficient vector and `Q`-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePoint {
    pub coeffs: Vec<i64>,
    pub point: Vec<Rational64>,
    pub norm: f64,
}

/// Geometry of `Q` restricted to an affine cone: Gram matrix, real minimizer and minimum.
#[derive(Clone, Debug)]
pub struct ConeGeometry {
    pub basis: DMatrix<f64>,
    pub gram: DMatrix<f64>,
    pub gram_inv: DMatrix<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub det_gram: f64,
    /// Real coefficients minimizing `Q(shift + B c)`.
    pub center: DVector<f64>,
    /// `Q` at the minimizer.
    pub min_norm: f64,
    pub shift: DVector<f64>,
}

pub fn rational_to_f64(q: &Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl ConeGeometry {
    pub fn new(cone: &ConeSpec, q: &RealSymmetricMatrix) -> Result<Self> {
        let n = cone.dim();
        if q.n() != n {
            return Err(Error::ShapeMismatch(format!("form has n = {}, cone has n = {n}", q.n())));
        }
        let r = cone.rank();
        let basis = DMatrix::from_fn(n, r, |i, j| cone.generators[j][i] as f64);
        let shift = DVector::from_iterator(n, cone.shift.iter().map(rational_to_f64));
        let qm = q.as_matrix();
        let gram_sym = q.restrict(&cone.generators.iter().map(|g| g.iter().map(|&x| x as f64).collect()).collect::<Vec<_>>());
        if r > 0 && !gram_sym.is_positive_definite() {
            return Err(Error::NonPositiveRestriction);
        }
        let gram = gram_sym.as_matrix().clone();
        let ev = gram_sym.eigenvalues();
        let gram_inv = if r == 0 { DMatrix::zeros(0, 0) } else { gram.clone().try_inverse().ok_or(Error::NonPositiveRestriction)? };
        let h = basis.transpose() * qm * &shift;
        let center = -(&gram_inv * &h);
        let min_norm = (shift.transpose() * qm * &shift)[(0, 0)] + (center.transpose() * &h)[(0, 0)];
        Ok(Self {
            lambda_min: ev.first().copied().unwrap_or(f64::INFINITY),
            lambda_max: ev.last().copied().unwrap_or(0.0),
            det_gram: if r == 0 { 1.0 } else { gram.determinant() },
            basis,
            gram,
            gram_inv,
            center,
            min_norm,
            shift,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Integer coefficient ranges covering `Q(K) <= radius^2`, or `None` if empty.
    pub fn coefficient_box(&self, radius: f64) -> Option<Vec<(i64, i64)>> {
        let rho2 = radius * radius - self.min_norm;
        if rho2 < -1e-12 * radius.max(1.0).powi(2) {
            return None;
        }
        let rho2 = rho2.max(0.0);
        Some(
            (0..self.rank())
                .map(|i| {
                    let half = (rho2 * self.gram_inv[(i, i)]).sqrt() * (1.0 + 1e-12) + 1e-9;
                    let c = self.center[i];
                    ((c - half).ceil() as i64, (c + half).floor() as i64)
                })
                .collect(),
        )
    }
}

fn odometer(ranges: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return;
    }
    let mut c: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        visit(&c);
        let mut i = 0;
        loop {
            if i == c.len() {
                return;
            }
            if c[i] < ranges[i].1 {
                c[i] += 1;
                break;
            }
            c[i] = ranges[i].0;
            i += 1;
        }
    }
}

fn lex_then_norm<T: Ord>(a_norm: f64, a: &[T], b_norm: f64, b: &[T]) -> std::cmp::Ordering {
    a_norm.total_cmp(&b_norm).then_with(|| a.cmp(b))
}

/// All cone points with `Q(K) <= radius^2`, ordered by norm then lexicographically.
pub fn enumerate_cone(cone: &ConeSpec, q: &RealSymmetricMatrix) -> Result<Vec<ConePoint>> {
    let geo = ConeGeometry::new(cone, q)?;
    let r2 = cone.radius * cone.radius;
    let slack = 1e-12 * r2.max(1.0);
    let mut out = Vec::new();
    let Some(ranges) = geo.coefficient_box(cone.radius) else {
        return Ok(out);
    };
    let n = cone.dim();
    odometer(&ranges, |c| {
        let point: Vec<Rational64> = (0..n)
            .map(|i| cone.shift[i] + c.iter().zip(&cone.generators).map(|(&cj, g)| cj * g[i]).sum::<i64>())
            .collect();
        let pf: Vec<f64> = point.iter().map(rational_to_f64).collect();
        let norm = q.quad(&pf);
        if norm <= r2 + slack {
            out.push(ConePoint { coeffs: c.to_vec(), point, norm });
        }
    });
    out.sort_by(|a, b| lex_then_norm(a.norm, &a.point, b.norm, &b.point));
    Ok(out)
}

/// `{ sum x_i free_i + r step : x integral, r >= 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub free: Vec<Vec<i64>>,
    pub step: Vec<i64>,
}

impl Region {
    fn system(&self) -> IntMatrix {
        let n = self.step.len();
        let m = self.free.len();
        IntMatrix::from_fn(n, m + 1, |i, j| if j < m { self.free[j][i] } else { self.step[i] })
    }

    /// Membership by solving for the coordinates exactly.
    pub fn contains(&self, k: &[i64]) -> bool {
        match solve_rational(&self.system(), k) {
            Some(x) => x.iter().all(|q| q.is_integer()) && *x.last().expect("step coordinate") >= Rational64::from_integer(0),
            None => false,
        }
    }

    /// Points with coordinates `|x_i| <= radius`, `0 <= r <= radius`.
    fn box_points(&self, radius: i64, out: &mut BTreeSet<Vec<i64>>) {
        let mut ranges = vec![(-radius, radius); self.free.len()];
        ranges.push((0, radius));
        let n = self.step.len();
        odometer(&ranges, |x| {
            let m = self.free.len();
            let p = (0..n)
                .map(|i| (0..m).map(|j| x[j] * self.free[j][i]).sum::<i64>() + x[m] * self.step[i])
                .collect();
            out.insert(p);
        });
    }
}

/// Lattice point with net multiplicity in a signed region difference.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPoint {
    pub point: Vec<i64>,
    pub sign: i32,
    pub norm: f64,
}

/// Net membership `[K in plus] - [K in minus]` over both coordinate boxes of size `radius`.
pub fn signed_region_difference(plus: &Region, minus: &Region, radius: i64, q: &RealSymmetricMatrix) -> Vec<SignedPoint> {
    let mut cands = BTreeSet::new();
    plus.box_points(radius, &mut cands);
    minus.box_points(radius, &mut cands);
    let mut out: Vec<SignedPoint> = cands
        .into_iter()
        .filter_map(|p| {
            let sign = i32::from(plus.contains(&p)) - i32::from(minus.contains(&p));
            (sign != 0).then(|| {
                let norm = q.quad(&p.iter().map(|&x| x as f64).collect::<Vec<_>>());
                SignedPoint { point: p, sign, norm }
            })
        })
        .collect();
    out.sort_by(|a, b| lex_then_norm(a.norm, &a.point, b.norm, &b.point));
    out
}

/// The two regions swept by translating the positive cone and its sheared
/// image along `N_pivot` (1-based pivot, shear `N_{pivot+1} -> N_{pivot+1} - N_pivot`).
pub fn wedge_regions(basis: &SplitBasis, pivot: usize, q: &RealSymmetricMatrix) -> Result<(Region, Region)> {
    let n = basis.n();
    if pivot == 0 || pivot >= n {
        return Err(Error::Invalid(format!("pivot {pivot} must lie in 1..{}", n - 1)));
    }
    let as_f = |v: &[Vec<i64>]| -> Vec<Vec<f64>> { v.iter().map(|c| c.iter().map(|&x| x as f64).collect()).collect() };
    let untouched: Vec<Vec<i64>> = (pivot..n).map(|j| basis.n_col(j)).collect();
    if !q.restrict(&as_f(&untouched)).is_positive_definite() {
        return Err(Error::NonPositiveRestriction);
    }
    let step = basis.n_col(pivot - 1);
    let mut sheared = untouched.clone();
    sheared[0] = sheared[0].iter().zip(&step).map(|(a, b)| a - b).collect();
    if !q.restrict(&as_f(&sheared)).is_positive_definite() {
        return Err(Error::NotSplitAfterTransform);
    }
    Ok((Region { free: sheared, step: step.clone() }, Region { free: untouched, step }))
}

/// Signed points between the sheared and original positive cones, swept along `N_pivot`.
pub fn enumerate_wedge(basis: &SplitBasis, pivot: usize, q: &RealSymmetricMatrix, radius: i64) -> Result<Vec<SignedPoint>> {
    let (plus, minus) = wedge_regions(basis, pivot, q)?;
    Ok(signed_region_difference(&plus, &minus, radius, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational64> {
        v.iter().map(|&x| Rational64::from_integer(x)).collect()
    }

    #[test]
    fn integers_in_an_interval() {
        let cone = ConeSpec::full(1, 2.0).unwrap();
        let pts = enumerate_cone(&cone, &RealSymmetricMatrix::from_diagonal(&[1.0])).unwrap();
        let got: Vec<_> = pts.iter().map(|p| p.point.clone()).collect();
        assert_eq!(got, vec![ints(&[0]), ints(&[-1]), ints(&[1]), ints(&[-2]), ints(&[2])]);
    }

    #[test]
    fn rank_zero_cone() {
        let cone = ConeSpec::lattice(vec![], 2, 1.0).unwrap();
        let q = RealSymmetricMatrix::from_diagonal(&[-1.0, 1.0]);
        let pts = enumerate_cone(&cone, &q).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].point, ints(&[0, 0]));
    }

    #[test]
    fn sublattice_of_indefinite_form() {
        let cone = ConeSpec::lattice(vec![vec![0, 1]], 2, 3.0).unwrap();
        let q = RealSymmetricMatrix::from_diagonal(&[-1.0, 2.0]);
        let got: Vec<_> = enumerate_cone(&cone, &q).unwrap().into_iter().map(|p| p.point).collect();
        assert_eq!(got, vec![ints(&[0, 0]), ints(&[0, -1]), ints(&[0, 1]), ints(&[0, -2]), ints(&[0, 2])]);
    }

    #[test]
    fn negative_direction_rejected() {
        let cone = ConeSpec::lattice(vec![vec![1, 0]], 2, 3.0).unwrap();
        let q = RealSymmetricMatrix::from_diagonal(&[-1.0, 2.0]);
        assert_eq!(enumerate_cone(&cone, &q).unwrap_err(), Error::NonPositiveRestriction);
    }

    #[test]
    fn non_primitive_generators_rejected() {
        assert!(ConeSpec::lattice(vec![vec![2, 0]], 2, 1.0).is_err());
    }

    #[test]
    fn region_membership() {
        let r = Region { free: vec![vec![0, 1]], step: vec![1, 0] };
        assert!(r.contains(&[3, -5]));
        assert!(!r.contains(&[-1, 0]));
        let sheared = Region { free: vec![vec![-1, 1]], step: vec![1, 0] };
        assert!(sheared.contains(&[0, 2]));
        assert!(!sheared.contains(&[-3, 2]));
    }

    #[test]
    fn equal_regions_cancel() {
        let r = Region { free: vec![vec![0, 1]], step: vec![1, 0] };
        let q = RealSymmetricMatrix::from_diagonal(&[-1.0, 2.0]);
        assert!(signed_region_difference(&r, &r, 4, &q).is_empty());
    }

    #[test]
    fn wedge_origin_cancels() {
        let q = RealSymmetricMatrix::from_diagonal(&[-1.0, 2.0]);
        let pts = enumerate_wedge(&SplitBasis::reference(2, 1), 1, &q, 3).unwrap();
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p.point != vec![0, 0]));
        // c_1 = r - s with s < 0 lies only in the original sweep, s > 0 only in the sheared one
        for p in &pts {
            let s = p.point[1];
            assert_eq!(p.sign, if s > 0 { 1 } else { -1 }, "{p:?}");
        }
    }

    #[test]
    fn wedge_needs_positive_shear() {
        // Q(e2 - e1) = -3 + 1 < 0
        let q = RealSymmetricMatrix::from_diagonal(&[-3.0, 1.0]);
        assert_eq!(enumerate_wedge(&SplitBasis::reference(2, 1), 1, &q, 2).unwrap_err(), Error::NotSplitAfterTransform);
    }
}
