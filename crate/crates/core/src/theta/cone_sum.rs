use std::f64::consts::PI;

use rayon::prelude::*;

use super::{check_dims, theta_term, ThetaFamily, ThetaValue};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_cone, ConeGeometry, ConeSpec};
use crate::numeric::{ComplexMatrix, KahanSum, C64};

/// Largest radius tried before giving up on a tolerance.
pub const DEFAULT_RADIUS_MAX: f64 = 64.0;

const PAR_THRESHOLD: usize = 4096;

/// `int_{x0}^inf x^m e^{-pi x^2} dx` for `m = 0..=top`, with `I_0` bounded above.
fn gaussian_moments(x0: f64, top: usize) -> Vec<f64> {
    let e = (-PI * x0 * x0).exp();
    let mut out = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let v = match m {
            // erfc(t) <= e^{-t^2}
            0 => 0.5 * e,
            1 => e / (2.0 * PI),
            _ => x0.powi(m as i32 - 1) * e / (2.0 * PI) + (m as f64 - 1.0) / (2.0 * PI) * out[m - 2],
        };
        out.push(v);
    }
    out
}

fn unit_ball_volume(r: usize) -> f64 {
    match r {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(r - 2) * 2.0 * PI / r as f64,
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Upper bound for the sum of `|Theta_K|` over cone points with `Q(K) > radius^2`.
///
/// Writing `K = K_0 + B u` around the real minimizer and `v = G^{1/2} u`, each
/// omitted term is at most `C_0 exp(-pi |v|^2 + 2 pi beta |v|)`. Comparing the
/// lattice sum with an integral over cells of volume `sqrt(det G)` and radius
/// `delta = sqrt(lambda_max r) / 2` gives
/// `C_0 e^{pi beta^2} r V_r / sqrt(det G) * sum_j binom(r-1, j) a^{r-1-j} I_j(x_0)`
/// with `a = beta + delta`, `x_0 = rho - beta - 2 delta` and `rho^2 = radius^2 - Q(K_0)`.
/// Returns infinity while `x_0 <= 0`.
pub fn tail_bound(cone: &ConeSpec, omega: &ComplexMatrix, z: &[C64], radius: f64) -> Result<f64> {
    check_dims(z, omega)?;
    let q = omega.im_form();
    let geo = ConeGeometry::new(cone, &q)?;
    tail_from_geometry(&geo, &q, z, radius)
}

fn tail_from_geometry(geo: &ConeGeometry, q: &crate::numeric::RealSymmetricMatrix, z: &[C64], radius: f64) -> Result<f64> {
    let r = geo.rank();
    if r == 0 {
        return Ok(0.0);
    }
    let n = z.len();
    let y = nalgebra::DVector::from_iterator(n, z.iter().map(|c| c.im));
    let k0 = &geo.shift + &geo.basis * &geo.center;
    let w = geo.basis.transpose() * &y;
    let beta = (w.transpose() * &geo.gram_inv * &w)[(0, 0)].max(0.0).sqrt();
    let delta = (geo.lambda_max * r as f64).sqrt() / 2.0;
    let q0 = q.quad(k0.as_slice());
    let rho2 = radius * radius - q0;
    if rho2 <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let x0 = rho2.sqrt() - beta - 2.0 * delta;
    if x0 <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let a = beta + delta;
    let c0 = (-PI * (q0 + 2.0 * k0.dot(&y)) + PI * beta * beta).exp();
    let moments = gaussian_moments(x0, r - 1);
    let radial: f64 = (0..r).map(|j| binomial(r - 1, j) * a.powi((r - 1 - j) as i32) * moments[j]).sum();
    let bound = c0 * r as f64 * unit_ball_volume(r) / geo.det_gram.sqrt() * radial;
    Ok(if bound.is_nan() { f64::INFINITY } else { bound })
}

/// Value of a cone sum with the radius and number of terms it took.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeSumReport {
    pub value: ThetaValue,
    pub radius: f64,
    pub terms: usize,
}

/// Sums `Theta_K` over the cone, growing the radius until the tail bound clears `tol`.
pub fn cone_sum_report(z: &[C64], omega: &ComplexMatrix, cone: &ConeSpec, tol: f64, radius_max: f64) -> Result<ConeSumReport> {
    check_dims(z, omega)?;
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let q = omega.im_form();
    let geo = ConeGeometry::new(cone, &q)?;
    let mut radius = cone.radius().max(1.0);
    let mut tail = tail_from_geometry(&geo, &q, z, radius)?;
    while tail > tol {
        radius += (0.1 * radius).max(0.5);
        if radius > radius_max {
            return Err(Error::RadiusOverflow { radius, max: radius_max });
        }
        tail = tail_from_geometry(&geo, &q, z, radius)?;
    }
    let points = enumerate_cone(&cone.with_radius(radius), &q)?;
    let term = |p: &crate::lattice::ConePoint| {
        let k: Vec<f64> = p.point.iter().map(crate::lattice::rational_to_f64).collect();
        theta_term(&k, z, omega)
    };
    let terms: Vec<C64> = if points.len() >= PAR_THRESHOLD {
        points.par_iter().map(term).collect()
    } else {
        points.iter().map(term).collect()
    };
    let value = terms.iter().copied().collect::<KahanSum>().value();
    Ok(ConeSumReport { value: ThetaValue { value, tail }, radius, terms: points.len() })
}

pub fn cone_sum(z: &[C64], omega: &ComplexMatrix, cone: &ConeSpec, tol: f64) -> Result<ThetaValue> {
    cone_sum_report(z, omega, cone, tol, DEFAULT_RADIUS_MAX).map(|r| r.value)
}

/// Cone sum as an evaluator.
#[derive(Clone, Debug)]
pub struct ConeSum {
    pub cone: ConeSpec,
    pub tol: f64,
    pub radius_max: f64,
}

impl ConeSum {
    pub fn new(cone: ConeSpec, tol: f64) -> Self {
        Self { cone, tol, radius_max: DEFAULT_RADIUS_MAX }
    }
}

impl ThetaFamily for ConeSum {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        cone_sum_report(z, omega, &self.cone, self.tol, self.radius_max).map(|r| r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::I;

    const CLASSICAL: f64 = 1.086434811213308;

    fn zero(n: usize) -> Vec<C64> {
        vec![C64::new(0.0, 0.0); n]
    }

    #[test]
    fn classical_value() {
        let omega = ComplexMatrix::from_diagonal(&[I]);
        let v = cone_sum(&zero(1), &omega, &ConeSpec::full(1, 1.0).unwrap(), 1e-12).unwrap();
        assert!((v.value.re - CLASSICAL).abs() < 1e-13);
        assert!(v.tail <= 1e-12);
    }

    #[test]
    fn empty_positive_cone_is_one() {
        let omega = ComplexMatrix::from_diagonal(&[-I]);
        let v = cone_sum(&zero(1), &omega, &ConeSpec::lattice(vec![], 1, 1.0).unwrap(), 1e-10).unwrap();
        assert_eq!(v, ThetaValue::exact(C64::new(1.0, 0.0)));
    }

    #[test]
    fn indefinite_reduces_to_classical() {
        let omega = ComplexMatrix::from_diagonal(&[-I, I]);
        let cone = ConeSpec::lattice(vec![vec![0, 1]], 2, 1.0).unwrap();
        let v = cone_sum(&zero(2), &omega, &cone, 1e-12).unwrap();
        assert!((v.value - C64::new(CLASSICAL, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn tail_examples() {
        let omega = ComplexMatrix::from_diagonal(&[I]);
        let cone = ConeSpec::full(1, 1.0).unwrap();
        let b10 = tail_bound(&cone, &omega, &zero(1), 10.0).unwrap();
        let explicit: f64 = (11..40).map(|m| 2.0 * (-PI * (m * m) as f64).exp()).sum();
        assert!(b10 <= 1e-40 && b10 >= explicit);
        let b5 = tail_bound(&cone, &omega, &zero(1), 5.0).unwrap();
        let b6 = tail_bound(&cone, &omega, &zero(1), 6.0).unwrap();
        assert!(b6 <= b5);
        let rank0 = ConeSpec::lattice(vec![], 1, 1.0).unwrap();
        assert_eq!(tail_bound(&rank0, &omega, &zero(1), 0.5).unwrap(), 0.0);
    }

    #[test]
    fn radius_overflow() {
        let omega = ComplexMatrix::from_diagonal(&[I]);
        let r = cone_sum_report(&zero(1), &omega, &ConeSpec::full(1, 1.0).unwrap(), 1e-200, 4.0);
        assert!(matches!(r, Err(Error::RadiusOverflow { .. })));
    }

    #[test]
    fn negative_cone_rejected() {
        let omega = ComplexMatrix::from_diagonal(&[-I, I]);
        let cone = ConeSpec::lattice(vec![vec![1, 0]], 2, 1.0).unwrap();
        assert_eq!(cone_sum(&zero(2), &omega, &cone, 1e-10).unwrap_err(), Error::NonPositiveRestriction);
    }
}
