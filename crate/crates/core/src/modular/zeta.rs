use std::f64::consts::PI;
use std::sync::Arc;

use super::contour::contour_differences;
use super::{modular_apply, theta_g_term};
use crate::error::{Error, Result};
use crate::lattice::{ConeSpec, ModularElement};
use crate::numeric::{ComplexMatrix, C64};
use crate::theta::{theta_term, ConeSum, Evaluator};

/// Chosen eighth root and the residuals of the best and second-best roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaFit {
    pub zeta: C64,
    pub residual: f64,
    pub runner_up: f64,
}

/// Root `zeta` of unity of order 8 minimizing `max |zeta a - b|` over the pairs.
pub fn fit_root_of_unity(pairs: &[(C64, C64)]) -> Result<ZetaFit> {
    if pairs.is_empty() {
        return Err(Error::Invalid("no probe points".into()));
    }
    let mut scored: Vec<(f64, C64)> = (0..8)
        .map(|j| {
            let root = C64::from_polar(1.0, PI * j as f64 / 4.0);
            let r = pairs.iter().map(|(a, b)| (root * a - b).norm()).fold(0.0, f64::max);
            (r, root)
        })
        .collect();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (best, zeta) = scored[0];
    let second = scored[1].0;
    if !(second > 2.0 * best) {
        return Err(Error::AmbiguousZeta { best, second });
    }
    Ok(ZetaFit { zeta, residual: best, runner_up: second })
}

fn is_inversion(g: &ModularElement) -> bool {
    g.n() == 1 && g.a()[(0, 0)] == 0 && g.d()[(0, 0)] == 0 && g.c()[(0, 0)] == 1 && g.b()[(0, 0)] == -1
}

/// Fits `zeta(g)` against a reference identity.
///
/// * `C = 0`: `Theta^g_K = Theta_{DK}` termwise.
/// * `Im Omega` positive definite: the full theta series is invariant.
/// * `n = 1`, `g = J`, `Im tau < 0`: `(1 - 1) f = Theta^J_0` for the contour function.
pub fn determine_zeta(g: &ModularElement, omega: &ComplexMatrix, probes: &[Vec<C64>]) -> Result<ZetaFit> {
    let n = g.n();
    let one = C64::new(1.0, 0.0);
    let mut pairs = Vec::with_capacity(probes.len() * (n + 1));
    if g.c().iter().all(|&x| x == 0) {
        let mut ks = vec![vec![0.0; n]];
        ks.extend((0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()));
        for z in probes {
            for k in &ks {
                let dk: Vec<f64> = (0..n).map(|i| (0..n).map(|j| g.d()[(i, j)] as f64 * k[j]).sum()).collect();
                pairs.push((theta_g_term(k, z, omega, g, one)?, theta_term(&dk, z, omega)));
            }
        }
    } else if omega.im_form().is_positive_definite() {
        let full: Evaluator = Arc::new(ConeSum::new(ConeSpec::full(n, 1.0)?, 1e-13));
        let transformed = modular_apply(g, Arc::clone(&full), one);
        for z in probes {
            pairs.push((transformed.eval(z, omega)?.value, full.eval(z, omega)?.value));
        }
    } else if is_inversion(g) && omega[(0, 0)].im < 0.0 {
        let tau = omega[(0, 0)];
        for z in probes {
            let (diff, _) = contour_differences(z[0], tau, 1, 0, 1e-13)?;
            pairs.push((theta_g_term(&[0.0], z, omega, g, one)?, diff));
        }
    } else {
        return Err(Error::Invalid("no reference identity available for this element".into()));
    }
    fit_root_of_unity(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;
    use crate::theta::{sample_points, I, SAMPLE_SEED};

    #[test]
    fn identity_gives_one() {
        let omega = ComplexMatrix::from_diagonal(&[-I, I]);
        let fit = determine_zeta(&ModularElement::identity(2), &omega, &sample_points(2, SAMPLE_SEED, 5)).unwrap();
        assert!((fit.zeta - 1.0).norm() < 1e-15);
    }

    #[test]
    fn inversion_with_negative_tau() {
        let omega = ComplexMatrix::from_diagonal(&[-I]);
        let fit = determine_zeta(&ModularElement::j(1), &omega, &sample_points(1, SAMPLE_SEED, 5)).unwrap();
        assert!(fit.residual < 1e-8);
        assert!((fit.zeta.powi(8) - 1.0).norm() < 1e-8);
        assert!((fit.zeta - C64::from_polar(1.0, -PI / 4.0)).norm() < 1e-12);
    }

    #[test]
    fn classical_inversion() {
        let omega = ComplexMatrix::from_rows(&[vec![C64::new(0.1, 1.2), C64::new(0.2, 0.1)], vec![C64::new(0.2, 0.1), C64::new(-0.3, 0.9)]]).unwrap();
        let fit = determine_zeta(&ModularElement::j(2), &omega, &sample_points(2, SAMPLE_SEED, 5)).unwrap();
        assert!(fit.residual < 1e-9, "{fit:?}");
    }

    #[test]
    fn linear_elements() {
        let g = ModularElement::linear(IntMatrix::from_row_slice(2, 2, &[0, 1, 1, 0])).unwrap();
        let omega = ComplexMatrix::from_diagonal(&[-I, I * 2.0]);
        let fit = determine_zeta(&g, &omega, &sample_points(2, SAMPLE_SEED, 3)).unwrap();
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn ambiguous_when_degenerate() {
        let zero = C64::new(0.0, 0.0);
        assert!(matches!(fit_root_of_unity(&[(zero, zero)]), Err(Error::AmbiguousZeta { .. })));
    }
}
