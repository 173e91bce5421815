use std::sync::Arc;

use super::{check_dims, theta_term, Evaluator, ThetaFamily, ThetaValue};
use crate::error::{Error, Result};
use crate::lattice::{signed_region_difference, wedge_regions, Region, SplitBasis};
use crate::numeric::{ComplexMatrix, KahanSum, C64};

const START_RADIUS: i64 = 4;
const MAX_RADIUS: i64 = 64;

/// Signed sum of theta terms between two swept cones.
///
/// The box radius doubles until two successive partial sums agree to `tol`;
/// the reported tail is that last difference.
#[derive(Clone, Debug)]
pub struct WedgeSum {
    pub plus: Region,
    pub minus: Region,
    pub tol: f64,
}

impl WedgeSum {
    fn partial(&self, radius: i64, z: &[C64], omega: &ComplexMatrix) -> C64 {
        let q = omega.im_form();
        signed_region_difference(&self.plus, &self.minus, radius, &q)
            .iter()
            .map(|p| {
                let k: Vec<f64> = p.point.iter().map(|&x| x as f64).collect();
                theta_term(&k, z, omega) * p.sign as f64
            })
            .collect::<KahanSum>()
            .value()
    }
}

impl ThetaFamily for WedgeSum {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        check_dims(z, omega)?;
        let mut radius = START_RADIUS;
        let mut prev = self.partial(radius, z, omega);
        loop {
            radius *= 2;
            if radius > MAX_RADIUS {
                return Err(Error::RadiusOverflow { radius: radius as f64, max: MAX_RADIUS as f64 });
            }
            let cur = self.partial(radius, z, omega);
            let diff = (cur - prev).norm();
            if diff < self.tol {
                return Ok(ThetaValue { value: cur, tail: diff });
            }
            prev = cur;
        }
    }
}

/// Coboundary between the positive cone and its shear `N_{k+1} -> N_{k+1} - N_k`,
/// summed along `N_k` (1-based `pivot = k`).
pub fn wedge_function(basis: &SplitBasis, omega: &ComplexMatrix, pivot: usize, tol: f64) -> Result<Evaluator> {
    let (plus, minus) = wedge_regions(basis, pivot, &omega.im_form())?;
    Ok(Arc::new(WedgeSum { plus, minus, tol }))
}
