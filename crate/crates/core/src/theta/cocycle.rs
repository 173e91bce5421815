use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{Evaluator, LambdaAction};
use crate::error::Result;
use crate::lattice::LatticeBasis;
use crate::numeric::{ComplexMatrix, C64};

/// Seed of the default verification sample.
pub const SAMPLE_SEED: u64 = 0x7E7A;

/// Pseudo-random points with `|Re| <= 0.5` and `|Im| <= 0.3` per component.
pub fn sample_points(n: usize, seed: u64, count: usize) -> Vec<Vec<C64>> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| C64::new(rng.random_range(-0.5..=0.5), rng.random_range(-0.3..=0.3))).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleCheck {
    pub name: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    pub checks: Vec<CocycleCheck>,
}

impl CocycleReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// `max |(x - 1) c|` over the samples for each remaining direction `x`:
/// every `M_i`, and `N_j` for `j > k`.
pub fn verify_cocycle(c: &Evaluator, basis: &LatticeBasis, omega: &ComplexMatrix, samples: &[Vec<C64>]) -> Result<CocycleReport> {
    let n = basis.n();
    let mut directions: Vec<(String, Vec<i64>)> = (0..n).map(|i| (format!("M{}", i + 1), basis.m_vector(i))).collect();
    directions.extend((basis.k()..n).map(|j| (format!("N{}", j + 1), basis.n_vector(j))));
    let mut checks = Vec::with_capacity(directions.len());
    for (name, v) in directions {
        let moved = LambdaAction::of_vector(&v, Arc::clone(c));
        let mut residual = 0.0f64;
        for z in samples {
            use super::ThetaFamily;
            let a = moved.eval(z, omega)?;
            let b = c.eval(z, omega)?;
            residual = residual.max((a.value - b.value).norm());
        }
        checks.push(CocycleCheck { name, residual });
    }
    Ok(CocycleReport { checks })
}
