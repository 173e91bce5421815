//! The heat operator `d/d omega_ij - (1 / 4 pi i) d^2 / dZ_i dZ_j`.
//!
//! `d/d omega_ij` treats the `n^2` entries of `Omega` as independent, so along
//! the symmetric direction `E_ij + E_ji` it is half the directional derivative
//! when `i != j`. Under this convention every theta term is annihilated.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{signature, ComplexMatrix, C64};
use crate::theta::{theta_term, Evaluator, I};

/// Default finite-difference step.
pub const DEFAULT_EPS: f64 = 1e-4;

/// Index pair `1 <= i <= j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeatOperatorSpec {
    i: usize,
    j: usize,
}

impl HeatOperatorSpec {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i > j || j > n {
            return Err(Error::Invalid(format!("heat indices ({i}, {j}) must satisfy 1 <= i <= j <= {n}")));
        }
        Ok(Self { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All pairs for dimension `n`.
    pub fn all(n: usize) -> Vec<Self> {
        (1..=n).flat_map(|i| (i..=n).map(move |j| Self { i, j })).collect()
    }

    /// Derivative scale along `E_ij + E_ji`.
    pub fn scale(&self) -> f64 {
        if self.i == self.j {
            1.0
        } else {
            2.0
        }
    }

    fn direction(&self, n: usize) -> ComplexMatrix {
        let mut e = ComplexMatrix::from_diagonal(&vec![C64::new(0.0, 0.0); n]).into_inner();
        e[(self.i - 1, self.j - 1)] = C64::new(1.0, 0.0);
        e[(self.j - 1, self.i - 1)] = C64::new(1.0, 0.0);
        ComplexMatrix::new(e).expect("finite")
    }
}

/// Relative gap between `d Theta_K / d omega_ij = pi i K_i K_j Theta_K` and
/// `(1 / 4 pi i) d^2 Theta_K / dZ_i dZ_j`, both evaluated in closed form.
pub fn heat_term_residual(k: &[f64], z: &[C64], omega: &ComplexMatrix, op: HeatOperatorSpec) -> f64 {
    let theta = theta_term(k, z, omega);
    let (ki, kj) = (k[op.i - 1], k[op.j - 1]);
    let d_omega = I * PI * ki * kj * theta;
    let d_zz = (2.0 * PI * I * ki) * (2.0 * PI * I * kj) * theta;
    let rhs = d_zz / (4.0 * PI * I);
    let scale = d_omega.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (d_omega - rhs).norm() / scale
    }
}

/// `|H F|` by central differences: `eps` steps in `Omega` along `E_ij + E_ji`
/// and in `Z_i`, `Z_j`.
pub fn heat_fd_residual(family: &Evaluator, omega: &ComplexMatrix, z: &[C64], op: HeatOperatorSpec, eps: f64) -> Result<f64> {
    let n = omega.n();
    if op.j > n || z.len() != n {
        return Err(Error::ShapeMismatch("heat indices or Z do not match Omega".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Invalid(format!("step must be positive, got {eps}")));
    }
    let e = op.direction(n).scale(C64::new(eps, 0.0));
    let plus = omega + &e;
    let minus = omega - &e;
    let sig = signature(&omega.im_form())?;
    for m in [&plus, &minus] {
        if signature(&m.im_form()).ok() != Some(sig) {
            return Err(Error::SignatureBroken);
        }
    }
    let f = |zz: &[C64], om: &ComplexMatrix| family.eval(zz, om).map(|v| v.value);
    let d_omega = (f(z, &plus)? - f(z, &minus)?) / (2.0 * eps * op.scale());
    let shift = |di: f64, dj: f64| {
        let mut w = z.to_vec();
        w[op.i - 1] += di;
        w[op.j - 1] += dj;
        w
    };
    let d_zz = if op.i == op.j {
        (f(&shift(eps, 0.0), omega)? - 2.0 * f(z, omega)? + f(&shift(-eps, 0.0), omega)?) / (eps * eps)
    } else {
        (f(&shift(eps, eps), omega)? - f(&shift(eps, -eps), omega)? - f(&shift(-eps, eps), omega)? + f(&shift(-eps, -eps), omega)?)
            / (4.0 * eps * eps)
    };
    Ok((d_omega - d_zz / (4.0 * PI * I)).norm())
}
