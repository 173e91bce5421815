//! Theta terms, cone-restricted sums and the lattice action on evaluators.
//!
//! An evaluator is a family `(Z, Omega) -> value`; prefactors and argument
//! shifts are stored symbolically and only the innermost sums are truncated.

mod characteristic;
mod cocycle;
mod cone_sum;
mod wedge;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

pub use characteristic::{theta_char, Characteristic};
pub use cocycle::{sample_points, verify_cocycle, CocycleCheck, CocycleReport, SAMPLE_SEED};
pub use cone_sum::{cone_sum, cone_sum_report, tail_bound, ConeSum, ConeSumReport, DEFAULT_RADIUS_MAX};
pub use wedge::{wedge_function, WedgeSum};

use crate::error::{Error, Result};
use crate::numeric::{ComplexMatrix, C64};

pub const I: C64 = C64::new(0.0, 1.0);

/// Default truncation tolerance for sums.
pub const TOL_SUM: f64 = 1e-10;
/// Default tolerance for identities between evaluators.
pub const TOL_IDENTITY: f64 = 1e-8;

/// A complex value and a bound on the terms left out when computing it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: C64,
    pub tail: f64,
}

impl ThetaValue {
    pub fn exact(value: C64) -> Self {
        Self { value, tail: 0.0 }
    }
}

/// A holomorphic function of `(Z, Omega)` that can be evaluated pointwise.
pub trait ThetaFamily: Send + Sync + fmt::Debug {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue>;
}

pub type Evaluator = Arc<dyn ThetaFamily>;

pub(crate) fn check_dims(z: &[C64], omega: &ComplexMatrix) -> Result<()> {
    if z.len() != omega.n() {
        return Err(Error::ShapeMismatch(format!("Z has length {}, Omega is {}x{}", z.len(), omega.n(), omega.n())));
    }
    Ok(())
}

/// `tU Omega V`.
pub fn bilinear(u: &[C64], omega: &ComplexMatrix, v: &[C64]) -> C64 {
    let n = u.len();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += u[i] * omega[(i, j)] * v[j];
        }
    }
    s
}

pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn real_vec(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x as f64, 0.0)).collect()
}

/// `exp(pi i tK Omega K + 2 pi i tK Z)`.
pub fn theta_term(k: &[f64], z: &[C64], omega: &ComplexMatrix) -> C64 {
    let kc = real_vec(k);
    (I * PI * (bilinear(&kc, omega, &kc) + 2.0 * dot(&kc, z))).exp()
}

/// A single theta term as an evaluator.
#[derive(Clone, Debug)]
pub struct ThetaTerm {
    pub k: Vec<f64>,
}

impl ThetaFamily for ThetaTerm {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        check_dims(z, omega)?;
        Ok(ThetaValue::exact(theta_term(&self.k, z, omega)))
    }
}

/// The constant function.
#[derive(Clone, Debug)]
pub struct Constant(pub C64);

impl ThetaFamily for Constant {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        check_dims(z, omega)?;
        Ok(ThetaValue::exact(self.0))
    }
}

/// `sum c_i f_i`.
#[derive(Clone, Debug)]
pub struct LinearCombination {
    pub terms: Vec<(C64, Evaluator)>,
}

impl LinearCombination {
    /// `f - g`.
    pub fn difference(f: Evaluator, g: Evaluator) -> Self {
        Self { terms: vec![(C64::new(1.0, 0.0), f), (C64::new(-1.0, 0.0), g)] }
    }
}

impl ThetaFamily for LinearCombination {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        let mut value = crate::numeric::KahanSum::new();
        let mut tail = 0.0;
        for (c, f) in &self.terms {
            let v = f.eval(z, omega)?;
            value.add(c * v.value);
            tail += c.norm() * v.tail;
        }
        Ok(ThetaValue { value: value.value(), tail })
    }
}

/// `(M, N) f (Z) = e^{2 pi i tN Z + pi i tN Omega N} f(Z + Delta M + Omega N)`.
#[derive(Clone, Debug)]
pub struct LambdaAction {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub delta: Vec<i64>,
    pub inner: Evaluator,
}

impl LambdaAction {
    /// Principal action of a `2n`-column `(N-part; M-part)`.
    pub fn of_vector(v: &[i64], inner: Evaluator) -> Self {
        let n = v.len() / 2;
        Self { m: v[n..].to_vec(), n: v[..n].to_vec(), delta: vec![1; n], inner }
    }
}

/// Applies `(M, N)` with polarization type `Delta` (diagonal entries).
pub fn lambda_action(m: &[i64], n: &[i64], f: Evaluator, delta: &[i64]) -> Evaluator {
    Arc::new(LambdaAction { m: m.to_vec(), n: n.to_vec(), delta: delta.to_vec(), inner: f })
}

impl ThetaFamily for LambdaAction {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        check_dims(z, omega)?;
        if self.m.len() != z.len() || self.n.len() != z.len() || self.delta.len() != z.len() {
            return Err(Error::ShapeMismatch("lattice vector length differs from n".into()));
        }
        let nv = int_vec(&self.n);
        let omega_n = omega.mul_vec(&nv);
        let shifted: Vec<C64> = (0..z.len())
            .map(|i| z[i] + C64::new((self.delta[i] * self.m[i]) as f64, 0.0) + omega_n[i])
            .collect();
        let pref = (I * PI * (2.0 * dot(&nv, z) + dot(&nv, &omega_n))).exp();
        let v = self.inner.eval(&shifted, omega)?;
        Ok(ThetaValue { value: pref * v.value, tail: pref.norm() * v.tail })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn om(d: &[C64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(d)
    }

    #[test]
    fn term_examples() {
        let z = [C64::new(0.3, -0.2)];
        assert_eq!(theta_term(&[0.0], &z, &om(&[I])), C64::new(1.0, 0.0));
        let t = theta_term(&[1.0], &[C64::new(0.0, 0.0)], &om(&[I]));
        assert!((t - C64::new((-PI).exp(), 0.0)).norm() < 1e-15);
        assert!((t.re - 0.04321391826).abs() < 1e-11);
        let t = theta_term(&[2.0], &[C64::new(0.5, 0.0)], &om(&[I]));
        assert!((t - C64::new((-4.0 * PI).exp(), 0.0)).norm() < 1e-18);
    }

    #[test]
    fn zero_action_is_identity() {
        let f: Evaluator = Arc::new(ThetaTerm { k: vec![1.0, -2.0] });
        let g = lambda_action(&[0, 0], &[0, 0], f.clone(), &[1, 1]);
        let omega = om(&[-I, I * 2.0]);
        let z = [C64::new(0.1, 0.2), C64::new(-0.3, 0.05)];
        assert_eq!(f.eval(&z, &omega).unwrap(), g.eval(&z, &omega).unwrap());
    }

    #[test]
    fn real_translation() {
        let f: Evaluator = Arc::new(ThetaTerm { k: vec![0.5] });
        let g = lambda_action(&[1], &[0], f.clone(), &[3]);
        let omega = om(&[I]);
        let z = [C64::new(0.1, 0.2)];
        let want = f.eval(&[z[0] + 3.0], &omega).unwrap().value;
        assert!((g.eval(&z, &omega).unwrap().value - want).norm() < 1e-15);
    }

    #[test]
    fn action_on_term_shifts_index() {
        let f: Evaluator = Arc::new(ThetaTerm { k: vec![1.0, 0.0] });
        let g = lambda_action(&[0, 0], &[2, -1], f, &[1, 1]);
        let omega = ComplexMatrix::from_rows(&[vec![-I, C64::new(0.2, 0.1)], vec![C64::new(0.2, 0.1), I * 2.0]]).unwrap();
        let z = [C64::new(0.1, 0.2), C64::new(-0.3, 0.05)];
        let want = theta_term(&[3.0, -1.0], &z, &omega);
        let got = g.eval(&z, &omega).unwrap().value;
        assert!((got - want).norm() < 1e-12 * want.norm());
    }
}
