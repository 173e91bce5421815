//! The theta group acting on period matrices and on evaluators.
//!
//! For `g = (A B; C D)` the transformed period matrix is
//! `Omega^g = (tD Omega - tB)(-tC Omega + tA)^-1` and
//! `f^g(Z, Omega) = zeta sqrt(det(C Omega^g + D)) e^{pi i tZ C T Z} f(T Z, Omega^g)`
//! with `T = t(C Omega^g + D)`.

pub mod contour;
mod zeta;

use std::f64::consts::PI;
use std::sync::Arc;

pub use zeta::{determine_zeta, fit_root_of_unity, ZetaFit};

use crate::error::{Error, Result};
use crate::lattice::ModularElement;
use crate::numeric::{principal_sqrt_det, signature, sym_inverse, ComplexMatrix, C64};
use crate::theta::{bilinear, check_dims, dot, real_vec, Evaluator, ThetaFamily, ThetaTerm, ThetaValue, I};

/// `Omega^g`, symmetrized.
pub fn omega_transform(g: &ModularElement, omega: &ComplexMatrix) -> Result<ComplexMatrix> {
    if g.n() != omega.n() {
        return Err(Error::ShapeMismatch(format!("g has n = {}, Omega has n = {}", g.n(), omega.n())));
    }
    let at = ComplexMatrix::from_int(&g.a().transpose());
    let bt = ComplexMatrix::from_int(&g.b().transpose());
    let ct = ComplexMatrix::from_int(&g.c().transpose());
    let dt = ComplexMatrix::from_int(&g.d().transpose());
    let num = &(&dt * omega) - &bt;
    let den = &at - &(&ct * omega);
    let inv = sym_inverse(&den).map_err(|_| Error::SingularDenominator)?;
    Ok((&num * &inv).symmetrize())
}

/// Everything `f^g` needs at one period matrix.
#[derive(Clone, Debug)]
pub struct TransformData {
    pub omega_g: ComplexMatrix,
    /// `T = t(C Omega^g + D)`.
    pub t: ComplexMatrix,
    /// `C T`, the quadratic form of the exponential prefactor.
    pub ct: ComplexMatrix,
    pub sqrt_det: C64,
}

impl TransformData {
    pub fn new(g: &ModularElement, omega: &ComplexMatrix) -> Result<Self> {
        let omega_g = omega_transform(g, omega)?;
        let c = ComplexMatrix::from_int(g.c());
        let d = ComplexMatrix::from_int(g.d());
        let f = &(&c * &omega_g) + &d;
        let sqrt_det = principal_sqrt_det(&f).map_err(|_| Error::SingularDenominator)?;
        let t = f.transpose();
        let ct = &c * &t;
        Ok(Self { omega_g, t, ct, sqrt_det })
    }

    /// `sqrt(det) e^{pi i tZ C T Z}` and the inner argument `T Z`.
    pub fn prefactor(&self, z: &[C64]) -> (C64, Vec<C64>) {
        let pref = self.sqrt_det * (I * PI * bilinear(z, &self.ct, z)).exp();
        (pref, self.t.mul_vec(z))
    }
}

/// Transformed period matrix with its Jacobian factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularTransformResult {
    pub omega_g: ComplexMatrix,
    /// Principal `sqrt(det(C Omega^g + D))`.
    pub jacobian_factor: C64,
    /// Fitted eighth root of unity, when a reference identity exists.
    pub zeta: Option<C64>,
    pub signature: (usize, usize),
}

/// `Omega^g` and `sqrt(det(C Omega^g + D))`, checking that the signature survives.
pub fn modular_transform(g: &ModularElement, omega: &ComplexMatrix) -> Result<ModularTransformResult> {
    let data = TransformData::new(g, omega)?;
    let before = signature(&omega.im_form())?;
    let after = signature(&data.omega_g.im_form())?;
    if before != after {
        return Err(Error::SignatureMismatch { expected: before, found: after });
    }
    Ok(ModularTransformResult { omega_g: data.omega_g, jacobian_factor: data.sqrt_det, zeta: None, signature: after })
}

/// The evaluator `f^g`.
#[derive(Clone, Debug)]
pub struct ModularTransform {
    pub g: ModularElement,
    pub zeta: C64,
    pub inner: Evaluator,
}

impl ThetaFamily for ModularTransform {
    fn eval(&self, z: &[C64], omega: &ComplexMatrix) -> Result<ThetaValue> {
        check_dims(z, omega)?;
        let data = TransformData::new(&self.g, omega)?;
        let (pref, tz) = data.prefactor(z);
        let pref = self.zeta * pref;
        let v = self.inner.eval(&tz, &data.omega_g)?;
        Ok(ThetaValue { value: pref * v.value, tail: pref.norm() * v.tail })
    }
}

pub fn modular_apply(g: &ModularElement, f: Evaluator, zeta: C64) -> Evaluator {
    Arc::new(ModularTransform { g: g.clone(), zeta, inner: f })
}

/// `Theta^g_K(Z, Omega)`.
pub fn theta_g_term(k: &[f64], z: &[C64], omega: &ComplexMatrix, g: &ModularElement, zeta: C64) -> Result<C64> {
    check_dims(z, omega)?;
    let data = TransformData::new(g, omega)?;
    Ok(theta_g_term_with(&data, k, z, zeta))
}

/// `Theta^g_K` reusing precomputed transform data.
pub fn theta_g_term_with(data: &TransformData, k: &[f64], z: &[C64], zeta: C64) -> C64 {
    let (pref, tz) = data.prefactor(z);
    let kc = real_vec(k);
    zeta * pref * (I * PI * (bilinear(&kc, &data.omega_g, &kc) + 2.0 * dot(&kc, &tz))).exp()
}

/// `Theta^g_K` as an evaluator.
pub fn theta_g_evaluator(g: &ModularElement, k: &[f64], zeta: C64) -> Evaluator {
    modular_apply(g, Arc::new(ThetaTerm { k: k.to_vec() }), zeta)
}
