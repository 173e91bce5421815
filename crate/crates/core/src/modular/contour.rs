//! The one-dimensional contour coboundary for `g = J` with `Im tau < 0`.
//!
//! `f(z, tau) = int e^{pi i tau y^2} e^{2 pi i (z + n) y} / (e^{2 pi i y} - 1) dy`
//! along `Re y = k - 1/2`, traversed downwards (`y = k - 1/2 - i s`,
//! `s` from `-inf` to `inf`). With this orientation `(tau - 1) f` is minus the
//! residue term at `y = k`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;

use super::zeta::{fit_root_of_unity, ZetaFit};
use crate::error::{Error, Result};
use crate::numeric::{principal_sqrt, KahanSum, C64};
use crate::theta::I;

const GL_DEGREE: usize = 16;
const START_PANELS: usize = 16;
const MAX_PANELS: usize = 1 << 14;

/// The integrand at `y = k - 1/2 - i s`, without the `dy/ds` factor.
pub fn contour_integrand(s: f64, z: C64, tau: C64, kpole: i64, nshift: i64) -> C64 {
    let y = C64::new(kpole as f64 - 0.5, -s);
    let num = (I * PI * (tau * y * y + 2.0 * (z + nshift as f64) * y)).exp();
    num / ((2.0 * PI * I * y).exp() - 1.0)
}

/// Half-width `S` beyond which the integrand mass is below `tol / 2`.
fn truncation(z: C64, tau: C64, kpole: i64, nshift: i64, tol: f64) -> f64 {
    let c = kpole as f64 - 0.5;
    let b2 = -PI * tau.im;
    let b1 = 2.0 * PI * (tau.re * c + z.re + nshift as f64);
    let b0 = -PI * tau.im * c * c - 2.0 * PI * z.im * c;
    let m = b1.abs() / (2.0 * b2);
    let tail = |s: f64| (b0 + b2 * m * m - b2 * (s - m).powi(2)).exp() / (b2 * (s - m));
    let mut s = (tol.recip().ln() / (PI * tau.im.abs())).sqrt() + 2.0;
    while s <= m || tail(s) >= tol / 2.0 {
        s += 0.5;
    }
    s
}

fn panel_sum(rule: &GaussLegendre, s_max: f64, panels: usize, z: C64, tau: C64, kpole: i64, nshift: i64) -> C64 {
    let h = 2.0 * s_max / panels as f64;
    let parts: Vec<C64> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let lo = -s_max + p as f64 * h;
            let mid = lo + h / 2.0;
            rule.iter()
                .map(|&(x, w)| contour_integrand(mid + x * h / 2.0, z, tau, kpole, nshift) * (w * h / 2.0))
                .collect::<KahanSum>()
                .value()
        })
        .collect();
    // dy = -i ds for the downward orientation
    -I * parts.into_iter().collect::<KahanSum>().value()
}

/// Numerical value of the contour integral to absolute accuracy `tol`.
pub fn contour_f(z: C64, tau: C64, kpole: i64, nshift: i64, tol: f64) -> Result<C64> {
    if !(tau.im < 0.0) {
        return Err(Error::NonconvergentContour { im_tau: tau.im });
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let s_max = truncation(z, tau, kpole, nshift, tol);
    let rule = GaussLegendre::new(NonZeroUsize::new(GL_DEGREE).expect("nonzero degree"));
    let mut panels = START_PANELS;
    let mut prev = panel_sum(&rule, s_max, panels, z, tau, kpole, nshift);
    loop {
        panels *= 2;
        let cur = panel_sum(&rule, s_max, panels, z, tau, kpole, nshift);
        if (cur - prev).norm() < tol / 4.0 {
            return Ok(cur);
        }
        if panels >= MAX_PANELS {
            return Err(Error::Invalid(format!("quadrature did not settle below {tol:e}")));
        }
        prev = cur;
    }
}

/// `(1 - 1) f` and `(tau - 1) f` at one point: real translation and the `tau`-translation
/// `e^{pi i tau + 2 pi i z} f(z + tau)`.
pub fn contour_differences(z: C64, tau: C64, kpole: i64, nshift: i64, tol: f64) -> Result<(C64, C64)> {
    let f0 = contour_f(z, tau, kpole, nshift, tol)?;
    let f1 = contour_f(z + 1.0, tau, kpole, nshift, tol)?;
    let ft = contour_f(z + tau, tau, kpole, nshift, tol)?;
    Ok((f1 - f0, (I * PI * (tau + 2.0 * z)).exp() * ft - f0))
}

/// Outcome of the one-dimensional coboundary check at several probes.
#[derive(Clone, Debug, PartialEq)]
pub struct Case3Report {
    /// Eighth root with `(1 - 1) f = zeta tau^{-1/2} e^{-pi i (z + n)^2 / tau}`.
    pub zeta: ZetaFit,
    /// `max |(1 - 1) f - zeta tau^{-1/2} e^{...}|`.
    pub real_shift_residual: f64,
    /// `max |(tau - 1) f + e^{pi i tau k^2 + 2 pi i k z}|`.
    pub tau_shift_residual: f64,
    /// `max |ratio - zeta|` over probes.
    pub zeta_spread: f64,
}

impl Case3Report {
    pub fn max_residual(&self) -> f64 {
        self.real_shift_residual.max(self.tau_shift_residual).max(self.zeta_spread)
    }
}

/// Checks both coboundary identities at every probe with one fitted `zeta`.
pub fn verify_case3_1d(probes: &[C64], tau: C64, kpole: i64, nshift: i64, tol: f64) -> Result<Case3Report> {
    let rs = C64::new(1.0, 0.0) / principal_sqrt(tau);
    let mut pairs = Vec::with_capacity(probes.len());
    let mut tau_shift_residual = 0.0f64;
    for &z in probes {
        let (one, tau_d) = contour_differences(z, tau, kpole, nshift, tol)?;
        let k = kpole as f64;
        let residue = (I * PI * (tau * k * k + 2.0 * k * z)).exp();
        tau_shift_residual = tau_shift_residual.max((tau_d + residue).norm());
        let w = z + nshift as f64;
        pairs.push((rs * (-I * PI * w * w / tau).exp(), one));
    }
    let zeta = fit_root_of_unity(&pairs)?;
    let zeta_spread = pairs.iter().map(|(a, b)| (b / a - zeta.zeta).norm()).fold(0.0, f64::max);
    Ok(Case3Report { real_shift_residual: zeta.residual, tau_shift_residual, zeta_spread, zeta })
}
