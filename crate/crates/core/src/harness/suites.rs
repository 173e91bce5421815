//! Verification suites. Each returns named checks plus free-form details.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::Rational64;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde_json::{json, Value};

use super::instance::{complex_json, ProblemInstance};
use super::report::Check;
use crate::error::{Error, Result};
use crate::heat::{heat_fd_residual, heat_term_residual, HeatOperatorSpec, DEFAULT_EPS};
use crate::koszul::{
    ascending_order, chain_map_failure, gr_multiply, koszul_d, koszul_d_with, subsets, telescope_decompose, ChainMap, GroupRingElement,
    KoszulChain,
};
use crate::lattice::integer::{column, IntMatrix};
use crate::lattice::words::{random_gamma12_word, random_symplectic_word, type_ia, type_ib, type_ic, type_iii};
use crate::lattice::{transform_basis, ConeSpec, ModularElement, SplitBasis};
use crate::modular::contour::verify_case3_1d;
use crate::modular::{determine_zeta, modular_apply, modular_transform, omega_transform, theta_g_evaluator, theta_g_term};
use crate::numeric::{principal_sqrt_det, signature, sym_inverse, ComplexMatrix, C64};
use crate::reduced::{cohomology_ranks, interior_residual, partial_sum_preimage, shift_matrix, CoefficientArray, ReducedComplex};
use crate::theta::{
    int_vec, lambda_action, sample_points, theta_term, verify_cocycle, Characteristic, ConeSum, Evaluator, LambdaAction, ThetaFamily,
    ThetaTerm, I, TOL_IDENTITY,
};

/// Finite-difference tolerance.
pub const TOL_FD: f64 = 1e-6;
/// Steps used to observe second-order convergence of the stencils.
pub const SCALING_STEPS: (f64, f64) = (1e-2, 5e-3);
/// Number of sample points per identity.
pub const SAMPLES: usize = 5;

pub type SuiteOutput = (Vec<Check>, BTreeMap<String, Value>);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

const ONE: C64 = C64::new(1.0, 0.0);

/// Built-in instances used when a suite runs without one.
pub mod defaults {
    use super::*;

    pub fn classical() -> ProblemInstance {
        ProblemInstance::from_omega(ComplexMatrix::from_diagonal(&[I])).expect("valid")
    }

    pub fn inverted() -> ProblemInstance {
        ProblemInstance::from_omega(ComplexMatrix::from_diagonal(&[-I])).expect("valid")
    }

    /// `diag(-i, 2i)` with the coordinate basis.
    pub fn split_diagonal() -> ProblemInstance {
        ProblemInstance::from_omega(ComplexMatrix::from_diagonal(&[-I, I * 2.0])).expect("valid").with_basis(SplitBasis::reference(2, 1))
    }

    /// Indefinite, non-diagonal, with a positive direction `(1, 1)`.
    pub fn tilted() -> ProblemInstance {
        let om = ComplexMatrix::from_rows(&[vec![c(0.1, 2.0), c(0.2, 0.0)], vec![c(0.2, 0.0), c(-0.3, -1.0)]]).expect("valid");
        let basis = SplitBasis::new(1, IntMatrix::from_row_slice(2, 2, &[0, 1, 1, 1])).expect("unimodular");
        ProblemInstance::from_omega(om).expect("valid").with_basis(basis)
    }

    pub fn definite() -> ProblemInstance {
        let om = ComplexMatrix::from_rows(&[vec![c(0.1, 1.1), c(0.2, 0.3)], vec![c(0.2, 0.3), c(-0.2, 0.9)]]).expect("valid");
        ProblemInstance::from_omega(om).expect("valid")
    }

    pub fn dim3() -> ProblemInstance {
        let om = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(0.1, 0.0), c(0.2, 0.0)],
            vec![c(0.1, 0.0), c(0.3, -1.0), c(0.0, 0.1)],
            vec![c(0.2, 0.0), c(0.0, 0.1), c(0.0, 1.5)],
        ])
        .expect("valid");
        ProblemInstance::from_omega(om).expect("valid")
    }

    pub fn even_translation() -> ModularElement {
        ModularElement::translation(IntMatrix::from_row_slice(2, 2, &[2, 1, 1, 0]))
    }

    /// `(A, B tA^-1; 0, tA^-1)` with `A` lower unitriangular.
    pub fn block_triangular() -> ModularElement {
        let lin = ModularElement::linear(IntMatrix::from_row_slice(2, 2, &[1, 0, 1, 1])).expect("unimodular");
        ModularElement::translation(IntMatrix::from_row_slice(2, 2, &[0, 1, 1, 2])).compose(&lin)
    }

    pub fn taus() -> Vec<C64> {
        vec![c(0.0, -1.0), c(0.0, -2.0), c(0.3, -1.2)]
    }

    pub fn z_probes() -> Vec<C64> {
        vec![c(0.0, 0.0), c(0.3, 0.0), c(0.3, 0.2), c(-0.7, 0.0), c(0.1, -0.1)]
    }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn cone_sum_eval(cone: ConeSpec) -> Evaluator {
    Arc::new(ConeSum::new(cone, 1e-13))
}

fn max_rel_gap(f: &Evaluator, g: &Evaluator, omega: &ComplexMatrix, samples: &[Vec<C64>]) -> Result<f64> {
    let mut worst = 0.0f64;
    for z in samples {
        worst = worst.max(rel(f.eval(z, omega)?.value, g.eval(z, omega)?.value));
    }
    Ok(worst)
}

// ---------------------------------------------------------------- cocycle

fn cocycle_checks(inst: &ProblemInstance, label: &str, tol: f64) -> Result<Vec<Check>> {
    let basis = inst.split_basis()?;
    let omega = inst.omega();
    let samples = sample_points(inst.n, inst.seed, SAMPLES);
    let lb = basis.lattice_basis();
    let cocycle = cone_sum_eval(ConeSpec::positive(&basis, 1.0)?);
    let mut checks: Vec<Check> = verify_cocycle(&cocycle, &lb, omega, &samples)?
        .checks
        .into_iter()
        .map(|ch| Check::residual(format!("{label}: (x - 1) c, x = {}", ch.name), ch.residual, tol))
        .collect();
    if let Some(g) = &inst.g {
        let (bg, _) = transform_basis(g, &lb)?;
        let cg = modular_apply(g, cocycle, ONE);
        for ch in verify_cocycle(&cg, &bg, omega, &samples)?.checks {
            checks.push(Check::residual(format!("{label}: (x - 1) c^g, x = transformed {}", ch.name), ch.residual, tol));
        }
    }
    Ok(checks)
}

pub fn cocycle(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let list: Vec<(String, ProblemInstance)> = match inst {
        Some(i) => vec![("instance".into(), i.clone())],
        None => vec![
            ("n=1 k=0".into(), defaults::classical()),
            ("n=1 k=1".into(), defaults::inverted()),
            ("n=2 k=1 diagonal".into(), defaults::split_diagonal().with_g(defaults::even_translation())),
            ("n=2 k=1 tilted".into(), defaults::tilted().with_g(defaults::even_translation())),
            ("n=2 k=0".into(), defaults::definite()),
        ],
    };
    let mut checks = Vec::new();
    for (label, i) in list {
        let i = if inst.is_some() { i } else { i.with_seed(seed) };
        let tol = i.tolerance("identity", TOL_IDENTITY);
        checks.extend(cocycle_checks(&i, &label, tol)?);
    }
    Ok((checks, BTreeMap::new()))
}

// ---------------------------------------------------------------- heat

/// Largest termwise relative residual over `|K_i| <= radius` and every `(i, j)`.
pub fn termwise_heat(omega: &ComplexMatrix, z: &[C64], radius: i64) -> f64 {
    let n = omega.n();
    let side = (2 * radius + 1) as usize;
    let ops = HeatOperatorSpec::all(n);
    let mut worst = 0.0f64;
    for idx in 0..side.pow(n as u32) {
        let mut rest = idx;
        let k: Vec<f64> = (0..n)
            .map(|_| {
                let v = (rest % side) as i64 - radius;
                rest /= side;
                v as f64
            })
            .collect();
        for &op in &ops {
            worst = worst.max(heat_term_residual(&k, z, omega, op));
        }
    }
    worst
}

/// `bounded = false` keeps only the convergence-order check (for families whose
/// stencil truncation error at the default step exceeds the absolute bound).
fn fd_checks(label: &str, family: &Evaluator, omega: &ComplexMatrix, z: &[C64], bounded: bool) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for op in HeatOperatorSpec::all(omega.n()) {
        let tag = format!("{label}: H_{}{}", op.i(), op.j());
        if bounded {
            let r = heat_fd_residual(family, omega, z, op, DEFAULT_EPS)?;
            checks.push(Check::residual(format!("{tag} finite difference"), r, TOL_FD));
        }
        let coarse = heat_fd_residual(family, omega, z, op, SCALING_STEPS.0)?;
        let fine = heat_fd_residual(family, omega, z, op, SCALING_STEPS.1)?;
        if coarse > 1e-11 {
            checks.push(Check::within(format!("{tag} step-halving ratio"), coarse / fine, 2.5, 6.0));
        } else {
            checks.push(Check::exact(format!("{tag} stencil exact (family constant along this direction)"), fine <= 1e-11));
        }
    }
    Ok(checks)
}

pub fn heat(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let mut checks = Vec::new();
    let term_cases: Vec<(String, ProblemInstance)> = match inst {
        Some(i) => vec![("instance".into(), i.clone())],
        None => vec![("n=1".into(), defaults::classical()), ("n=2".into(), defaults::tilted()), ("n=3".into(), defaults::dim3())],
    };
    for (label, i) in &term_cases {
        let z = &sample_points(i.n, seed, 1)[0];
        checks.push(Check::residual(format!("{label}: termwise, |K_i| <= 5"), termwise_heat(i.omega(), z, 5), 1e-14));
    }

    let mut families: Vec<(String, Evaluator, ComplexMatrix, Vec<C64>, bool)> = Vec::new();
    match inst {
        Some(i) => {
            let mut cone = i.cone()?;
            if let Some(ch) = &i.characteristic {
                let shift = cone.shift().iter().zip(ch.a()).map(|(s, a)| s + a).collect();
                cone = cone.with_shift(shift)?;
            }
            let base = cone_sum_eval(cone);
            let z = i.z.clone().unwrap_or_else(|| sample_points(i.n, seed, 1).remove(0));
            families.push(("instance cone sum".into(), Arc::clone(&base), i.omega().clone(), z.clone(), true));
            if let Some(g) = &i.g {
                families.push(("instance transformed".into(), modular_apply(g, base, ONE), i.omega().clone(), z, true));
            }
        }
        None => {
            let cl = defaults::classical();
            families.push(("classical theta".into(), cone_sum_eval(cl.cone()?), cl.omega().clone(), vec![c(0.2, 0.0)], true));
            let t = defaults::tilted();
            let zt = sample_points(2, seed, 1).remove(0);
            let ct = cone_sum_eval(t.cone()?);
            families.push(("tilted cone sum".into(), Arc::clone(&ct), t.omega().clone(), zt.clone(), true));
            families.push(("case 2 transform".into(), modular_apply(&defaults::even_translation(), ct, ONE), t.omega().clone(), zt, true));
            // n = 1, k = 1: the cocycle is Theta_0, so its transform is Theta^J_0.
            let inv = ComplexMatrix::from_diagonal(&[-I]);
            let j = ModularElement::j(1);
            families.push(("case 3 transform K=0".into(), theta_g_evaluator(&j, &[0.0], ONE), inv.clone(), vec![c(0.3, 0.1)], true));
            families.push(("case 3 transform K=1".into(), theta_g_evaluator(&j, &[1.0], ONE), inv, vec![c(0.3, 0.1)], false));
            let half = Characteristic::new(vec![Rational64::new(1, 2)], vec![2])?;
            families.push(("theta[1/2]".into(), char_family(&half)?, cl.omega().clone(), vec![c(0.2, 0.1)], true));
            let d = defaults::definite();
            let ch = Characteristic::new(vec![Rational64::new(0, 1), Rational64::new(1, 2)], vec![1, 2])?;
            families.push(("theta[0,1/2]".into(), char_family(&ch)?, d.omega().clone(), sample_points(2, seed, 1).remove(0), true));
        }
    }
    for (label, f, om, z, bounded) in &families {
        checks.extend(fd_checks(label, f, om, z, *bounded)?);
    }
    Ok((checks, BTreeMap::new()))
}

/// `Theta[a]` over the full lattice.
pub fn char_family(ch: &Characteristic) -> Result<Evaluator> {
    let cone = ConeSpec::full(ch.a().len(), 1.0)?.with_shift(ch.a().to_vec())?;
    Ok(cone_sum_eval(cone))
}

// ---------------------------------------------------------------- modular

fn round_trip_residual(g: &ModularElement, omega: &ComplexMatrix) -> Result<f64> {
    let og = omega_transform(g, omega)?;
    let a = ComplexMatrix::from_int(g.a());
    let b = ComplexMatrix::from_int(g.b());
    let cm = ComplexMatrix::from_int(g.c());
    let d = ComplexMatrix::from_int(g.d());
    let back = &(&(&a * &og) + &b) * &sym_inverse(&(&(&cm * &og) + &d))?;
    let inv = omega_transform(&g.inverse(), &og)?;
    Ok(back.max_abs_diff(omega).max(inv.max_abs_diff(omega)))
}

/// `max_Z |ratio(Z) - ratio(Z_0)|` and `|ratio^8 - 1|` for `(f^g)^h / f^{hg}`.
pub fn composition_ratio(g: &ModularElement, h: &ModularElement, omega: &ComplexMatrix, samples: &[Vec<C64>]) -> Result<(f64, f64)> {
    let f: Evaluator = Arc::new(ThetaTerm { k: vec![1.0; omega.n()] });
    let twice = modular_apply(h, modular_apply(g, Arc::clone(&f), ONE), ONE);
    let once = modular_apply(&h.compose(g), f, ONE);
    let mut ratios = Vec::with_capacity(samples.len());
    for z in samples {
        ratios.push(twice.eval(z, omega)?.value / once.eval(z, omega)?.value);
    }
    let spread = ratios.iter().map(|r| (r - ratios[0]).norm()).fold(0.0, f64::max);
    Ok((spread, (ratios[0].powi(8) - 1.0).norm()))
}

/// Relative residual of `Theta^g_K(Z + M + Omega N) e^{2 pi i tN Z + pi i tN Omega N} = Theta^g_{K + tA N + tC M}(Z)`.
pub fn quasi_shift_residual(g: &ModularElement, omega: &ComplexMatrix, k: &[i64], m: &[i64], nv: &[i64], z: &[C64]) -> Result<f64> {
    let n = omega.n();
    let ncx = int_vec(nv);
    let on = omega.mul_vec(&ncx);
    let moved: Vec<C64> = (0..n).map(|i| z[i] + m[i] as f64 + on[i]).collect();
    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    let lhs = theta_g_term(&kf, &moved, omega, g, ONE)?
        * (I * PI * (2.0 * crate::theta::dot(&ncx, z) + crate::theta::dot(&ncx, &on))).exp();
    let k2: Vec<f64> = (0..n).map(|i| (k[i] + (0..n).map(|j| g.a()[(j, i)] * nv[j] + g.c()[(j, i)] * m[j]).sum::<i64>()) as f64).collect();
    let rhs = theta_g_term(&k2, z, omega, g, ONE)?;
    Ok(rel(lhs, rhs))
}

/// Group-level checks on random theta-group words.
pub fn theta_group_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let omegas = [defaults::tilted().omega().clone(), defaults::definite().omega().clone(), ComplexMatrix::from_diagonal(&[c(0.2, -1.3)])];
    let mut round = 0.0f64;
    let mut spread = 0.0f64;
    let mut eighth = 0.0f64;
    let mut sig_ok = true;
    let mut shift = 0.0f64;
    for omega in &omegas {
        let n = omega.n();
        let samples = sample_points(n, rng.random(), SAMPLES);
        for _ in 0..8 {
            let len = rng.random_range(1..=4);
            let g = random_gamma12_word(&mut rng, n, len);
            let hlen = rng.random_range(1..=3);
            let h = random_gamma12_word(&mut rng, n, hlen);
            round = round.max(round_trip_residual(&g, omega)?);
            let (s, e) = composition_ratio(&g, &h, omega, &samples)?;
            spread = spread.max(s);
            eighth = eighth.max(e);
            sig_ok &= modular_transform(&g, omega)?.signature == signature(&omega.im_form())?;
        }
        let draws = if n == 1 { 34 } else { 33 };
        for _ in 0..draws {
            let glen = rng.random_range(1..=3);
            let g = random_gamma12_word(&mut rng, n, glen);
            let mut v = || (0..n).map(|_| rng.random_range(-2..=2)).collect::<Vec<i64>>();
            let (k, m, nv) = (v(), v(), v());
            let z = &samples[rng.random_range(0..SAMPLES)];
            shift = shift.max(quasi_shift_residual(&g, omega, &k, &m, &nv, z)?);
        }
    }
    Ok(vec![
        Check::residual("period matrix round trip", round, 1e-9),
        Check::residual("(f^g)^h / f^(hg) constant in Z", spread, 1e-8),
        Check::residual("(f^g)^h / f^(hg) is an eighth root of unity", eighth, 1e-8),
        Check::exact("signature of Im Omega preserved", sig_ok),
        Check::residual("quasi-shift of Theta^g, 100 draws", shift, 1e-8),
    ])
}

pub fn modular_case1(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let (i, g) = match inst {
        Some(i) => {
            let g = i.g.clone().ok_or_else(|| Error::Invalid("case 1 needs g".into()))?;
            (i.clone(), g)
        }
        None => (defaults::split_diagonal().with_seed(seed), defaults::block_triangular()),
    };
    if g.c().iter().any(|&x| x != 0) {
        return Err(Error::Invalid("case 1 needs C = 0".into()));
    }
    g.ensure_gamma12()?;
    let omega = i.omega();
    let n = i.n;
    let samples = sample_points(n, i.seed, SAMPLES);
    let fit = determine_zeta(&g, omega, &samples)?;
    let mut checks = vec![
        Check::residual("zeta fit, termwise reference", fit.residual, 1e-9),
        Check::residual("zeta^8 = 1", (fit.zeta.powi(8) - 1.0).norm(), 1e-8),
    ];
    let d = g.d();
    let sqrt_det = principal_sqrt_det(&ComplexMatrix::from_int(d))?;
    let mut term = 0.0f64;
    for z in &samples {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                let k: Vec<i64> = if n == 1 { vec![a] } else { let mut v = vec![0; n]; v[0] = a; v[1] = b; v };
                let dk: Vec<f64> = (0..n).map(|r| (0..n).map(|s| d[(r, s)] * k[s]).sum::<i64>() as f64).collect();
                let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
                let lhs = theta_g_term(&kf, z, omega, &g, fit.zeta)?;
                term = term.max(rel(lhs, sqrt_det * theta_term(&dk, z, omega)));
            }
        }
    }
    checks.push(Check::residual("Theta^g_K = zeta sqrt(det D) Theta_(DK)", term, 1e-9));

    let basis = i.split_basis()?;
    let cone = ConeSpec::positive(&basis, 1.0)?;
    let moved_gens: Vec<Vec<i64>> = cone.generators().iter().map(|v| (0..n).map(|r| (0..n).map(|s| d[(r, s)] * v[s]).sum()).collect()).collect();
    let cg = modular_apply(&g, cone_sum_eval(cone), fit.zeta);
    let rhs: Evaluator = Arc::new(crate::theta::LinearCombination { terms: vec![(sqrt_det, cone_sum_eval(ConeSpec::lattice(moved_gens, n, 1.0)?))] });
    checks.push(Check::residual("c^g = zeta sqrt(det D) sum over D Gamma_+", max_rel_gap(&cg, &rhs, omega, &samples)?, 1e-9));
    let (bg, _) = transform_basis(&g, &basis.lattice_basis())?;
    for ch in verify_cocycle(&cg, &bg, omega, &samples)?.checks {
        checks.push(Check::residual(format!("(x - 1) c^g, x = transformed {}", ch.name), ch.residual, TOL_IDENTITY));
    }
    checks.extend(theta_group_checks(i.seed)?);
    let mut details = BTreeMap::new();
    details.insert("zeta".into(), complex_json(fit.zeta));
    Ok((checks, details))
}

pub fn modular_case2(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let (i, g) = match inst {
        Some(i) => {
            let g = i.g.clone().ok_or_else(|| Error::Invalid("case 2 needs g".into()))?;
            (i.clone(), g)
        }
        None => (defaults::tilted().with_seed(seed), defaults::even_translation()),
    };
    let n = i.n;
    let id = IntMatrix::identity(n, n);
    if g.a() != &id || g.d() != &id || g.c().iter().any(|&x| x != 0) {
        return Err(Error::Invalid("case 2 needs g = (I, B; 0, I)".into()));
    }
    g.ensure_gamma12()?;
    let omega = i.omega();
    let samples = sample_points(n, i.seed, SAMPLES);
    let og = omega_transform(&g, omega)?;
    let expected = omega - &ComplexMatrix::from_int(g.b());
    let scale = omega.max_abs().max(1.0);
    let mut checks = vec![Check::residual("Omega^g = Omega - B", og.max_abs_diff(&expected) / scale, 1e-15)];
    let fit = determine_zeta(&g, omega, &samples)?;
    checks.push(Check::exact("zeta = 1", (fit.zeta - 1.0).norm() < 1e-12));
    let basis = i.split_basis()?;
    let cocycle = cone_sum_eval(ConeSpec::positive(&basis, 1.0)?);
    let cg = modular_apply(&g, Arc::clone(&cocycle), fit.zeta);
    let mut gap = 0.0f64;
    for z in &samples {
        gap = gap.max((cg.eval(z, omega)?.value - cocycle.eval(z, omega)?.value).norm());
    }
    checks.push(Check::residual("|c - c^g| pointwise", gap, 1e-9));
    let (bg, _) = transform_basis(&g, &basis.lattice_basis())?;
    for ch in verify_cocycle(&cg, &bg, omega, &samples)?.checks {
        checks.push(Check::residual(format!("(x - 1) c^g, x = transformed {}", ch.name), ch.residual, TOL_IDENTITY));
    }
    Ok((checks, BTreeMap::new()))
}

pub fn modular_case3(inst: Option<&ProblemInstance>, _seed: u64) -> Result<SuiteOutput> {
    let taus = match inst {
        Some(i) if i.n == 1 => vec![i.omega()[(0, 0)]],
        Some(_) => return Err(Error::Invalid("the one-dimensional coboundary needs n = 1".into())),
        None => defaults::taus(),
    };
    let probes = match inst.and_then(|i| i.z.clone()) {
        Some(z) => z,
        None => defaults::z_probes(),
    };
    let mut checks = Vec::new();
    let mut zetas = Vec::new();
    for tau in taus {
        let tag = format!("tau = {}{:+}i", tau.re, tau.im);
        let rep = verify_case3_1d(&probes, tau, 1, 0, 1e-12)?;
        checks.push(Check::residual(format!("{tag}: (1 - 1) f = zeta tau^(-1/2) e^(-pi i z^2 / tau)"), rep.real_shift_residual, 1e-8));
        checks.push(Check::residual(format!("{tag}: (tau - 1) f = -e^(pi i tau + 2 pi i z)"), rep.tau_shift_residual, 1e-8));
        checks.push(Check::residual(format!("{tag}: zeta constant across probes"), rep.zeta_spread, 1e-8));
        checks.push(Check::residual(format!("{tag}: zeta^8 = 1"), (rep.zeta.zeta.powi(8) - 1.0).norm(), 1e-8));
        zetas.push(json!({"tau": complex_json(tau), "zeta": complex_json(rep.zeta.zeta)}));
    }
    let mut details = BTreeMap::new();
    details.insert("zeta".into(), Value::Array(zetas));
    Ok((checks, details))
}

// ---------------------------------------------------------------- wedge

pub fn wedge(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let i = match inst {
        Some(i) => i.clone(),
        None => defaults::split_diagonal().with_seed(seed),
    };
    let basis = i.split_basis()?;
    let (n, k) = (basis.n(), basis.k());
    if k == 0 || k >= n {
        return Err(Error::Invalid("the wedge needs 0 < k < n".into()));
    }
    let omega = i.omega();
    let samples = sample_points(n, i.seed, SAMPLES);
    let f = crate::theta::wedge_function(&basis, omega, k, 1e-12)?;
    let lb = basis.lattice_basis();
    let pivot = basis.n_col(k - 1);
    let mut sheared = vec![basis.n_col(k).iter().zip(&pivot).map(|(a, b)| a - b).collect::<Vec<i64>>()];
    sheared.extend((k + 1..n).map(|j| basis.n_col(j)));
    let plain = cone_sum_eval(ConeSpec::positive(&basis, 1.0)?);
    let moved = cone_sum_eval(ConeSpec::lattice(sheared, n, 1.0)?);
    let mut first = 0.0f64;
    let mut second = 0.0f64;
    for z in &samples {
        let fz = f.eval(z, omega)?.value;
        let a = LambdaAction::of_vector(&lb.n_vector(k - 1), Arc::clone(&f)).eval(z, omega)?.value - fz;
        let b = LambdaAction::of_vector(&lb.n_vector(k), Arc::clone(&f)).eval(z, omega)?.value - fz;
        let p = plain.eval(z, omega)?.value;
        let m = moved.eval(z, omega)?.value;
        first = first.max(rel(a, p - m));
        second = second.max(rel(b, -m));
    }
    Ok((
        vec![
            Check::residual(format!("(N_{k} - 1) f = sum over Gamma_+ - sum over Gamma_+^g"), first, 1e-8),
            Check::residual(format!("(N_{} - 1) f = -sum over Gamma_+^g", k + 1), second, 1e-8),
        ],
        BTreeMap::new(),
    ))
}

// ---------------------------------------------------------------- koszul

fn unit(m: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; m];
    e[j] = 1;
    e
}

fn telescope_ok(s: &IntMatrix) -> bool {
    let m = s.nrows();
    (0..m).all(|i| {
        let e = column(s, i);
        let r = telescope_decompose(&e, &ascending_order(m));
        let mut acc = GroupRingElement::one(m);
        for (j, rj) in r.iter().enumerate() {
            acc = &acc + &gr_multiply(rj, &GroupRingElement::minus_one(&unit(m, j)));
        }
        acc == GroupRingElement::monomial(e, 1.into())
    })
}

fn d_squared_ok(gens: &[Vec<i64>], max_degree: usize) -> bool {
    let m = gens.len();
    (2..=max_degree.min(m)).all(|p| subsets(m, p).iter().all(|s| koszul_d_with(&koszul_d_with(&KoszulChain::basis(m, s), gens), gens).is_zero()))
}

fn random_chain(rng: &mut SplitMix64, m: usize, p: usize) -> KoszulChain {
    let mut out = KoszulChain::zero(m, p);
    for s in subsets(m, p) {
        if rng.random_bool(0.6) {
            let e: Vec<i64> = (0..m).map(|_| rng.random_range(-2..=2)).collect();
            let coef = GroupRingElement::monomial(e, rng.random_range(-3..=3i64).into());
            out = out.add(&KoszulChain::single(m, &s, coef));
        }
    }
    out
}

pub fn koszul(_inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let n = 2;
    let m = 2 * n;
    let (mut chain_ok, mut tele_ok, mut dd_ok) = (true, true, true);
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..50 {
        let len = rng.random_range(1..=3);
        let (used, s) = random_symplectic_word(&mut rng, n, len);
        for kind in used {
            *kinds.entry(format!("{kind:?}")).or_default() += 1;
        }
        chain_ok &= chain_map_failure(&ChainMap::new(&s)?, 2).is_none();
        tele_ok &= telescope_ok(&s);
        dd_ok &= d_squared_ok(&(0..m).map(|i| column(&s, i)).collect::<Vec<_>>(), 4);
    }
    let mut random_dd = true;
    let mut augmentation = true;
    for dim in 1..=3usize {
        let mm = 2 * dim;
        for p in 1..=3.min(mm) {
            for _ in 0..5 {
                let ch = random_chain(&mut rng, mm, p);
                let d = koszul_d(&ch);
                if p >= 2 {
                    random_dd &= koszul_d(&d).is_zero();
                } else {
                    augmentation &= d.augmentation() == 0.into();
                }
            }
        }
    }
    let one = GroupRingElement::one(m);
    let ia = {
        let x = IntMatrix::from_row_slice(1, 1, &[rng.random_range(-2..=2)]);
        let map = ChainMap::new(&type_ia(1, &x, &IntMatrix::from_row_slice(1, 1, &[1])))?;
        map.image_of_basis(&[0]).component(&[0]) == one
    };
    let ib = {
        let map = ChainMap::with_order(&type_ib(n, 2), &[1, 0, 2, 3])?;
        map.image_of_basis(&[0, 1]).component(&[0, 1]) == one && chain_map_failure(&map, 2).is_none()
    };
    let ic = {
        let img = ChainMap::new(&type_ic(n, 1))?.image_of_basis(&[1]);
        img.components().count() == 2 && img.component(&[0]) == one && img.component(&[1]) == GroupRingElement::generator(m, 0)
    };
    let iii = ChainMap::new(&type_iii(n))?.image_of_basis(&[2, 3]) == KoszulChain::basis(m, &[0, 1]);
    let checks = vec![
        Check::exact("d d = 0 for 50 random bases, degree <= 4", dd_ok),
        Check::exact("d d = 0 on random chains, n <= 3, degree <= 3", random_dd),
        Check::exact("augmentation vanishes on boundaries", augmentation),
        Check::exact("telescoping reconstructs every basis element, 50 words", tele_ok),
        Check::exact("s_* d = d' s_* for 50 words, degree <= 2", chain_ok),
        Check::exact("type Ia: top coefficient 1", ia),
        Check::exact("type Ib: top coefficient 1 (peeling N'_k before N'_(k-1))", ib),
        Check::exact("type Ic: u_2 -> u_1 + N'_1 u_2", ic),
        Check::exact("type III: v_1 v_2 -> u_1 u_2", iii),
    ];
    let mut details = BTreeMap::new();
    details.insert("generator_counts".into(), json!(kinds));
    Ok((checks, details))
}

// ---------------------------------------------------------------- reduced

pub fn reduced(_inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let mut checks = Vec::new();
    let mut details = BTreeMap::new();
    for k in 1..=2usize {
        let b5 = cohomology_ranks(k, 5)?;
        let b6 = cohomology_ranks(k, 6)?;
        let mut want = vec![0; k];
        want.push(1);
        checks.push(Check::exact(format!("k={k}: Betti numbers at w=5 are {want:?}"), b5 == want));
        checks.push(Check::exact(format!("k={k}: Betti numbers stable from w=5 to w=6"), b5 == b6));
        let cx = ReducedComplex::new(k, 5)?;
        checks.push(Check::exact(format!("k={k}: d d = 0"), cx.d_squared_vanishes()));
        checks.push(Check::exact(format!("k={k}: total sum kills the top image"), cx.top_functional_kills_image()));
        let inj = (1..=k).all(|q| {
            let m = shift_matrix(k, 5, q);
            m.rank() == m.cols
        });
        checks.push(Check::exact(format!("k={k}: each shift difference is injective"), inj));
        details.insert(format!("betti_k{k}_w5"), json!(b5));
        details.insert(format!("betti_k{k}_w6"), json!(b6));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..100 {
        let k = rng.random_range(1..=2);
        let a = CoefficientArray::from_fn(k, 4, |_| rng.random_range(-3..=3));
        let q = rng.random_range(1..=k);
        ok &= interior_residual(&partial_sum_preimage(&a, q)?, &a, q) == 0;
    }
    checks.push(Check::exact("partial-sum preimage inverts the shift difference, 100 arrays", ok));
    Ok((checks, details))
}

// ---------------------------------------------------------------- characteristics

fn char_quasi_period(ch: &Characteristic, omega: &ComplexMatrix, samples: &[Vec<C64>]) -> Result<f64> {
    let n = ch.a().len();
    let f = char_family(ch)?;
    let mut worst = 0.0f64;
    for i in 0..n {
        let e = unit(n, i);
        let zero = vec![0; n];
        for (m, nv) in [(&e, &zero), (&zero, &e)] {
            let moved = lambda_action(m, nv, Arc::clone(&f), ch.delta());
            worst = worst.max(max_rel_gap(&moved, &f, omega, samples)?);
        }
    }
    Ok(worst)
}

pub fn characteristics(inst: Option<&ProblemInstance>, seed: u64) -> Result<SuiteOutput> {
    let mut checks = Vec::new();
    let mut details = BTreeMap::new();
    let d = match inst {
        Some(i) => i.clone(),
        None => defaults::definite().with_seed(seed),
    };
    let samples = sample_points(d.n, d.seed, SAMPLES);
    if let Some(ch) = inst.and_then(|i| i.characteristic.clone()) {
        checks.push(Check::residual("instance characteristic: Delta-twisted invariance", char_quasi_period(&ch, d.omega(), &samples)?, 1e-8));
    }
    if d.n == 2 {
        for delta in [vec![1i64, 2], vec![2, 2]] {
            let classes = Characteristic::enumerate(&delta)?;
            let det: i64 = delta.iter().product();
            let distinct = classes.iter().collect::<std::collections::BTreeSet<_>>().len();
            checks.push(Check::exact(format!("Delta = {delta:?}: {det} classes"), classes.len() as i64 == det && distinct == classes.len()));
            let mut worst = 0.0f64;
            for ch in &classes {
                worst = worst.max(char_quasi_period(ch, d.omega(), &samples)?);
            }
            checks.push(Check::residual(format!("Delta = {delta:?}: Delta-twisted invariance of every Theta[a]"), worst, 1e-8));
            details.insert(
                format!("classes_{}_{}", delta[0], delta[1]),
                json!(classes.iter().map(|c| c.a().iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            );
        }
    }
    Ok((checks, details))
}
