//! Command layer: instances in, deterministic JSON out, exit codes.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 a sum hit its radius limit, 4 no split basis within the search bound.

mod instance;
mod report;
pub mod suites;

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

pub use instance::{
    basis_json, complex_json, complex_rows, element_json, matrix_rows, parse_rational, parse_z, BasisJson, CharacteristicJson, ComplexJson,
    ConeJson, ElementJson, InstanceJson, ProblemInstance, DEFAULT_BOUND,
};
pub use report::{Check, VerificationReport};

use crate::error::{Error, Result};
use crate::lattice::find_split_basis;
use crate::modular::{determine_zeta, modular_transform};
use crate::numeric::{sym_inverse, ComplexMatrix, RealSymmetricMatrix, C64};
use crate::theta::{cone_sum_report, sample_points, DEFAULT_RADIUS_MAX, TOL_SUM};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "THETA_THREADS";

/// Sizes the global thread pool from `THETA_THREADS`, once. Returns the count applied.
pub fn init_threads() -> Option<usize> {
    let n: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok().map(|_| n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cocycle,
    Heat,
    ModularCase1,
    ModularCase2,
    ModularCase3,
    Wedge,
    Koszul,
    Reduced,
    Characteristics,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Cocycle,
        Suite::Heat,
        Suite::ModularCase1,
        Suite::ModularCase2,
        Suite::ModularCase3,
        Suite::Wedge,
        Suite::Koszul,
        Suite::Reduced,
        Suite::Characteristics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Heat => "heat",
            Suite::ModularCase1 => "modular-case1",
            Suite::ModularCase2 => "modular-case2",
            Suite::ModularCase3 => "modular-case3-1d",
            Suite::Wedge => "wedge",
            Suite::Koszul => "koszul",
            Suite::Reduced => "reduced",
            Suite::Characteristics => "characteristics",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite. Without an instance each suite uses its built-in instances;
/// `all` always does, taking only the seed from a supplied instance.
pub fn run_suite(suite: Suite, inst: Option<&ProblemInstance>, seed: u64) -> Result<VerificationReport> {
    let (checks, details) = match suite {
        Suite::Cocycle => suites::cocycle(inst, seed)?,
        Suite::Heat => suites::heat(inst, seed)?,
        Suite::ModularCase1 => suites::modular_case1(inst, seed)?,
        Suite::ModularCase2 => suites::modular_case2(inst, seed)?,
        Suite::ModularCase3 => suites::modular_case3(inst, seed)?,
        Suite::Wedge => suites::wedge(inst, seed)?,
        Suite::Koszul => suites::koszul(inst, seed)?,
        Suite::Reduced => suites::reduced(inst, seed)?,
        Suite::Characteristics => suites::characteristics(inst, seed)?,
        Suite::All => {
            let mut checks = Vec::new();
            let mut details = BTreeMap::new();
            for s in Suite::EACH {
                let rep = run_suite(s, None, seed)?;
                checks.extend(rep.checks.into_iter().map(|c| Check { name: format!("{}/{}", s.name(), c.name), ..c }));
                for (k, v) in rep.details {
                    details.insert(format!("{}/{k}", s.name()), v);
                }
            }
            (checks, details)
        }
    };
    Ok(VerificationReport::new(suite.name(), checks, details))
}

fn error_json(e: &Error) -> (Value, i32) {
    (json!({"error": e.to_string(), "exit_code": e.exit_code()}), e.exit_code())
}

fn finish(r: Result<Value>) -> (Value, i32) {
    match r {
        Ok(v) => (v, 0),
        Err(e) => error_json(&e),
    }
}

/// Cone sum (with the instance characteristic, if any) at `z`.
pub fn cmd_eval(inst: &ProblemInstance, z: Option<Vec<C64>>, tol: Option<f64>, radius_max: Option<f64>) -> (Value, i32) {
    finish((|| {
        let z: Vec<_> = match z.or_else(|| inst.z.clone()) {
            Some(z) => z,
            None => vec![C64::new(0.0, 0.0); inst.n],
        };
        if z.len() != inst.n {
            return Err(Error::ShapeMismatch(format!("Z must have {} entries", inst.n)));
        }
        let mut cone = inst.cone()?;
        if let Some(ch) = &inst.characteristic {
            let shift = cone.shift().iter().zip(ch.a()).map(|(s, a)| s + a).collect();
            cone = cone.with_shift(shift)?;
        }
        let tol = tol.or(inst.tol).unwrap_or(TOL_SUM);
        let rep = cone_sum_report(&z, inst.omega(), &cone, tol, radius_max.unwrap_or(DEFAULT_RADIUS_MAX))?;
        Ok(json!({
            "value": complex_json(rep.value.value),
            "tail": rep.value.tail,
            "radius": rep.radius,
            "terms": rep.terms,
        }))
    })())
}

pub fn cmd_transform(inst: &ProblemInstance) -> (Value, i32) {
    finish((|| {
        let g = inst.g.as_ref().ok_or_else(|| Error::Invalid("transform needs g".into()))?;
        g.ensure_gamma12()?;
        let omega = inst.omega();
        let res = modular_transform(g, omega)?;
        let a = ComplexMatrix::from_int(g.a());
        let b = ComplexMatrix::from_int(g.b());
        let c = ComplexMatrix::from_int(g.c());
        let d = ComplexMatrix::from_int(g.d());
        let og = &res.omega_g;
        let back = &(&(&a * og) + &b) * &sym_inverse(&(&(&c * og) + &d))?;
        let mut residuals = BTreeMap::new();
        residuals.insert("round_trip".to_string(), json!(back.max_abs_diff(omega)));
        let zeta = match determine_zeta(g, omega, &sample_points(inst.n, inst.seed, suites::SAMPLES)) {
            Ok(fit) => {
                residuals.insert("zeta_fit".to_string(), json!(fit.residual));
                complex_json(fit.zeta)
            }
            Err(Error::Invalid(_)) | Err(Error::AmbiguousZeta { .. }) => Value::Null,
            Err(e) => return Err(e),
        };
        Ok(json!({
            "omega_g": complex_rows(og),
            "sqrt_det": complex_json(res.jacobian_factor),
            "zeta": zeta,
            "signature": [res.signature.0, res.signature.1],
            "residuals": residuals,
        }))
    })())
}

pub fn cmd_split_basis(q: &[Vec<f64>], k: usize, bound: i64) -> (Value, i32) {
    finish((|| {
        let q = RealSymmetricMatrix::from_rows(q)?;
        Ok(basis_json(&find_split_basis(&q, k, bound)?))
    })())
}

/// Runs a suite; exit 1 when any check fails.
pub fn cmd_verify(inst: Option<&ProblemInstance>, suite: Suite, seed: Option<u64>, timing: bool) -> (Value, i32) {
    let seed = seed.or(inst.map(|i| i.seed)).unwrap_or(crate::theta::SAMPLE_SEED);
    let start = Instant::now();
    match run_suite(suite, inst, seed) {
        Ok(mut rep) => {
            if timing {
                rep.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let code = if rep.pass { 0 } else { 1 };
            (rep.to_json(), code)
        }
        Err(e) => error_json(&e),
    }
}
