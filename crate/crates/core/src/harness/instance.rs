//! JSON problem instances.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{find_split_basis, ConeSpec, IntMatrix, ModularElement, SplitBasis};
use crate::numeric::{signature, ComplexMatrix, PeriodMatrix, C64};
use crate::theta::{Characteristic, SAMPLE_SEED};

/// Default split-basis search bound.
pub const DEFAULT_BOUND: i64 = 3;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexJson {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for C64 {
    fn from(z: ComplexJson) -> Self {
        C64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisJson {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub n_rows: Vec<Vec<i64>>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m_rows: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConeJson {
    pub generators: Vec<Vec<i64>>,
    /// Rational entries written as `"p/q"` or integers.
    #[serde(default)]
    pub shift: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CharacteristicJson {
    pub a: Vec<String>,
    pub delta: Vec<i64>,
}

/// Raw instance as read from disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InstanceJson {
    pub n: usize,
    pub k: usize,
    pub omega: Vec<Vec<ComplexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<ComplexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<CharacteristicJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Validated instance.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub n: usize,
    pub k: usize,
    pub omega: PeriodMatrix,
    pub z: Option<Vec<C64>>,
    pub cone: Option<ConeSpec>,
    pub basis: Option<SplitBasis>,
    pub g: Option<ModularElement>,
    pub characteristic: Option<Characteristic>,
    pub tol: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
}

pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Invalid(format!("cannot read rational number {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn int_matrix(rows: &[Vec<i64>], n: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!("{what} must be {n}x{n}")));
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn complex_rows(m: &ComplexMatrix) -> Vec<Vec<ComplexJson>> {
    let a = m.as_matrix();
    (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].into()).collect()).collect()
}

pub fn complex_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

pub fn basis_json(b: &SplitBasis) -> Value {
    json!({"n": b.n(), "k": b.k(), "N": matrix_rows(b.n_matrix()), "M": matrix_rows(b.m_matrix())})
}

pub fn element_json(g: &ModularElement) -> Value {
    json!({"A": matrix_rows(g.a()), "B": matrix_rows(g.b()), "C": matrix_rows(g.c()), "D": matrix_rows(g.d())})
}

/// Parses `"re,im;re,im"`.
pub fn parse_z(s: &str) -> Result<Vec<C64>> {
    s.split(';')
        .map(|part| {
            let (re, im) = part.split_once(',').ok_or_else(|| Error::Invalid(format!("expected re,im in {part:?}")))?;
            let re: f64 = re.trim().parse().map_err(|_| Error::Invalid(format!("bad real part {re:?}")))?;
            let im: f64 = im.trim().parse().map_err(|_| Error::Invalid(format!("bad imaginary part {im:?}")))?;
            Ok(C64::new(re, im))
        })
        .collect()
}

impl ProblemInstance {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: InstanceJson = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("instance JSON: {e}")))?;
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: InstanceJson) -> Result<Self> {
        let n = raw.n;
        if raw.omega.len() != n || raw.omega.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("omega must be {n}x{n}")));
        }
        let rows: Vec<Vec<C64>> = raw.omega.iter().map(|r| r.iter().map(|&z| z.into()).collect()).collect();
        let omega = PeriodMatrix::new(ComplexMatrix::from_rows(&rows)?)?;
        if omega.index() != raw.k {
            return Err(Error::SignatureMismatch { expected: (raw.k, n - raw.k), found: omega.signature() });
        }
        let z = match raw.z {
            Some(z) if z.len() != n => return Err(Error::ShapeMismatch(format!("Z must have {n} entries"))),
            Some(z) => Some(z.into_iter().map(C64::from).collect()),
            None => None,
        };
        let cone = match raw.cone {
            Some(c) => {
                let shift = if c.shift.is_empty() {
                    vec![Rational64::from_integer(0); n]
                } else {
                    c.shift.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?
                };
                Some(ConeSpec::new(c.generators, shift, 1.0)?)
            }
            None => None,
        };
        let basis = match raw.basis {
            Some(b) => {
                if b.n != n || b.k != raw.k {
                    return Err(Error::ShapeMismatch("basis n, k disagree with the instance".into()));
                }
                let nm = int_matrix(&b.n_rows, n, "N")?;
                let sb = match b.m_rows {
                    Some(m) => SplitBasis::from_parts(b.k, nm, int_matrix(&m, n, "M")?)?,
                    None => SplitBasis::new(b.k, nm)?,
                };
                Some(sb)
            }
            None => None,
        };
        let g = match raw.g {
            Some(e) => {
                Some(ModularElement::new(int_matrix(&e.a, n, "A")?, int_matrix(&e.b, n, "B")?, int_matrix(&e.c, n, "C")?, int_matrix(&e.d, n, "D")?)?)
            }
            None => None,
        };
        let characteristic = match raw.characteristic {
            Some(c) => Some(Characteristic::new(c.a.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?, c.delta)?),
            None => None,
        };
        if let Some(ch) = &characteristic {
            if ch.a().len() != n {
                return Err(Error::ShapeMismatch("characteristic length differs from n".into()));
            }
        }
        Ok(Self {
            n,
            k: raw.k,
            omega,
            z,
            cone,
            basis,
            g,
            characteristic,
            tol: raw.tol,
            tolerances: raw.tolerances,
            seed: raw.seed.unwrap_or(SAMPLE_SEED),
        })
    }

    /// Instance with only a period matrix.
    pub fn from_omega(omega: ComplexMatrix) -> Result<Self> {
        let omega = PeriodMatrix::new(omega)?;
        Ok(Self {
            n: omega.n(),
            k: omega.index(),
            omega,
            z: None,
            cone: None,
            basis: None,
            g: None,
            characteristic: None,
            tol: None,
            tolerances: BTreeMap::new(),
            seed: SAMPLE_SEED,
        })
    }

    pub fn with_basis(mut self, basis: SplitBasis) -> Self {
        self.basis = Some(basis);
        self
    }

    pub fn with_g(mut self, g: ModularElement) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_characteristic(mut self, ch: Characteristic) -> Self {
        self.characteristic = Some(ch);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn omega(&self) -> &ComplexMatrix {
        self.omega.matrix()
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// The given basis, or one found by search when `0 < k < n`.
    pub fn split_basis(&self) -> Result<SplitBasis> {
        if let Some(b) = &self.basis {
            return Ok(b.clone());
        }
        let q = self.omega().im_form();
        let (neg, _) = signature(&q)?;
        if neg == 0 || neg == self.n {
            return Ok(SplitBasis::reference(self.n, neg));
        }
        find_split_basis(&q, self.k, DEFAULT_BOUND)
    }

    /// Explicit cone, else the positive cone of the split basis.
    pub fn cone(&self) -> Result<ConeSpec> {
        match &self.cone {
            Some(c) => Ok(c.clone()),
            None => ConeSpec::positive(&self.split_basis()?, 1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_instance() {
        let inst = ProblemInstance::from_json_str(r#"{"n":1,"k":0,"omega":[[{"re":0,"im":1}]]}"#).unwrap();
        assert_eq!(inst.n, 1);
        assert_eq!(inst.seed, SAMPLE_SEED);
        assert_eq!(inst.cone().unwrap().rank(), 1);
    }

    #[test]
    fn rejects_non_symmetric() {
        let s = r#"{"n":2,"k":0,"omega":[[{"re":0,"im":1},{"re":1,"im":0}],[{"re":0,"im":0},{"re":0,"im":1}]]}"#;
        assert!(ProblemInstance::from_json_str(s).is_err());
    }

    #[test]
    fn rejects_wrong_index() {
        let s = r#"{"n":1,"k":1,"omega":[[{"re":0,"im":1}]]}"#;
        assert!(matches!(ProblemInstance::from_json_str(s), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn reads_everything() {
        let s = r#"{"n":2,"k":1,
            "omega":[[{"re":0,"im":-1},{"re":0,"im":0}],[{"re":0,"im":0},{"re":0,"im":2}]],
            "z":[{"re":0.1,"im":0},{"re":0,"im":0.1}],
            "basis":{"n":2,"k":1,"N":[[1,0],[0,1]]},
            "g":{"A":[[1,0],[0,1]],"B":[[2,0],[0,0]],"C":[[0,0],[0,0]],"D":[[1,0],[0,1]]},
            "characteristic":{"a":["1/2","0"],"delta":[2,2]},
            "tolerances":{"identity":1e-9},
            "seed":5}"#;
        let inst = ProblemInstance::from_json_str(s).unwrap();
        assert!(inst.g.is_some() && inst.characteristic.is_some());
        assert_eq!(inst.tolerance("identity", 1.0), 1e-9);
        assert_eq!(inst.cone().unwrap().generators(), &[vec![0, 1]]);
    }

    #[test]
    fn z_strings() {
        assert_eq!(parse_z("0.5,0;1,-2").unwrap(), vec![C64::new(0.5, 0.0), C64::new(1.0, -2.0)]);
        assert!(parse_z("1").is_err());
        assert_eq!(parse_rational("-3/4").unwrap(), Rational64::new(-3, 4));
    }
}
