use num_rational::Rational64;

use super::{cone_sum, ThetaValue};
use crate::error::{Error, Result};
use crate::lattice::ConeSpec;
use crate::numeric::{ComplexMatrix, C64};

/// Characteristic `a` in `Delta^-1 Z^n / Z^n`, stored with components in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Characteristic {
    a: Vec<Rational64>,
    delta: Vec<i64>,
}

fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

impl Characteristic {
    pub fn new(a: Vec<Rational64>, delta: Vec<i64>) -> Result<Self> {
        if a.len() != delta.len() || a.is_empty() {
            return Err(Error::BadCharacteristic(format!("a has {} entries, Delta has {}", a.len(), delta.len())));
        }
        if delta.iter().any(|&d| d <= 0) {
            return Err(Error::BadCharacteristic("Delta entries must be positive".into()));
        }
        if delta.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::BadCharacteristic("Delta entries must divide each other in order".into()));
        }
        if a.iter().zip(&delta).any(|(x, &d)| !(x * d).is_integer()) {
            return Err(Error::BadCharacteristic("Delta a is not integral".into()));
        }
        Ok(Self { a: a.into_iter().map(frac).collect(), delta })
    }

    pub fn zero(delta: Vec<i64>) -> Result<Self> {
        Self::new(vec![Rational64::from_integer(0); delta.len()], delta)
    }

    pub fn a(&self) -> &[Rational64] {
        &self.a
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// All reduced characteristics for `Delta`; there are `det Delta` of them.
    pub fn enumerate(delta: &[i64]) -> Result<Vec<Self>> {
        Self::zero(delta.to_vec())?;
        let mut out = vec![Vec::new()];
        for &d in delta {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational64>| {
                    (0..d).map(move |j| {
                        let mut v = prefix.clone();
                        v.push(Rational64::new(j, d));
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|a| Self::new(a, delta.to_vec())).collect()
    }
}

/// Cone sum with every index shifted by the characteristic.
pub fn theta_char(ch: &Characteristic, z: &[C64], omega: &ComplexMatrix, cone: &ConeSpec, tol: f64) -> Result<ThetaValue> {
    if ch.a.len() != cone.dim() {
        return Err(Error::ShapeMismatch("characteristic and cone dimensions differ".into()));
    }
    let shift = cone.shift().iter().zip(&ch.a).map(|(s, a)| s + a).collect();
    cone_sum(z, omega, &cone.with_shift(shift)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::I;
    use std::f64::consts::PI;

    #[test]
    fn class_counts() {
        assert_eq!(Characteristic::enumerate(&[1, 2]).unwrap().len(), 2);
        assert_eq!(Characteristic::enumerate(&[2, 2]).unwrap().len(), 4);
        assert_eq!(Characteristic::enumerate(&[2, 6]).unwrap().len(), 12);
    }

    #[test]
    fn reduction_and_validation() {
        let c = Characteristic::new(vec![Rational64::new(-1, 2)], vec![2]).unwrap();
        assert_eq!(c.a(), &[Rational64::new(1, 2)]);
        assert!(matches!(Characteristic::new(vec![Rational64::new(1, 3)], vec![2]), Err(Error::BadCharacteristic(_))));
        assert!(Characteristic::new(vec![Rational64::new(0, 1); 2], vec![2, 3]).is_err());
    }

    #[test]
    fn half_characteristic() {
        let omega = ComplexMatrix::from_diagonal(&[I]);
        let ch = Characteristic::new(vec![Rational64::new(1, 2)], vec![2]).unwrap();
        let v = theta_char(&ch, &[C64::new(0.0, 0.0)], &omega, &ConeSpec::full(1, 1.0).unwrap(), 1e-12).unwrap();
        let oracle: f64 = (-10..=10).map(|m| (-PI * (m as f64 + 0.5).powi(2)).exp()).sum();
        assert!((v.value - C64::new(oracle, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_characteristic_matches_cone_sum() {
        let omega = ComplexMatrix::from_diagonal(&[I]);
        let z = [C64::new(0.2, 0.1)];
        let cone = ConeSpec::full(1, 1.0).unwrap();
        let a = theta_char(&Characteristic::zero(vec![1]).unwrap(), &z, &omega, &cone, 1e-10).unwrap();
        assert_eq!(a, cone_sum(&z, &omega, &cone, 1e-10).unwrap());
    }
}
