use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Finite integer combination of lattice elements, keyed by exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    dim: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElement {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(vec![0; dim], BigInt::one())
    }

    pub fn monomial(exp: Vec<i64>, coef: BigInt) -> Self {
        let dim = exp.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { dim, terms }
    }

    /// The generator `x_j`.
    pub fn generator(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// `x^e - 1` for an exponent vector.
    pub fn minus_one(exp: &[i64]) -> Self {
        Self::monomial(exp.to_vec(), BigInt::one()) - Self::one(exp.len())
    }

    /// `sum_j x_j^{e_j}` style builder from `(exp, coef)` pairs.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut out = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (every monomial sent to 1).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }
}

/// Convolution product.
pub fn gr_multiply(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    assert_eq!(a.dim, b.dim, "group ring dimensions differ");
    let mut out = GroupRingElement::zero(a.dim);
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add_term(e, ca * cb);
        }
    }
    out
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: GroupRingElement) -> GroupRingElement {
        &self + &rhs
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Sub for GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: GroupRingElement) -> GroupRingElement {
        &self - &rhs
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        gr_multiply(self, rhs)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
