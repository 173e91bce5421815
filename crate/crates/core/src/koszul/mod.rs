//! Exact Koszul-resolution algebra over the group ring of `Z^{2n}`.
//!
//! Exponent vectors are always written in one fixed coordinate system (the
//! primed basis `x'`). A second basis `x_i = prod_j x'_j^{S_ji}` is described by
//! the columns of an integer symplectic `S`.

mod ring;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::integer::{column, IntMatrix};
use crate::lattice::is_symplectic_matrix;

pub use ring::{gr_multiply, GroupRingElement};

/// Element of `Z[L] (x) wedge^p W`, keyed by 0-based increasing subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulChain {
    rank: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, GroupRingElement>,
}

impl KoszulChain {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Self { rank, degree, components: BTreeMap::new() }
    }

    /// `1 (x) w_subset`. The subset need not be sorted; the sign of sorting is applied.
    pub fn basis(rank: usize, subset: &[usize]) -> Self {
        Self::single(rank, subset, GroupRingElement::one(rank))
    }

    /// `coef (x) w_subset`, normalised to an increasing subset. Repeated indices give zero.
    pub fn single(rank: usize, subset: &[usize], coef: GroupRingElement) -> Self {
        let mut out = Self::zero(rank, subset.len());
        if let Some((sorted, sign)) = sort_with_sign(subset) {
            assert!(sorted.last().is_none_or(|&l| l < rank), "wedge index out of range");
            let c = if sign < 0 { -&coef } else { coef };
            out.add_component(sorted, c);
        }
        out
    }

    fn add_component(&mut self, subset: Vec<usize>, c: GroupRingElement) {
        if c.is_zero() {
            return;
        }
        let next = match self.components.remove(&subset) {
            Some(old) => &old + &c,
            None => c,
        };
        if !next.is_zero() {
            self.components.insert(subset, next);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &GroupRingElement)> {
        self.components.iter()
    }

    pub fn component(&self, subset: &[usize]) -> GroupRingElement {
        self.components.get(subset).cloned().unwrap_or_else(|| GroupRingElement::zero(self.rank))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rank, self.degree), (other.rank, other.degree), "chain shapes differ");
        let mut out = self.clone();
        for (s, c) in &other.components {
            out.add_component(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.components {
            out.add_component(s.clone(), -c);
        }
        out
    }

    /// Left multiplication by a ring element.
    pub fn scale(&self, r: &GroupRingElement) -> Self {
        let mut out = Self::zero(self.rank, self.degree);
        for (s, c) in &self.components {
            out.add_component(s.clone(), gr_multiply(r, c));
        }
        out
    }

    /// Augmentation of a degree-0 chain.
    pub fn augmentation(&self) -> BigInt {
        assert_eq!(self.degree, 0, "augmentation lives in degree 0");
        self.component(&[]).augmentation()
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(s, c)| {
                let terms: Vec<Value> = c.terms().map(|(e, v)| json!({"exp": e, "coef": coef_json(v)})).collect();
                json!({"subset": s.iter().map(|i| i + 1).collect::<Vec<_>>(), "terms": terms})
            })
            .collect();
        json!({"degree": self.degree, "components": comps})
    }
}

fn coef_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn sort_with_sign(subset: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = subset.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Koszul differential for generators whose exponent vectors are `gens`.
///
/// `d(x (x) w_{p_1..p_m}) = sum_i (-1)^{i+1} x (x_{p_i} - 1) (x) w_{.. omit p_i ..}`.
pub fn koszul_d_with(c: &KoszulChain, gens: &[Vec<i64>]) -> KoszulChain {
    assert!(c.degree >= 1, "differential needs positive degree");
    assert_eq!(gens.len(), c.rank, "one exponent vector per generator");
    let mut out = KoszulChain::zero(c.rank, c.degree - 1);
    for (subset, coef) in &c.components {
        for (pos, &p) in subset.iter().enumerate() {
            let mut rest = subset.clone();
            rest.remove(pos);
            let mut term = gr_multiply(coef, &GroupRingElement::minus_one(&gens[p]));
            if pos % 2 == 1 {
                term = -&term;
            }
            out.add_component(rest, term);
        }
    }
    out
}

/// Koszul differential in the coordinate basis.
pub fn koszul_d(c: &KoszulChain) -> KoszulChain {
    koszul_d_with(c, &unit_vectors(c.rank))
}

fn unit_vectors(m: usize) -> Vec<Vec<i64>> {
    (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            e
        })
        .collect()
}

/// `x^e + ... + 1` style factor with `(x^e - 1) = geom * (x - 1)`.
fn geometric(dim: usize, j: usize, e: i64) -> GroupRingElement {
    let range: Vec<i64> = if e > 0 { (0..e).collect() } else { (e..0).collect() };
    let sign = BigInt::from(if e > 0 { 1 } else { -1 });
    GroupRingElement::from_terms(
        dim,
        range.into_iter().map(|p| {
            let mut v = vec![0; dim];
            v[j] = p;
            (v, sign.clone())
        }),
    )
}

/// Coefficients `R_j` with `x^e - 1 = sum_j R_j (x'_j - 1)`, peeling coordinates in `order` (0-based).
pub fn telescope_decompose(exp: &[i64], order: &[usize]) -> Vec<GroupRingElement> {
    let m = exp.len();
    let mut seen = vec![false; m];
    for &j in order {
        assert!(j < m && !seen[j], "peel order must be a permutation");
        seen[j] = true;
    }
    assert_eq!(order.len(), m, "peel order must be a permutation");
    let mut out = vec![GroupRingElement::zero(m); m];
    let mut prefix = vec![0i64; m];
    for &j in order {
        if exp[j] != 0 {
            let lead = GroupRingElement::monomial(prefix.clone(), BigInt::one());
            out[j] = gr_multiply(&lead, &geometric(m, j, exp[j]));
            prefix[j] = exp[j];
        }
    }
    out
}

pub fn ascending_order(m: usize) -> Vec<usize> {
    (0..m).collect()
}

/// Induced map between the resolution for the basis `S` and the coordinate resolution.
#[derive(Clone, Debug)]
pub struct ChainMap {
    s: IntMatrix,
    r: Vec<Vec<GroupRingElement>>,
}

impl ChainMap {
    pub fn new(s: &IntMatrix) -> Result<Self> {
        Self::with_order(s, &ascending_order(s.nrows()))
    }

    pub fn with_order(s: &IntMatrix, order: &[usize]) -> Result<Self> {
        if !s.is_square() || !s.nrows().is_multiple_of(2) || !is_symplectic_matrix(s) {
            return Err(Error::NotSymplectic);
        }
        let r = (0..s.ncols()).map(|i| telescope_decompose(&column(s, i), order)).collect();
        Ok(Self { s: s.clone(), r })
    }

    pub fn rank(&self) -> usize {
        self.s.nrows()
    }

    /// Exponent vectors of the generators `x_i`.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| column(&self.s, i)).collect()
    }

    pub fn r(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.r[i][j]
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> GroupRingElement {
        let m = self.rank();
        if rows.is_empty() {
            return GroupRingElement::one(m);
        }
        let mut acc = GroupRingElement::zero(m);
        let sub_rows = &rows[1..];
        for (idx, &c) in cols.iter().enumerate() {
            let entry = &self.r[rows[0]][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &v)| v).collect();
            let term = gr_multiply(entry, &self.minor(sub_rows, &rest));
            acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Image of `1 (x) w_P` for an increasing subset `P`.
    pub fn image_of_basis(&self, subset: &[usize]) -> KoszulChain {
        let m = self.rank();
        let mut out = KoszulChain::zero(m, subset.len());
        for target in subsets(m, subset.len()) {
            let det = self.minor(subset, &target);
            out.add_component(target, det);
        }
        out
    }

    pub fn apply(&self, c: &KoszulChain) -> KoszulChain {
        assert_eq!(c.rank, self.rank(), "chain rank");
        let mut out = KoszulChain::zero(c.rank, c.degree);
        for (subset, coef) in &c.components {
            out = out.add(&self.image_of_basis(subset).scale(coef));
        }
        out
    }
}

pub fn s_star(s: &IntMatrix, c: &KoszulChain) -> Result<KoszulChain> {
    Ok(ChainMap::new(s)?.apply(c))
}

/// All increasing `p`-subsets of `0..m`.
pub fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= m {
        rec(0, m, p, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMapFailure {
    pub degree: usize,
    pub subset: Vec<usize>,
}

/// First generator where `s_* d = d' s_*` fails, if any.
pub fn chain_map_failure(map: &ChainMap, max_degree: usize) -> Option<ChainMapFailure> {
    let m = map.rank();
    let gens = map.generators();
    for p in 1..=max_degree.min(m) {
        for subset in subsets(m, p) {
            let w = KoszulChain::basis(m, &subset);
            let lhs = map.apply(&koszul_d_with(&w, &gens));
            let rhs = koszul_d(&map.image_of_basis(&subset));
            if lhs != rhs {
                return Some(ChainMapFailure { degree: p, subset });
            }
        }
    }
    None
}

pub fn verify_chain_map(s: &IntMatrix, max_degree: usize) -> Result<bool> {
    Ok(chain_map_failure(&ChainMap::new(s)?, max_degree).is_none())
}
