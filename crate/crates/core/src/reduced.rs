//! Finite model of the shift-operator Koszul complex on `Z^k`.
//!
//! Arrays live in boxes; the complex in degree `p` uses, for each `p`-subset `J`,
//! the product box whose side is `[-w, w]` in the directions of `J` and
//! `[-w, w-1]` elsewhere. Each `sigma_q - 1` then maps one box exactly into the
//! next, so nothing is truncated and the finite complex is a tensor product of
//! one-dimensional pieces.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Integer array on the box `[-w, w]^k`, zero outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientArray {
    k: usize,
    w: i64,
    values: Vec<i64>,
}

impl CoefficientArray {
    pub fn zeros(k: usize, w: i64) -> Self {
        assert!(w >= 0, "window radius");
        let side = (2 * w + 1) as usize;
        Self { k, w, values: vec![0; side.pow(k as u32)] }
    }

    pub fn from_fn(k: usize, w: i64, mut f: impl FnMut(&[i64]) -> i64) -> Self {
        let mut a = Self::zeros(k, w);
        for idx in 0..a.values.len() {
            let p = a.point(idx);
            a.values[idx] = f(&p);
        }
        a
    }

    pub fn indicator(k: usize, w: i64, at: &[i64]) -> Self {
        let mut a = Self::zeros(k, w);
        a.set(at, 1);
        a
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    fn side(&self) -> i64 {
        2 * self.w + 1
    }

    fn index(&self, p: &[i64]) -> Option<usize> {
        assert_eq!(p.len(), self.k, "point dimension");
        let mut idx = 0usize;
        for &x in p {
            if x.abs() > self.w {
                return None;
            }
            idx = idx * self.side() as usize + (x + self.w) as usize;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> Vec<i64> {
        let side = self.side() as usize;
        let mut p = vec![0; self.k];
        for q in (0..self.k).rev() {
            p[q] = (idx % side) as i64 - self.w;
            idx /= side;
        }
        p
    }

    pub fn get(&self, p: &[i64]) -> i64 {
        self.index(p).map_or(0, |i| self.values[i])
    }

    /// Panics outside the window.
    pub fn set(&mut self, p: &[i64], v: i64) {
        let i = self.index(p).expect("point outside window");
        self.values[i] = v;
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.values.len()).map(|i| self.point(i))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn total_sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.w), (other.k, other.w), "window mismatch");
        Self { k: self.k, w: self.w, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    fn check_direction(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.k {
            return Err(Error::Invalid(format!("direction {q} outside 1..={}", self.k)));
        }
        Ok(())
    }
}

/// `(delta a)(K) = a(K - e_q) - a(K)`, direction `q` 1-based.
pub fn shift_delta(a: &CoefficientArray, q: usize) -> Result<CoefficientArray> {
    a.check_direction(q)?;
    let d = q - 1;
    if a.points().any(|p| p[d] == a.w && a.get(&p) != 0) {
        return Err(Error::WindowOverflow { direction: q });
    }
    Ok(CoefficientArray::from_fn(a.k, a.w, |p| {
        let mut prev = p.to_vec();
        prev[d] -= 1;
        a.get(&prev) - a.get(p)
    }))
}

/// `b(K) = -sum_{r=0}^{K_q} a(K - r e_q)`, with oriented sums for negative upper limits.
///
/// For `K_q < 0` the sum from 0 down to `K_q` is read as `-sum_{r=K_q+1}^{-1}`, so
/// `shift_delta(b, q) = a` holds at every point whose predecessor lies in the window.
pub fn partial_sum_preimage(a: &CoefficientArray, q: usize) -> Result<CoefficientArray> {
    a.check_direction(q)?;
    let d = q - 1;
    Ok(CoefficientArray::from_fn(a.k, a.w, |p| {
        let along = |c: i64| {
            let mut x = p.to_vec();
            x[d] = c;
            a.get(&x)
        };
        if p[d] >= 0 {
            -(0..=p[d]).map(along).sum::<i64>()
        } else {
            (p[d] + 1..0).map(along).sum::<i64>()
        }
    }))
}

/// Points where `shift_delta(b, q)` is fully determined by the window.
pub fn interior_residual(b: &CoefficientArray, a: &CoefficientArray, q: usize) -> i64 {
    let d = q - 1;
    b.points()
        .filter(|p| p[d] > -b.w)
        .map(|p| {
            let mut prev = p.clone();
            prev[d] -= 1;
            (b.get(&prev) - b.get(&p) - a.get(&p)).abs()
        })
        .max()
        .unwrap_or(0)
}

/// Sparse integer matrix, column-major triplets.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    fn add(&mut self, r: usize, c: usize, v: i64) {
        let e = self.entries.entry((r, c)).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries.remove(&(r, c));
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (&(r, c), &v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::new(self.rows, other.cols);
        for (&(r, mid), &v) in &self.entries {
            if let Some(row) = by_row.get(&mid) {
                for &(c, u) in row {
                    out.add(r, c, v * u);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), &v) in &self.entries {
            rows[r].insert(c, BigRational::from_integer(BigInt::from(v)));
        }
        rational_rank(rows, self.cols)
    }
}

/// Sparse elimination; the pivot for each column is the shortest available row.
fn rational_rank(mut rows: Vec<BTreeMap<usize, BigRational>>, cols: usize) -> usize {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].push(i);
        }
    }
    let mut used = vec![false; rows.len()];
    let mut rank = 0;
    for c in 0..cols {
        let live: Vec<usize> = col_rows[c].iter().copied().filter(|&i| !used[i] && rows[i].contains_key(&c)).collect();
        let Some(&pivot) = live.iter().min_by_key(|&&i| rows[i].len()) else { continue };
        used[pivot] = true;
        rank += 1;
        let prow = rows[pivot].clone();
        let pval = prow[&c].clone();
        for &i in &live {
            if i == pivot {
                continue;
            }
            let factor = &rows[i][&c] / &pval;
            for (&cc, v) in &prow {
                let slot = rows[i].entry(cc).or_insert_with(BigRational::zero);
                *slot -= &factor * v;
                if slot.is_zero() {
                    rows[i].remove(&cc);
                } else if !col_rows[cc].contains(&i) {
                    col_rows[cc].push(i);
                }
            }
        }
    }
    rank
}

/// Degree-by-degree data of the finite complex.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub k: usize,
    pub w: i64,
    /// `differentials[p]` maps degree `p` to degree `p + 1`.
    pub differentials: Vec<SparseMatrix>,
    pub dims: Vec<usize>,
}

fn subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << k).filter(|m| m.count_ones() as usize == p).map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

/// Box for subset `J`: lower corner `-w` always, upper corner `w` in `J`, `w-1` otherwise.
struct Block {
    subset: Vec<usize>,
    offset: usize,
    sides: Vec<usize>,
}

impl Block {
    fn len(&self) -> usize {
        self.sides.iter().product()
    }

    fn index(&self, p: &[i64], w: i64) -> Option<usize> {
        let mut idx = 0;
        for (q, &x) in p.iter().enumerate() {
            let off = x + w;
            if off < 0 || off as usize >= self.sides[q] {
                return None;
            }
            idx = idx * self.sides[q] + off as usize;
        }
        Some(self.offset + idx)
    }

    fn point(&self, mut idx: usize, w: i64) -> Vec<i64> {
        let mut p = vec![0; self.sides.len()];
        for q in (0..self.sides.len()).rev() {
            p[q] = (idx % self.sides[q]) as i64 - w;
            idx /= self.sides[q];
        }
        p
    }
}

fn blocks(k: usize, w: i64, p: usize) -> Vec<Block> {
    let mut offset = 0;
    subsets(k, p)
        .into_iter()
        .map(|subset| {
            let sides = (0..k).map(|q| (2 * w + subset.contains(&q) as i64) as usize).collect();
            let b = Block { subset, offset, sides };
            offset += b.len();
            b
        })
        .collect()
}

impl ReducedComplex {
    pub fn new(k: usize, w: i64) -> Result<Self> {
        if w < k as i64 + 2 {
            return Err(Error::WindowTooSmall { k, w });
        }
        let all: Vec<Vec<Block>> = (0..=k).map(|p| blocks(k, w, p)).collect();
        let dims: Vec<usize> = all.iter().map(|bs| bs.iter().map(Block::len).sum()).collect();
        let mut differentials = Vec::with_capacity(k);
        for p in 0..k {
            let mut m = SparseMatrix::new(dims[p + 1], dims[p]);
            for src in &all[p] {
                for target in &all[p + 1] {
                    // target = src + {q}
                    let extra: Vec<usize> = target.subset.iter().copied().filter(|q| !src.subset.contains(q)).collect();
                    if extra.len() != 1 || !src.subset.iter().all(|q| target.subset.contains(q)) {
                        continue;
                    }
                    let q = extra[0];
                    let pos = target.subset.iter().position(|&x| x == q).expect("member");
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    for local in 0..src.len() {
                        let col = src.offset + local;
                        let pt = src.point(local, w);
                        let mut next = pt.clone();
                        next[q] += 1;
                        // (sigma_q - 1) a: value at K + e_q gains a(K), value at K loses it
                        m.add(target.index(&next, w).expect("shift stays in box"), col, sign);
                        m.add(target.index(&pt, w).expect("box nesting"), col, -sign);
                    }
                }
            }
            differentials.push(m);
        }
        Ok(Self { k, w, differentials, dims })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(SparseMatrix::rank).collect()
    }

    pub fn betti(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..=self.k)
            .map(|p| {
                let incoming = if p == 0 { 0 } else { r[p - 1] };
                let outgoing = if p == self.k { 0 } else { r[p] };
                self.dims[p] - incoming - outgoing
            })
            .collect()
    }

    pub fn d_squared_vanishes(&self) -> bool {
        self.differentials.windows(2).all(|pair| pair[1].compose(&pair[0]).is_zero())
    }

    /// Whether the total-sum functional kills the image of the last differential.
    pub fn top_functional_kills_image(&self) -> bool {
        let Some(last) = self.differentials.last() else { return true };
        let mut col_sums: HashMap<usize, i64> = HashMap::new();
        for (&(_, c), &v) in &last.entries {
            *col_sums.entry(c).or_default() += v;
        }
        col_sums.values().all(|&s| s == 0)
    }
}

/// Betti numbers of the finite shift complex.
pub fn cohomology_ranks(k: usize, w: i64) -> Result<Vec<usize>> {
    Ok(ReducedComplex::new(k, w)?.betti())
}

/// Matrix of `sigma_q - 1` from arrays on `[-w, w-1]^k` to arrays on the box widened by one in direction `q`.
pub fn shift_matrix(k: usize, w: i64, q: usize) -> SparseMatrix {
    let src = Block { subset: vec![], offset: 0, sides: vec![(2 * w) as usize; k] };
    let mut sides = src.sides.clone();
    sides[q - 1] += 1;
    let dst = Block { subset: vec![q - 1], offset: 0, sides };
    let mut m = SparseMatrix::new(dst.len(), src.len());
    for local in 0..src.len() {
        let pt = src.point(local, w);
        let mut next = pt.clone();
        next[q - 1] += 1;
        m.add(dst.index(&next, w).expect("in box"), local, 1);
        m.add(dst.index(&pt, w).expect("in box"), local, -1);
    }
    m
}

/// Rational rank of a small dense integer matrix (used by tests and oracles).
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let sparse = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, &v)| (c, BigRational::from_integer(BigInt::from(v)))).collect())
        .collect();
    rational_rank(sparse, cols)
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_xoshiro::SplitMix64;

    #[test]
    fn delta_of_zero() {
        let a = CoefficientArray::zeros(2, 3);
        assert!(shift_delta(&a, 1).unwrap().is_zero());
    }

    #[test]
    fn delta_of_indicator() {
        let a = CoefficientArray::indicator(1, 3, &[0]);
        let d = shift_delta(&a, 1).unwrap();
        assert_eq!(d.get(&[1]), 1);
        assert_eq!(d.get(&[0]), -1);
        assert_eq!(d.points().filter(|p| d.get(p) != 0).count(), 2);
    }

    #[test]
    fn second_difference() {
        let a = CoefficientArray::from_fn(2, 4, |p| if p[0].abs() <= 1 && p[1].abs() <= 2 { p[0] * 3 - p[1] + 1 } else { 0 });
        let dd = shift_delta(&shift_delta(&a, 1).unwrap(), 1).unwrap();
        for p in a.points() {
            let at = |s: i64| a.get(&[p[0] - s, p[1]]);
            assert_eq!(dd.get(&p), at(2) - 2 * at(1) + at(0));
        }
    }

    #[test]
    fn overflow_detected() {
        let a = CoefficientArray::indicator(1, 2, &[2]);
        assert!(matches!(shift_delta(&a, 1), Err(Error::WindowOverflow { direction: 1 })));
        assert!(shift_delta(&CoefficientArray::indicator(2, 2, &[2, 0]), 2).is_ok());
    }

    #[test]
    fn preimage_of_indicator() {
        let a = CoefficientArray::indicator(1, 4, &[0]);
        let b = partial_sum_preimage(&a, 1).unwrap();
        for x in -4..=4 {
            assert_eq!(b.get(&[x]), if x >= 0 { -1 } else { 0 });
        }
        assert_eq!(interior_residual(&b, &a, 1), 0);
    }

    #[test]
    fn preimage_random_arrays() {
        let mut rng = SplitMix64::seed_from_u64(21);
        for _ in 0..100 {
            let k = rng.random_range(1..=3);
            let a = CoefficientArray::from_fn(k, 3, |_| rng.random_range(-3..=3));
            let q = rng.random_range(1..=k);
            let b = partial_sum_preimage(&a, q).unwrap();
            assert_eq!(interior_residual(&b, &a, q), 0);
            let a2 = CoefficientArray::from_fn(k, 3, |p| p.iter().sum::<i64>());
            let lin = partial_sum_preimage(&a.add(&a2), q).unwrap();
            assert_eq!(lin, b.add(&partial_sum_preimage(&a2, q).unwrap()));
        }
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(cohomology_ranks(1, 5).unwrap(), vec![0, 1]);
        assert_eq!(cohomology_ranks(2, 5).unwrap(), vec![0, 0, 1]);
        assert_eq!(cohomology_ranks(2, 6).unwrap(), vec![0, 0, 1]);
        assert_eq!(cohomology_ranks(3, 5).unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn window_too_small() {
        assert!(matches!(cohomology_ranks(2, 3), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn complex_is_a_complex() {
        let c = ReducedComplex::new(3, 5).unwrap();
        assert!(c.d_squared_vanishes());
        assert!(c.top_functional_kills_image());
    }

    #[test]
    fn shifts_are_injective() {
        for q in 1..=2 {
            let m = shift_matrix(2, 4, q);
            assert_eq!(m.rank(), m.cols);
        }
    }

    #[test]
    fn dense_rank_small() {
        assert_eq!(dense_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(dense_rank(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(dense_rank(&[vec![0, 0]]), 0);
    }
}
