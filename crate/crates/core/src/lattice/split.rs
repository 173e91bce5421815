use crate::error::{Error, Result};
use crate::numeric::{signature, RealSymmetricMatrix};

use super::integer::{int_det, is_primitive_system, IntMatrix};
use super::SplitBasis;

const SEARCH_BUDGET: u64 = 5_000_000;

fn as_f64(cols: &[Vec<i64>]) -> Vec<Vec<f64>> {
    cols.iter().map(|c| c.iter().map(|&x| x as f64).collect()).collect()
}

fn check_signature(q: &RealSymmetricMatrix, k: usize) -> Result<()> {
    let n = q.n();
    let found = signature(q)?;
    if k > n || found != (k, n - k) {
        return Err(Error::SignatureMismatch { expected: (k, n.saturating_sub(k)), found });
    }
    Ok(())
}

/// Positivity of `Q` on the last `n - k` columns of `N` and of `Q^-1` on those of `M`.
pub fn is_split_basis(basis: &SplitBasis, q: &RealSymmetricMatrix, k: usize) -> Result<bool> {
    check_signature(q, k)?;
    if basis.n() != q.n() {
        return Err(Error::ShapeMismatch(format!("basis has n = {}, form has n = {}", basis.n(), q.n())));
    }
    let n_plus: Vec<Vec<i64>> = (k..basis.n()).map(|j| basis.n_col(j)).collect();
    let m_plus: Vec<Vec<i64>> = (k..basis.n()).map(|j| basis.m_col(j)).collect();
    let qinv = q.inverse()?;
    Ok(q.restrict(&as_f64(&n_plus)).is_positive_definite() && qinv.restrict(&as_f64(&m_plus)).is_positive_definite())
}

// Ordering: small sup norm, then small l1 norm, then leading nonzero coordinates
// early and positive.
fn candidate_key(v: &[i64]) -> (i64, i64, Vec<(bool, bool, i64)>) {
    let sup = v.iter().map(|x| x.abs()).max().unwrap_or(0);
    let l1 = v.iter().map(|x| x.abs()).sum();
    (sup, l1, v.iter().map(|&x| (x == 0, x < 0, x.abs())).collect())
}

fn candidates(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        if v.iter().any(|&x| x != 0) && is_primitive_system(std::slice::from_ref(&v)) {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by_key(|v| candidate_key(v));
                return out;
            }
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

struct Search<'a> {
    q: &'a RealSymmetricMatrix,
    k: usize,
    n: usize,
    neg: Vec<Vec<i64>>,
    pos: Vec<Vec<i64>>,
    chosen: Vec<Vec<i64>>,
    nodes: u64,
}

impl Search<'_> {
    fn block_ok(&self, negative: bool) -> bool {
        let start = if negative { 0 } else { self.k };
        let block = as_f64(&self.chosen[start..]);
        let g = self.q.restrict(&block);
        if negative {
            // negative block: -Q positive definite on the span
            RealSymmetricMatrix::from_upper(&(-g.as_matrix())).is_positive_definite()
        } else {
            g.is_positive_definite()
        }
    }

    fn dfs(&mut self, from: usize) -> bool {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return false;
        }
        let depth = self.chosen.len();
        if depth == self.n {
            let nm = IntMatrix::from_fn(self.n, self.n, |i, j| self.chosen[j][i]);
            return int_det(&nm).abs() == 1;
        }
        let in_neg = depth < self.k;
        let pool_len = if in_neg { self.neg.len() } else { self.pos.len() };
        // each block is chosen in increasing pool order to skip permutations
        let start = if depth == self.k { 0 } else { from };
        for idx in start..pool_len {
            let v = if in_neg { self.neg[idx].clone() } else { self.pos[idx].clone() };
            self.chosen.push(v);
            let ok = is_primitive_system(&self.chosen) && self.block_ok(in_neg);
            if ok && self.dfs(idx + 1) {
                return true;
            }
            self.chosen.pop();
            if self.nodes > SEARCH_BUDGET {
                return false;
            }
        }
        false
    }
}

/// Exhaustive search for a split basis with entries of `N` bounded by `bound`.
///
/// Columns `N_1..N_k` are drawn from short primitive vectors with `Q < 0`, the
/// rest from those with `Q > 0`; the first unimodular completion wins.
pub fn find_split_basis(q: &RealSymmetricMatrix, k: usize, bound: i64) -> Result<SplitBasis> {
    check_signature(q, k)?;
    let n = q.n();
    if bound < 1 {
        return Err(Error::NotFound { bound });
    }
    let cands = candidates(n, bound);
    let scale = cands.iter().map(|v| q.quad(&v.iter().map(|&x| x as f64).collect::<Vec<_>>()).abs()).fold(0.0, f64::max).max(1.0);
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for v in cands {
        let val = q.quad(&v.iter().map(|&x| x as f64).collect::<Vec<_>>());
        if val < -1e-12 * scale {
            neg.push(v);
        } else if val > 1e-12 * scale {
            pos.push(v);
        }
    }
    let mut search = Search { q, k, n, neg, pos, chosen: Vec::with_capacity(n), nodes: 0 };
    // With Q > 0 on N_+, the dual condition on M_+ is equivalent to Q < 0 on
    // N_-, so the first hit is split; the final check guards rounding only.
    if search.dfs(0) {
        let nm = IntMatrix::from_fn(n, n, |i, j| search.chosen[j][i]);
        let basis = SplitBasis::new(k, nm)?;
        if is_split_basis(&basis, q, k)? {
            return Ok(basis);
        }
    }
    Err(Error::NotFound { bound })
}
