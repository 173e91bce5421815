//! Generator matrices and random words for the symplectic and theta groups.
//!
//! Symplectic change-of-basis matrices act by `x_i = prod_j x'_j^{S_ji}`.

use rand::{Rng, RngExt};

use super::integer::{unimodular_inverse, IntMatrix};
use super::ModularElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Block-lower `A = (I 0; * *)`.
    Ia,
    /// Elementary `A = E_j` (entry `(j-1, j)`), upper neighbour.
    Ib,
    /// Elementary `A = E_{j+1}`.
    Ic,
    /// `(I 0; B I)`.
    II,
    /// `(0 I; -I 0)`.
    III,
}

/// `(A 0; 0 tA^-1)` for unimodular `A`.
pub fn block_linear(a: &IntMatrix) -> IntMatrix {
    let n = a.nrows();
    let inv_t = unimodular_inverse(a).expect("unimodular block").transpose();
    let mut s = IntMatrix::zeros(2 * n, 2 * n);
    s.view_mut((0, 0), (n, n)).copy_from(a);
    s.view_mut((n, n), (n, n)).copy_from(&inv_t);
    s
}

/// Identity plus a single 1 at the 1-based position `(row, col)`.
pub fn elementary(n: usize, row: usize, col: usize) -> IntMatrix {
    let mut e = IntMatrix::identity(n, n);
    e[(row - 1, col - 1)] = 1;
    e
}

/// `(I 0; X Y)` with the identity block of size `k`.
pub fn type_ia(k: usize, x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let n = k + y.nrows();
    let mut a = IntMatrix::zeros(n, n);
    a.view_mut((0, 0), (k, k)).fill_with_identity();
    a.view_mut((k, 0), (n - k, k)).copy_from(x);
    a.view_mut((k, k), (n - k, n - k)).copy_from(y);
    block_linear(&a)
}

/// `E_j` with `2 <= j <= n`.
pub fn type_ib(n: usize, j: usize) -> IntMatrix {
    block_linear(&elementary(n, j - 1, j))
}

/// `E_{j+1}` with `1 <= j < n`.
pub fn type_ic(n: usize, j: usize) -> IntMatrix {
    block_linear(&elementary(n, j, j + 1))
}

pub fn type_ii(b: &IntMatrix) -> IntMatrix {
    let n = b.nrows();
    let mut s = IntMatrix::identity(2 * n, 2 * n);
    s.view_mut((n, 0), (n, n)).copy_from(b);
    s
}

pub fn type_iii(n: usize) -> IntMatrix {
    let mut s = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        s[(i, n + i)] = 1;
        s[(n + i, i)] = -1;
    }
    s
}

fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, span: i64, even_diagonal: bool) -> IntMatrix {
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j && even_diagonal { 2 * rng.random_range(-span / 2..=span / 2) } else { rng.random_range(-span..=span) };
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    b
}

fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, m: usize) -> IntMatrix {
    let mut y = IntMatrix::identity(m, m);
    if rng.random_bool(0.5) {
        y[(0, 0)] = -1;
    }
    if m >= 2 {
        for _ in 0..2 {
            let i = rng.random_range(0..m);
            let j = (i + rng.random_range(1..m)) % m;
            let e = elementary(m, i + 1, j + 1);
            y = e * y;
        }
    }
    y
}

/// A random generator of the given kind in dimension `n >= 2`.
pub fn random_generator<R: Rng + ?Sized>(rng: &mut R, n: usize, kind: GeneratorKind) -> IntMatrix {
    match kind {
        GeneratorKind::Ia => {
            let k = rng.random_range(1..n);
            let x = IntMatrix::from_fn(n - k, k, |_, _| rng.random_range(-2..=2));
            let y = random_unimodular(rng, n - k);
            type_ia(k, &x, &y)
        }
        GeneratorKind::Ib => type_ib(n, rng.random_range(2..=n)),
        GeneratorKind::Ic => type_ic(n, rng.random_range(1..n)),
        GeneratorKind::II => type_ii(&random_symmetric(rng, n, 2, false)),
        GeneratorKind::III => type_iii(n),
    }
}

pub const ALL_KINDS: [GeneratorKind; 5] = [GeneratorKind::Ia, GeneratorKind::Ib, GeneratorKind::Ic, GeneratorKind::II, GeneratorKind::III];

/// Product of `len` random generators, with the kinds used.
pub fn random_symplectic_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> (Vec<GeneratorKind>, IntMatrix) {
    let mut s = IntMatrix::identity(2 * n, 2 * n);
    let mut kinds = Vec::with_capacity(len);
    for _ in 0..len {
        let kind = ALL_KINDS[rng.random_range(0..ALL_KINDS.len())];
        s *= random_generator(rng, n, kind);
        kinds.push(kind);
    }
    (kinds, s)
}

/// A random theta-group generator: even translation, `J`, or an elementary linear map.
pub fn random_gamma12_generator<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ModularElement {
    match rng.random_range(0..3) {
        0 => ModularElement::translation(random_symmetric(rng, n, 2, true)),
        1 => ModularElement::j(n),
        _ => {
            let a = if n >= 2 {
                let i = rng.random_range(0..n);
                let j = (i + rng.random_range(1..n)) % n;
                let e = elementary(n, i + 1, j + 1);
                if rng.random_bool(0.5) { e } else { unimodular_inverse(&e).expect("elementary") }
            } else {
                -IntMatrix::identity(1, 1)
            };
            ModularElement::linear(a).expect("unimodular")
        }
    }
}

pub fn random_gamma12_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> ModularElement {
    (0..len).fold(ModularElement::identity(n), |g, _| g.compose(&random_gamma12_generator(rng, n)))
}
