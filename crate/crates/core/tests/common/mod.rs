//! Brute-force reference values computed without the library's lattice,
//! cone or matrix machinery.
#![allow(dead_code)]

use std::f64::consts::PI;

pub use num_complex::Complex64 as C;

pub const I: C = C::new(0.0, 1.0);

/// `e^{pi i tK W K + 2 pi i tK Z}` from plain loops.
pub fn term(k: &[i64], z: &[C], omega: &[Vec<C>]) -> C {
    let n = k.len();
    let mut quad = C::new(0.0, 0.0);
    let mut lin = C::new(0.0, 0.0);
    for i in 0..n {
        lin += z[i] * k[i] as f64;
        for j in 0..n {
            quad += omega[i][j] * (k[i] * k[j]) as f64;
        }
    }
    (I * PI * (quad + 2.0 * lin)).exp()
}

/// Sum of `term` over the box `|K_i| <= r` restricted by `keep`.
pub fn box_sum(n: usize, r: i64, z: &[C], omega: &[Vec<C>], keep: impl Fn(&[i64]) -> bool) -> C {
    let side = 2 * r + 1;
    let mut total = C::new(0.0, 0.0);
    for idx in 0..side.pow(n as u32) {
        let mut rest = idx;
        let k: Vec<i64> = (0..n)
            .map(|_| {
                let v = rest % side - r;
                rest /= side;
                v
            })
            .collect();
        if keep(&k) {
            total += term(&k, z, omega);
        }
    }
    total
}

/// Lanczos approximation (g = 7, nine coefficients).
pub fn gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_403,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_1,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let s = G[0] + (1..9).map(|i| G[i] / (x + i as f64)).sum::<f64>();
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * s
}

pub fn diag2(a: C, b: C) -> Vec<Vec<C>> {
    vec![vec![a, C::new(0.0, 0.0)], vec![C::new(0.0, 0.0), b]]
}

/// The wedge function for the reference basis of a diagonal signature (1, 1)
/// matrix: `K_1 + K_2 >= 0` minus `K_1 >= 0`, written as a double sum over
/// rows `K_2 = b` with the finite column range in each row.
pub fn wedge(z: &[C], omega: &[Vec<C>], rows: i64) -> C {
    let mut total = C::new(0.0, 0.0);
    for b in -rows..=rows {
        if b > 0 {
            for a in -b..0 {
                total += term(&[a, b], z, omega);
            }
        } else if b < 0 {
            for a in 0..-b {
                total -= term(&[a, b], z, omega);
            }
        }
    }
    total
}

/// `(M, N) f (Z) = e^{2 pi i tN Z + pi i tN W N} f(Z + M + W N)`.
pub fn act(m: &[i64], nv: &[i64], z: &[C], omega: &[Vec<C>], f: impl Fn(&[C]) -> C) -> C {
    let n = z.len();
    let wn: Vec<C> = (0..n).map(|i| (0..n).map(|j| omega[i][j] * nv[j] as f64).sum()).collect();
    let moved: Vec<C> = (0..n).map(|i| z[i] + m[i] as f64 + wn[i]).collect();
    let lin: C = (0..n).map(|i| z[i] * nv[i] as f64).sum();
    let quad: C = (0..n).map(|i| wn[i] * nv[i] as f64).sum();
    (I * PI * (2.0 * lin + quad)).exp() * f(&moved)
}

/// Rows `K_2 = b` of a one-generator cone `t v`.
pub fn ray(v: &[i64; 2], z: &[C], omega: &[Vec<C>], r: i64) -> C {
    (-r..=r).map(|t| term(&[t * v[0], t * v[1]], z, omega)).sum()
}
