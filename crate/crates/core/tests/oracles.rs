//! Library values against brute-force sums computed in `common`.
mod common;

use std::sync::Arc;

use common::{box_sum, diag2, term, C};
use indefinite_theta::lattice::{ConeSpec, IntMatrix, ModularElement, SplitBasis};
use indefinite_theta::modular::{modular_apply, omega_transform};
use indefinite_theta::numeric::ComplexMatrix;
use indefinite_theta::theta::{cone_sum, theta_char, wedge_function, Characteristic, ConeSum, Evaluator, LambdaAction, ThetaFamily};
use num_rational::Rational64;

fn cm(rows: &[Vec<C>]) -> ComplexMatrix {
    ComplexMatrix::from_rows(rows).unwrap()
}

fn definite() -> Vec<Vec<C>> {
    vec![vec![C::new(0.1, 1.1), C::new(0.2, 0.3)], vec![C::new(0.2, 0.3), C::new(-0.2, 0.9)]]
}

#[test]
fn jacobi_constant() {
    let want = std::f64::consts::PI.powf(0.25) / common::gamma(0.75);
    assert!((want - 1.086_434_811_213_308).abs() < 1e-12, "{want}");
}

#[test]
fn full_sum_in_one_dimension() {
    let om = vec![vec![C::new(0.3, 0.8)]];
    let cone = ConeSpec::full(1, 1.0).unwrap();
    for z in [C::new(0.0, 0.0), C::new(0.37, -0.21), C::new(-0.5, 0.3)] {
        let want = box_sum(1, 12, &[z], &om, |_| true);
        let got = cone_sum(&[z], &cm(&om), &cone, 1e-13).unwrap().value;
        assert!((got - want).norm() < 1e-11, "{z}: {got} vs {want}");
    }
}

#[test]
fn full_sum_in_two_dimensions() {
    let om = definite();
    let z = [C::new(0.1, 0.0), C::new(-0.2, 0.1)];
    let want = box_sum(2, 10, &z, &om, |_| true);
    let got = cone_sum(&z, &cm(&om), &ConeSpec::full(2, 1.0).unwrap(), 1e-13).unwrap().value;
    assert!((got - want).norm() < 1e-11);
}

#[test]
fn three_dimensional_sum() {
    let mut om = vec![vec![C::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        om[i][i] = C::new(0.1 * i as f64, 1.0 + 0.2 * i as f64);
    }
    om[0][1] = C::new(0.1, 0.2);
    om[1][0] = om[0][1];
    let z = [C::new(0.2, 0.0), C::new(0.0, -0.1), C::new(0.3, 0.05)];
    let want = box_sum(3, 7, &z, &om, |_| true);
    let got = cone_sum(&z, &cm(&om), &ConeSpec::full(3, 1.0).unwrap(), 1e-13).unwrap().value;
    assert!((got - want).norm() < 1e-11);
}

#[test]
fn positive_cone_of_an_indefinite_matrix() {
    let om = diag2(C::new(0.2, -1.0), C::new(0.1, 1.3));
    let z = [C::new(0.1, 0.2), C::new(-0.3, 0.1)];
    let want = box_sum(2, 15, &z, &om, |k| k[0] == 0);
    let got = cone_sum(&z, &cm(&om), &ConeSpec::lattice(vec![vec![0, 1]], 2, 1.0).unwrap(), 1e-13).unwrap().value;
    assert!((got - want).norm() < 1e-11);
}

#[test]
fn sheared_cone() {
    let om = diag2(-common::I, common::I * 2.0);
    let z = [C::new(0.1, 0.05), C::new(0.2, -0.1)];
    let want = common::ray(&[-1, 1], &z, &om, 15);
    let got = cone_sum(&z, &cm(&om), &ConeSpec::lattice(vec![vec![-1, 1]], 2, 1.0).unwrap(), 1e-13).unwrap().value;
    assert!((got - want).norm() < 1e-11);
}

#[test]
fn characteristic_shifts_the_summation_lattice() {
    let om = definite();
    let z = [C::new(0.1, 0.0), C::new(-0.2, 0.1)];
    // Theta[a](Z) = sum_K e^{pi i t(K+a) W (K+a) + 2 pi i t(K+a) Z}
    let a = [0.5, 0.0];
    let mut want = C::new(0.0, 0.0);
    for k0 in -10..=10 {
        for k1 in -10..=10 {
            let k = [k0 as f64 + a[0], k1 as f64 + a[1]];
            let mut e = C::new(0.0, 0.0);
            for i in 0..2 {
                e += 2.0 * k[i] * z[i];
                for j in 0..2 {
                    e += om[i][j] * k[i] * k[j];
                }
            }
            want += (common::I * std::f64::consts::PI * e).exp();
        }
    }
    let ch = Characteristic::new(vec![Rational64::new(1, 2), Rational64::new(0, 1)], vec![2, 2]).unwrap();
    let got = theta_char(&ch, &z, &cm(&om), &ConeSpec::full(2, 1.0).unwrap(), 1e-13).unwrap().value;
    assert!((got - want).norm() < 1e-11, "{got} vs {want}");
}

#[test]
fn wedge_matches_double_sum() {
    let om = diag2(-common::I, common::I * 2.0);
    let f = wedge_function(&SplitBasis::reference(2, 1), &cm(&om), 1, 1e-13).unwrap();
    for z in [[C::new(0.1, 0.05), C::new(0.2, -0.1)], [C::new(-0.4, 0.0), C::new(0.3, 0.2)]] {
        let want = common::wedge(&z, &om, 20);
        let got = f.eval(&z, &cm(&om)).unwrap().value;
        assert!((got - want).norm() < 1e-11, "{got} vs {want}");
    }
}

#[test]
fn inversion_of_the_full_theta_series() {
    let om = definite();
    let g = ModularElement::j(2);
    let og = omega_transform(&g, &cm(&om)).unwrap();
    // -W^-1 from the explicit 2x2 inverse
    let det = om[0][0] * om[1][1] - om[0][1] * om[1][0];
    let want = [[-om[1][1] / det, om[0][1] / det], [om[1][0] / det, -om[0][0] / det]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((og[(i, j)] - want[i][j]).norm() < 1e-14);
        }
    }
    let theta: Evaluator = Arc::new(ConeSum::new(ConeSpec::full(2, 1.0).unwrap(), 1e-13));
    let tr = modular_apply(&g, theta, C::new(1.0, 0.0));
    let z = [C::new(0.2, -0.1), C::new(0.05, 0.1)];
    let ratio = tr.eval(&z, &cm(&om)).unwrap().value / box_sum(2, 10, &z, &om, |_| true);
    assert!((ratio.powi(8) - 1.0).norm() < 1e-9, "{ratio}");
}

#[test]
fn translation_action_by_hand() {
    let om = definite();
    let f: Evaluator = Arc::new(ConeSum::new(ConeSpec::full(2, 1.0).unwrap(), 1e-13));
    let z = [C::new(0.1, 0.0), C::new(-0.2, 0.1)];
    let got = LambdaAction { m: vec![1, -2], n: vec![2, 1], delta: vec![1, 1], inner: Arc::clone(&f) }.eval(&z, &cm(&om)).unwrap().value;
    let want = common::act(&[1, -2], &[2, 1], &z, &om, |w| box_sum(2, 14, w, &om, |_| true));
    assert!((got - want).norm() < 1e-9 * want.norm().max(1.0));
}

#[test]
fn even_translation_fixes_terms() {
    let om = definite();
    let b = IntMatrix::from_row_slice(2, 2, &[2, 1, 1, 0]);
    let shifted = omega_transform(&ModularElement::translation(b), &cm(&om)).unwrap();
    let z = [C::new(0.1, 0.0), C::new(-0.2, 0.1)];
    let back: Vec<Vec<C>> = (0..2).map(|i| (0..2).map(|j| shifted[(i, j)]).collect()).collect();
    for k in [[1, 0], [1, 1], [-2, 3]] {
        // e^{pi i tK B K} = 1 when B has an even diagonal
        assert!((term(&k, &z, &om) - term(&k, &z, &back)).norm() < 1e-12);
    }
}
