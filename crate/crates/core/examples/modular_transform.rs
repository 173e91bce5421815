// Theta group action: the period matrix, the Jacobian factor and the fitted
// eighth root of unity, checked against the classical inversion formula.
use std::sync::Arc;

use indefinite_theta::lattice::{ConeSpec, IntMatrix, ModularElement};
use indefinite_theta::modular::{determine_zeta, modular_apply, modular_transform};
use indefinite_theta::numeric::{ComplexMatrix, C64};
use indefinite_theta::theta::{sample_points, ConeSum, Evaluator, SAMPLE_SEED};

fn main() {
    let omega = ComplexMatrix::from_rows(&[
        vec![C64::new(0.1, 1.1), C64::new(0.2, 0.3)],
        vec![C64::new(0.2, 0.3), C64::new(-0.2, 0.9)],
    ])
    .unwrap();
    let g = ModularElement::j(2);
    g.ensure_gamma12().expect("J lies in the theta group");

    let r = modular_transform(&g, &omega).unwrap();
    for i in 0..2 {
        println!("Omega^J row {}: {:.6}  {:.6}", i + 1, r.omega_g[(i, 0)], r.omega_g[(i, 1)]);
    }
    println!("sqrt det = {:.6}, signature {:?}", r.jacobian_factor, r.signature);

    let fit = determine_zeta(&g, &omega, &sample_points(2, SAMPLE_SEED, 5)).unwrap();
    println!("zeta = {:.6} (residual {:.1e}, runner-up {:.1e})", fit.zeta, fit.residual, fit.runner_up);

    let theta: Evaluator = Arc::new(ConeSum::new(ConeSpec::full(2, 1.0).unwrap(), 1e-13));
    let transformed = modular_apply(&g, Arc::clone(&theta), fit.zeta);
    let z = [C64::new(0.2, -0.1), C64::new(0.05, 0.1)];
    let a = transformed.eval(&z, &omega).unwrap().value;
    let b = theta.eval(&z, &omega).unwrap().value;
    println!("theta^J = {a:.10}, theta = {b:.10}");
    assert!((a - b).norm() < 1e-9);

    // an even translation subtracts B from Omega
    let t = ModularElement::translation(IntMatrix::from_row_slice(2, 2, &[2, 1, 1, 0]));
    let shifted = modular_transform(&t, &omega).unwrap().omega_g;
    assert!(shifted.max_abs_diff(&(&omega - &ComplexMatrix::from_int(t.b()))) < 1e-15);
}
