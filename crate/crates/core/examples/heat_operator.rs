// Every theta term solves the heat equation; cone sums do too, up to
// central-difference error that shrinks like eps^2.
use std::sync::Arc;

use indefinite_theta::heat::{heat_fd_residual, heat_term_residual, HeatOperatorSpec};
use indefinite_theta::lattice::ConeSpec;
use indefinite_theta::numeric::{ComplexMatrix, C64};
use indefinite_theta::theta::{ConeSum, Evaluator, I};

fn main() {
    let omega = ComplexMatrix::from_diagonal(&[-I, I]);
    let z = [C64::new(0.1, 0.05), C64::new(0.2, -0.1)];
    let worst = HeatOperatorSpec::all(2)
        .into_iter()
        .map(|op| heat_term_residual(&[2.0, -3.0], &z, &omega, op))
        .fold(0.0, f64::max);
    println!("termwise residual at K = (2, -3): {worst:.1e}");

    let f: Evaluator = Arc::new(ConeSum::new(ConeSpec::lattice(vec![vec![0, 1]], 2, 1.0).unwrap(), 1e-14));
    let op = HeatOperatorSpec::new(2, 2, 2).unwrap();
    let coarse = heat_fd_residual(&f, &omega, &z, op, 1e-2).unwrap();
    let fine = heat_fd_residual(&f, &omega, &z, op, 5e-3).unwrap();
    let at_default = heat_fd_residual(&f, &omega, &z, op, 1e-4).unwrap();
    println!("FD residual: {coarse:.2e} at 1e-2, {fine:.2e} at 5e-3 (ratio {:.2}), {at_default:.1e} at 1e-4", coarse / fine);
    assert!(at_default < 1e-6);
}
