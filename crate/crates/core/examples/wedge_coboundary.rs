// The signed sum between the positive cone and its shear is a coboundary:
// moving it along N_1 gives the difference of two cone sums.
use std::sync::Arc;

use indefinite_theta::lattice::{ConeSpec, SplitBasis};
use indefinite_theta::numeric::{ComplexMatrix, C64};
use indefinite_theta::theta::{cone_sum, wedge_function, LambdaAction, ThetaFamily, I};

fn main() {
    let omega = ComplexMatrix::from_diagonal(&[-I, I * 2.0]);
    let basis = SplitBasis::reference(2, 1);
    let f = wedge_function(&basis, &omega, 1, 1e-12).unwrap();
    let z = [C64::new(0.1, 0.05), C64::new(0.2, -0.1)];

    let fz = f.eval(&z, &omega).unwrap();
    let moved = LambdaAction::of_vector(&basis.lattice_basis().n_vector(0), Arc::clone(&f)).eval(&z, &omega).unwrap().value;
    let plain = cone_sum(&z, &omega, &ConeSpec::lattice(vec![vec![0, 1]], 2, 1.0).unwrap(), 1e-13).unwrap().value;
    let sheared = cone_sum(&z, &omega, &ConeSpec::lattice(vec![vec![-1, 1]], 2, 1.0).unwrap(), 1e-13).unwrap().value;
    println!("f = {:.10} (tail {:.1e})", fz.value, fz.tail);
    println!("(N_1 - 1) f = {:.10}", moved - fz.value);
    println!("difference of cone sums = {:.10}", plain - sheared);
    assert!((moved - fz.value - (plain - sheared)).norm() < 1e-8 * (1.0 + (plain - sheared).norm()));
}
