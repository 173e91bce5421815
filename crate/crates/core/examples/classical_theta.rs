// Jacobi theta at tau = i, z = 0 from the cone-sum evaluator.
use indefinite_theta::lattice::ConeSpec;
use indefinite_theta::numeric::{ComplexMatrix, C64};
use indefinite_theta::theta::{cone_sum_report, DEFAULT_RADIUS_MAX, I};

fn main() {
    let omega = ComplexMatrix::from_diagonal(&[I]);
    let cone = ConeSpec::full(1, 1.0).expect("full lattice");
    let rep = cone_sum_report(&[C64::new(0.0, 0.0)], &omega, &cone, 1e-12, DEFAULT_RADIUS_MAX).expect("converges");
    println!("theta(0, i) = {:.12}  (tail <= {:.1e}, radius {}, {} terms)", rep.value.value.re, rep.value.tail, rep.radius, rep.terms);
    assert!((rep.value.value.re - 1.086_434_811_213_308).abs() < 1e-10);
}
