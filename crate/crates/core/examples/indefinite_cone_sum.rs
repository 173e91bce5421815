// A cone-restricted sum for a signature (1, 1) period matrix: only the
// positive direction is summed, so the series converges.
use indefinite_theta::lattice::{ConeSpec, SplitBasis};
use indefinite_theta::numeric::{ComplexMatrix, PeriodMatrix, C64};
use indefinite_theta::theta::{cone_sum, theta_term, I};
use indefinite_theta::Error;

fn main() {
    let omega = ComplexMatrix::from_diagonal(&[-I, I * 2.0]);
    let period = PeriodMatrix::new(omega.clone()).expect("non-degenerate imaginary part");
    println!("signature {:?}, index {}", period.signature(), period.index());

    let basis = SplitBasis::reference(2, 1);
    let cone = ConeSpec::positive(&basis, 1.0).unwrap();
    let z = [C64::new(0.1, 0.05), C64::new(0.2, -0.1)];
    let v = cone_sum(&z, &omega, &cone, 1e-12).unwrap();
    println!("positive-cone sum = {:.12} (tail {:.1e})", v.value, v.tail);

    // direct summation along N_2 agrees
    let direct: C64 = (-30..=30).map(|m| theta_term(&[0.0, m as f64], &z, &omega)).sum();
    assert!((direct - v.value).norm() < 1e-10);

    // summing over a direction where Im Omega is negative is rejected
    let bad = ConeSpec::lattice(vec![vec![1, 0]], 2, 1.0).unwrap();
    match cone_sum(&z, &omega, &bad, 1e-12) {
        Err(e @ Error::NonPositiveRestriction) => println!("negative direction: {e}"),
        other => panic!("expected rejection, got {other:?}"),
    }
}
