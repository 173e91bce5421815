// Searching for an integral basis adapted to an indefinite form.
use indefinite_theta::lattice::{find_split_basis, is_split_basis};
use indefinite_theta::numeric::RealSymmetricMatrix;
use indefinite_theta::Error;

fn main() {
    let q = RealSymmetricMatrix::from_rows(&[vec![3.0, 2.0], vec![2.0, -1.0]]).expect("symmetric");
    let basis = find_split_basis(&q, 1, 3).expect("split basis within bound 3");
    println!("N = {:?}", basis.n_matrix().row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("M = {:?}", basis.m_matrix().row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>());
    assert!(is_split_basis(&basis, &q, 1).unwrap());

    // the hyperbolic plane has no integral split basis for k = 1
    let hyperbolic = RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    match find_split_basis(&hyperbolic, 1, 3) {
        Err(e @ Error::NotFound { .. }) => println!("hyperbolic form: {e}"),
        other => panic!("expected NotFound, got {other:?}"),
    }
}
