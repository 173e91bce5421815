// Random theta-group words: membership, the induced change of lattice basis,
// and the quasi-periodicity of transformed theta terms.
use indefinite_theta::harness::suites::quasi_shift_residual;
use indefinite_theta::lattice::words::random_gamma12_word;
use indefinite_theta::lattice::{is_symplectic_matrix, transform_basis, SplitBasis};
use indefinite_theta::numeric::{ComplexMatrix, C64};
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

fn main() {
    let mut rng = SplitMix64::seed_from_u64(2024);
    let omega = ComplexMatrix::from_diagonal(&[C64::new(0.1, -1.0), C64::new(-0.2, 1.5)]);
    let basis = SplitBasis::reference(2, 1).lattice_basis();
    for _ in 0..3 {
        let g = random_gamma12_word(&mut rng, 2, 4);
        assert!(g.is_gamma12().unwrap());
        let (moved, s) = transform_basis(&g, &basis).unwrap();
        assert!(is_symplectic_matrix(moved.matrix()) && is_symplectic_matrix(&s));
        let r = quasi_shift_residual(&g, &omega, &[1, -1], &[2, 0], &[0, 1], &[C64::new(0.1, 0.1), C64::new(-0.3, 0.0)]).unwrap();
        println!("g = {:?}: quasi-shift residual {r:.1e}", g.to_full().row_iter().map(|x| x.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>());
        assert!(r < 1e-8);
    }
}
