// The reduced complex on a finite window: exact ranks give the cohomology,
// concentrated in the top degree.
use indefinite_theta::reduced::{cohomology_ranks, partial_sum_preimage, shift_delta, CoefficientArray, ReducedComplex};

fn main() {
    for k in 1..=2 {
        let cx = ReducedComplex::new(k, 5).unwrap();
        println!("k = {k}, w = 5: dims {:?}, ranks {:?}, betti {:?}", cx.dims, cx.ranks(), cx.betti());
        assert_eq!(cohomology_ranks(k, 6).unwrap(), cx.betti());
    }

    // a point mass and its partial-sum preimage along the first direction
    let a = CoefficientArray::indicator(1, 4, &[-2]);
    let b = partial_sum_preimage(&a, 1).unwrap();
    let back = shift_delta(&b, 1).unwrap();
    println!("preimage support: {:?}", b.points().filter(|p| b.get(p) != 0).collect::<Vec<_>>());
    println!("image of preimage at -2: {}", back.get(&[-2]));
}
