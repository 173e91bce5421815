// Exact group-ring algebra: Koszul differentials and the chain map between
// the resolutions attached to two lattice bases.
use indefinite_theta::koszul::{
    ascending_order, chain_map_failure, koszul_d, telescope_decompose, ChainMap, GroupRingElement, KoszulChain,
};
use indefinite_theta::lattice::words::{random_symplectic_word, type_iii};
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

fn main() {
    // x^3 y^-1 - 1 telescoped over the generators
    let r = telescope_decompose(&[3, -1], &ascending_order(2));
    println!("x^3 y^-1 - 1 = ({:?}) (x - 1) + ({:?}) (y - 1)", r[0], r[1]);

    let top = KoszulChain::basis(4, &[0, 1, 2]);
    let d = koszul_d(&top);
    println!("d(w_123) = {}", d.to_json());
    assert!(koszul_d(&d).is_zero());

    let swap = ChainMap::new(&type_iii(2)).unwrap();
    println!("type III sends v_1 v_2 to {}", swap.image_of_basis(&[2, 3]).to_json());

    let mut rng = SplitMix64::seed_from_u64(7);
    let (kinds, s) = random_symplectic_word(&mut rng, 2, 3);
    let map = ChainMap::new(&s).unwrap();
    println!("word {kinds:?}: chain map commutes through degree 2: {}", chain_map_failure(&map, 2).is_none());
    assert!(chain_map_failure(&map, 2).is_none());
    assert_eq!(GroupRingElement::minus_one(&[1, 0, 0, 0]).augmentation(), 0.into());
}
