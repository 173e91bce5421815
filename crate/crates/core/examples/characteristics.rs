// Theta functions with characteristics for a non-principal polarization.
use indefinite_theta::lattice::ConeSpec;
use indefinite_theta::numeric::{ComplexMatrix, C64};
use indefinite_theta::theta::{theta_char, Characteristic};

fn main() {
    let omega = ComplexMatrix::from_rows(&[
        vec![C64::new(0.1, 1.1), C64::new(0.2, 0.3)],
        vec![C64::new(0.2, 0.3), C64::new(-0.2, 0.9)],
    ])
    .unwrap();
    let cone = ConeSpec::full(2, 1.0).unwrap();
    let z = [C64::new(0.1, 0.0), C64::new(-0.2, 0.1)];
    for delta in [vec![1, 2], vec![2, 2]] {
        let classes = Characteristic::enumerate(&delta).unwrap();
        println!("Delta = {delta:?}: {} classes", classes.len());
        for ch in &classes {
            let v = theta_char(ch, &z, &omega, &cone, 1e-12).unwrap();
            let a: Vec<String> = ch.a().iter().map(|q| q.to_string()).collect();
            println!("  a = {a:?}: {:.10}", v.value);
        }
    }
}
