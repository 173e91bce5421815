// For Im tau < 0 the contour integral f has (1 - 1) f equal to a Gaussian
// times an eighth root of unity and (tau - 1) f equal to minus the residue.
use indefinite_theta::modular::contour::{contour_f, verify_case3_1d};
use indefinite_theta::numeric::C64;

fn main() {
    let probes = [C64::new(0.0, 0.0), C64::new(0.3, 0.0), C64::new(0.3, 0.2), C64::new(-0.7, 0.0), C64::new(0.1, -0.1)];
    for tau in [C64::new(0.0, -1.0), C64::new(0.0, -2.0), C64::new(0.3, -1.2)] {
        let f = contour_f(probes[1], tau, 1, 0, 1e-12).unwrap();
        let rep = verify_case3_1d(&probes, tau, 1, 0, 1e-12).unwrap();
        println!(
            "tau = {tau}: f(0.3) = {f:.8}, zeta = {:.6}, residuals {:.1e} / {:.1e}, spread {:.1e}",
            rep.zeta.zeta, rep.real_shift_residual, rep.tau_shift_residual, rep.zeta_spread
        );
        assert!(rep.max_residual() < 1e-8);
    }
}
