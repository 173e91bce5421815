// Every example compiles and runs as a test.

mod characteristics {
    include!("../examples/characteristics.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod classical_theta {
    include!("../examples/classical_theta.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod contour_coboundary {
    include!("../examples/contour_coboundary.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod heat_operator {
    include!("../examples/heat_operator.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod indefinite_cone_sum {
    include!("../examples/indefinite_cone_sum.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod koszul_chain_map {
    include!("../examples/koszul_chain_map.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod modular_transform {
    include!("../examples/modular_transform.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod reduced_complex {
    include!("../examples/reduced_complex.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod split_basis {
    include!("../examples/split_basis.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod theta_group {
    include!("../examples/theta_group.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod verify_suites {
    include!("../examples/verify_suites.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod wedge_coboundary {
    include!("../examples/wedge_coboundary.rs");

    #[test]
    fn runs() {
        main();
    }
}
